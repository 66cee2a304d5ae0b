"""JSON conventions: complex numbers travel as ``[re, im]`` pairs.

Floats are written with Python's shortest round-trip ``repr``, so every
value read back is bit-identical to the value written.
"""
import json
import math

import numpy as np


def to_jsonable(obj):
    """Recursively convert numpy / complex values into JSON-ready types."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (complex, np.complexfloating)):
        return [_float(obj.real), _float(obj.imag)]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _float(obj)
    if hasattr(obj, "value") and hasattr(obj, "name"):
        return obj.value
    return obj


def _float(x):
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def dumps(obj, **kw) -> str:
    return json.dumps(to_jsonable(obj), allow_nan=False, **kw)


def parse_complex(v) -> complex:
    """Accept ``[re, im]``, a bare number, or a Python complex literal string."""
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValueError(f"complex pair must have two entries, got {v!r}")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, str):
        return complex(v.replace(" ", ""))
    return complex(v)


def parse_vector(obj) -> np.ndarray:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, (list, tuple)):
        raise ValueError("expected a JSON array of complex numbers")
    return np.array([parse_complex(v) for v in obj], dtype=complex)


def parse_matrix(obj) -> np.ndarray:
    if isinstance(obj, str):
        obj = json.loads(obj)
    rows = [parse_vector(r) for r in obj]
    n = len(rows)
    if n == 0 or any(r.size != n for r in rows):
        raise ValueError("matrix must be a non-empty square array")
    return np.array(rows, dtype=complex)
