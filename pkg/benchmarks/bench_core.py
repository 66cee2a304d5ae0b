"""Time the compiled core against the pure-Python fallback.

Run with ``python3 benchmarks/bench_core.py``.  Each kernel is called on
the same random inputs through both implementations; the table reports the
median wall time per call and the speed-up.
"""
import argparse
import statistics
import timeit

import numpy as np

from symdisc import _purecore

try:
    from symdisc import _core
except ImportError:
    _core = None


def _cases(rng):
    def vec(n):
        return np.ascontiguousarray(rng.normal(size=n) + 1j * rng.normal(size=n))

    def mat(n):
        return np.ascontiguousarray(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))

    a6, a8 = vec(6), vec(8)
    m6, m8 = mat(6), mat(8)
    return [
        ("esym n=8", "esym", (a8,)),
        ("aberth deg=6", "aberth", (a6, 1e-10, 500)),
        ("aberth deg=8", "aberth", (a8, 1e-10, 500)),
        ("schur_cohn deg=8", "schur_cohn", (a8 / 10, 1.0 - 1e-9, 1e-12)),
        ("charpoly 6x6", "charpoly", (m6,)),
        ("lu_det 8x8", "lu_det", (m8,)),
        ("permanent 6x6", "permanent", (m6,)),
        ("permanent 8x8", "permanent", (m8,)),
    ]


def _time(fn, args, repeat):
    t = timeit.Timer(lambda: fn(*args))
    number, _ = t.autorange()
    runs = t.repeat(repeat=repeat, number=number)
    return statistics.median(runs) / number


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    if _core is None:
        print("compiled core not built; only the fallback is available")
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<20}{'cython (us)':>14}{'python (us)':>14}{'speed-up':>10}")
    for label, name, call_args in _cases(rng):
        fast = _time(getattr(_core, name), call_args, args.repeat) * 1e6
        slow = _time(getattr(_purecore, name), call_args, args.repeat) * 1e6
        print(f"{label:<20}{fast:>14.2f}{slow:>14.2f}{slow / fast:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
