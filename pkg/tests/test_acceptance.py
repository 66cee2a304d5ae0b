"""The twelve exit criteria, each at its stated tolerance and time budget.

Every test prints a ``PASS``/``FAIL criterion k: ...`` line as it finishes,
and the lines are repeated together in the terminal summary.
"""
import math
import time

import numpy as np
import pytest
from conftest import ACCEPTANCE_LINES

from symdisc import scans
from symdisc._parallel import default_threads
from symdisc.bergman import kernel_closed2, kernel_confluent
from symdisc.maps import BlaschkeProduct
from symdisc.spectral import MatrixPolynomial

pytestmark = pytest.mark.acceptance
THREADS = default_threads()
SEED = 20240611


def _record(k, ok, elapsed, limit, detail):
    ok = bool(ok) and elapsed <= limit
    line = (f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail} "
            f"({elapsed:.2f} s, limit {limit:g} s)")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


class _Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def test_criterion_01_kernel_value_at_origin():
    target = 2 / math.pi ** 2
    with _Clock() as c:
        closed = kernel_closed2(np.zeros(2), np.zeros(2)).value
        conf = kernel_confluent(np.zeros(2), np.zeros(2), delegate=False).value
    err = max(abs(closed - target), abs(conf - target))
    assert _record(1, err <= 1e-12, c.elapsed, 1.0,
                   f"closed form {closed.real:.15f}, confluent {conf.real:.15f}, err {err:.1e}")


def test_criterion_02_formula_cross_check():
    with _Clock() as c:
        rep = scans.formula_scan(10_000, SEED, THREADS)
    assert _record(2, rep["passed"], c.elapsed, 10.0,
                   f"worst relative disagreement {rep['max_relative_error']:.2e} <= 1e-10")


def test_criterion_03_jacobian_identity():
    worst = 0.0
    ok = True
    with _Clock() as c:
        for n in range(2, 7):
            rep = scans.jacobian_scan(n, 1000, SEED + n, THREADS)
            ok &= rep["passed"]
            worst = max(worst, rep["max_relative_error"])
    assert _record(3, ok, c.elapsed, 30.0, f"worst relative error {worst:.2e} <= 1e-6, n = 2..6")


def test_criterion_04_lu_qi_keng():
    with _Clock() as c:
        rep = scans.luqikeng(100_000, SEED, THREADS)
    arg = rep["argmin"]
    assert _record(4, rep["passed"], c.elapsed, 60.0,
                   f"min |K| = {rep['min_abs_K']:.4e} at lambda = {np.round(arg['lambda'], 4)}, "
                   f"mu = {np.round(arg['mu'], 4)}")


def test_criterion_05_roundtrip():
    with _Clock() as c:
        rep = scans.roundtrip_scan(8, 10_000, SEED, THREADS)
    assert _record(5, rep["passed"], c.elapsed, 30.0,
                   f"worst multiset distance {rep['max_distance']:.2e} <= 1e-8")


def test_criterion_06_oracle_equivalence():
    with _Clock() as c:
        rep = scans.oracle_equivalence_scan(6, 10_000, SEED, THREADS)
    d = sum(rep[k] for k in ("schur_disagree", "root_failures", "ball_disagree"))
    assert _record(6, rep["passed"], c.elapsed, 60.0,
                   f"{d} disagreements outside the fuzz bands, "
                   f"worst psi error {rep['psi_max_error']:.2e} <= 1e-8")


def test_criterion_07_properness_decay():
    rng = np.random.default_rng(SEED)
    ok, ratios = True, []
    with _Clock() as c:
        for _ in range(5):
            B = BlaschkeProduct.random(int(rng.integers(1, 5)), rng)
            for n in (2, 3):
                rep = scans.properness(B, n, seed=int(rng.integers(2 ** 31)))
                ok &= rep["passed"]
                ratios.extend(rep["decay_ratios"])
    assert _record(7, ok, c.elapsed, 60.0,
                   f"10 map/dimension pairs, smallest decay ratio per decade {min(ratios):.2f} >= 2")


def test_criterion_08_automorphism_invariance():
    ok, kern, lift = True, 0.0, 0.0
    with _Clock() as c:
        for n in (2, 3):
            rep = scans.transformation_scan(n, 1000, SEED + n, THREADS)
            ok &= rep["passed"]
            kern = max(kern, rep["kernel_residual"])
            lift = max(lift, rep["roundtrip_residual"], rep["composition_residual"])
    assert _record(8, ok, c.elapsed, 60.0,
                   f"kernel residual {kern:.2e} <= 1e-8, lifted composition {lift:.2e} <= 1e-9")


def test_criterion_09_constant_spectrum_path():
    with _Clock() as c:
        rep = scans.path_scan(6, 1000, SEED, THREADS)
    assert _record(9, rep["passed"], c.elapsed, 60.0,
                   f"endpoint {max(rep['start_residual'], rep['end_residual']):.2e} <= 1e-8 |W|, "
                   f"drift {rep['spectrum_drift']:.2e} <= 1e-7 (1+|W|)")


def test_criterion_10_descent_and_spectrum_action():
    rng = np.random.default_rng(SEED)
    X = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) + 3 * np.eye(3)
    maps = [scans.DEFAULT_MATRIX_MAP,
            MatrixPolynomial((0.1, 0.2j, 0.3, -0.2), conjugator=X)]
    ok, desc, act = True, 0.0, 0.0
    with _Clock() as c:
        for i, F in enumerate(maps):
            d = scans.descent(3, 1000, SEED + i, F)
            a = scans.spectrum_action(3, 1000, SEED + i, F)
            ok &= d["passed"] and a["passed"]
            desc = max(desc, d["residuals"]["max"])
            act = max(act, a["distances"]["max"])
    assert _record(10, ok, c.elapsed, 60.0,
                   f"descent residual {desc:.2e}, spectrum action {act:.2e}, both <= 1e-7")


def test_criterion_11_hyperconvexity():
    with _Clock() as c:
        rep = scans.hyperconvexity_scan(3, 1000, 20, SEED)
    assert _record(11, rep["passed"], c.elapsed, 30.0,
                   f"max interior exhaustion {rep['max_interior_exhaustion']:.2e} < 0, "
                   f"{rep['non_monotone_rays']} non-monotone rays")


def test_criterion_12_shilov_max_modulus():
    ok, slack = True, math.inf
    with _Clock() as c:
        for n in (2, 3):
            rep = scans.max_modulus_scan(n, 20, 10_000, seed=SEED + n)
            ok &= rep["passed"]
            slack = min(slack, min(r["shilov_max"] - r["interior_max"] for r in rep["reports"]))
    assert _record(12, ok, c.elapsed, 60.0,
                   f"40 test functions, smallest Shilov minus interior margin {slack:.3e}")
