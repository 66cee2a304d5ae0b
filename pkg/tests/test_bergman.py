import itertools
import math

import numpy as np
import pytest
from conftest import disc

from symdisc.bergman import (
    KernelPath,
    critical_query,
    jacobian_det,
    kernel,
    kernel_closed2,
    kernel_confluent,
    kernel_general,
    kernel_matrix,
    kernel_permanent,
    kernel_sym,
    lifted_jacobian,
    luqikeng_scan,
    transformation_check,
)
from symdisc.errors import ConfluentInput
from symdisc.maps import MoebiusMap
from symdisc.scans import _fd_jacobian
from symdisc.serialize import dumps
from symdisc.sympoly import symmetrize

TWO_OVER_PI2 = 2 / math.pi ** 2


def test_jacobian_examples():
    assert jacobian_det([0.3, 0.1]) == pytest.approx(0.2)
    assert jacobian_det([0.7]) == 1
    assert jacobian_det([1, 2, 3]) == -2


def test_jacobian_matches_finite_differences(rng):
    for n in range(1, 7):
        for _ in range(20):
            lam = disc(rng, n)
            fd = np.linalg.det(_fd_jacobian(lam, 1e-5))
            exact = jacobian_det(lam)
            assert abs(fd - exact) <= 1e-6 * abs(exact)
    assert np.linalg.det(_fd_jacobian(np.array([1, 2, 3], complex), 1e-5)) == pytest.approx(-2)


def test_origin_value_all_routes():
    assert kernel_closed2([0, 0], [0, 0]).value == pytest.approx(TWO_OVER_PI2, rel=1e-15)
    v = kernel_confluent([0, 0], [0, 0], delegate=False)
    assert abs(v.value - TWO_OVER_PI2) <= 1e-12 * TWO_OVER_PI2
    assert v.path is KernelPath.CONFLUENT
    assert kernel_sym([0, 0], [0, 0]).path is KernelPath.CLOSED_FORM2


def test_disc_kernel():
    assert kernel_general([0.0], [0.0]).value == pytest.approx(1 / math.pi)
    lam, mu = 0.3 + 0.2j, -0.5j
    expect = 1 / (math.pi * (1 - lam * np.conj(mu)) ** 2)
    assert kernel_general([lam], [mu]).value == pytest.approx(expect, rel=1e-14)


def test_general_matches_closed_form():
    lam = [0.3, -0.4]
    g = kernel_general(lam, lam)
    c = kernel_closed2(symmetrize(lam), symmetrize(lam))
    assert g.value.real > 0 and abs(g.value.imag) <= 1e-14 * g.value.real
    assert abs(g.value - c.value) <= 1e-10 * abs(c.value)


def test_general_matches_closed_form_random(rng):
    for _ in range(300):
        lam, mu = disc(rng, 2), disc(rng, 2)
        if min(abs(lam[0] - lam[1]), abs(mu[0] - mu[1])) < 1e-2:
            continue
        g = kernel_general(lam, mu).value
        c = kernel_closed2(symmetrize(lam), symmetrize(mu)).value
        assert abs(g - c) <= 1e-10 * abs(c)


def test_hermitian_symmetry(rng):
    for n in (2, 3, 4):
        for _ in range(30):
            lam, mu = disc(rng, n), disc(rng, n)
            a = kernel(lam, mu).value
            b = kernel(mu, lam).value
            assert abs(a - np.conj(b)) <= 1e-12 * abs(a)


def test_diagonal_positive(rng):
    for n in (1, 2, 3, 5):
        for _ in range(30):
            lam = disc(rng, n)
            v = kernel(lam, lam).value
            assert v.real > 0 and abs(v.imag) <= 1e-12 * abs(v)


def test_leibniz_expansion(rng):
    for n in (2, 3, 4):
        lam, mu = disc(rng, n), disc(rng, n)
        m = kernel_matrix(lam, mu)
        total = 0j
        for perm in itertools.permutations(range(n)):
            inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
            total += (-1) ** inv * np.prod([m[j, perm[j]] for j in range(n)])
        det = np.linalg.det(m)
        assert abs(total - det) <= 1e-10 * abs(det)


def test_permanent_oracle_agrees(rng):
    for n in (2, 3, 4, 5):
        for _ in range(20):
            lam, mu = disc(rng, n), disc(rng, n)
            v = kernel(lam, mu).value
            assert abs(v - kernel_permanent(lam, mu)) <= 1e-9 * abs(v)


def test_general_refuses_confluent_input():
    with pytest.raises(ConfluentInput):
        kernel_general([0.3, 0.3], [0.1, 0.2])
    assert critical_query([0.3, 0.3]).confluent
    assert not critical_query([0.3, 0.1]).confluent
    with pytest.raises(ValueError):
        kernel_general([1.2, 0.0], [0.1, 0.2])


def test_confluent_n2_matches_closed_form():
    lam = [0.3, 0.3]
    z = symmetrize(lam)
    closed = kernel_closed2(z, z).value
    assert closed.real > 0
    assert kernel_confluent(lam, lam).path is KernelPath.CLOSED_FORM2
    ext = kernel_confluent(lam, lam, delegate=False).value
    assert abs(ext - closed) <= 1e-12 * abs(closed)


def test_confluent_is_the_limit_of_general():
    a = 0.3
    z = symmetrize([a, a])
    target = kernel_closed2(z, z).value
    errs = []
    for eps in (1e-2, 5e-3, 2.5e-3):
        lam = [a, a + eps]
        errs.append(abs(kernel_general(lam, lam).value - target))
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert min(orders) >= 1


def test_confluent_origin_n3():
    v = kernel_confluent([0, 0, 0], [0, 0, 0])
    assert v.path is KernelPath.CONFLUENT
    assert abs(v.value - 6 / math.pi ** 3) <= 1e-12 * abs(v.value)
    assert v.condition_estimate < 1e-6


def test_confluent_mixed_multiplicities(rng):
    lam = np.array([0.2, 0.2, -0.1j, 0.5])
    mu = disc(rng, 4) * 0.8
    v = kernel(lam, mu).value
    assert abs(v - kernel_permanent(lam, mu)) <= 1e-9 * abs(v)


def test_confluent_independent_of_order():
    a = kernel_confluent([0.3, 0.1, 0.3], [0.2, 0.2, -0.4], delegate=False).value
    b = kernel_confluent([0.3, 0.3, 0.1], [-0.4, 0.2, 0.2], delegate=False).value
    assert abs(a - b) <= 1e-9 * abs(a)


def test_transformation_identity_and_rotation(rng):
    ident = MoebiusMap()
    c = np.exp(0.7j)
    rot = MoebiusMap.rotation(c)
    for _ in range(20):
        lam, mu = disc(rng, 2), disc(rng, 2)
        assert transformation_check(ident, lam, mu) == 0.0
        assert lifted_jacobian(rot, lam) == pytest.approx(c ** 3, rel=1e-14)
        assert transformation_check(rot, lam, mu) < 1e-13


def test_transformation_random(rng):
    for n in (2, 3):
        for _ in range(50):
            h = MoebiusMap.random(rng)
            lam, mu = disc(rng, n, 0.95), disc(rng, n, 0.95)
            assert transformation_check(h, lam, mu) < 1e-8


def test_luqikeng_small_scan():
    rep = luqikeng_scan(25_000, seed=3)
    assert rep["passed"] and rep["min_abs_K"] > 0
    assert dumps(rep) == dumps(luqikeng_scan(25_000, seed=3, threads=4))
    z, w = rep["argmin"]["z"], rep["argmin"]["w"]
    assert abs(kernel_closed2(z, w).value) == pytest.approx(rep["min_abs_K"], rel=1e-12)
