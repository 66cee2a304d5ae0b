"""Pure-Python implementations of the numerical kernels.

Every function here has a twin with the same name and signature in the
compiled ``_core`` extension.  The two are kept algorithmically identical
(same iteration order, same stopping rules) so that results agree to the
last few ulps; ``tests/test_backends.py`` enforces that.

All array arguments are 1-D or 2-D ``complex128`` numpy arrays.
"""
import cmath
import math

import numpy as np

NAME = "python"

EPS = 2.220446049250313e-16
# Start angle for the Aberth circle; irrational so that symmetric
# root configurations never sit exactly on an initial guess.
START_ANGLE = 0.4 * math.sqrt(2.0)


def esym(roots):
    """Elementary symmetric functions e_1..e_n of ``roots``.

    Multiplies out prod(1 + r t) one factor at a time, which is the same
    as the coefficient convolution of prod(t - r) up to signs.
    """
    n = len(roots)
    e = [0j] * (n + 1)
    e[0] = 1 + 0j
    for m in range(n):
        r = complex(roots[m])
        for k in range(m + 1, 0, -1):
            e[k] = e[k] + r * e[k - 1]
    return np.array(e[1:], dtype=complex)


def _cauchy_radius(c, m):
    # unique positive root of x^m - |c1| x^(m-1) - ... - |cm|
    b = [abs(c[k]) for k in range(1, m + 1)]
    x = 1.0 + max(b)
    for _ in range(100):
        f = 1.0
        df = 0.0
        for k in range(m):
            df = df * x + f
            f = f * x - b[k]
        if df <= 0.0:
            break
        step = f / df
        x -= step
        if step <= 1e-12 * x:
            break
    return x


def _horner(c, m, z):
    p = c[0]
    dp = 0j
    bound = abs(c[0])
    az = abs(z)
    for k in range(1, m + 1):
        dp = dp * z + p
        p = p * z + c[k]
        bound = bound * az + abs(c[k])
    return p, dp, bound


def aberth(a, tol, maxiter):
    """Roots of the monic polynomial t^n + a_1 t^(n-1) + ... + a_n.

    Returns ``(roots, backward_error, iterations)``.  The backward error is
    the largest componentwise relative residual
    ``|p(r)| / sum_k |c_k| |r|^(n-k)`` over the returned roots.
    """
    n = len(a)
    roots = [0j] * n
    m = n
    while m > 0 and a[m - 1] == 0:
        m -= 1
    if m == 0:
        return np.zeros(n, dtype=complex), 0.0, 0
    c = [1 + 0j] + [complex(a[k]) for k in range(m)]
    if m == 1:
        roots[0] = -c[1]
        return np.array(roots, dtype=complex), 0.0, 0

    radius = _cauchy_radius(c, m)
    z = [radius * cmath.exp(1j * (2.0 * math.pi * k / m + START_ANGLE))
         for k in range(m)]
    done = [False] * m
    it = 0
    while it < maxiter:
        it += 1
        active = 0
        for i in range(m):
            if done[i]:
                continue
            p, dp, bound = _horner(c, m, z[i])
            if abs(p) <= 4.0 * EPS * bound:
                done[i] = True
                continue
            active += 1
            s = 0j
            for j in range(m):
                if j != i:
                    d = z[i] - z[j]
                    if d != 0:
                        s += 1.0 / d
            if dp == 0:
                ratio = p
            else:
                ratio = p / dp
            den = 1.0 - ratio * s
            w = ratio if den == 0 else ratio / den
            z[i] = z[i] - w
            if abs(w) <= EPS * abs(z[i]):
                done[i] = True
        if active == 0:
            break

    # Newton polish: keep a step only when it shrinks the residual
    for i in range(m):
        p, dp, bound = _horner(c, m, z[i])
        for _ in range(3):
            if p == 0 or dp == 0:
                break
            cand = z[i] - p / dp
            pc, dpc, bc = _horner(c, m, cand)
            if abs(pc) < abs(p):
                z[i], p, dp = cand, pc, dpc
            else:
                break

    berr = 0.0
    for i in range(m):
        p, dp, bound = _horner(c, m, z[i])
        if bound > 0:
            berr = max(berr, abs(p) / bound)
        roots[i] = z[i]
    return np.array(roots, dtype=complex), berr, it


def schur_cohn(a, rho, degen_tol):
    """Schur-Cohn step-down test on the roots of t^n + a_1 t^(n-1) + ... + a_n.

    Tests whether all roots lie in the open disc of radius ``rho``.
    Returns 0 (inside), 1 (degenerate pivot: boundary) or 2 (outside).
    """
    n = len(a)
    c = [complex(a[k]) / rho ** (k + 1) for k in range(n)]
    deg = n
    while deg > 0:
        k = c[deg - 1]
        ak = abs(k)
        if abs(ak - 1.0) <= degen_tol:
            return 1
        if ak > 1.0:
            return 2
        scale = 1.0 - ak * ak
        # c_j <- (c_j - k conj(c_{deg-j})) / (1 - |k|^2), c_0 = 1 implicit
        new = [0j] * (deg - 1)
        for j in range(1, deg):
            new[j - 1] = (c[j - 1] - k * c[deg - j - 1].conjugate()) / scale
        c = new
        deg -= 1
    return 0


def charpoly(w):
    """Coefficients a_1..a_n of det(tI - W) by the Faddeev-LeVerrier recursion."""
    n = w.shape[0]
    W = [[complex(w[i, j]) for j in range(n)] for i in range(n)]
    M = [[0j] * n for _ in range(n)]
    coef = [0j] * (n + 1)
    coef[0] = 1 + 0j
    for k in range(1, n + 1):
        # M <- W M + c_{k-1} I
        new = [[0j] * n for _ in range(n)]
        for i in range(n):
            Wi = W[i]
            row = new[i]
            for l in range(n):
                wil = Wi[l]
                if wil != 0:
                    Ml = M[l]
                    for j in range(n):
                        row[j] += wil * Ml[j]
            row[i] += coef[k - 1]
        M = new
        tr = 0j
        for i in range(n):
            Wi = W[i]
            for l in range(n):
                tr += Wi[l] * M[l][i]
        coef[k] = -tr / k
    return np.array(coef[1:], dtype=complex)


def lu_det(mat):
    """Determinant by Gaussian elimination with partial pivoting.

    Returns ``(det, growth)`` where growth is max|U| / max|A|.
    """
    n = mat.shape[0]
    A = [[complex(mat[i, j]) for j in range(n)] for i in range(n)]
    amax = max((abs(x) for row in A for x in row), default=0.0)
    umax = amax
    det = 1 + 0j
    for k in range(n):
        piv = k
        best = abs(A[k][k])
        for i in range(k + 1, n):
            if abs(A[i][k]) > best:
                best = abs(A[i][k])
                piv = i
        if best == 0.0:
            return 0j, (umax / amax if amax > 0 else 1.0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        pk = A[k][k]
        det *= pk
        for i in range(k + 1, n):
            f = A[i][k] / pk
            if f != 0:
                Ai = A[i]
                Ak = A[k]
                for j in range(k + 1, n):
                    Ai[j] -= f * Ak[j]
                    if abs(Ai[j]) > umax:
                        umax = abs(Ai[j])
    return det, (umax / amax if amax > 0 else 1.0)


def permanent(mat):
    """Permanent by Ryser's formula with Gray-code subset enumeration."""
    n = mat.shape[0]
    if n == 0:
        return 1 + 0j
    A = [[complex(mat[i, j]) for j in range(n)] for i in range(n)]
    rowsum = [0j] * n
    total = 0j
    sign = -1.0 if n % 2 else 1.0
    gray = 0
    for step in range(1, 1 << n):
        # flip the lowest set bit of step
        j = (step & -step).bit_length() - 1
        gray ^= 1 << j
        if gray >> j & 1:
            for i in range(n):
                rowsum[i] += A[i][j]
        else:
            for i in range(n):
                rowsum[i] -= A[i][j]
        prod = 1 + 0j
        for i in range(n):
            prod *= rowsum[i]
        bits = bin(gray).count("1")
        total += prod if bits % 2 == 0 else -prod
    return sign * total
