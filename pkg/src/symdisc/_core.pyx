# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled numerical kernels; see ``_purecore`` for the reference versions."""
import numpy as np

from libc.math cimport fabs, sqrt, cos, sin, M_PI

NAME = "cython"

cdef double EPS = 2.220446049250313e-16
cdef double START_ANGLE = 0.4 * sqrt(2.0)


cdef inline double cabs_(double complex z) nogil:
    cdef double x = fabs(z.real), y = fabs(z.imag), t
    if x < y:
        t = x
        x = y
        y = t
    if x == 0.0:
        return 0.0
    t = y / x
    return x * sqrt(1.0 + t * t)


def esym(const double complex[::1] roots):
    cdef Py_ssize_t n = roots.shape[0], m, k
    out = np.zeros(n + 1, dtype=complex)
    cdef double complex[::1] e = out
    cdef double complex r
    e[0] = 1.0
    for m in range(n):
        r = roots[m]
        for k in range(m + 1, 0, -1):
            e[k] = e[k] + r * e[k - 1]
    return out[1:].copy()


cdef double _cauchy_radius(double complex[::1] c, Py_ssize_t m):
    cdef double x = 0.0, f, df, step
    cdef Py_ssize_t k, it
    for k in range(1, m + 1):
        if cabs_(c[k]) > x:
            x = cabs_(c[k])
    x += 1.0
    for it in range(100):
        f = 1.0
        df = 0.0
        for k in range(m):
            df = df * x + f
            f = f * x - cabs_(c[k + 1])
        if df <= 0.0:
            break
        step = f / df
        x -= step
        if step <= 1e-12 * x:
            break
    return x


cdef inline void _horner(double complex[::1] c, Py_ssize_t m, double complex z,
                         double complex* p, double complex* dp, double* bound):
    cdef double complex pp = c[0], dd = 0.0
    cdef double bb = cabs_(c[0]), az = cabs_(z)
    cdef Py_ssize_t k
    for k in range(1, m + 1):
        dd = dd * z + pp
        pp = pp * z + c[k]
        bb = bb * az + cabs_(c[k])
    p[0] = pp
    dp[0] = dd
    bound[0] = bb


def aberth(const double complex[::1] a, double tol, int maxiter):
    cdef Py_ssize_t n = a.shape[0], m = n, i, j, k
    out = np.zeros(n, dtype=complex)
    cdef double complex[::1] roots = out
    while m > 0 and a[m - 1] == 0:
        m -= 1
    if m == 0:
        return out, 0.0, 0
    cbuf = np.empty(m + 1, dtype=complex)
    cdef double complex[::1] c = cbuf
    c[0] = 1.0
    for k in range(m):
        c[k + 1] = a[k]
    if m == 1:
        roots[0] = -c[1]
        return out, 0.0, 0

    zbuf = np.empty(m, dtype=complex)
    cdef double complex[::1] z = zbuf
    dbuf = np.zeros(m, dtype=np.uint8)
    cdef unsigned char[::1] done = dbuf
    cdef double radius = _cauchy_radius(c, m), ang, bound, berr = 0.0
    for k in range(m):
        ang = 2.0 * M_PI * k / m + START_ANGLE
        z[k] = radius * (cos(ang) + 1j * sin(ang))

    cdef double complex p, dp, s, d, ratio, den, w, cand, pc, dpc
    cdef double bc
    cdef int it = 0, active
    while it < maxiter:
        it += 1
        active = 0
        for i in range(m):
            if done[i]:
                continue
            _horner(c, m, z[i], &p, &dp, &bound)
            if cabs_(p) <= 4.0 * EPS * bound:
                done[i] = 1
                continue
            active += 1
            s = 0.0
            for j in range(m):
                if j != i:
                    d = z[i] - z[j]
                    if d != 0:
                        s = s + 1.0 / d
            if dp == 0:
                ratio = p
            else:
                ratio = p / dp
            den = 1.0 - ratio * s
            if den == 0:
                w = ratio
            else:
                w = ratio / den
            z[i] = z[i] - w
            if cabs_(w) <= EPS * cabs_(z[i]):
                done[i] = 1
        if active == 0:
            break

    for i in range(m):
        _horner(c, m, z[i], &p, &dp, &bound)
        for k in range(3):
            if p == 0 or dp == 0:
                break
            cand = z[i] - p / dp
            _horner(c, m, cand, &pc, &dpc, &bc)
            if cabs_(pc) < cabs_(p):
                z[i] = cand
                p = pc
                dp = dpc
            else:
                break

    for i in range(m):
        _horner(c, m, z[i], &p, &dp, &bound)
        if bound > 0 and cabs_(p) / bound > berr:
            berr = cabs_(p) / bound
        roots[i] = z[i]
    return out, berr, it


def schur_cohn(const double complex[::1] a, double rho, double degen_tol):
    cdef Py_ssize_t n = a.shape[0], deg, j, k
    buf = np.empty(n, dtype=complex)
    tmp = np.empty(n, dtype=complex)
    cdef double complex[::1] c = buf
    cdef double complex[::1] nw = tmp
    cdef double complex kk
    cdef double ak, scale, rp = 1.0
    for k in range(n):
        rp *= rho
        c[k] = a[k] / rp
    deg = n
    while deg > 0:
        kk = c[deg - 1]
        ak = cabs_(kk)
        if fabs(ak - 1.0) <= degen_tol:
            return 1
        if ak > 1.0:
            return 2
        scale = 1.0 - ak * ak
        for j in range(1, deg):
            nw[j - 1] = (c[j - 1] - kk * c[deg - j - 1].conjugate()) / scale
        for j in range(deg - 1):
            c[j] = nw[j]
        deg -= 1
    return 0


def charpoly(const double complex[:, ::1] w):
    cdef Py_ssize_t n = w.shape[0], i, j, l, k
    Mb = np.zeros((n, n), dtype=complex)
    Nb = np.zeros((n, n), dtype=complex)
    out = np.zeros(n + 1, dtype=complex)
    cdef double complex[:, ::1] M = Mb
    cdef double complex[:, ::1] N = Nb
    cdef double complex[:, ::1] T
    cdef double complex[::1] coef = out
    cdef double complex tr, wil
    coef[0] = 1.0
    for k in range(1, n + 1):
        for i in range(n):
            for j in range(n):
                N[i, j] = 0.0
            for l in range(n):
                wil = w[i, l]
                if wil != 0:
                    for j in range(n):
                        N[i, j] = N[i, j] + wil * M[l, j]
            N[i, i] = N[i, i] + coef[k - 1]
        T = M
        M = N
        N = T
        tr = 0.0
        for i in range(n):
            for l in range(n):
                tr = tr + w[i, l] * M[l, i]
        coef[k] = -tr / k
    return out[1:].copy()


def lu_det(const double complex[:, ::1] mat):
    cdef Py_ssize_t n = mat.shape[0], i, j, k, piv
    Ab = np.array(mat, dtype=complex, copy=True)
    cdef double complex[:, ::1] A = Ab
    cdef double amax = 0.0, umax, best, v
    cdef double complex det = 1.0, pk, f, t
    for i in range(n):
        for j in range(n):
            v = cabs_(A[i, j])
            if v > amax:
                amax = v
    umax = amax
    for k in range(n):
        piv = k
        best = cabs_(A[k, k])
        for i in range(k + 1, n):
            if cabs_(A[i, k]) > best:
                best = cabs_(A[i, k])
                piv = i
        if best == 0.0:
            return 0j, (umax / amax if amax > 0 else 1.0)
        if piv != k:
            for j in range(n):
                t = A[k, j]
                A[k, j] = A[piv, j]
                A[piv, j] = t
            det = -det
        pk = A[k, k]
        det = det * pk
        for i in range(k + 1, n):
            f = A[i, k] / pk
            if f != 0:
                for j in range(k + 1, n):
                    A[i, j] = A[i, j] - f * A[k, j]
                    v = cabs_(A[i, j])
                    if v > umax:
                        umax = v
    return det, (umax / amax if amax > 0 else 1.0)


def permanent(const double complex[:, ::1] mat):
    cdef Py_ssize_t n = mat.shape[0], i, j
    if n == 0:
        return 1 + 0j
    rb = np.zeros(n, dtype=complex)
    cdef double complex[::1] rowsum = rb
    cdef double complex total = 0.0, prod
    cdef unsigned long step, gray = 0, g
    cdef int bits
    for step in range(1, 1UL << n):
        j = 0
        while not (step >> j) & 1:
            j += 1
        gray ^= 1UL << j
        if (gray >> j) & 1:
            for i in range(n):
                rowsum[i] = rowsum[i] + mat[i, j]
        else:
            for i in range(n):
                rowsum[i] = rowsum[i] - mat[i, j]
        prod = 1.0
        for i in range(n):
            prod = prod * rowsum[i]
        bits = 0
        g = gray
        while g:
            bits += g & 1
            g >>= 1
        if bits % 2 == 0:
            total = total + prod
        else:
            total = total - prod
    if n % 2:
        return -total
    return total
