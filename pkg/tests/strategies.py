"""Shared hypothesis strategies."""
import numpy as np
from hypothesis import strategies as st


def _point(radius, r, t):
    rho = radius * np.sqrt(r)
    return complex(rho * np.cos(2 * np.pi * t), rho * np.sin(2 * np.pi * t))


def complex_in_disc(radius=1.0):
    # moduli are 0 or at least 1e-12 so coefficients stay out of the
    # subnormal range, where no backward-error guarantee is meaningful
    area = st.one_of(st.just(0.0), st.floats(1e-24, 0.999))
    return st.builds(lambda r, t: _point(radius, r, t), area, st.floats(0.0, 1.0))


def root_tuples(min_n=1, max_n=8, radius=1.0):
    return st.lists(complex_in_disc(radius), min_size=min_n, max_size=max_n)


def separated(lam, sep):
    lam = np.asarray(lam)
    if lam.size < 2:
        return True
    d = np.abs(lam[:, None] - lam[None, :])
    np.fill_diagonal(d, np.inf)
    return d.min() >= sep
