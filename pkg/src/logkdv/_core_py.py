"""Pure-Python kernel implementations (NumPy + LAPACK via SciPy).

Mirrors the API of the compiled extension ``logkdv._core``; one of the
two is selected at import time by :mod:`logkdv.backend`.
"""

import numpy as np
from scipy.linalg.lapack import dgbtrf, dgbtrs

KIND = "python"


def banded_matvec(offsets, bands, x, cyclic):
    """Multiply a banded matrix by a vector.

    ``bands[m, i]`` is the matrix entry ``A[i, i + offsets[m]]`` (taken
    modulo n when ``cyclic``).  Out-of-range entries of non-cyclic band
    arrays are ignored.
    """
    n = x.shape[0]
    y = np.zeros_like(x)
    for m, off in enumerate(offsets):
        off = int(off)
        if cyclic:
            y += bands[m] * np.roll(x, -off)
        elif off >= 0:
            y[: n - off] += bands[m, : n - off] * x[off:]
        else:
            y[-off:] += bands[m, -off:] * x[: n + off]
    return y


def banded_lu_factor(ab, kl, ku):
    """LU-factor a banded matrix with partial pivoting.

    ``ab`` is LAPACK band storage with ``kl`` extra fill rows:
    shape (2*kl + ku + 1, n), ``ab[kl + ku + i - j, j] = A[i, j]``.
    """
    lu, ipiv, info = dgbtrf(ab, kl, ku)
    if info != 0:
        from .errors import SolverError

        raise SolverError(f"banded LU factorization failed (LAPACK info={info})")
    return lu, ipiv


def banded_lu_solve(lu, ipiv, kl, ku, b):
    """Solve with a factorization from :func:`banded_lu_factor`."""
    x, info = dgbtrs(lu, kl, ku, b, ipiv)
    if info != 0:
        from .errors import SolverError

        raise SolverError(f"banded solve failed (LAPACK info={info})")
    return x


def f_eps_array(v, eps, m):
    """Regularized logarithmic nonlinearity, elementwise.

    Outer branch v*log|v| for |v| >= eps, odd matching polynomial inside.
    """
    av = np.abs(v)
    safe = np.where(av > 0.0, av, 1.0)
    outer = v * np.log(safe)
    if m == 1:
        inner = (np.log(eps) - 0.5) * v + v * v * v / (2.0 * eps * eps)
    else:
        e2 = eps * eps
        v3 = v * v * v
        inner = (np.log(eps) - 0.75) * v + v3 / e2 - v3 * v * v / (4.0 * e2 * e2)
    return np.where(av >= eps, outer, inner)


def df_eps_array(v, eps, m):
    """Derivative of :func:`f_eps_array` with respect to v, elementwise."""
    av = np.abs(v)
    safe = np.where(av > 0.0, av, 1.0)
    outer = np.log(safe) + 1.0
    if m == 1:
        inner = (np.log(eps) - 0.5) + 3.0 * v * v / (2.0 * eps * eps)
    else:
        e2 = eps * eps
        v2 = v * v
        inner = (np.log(eps) - 0.75) + 3.0 * v2 / e2 - 5.0 * v2 * v2 / (4.0 * e2 * e2)
    return np.where(av >= eps, outer, inner)
