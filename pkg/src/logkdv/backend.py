"""Kernel backend selection.

The hot kernels (banded matrix-vector products, pivoted banded LU, and
the pointwise regularized nonlinearity) exist twice: a compiled Cython
extension (``logkdv._core``) and a NumPy/LAPACK fallback
(``logkdv._core_py``).  The compiled core is preferred when it imports;
set ``LOGKDV_BACKEND=python`` or ``LOGKDV_BACKEND=compiled`` to force a
choice.  Factor objects returned by one backend are opaque and must not
be passed to the other.
"""

import os

from . import _core_py

_requested = os.environ.get("LOGKDV_BACKEND", "").strip().lower()

if _requested == "python":
    _impl = _core_py
elif _requested == "compiled":
    from . import _core as _impl  # noqa: F401  (ImportError is the intended failure)
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = _core_py

banded_matvec = _impl.banded_matvec
banded_lu_factor = _impl.banded_lu_factor
banded_lu_solve = _impl.banded_lu_solve
f_eps_array = _impl.f_eps_array
df_eps_array = _impl.df_eps_array


def backend_kind():
    """Return which kernel implementation is active: 'compiled' or 'python'."""
    return _impl.KIND


def available_backends():
    """Return the importable kernel modules, keyed by kind."""
    impls = {"python": _core_py}
    try:
        from . import _core

        impls["compiled"] = _core
    except ImportError:
        pass
    return impls
