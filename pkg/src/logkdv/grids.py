"""Grids, banded operators, quadrature, and half-line Fourier utilities.

Two grid flavors cover everything in the package: a uniform periodic
x-line spanning [-L, L) and a uniform half-open k-line spanning
(0, k_max].  Quadrature is the trapezoid rule throughout: on the
periodic line that is the full-period trapezoid h * sum, and on the
k-line the integrand is extended by zero at the origin, giving weight h
on interior nodes and h/2 at k_max.

All types are immutable after construction (sample arrays are marked
read-only), so concurrent readers are safe; operator application
allocates fresh output.
"""

from dataclasses import dataclass, field

import numpy as np

from . import backend
from .errors import GridError, TruncationError

PERIODIC_X = "periodic_x"
HALFLINE_K = "halfline_k"

#: Relative tail size above which a half-line transform refuses to run.
TAIL_TOLERANCE = 1e-12

_TRANSFORM_CHUNK = 512


def _readonly(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Grid:
    """Uniform 1-D sample set: periodic x-line or half-open k-line."""

    kind: str
    half_width_or_kmax: float
    n_points: int
    spacing: float
    points: np.ndarray

    def __post_init__(self):
        if self.kind not in (PERIODIC_X, HALFLINE_K):
            raise GridError(f"unknown grid kind {self.kind!r}")
        if self.n_points < 16:
            raise GridError(f"need at least 16 points, got {self.n_points}")
        if self.spacing <= 0:
            raise GridError("grid spacing must be positive")
        object.__setattr__(self, "points", _readonly(self.points))

    @classmethod
    def periodic(cls, half_width, n_points):
        """Periodic grid on [-L, L) with spacing 2L/n."""
        h = 2.0 * half_width / n_points
        x = -half_width + h * np.arange(n_points)
        return cls(PERIODIC_X, float(half_width), int(n_points), h, x)

    @classmethod
    def halfline(cls, k_max, n_points):
        """Half-line grid on (0, k_max]: nodes j*h, j = 1..n, h = k_max/n."""
        h = k_max / n_points
        k = h * np.arange(1, n_points + 1)
        return cls(HALFLINE_K, float(k_max), int(n_points), h, k)

    @property
    def is_periodic(self):
        return self.kind == PERIODIC_X

    def trapezoid_weights(self):
        """Quadrature weights for this grid (see module docstring)."""
        w = np.full(self.n_points, self.spacing)
        if self.kind == HALFLINE_K:
            w[-1] = 0.5 * self.spacing
        return w

    def require_periodic(self, what):
        if self.kind != PERIODIC_X:
            raise GridError(f"{what} requires a periodic_x grid, got {self.kind}")


@dataclass(frozen=True)
class Field:
    """Real or complex samples on a grid, time-stamped."""

    grid: Grid
    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.shape != (self.grid.n_points,):
            raise GridError(
                f"field has {v.shape} values for a grid of {self.grid.n_points} points"
            )
        if not np.all(np.isfinite(v)):
            raise GridError("field values must be finite")
        object.__setattr__(self, "values", _readonly(v))

    def with_values(self, values, time=None):
        return Field(self.grid, values, self.time if time is None else time)

    def norm_l2(self):
        """Continuum L2 norm by trapezoid quadrature."""
        w = self.grid.trapezoid_weights()
        return float(np.sqrt(np.sum(w * np.abs(self.values) ** 2)))

    def inner(self, other):
        """Trapezoid approximation of the L2 pairing <self, other>."""
        w = self.grid.trapezoid_weights()
        return np.sum(w * np.conj(self.values) * other.values)


@dataclass(frozen=True)
class BandOperator:
    """Real banded (optionally cyclic) matrix in diagonal storage.

    ``bands[m, i]`` holds the entry at row i, column i + offsets[m]
    (modulo n when cyclic).  Non-cyclic out-of-range band entries are
    never read.
    """

    n: int
    offsets: tuple
    bands: np.ndarray
    cyclic: bool

    _offsets_arr: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        b = np.asarray(self.bands, dtype=float)
        if b.shape != (len(self.offsets), self.n):
            raise GridError("bands must have shape (len(offsets), n)")
        object.__setattr__(self, "bands", _readonly(b))
        object.__setattr__(
            self, "_offsets_arr", _readonly(np.asarray(self.offsets, dtype=np.int64))
        )

    def apply(self, x):
        """Matrix-vector product; complex input is handled per part."""
        x = np.asarray(x)
        if np.iscomplexobj(x):
            re = backend.banded_matvec(self._offsets_arr, self.bands, np.ascontiguousarray(x.real), self.cyclic)
            im = backend.banded_matvec(self._offsets_arr, self.bands, np.ascontiguousarray(x.imag), self.cyclic)
            return re + 1j * im
        return backend.banded_matvec(self._offsets_arr, self.bands, np.ascontiguousarray(x, dtype=float), self.cyclic)

    def __matmul__(self, other):
        if isinstance(other, BandOperator):
            return self.matmul(other)
        return self.apply(other)

    def to_dense(self):
        a = np.zeros((self.n, self.n))
        for m, off in enumerate(self.offsets):
            for i in range(self.n):
                j = i + off
                if self.cyclic:
                    a[i, j % self.n] += self.bands[m, i]
                elif 0 <= j < self.n:
                    a[i, j] += self.bands[m, i]
        return a

    def matmul(self, other):
        """Banded product self @ other with summed offsets."""
        if self.n != other.n:
            raise GridError("operator dimensions do not match")
        if self.cyclic != other.cyclic:
            raise GridError("cannot mix cyclic and non-cyclic operators")
        n = self.n
        out = {}
        for p, bp in zip(self.offsets, self.bands):
            for q, bq in zip(other.offsets, other.bands):
                acc = out.setdefault(p + q, np.zeros(n))
                if self.cyclic:
                    acc += bp * np.roll(bq, -p)
                else:
                    idx = np.arange(n) + p
                    valid = (idx >= 0) & (idx < n)
                    acc[valid] += bp[valid] * bq[idx[valid]]
        offsets = tuple(sorted(out))
        bands = np.array([out[o] for o in offsets])
        return BandOperator(n, offsets, bands, self.cyclic)

    def scale(self, c):
        return BandOperator(self.n, self.offsets, c * self.bands, self.cyclic)

    def add_identity(self, c=1.0):
        """Return self + c*I."""
        if 0 in self.offsets:
            bands = self.bands.copy()
            bands[self.offsets.index(0)] += c
            return BandOperator(self.n, self.offsets, bands, self.cyclic)
        offsets = tuple(sorted(self.offsets + (0,)))
        bands = np.zeros((len(offsets), self.n))
        for m, o in enumerate(offsets):
            if o == 0:
                bands[m] = c
            else:
                bands[m] = self.bands[self.offsets.index(o)]
        return BandOperator(self.n, offsets, bands, self.cyclic)


def build_first_derivative(grid):
    """Cyclic central-difference first derivative: +-1/(2h) on offsets +-1.

    Antisymmetric by construction, D^T = -D exactly.
    """
    grid.require_periodic("build_first_derivative")
    n, h = grid.n_points, grid.spacing
    bands = np.empty((2, n))
    bands[0] = -1.0 / (2.0 * h)
    bands[1] = +1.0 / (2.0 * h)
    return BandOperator(n, (-1, 1), bands, cyclic=True)


def build_schrodinger_L(grid):
    """Symmetric cyclic tridiagonal form of -d2/dx2 + (x^2 - 6)/4.

    Second differences plus the pointwise harmonic potential; the
    potential wrap-around jump at x = +-L is benign for fields that
    decay at the boundary.
    """
    grid.require_periodic("build_schrodinger_L")
    n, h = grid.n_points, grid.spacing
    x = grid.points
    bands = np.empty((3, n))
    bands[0] = -1.0 / h**2
    bands[1] = 2.0 / h**2 + 0.25 * (x**2 - 6.0)
    bands[2] = -1.0 / h**2
    return BandOperator(n, (-1, 0, 1), bands, cyclic=True)


def integrate(u):
    """Trapezoid integral of a Field over its grid."""
    return np.sum(u.grid.trapezoid_weights() * u.values)


def antiderivative(u):
    """Cumulative trapezoid integral from the left grid edge.

    The left edge stands in for -infinity; no mean subtraction is done,
    so the result of integrating a non-mean-zero field grows across the
    domain.
    """
    u.grid.require_periodic("antiderivative")
    v = u.values
    h = u.grid.spacing
    out = np.empty_like(v)
    out[0] = 0.0
    np.cumsum(0.5 * h * (v[1:] + v[:-1]), out=out[1:])
    return u.with_values(out)


def _check_tail(values):
    scale = np.max(np.abs(values))
    if scale == 0.0:
        return
    tail = abs(values[-1])
    if tail > TAIL_TOLERANCE * scale:
        raise TruncationError(
            "half-line samples have not decayed at k_max", tail / scale
        )


def halfline_transform_many(grid, values, x_targets, sign):
    """Oscillatory trapezoid transform of rows of ``values``.

    Computes (1/sqrt(2*pi)) * integral of row(k) * exp(sign*i*k*x) dk
    over (0, k_max], extending the integrand by zero at k = 0.  Shared
    by the single-field transform and the batch mode reconstruction.
    """
    k = grid.points
    w = grid.trapezoid_weights()
    x = np.asarray(x_targets, dtype=float)
    weighted = np.atleast_2d(values) * w
    out = np.empty((weighted.shape[0], x.size), dtype=complex)
    for s in range(0, x.size, _TRANSFORM_CHUNK):
        xs = x[s : s + _TRANSFORM_CHUNK]
        kernel = np.exp((sign * 1j) * np.outer(k, xs))
        out[:, s : s + _TRANSFORM_CHUNK] = weighted @ kernel
    return out / np.sqrt(2.0 * np.pi)


def fourier_quadrature(uhat, branch, x_targets):
    """Half-line inverse Fourier transform by direct trapezoid quadrature.

    For branch "plus" evaluates (1/sqrt(2*pi)) * int_0^{k_max} uhat(k)
    e^{ikx} dk.  For branch "minus" the samples are read as uhat_-(-k)
    for k on the grid, and the integral runs over (-k_max, 0), which
    turns the kernel into e^{-ikx}.

    Direct quadrature (not an FFT) so that ``x_targets`` may extend
    beyond any periodic box, e.g. for decay-exponent fits.

    Raises
    ------
    TruncationError
        If the samples have not decayed below 1e-12 (relative) at k_max.
    """
    if branch not in ("plus", "minus"):
        raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")
    if uhat.grid.kind != HALFLINE_K:
        raise GridError("fourier_quadrature requires a halfline_k grid")
    _check_tail(uhat.values)
    sign = +1 if branch == "plus" else -1
    return halfline_transform_many(uhat.grid, uhat.values, x_targets, sign)[0]


def forward_halfline_transform(u, k_grid):
    """Sample the Fourier transform of a periodic-grid field on a k-grid.

    uhat(k) = (1/sqrt(2*pi)) * h * sum_j u(x_j) e^{-i k x_j}; the
    full-period trapezoid sum is spectrally accurate for fields that
    decay inside the box.
    """
    u.grid.require_periodic("forward_halfline_transform")
    x = u.grid.points
    h = u.grid.spacing
    k = k_grid.points
    out = np.empty(k.size, dtype=complex)
    for s in range(0, k.size, _TRANSFORM_CHUNK):
        kernel = np.exp(-1j * np.outer(k[s : s + _TRANSFORM_CHUNK], x))
        out[s : s + _TRANSFORM_CHUNK] = kernel @ u.values
    return out * (h / np.sqrt(2.0 * np.pi))
