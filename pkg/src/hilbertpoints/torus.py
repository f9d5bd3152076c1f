"""Tensor-grid quadrature on T^d.

Everything here is the trapezoidal rule on the uniform grid
theta_j = 2 pi j / N per axis, which integrates trigonometric polynomials of
per-axis degree < N exactly.  Sums go through :func:`math.fsum` so results do
not depend on array layout or summation order.

For an m-homogeneous polynomial f, f(e^{i t_1}, ..., e^{i t_d}) equals
e^{i m t_d} f(e^{i(t_1 - t_d)}, ..., e^{i(t_{d-1} - t_d)}, 1).  Integrals of
|f|^p and the degree-m Fourier coefficients of sgn f can therefore be taken
over d - 1 variables; see :func:`homogeneous_reduction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from .poly import Polynomial, h2_norm, monomials_of_degree

#: |z| below this counts as zero in sgn.
SGN_THRESHOLD = 1e-13

DEFAULT_N_REDUCED = 4096
DEFAULT_N_FULL = 512


class AliasError(ValueError):
    pass


@dataclass(frozen=True)
class TorusGrid:
    dimension: int
    n: int

    def __post_init__(self):
        if self.dimension < 0:
            raise ValueError("dimension must be nonnegative")
        if self.n < 1:
            raise ValueError("need at least one point per axis")

    @property
    def size(self) -> int:
        return self.n**self.dimension

    @property
    def nodes(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.n) / self.n

    def roots(self) -> np.ndarray:
        """exp(2 pi i r / n) for r = 0..n-1."""
        return np.exp(2j * np.pi * np.arange(self.n) / self.n)


@dataclass(frozen=True)
class GridSamples:
    grid: TorusGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex).reshape(-1)
        if v.size != self.grid.size:
            raise ValueError(f"expected {self.grid.size} values, got {v.size}")
        if not np.all(np.isfinite(v)):
            raise ValueError("non-finite sample values")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def as_array(self) -> np.ndarray:
        """Values reshaped to (n,)*d, axis j indexing theta_j."""
        return self.values.reshape((self.grid.n,) * self.grid.dimension)


def _monomial_table(grid: TorusGrid, k: Sequence[int]) -> np.ndarray:
    """z^k on the grid, with each phase taken from the exact root table."""
    n = grid.n
    roots = grid.roots()
    j = np.arange(n)
    out = np.ones((n,) * grid.dimension, dtype=complex)
    for axis, e in enumerate(k):
        shape = [1] * grid.dimension
        shape[axis] = n
        out = out * roots[(e * j) % n].reshape(shape)
    return out


def sample(p: Polynomial, grid: TorusGrid) -> GridSamples:
    if p.dimension != grid.dimension:
        raise ValueError(f"polynomial has {p.dimension} variables, grid has {grid.dimension}")
    vals = np.zeros((grid.n,) * grid.dimension, dtype=complex)
    for k, c in p:
        vals = vals + c * _monomial_table(grid, k)
    return GridSamples(grid, vals.reshape(-1))


def dehomogenize(p: Polynomial) -> Polynomial:
    """Set the last variable to 1, giving a polynomial in d - 1 variables."""
    if p.dimension < 2:
        raise ValueError("need at least two variables to dehomogenize")
    out: dict[tuple, complex] = {}
    for k, c in p:
        key = tuple(k[:-1])
        out[key] = out.get(key, 0j) + c
    return Polynomial(out, p.dimension - 1)


def homogeneous_reduction(p: Polynomial, grid: TorusGrid) -> GridSamples:
    """Samples of a homogeneous ``p`` on a (d-1)-dimensional grid.

    Means of |p|^s and of g(sgn p) for any g with g(e^{ia} w) = e^{ia} g(w)
    agree with the full d-dimensional ones; Fourier coefficient kappa of an
    m-homogeneous function equals coefficient kappa[:-1] of the reduction.
    """
    if p.homogeneous_degree() is None:
        raise ValueError("polynomial is not homogeneous")
    return sample(dehomogenize(p), TorusGrid(p.dimension - 1, grid.n))


def default_samples(p: Polynomial, n_reduced: int = DEFAULT_N_REDUCED, n_full: int = DEFAULT_N_FULL) -> GridSamples:
    """Reduced samples for homogeneous p in d >= 2, full grid otherwise."""
    if p.dimension >= 2 and p.homogeneous_degree() is not None:
        return homogeneous_reduction(p, TorusGrid(p.dimension, n_reduced))
    return sample(p, TorusGrid(p.dimension, n_full))


def lp_norm(s: GridSamples, p_exp: float) -> float:
    if p_exp < 1:
        raise ValueError("exponent must be >= 1")
    mags = np.abs(s.values)
    if p_exp != 1:
        mags = mags**p_exp
    return (math.fsum(mags) / s.grid.size) ** (1.0 / p_exp)


def _check_alias(grid: TorusGrid, kappa: Sequence[int]) -> None:
    if len(kappa) != grid.dimension:
        raise ValueError(f"index {tuple(kappa)} has wrong length for a {grid.dimension}-dimensional grid")
    if any(2 * abs(k) >= grid.n for k in kappa):
        raise AliasError(f"index {tuple(kappa)} aliases on a grid with n={grid.n}")


def fourier_coeff(s: GridSamples, kappa: Sequence[int]) -> complex:
    """Trapezoidal approximation of the Fourier coefficient at ``kappa``.

    ``kappa`` may have negative entries; each must satisfy |kappa_j| < n/2.
    """
    grid = s.grid
    _check_alias(grid, kappa)
    n = grid.n
    if grid.dimension == 0:
        return complex(s.values[0])
    phase = np.zeros((n,) * grid.dimension, dtype=np.int64)
    j = np.arange(n)
    for axis, k in enumerate(kappa):
        shape = [1] * grid.dimension
        shape[axis] = n
        phase = phase + ((-k * j) % n).reshape(shape)
    weighted = s.values * grid.roots()[(phase % n).reshape(-1)]
    return complex(math.fsum(weighted.real), math.fsum(weighted.imag)) / grid.size


def fourier_table(s: GridSamples) -> np.ndarray:
    """All Fourier coefficients at once via FFT, indexed like ``np.fft``.

    Entry ``[k_1 % n, ..., k_d % n]`` approximates the coefficient at k.
    Agrees with :func:`fourier_coeff` to rounding.
    """
    return np.fft.fftn(s.as_array()) / s.grid.size


def sgn_samples(s: GridSamples) -> GridSamples:
    v = s.values
    mag = np.abs(v)
    out = np.zeros_like(v)
    # values this small next to the largest sample are zeros of phi
    nz = mag > SGN_THRESHOLD * mag.max(initial=0.0)
    out[nz] = v[nz] / mag[nz]
    return GridSamples(s.grid, out)


def h1_norm(p: Polynomial, n_reduced: int = DEFAULT_N_REDUCED, n_full: int = DEFAULT_N_FULL) -> float:
    return lp_norm(default_samples(p, n_reduced, n_full), 1)


def modulus_rsd(s: GridSamples) -> float:
    """Relative standard deviation of |f| over the grid (0 for constant modulus)."""
    mags = np.abs(s.values)
    mean = math.fsum(mags) / mags.size
    if mean == 0:
        return math.inf
    var = math.fsum((mags - mean) ** 2) / mags.size
    return math.sqrt(var) / mean


def sgn_projection(phi: Polynomial, grid: TorusGrid) -> Polynomial:
    """Analytic projection of sgn(phi), restricted to a finite index set.

    For m-homogeneous phi (d >= 2) sgn(phi) is m-homogeneous, so its analytic
    part lives on the degree-m monomials and is computed exactly up to
    quadrature error.  Otherwise the coefficients are taken on all
    nonnegative indices of total degree <= 2 * deg(phi) that are alias-free.
    """
    if phi.is_zero():
        raise ValueError("sgn projection of the zero polynomial")
    d = phi.dimension
    m = phi.homogeneous_degree()
    if d >= 2 and m is not None:
        s = sgn_samples(homogeneous_reduction(phi, grid))
        coeffs = {k: fourier_coeff(s, k[:-1]) for k in monomials_of_degree(m, d)}
        return Polynomial(coeffs, d)
    s = sgn_samples(sample(phi, grid))
    top = min(2 * phi.degree, (grid.n - 1) // 2)
    coeffs = {}
    for k in product(range(top + 1), repeat=d):
        if sum(k) <= 2 * phi.degree:
            coeffs[k] = fourier_coeff(s, k)
    return Polynomial(coeffs, d)


def h1_hilbert_residual(phi: Polynomial, grid: TorusGrid) -> float:
    """H^2 distance between P(sgn phi) and (|phi|_1 / |phi|_2^2) phi.

    Zero exactly when phi is a Hilbert point in H^1.  For non-homogeneous
    phi the projection is truncated (see :func:`sgn_projection`), so the
    value is a lower bound for the true distance.
    """
    if phi.is_zero():
        raise ValueError("residual undefined for the zero polynomial")
    if phi.dimension != grid.dimension:
        raise ValueError(f"polynomial has {phi.dimension} variables, grid has {grid.dimension}")
    if phi.dimension >= 2 and phi.homogeneous_degree() is not None:
        h1 = lp_norm(homogeneous_reduction(phi, grid), 1)
    else:
        h1 = lp_norm(sample(phi, grid), 1)
    scale = h1 / h2_norm(phi) ** 2
    return h2_norm(sgn_projection(phi, grid) - phi * scale)
