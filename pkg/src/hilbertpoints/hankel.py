"""Hankel operators with polynomial symbols on H^2(T^d).

For a symbol psi the Hankel operator satisfies <H_psi f, conj(g)> = <fg, psi>,
so in the monomial bases its matrix has entry conj(psi_hat(r + c)) at row r,
column c.  Its operator norm is the dual weak-product norm of psi.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .poly import MultiIndex, Polynomial, graded_key


class ZeroSymbolError(ValueError):
    pass


@dataclass(frozen=True)
class HankelMatrix:
    symbol: Polynomial
    row_basis: tuple[MultiIndex, ...]
    col_basis: tuple[MultiIndex, ...]
    entries: np.ndarray = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape


def _divisor_basis(psi: Polynomial) -> list[MultiIndex]:
    """All mu with mu <= kappa componentwise for some kappa in supp(psi)."""
    found = set()
    for kappa in psi.support():
        for mu in product(*(range(e + 1) for e in kappa)):
            found.add(mu)
    return [MultiIndex(mu) for mu in sorted(found, key=graded_key)]


def build_hankel(psi: Polynomial) -> HankelMatrix:
    if psi.is_zero():
        raise ZeroSymbolError("Hankel matrix of the zero symbol")
    basis = _divisor_basis(psi)
    mat = np.zeros((len(basis), len(basis)), dtype=complex)
    coeffs = psi.terms
    for i, r in enumerate(basis):
        for j, c in enumerate(basis):
            v = coeffs.get(tuple(a + b for a, b in zip(r, c)))
            if v is not None:
                mat[i, j] = v.conjugate()
    mat.setflags(write=False)
    return HankelMatrix(psi, tuple(basis), tuple(basis), mat)


def power_norm(a: np.ndarray, rtol: float = 1e-14, maxiter: int = 20000, seed: int = 0) -> tuple[float, bool]:
    """Largest singular value by power iteration on a^H a.

    Returns (value, converged).  The start vector is a fixed pseudo-random
    complex vector so it is never orthogonal to the top singular space by
    construction.
    """
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0.0, True
    gram = a.conj().T @ a
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(gram.shape[0]) + 1j * rng.standard_normal(gram.shape[0])
    x /= np.linalg.norm(x)
    lam = 0.0
    for _ in range(maxiter):
        y = gram @ x
        new = float(np.vdot(x, y).real)
        ny = np.linalg.norm(y)
        if ny == 0.0:
            return 0.0, True
        x = y / ny
        if abs(new - lam) <= rtol * abs(new):
            return float(np.sqrt(max(new, 0.0))), True
        lam = new
    return float(np.sqrt(max(lam, 0.0))), False


def matrix_norm(a: np.ndarray) -> float:
    """Spectral norm of a dense matrix (largest singular value)."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False)[0])


def spectral_norm(m: HankelMatrix, method: str = "svd") -> float:
    """Operator norm of the Hankel matrix.

    ``method="svd"`` uses LAPACK; ``"power"`` runs :func:`power_norm` and
    falls back to LAPACK if the iteration stalls (nearly equal top singular
    values).
    """
    if method == "svd":
        return matrix_norm(m.entries)
    if method == "power":
        value, ok = power_norm(m.entries)
        return value if ok else matrix_norm(m.entries)
    raise ValueError(f"unknown method {method!r}")


def dual_w_norm(psi: Polynomial) -> float:
    """Norm of psi in the dual of the weak product space W(T^d)."""
    return spectral_norm(build_hankel(psi))


def blocks(m: HankelMatrix) -> list[tuple[int, np.ndarray]]:
    """Degree blocks of a homogeneous symbol's Hankel matrix.

    Block k pairs rows of degree m - k with columns of degree k.  All other
    entries vanish, so the operator norm is the largest block norm.
    """
    deg = m.symbol.homogeneous_degree()
    if deg is None:
        raise ValueError("block decomposition needs a homogeneous symbol")
    out = []
    for k in range(deg + 1):
        rows = [i for i, r in enumerate(m.row_basis) if r.degree == deg - k]
        cols = [j for j, c in enumerate(m.col_basis) if c.degree == k]
        out.append((k, m.entries[np.ix_(rows, cols)]))
    return out


def to_csv_rows(m: HankelMatrix) -> list[list[str]]:
    """Header plus one row per basis element; entries as repr'd floats.

    Complex entries are written ``re+imj``; real ones as plain floats.
    """
    def label(k):
        return " ".join(str(e) for e in k)

    def cell(z):
        z = complex(z)
        return repr(z.real) if z.imag == 0 else repr(z)

    header = ["row"] + [label(c) for c in m.col_basis]
    rows = [header]
    for r, line in zip(m.row_basis, m.entries):
        rows.append([label(r)] + [cell(z) for z in line])
    return rows
