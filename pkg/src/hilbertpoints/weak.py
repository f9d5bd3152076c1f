"""Weak product norm ||.||_W on W(T^d) = H^2 (.) H^2.

Upper bounds come from explicit weak factorizations f = sum g_j h_j, whose
cost sum |g_j|_2 |h_j|_2 dominates ||f||_W.  Lower bounds come from duality:
for any symbol psi, ||f||_W >= |<psi, f>| / ||psi||_{W*}, where the dual norm
is a Hankel operator norm.  For m-homogeneous f the supremum may be taken
over m-homogeneous psi, which is what :func:`w_norm_lower` searches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from .hankel import dual_w_norm
from .poly import (
    HomogeneousPart,
    Polynomial,
    h2_norm,
    homogeneous_parts,
    inner_product,
    max_coefficient_diff,
    monomials_of_degree,
    phi_alpha,
)

IDENTITY_TOL = 1e-12
COST_TOL = 1e-10
INVPHI = (math.sqrt(5) - 1) / 2


class FactorizationError(ValueError):
    pass


def _identity_scale(target: Polynomial) -> float:
    return max(1.0, max((abs(c) for c in target.terms.values()), default=0.0))


@dataclass(frozen=True)
class WeakFactorization:
    """A finite weak factorization target = sum_j g_j h_j.

    Construction checks the identity coefficient-wise (to 1e-12, relative to
    the largest target coefficient when that exceeds 1).
    """

    pairs: tuple[tuple[Polynomial, Polynomial], ...]
    target: Polynomial

    def __post_init__(self):
        pairs = tuple((g, h) for g, h in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        for g, h in pairs:
            if g.dimension != self.target.dimension or h.dimension != self.target.dimension:
                raise FactorizationError("factor dimension differs from target")
        if self.residual() > IDENTITY_TOL * _identity_scale(self.target):
            raise FactorizationError(f"sum of products misses target by {self.residual():.3e}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Polynomial, Polynomial]]) -> "WeakFactorization":
        pairs = tuple(pairs)
        if not pairs:
            raise FactorizationError("need at least one pair to infer the target")
        return cls(pairs, product_sum(pairs))

    @classmethod
    def trivial(cls, f: Polynomial) -> "WeakFactorization":
        """f = f * 1."""
        return cls(((f, Polynomial.constant(1.0, f.dimension)),), f)

    def residual(self) -> float:
        return max_coefficient_diff(product_sum(self.pairs, self.target.dimension), self.target)

    def cost(self) -> float:
        return math.fsum(h2_norm(g) * h2_norm(h) for g, h in self.pairs)

    def to_text(self) -> str:
        lines = ["# weak factorization: target = sum of g*h", f"dimension {self.target.dimension}"]
        for g, h in self.pairs:
            lines += ["pair", "g", g.to_text().rstrip("\n"), "h", h.to_text().rstrip("\n")]
        lines.append(f"cost {self.cost()!r}")
        return "\n".join(line for line in lines if line) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "WeakFactorization":
        """Parse :meth:`to_text` output; the target is rebuilt from the pairs."""
        dim = None
        pairs: list[list[str]] = []
        slot = None
        stated_cost = None
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("dimension"):
                dim = int(line.split()[1])
            elif line == "pair":
                pairs.append(["", ""])
                slot = None
            elif line in ("g", "h"):
                if not pairs:
                    raise ValueError("factor before 'pair'")
                slot = 0 if line == "g" else 1
            elif line.startswith("cost"):
                stated_cost = float(line.split()[1])
            elif slot is None:
                raise ValueError(f"unexpected line {raw!r}")
            else:
                pairs[-1][slot] += line + "\n"
        if dim is None:
            raise ValueError("missing 'dimension' line")
        polys = [(Polynomial.from_text(g, dim), Polynomial.from_text(h, dim)) for g, h in pairs]
        fact = cls(tuple(polys), product_sum(polys, dim))
        if stated_cost is not None and abs(stated_cost - fact.cost()) > COST_TOL * max(1.0, stated_cost):
            raise FactorizationError(f"stated cost {stated_cost!r} differs from {fact.cost()!r}")
        return fact


@dataclass(frozen=True)
class WNormBracket:
    lower: float
    upper: float
    witness_psi: Polynomial
    witness_fact: WeakFactorization

    @property
    def width(self) -> float:
        return self.upper - self.lower


def product_sum(pairs: Sequence[tuple[Polynomial, Polynomial]], dimension: int | None = None) -> Polynomial:
    if dimension is None:
        dimension = pairs[0][0].dimension
    total = Polynomial.zero(dimension)
    for g, h in pairs:
        total = total + g * h
    return total


def cost(f: WeakFactorization) -> float:
    r = f.residual()
    if r > COST_TOL * _identity_scale(f.target):
        raise FactorizationError(f"identity violated by {r:.3e}")
    return f.cost()


# -- the phi_alpha family --------------------------------------------------


def w_norm_family(alpha: float) -> float:
    """Closed-form ||phi_alpha||_W."""
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    if alpha <= 0.5:
        return math.sqrt(2 + alpha * alpha)
    if alpha <= 2:
        return (4 + alpha) / 3
    return float(alpha)


def F_alpha(alpha: float, beta: float) -> float:
    """Duality ratio <psi, phi_alpha> / ||psi||_{W*} for psi = z1^2 + beta z1 z2 + z2^2."""
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    if beta <= 0.5:
        return (2 + alpha * beta) / math.sqrt(2 + beta * beta)
    return (2 + alpha * beta) / (1 + beta)


def linear_factorization(alpha: float) -> WeakFactorization:
    """phi_alpha = (z1 + l+ z2)(z1 + l- z2), real roots for alpha >= 2."""
    if alpha < 2:
        raise ValueError("linear factors are real only for alpha >= 2")
    lam_plus = (alpha + math.sqrt(alpha * alpha - 4)) / 2
    lam_minus = 1 / lam_plus  # (alpha - sqrt(alpha^2 - 4)) / 2 without cancellation
    g = Polynomial({(1, 0): 1.0, (0, 1): lam_plus})
    h = Polynomial({(1, 0): 1.0, (0, 1): lam_minus})
    return WeakFactorization(((g, h),), phi_alpha(alpha))


def optimal_factorization_family(alpha: float) -> WeakFactorization:
    """A weak factorization of phi_alpha whose cost is ||phi_alpha||_W.

    Boundary values alpha = 1/2 and alpha = 2 take the left-hand regime.
    """
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    target = phi_alpha(alpha)
    if alpha <= 0.5:
        return WeakFactorization.trivial(target)
    if alpha <= 2:
        s = Polynomial({(1, 0): 1.0, (0, 1): 1.0})
        q = Polynomial({(2, 0): 1.0, (1, 1): 0.5, (0, 2): 1.0})
        one = Polynomial.constant(1.0)
        c1 = 2 * (alpha - 0.5) / 3
        c2 = 2 * (2 - alpha) / 3
        pairs = [(s * c1, s)]
        if c2 != 0:
            pairs.append((q * c2, one))
        return WeakFactorization(tuple(pairs), target)
    return linear_factorization(alpha)


# -- duality lower bound ---------------------------------------------------


def _golden_max(f, a: float, b: float, tol: float) -> tuple[float, float]:
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while abs(b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def _from_angles(t: np.ndarray) -> np.ndarray:
    n = len(t) + 1
    x = np.empty(n)
    s = 1.0
    for i, ti in enumerate(t):
        x[i] = s * math.cos(ti)
        s *= math.sin(ti)
    x[n - 1] = s
    return x


def _to_angles(x: np.ndarray) -> np.ndarray:
    n = len(x)
    t = np.empty(n - 1)
    for i in range(n - 1):
        t[i] = math.atan2(np.linalg.norm(x[i + 1 :]), x[i])
    if n >= 2:
        t[-1] = math.atan2(x[-1], x[-2])
    return t


class _HomogeneousDual:
    """Duality ratio for m-homogeneous psi with a precomputed Hankel layout.

    psi ranges over coefficient vectors constant on orbits of the variable
    permutations fixing phi, real when phi is real up to a global phase.
    Averaging an optimal psi over those symmetries (and with its coefficient
    conjugate) keeps it optimal, so the restriction loses nothing.
    """

    def __init__(self, phi: HomogeneousPart):
        p = phi.poly
        d, m = p.dimension, phi.degree
        self.dimension, self.degree = d, m
        self.monos = monomials_of_degree(m, d)
        index = {k: i for i, k in enumerate(self.monos)}

        lead = max(p.terms.values(), key=abs)
        phase = lead / abs(lead)
        target = np.array([p.coefficient(k) for k in self.monos]) * phase.conjugate()
        scale = float(np.max(np.abs(target)))
        self.target = target
        self.phase = phase
        self.real = bool(np.all(np.abs(target.imag) <= 1e-14 * scale))

        perms = [tuple(range(d))]
        if d <= 6:
            perms = [s for s in permutations(range(d)) if max_coefficient_diff(p.permute_variables(s), p) <= 1e-12 * scale]
        orbit_of: dict[tuple, int] = {}
        for k in self.monos:
            if k in orbit_of:
                continue
            img = set()
            for s in perms:
                new = [0] * d
                for i, j in enumerate(s):
                    new[j] = k[i]
                img.add(tuple(new))
            n_orb = len(set(orbit_of.values()))
            for q in img:
                orbit_of[q] = n_orb
        n_orbits = len(set(orbit_of.values()))
        self.basis = np.zeros((len(self.monos), n_orbits))
        for i, k in enumerate(self.monos):
            self.basis[i, orbit_of[tuple(k)]] = 1.0

        # Blocks k and m - k are transposes; keep k <= m/2.
        self.block_index = []
        for k in range(m // 2 + 1):
            rows = monomials_of_degree(m - k, d)
            cols = monomials_of_degree(k, d)
            idx = np.array([[index[tuple(a + b for a, b in zip(r, c))] for c in cols] for r in rows])
            self.block_index.append(idx)

    @property
    def n_params(self) -> int:
        n = self.basis.shape[1]
        return n if self.real else 2 * n

    def coefficients(self, x: np.ndarray) -> np.ndarray:
        n = self.basis.shape[1]
        orbit = x if self.real else x[:n] + 1j * x[n:]
        return self.basis @ orbit

    def params_of(self, coeffs: np.ndarray) -> np.ndarray:
        """Least-squares orbit parameters for a coefficient vector."""
        orbit = np.linalg.lstsq(self.basis, coeffs, rcond=None)[0]
        return orbit.real if self.real else np.concatenate([orbit.real, orbit.imag])

    def dual_norm(self, c: np.ndarray) -> float:
        cc = c.conj()
        return max(float(np.linalg.svd(cc[idx], compute_uv=False)[0]) for idx in self.block_index)

    def ratio(self, x: np.ndarray) -> float:
        c = self.coefficients(x)
        nrm = self.dual_norm(c)
        if nrm == 0.0:
            return 0.0
        return abs(np.vdot(self.target, c)) / nrm

    def to_polynomial(self, c: np.ndarray) -> Polynomial:
        return Polynomial({k: complex(v) * self.phase for k, v in zip(self.monos, c)}, self.dimension)


def _coordinate_search(f, t0: np.ndarray, tol: float, max_sweeps: int = 50) -> tuple[np.ndarray, float]:
    t = t0.copy()
    ft = f(t)
    half = math.pi / 2
    for _ in range(max_sweeps):
        moved = 0.0
        for i in range(len(t)):
            def along(v, i=i):
                trial = t.copy()
                trial[i] = v
                return f(trial)

            vi, fv = _golden_max(along, t[i] - half, t[i] + half, tol)
            if fv > ft:
                moved = max(moved, abs(vi - t[i]))
                t[i], ft = vi, fv
        if moved < tol:
            break
    return t, ft


def _direction_polish(f, t: np.ndarray, ft: float, tol: float, rng, patience: int = 60) -> tuple[np.ndarray, float]:
    # Coordinate sweeps stall where two block norms cross; line searches
    # along random directions step off such ridges.
    fails = 0
    while fails < patience:
        u = rng.normal(size=len(t))
        u /= np.linalg.norm(u)
        s, fs = _golden_max(lambda v: f(t + v * u), -0.5, 0.5, tol)
        if fs > ft:
            t, ft = t + s * u, fs
            fails = 0
        else:
            fails += 1
    return t, ft


def w_norm_lower(
    phi: HomogeneousPart | Polynomial,
    starts: int = 20,
    tol: float = 1e-6,
    seed: int = 0,
) -> tuple[float, Polynomial]:
    """Duality lower bound for ||phi||_W with its witness symbol.

    Maximizes |<psi, phi>| / ||psi||_{W*} over m-homogeneous psi by
    coordinate-wise golden-section sweeps in hyperspherical coordinates,
    started from phi itself and ``starts`` seeded random directions, then
    polishes the best start with golden sections along random directions.  The
    returned value is <psi, phi> / ||psi||_{W*} recomputed for the witness,
    so it is a valid lower bound whether or not the search found the
    maximum.  The witness is scaled to have largest coefficient 1 (up to the
    phase that makes <psi, phi> positive).
    """
    if isinstance(phi, Polynomial):
        phi = HomogeneousPart.of(phi)
    if phi.poly.is_zero():
        raise ValueError("lower bound for the zero polynomial")
    prob = _HomogeneousDual(phi)
    n = prob.n_params

    x0 = prob.params_of(prob.target)
    if n == 1:
        best_x = np.ones(1)
    else:
        def objective(t):
            return prob.ratio(_from_angles(t))

        rng = np.random.default_rng(seed)
        inits = [_to_angles(x0)] + [rng.uniform(0, math.pi, n - 1) for _ in range(starts)]
        best_t, best_f = None, -math.inf
        for t_init in inits:
            t, ft = _coordinate_search(objective, t_init, tol)
            if ft > best_f:  # strict: earliest start wins ties
                best_t, best_f = t, ft
        if n > 2:
            best_t, best_f = _direction_polish(objective, best_t, best_f, tol, rng)
        best_x = _from_angles(best_t)

    c = prob.coefficients(best_x)
    mags = np.abs(c)
    lead = int(np.flatnonzero(mags >= mags.max() * (1 - 1e-12))[0])
    c = c / c[lead]
    psi = prob.to_polynomial(c)
    pairing = inner_product(psi, phi.poly)
    if abs(pairing) > 0:
        psi = psi * (abs(pairing) / pairing)
    value = inner_product(psi, phi.poly).real / dual_w_norm(psi)
    return value, psi


def w_norm_bracket(
    phi: HomogeneousPart | Polynomial,
    certificates: Sequence[WeakFactorization] = (),
    **search,
) -> WNormBracket:
    """Lower and upper bounds for ||phi||_W.

    The trivial factorization phi * 1 is always among the certificates, so
    the upper bound never exceeds ||phi||_2.  For non-homogeneous phi the
    lower bound is the best of the homogeneous parts' bounds (P_m has norm 1
    on W) and the trivial ratio ||phi||_2^2 / ||phi||_{W*}.
    """
    poly = phi.poly if isinstance(phi, HomogeneousPart) else phi
    if poly.is_zero():
        raise ValueError("bracket for the zero polynomial")
    certs = [WeakFactorization.trivial(poly)]
    for cert in certificates:
        if max_coefficient_diff(cert.target, poly) > IDENTITY_TOL * _identity_scale(poly):
            raise FactorizationError("certificate does not factor the given polynomial")
        certs.append(cert)
    costs = [cost(c) for c in certs]
    best = int(np.argmin(costs))
    upper = costs[best]

    if poly.homogeneous_degree() is not None:
        lower, psi = w_norm_lower(HomogeneousPart.of(poly), **search)
    else:
        lower, psi = h2_norm(poly) ** 2 / dual_w_norm(poly), poly
        for part in homogeneous_parts(poly):
            val, cand = w_norm_lower(part, **search)
            if val > lower:
                lower, psi = val, cand
    if lower > upper + 1e-8:
        raise RuntimeError(f"duality bound {lower!r} exceeds certificate cost {upper!r}")
    return WNormBracket(min(lower, upper), upper, psi, certs[best])
