"""Norm-attaining vectors and Hilbert points for (H^2, H^1) and (H^2, W).

For an admissible pair (H, X) and nonzero phi:

* phi is norm attaining in X iff ||phi||_{X*} = ||phi||_H;
* phi is a Hilbert point in X iff ||phi||_X ||phi||_{X*} = ||phi||_H^2;
* norm attaining implies Hilbert point.

For X = W the dual norm is a Hankel norm and ||phi||_W is either the
closed form (phi_alpha family) or a numerical bracket.  For X = H^1,
norm attaining means |phi| is constant on the torus, and phi is a Hilbert
point iff P(sgn phi) = (||phi||_1 / ||phi||_2^2) phi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields

from .hankel import dual_w_norm
from .poly import Polynomial, family_alpha, h2_norm, phi_alpha
from .torus import (
    DEFAULT_N_FULL,
    DEFAULT_N_REDUCED,
    TorusGrid,
    default_samples,
    h1_hilbert_residual,
    lp_norm,
    modulus_rsd,
)
from .weak import w_norm_bracket, w_norm_family

CLOSED_FORM = "closed-form"
QUADRATURE = "quadrature"
OPTIMIZER = "optimizer"
LINALG = "linalg"


@dataclass(frozen=True)
class Settings:
    n_reduced: int = DEFAULT_N_REDUCED
    n_full: int = DEFAULT_N_FULL
    tol_closed: float = 1e-6
    tol_numeric: float = 1e-3
    use_family: bool = True
    starts: int = 20
    seed: int = 0


@dataclass(frozen=True)
class NormReport:
    phi: Polynomial
    h2: float
    h1: float
    w_lower: float
    w_upper: float
    w_dual: float
    h1_residual: float
    h1_rsd: float
    na_h1: bool
    hp_h1: bool
    na_w: bool
    # None when the W bracket is too wide to decide
    hp_w: bool | None
    tol_closed: float
    tol_numeric: float
    paths: dict = field(default_factory=dict)
    alpha: float | None = None

    @property
    def inconclusive(self) -> bool:
        return self.hp_w is None

    def flags(self) -> tuple:
        return (self.na_h1, self.hp_h1, self.na_w, self.hp_w)

    def as_dict(self) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["paths"] = dict(self.paths)
        out["phi"] = [[list(k), [c.real, c.imag]] for k, c in self.phi]
        out["inconclusive"] = self.inconclusive
        return out


def _w_tolerance(paths: dict, s: Settings) -> float:
    return s.tol_closed if paths["w"] == CLOSED_FORM else s.tol_numeric


def classify(phi: Polynomial, settings: Settings = Settings()) -> NormReport:
    """Compute the norms of ``phi`` and decide the four flags.

    W-norm Hilbert points are decided from the bracket [lower, upper] for
    ||phi||_W: certified true if upper * ||phi||_{W*} is within tolerance of
    ||phi||_2^2, certified false if lower * ||phi||_{W*} exceeds it by more
    than the tolerance, otherwise left undecided (``hp_w is None``).
    """
    if phi.is_zero():
        raise ValueError("classification of the zero polynomial")
    s = settings
    paths = {"h2": CLOSED_FORM, "w_dual": LINALG, "h1": QUADRATURE, "hp_h1": QUADRATURE}

    h2 = h2_norm(phi)
    w_dual = dual_w_norm(phi)

    samples = default_samples(phi, s.n_reduced, s.n_full)
    h1 = lp_norm(samples, 1)
    rsd = modulus_rsd(samples)
    grid_n = s.n_reduced if samples.grid.dimension < phi.dimension else s.n_full
    residual = h1_hilbert_residual(phi, TorusGrid(phi.dimension, grid_n))

    alpha = family_alpha(phi) if s.use_family else None
    if alpha is not None:
        w_lower = w_upper = w_norm_family(alpha)
        paths["w"] = CLOSED_FORM
    else:
        bracket = w_norm_bracket(phi, starts=s.starts, seed=s.seed)
        w_lower, w_upper = bracket.lower, bracket.upper
        paths["w"] = OPTIMIZER

    tol_w = _w_tolerance(paths, s)
    na_w = abs(w_dual - h2) <= s.tol_closed
    if na_w:
        # norm attaining implies Hilbert point
        hp_w = True
    elif w_lower * w_dual - h2 * h2 > tol_w:
        hp_w = False
    elif w_upper * w_dual - h2 * h2 <= tol_w:
        hp_w = True
    else:
        hp_w = None

    na_h1 = rsd < s.tol_numeric
    hp_h1 = na_h1 or residual < s.tol_numeric

    return NormReport(
        phi=phi,
        h2=h2,
        h1=h1,
        w_lower=w_lower,
        w_upper=w_upper,
        w_dual=w_dual,
        h1_residual=residual,
        h1_rsd=rsd,
        na_h1=na_h1,
        hp_h1=hp_h1,
        na_w=na_w,
        hp_w=hp_w,
        tol_closed=s.tol_closed,
        tol_numeric=s.tol_numeric,
        paths=paths,
        alpha=alpha,
    )


def alpha0_gap(alpha: float) -> float:
    """sqrt(4 - a^2) - (2/a) arcsin(a/2); its root in (0, 2) is alpha_0."""
    return math.sqrt(4 - alpha * alpha) - (2 / alpha) * math.asin(alpha / 2)


def solve_alpha0(tol: float = 1e-12) -> float:
    """Bisection for the unique root of :func:`alpha0_gap` on [1, 2].

    The gap is positive at 1 and negative at 2; bisection stops once
    |gap(mid)| < tol or the bracket can no longer be split.
    """
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    lo, hi = 1.0, 2.0
    while True:
        mid = 0.5 * (lo + hi)
        g = alpha0_gap(mid)
        if abs(g) < tol or mid in (lo, hi):
            return mid
        if g > 0:
            lo = mid
        else:
            hi = mid


def default_alpha_grid() -> list[float]:
    return [0.0, 0.25, 0.5, 0.75, 1.0, solve_alpha0(1e-12), 1.9, 2.0, 2.5]


def classification_sweep(alphas, settings: Settings = Settings()) -> list[NormReport]:
    """One report per alpha for phi_alpha, in the order given."""
    out = []
    for a in alphas:
        if a < 0:
            raise ValueError("alpha must be nonnegative")
        out.append(classify(phi_alpha(a), settings))
    return out
