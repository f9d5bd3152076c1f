"""Hardy-space, Hankel and weak-product norms of polynomials on the polytorus,
with norm-attaining / Hilbert point classification for (H^2, H^1) and
(H^2, W)."""

from .classify import NormReport, Settings, classification_sweep, classify, solve_alpha0
from .hankel import HankelMatrix, blocks, build_hankel, dual_w_norm, spectral_norm
from .poly import (
    HomogeneousPart,
    MultiIndex,
    Polynomial,
    add,
    h2_norm,
    homogeneous_part,
    inner_product,
    mul,
    phi_alpha,
)
from .torus import (
    GridSamples,
    TorusGrid,
    fourier_coeff,
    h1_hilbert_residual,
    homogeneous_reduction,
    lp_norm,
    sample,
    sgn_samples,
)
from .weak import (
    F_alpha,
    WeakFactorization,
    WNormBracket,
    cost,
    optimal_factorization_family,
    w_norm_bracket,
    w_norm_family,
    w_norm_lower,
)

__all__ = [name for name in dir() if not name.startswith("_")]
