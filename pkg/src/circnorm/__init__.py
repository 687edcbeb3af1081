"""Induced l^p operator norms of circulant matrices."""

from .bounds import (
    BoundSet,
    best_bounds,
    bounds_holder,
    bounds_riesz_thorin,
    dirichlet_l1,
    harmonic_upper,
    reflect_dual,
)
from .core import (
    CirculantSpec,
    Exponent,
    NormResult,
    NotApplicableError,
    Regime,
    TwoParamSpec,
    canonicalize,
    dense_materialize,
    matvec,
    vector_pnorm,
)
from .exact import (
    GramParams,
    endpoint_norms,
    exact_norm,
    gram_params_from_circulant,
    pnorm_nonneg_circulant,
    two_norm_circ3,
    two_norm_gram,
    two_norm_minus,
)
from .oracle import (
    OracleConfig,
    OracleReport,
    brute_force_estimate,
    lemma31_check,
    power_estimate,
    spectral_two_norm,
)

__version__ = "0.1.0"
