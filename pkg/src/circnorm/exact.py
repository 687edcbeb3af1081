"""Closed-form induced norms.

Covered cases: any p for nonnegative circulants, p in {1, inf} for every
circulant, and p = 2 for A(n, -a, b), three-term circulants and matrices
whose Gram matrix has the form ``(rho - beta) I + beta K``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import (
    CirculantSpec,
    Exponent,
    NormResult,
    NotApplicableError,
    Regime,
    TwoParamSpec,
    classify_regime,
    dense_materialize,
)

GRAM_RTOL = 1e-12
# absorbs rounding in rho - beta and rho + (n-1) beta at singular Gram matrices
_PSD_SLACK = 1e-12


@dataclass(frozen=True)
class GramParams:
    """Gram matrix ``(rho - beta) I + beta K`` of an n x n matrix."""

    rho: float
    beta: float
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        scale = _PSD_SLACK * max(abs(self.rho), abs(self.beta) * self.n, 1e-300)
        if self.rho < -scale:
            raise ValueError(f"rho must be nonnegative, got {self.rho}")
        if self.rho - self.beta < -scale or self.rho + (self.n - 1) * self.beta < -scale:
            raise ValueError(
                f"(rho - beta) I + beta K is not positive semidefinite for "
                f"rho={self.rho}, beta={self.beta}, n={self.n}"
            )

    def eigenvalues(self) -> tuple:
        """(rho - beta) with multiplicity n - 1, and rho + (n - 1) beta."""
        return self.rho - self.beta, self.rho + (self.n - 1) * self.beta


def pnorm_nonneg_circulant(spec: CirculantSpec, e: Exponent) -> NormResult:
    """Any-p norm of a circulant with nonnegative entries: the row sum.

    The all-ones vector attains it.
    """
    Exponent.parse(e)
    if any(v < 0 for v in spec.first_row):
        raise NotApplicableError(
            "circulant has a negative entry; no closed form for general p, use the bounds module"
        )
    return NormResult.exact_value(spec.row_sum(), "nonneg-row-sum")


def two_norm_minus(spec: TwoParamSpec) -> NormResult:
    """2-norm of A(n, -a, b).

    ``a + b`` when ``(n-2) b <= 2a`` (case I) and ``(n-1) b - a`` otherwise.
    For n = 1 the matrix is ``(-a)`` and the off-diagonal ``b`` plays no role.
    """
    if spec.diagonal_sign != -1:
        raise NotApplicableError("two_norm_minus expects a negative diagonal (diagonal_sign = -1)")
    n, a, b = spec.n, spec.a, spec.b
    regime = classify_regime(n, a, b)
    if n == 1:
        return NormResult.exact_value(a, "thm-2norm n=1", regime)
    if regime is Regime.CASE_I:
        return NormResult.exact_value(a + b, "thm-2norm case_I", regime)
    return NormResult.exact_value((n - 1) * b - a, "thm-2norm case_II", regime)


def two_norm_circ3(alpha: Sequence[float]) -> NormResult:
    a1, a2, a3 = (float(v) for v in alpha)
    s = a1 * a2 + a2 * a3 + a3 * a1
    if s <= 0:
        # max(0, .) guards the s == 0 corner against rounding
        value = math.sqrt(max(0.0, a1 * a1 + a2 * a2 + a3 * a3 - s))
        return NormResult.exact_value(value, "prop-circ3 s<=0")
    return NormResult.exact_value(abs(a1 + a2 + a3), "prop-circ3 s>=0")


def two_norm_gram(g: GramParams) -> NormResult:
    small, large = g.eigenvalues()
    if g.beta <= 0:
        return NormResult.exact_value(math.sqrt(max(small, 0.0)), "thm-gram beta<=0")
    return NormResult.exact_value(math.sqrt(max(large, 0.0)), "thm-gram beta>=0")


def gram_params_from_circulant(spec: CirculantSpec) -> Optional[GramParams]:
    """Read off (rho, beta) from the column Gram matrix, or None if they are not constant.

    Every circulant has equal column norms; the off-diagonal Gram entries
    agree for the A(n, +-a, b) family and for every n <= 3.
    """
    n = spec.n
    mat = dense_materialize(spec)
    gram = mat.T @ mat
    diag = np.diag(gram)
    rho = float(diag[0])
    tol = GRAM_RTOL * max(float(np.max(np.abs(gram))), 1e-300)
    if np.max(np.abs(diag - rho)) > tol:
        return None
    if n == 1:
        return GramParams(rho, 0.0, 1)
    off = gram[~np.eye(n, dtype=bool)]
    beta = float(off[0])
    if np.max(np.abs(off - beta)) > tol:
        return None
    return GramParams(rho, beta, n)


def endpoint_norms(spec: CirculantSpec, e: Exponent) -> NormResult:
    """Norm at p = 1 or p = inf: the absolute row sum of the first row.

    For a circulant the max absolute row sum and the max absolute column
    sum coincide.
    """
    e = Exponent.parse(e)
    if e.p == 1.0:
        return NormResult.exact_value(spec.abs_row_sum(), "max-col-sum")
    if e.is_infinite:
        return NormResult.exact_value(spec.abs_row_sum(), "max-row-sum")
    raise ValueError(f"endpoint_norms covers p in {{1, inf}} only, got p={e}")


def exact_norm(spec, e: Exponent) -> NormResult:
    """Dispatch to whichever closed form covers ``spec`` at ``e``.

    Raises NotApplicableError when none applies.
    """
    e = Exponent.parse(e)
    if isinstance(spec, TwoParamSpec):
        two = spec
        spec = two.expand()
    else:
        two = None

    if all(v >= 0 for v in spec.first_row):
        return pnorm_nonneg_circulant(spec, e)
    if all(v <= 0 for v in spec.first_row):
        return pnorm_nonneg_circulant(CirculantSpec(tuple(-v for v in spec.first_row)), e)
    if e.p == 1.0 or e.is_infinite:
        return endpoint_norms(spec, e)
    if e.p == 2.0:
        if two is not None:
            return two_norm_minus(two)
        if spec.n == 3:
            return two_norm_circ3(spec.first_row)
        g = gram_params_from_circulant(spec)
        if g is not None:
            return two_norm_gram(g)
        raise NotApplicableError("Gram matrix is not of the form (rho - beta) I + beta K; no closed 2-norm")
    raise NotApplicableError(f"no closed form for p={e} with mixed-sign entries; use bounds")
