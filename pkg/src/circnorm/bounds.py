"""Lower/upper bounds on ||A(n, -a, b)||_p away from p in {1, 2, inf}.

All bounds are computed for p >= 2. A smaller p is first reflected to its
conjugate: A(n, -a, b) is symmetric, so ||A||_p = ||A||_q.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from .core import Exponent, NormResult, Regime, TwoParamSpec
from .exact import two_norm_minus

QUAD_ABS_TOL = 1e-10
_MAX_DEPTH = 60


@dataclass(frozen=True)
class BoundSet:
    p: Exponent
    lower: float
    upper_holder: float
    upper_rt: float
    upper_harmonic: float
    regime: Regime

    def __post_init__(self):
        finite = [u for u in (self.upper_holder, self.upper_rt) if math.isfinite(u)]
        if finite and self.lower > min(finite) * (1 + 1e-12) + 1e-300:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {min(finite)}")

    @property
    def upper(self) -> float:
        return min(self.upper_holder, self.upper_rt, self.upper_harmonic)

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper

    def as_norm_result(self) -> NormResult:
        if self.is_exact:
            return NormResult.exact_value(self.lower, "bounds-collapse", self.regime)
        return NormResult.bounded(self.lower, self.upper, "holder+riesz-thorin+harmonic", self.regime)


def _require_minus(spec: TwoParamSpec):
    if spec.diagonal_sign != -1:
        raise ValueError("bounds are stated for A(n, -a, b); a nonnegative matrix has an exact norm")


def _max_row_sum(spec: TwoParamSpec) -> float:
    return (spec.n - 1) * spec.b + spec.a


def bounds_holder(spec: TwoParamSpec, e: Exponent) -> tuple:
    """(lower, upper) with upper = n^(1/2 - 1/p) * ||A||_2, for 2 <= p < inf.

    The lower bound is the exact 2-norm: it is attained at a zero-sum vector
    (case I) or at the all-ones vector (case II) for every p.
    """
    _require_minus(spec)
    e = Exponent.parse(e)
    if e.is_infinite or e.p < 2:
        raise ValueError(f"bounds_holder needs 2 <= p < inf, got p={e}; reflect with reflect_dual first")
    m2 = two_norm_minus(spec).lower
    return m2, spec.n ** (0.5 - 1.0 / e.p) * m2


def bounds_riesz_thorin(spec: TwoParamSpec, e: Exponent) -> tuple:
    """(lower, upper) interpolating between p = 2 and p = inf:
    ``||A||_p <= ||A||_2^(2/p) * ||A||_inf^(1 - 2/p)``.
    """
    _require_minus(spec)
    e = Exponent.parse(e)
    if e.p < 2:
        raise ValueError(f"bounds_riesz_thorin needs p >= 2, got p={e}; reflect with reflect_dual first")
    m2 = two_norm_minus(spec).lower
    m_inf = _max_row_sum(spec) if spec.n > 1 else spec.a
    if e.is_infinite:
        return m2, m_inf
    theta = 1.0 - 2.0 / e.p
    return m2, m2 ** (1.0 - theta) * m_inf ** theta


def reflect_dual(e: Exponent) -> Exponent:
    return Exponent.parse(e).conjugate()


def _abs_dirichlet(theta: float, n: int) -> float:
    if abs(theta) < 1e-8:
        # removable singularity at 0: n * (1 - (n^2 - 1) theta^2 / 24 + ...)
        return n * (1.0 - (n * n - 1) * theta * theta / 24.0)
    return abs(math.sin(n * theta / 2) / math.sin(theta / 2))


def _simpson(f, a, fa, b, fb):
    m = 0.5 * (a + b)
    fm = f(m)
    return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(f, a: float, b: float, tol: float) -> float:
    """Integrate ``f`` over [a, b] by adaptive Simpson with Richardson correction."""
    fa, fb = f(a), f(b)
    m, fm, whole = _simpson(f, a, fa, b, fb)
    total = 0.0
    stack = [(a, fa, b, fb, m, fm, whole, tol, 0)]
    while stack:
        a, fa, b, fb, m, fm, whole, tol, depth = stack.pop()
        lm, flm, left = _simpson(f, a, fa, m, fm)
        rm, frm, right = _simpson(f, m, fm, b, fb)
        delta = left + right - whole
        if depth >= _MAX_DEPTH or abs(delta) <= 15.0 * tol:
            total += left + right + delta / 15.0
        else:
            stack.append((a, fa, m, fm, lm, flm, left, tol / 2, depth + 1))
            stack.append((m, fm, b, fb, rm, frm, right, tol / 2, depth + 1))
    return total


@functools.lru_cache(maxsize=None)
def dirichlet_l1(n: int) -> float:
    """(1/2pi) * integral over [0, 2pi] of |1 + e^{it} + ... + e^{i(n-1)t}| dt.

    The modulus equals |sin(nt/2) / sin(t/2)|. Its kinks sit at the zeros
    2 pi k / n, so each arc between consecutive zeros is integrated separately.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n == 1:
        return 1.0
    f = functools.partial(_abs_dirichlet, n=n)
    # the integrand is even about pi, so integrate [0, pi] and double
    knots = [2 * math.pi * k / n for k in range(n // 2 + 1)]
    if knots[-1] < math.pi:
        knots.append(math.pi)
    arc_tol = QUAD_ABS_TOL * math.pi / (len(knots) - 1)
    total = 0.0
    for lo, hi in zip(knots[:-1], knots[1:]):
        total += adaptive_simpson(f, lo, hi, arc_tol)
    return total / math.pi


def harmonic_upper(spec: TwoParamSpec) -> float:
    """a + b + b n ||phi||_{L^1}, valid for every p.

    It dominates ||(a+b) I|| + ||b K||_p = a + b + b n because the L^1 norm of
    phi is at least |phi-hat(0)| = 1; for large n it is the weakest bound.
    """
    return spec.a + spec.b + spec.b * spec.n * dirichlet_l1(spec.n)


def best_bounds(spec: TwoParamSpec, e: Exponent) -> BoundSet:
    """Every bound at ``e``. Exponents below 2 are served through the conjugate."""
    e = Exponent.parse(e)
    harmonic = harmonic_upper(spec)
    if spec.diagonal_sign == 1:
        exact = (spec.n - 1) * spec.b + spec.a
        return BoundSet(e, exact, exact, exact, harmonic, Regime.NOT_APPLICABLE)

    regime = spec.regime()
    work = e if (e.is_infinite or e.p >= 2) else reflect_dual(e)
    if work.p == 2.0:
        m2 = two_norm_minus(spec).lower
        return BoundSet(e, m2, m2, m2, harmonic, regime)
    if work.is_infinite:
        m_inf = _max_row_sum(spec) if spec.n > 1 else spec.a
        return BoundSet(e, m_inf, m_inf, m_inf, harmonic, regime)
    lower, upper_h = bounds_holder(spec, work)
    _, upper_rt = bounds_riesz_thorin(spec, work)
    return BoundSet(e, lower, upper_h, upper_rt, harmonic, regime)

