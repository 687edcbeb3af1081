"""Domain types and basic operations for circulant matrices.

A circulant is stored by its first row ``(alpha_1, ..., alpha_n)``; row ``i``
of the matrix is the first row rotated right by ``i - 1`` places, so that
``Circ(1, 2, 3)`` is::

    [[1, 2, 3],
     [3, 1, 2],
     [2, 3, 1]]
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

DENSE_CAP = 4096


class NotApplicableError(ValueError):
    """Raised when a closed form does not cover the given matrix."""


class Regime(str, enum.Enum):
    CASE_I = "case_I"
    CASE_II = "case_II"
    NOT_APPLICABLE = "not_applicable"


def _check_finite(name, value):
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Exponent:
    """An exponent p in [1, inf]; ``math.inf`` is the infinity point.

    Validation happens here once, so downstream code can trust ``p``.
    ``conjugate()`` remembers where it came from, so conjugating twice
    returns the original value bit for bit.
    """

    p: float
    _dual: Optional[float] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        p = float(self.p)
        if math.isnan(p) or p == -math.inf:
            raise ValueError(f"exponent must be a number in [1, inf], got {self.p!r}")
        if p < 1.0:
            raise ValueError(f"exponent must satisfy p >= 1, got {p!r}")
        object.__setattr__(self, "p", p)

    @classmethod
    def infinity(cls) -> "Exponent":
        return cls(math.inf)

    @classmethod
    def parse(cls, text: Union[str, float, int, "Exponent"]) -> "Exponent":
        if isinstance(text, Exponent):
            return text
        if isinstance(text, str):
            t = text.strip().lower()
            if t in ("inf", "infinity", "∞"):
                return cls.infinity()
            return cls(float(t))
        return cls(float(text))

    @property
    def is_infinite(self) -> bool:
        return self.p == math.inf

    def conjugate(self) -> "Exponent":
        """Return q with 1/p + 1/q = 1."""
        if self.p == 1.0:
            return Exponent.infinity()
        if self.is_infinite:
            return Exponent(1.0)
        if self._dual is not None:
            return Exponent(self._dual, self.p)
        return Exponent(self.p / (self.p - 1.0), self.p)

    def __float__(self):
        return self.p

    def __str__(self):
        return "inf" if self.is_infinite else repr(self.p)


@dataclass(frozen=True)
class CirculantSpec:
    first_row: tuple

    def __post_init__(self):
        row = tuple(_check_finite("circulant entry", v) for v in self.first_row)
        if len(row) < 1:
            raise ValueError("a circulant needs at least one entry")
        object.__setattr__(self, "first_row", row)

    @property
    def n(self) -> int:
        return len(self.first_row)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.first_row, dtype=np.float64)

    def row_sum(self) -> float:
        # left-to-right on purpose: CSV output must not depend on summation tricks
        total = 0.0
        for v in self.first_row:
            total += v
        return total

    def abs_row_sum(self) -> float:
        total = 0.0
        for v in self.first_row:
            total += abs(v)
        return total


@dataclass(frozen=True)
class TwoParamSpec:
    """The matrix A(n, sign*a, b): ``sign*a`` on the diagonal, ``b`` elsewhere."""

    n: int
    a: float
    b: float
    diagonal_sign: int = 1

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        a = _check_finite("a", self.a)
        b = _check_finite("b", self.b)
        if a < 0 or b < 0:
            raise ValueError("a and b must be nonnegative; use canonicalize()")
        if self.diagonal_sign not in (1, -1):
            raise ValueError("diagonal_sign must be +1 or -1")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def diagonal(self) -> float:
        return self.diagonal_sign * self.a

    def expand(self) -> CirculantSpec:
        return CirculantSpec((self.diagonal,) + (self.b,) * (self.n - 1))

    def regime(self) -> Regime:
        return classify_regime(self.n, self.a, self.b)


def classify_regime(n: int, a: float, b: float) -> Regime:
    # Exact float comparison: both 2-norm formulas agree on the boundary.
    return Regime.CASE_I if (n - 2) * b <= 2 * a else Regime.CASE_II


@dataclass(frozen=True)
class NormResult:
    """An exact norm (``lower == upper``) or a certified bracket."""

    lower: float
    upper: float
    method: str
    regime: Regime = Regime.NOT_APPLICABLE
    exact: bool = False

    def __post_init__(self):
        if self.exact and self.lower != self.upper:
            raise ValueError("exact result needs lower == upper")
        if self.exact and self.lower < 0:
            raise ValueError("a norm is nonnegative")
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")

    @classmethod
    def exact_value(cls, value, method, regime=Regime.NOT_APPLICABLE):
        value = float(value)
        return cls(value, value, method, regime, exact=True)

    @classmethod
    def bounded(cls, lower, upper, method, regime=Regime.NOT_APPLICABLE):
        return cls(float(lower), float(upper), method, regime, exact=False)

    @property
    def value(self) -> Optional[float]:
        return self.lower if self.exact else None


def canonicalize(n: int, a: float, b: float) -> TwoParamSpec:
    """Map A(n, a, b) with real a, b to A(n, +-a', b') with a', b' >= 0.

    Negating the whole matrix leaves every induced norm unchanged, so a
    negative ``b`` is absorbed by a global sign flip.
    """
    a = _check_finite("a", a)
    b = _check_finite("b", b)
    if b < 0:
        a, b = -a, -b
    sign = -1 if a < 0 else 1
    return TwoParamSpec(int(n), abs(a), abs(b), sign)


def _as_circulant(spec) -> CirculantSpec:
    if isinstance(spec, TwoParamSpec):
        return spec.expand()
    if isinstance(spec, CirculantSpec):
        return spec
    return CirculantSpec(tuple(spec))


def matvec(spec: Union[CirculantSpec, TwoParamSpec], x) -> np.ndarray:
    """Compute ``A @ x`` without materializing ``A`` as a dense array."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != spec.n:
        raise ValueError(f"dimension mismatch: matrix is {spec.n}x{spec.n}, vector has shape {x.shape}")
    if isinstance(spec, TwoParamSpec):
        s_total = 0.0
        for v in x:
            s_total += float(v)
        return spec.b * s_total + (spec.diagonal - spec.b) * x
    # A[i, j] = alpha[(j - i) mod n], so y_i = sum_k alpha[k] * x[(i + k) mod n]
    y = np.zeros(spec.n)
    for k, alpha_k in enumerate(spec.first_row):
        y += alpha_k * np.roll(x, -k)
    return y


def dense_materialize(spec: Union[CirculantSpec, TwoParamSpec], cap: int = DENSE_CAP) -> np.ndarray:
    spec = _as_circulant(spec)
    if spec.n > cap:
        raise ValueError(f"refusing to materialize a {spec.n}x{spec.n} matrix (cap {cap})")
    alpha = spec.as_array()
    return np.stack([np.roll(alpha, i) for i in range(spec.n)])


def vector_pnorm(x, e: Union[Exponent, float]) -> float:
    """The l^p norm of ``x``, scaled by ``max|x_k|`` so large p cannot overflow."""
    e = Exponent.parse(e)
    x = np.abs(np.asarray(x, dtype=np.float64))
    if not np.all(np.isfinite(x)):
        raise ValueError("vector entries must be finite")
    if x.size == 0:
        return 0.0
    m = float(x.max())
    if m == 0.0 or e.is_infinite:
        return m
    if e.p == 1.0:
        return float(x.sum())
    return m * float(np.sum((x / m) ** e.p)) ** (1.0 / e.p)
