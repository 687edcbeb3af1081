"""Property suites behind ``circnorm verify``.

Each suite runs a few fixed fixtures and then ``draws`` random instances,
recording the worst residual seen and the first counterexample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import best_bounds, dirichlet_l1
from .core import CirculantSpec, Exponent, TwoParamSpec
from .exact import (
    gram_params_from_circulant,
    pnorm_nonneg_circulant,
    two_norm_circ3,
    two_norm_gram,
    two_norm_minus,
)
from .oracle import OracleConfig, lemma31_check, power_estimate, spectral_two_norm

SUITES = ("exact", "bounds", "lemma")
NONNEG_PS = (1.0, 1.5, 2.0, 3.0, 10.0, math.inf)
SANDWICH_PS = (1.0, 1.25, 1.5, 1.75, 2.0, 3.0, 4.0, 8.0, math.inf)
LEMMA_PS = (1.5, 2.0, 3.0, 7.0)


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: int = 0
    worst: float = 0.0
    counterexample: str = ""
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def record(self, residual: float, passed: bool, context: str):
        self.checks += 1
        self.worst = max(self.worst, residual)
        if not passed:
            self.failures += 1
            if not self.counterexample:
                self.counterexample = context


def rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def random_minus_spec(rng: np.random.Generator, n_max: int, n_min: int = 1) -> TwoParamSpec:
    n = int(rng.integers(n_min, n_max + 1))
    a, b = rng.uniform(0.0, 10.0, size=2)
    return TwoParamSpec(n, float(a), float(b), -1)


def boundary_minus_spec(rng: np.random.Generator, n_max: int) -> TwoParamSpec:
    # (n - 2) b = 2a exactly: pick b with a dyadic factor so 2a / (n - 2) round-trips
    n = int(rng.integers(3, max(n_max, 3) + 1))
    b = float(rng.integers(1, 64)) / 8.0
    a = (n - 2) * b / 2.0
    return TwoParamSpec(n, a, b, -1)


def suite_exact(draws: int, n_max: int, seed: int, cfg: OracleConfig = None) -> SuiteResult:
    cfg = cfg or OracleConfig(seed=seed)
    res = SuiteResult("exact")
    rng = np.random.default_rng(seed)

    v = pnorm_nonneg_circulant(TwoParamSpec(4, 2, 3).expand(), Exponent(3)).value
    res.record(abs(v - 11), v == 11, "A(4,2,3) p=3 should be 11")
    v = two_norm_minus(TwoParamSpec(3, 1, 4, -1)).value
    res.record(abs(v - 7), v == 7, "A(3,-1,4) 2-norm should be 7")
    v = two_norm_circ3((-1, 4, 4)).value
    res.record(abs(v - 7), v == 7, "Circ(-1,4,4) 2-norm should be 7")
    g = gram_params_from_circulant(TwoParamSpec(3, 1, 4, -1).expand())
    ok = g is not None and abs(g.rho - 33) < 1e-12 and abs(g.beta - 8) < 1e-12
    res.record(0.0, ok, f"A(3,-1,4) Gram params should be (33, 8), got {g}")

    for _ in range(draws):
        n = int(rng.integers(2, max(n_max, 2) + 1))
        alpha = tuple(float(t) for t in rng.uniform(0.0, 5.0, size=n))
        spec = CirculantSpec(alpha)
        exact = pnorm_nonneg_circulant(spec, Exponent(1)).value
        for p in NONNEG_PS:
            est = power_estimate(spec, Exponent(p), cfg).estimate
            r = rel(est, exact)
            res.record(r, r <= 1e-6, f"nonneg Circ{alpha} p={p}: oracle {est} vs row sum {exact}")

        two = random_minus_spec(rng, max(n_max, 2), n_min=2)
        a_val, s_val = two_norm_minus(two).value, spectral_two_norm(two)
        r = rel(a_val, s_val)
        res.record(r, r <= 1e-9, f"{two}: formula {a_val} vs spectral {s_val}")

        gp = gram_params_from_circulant(two.expand())
        gv = two_norm_gram(gp).value if gp is not None else float("nan")
        r = rel(gv, a_val) if gp is not None else math.inf
        res.record(r, r <= 1e-12, f"{two}: Gram route {gv} vs formula {a_val}")

        trip = tuple(float(t) for t in rng.uniform(-5.0, 5.0, size=3))
        c_val, s_val = two_norm_circ3(trip).value, spectral_two_norm(CirculantSpec(trip))
        r = rel(c_val, s_val)
        res.record(r, r <= 1e-9, f"Circ{trip}: formula {c_val} vs spectral {s_val}")

        bnd = boundary_minus_spec(rng, max(n_max, 3))
        case1, case2 = bnd.a + bnd.b, (bnd.n - 1) * bnd.b - bnd.a
        r = abs(case1 - case2)
        res.record(r, r <= 1e-12, f"{bnd}: case formulas differ on the boundary ({case1} vs {case2})")
    return res


def suite_bounds(draws: int, n_max: int, seed: int, cfg: OracleConfig = None) -> SuiteResult:
    cfg = cfg or OracleConfig(seed=seed)
    res = SuiteResult("bounds")
    rng = np.random.default_rng(seed + 1)
    n_max = min(max(n_max, 1), 16)

    bs = best_bounds(TwoParamSpec(4, 0, 1, -1), Exponent(2))
    res.record(abs(bs.lower - 3), bs.lower == bs.upper_rt == 3, "A(4,-0,1) p=2 should collapse to 3")
    bs = best_bounds(TwoParamSpec(4, 3, 1, -1), Exponent(1))
    res.record(abs(bs.lower - 6), bs.lower == bs.upper_rt == 6, "A(4,-3,1) p=1 should collapse to 6")
    v = dirichlet_l1(2)
    res.record(abs(v - 4 / math.pi), abs(v - 4 / math.pi) <= 1e-9, f"dirichlet_l1(2) = {v}, expected 4/pi")

    for _ in range(draws):
        spec = random_minus_spec(rng, n_max)
        p = SANDWICH_PS[int(rng.integers(len(SANDWICH_PS)))]
        e = Exponent(p)
        bs = best_bounds(spec, e)
        est = power_estimate(spec, e, cfg).estimate
        top = min(bs.upper_holder, bs.upper_rt)
        ok = bs.lower <= est * (1 + 1e-12) and est <= top + 1e-9 and est <= bs.upper_harmonic + 1e-9
        res.record(max(bs.lower - est, est - top, 0.0), ok,
                   f"{spec} p={p}: lower {bs.lower}, oracle {est}, uppers {top} / {bs.upper_harmonic}")

        q = e.conjugate()
        dual = best_bounds(spec, q)
        r = max(rel(bs.lower, dual.lower), rel(bs.upper_holder, dual.upper_holder),
                rel(bs.upper_rt, dual.upper_rt))
        res.record(r, r <= 1e-12, f"{spec}: bounds at p={p} and q={q} differ")

        p2 = float(rng.uniform(2.0, 20.0))
        b2 = best_bounds(spec, Exponent(p2))
        res.record(max(b2.upper_rt - b2.upper_holder, 0.0), b2.upper_rt <= b2.upper_holder + 1e-12,
                   f"{spec} p={p2}: Riesz-Thorin {b2.upper_rt} above Hölder {b2.upper_holder}")

        m2 = two_norm_minus(spec).value
        at2 = best_bounds(spec, Exponent(2))
        r = max(abs(at2.upper_holder - m2), abs(at2.upper_rt - m2))
        res.record(r, r <= 1e-12, f"{spec}: uppers at p=2 differ from the 2-norm {m2}")
        m_inf = (spec.n - 1) * spec.b + spec.a if spec.n > 1 else spec.a
        for end in (Exponent.infinity(), Exponent(1)):
            r = abs(best_bounds(spec, end).upper_rt - m_inf)
            res.record(r, r <= 1e-12, f"{spec}: Riesz-Thorin at p={end} is not the max row sum {m_inf}")
    return res


def suite_lemma(draws: int, n_max: int, seed: int) -> SuiteResult:
    res = SuiteResult("lemma")
    rng = np.random.default_rng(seed + 2)
    chk = lemma31_check((1, 0), (1, 1), Exponent(2))
    res.record(abs(chk.lhs - chk.rhs), chk.holds and chk.lhs == chk.rhs == 2, "alpha=(1,0), x=(1,1), p=2 should give 2 = 2")
    chk = lemma31_check((0.5, 0.5), (1, 0), Exponent(2))
    res.record(0.0, chk.holds and chk.lhs == 0.5 and chk.rhs == 1, "alpha=(1/2,1/2), x=(1,0), p=2 should give 1/2 <= 1")

    top = min(max(n_max, 2), 6)
    for _ in range(draws):
        for n in range(2, top + 1):
            for p in LEMMA_PS:
                alpha = rng.uniform(0.0, 1.0, size=n)
                x = rng.uniform(0.0, 1.0, size=n)
                chk = lemma31_check(alpha, x, Exponent(p))
                res.record(max(chk.lhs / chk.rhs - 1, 0.0) if chk.rhs > 0 else 0.0, chk.holds,
                           f"alpha={alpha.tolist()}, x={x.tolist()}, p={p}: {chk.lhs} > {chk.rhs}")
    return res


def run(suite: str, draws: int, n_max: int, seed: int, cfg: OracleConfig = None) -> list:
    names = SUITES if suite == "all" else (suite,)
    out = []
    for name in names:
        if name == "exact":
            out.append(suite_exact(draws, n_max, seed, cfg))
        elif name == "bounds":
            out.append(suite_bounds(draws, n_max, seed, cfg))
        elif name == "lemma":
            out.append(suite_lemma(draws, n_max, seed))
        else:
            raise ValueError(f"unknown suite {name!r}")
    return out
