"""Numerical estimators of induced p-norms, independent of the closed forms.

Every estimate here is a lower bound backed by a witness vector; nothing in
this module should ever be read as an upper bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import CirculantSpec, Exponent, TwoParamSpec, dense_materialize, matvec, vector_pnorm

DEFAULT_SEED = 0xC12C
BRUTE_FORCE_MAX_N = 4
LEMMA_MAX_N = 8


@dataclass(frozen=True)
class OracleConfig:
    restarts: int = 32
    max_iter: int = 10_000
    tol: float = 1e-12
    seed: int = DEFAULT_SEED


@dataclass(frozen=True)
class OracleReport:
    estimate: float
    witness: np.ndarray = field(repr=False)
    restarts_used: int
    iterations: int
    converged: bool
    seed: int
    history: tuple = field(default=(), repr=False)


def _as_circulant(spec) -> CirculantSpec:
    return spec.expand() if isinstance(spec, TwoParamSpec) else spec


def quotient(spec, x, e: Exponent) -> float:
    """||A x||_p / ||x||_p through the library's own matvec and norm."""
    return vector_pnorm(matvec(spec, x), e) / vector_pnorm(x, e)


def _signed_power(m: np.ndarray, r: float) -> np.ndarray:
    # column-wise sign(m) |m|^r after scaling each column by its max
    scale = np.max(np.abs(m), axis=0, keepdims=True)
    scale[scale == 0] = 1.0
    return np.sign(m) * np.abs(m / scale) ** r


def _col_pnorms(m: np.ndarray, p: float) -> np.ndarray:
    scale = np.max(np.abs(m), axis=0)
    safe = np.where(scale == 0, 1.0, scale)
    return scale * np.sum(np.abs(m / safe) ** p, axis=0) ** (1.0 / p)


def restart_pool(n: int, restarts: int, rng: np.random.Generator) -> np.ndarray:
    """Starting vectors as columns: all-ones, e_1, a zero-sum vector, then random ones."""
    fixed = [np.ones(n), np.eye(n)[0]]
    if n >= 2:
        zs = np.zeros(n)
        zs[0], zs[1] = 1.0, -1.0
        fixed.append(zs)
    cols = fixed + [rng.standard_normal(n) for _ in range(restarts)]
    return np.column_stack(cols)


def _vertex_estimate(spec: CirculantSpec, e: Exponent, cfg: OracleConfig) -> OracleReport:
    # p = 1 and p = inf: the convex quotient peaks at a vertex of the unit ball
    mat = dense_materialize(spec)
    n = spec.n
    if e.p == 1.0:
        candidates = list(np.eye(n))
    else:
        candidates = [np.where(row >= 0, 1.0, -1.0) for row in mat]
    best, best_x, history = -1.0, None, []
    for x in candidates:
        q = quotient(spec, x, e)
        if q > best:
            best, best_x = q, x
        history.append(best)
    best_x = best_x / vector_pnorm(best_x, e)
    return OracleReport(quotient(spec, best_x, e), best_x, len(candidates), 1, True, cfg.seed, tuple(history))


def power_estimate(spec, e: Exponent, cfg: OracleConfig = OracleConfig()) -> OracleReport:
    """Nonlinear power iteration for ||A||_p, run from a pool of restarts.

    Each step maps x to the dual of A^T dual_p(A x), where dual_p(y) is
    sign(y) |y|^(p-1); the quotient ||Ax||_p / ||x||_p never decreases along
    an iteration. All restarts are advanced together as columns of one
    matrix. The endpoints p = 1 and p = inf are settled by enumerating the
    vertices of the unit ball instead.
    """
    spec = _as_circulant(spec)
    e = Exponent.parse(e)
    if e.p == 1.0 or e.is_infinite:
        return _vertex_estimate(spec, e, cfg)
    p = e.p
    q = e.conjugate().p
    n = spec.n
    mat = dense_materialize(spec)
    rng = np.random.default_rng(cfg.seed)
    x = restart_pool(n, cfg.restarts, rng)
    x = x / _col_pnorms(x, p)
    k = x.shape[1]

    est = _col_pnorms(mat @ x, p)
    best_est = est.copy()
    best_x = x.copy()
    active = np.ones(k, dtype=bool)
    done = np.zeros(k, dtype=bool)
    iterations = 0
    while iterations < cfg.max_iter and active.any():
        iterations += 1
        xa = x[:, active]
        z = mat.T @ _signed_power(mat @ xa, p - 1.0)
        x_new = _signed_power(z, q - 1.0)
        norms = _col_pnorms(x_new, p)
        stuck = norms == 0
        norms[stuck] = 1.0
        x_new = x_new / norms
        x_new[:, stuck] = xa[:, stuck]
        new_est = _col_pnorms(mat @ x_new, p)

        idx = np.flatnonzero(active)
        improved = new_est > best_est[idx]
        best_est[idx[improved]] = new_est[improved]
        best_x[:, idx[improved]] = x_new[:, improved]

        change = np.abs(new_est - est[idx])
        conv = (change <= cfg.tol * np.maximum(new_est, 1e-300)) | stuck
        est[idx] = new_est
        x[:, idx] = x_new
        done[idx[conv]] = True
        active[idx[conv]] = False

    history = tuple(np.maximum.accumulate(best_est))
    winner = int(np.argmax(best_est))
    witness = best_x[:, winner] / vector_pnorm(best_x[:, winner], e)
    return OracleReport(
        estimate=quotient(spec, witness, e),
        witness=witness,
        restarts_used=k,
        iterations=iterations,
        converged=bool(done[winner]),
        seed=cfg.seed,
        history=history,
    )


def _sphere_points(angles: np.ndarray) -> np.ndarray:
    """Hyperspherical coordinates -> unit 2-norm points, one per row."""
    m, d = angles.shape
    pts = np.ones((m, d + 1))
    for j in range(d):
        pts[:, j] *= np.cos(angles[:, j])
        pts[:, j + 1 :] *= np.sin(angles[:, j])[:, None]
    return pts


def _grid_quotients(mat: np.ndarray, pts: np.ndarray, e: Exponent) -> np.ndarray:
    y = pts @ mat.T
    if e.is_infinite:
        return np.max(np.abs(y), axis=1) / np.max(np.abs(pts), axis=1)
    return _col_pnorms(y.T, e.p) / _col_pnorms(pts.T, e.p)


def _golden_max(f, lo, hi, iters=60):
    g = (math.sqrt(5) - 1) / 2
    c, d = hi - g * (hi - lo), lo + g * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - g * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + g * (hi - lo)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def brute_force_estimate(spec, e: Exponent, grid_depth: int = None) -> float:
    """Grid search over directions in R^n (n <= 4), then coordinate-wise golden-section polish.

    Directions are parametrized by hyperspherical angles; each angle gets
    ``grid_depth`` points (720 by default for n <= 3, 180 for n = 4). Only
    the direction matters since the quotient is scale invariant.
    """
    spec = _as_circulant(spec)
    e = Exponent.parse(e)
    n = spec.n
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}, got n={n}")
    mat = dense_materialize(spec)
    if n == 1:
        return abs(spec.first_row[0])
    if grid_depth is None:
        grid_depth = 720 if n <= 3 else 180
    d = n - 1
    # first d-1 angles span [0, pi], the last one [0, 2pi); +-x give the same quotient
    spans = [math.pi] * d
    axes = [np.linspace(0.0, s, grid_depth, endpoint=False) for s in spans]
    best_val, best_angles = -1.0, None
    chunk_first = axes[0]
    rest = np.stack(np.meshgrid(*axes[1:], indexing="ij"), axis=-1).reshape(-1, d - 1) if d > 1 else None
    for a0 in chunk_first:
        if rest is None:
            ang = np.array([[a0]])
        else:
            ang = np.column_stack([np.full(len(rest), a0), rest])
        vals = _grid_quotients(mat, _sphere_points(ang), e)
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val, best_angles = float(vals[i]), ang[i].copy()

    step = math.pi / grid_depth

    def at(angles):
        return float(_grid_quotients(mat, _sphere_points(angles[None, :]), e)[0])

    for _ in range(3):
        for j in range(d):
            center = best_angles[j]

            def f(t, j=j):
                trial = best_angles.copy()
                trial[j] = t
                return at(trial)

            t, val = _golden_max(f, center - step, center + step)
            if val > best_val:
                best_val = val
                best_angles[j] = t
    return best_val


def spectral_two_norm(spec) -> float:
    """max_k |lambda_k| with lambda_k = sum_j alpha_{j+1} w^(jk), w = exp(2 pi i / n).

    Real circulants are normal, so this is the 2-norm. Plain O(n^2) DFT sum.
    """
    spec = _as_circulant(spec)
    n = spec.n
    alpha = spec.as_array()
    jk = np.outer(np.arange(n), np.arange(n)) % n
    omega = np.exp(2j * np.pi * jk / n)
    lam = alpha @ omega
    return float(np.max(np.abs(lam)))


@dataclass(frozen=True)
class LemmaCheck:
    lhs: float
    rhs: float
    holds: bool


def lemma31_check(alpha: Sequence[float], x: Sequence[float], e: Exponent) -> LemmaCheck:
    """Enumerate all n! permutations and compare

        sum_sigma (alpha_sigma(1) x_1 + ... + alpha_sigma(n) x_n)^p
    against
        (n-1)! (alpha_1 + ... + alpha_n)^p (x_1^p + ... + x_n^p).
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    e = Exponent.parse(e)
    n = alpha.size
    if x.size != n:
        raise ValueError("alpha and x must have the same length")
    if n > LEMMA_MAX_N:
        raise ValueError(f"n! enumeration is limited to n <= {LEMMA_MAX_N}")
    if np.any(alpha < 0) or np.any(x < 0):
        raise ValueError("alpha and x must be nonnegative")
    if e.is_infinite or e.p <= 1:
        raise ValueError("need a finite p > 1")
    p = e.p
    perms = np.array(list(itertools.permutations(range(n))))
    lhs = float(np.sum((alpha[perms] @ x) ** p))
    rhs = math.factorial(n - 1) * float(alpha.sum()) ** p * float(np.sum(x ** p))
    return LemmaCheck(lhs, rhs, lhs <= rhs * (1 + 1e-12))


def riemann_dirichlet_l1(n: int, points: int = 1_000_000) -> float:
    """Midpoint rule for the Dirichlet kernel L^1 norm; cross-check for the quadrature."""
    t = (np.arange(points) + 0.5) * (2 * np.pi / points)
    return float(np.mean(np.abs(np.sin(n * t / 2) / np.sin(t / 2))))
