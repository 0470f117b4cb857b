"""Extreme H- and Z-eigenvalue estimates and checks against the M(a) bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import (
    TensorSpec,
    UnsupportedRegimeError,
    constant_M,
    total_multiplicities,
    total_values,
)
from .ops import apply_fast, as_vector

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10_000
DEFAULT_RESTARTS = 8
DEFAULT_SEED = 20170311
HOLDS_RTOL = 1e-9
TIE_TOL = 1e-10


@dataclass
class EigenEstimate:
    value: float
    vector: np.ndarray
    residual: float
    iterations: int
    converged: bool
    # (lower, upper) Collatz-Wielandt enclosure per iteration, H-mode only
    history: list = field(default_factory=list)


@dataclass
class BoundReport:
    bound_name: str
    bound_value: float
    observed: float
    margin: float
    holds: Optional[bool]
    note: str = ""

    @classmethod
    def build(cls, name: str, bound_value: float, observed: float, note: str = "") -> "BoundReport":
        margin = bound_value - abs(observed)
        holds = margin >= -HOLDS_RTOL * abs(bound_value)
        return cls(name, bound_value, abs(observed), margin, bool(holds), note)

    @classmethod
    def skipped(cls, name: str, note: str) -> "BoundReport":
        return cls(name, math.nan, math.nan, math.nan, None, note)


def _hx(spec: TensorSpec, x: np.ndarray) -> np.ndarray:
    return apply_fast(spec, x).vector


def h_residual(spec: TensorSpec, x: np.ndarray, lam: float) -> float:
    m = spec.order
    return float(np.linalg.norm(_hx(spec, x) - lam * x ** (m - 1)))


def z_residual(spec: TensorSpec, x: np.ndarray, mu: float) -> float:
    """``||H x^(m-1) - mu x (x.x)^((m-2)/2)||_2``."""
    m = spec.order
    nrm2 = float(x @ x)
    return float(np.linalg.norm(_hx(spec, x) - mu * x * nrm2 ** ((m - 2) / 2)))


def h_spectral_radius(
    spec: TensorSpec, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> EigenEstimate:
    """Perron H-eigenvalue of a positive tensor by power iteration.

    Iterates ``x <- (H x^(m-1))^[1/(m-1)]`` from the all-ones vector. The
    ratios ``(H x^(m-1))_i / x_i^(m-1)`` bracket the spectral radius; the
    run has converged once their spread drops to ``tol`` times the upper end
    and the eigen-residual is at most ``tol * value``.
    """
    spec._require_finite()
    if not spec.shift > 0:
        raise UnsupportedRegimeError(
            f"H power method needs a > 0 (positive tensor), got a={spec.shift!r}"
        )
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = spec.order
    x = np.ones(spec.dim)
    x /= np.sum(x**m) ** (1.0 / m)
    history = []
    value = math.nan
    for it in range(1, max_iter + 1):
        y = _hx(spec, x)
        ratios = y / x ** (m - 1)
        lo, hi = float(ratios.min()), float(ratios.max())
        history.append((lo, hi))
        value = 0.5 * (lo + hi)
        if hi - lo <= tol * hi:
            res = float(np.linalg.norm(y - value * x ** (m - 1)))
            if res <= tol * value:
                return EigenEstimate(value, x, res, it, True, history)
        x = y ** (1.0 / (m - 1))
        x /= np.sum(x**m) ** (1.0 / m)
    return EigenEstimate(value, x, h_residual(spec, x, value), max_iter, False, history)


def z_shift(spec: TensorSpec) -> float:
    """``1 + sum of |entries|``, computed through index-total multiplicities."""
    mult = np.array(total_multiplicities(spec.order, spec.dim), dtype=float)
    return 1.0 + float(np.sum(mult * np.abs(total_values(spec))))


def _sshopm(spec: TensorSpec, x0: np.ndarray, alpha: float, tol: float, max_iter: int) -> EigenEstimate:
    # sign(alpha) > 0 climbs H x^m on the unit sphere, < 0 descends
    x = x0 / np.linalg.norm(x0)
    mu = math.nan
    res = math.inf
    for it in range(1, max_iter + 1):
        y = _hx(spec, x)
        mu = float(x @ y)
        res = float(np.linalg.norm(y - mu * x))
        if res <= tol * abs(mu):
            return EigenEstimate(mu, x, res, it, True)
        z = y + alpha * x if alpha > 0 else -(y + alpha * x)
        nz = np.linalg.norm(z)
        if nz == 0:
            break
        x = z / nz
    return EigenEstimate(mu, x, res, max_iter, False)


def z_spectral_radius(
    spec: TensorSpec,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = DEFAULT_SEED,
) -> EigenEstimate:
    """Largest-magnitude Z-eigenvalue found by the shifted symmetric power method.

    Restart 0 starts from the all-ones vector, later ones from Gaussian
    draws. For a > 0 or odd m only ascent is needed (|H x^m| <= H |x|^m, or
    H(-x)^m = -H x^m); otherwise both ascent and descent run per restart.
    """
    spec._require_finite()
    if tol <= 0:
        raise ValueError("tol must be positive")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    alpha = z_shift(spec)
    signs = (1.0,) if (spec.shift > 0 or spec.order % 2 == 1) else (1.0, -1.0)
    rng = np.random.default_rng(seed)
    starts = [np.ones(spec.dim)] + [rng.standard_normal(spec.dim) for _ in range(restarts - 1)]
    best: Optional[EigenEstimate] = None
    for x0 in starts:
        for sgn in signs:
            est = _sshopm(spec, x0, sgn * alpha, tol, max_iter)
            if best is None or _better(est, best):
                best = est
    return best


def _better(cand: EigenEstimate, best: EigenEstimate) -> bool:
    if cand.converged != best.converged:
        return cand.converged
    if abs(abs(cand.value) - abs(best.value)) <= TIE_TOL * max(1.0, abs(best.value)):
        return cand.iterations < best.iterations
    return abs(cand.value) > abs(best.value)


def hankel_matrix(spec: TensorSpec) -> np.ndarray:
    if spec.order != 2:
        raise UnsupportedRegimeError("matrix form exists only for m = 2")
    spec._require_finite()
    i = np.arange(spec.dim)
    return 1.0 / (i[:, None] + i[None, :] + spec.shift)


def dense_matrix_eigen(spec: TensorSpec) -> list[EigenEstimate]:
    """Full symmetric eigendecomposition at m = 2, sorted by decreasing |value|."""
    A = hankel_matrix(spec)
    vals, vecs = np.linalg.eigh(A)
    out = []
    for k in np.argsort(-np.abs(vals), kind="stable"):
        v = vecs[:, k]
        res = float(np.linalg.norm(A @ v - vals[k] * v))
        out.append(EigenEstimate(float(vals[k]), v, res, 0, True))
    return out


def check_h_bound(spec: TensorSpec, estimate) -> list[BoundReport]:
    """Compare ``|lambda|`` with ``M(a) n^(m-1)``; only meaningful for even m."""
    spec._require_finite()
    n, m, a = spec.dim, spec.order, spec.shift
    if m % 2:
        return [BoundReport.skipped("H_bound_Ma", f"H-eigenvalue bound requires even m, got m={m}")]
    observed = _observed(estimate)
    big_m, branch = constant_M(spec)
    reports = [BoundReport.build("H_bound_Ma", big_m * n ** (m - 1), observed, f"M(a) branch: {branch}")]
    if a > 0:
        reports.append(BoundReport.build("H_bound_n_over_a", n ** (m - 1) / a, observed))
    return reports


def check_z_bound(spec: TensorSpec, estimate) -> list[BoundReport]:
    """Compare ``|mu|`` with ``M(a) n^(m/2)``."""
    spec._require_finite()
    n, m, a = spec.dim, spec.order, spec.shift
    observed = _observed(estimate)
    big_m, branch = constant_M(spec)
    reports = [BoundReport.build("Z_bound_Ma", big_m * n ** (m / 2), observed, f"M(a) branch: {branch}")]
    if a > 0:
        reports.append(BoundReport.build("Z_bound_n_over_a", n ** (m / 2) / a, observed))
    return reports


def _observed(estimate) -> float:
    if isinstance(estimate, EigenEstimate):
        return abs(estimate.value)
    if isinstance(estimate, (list, tuple)):
        return max(abs(e.value) for e in estimate)
    return abs(float(estimate))


def sampled_rayleigh_max(
    spec: TensorSpec, samples: int = 2000, seed: int = DEFAULT_SEED, norm: str = "m"
) -> tuple[float, np.ndarray]:
    """Largest sampled ``|H x^m| / ||x||^m`` (``norm`` is ``"m"`` or ``"2"``).

    A lower estimate of the corresponding spectral radius, used where no
    eigen-solver applies (a < 0 with m > 2).
    """
    rng = np.random.default_rng(seed)
    m = spec.order
    best, arg = -math.inf, None
    for _ in range(samples):
        x = rng.standard_normal(spec.dim)
        h = abs(apply_fast(spec, x).scalar)
        d = np.sum(np.abs(x) ** m) if norm == "m" else float(np.linalg.norm(x)) ** m
        if h / d > best:
            best, arg = h / d, x
    return best, as_vector(arg)
