"""Truncated models of the operators F and T induced by the infinite tensor.

For finitely supported ``x`` every component of ``H x^(m-1)`` is a finite sum,
so the first ``N`` output components are exact. What lies beyond ``N`` is
controlled by the per-component bound ``||x||_1^(m-1) / (i-1+a)`` and an
integral comparison of ``(i-1+a)^(-s)``.

    F x = (H x^(m-1))^[1/(m-1)]            (m even)
    T x = ||x||_1^(2-m) H x^(m-1),  T 0 = 0
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import TensorSpec, UnsupportedRegimeError, constant_C, constant_K
from .ops import apply_fast, as_vector, self_convolve

DEFAULT_OUTPUT_LEN = 10_000
MAX_SUPPORT = 64


@dataclass(frozen=True)
class TruncatedOperatorSpec:
    """``mode`` is ``"F"`` or ``"T"``; ``p`` defaults to 2(m-1) for F and 2 for T."""

    order: int
    shift: float
    output_len: int = DEFAULT_OUTPUT_LEN
    p: Optional[float] = None
    mode: str = "T"

    def __post_init__(self):
        # reuse TensorSpec for the order/shift checks
        TensorSpec(self.order, None, self.shift)
        if not self.shift > 0:
            raise UnsupportedRegimeError(
                f"infinite-dimensional operators are only modelled for a > 0, got a={self.shift!r}"
            )
        if self.output_len < 1:
            raise ValueError("output_len must be >= 1")
        if self.mode not in ("F", "T"):
            raise ValueError(f"mode must be 'F' or 'T', got {self.mode!r}")
        m = self.order
        if self.p is None:
            object.__setattr__(self, "p", 2.0 * (m - 1) if self.mode == "F" else 2.0)
        p = float(self.p)
        object.__setattr__(self, "p", p)
        if self.mode == "F":
            if m % 2:
                raise UnsupportedRegimeError(f"F is defined for even m only, got m={m}")
            if not (m - 1 < p < math.inf):
                raise ValueError(f"F-mode needs m-1 < p < inf, got p={p}")
        elif not (1 < p < math.inf):
            raise ValueError(f"T-mode needs 1 < p < inf, got p={p}")

    @property
    def exponent(self) -> float:
        """Decay exponent ``s`` of the p-th power component bound."""
        return self.p / (self.order - 1) if self.mode == "F" else self.p

    def with_mode(self, mode: str) -> "TruncatedOperatorSpec":
        return TruncatedOperatorSpec(self.order, self.shift, self.output_len, None, mode)


@dataclass
class TailBound:
    computed_prefix: float
    tail_value: float
    total_bound: float


def hinf_apply(order: int, shift: float, x, output_len: int) -> np.ndarray:
    """First ``output_len`` components of ``H_inf x^(m-1)`` for finitely supported x."""
    x = as_vector(x)
    w = self_convolve(x, order - 1)
    i = np.arange(output_len, dtype=float)[:, None]
    k = np.arange(w.size, dtype=float)[None, :]
    return (1.0 / (i + k + shift)) @ w


def apply_F(spec: TruncatedOperatorSpec, x) -> np.ndarray:
    m = spec.order
    if m % 2:
        raise UnsupportedRegimeError(f"F is defined for even m only, got m={m}")
    y = hinf_apply(m, spec.shift, x, spec.output_len)
    # m-1 is odd: real signed root
    return np.sign(y) * np.abs(y) ** (1.0 / (m - 1))


def apply_T(spec: TruncatedOperatorSpec, x) -> np.ndarray:
    x = as_vector(x)
    l1 = float(np.sum(np.abs(x)))
    if l1 == 0:
        return np.zeros(spec.output_len)
    return l1 ** (2 - spec.order) * hinf_apply(spec.order, spec.shift, x, spec.output_len)


def component_bound(spec: TruncatedOperatorSpec, x_l1_norm: float, i):
    """``||x||_1^(m-1) / (i-1+a)``, dominating ``|(H_inf x^(m-1))_i|``. ``i`` is 1-based."""
    i = np.asarray(i, dtype=float)
    out = x_l1_norm ** (spec.order - 1) / (i - 1 + spec.shift)
    return float(out) if out.ndim == 0 else out


def integral_tail(s: float, shift: float, n: int) -> float:
    """``sum_{i>n} (i-1+shift)^(-s) <= (n-1+shift)^(1-s) / (s-1)``."""
    if not s > 1:
        raise ValueError(f"series diverges for exponent s={s} <= 1")
    return (n - 1 + shift) ** (1.0 - s) / (s - 1.0)


def tail_bound(spec: TruncatedOperatorSpec, x_l1_norm: float) -> TailBound:
    """Bound on the p-th power norm of ``F x`` or ``T x`` split at ``output_len``.

    Both modes reduce to ``||x||_1^p * sum_i (i-1+a)^(-s)``; the first N
    terms are summed, the rest bounded by integral comparison.
    """
    s = spec.exponent
    if not s > 1:
        raise ValueError(f"divergent exponent s={s} (need s > 1)")
    scale = x_l1_norm**spec.p
    i = np.arange(spec.output_len, dtype=float)
    prefix = scale * math.fsum((i + spec.shift) ** (-s))
    tail = scale * integral_tail(s, spec.shift, spec.output_len)
    return TailBound(prefix, tail, prefix + tail)


@dataclass
class NormSample:
    """Enclosure of ``||F x||_p`` or ``||T x||_p`` for one input."""

    x: np.ndarray
    lower: float
    upper: float
    components: np.ndarray = field(repr=False)


def norm_enclosure(spec: TruncatedOperatorSpec, x, hx: Optional[np.ndarray] = None) -> NormSample:
    """Truncated-prefix norm (lower) and prefix plus tail allowance (upper).

    ``hx`` may carry precomputed ``hinf_apply`` output of length ``output_len``.
    """
    x = as_vector(x)
    p = spec.p
    if hx is None:
        hx = hinf_apply(spec.order, spec.shift, x, spec.output_len)
    l1 = float(np.sum(np.abs(x)))
    if spec.mode == "F":
        y = np.abs(hx) ** (1.0 / (spec.order - 1))
    else:
        y = l1 ** (2 - spec.order) * np.abs(hx) if l1 > 0 else np.zeros_like(hx)
    prefix = math.fsum(y**p)
    allowance = l1**p * integral_tail(spec.exponent, spec.shift, spec.output_len)
    return NormSample(x, prefix ** (1.0 / p), (prefix + allowance) ** (1.0 / p), hx)


def sample_l1_sphere(rng: np.random.Generator, max_support: int = MAX_SUPPORT) -> np.ndarray:
    """Random finitely supported x with ``||x||_1 = 1``.

    Support size uniform in [1, max_support], positions a random subset of
    the first 2*size indices (always including the first), Rademacher signs,
    magnitudes uniform on the simplex.
    """
    k = int(rng.integers(1, max_support + 1))
    span = 2 * k
    pos = np.concatenate(([0], 1 + rng.choice(span - 1, size=k - 1, replace=False)))
    mags = rng.dirichlet(np.ones(k))
    signs = rng.choice([-1.0, 1.0], size=k)
    x = np.zeros(span)
    x[pos] = signs * mags
    return x / np.sum(np.abs(x))


def sample_norms(spec: TruncatedOperatorSpec, samples: int, seed: int) -> list[NormSample]:
    """One ``NormSample`` per trial; trial j draws from the stream ``(seed, j)``."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    out = []
    for j in range(samples):
        rng = np.random.default_rng([seed, j])
        out.append(norm_enclosure(spec, sample_l1_sphere(rng)))
    return out


def norm_bound(spec: TruncatedOperatorSpec) -> float:
    """K(a) for F-mode, C(a) for T-mode."""
    tensor = TensorSpec(spec.order, None, spec.shift)
    return constant_K(tensor) if spec.mode == "F" else constant_C(tensor)


def estimate_operator_norm(spec: TruncatedOperatorSpec, samples: int, seed: int) -> float:
    """Largest truncated-prefix norm over sampled l1-unit inputs.

    Every value is a lower estimate of the operator norm, hence never above
    ``norm_bound(spec)``.
    """
    return max(s.lower for s in sample_norms(spec, samples, seed))


@dataclass
class PDReport:
    order: int
    dim: int
    shift: float
    trials: int
    min_rayleigh: float
    verdict: str
    regime: str
    counterexample: Optional[np.ndarray] = None


def sample_mixed_sign(rng: np.random.Generator, n: int) -> np.ndarray:
    """Nonzero test vector: uniform, Gaussian, sparse or alternating, at a random scale."""
    kind = int(rng.integers(4))
    if kind == 0:
        x = rng.uniform(-1.0, 1.0, n)
    elif kind == 1:
        x = rng.standard_normal(n)
    elif kind == 2:
        x = np.zeros(n)
        idx = rng.choice(n, size=min(n, int(rng.integers(1, 4))), replace=False)
        x[idx] = rng.standard_normal(idx.size)
    else:
        # alternating signs, decaying magnitudes
        x = (-1.0) ** np.arange(n) * rng.uniform(0.1, 1.0, n) ** np.arange(1, n + 1)
    if not np.any(x):
        x[0] = 1.0
    return x * 10.0 ** rng.uniform(-3, 3)


def pd_check(spec: TensorSpec, trials: int, seed: int) -> PDReport:
    """Sample ``H x^m / ||x||_m^m`` over random nonzero mixed-sign x.

    ``regime`` is ``"theorem-backed"`` for a >= 1, where a non-positive value
    contradicts the known result, and ``"evidence-only"`` otherwise.
    """
    spec._require_finite()
    m, n = spec.order, spec.dim
    if m % 2:
        raise UnsupportedRegimeError(f"positive definiteness needs even m, got m={m}")
    regime = "theorem-backed" if spec.shift >= 1 else "evidence-only"
    worst, worst_x = math.inf, None
    for j in range(trials):
        rng = np.random.default_rng([seed, j])
        x = sample_mixed_sign(rng, n)
        val = apply_fast(spec, x).scalar / float(np.sum(np.abs(x) ** m))
        if val < worst:
            worst, worst_x = val, x
    if worst > 0:
        return PDReport(m, n, spec.shift, trials, worst, "consistent-with-PD", regime)
    return PDReport(m, n, spec.shift, trials, worst, "counterexample", regime, worst_x)
