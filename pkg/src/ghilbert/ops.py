"""Evaluation of H x^(m-1) and H x^m.

Three independent routes:

* ``apply_naive`` enumerates all n^(m-1) index tuples per output component.
* ``apply_fast`` collapses the (m-1)-fold sum through the Hankel structure:
  with ``w = self_convolve(x, m-1)``, component i is ``sum_k w_k / (i-1+k+a)``.
* ``quadrature_scalar`` integrates ``t^(a-1) * (sum_i x_i t^(i-1))^m`` on [0, 1]
  by Gauss-Legendre, valid for ``a >= 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import CONDITIONING_FLOOR, TensorSpec, UnsupportedRegimeError

CONV_CROSSOVER = 64
QUAD_REL_TOL = 1e-10
QUAD_MAX_NODES = 4096


class DegenerateInputError(ValueError):
    """Raised for a zero vector where a normalization is required."""


@dataclass
class ApplyResult:
    vector: np.ndarray
    scalar: float
    method: str
    warnings: list = field(default_factory=list)


def as_vector(x, n: int | None = None) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.ndim != 1 or v.size < 1:
        raise ValueError(f"expected a non-empty 1-d vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    if n is not None and v.size != n:
        raise ValueError(f"vector has length {v.size}, tensor dimension is {n}")
    return v


def _check(spec: TensorSpec, x) -> np.ndarray:
    spec._require_finite()
    return as_vector(x, spec.dim)


def _conditioning_warnings(spec: TensorSpec, floor: float) -> list[str]:
    totals = np.arange(spec.max_total + 1) + spec.shift
    worst = float(np.min(np.abs(totals)))
    if worst < floor:
        return [f"smallest denominator magnitude {worst:.3e} below floor {floor:.1e}"]
    return []


def apply_naive(spec: TensorSpec, x, floor: float = CONDITIONING_FLOOR) -> ApplyResult:
    """Brute-force oracle, O(n^m), each component summed with ``math.fsum``."""
    x = _check(spec, x)
    n, m, a = spec.dim, spec.order, spec.shift
    if m == 2:
        prod = x
        tail_total = np.arange(n)
    else:
        # products x_{i2}...x_{im} and index totals over the (m-1)-fold grid
        prod = x
        tail_total = np.arange(n)
        for _ in range(m - 2):
            prod = np.multiply.outer(prod, x)
            tail_total = np.add.outer(tail_total, np.arange(n))
        prod = prod.ravel()
        tail_total = tail_total.ravel()
    vec = np.empty(n)
    for i in range(n):
        vec[i] = math.fsum(prod / (i + tail_total + a))
    scalar = math.fsum(x * vec)
    return ApplyResult(vec, scalar, "naive", _conditioning_warnings(spec, floor))


def _convolve(u: np.ndarray, v: np.ndarray, crossover: int) -> np.ndarray:
    size = u.size + v.size - 1
    if size <= crossover:
        return np.convolve(u, v)
    nfft = 1 << (size - 1).bit_length()
    return np.fft.irfft(np.fft.rfft(u, nfft) * np.fft.rfft(v, nfft), nfft)[:size]


def self_convolve(x, folds: int, crossover: int = CONV_CROSSOVER) -> np.ndarray:
    """Coefficients of ``(sum_i x_i t^(i-1))^folds``, length ``folds*(n-1)+1``."""
    x = as_vector(x)
    if folds < 1:
        raise ValueError("folds must be >= 1")
    w = x.copy()
    for _ in range(folds - 1):
        w = _convolve(w, x, crossover)
    return w


def weighted_totals(weights: np.ndarray, rows: int, shift: float) -> np.ndarray:
    """``out[i] = fsum_k weights[k] / (i + k + shift)`` for ``i = 0 .. rows-1``."""
    k = np.arange(weights.size)
    out = np.empty(rows)
    for i in range(rows):
        out[i] = math.fsum(weights / (i + k + shift))
    return out


def apply_fast(
    spec: TensorSpec, x, floor: float = CONDITIONING_FLOOR, crossover: int = CONV_CROSSOVER
) -> ApplyResult:
    x = _check(spec, x)
    w = self_convolve(x, spec.order - 1, crossover)
    vec = weighted_totals(w, spec.dim, spec.shift)
    scalar = math.fsum(x * vec)
    return ApplyResult(vec, scalar, "convolution", _conditioning_warnings(spec, floor))


def hx_scalar(spec: TensorSpec, x) -> float:
    """``H x^m`` through the fast path."""
    return apply_fast(spec, x).scalar


def _gauss_legendre(f, nodes: int) -> float:
    t, wts = np.polynomial.legendre.leggauss(nodes)
    t = 0.5 * (t + 1.0)
    return 0.5 * math.fsum(wts * f(t))


def quadrature_scalar(spec: TensorSpec, x, nodes: int | None = None) -> float:
    """``H x^m`` from the integral form of the entries; needs ``a >= 1``.

    With integer ``a`` the integrand is a polynomial of degree ``m(n-1)+a-1``
    and the default node count integrates it exactly. Otherwise node counts
    double from 16 until two estimates agree to 1e-10 relative (cap 4096).
    An explicit ``nodes`` bypasses both rules.
    """
    x = _check(spec, x)
    m, a = spec.order, spec.shift
    if a < 1:
        raise UnsupportedRegimeError(f"integral form requires a >= 1, got a={a!r}")
    coeffs = x[::-1]

    def integrand(t):
        return t ** (a - 1.0) * np.polyval(coeffs, t) ** m

    if nodes is not None:
        return _gauss_legendre(integrand, int(nodes))
    if a == math.floor(a):
        degree = m * (spec.dim - 1) + int(a) - 1
        return _gauss_legendre(integrand, max(math.ceil((degree + 1) / 2) + 2, 16))
    k = max(math.ceil((m * (spec.dim - 1) + 1) / 2) + 2, 16)
    prev = _gauss_legendre(integrand, k)
    while k < QUAD_MAX_NODES:
        k = min(2 * k, QUAD_MAX_NODES)
        cur = _gauss_legendre(integrand, k)
        if abs(cur - prev) <= QUAD_REL_TOL * abs(cur):
            return cur
        prev = cur
    return prev


def _nonzero(x: np.ndarray):
    if not np.any(x):
        raise DegenerateInputError("Rayleigh quotient undefined for the zero vector")


def rayleigh_m(spec: TensorSpec, x) -> float:
    """``|H x^m| / ||x||_m^m``."""
    x = _check(spec, x)
    _nonzero(x)
    m = spec.order
    return abs(hx_scalar(spec, x)) / float(np.sum(np.abs(x) ** m))


def rayleigh_2(spec: TensorSpec, x) -> float:
    """``|H x^m| / ||x||_2^m``."""
    x = _check(spec, x)
    _nonzero(x)
    return abs(hx_scalar(spec, x)) / float(np.linalg.norm(x)) ** spec.order


def pnorm(x: Sequence[float], p: float) -> float:
    x = np.abs(np.asarray(x, dtype=float))
    if math.isinf(p):
        return float(x.max())
    return float(np.sum(x**p) ** (1.0 / p))
