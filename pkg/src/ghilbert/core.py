"""Generalized Hilbert tensors: parameter validation, entries and closed-form constants.

The m-order tensor has entries ``1 / (i1 + ... + im - m + a)`` with 1-based
indices. Entries depend only on the index total ``s = i1 + ... + im - m``,
which ranges over ``0 .. m(n-1)`` in the n-dimensional case.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

PI2_OVER_6 = 1.6449340668482264  # pi**2 / 6, correctly rounded
CONDITIONING_FLOOR = 1e-12


class InvalidParameterError(ValueError):
    """Raised when the shift is non-finite or a non-positive integer."""


class UndefinedConstantError(ValueError):
    """Raised when a constant is requested outside the regime where it exists."""


class UnsupportedRegimeError(ValueError):
    """Raised when an algorithm is asked to run outside its valid regime."""


class ConditioningWarning(UserWarning):
    """A denominator fell below the conditioning floor."""


def validate_shift(a: float) -> bool:
    """True iff ``a`` is not in {0, -1, -2, ...}. Exact test, no epsilon."""
    a = float(a)
    if not math.isfinite(a):
        raise InvalidParameterError(f"shift must be finite, got {a!r}")
    return not (a <= 0 and a == math.floor(a))


@dataclass(frozen=True)
class TensorSpec:
    """Order ``m``, dimension ``n`` (None for the infinite tensor) and shift ``a``."""

    order: int
    dim: Optional[int]
    shift: float

    def __post_init__(self):
        if int(self.order) != self.order or self.order < 2:
            raise InvalidParameterError(f"order must be an integer >= 2, got {self.order!r}")
        if self.dim is not None and (int(self.dim) != self.dim or self.dim < 1):
            raise InvalidParameterError(f"dim must be an integer >= 1, got {self.dim!r}")
        if not validate_shift(self.shift):
            raise InvalidParameterError(
                f"shift a={self.shift!r} violates a in R \\ Z^- (a must not be 0, -1, -2, ...)"
            )
        object.__setattr__(self, "order", int(self.order))
        object.__setattr__(self, "shift", float(self.shift))
        if self.dim is not None:
            object.__setattr__(self, "dim", int(self.dim))

    @property
    def m(self) -> int:
        return self.order

    @property
    def n(self) -> Optional[int]:
        return self.dim

    @property
    def a(self) -> float:
        return self.shift

    @property
    def finite(self) -> bool:
        return self.dim is not None

    @property
    def max_total(self) -> int:
        """Largest index total ``m(n-1)``."""
        self._require_finite()
        return self.order * (self.dim - 1)

    def _require_finite(self):
        if self.dim is None:
            raise UnsupportedRegimeError("operation requires a finite-dimensional tensor")


def entry(spec: TensorSpec, idx: Sequence[int], floor: float = CONDITIONING_FLOOR) -> float:
    """Entry at the 1-based multi-index ``idx``.

    A :class:`ConditioningWarning` is issued when the denominator magnitude is
    below ``floor``; the value is returned regardless.
    """
    idx = tuple(int(i) for i in idx)
    if len(idx) != spec.order:
        raise IndexError(f"multi-index has length {len(idx)}, expected {spec.order}")
    for i in idx:
        if i < 1 or (spec.dim is not None and i > spec.dim):
            raise IndexError(f"index {i} out of range [1, {spec.dim or 'inf'}]")
    denom = (sum(idx) - spec.order) + spec.shift
    if abs(denom) < floor:
        warnings.warn(
            f"denominator {denom!r} below conditioning floor {floor!r}", ConditioningWarning, stacklevel=2
        )
    return 1.0 / denom


def total_values(spec: TensorSpec) -> np.ndarray:
    """Entry value for each index total ``s = 0 .. m(n-1)``."""
    return 1.0 / (np.arange(spec.max_total + 1, dtype=float) + spec.shift)


def total_multiplicities(order: int, dim: int) -> list[int]:
    """Number of multi-indices in [1, dim]^order with each index total.

    Coefficients of ``(1 + t + ... + t^(dim-1))^order``, exact integers.
    """
    coeffs = [1]
    for _ in range(order):
        out = [0] * (len(coeffs) + dim - 1)
        for k, c in enumerate(coeffs):
            for j in range(dim):
                out[k + j] += c
        coeffs = out
    return coeffs


def dense_tensor(spec: TensorSpec) -> np.ndarray:
    """Full ``n^m`` array. For tests and small instances only."""
    spec._require_finite()
    n, m = spec.dim, spec.order
    grids = np.indices((n,) * m).sum(axis=0)
    return 1.0 / (grids + spec.shift)


def _fractional_gap(a: float) -> float:
    fl = math.floor(a)
    return min(a - fl, 1 + fl - a)


def constant_N(spec: TensorSpec) -> float:
    """Dominates ``|entry|`` over every multi-index of the infinite tensor."""
    a = spec.shift
    if a > 0:
        return 1.0 / a
    return 1.0 / _fractional_gap(a)


def constant_M(spec: TensorSpec) -> tuple[float, str]:
    """Entry-magnitude bound for the finite tensor, with the branch that fired.

    Branches: ``"positive"`` (a > 0), ``"interior"`` (-m(n-1) < a < 0) and
    ``"beyond"`` (a < -m(n-1)).
    """
    spec._require_finite()
    a = spec.shift
    if a > 0:
        return 1.0 / a, "positive"
    edge = -spec.order * (spec.dim - 1)
    if a > edge:
        return 1.0 / _fractional_gap(a), "interior"
    # a == edge is a non-positive integer, rejected by TensorSpec
    return 1.0 / (edge - a), "beyond"


def _require_positive_shift(spec: TensorSpec, name: str):
    if not spec.shift > 0:
        raise UndefinedConstantError(f"{name}(a) is only defined for a > 0, got a={spec.shift!r}")


def constant_C(spec: TensorSpec) -> float:
    _require_positive_shift(spec, "C")
    a = spec.shift
    if a < 1:
        return math.sqrt(1.0 / (a * a) + PI2_OVER_6)
    return math.sqrt(PI2_OVER_6)


def constant_K(spec: TensorSpec) -> float:
    _require_positive_shift(spec, "K")
    a = spec.shift
    base = 1.0 / (a * a) + PI2_OVER_6 if a < 1 else PI2_OVER_6
    return base ** (1.0 / (2 * (spec.order - 1)))


@dataclass(frozen=True)
class ConstantsBundle:
    bigN: float
    bigM: Optional[float]
    bigK: Optional[float]
    bigC: Optional[float]
    m_branch: Optional[str] = None


def constants(spec: TensorSpec) -> ConstantsBundle:
    """Every constant defined for ``spec``; undefined ones are None."""
    big_m, branch = constant_M(spec) if spec.finite else (None, None)
    if spec.shift > 0:
        return ConstantsBundle(constant_N(spec), big_m, constant_K(spec), constant_C(spec), branch)
    return ConstantsBundle(constant_N(spec), big_m, None, None, branch)
