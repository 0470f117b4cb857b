"""Generalized Hilbert tensors: structured application, eigenvalue estimates and bound checks."""

from .core import (
    ConditioningWarning,
    InvalidParameterError,
    TensorSpec,
    UndefinedConstantError,
    UnsupportedRegimeError,
    constant_C,
    constant_K,
    constant_M,
    constant_N,
    constants,
    entry,
    validate_shift,
)
from .infinite import (
    TruncatedOperatorSpec,
    apply_F,
    apply_T,
    component_bound,
    estimate_operator_norm,
    pd_check,
    tail_bound,
)
from .ops import apply_fast, apply_naive, quadrature_scalar, rayleigh_2, rayleigh_m, self_convolve
from .spectral import (
    check_h_bound,
    check_z_bound,
    dense_matrix_eigen,
    h_spectral_radius,
    z_spectral_radius,
)

__version__ = "0.1.0"
