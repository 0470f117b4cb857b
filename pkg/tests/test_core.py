import itertools
import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ghilbert.core import (
    PI2_OVER_6,
    ConditioningWarning,
    InvalidParameterError,
    TensorSpec,
    UndefinedConstantError,
    constant_C,
    constant_K,
    constant_M,
    constant_N,
    constants,
    dense_tensor,
    entry,
    total_multiplicities,
    validate_shift,
)

pytestmark = pytest.mark.filterwarnings("ignore::ghilbert.core.ConditioningWarning")

legal_shift = st.floats(-40, 40, allow_nan=False).filter(validate_shift)
# keeps every denominator above the conditioning floor (no overflow to inf)
well_conditioned_shift = legal_shift.filter(lambda a: abs(a - round(a)) >= 1e-12)


def test_pi2_over_6_constant():
    assert PI2_OVER_6 == math.pi**2 / 6


@pytest.mark.parametrize("a, ok", [(1.0, True), (-2.0, False), (-2.5, True), (0.0, False), (-0.0, False),
                                   (0.5, True), (-1.9999999999, True), (3.0, True)])
def test_validate_shift(a, ok):
    assert validate_shift(a) is ok


@pytest.mark.parametrize("a", [math.nan, math.inf, -math.inf])
def test_validate_shift_non_finite(a):
    with pytest.raises(InvalidParameterError):
        validate_shift(a)


@pytest.mark.parametrize("m, n, a", [(1, 3, 1.0), (2, 0, 1.0), (2, 3, -1.0), (2, 3, 0.0), (3, 2, -10.0)])
def test_spec_rejects(m, n, a):
    with pytest.raises(InvalidParameterError):
        TensorSpec(m, n, a)


@pytest.mark.parametrize("m, n, a, idx, expected", [
    (2, 3, 1.0, (1, 1), 1.0),
    (3, 3, 0.5, (1, 2, 3), 1 / 3.5),
    (2, 2, -2.5, (1, 1), -0.4),
])
def test_entry_examples(m, n, a, idx, expected):
    assert entry(TensorSpec(m, n, a), idx) == pytest.approx(expected, rel=1e-15)


def test_entry_index_errors():
    spec = TensorSpec(3, 2, 1.0)
    with pytest.raises(IndexError):
        entry(spec, (1, 2, 3))
    with pytest.raises(IndexError):
        entry(spec, (0, 1, 1))
    with pytest.raises(IndexError):
        entry(spec, (1, 1))


def test_entry_conditioning_warning():
    spec = TensorSpec(2, 3, -1.9999999999999)
    with pytest.warns(ConditioningWarning):
        v = entry(spec, (2, 2))
    assert abs(v) > 1e12
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        entry(spec, (1, 1))


@pytest.mark.parametrize("a, expected", [(2.5, 0.4), (-1.25, 4.0), (-0.5, 2.0)])
def test_constant_N(a, expected):
    assert constant_N(TensorSpec(2, None, a)) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("m, n, a, expected, branch", [
    (2, 3, 1.0, 1.0, "positive"),
    (3, 2, -1.25, 4.0, "interior"),
    (3, 2, -10.5, 1 / 7.5, "beyond"),
])
def test_constant_M(m, n, a, expected, branch):
    value, got = constant_M(TensorSpec(m, n, a))
    assert value == pytest.approx(expected, rel=1e-15)
    assert got == branch


def test_constant_M_at_negative_integer_is_unreachable():
    # -10 is a non-positive integer, so no spec with it exists
    with pytest.raises(InvalidParameterError):
        constant_M(TensorSpec(3, 2, -10.0))


@pytest.mark.parametrize("m, a, expected", [
    (2, 1.0, 1.2825498301618641),
    (2, 0.5, 2.3759069987792507),
    (3, 2.0, 1.1324971656308302),
])
def test_constant_K(m, a, expected):
    assert constant_K(TensorSpec(m, None, a)) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("a, expected", [(1.0, math.pi / math.sqrt(6)), (0.5, 2.3759069987792507),
                                         (100.0, math.pi / math.sqrt(6))])
def test_constant_C(a, expected):
    assert constant_C(TensorSpec(2, None, a)) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("fn", [constant_C, constant_K])
@pytest.mark.parametrize("a", [-0.5, -3.25])
def test_norm_constants_undefined_for_negative_shift(fn, a):
    with pytest.raises(UndefinedConstantError):
        fn(TensorSpec(2, None, a))


@given(st.integers(2, 6), st.floats(0.01, 50))
def test_K_C_relation(m, a):
    spec = TensorSpec(m, None, a)
    assert constant_K(spec) ** (2 * (m - 1)) == pytest.approx(constant_C(spec) ** 2, rel=1e-12)


@given(st.integers(2, 5), st.integers(1, 6), legal_shift)
def test_M_equals_N_outside_beyond_branch(m, n, a):
    spec = TensorSpec(m, n, a)
    big_m, branch = constant_M(spec)
    if branch != "beyond":
        assert big_m == constant_N(spec)
    else:
        assert big_m <= constant_N(spec)


def test_constants_bundle():
    b = constants(TensorSpec(2, 3, 1.0))
    assert (b.bigN, b.bigM, b.m_branch) == (1.0, 1.0, "positive")
    assert b.bigK == b.bigC == pytest.approx(math.pi / math.sqrt(6))
    b = constants(TensorSpec(2, 3, -0.5))
    assert b.bigK is None and b.bigC is None


@pytest.mark.parametrize("m, n", [(2, 1), (2, 5), (3, 3), (4, 2), (5, 3)])
def test_total_multiplicities(m, n):
    counts = [0] * (m * (n - 1) + 1)
    for idx in itertools.product(range(n), repeat=m):
        counts[sum(idx)] += 1
    assert total_multiplicities(m, n) == counts


@given(st.integers(2, 4), st.integers(1, 5), well_conditioned_shift)
def test_entries_bounded_by_M_and_N(m, n, a):
    spec = TensorSpec(m, n, a)
    T = np.abs(dense_tensor(spec))
    assert T.max() <= constant_M(spec)[0] * (1 + 1e-15)
    assert T.max() <= constant_N(spec) * (1 + 1e-15)


@given(st.integers(2, 5), st.integers(1, 6), legal_shift, st.data())
def test_entry_symmetric(m, n, a, data):
    spec = TensorSpec(m, n, a)
    idx = data.draw(st.lists(st.integers(1, n), min_size=m, max_size=m))
    perm = data.draw(st.permutations(idx))
    assert entry(spec, idx) == entry(spec, perm)


@given(st.integers(2, 4), st.integers(2, 6), st.floats(0.01, 20), st.data())
def test_positive_shift_entries_positive_and_monotone(m, n, a, data):
    spec = TensorSpec(m, n, a)
    idx = data.draw(st.lists(st.integers(1, n - 1), min_size=m, max_size=m))
    pos = data.draw(st.integers(0, m - 1))
    bumped = list(idx)
    bumped[pos] += 1
    assert entry(spec, idx) > 0
    assert entry(spec, bumped) <= entry(spec, idx)
