import numpy as np
import pytest

from boolfn.constructions import f5, majority, mm_majority
from boolfn.core import BoolFnError, TruthTable
from boolfn.spectra import (
    DyadicRational,
    almost_optimal_lb,
    divisibility_check,
    divisibility_exponent,
    is_bent,
    linear_bias,
    nonlinearity,
    resiliency_order,
    siegenthaler_check,
    walsh_transform,
)

from oracles import affine_distance, walsh_by_sum


def test_walsh_of_zero():
    s = walsh_transform(TruthTable.constant(3, 0))
    assert s[0] == 8
    assert np.count_nonzero(s.values) == 1


def test_walsh_of_single_variable():
    s = walsh_transform(TruthTable.variable(1, 1))
    assert list(s.values) == [0, 2]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_butterfly_matches_defining_sum(n):
    rng = np.random.default_rng(n)
    f = TruthTable.from_array(n, rng.integers(0, 2, 1 << n))
    assert list(walsh_transform(f).values) == walsh_by_sum(f)


def test_nonlinearity_of_affine_is_zero():
    f = TruthTable.parity(4) ^ TruthTable.constant(4, 1)
    assert nonlinearity(walsh_transform(f)) == 0


def test_f5_spectrum():
    s = walsh_transform(f5())
    assert set(np.unique(s.values)) == {-8, 0, 8}
    assert nonlinearity(s) == 12
    assert linear_bias(s) == DyadicRational(1, 2)
    assert resiliency_order(s) == 1


def test_resiliency_of_unbalanced_is_minus_one():
    assert resiliency_order(walsh_transform(majority(4))) == -1


def test_parity_resiliency():
    assert resiliency_order(walsh_transform(TruthTable.parity(5))) == 4


@pytest.mark.parametrize("k", [2, 3, 4])
def test_mm_is_bent(k):
    s = walsh_transform(mm_majority(k))
    assert is_bent(s)
    assert nonlinearity(s) == 2 ** (2 * k - 1) - 2 ** (k - 1)
    assert almost_optimal_lb(s)


def test_dyadic_normalizes():
    assert DyadicRational(8, 5) == DyadicRational(1, 2)
    assert str(DyadicRational(3, 4)) == "3/2^4"
    assert DyadicRational(0, 7).exponent == 0
    assert DyadicRational(1, 3) < DyadicRational(1, 2)


def test_divisibility_exponent():
    assert divisibility_exponent(5, 1, 3) == 3
    with pytest.raises(BoolFnError):
        divisibility_exponent(5, 4, 1)
    with pytest.raises(BoolFnError):
        divisibility_exponent(5, 1, 0)


def test_divisibility_holds_for_f5():
    assert divisibility_check(walsh_transform(f5()), 1, 3)


def test_siegenthaler():
    assert siegenthaler_check(5, 1, 3)
    assert not siegenthaler_check(5, 1, 4)
    assert siegenthaler_check(4, 3, 1)


@pytest.mark.parametrize("seed", range(6))
def test_nonlinearity_equals_affine_distance(seed):
    rng = np.random.default_rng(100 + seed)
    n = int(rng.integers(1, 7))
    f = TruthTable.from_array(n, rng.integers(0, 2, 1 << n))
    assert nonlinearity(walsh_transform(f)) == affine_distance(f)
