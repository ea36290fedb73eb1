import numpy as np
import pytest

from boolfn.constructions import f5, majority, mm_majority
from boolfn.core import CapExceeded, LIMITS, TruthTable, direct_sum, mobius_inv, restrict
from boolfn.immunity import (
    ai_lower_bound_subfunctions,
    algebraic_immunity,
    fast_algebraic_immunity,
    min_annihilator_degree,
    verify_annihilator,
)

from oracles import ai_exhaustive, min_degree_affine_multiple


def test_f5_ai_and_witness():
    r = algebraic_immunity(f5())
    assert r.value == 2 and r.exact
    w = r.witness
    assert verify_annihilator(f5(), w)
    g = mobius_inv(w.g)
    side = f5() if w.side == "f" else ~f5()
    assert g.bits & side.bits == 0


def test_f5_fai_against_explicit_products():
    # AI(f5) = 2, so only e = 1 multipliers compete with 2 AI
    assert fast_algebraic_immunity(f5()) == min(4, 1 + min_degree_affine_multiple(f5()))
    assert fast_algebraic_immunity(f5()) == 4


def test_constant_has_ai_zero():
    r = algebraic_immunity(TruthTable.constant(3, 1))
    assert r.value == 0
    assert min_annihilator_degree(TruthTable.constant(3, 0))[0] == 0


def test_linear_function_has_ai_one():
    assert algebraic_immunity(TruthTable.parity(6)).value == 1


@pytest.mark.parametrize("n", range(2, 10))
def test_majority_ai(n):
    assert algebraic_immunity(majority(n)).value == (n + 1) // 2


def test_cap_gives_lower_bound():
    r = algebraic_immunity(majority(9), cap=2)
    assert r.value == 3 and not r.exact


def test_cap_still_exact_when_annihilator_found():
    r = algebraic_immunity(f5(), cap=3)
    assert r.value == 2 and r.exact


def test_exact_ai_size_cap():
    big = TruthTable.parity(LIMITS.ai + 1)
    with pytest.raises(CapExceeded):
        algebraic_immunity(big)
    assert algebraic_immunity(big, cap=1).value == 1


@pytest.mark.parametrize("seed", range(12))
def test_ai_matches_exhaustive_search(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6))
    f = TruthTable.from_array(n, rng.integers(0, 2, 1 << n))
    expected = ai_exhaustive(f, 2)
    got = algebraic_immunity(f).value
    if expected is None:
        assert got == 3
    else:
        assert got == expected


def test_ai_of_direct_sum_bounds():
    g, h = majority(3), majority(5)
    s = algebraic_immunity(direct_sum(g, h)).value
    ag, ah = algebraic_immunity(g).value, algebraic_immunity(h).value
    assert max(ag, ah) <= s <= ag + ah


def test_mm_ai_at_least_inner():
    for k in (2, 3, 4, 5):
        assert algebraic_immunity(mm_majority(k)).value >= (k + 1) // 2


def test_subfunction_bound():
    f = mm_majority(3)
    bound = ai_lower_bound_subfunctions(f, [4, 5, 6])
    # each restriction of the Y-block is majority plus an affine function
    assert bound == min(algebraic_immunity(restrict(f, {4: a, 5: b, 6: c})).value
                        for a in (0, 1) for b in (0, 1) for c in (0, 1))
    assert algebraic_immunity(f).value >= bound


def test_fai_cap():
    with pytest.raises(CapExceeded):
        fast_algebraic_immunity(TruthTable.parity(LIMITS.fai + 1))
