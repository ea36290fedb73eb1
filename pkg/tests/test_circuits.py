import numpy as np
import pytest

from boolfn.circuits import (
    Gate,
    GateCount,
    Netlist,
    NetlistBuilder,
    construction_into,
    count_gates,
    dumps_netlist,
    iterate_into,
    loads_netlist,
    netlist_truth_table,
    simulate,
    synth_construction,
    synth_majority,
    verify_equivalence,
    verify_structural,
)
from boolfn.constructions import ConstructionParams, build, f5, majority, parse_seed
from boolfn.core import BoolFnError, CapExceeded, TruthTable

MAJ_C = 6  # gates per input allowed for the counting-tree majority


def _one_gate(op):
    return Netlist(("x1", "x2"), (Gate(1, op, "x1", "x2"),), "g1")


def test_single_gates():
    assert simulate(_one_gate("XOR"), (1, 1)) == 0
    assert simulate(_one_gate("NAND"), (1, 1)) == 0
    assert simulate(_one_gate("NAND"), 0b01) == 1
    assert simulate(_one_gate("OR"), 0b10) == 1


def test_simulate_rejects_short_assignment():
    with pytest.raises(BoolFnError):
        simulate(_one_gate("AND"), (1,))


def test_majority_wire():
    nl = synth_majority(1)
    assert count_gates(nl).total == 0
    assert nl.output == "x1"


@pytest.mark.parametrize("n", [2, 3, 4, 5, 8, 11, 15])
def test_majority_netlist(n):
    nl = synth_majority(n)
    assert verify_equivalence(nl, majority(n)).passed
    assert count_gates(nl).total <= MAJ_C * n


def test_f5_netlist_counts():
    nl = synth_construction(parse_seed("f5"))
    assert count_gates(nl) == GateCount(XOR=7, AND=4)
    for x in range(32):
        assert simulate(nl, x) == f5()(x)


def test_thm_even_netlist_small():
    p = parse_seed("thm_even:m=0,n=5")
    assert verify_equivalence(synth_construction(p), build(p)).passed


def test_thm_even_1_10_total():
    nl = synth_construction(parse_seed("thm_even:m=1,n=10"))
    assert count_gates(nl).total >= 9


def test_parity_chain_and_inner_product_counts():
    # thm_even(2, 9): 3 parity vars, k = 3; majority of 3 folds to 4 gates
    p = parse_seed("thm_even:m=2,n=9")
    c = count_gates(synth_construction(p))
    maj = count_gates(synth_majority(3))
    assert c.AND == 3 + maj.AND
    assert c.XOR == 2 + 2 + 1 + 1 + maj.XOR  # parity, inner product, mm, join


@pytest.mark.parametrize("t", [1, 2])
def test_iteration_overhead(t):
    g = parse_seed("thm_even:m=0,n=5")
    h = parse_seed("thm_even:m=0,n=5,psi=2,1")
    b = NetlistBuilder(5 + 3 * t + 1)
    refs = b.inputs
    gr = construction_into(b, g, refs[:5])
    hr = construction_into(b, h, refs[:5])
    start = len(b)
    out = iterate_into(b, gr, hr, refs[5:], t)
    over = b.tally(start)
    assert over.XOR == 8 * t + 2
    assert over.AND == 4 * t + 1
    assert over.total == 12 * t + 3
    nl = b.finish(out)
    assert verify_equivalence(nl, build(ConstructionParams("iter", t=t, g=g, h=h))).passed


def test_mutated_netlist_fails_with_counterexample():
    nl = synth_construction(parse_seed("f5"))
    gates = list(nl.gates)
    i = next(j for j, g in enumerate(gates) if g.op == "AND")
    gates[i] = gates[i]._replace(op="OR")
    bad = Netlist(nl.inputs, tuple(gates), nl.output)
    cert = verify_equivalence(bad, f5())
    assert not cert.passed
    x = cert.counterexample
    assert simulate(bad, x) != f5()(x)
    cert = verify_equivalence(bad, f5(), mode="sampled", samples=500, seed=4)
    assert not cert.passed and cert.seed == 4


def test_sampled_mode_passes_on_correct_netlist():
    p = parse_seed("gencons2:n=12,t=1")
    cert = verify_equivalence(synth_construction(p), build(p), mode="sampled", samples=3000, seed=1)
    assert cert.passed and cert.points_checked == 3000


def test_structural_check_at_large_n():
    p = parse_seed("thm_odd:m=3,n=41")
    cert = verify_structural(synth_construction(p), p, 20_000, 0)
    assert cert.passed


def test_exhaustive_cap():
    nl = synth_majority(25)
    with pytest.raises(CapExceeded):
        netlist_truth_table(nl)


def test_input_count_mismatch():
    with pytest.raises(BoolFnError):
        verify_equivalence(synth_majority(3), majority(4))


def test_constant_output_materialized():
    b = NetlistBuilder(2)
    for value in (0, 1):
        nl = b.finish(b.xor("x1", b.xor("x1", value)))
        assert netlist_truth_table(nl) == TruthTable.constant(2, value)


def test_folding_and_hashing():
    b = NetlistBuilder(3)
    a1 = b.and_("x1", "x2")
    a2 = b.and_("x2", "x1")
    assert a1 == a2
    assert b.xor("x3", "x3") == 0
    assert b.and_("x3", 1) == "x3"
    assert b.or_("x3", 1) == 1
    assert len(b) == 1


def test_text_roundtrip():
    nl = synth_construction(parse_seed("gencons1:n=9,t=1"))
    assert loads_netlist(dumps_netlist(nl)) == nl


@pytest.mark.parametrize(
    "text, msg",
    [
        (".inputs x1 x2\ng1 = AND x1 x3\n.output g1\n", "before definition"),
        (".inputs x1 x2\ng1 = MUX x1 x2\n.output g1\n", "line 2"),
        (".inputs x1 x2\ng1 = AND x1 x2\ng2 = OR x1 x2\n.output g1\n", "unused"),
        (".inputs x1 x2\ng1 = AND x1 x2\n", "output"),
        ("g1 = AND x1 x2\n.output g1\n", "inputs"),
    ],
)
def test_bad_netlists(text, msg):
    with pytest.raises(BoolFnError, match=msg):
        loads_netlist(text)


def test_simulation_is_bit_parallel_consistent():
    p = parse_seed("thm_odd:m=1,n=9")
    nl = synth_construction(p)
    tt = netlist_truth_table(nl)
    rng = np.random.default_rng(0)
    for x in rng.integers(0, 1 << 9, 50):
        assert simulate(nl, int(x)) == tt(int(x))
