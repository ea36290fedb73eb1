"""2-input gate netlists: synthesis, simulation, gate counts, equivalence checks."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence, Union

import numpy as np

from boolfn.constructions import ConstructionParams, evaluate_points
from boolfn.core import (
    LIMITS,
    BitPermutation,
    BoolFnError,
    CapExceeded,
    TruthTable,
    array_to_bits,
    full_mask,
    var_bits,
)

OPS = ("XOR", "AND", "OR", "NAND")


class Gate(NamedTuple):
    id: int
    op: str
    left: str
    right: str

    @property
    def name(self) -> str:
        return f"g{self.id}"


@dataclass(frozen=True)
class GateCount:
    XOR: int = 0
    AND: int = 0
    OR: int = 0
    NAND: int = 0

    @property
    def total(self) -> int:
        return self.XOR + self.AND + self.OR + self.NAND

    def __str__(self) -> str:
        return f"XOR={self.XOR} AND={self.AND} OR={self.OR} NAND={self.NAND} total={self.total}"


@dataclass(frozen=True)
class Netlist:
    inputs: tuple[str, ...]
    gates: tuple[Gate, ...]
    output: str

    def __post_init__(self) -> None:
        defined = set()
        for name in self.inputs:
            if name in defined:
                raise BoolFnError(f"duplicate input {name}")
            defined.add(name)
        for gate in self.gates:
            if gate.op not in OPS:
                raise BoolFnError(f"{gate.name}: unknown op {gate.op}")
            for ref in (gate.left, gate.right):
                if ref not in defined:
                    raise BoolFnError(f"{gate.name}: reference {ref} used before definition")
            if gate.name in defined:
                raise BoolFnError(f"duplicate gate {gate.name}")
            defined.add(gate.name)
        if self.output not in defined:
            raise BoolFnError(f"output {self.output} is not defined")
        used = _reachable(self.gates, self.output)
        unused = [g.name for g in self.gates if g.name not in used]
        if unused:
            raise BoolFnError(f"unused gates: {', '.join(unused[:5])}")

    @property
    def n(self) -> int:
        return len(self.inputs)


def _reachable(gates: Sequence[Gate], output: str) -> set[str]:
    by_name = {g.name: g for g in gates}
    seen = set()
    stack = [output]
    while stack:
        ref = stack.pop()
        if ref in seen:
            continue
        seen.add(ref)
        g = by_name.get(ref)
        if g is not None:
            stack.extend((g.left, g.right))
    return seen


Ref = Union[str, int]  # gate/input name, or the constant 0/1 before folding


class NetlistBuilder:
    """Accumulates gates with constant folding and structural hashing.

    Constants never reach the netlist: they are folded as gates are added,
    and :meth:`finish` prunes gates the output does not depend on.
    """

    def __init__(self, n: int):
        self.inputs = tuple(f"x{j}" for j in range(1, n + 1))
        self._gates: list[tuple[str, str, str]] = []
        self._cache: dict[tuple[str, str, str], str] = {}

    def x(self, j: int) -> str:
        return self.inputs[j - 1]

    def __len__(self) -> int:
        return len(self._gates)

    def tally(self, start: int = 0) -> GateCount:
        """Per-op counts of the gates added since position ``start`` (before pruning)."""
        counts = {op: 0 for op in OPS}
        for op, _, _ in self._gates[start:]:
            counts[op] += 1
        return GateCount(**counts)

    def _gate(self, op: str, a: str, b: str) -> str:
        key = (op, *sorted((a, b)))
        name = self._cache.get(key)
        if name is None:
            self._gates.append(key)
            name = f"g{len(self._gates)}"
            self._cache[key] = name
        return name

    def not_(self, a: Ref) -> Ref:
        if isinstance(a, int):
            return 1 - a
        return self._gate("NAND", a, a)

    def xor(self, a: Ref, b: Ref) -> Ref:
        if isinstance(a, int) and isinstance(b, int):
            return a ^ b
        if isinstance(a, int):
            a, b = b, a
        if isinstance(b, int):
            return self.not_(a) if b else a
        if a == b:
            return 0
        return self._gate("XOR", a, b)

    def and_(self, a: Ref, b: Ref) -> Ref:
        if isinstance(a, int):
            a, b = b, a
        if isinstance(b, int):
            return (a if b else 0) if not isinstance(a, int) else a & b
        if a == b:
            return a
        return self._gate("AND", a, b)

    def or_(self, a: Ref, b: Ref) -> Ref:
        if isinstance(a, int):
            a, b = b, a
        if isinstance(b, int):
            return (1 if b else a) if not isinstance(a, int) else a | b
        if a == b:
            return a
        return self._gate("OR", a, b)

    def nand(self, a: Ref, b: Ref) -> Ref:
        if isinstance(a, int) or isinstance(b, int) or a == b:
            return self.not_(self.and_(a, b))
        return self._gate("NAND", a, b)

    def xor_all(self, refs: Sequence[Ref]) -> Ref:
        acc: Ref = 0
        for r in refs:
            acc = self.xor(acc, r)
        return acc

    def mux(self, sel: Ref, a: Ref, b: Ref) -> Ref:
        """``a`` when ``sel`` = 0, ``b`` when 1, as ``a + sel (a + b)``."""
        return self.xor(a, self.and_(sel, self.xor(a, b)))

    def finish(self, out: Ref) -> Netlist:
        if isinstance(out, int):
            # a constant output still needs a driver: x1 NAND (NOT x1) = 1
            x1 = self.inputs[0]
            nx = self._gate("NAND", x1, x1)
            out = self._gate("NAND", x1, nx) if out else self._gate("AND", x1, nx)
        raw = [Gate(i + 1, op, a, b) for i, (op, a, b) in enumerate(self._gates)]
        live = _reachable(raw, out)
        rename: dict[str, str] = {x: x for x in self.inputs}
        gates = []
        for g in raw:
            if g.name not in live:
                continue
            new = Gate(len(gates) + 1, g.op, rename[g.left], rename[g.right])
            rename[g.name] = new.name
            gates.append(new)
        return Netlist(self.inputs, tuple(gates), rename[out])


# --- component circuits ------------------------------------------------------


def full_adder(b: NetlistBuilder, x: Ref, y: Ref, z: Ref) -> tuple[Ref, Ref]:
    t = b.xor(x, y)
    return b.xor(t, z), b.or_(b.and_(x, y), b.and_(t, z))


def majority_into(b: NetlistBuilder, refs: Sequence[Ref]) -> Ref:
    """Count the ones with a carry-save adder tree, then compare with n//2 + 1."""
    n = len(refs)
    if n == 0:
        raise BoolFnError("majority of zero inputs")
    columns: list[list[Ref]] = [list(refs)]
    count_bits: list[Ref] = []
    w = 0
    while w < len(columns):
        col = columns[w]
        carries: list[Ref] = []
        while len(col) >= 3:
            s, c = full_adder(b, col.pop(0), col.pop(0), col.pop(0))
            col.append(s)
            carries.append(c)
        if len(col) == 2:
            x, y = col
            col[:] = [b.xor(x, y)]
            carries.append(b.and_(x, y))
        if carries:
            if w + 1 == len(columns):
                columns.append([])
            columns[w + 1].extend(carries)
        count_bits.append(col[0] if col else 0)
        w += 1
    # count >= T, scanning from the least significant bit
    threshold = n // 2 + 1
    r: Ref = 1
    for i, c in enumerate(count_bits):
        r = b.and_(c, r) if threshold >> i & 1 else b.or_(c, r)
    return r


def mm_into(b: NetlistBuilder, xs: Sequence[Ref], ys: Sequence[Ref], psi: BitPermutation) -> Ref:
    """Inner product through the bit permutation (pure wiring), plus majority of X."""
    ip = b.xor_all([b.and_(xs[src - 1], y) for src, y in zip(psi.image, ys)])
    return b.xor(ip, majority_into(b, xs))


def f5_into(b: NetlistBuilder, x1: Ref, x2: Ref, z1: Ref, z2: Ref, z3: Ref) -> Ref:
    z13 = b.xor(z1, z3)
    z23 = b.xor(z2, z3)
    z12 = b.xor(z1, z2)
    z123 = b.xor(z12, z3)
    terms = [z12, b.and_(x1, z13), b.and_(x2, z23), b.and_(b.and_(x1, x2), z123)]
    return b.xor_all(terms)


def step_into(b: NetlistBuilder, g: Ref, h: Ref, a: Ref, bb: Ref, c: Ref) -> tuple[Ref, Ref]:
    """``G = c+b+g+a g+a h`` and ``H = c+a+g+s g+s h`` with ``s = c+b``: 8 XOR, 4 AND."""
    s = b.xor(c, bb)
    G = b.xor(b.xor(b.xor(g, b.and_(a, g)), b.and_(a, h)), s)
    H = b.xor(b.xor(b.xor(b.xor(g, b.and_(s, g)), b.and_(s, h)), c), a)
    return G, H


def iterate_into(b: NetlistBuilder, g: Ref, h: Ref, extra: Sequence[Ref], t: int) -> Ref:
    for i in range(t):
        g, h = step_into(b, g, h, *extra[3 * i : 3 * i + 3])
    return b.mux(extra[3 * t], g, h)


def construction_into(b: NetlistBuilder, p: ConstructionParams, refs: Sequence[Ref]) -> Ref:
    p.validate()
    fam = p.family
    psi = p.psi_or_identity()
    k = p.mm_k()
    if fam == "maj":
        out = majority_into(b, refs)
    elif fam == "mm":
        out = mm_into(b, refs[:k], refs[k:], psi)
    elif fam == "f5":
        out = f5_into(b, *refs)
    elif fam == "thm_even":
        mm = mm_into(b, refs[p.m + 1 : p.m + 1 + k], refs[p.m + 1 + k :], psi)
        out = b.xor_all([*refs[: p.m + 1], mm])
    elif fam == "thm_odd":
        lo = p.m - 1
        core = f5_into(b, *refs[lo : lo + 5])
        mm = mm_into(b, refs[lo + 5 : lo + 5 + k], refs[lo + 5 + k : lo + 5 + 2 * k], psi)
        out = b.xor_all([*refs[:lo], core, mm])
    elif fam == "gencons1":
        mm = mm_into(b, refs[1 : 1 + k], refs[1 + k : 1 + 2 * k], psi)
        g0 = b.xor(refs[0], mm)
        out = iterate_into(b, g0, b.not_(g0), refs[1 + 2 * k :], p.t)
    elif fam == "gencons2":
        x1, z1, z2, z3 = refs[:4]
        mm = mm_into(b, refs[4 : 4 + k], refs[4 + k : 4 + 2 * k], psi)
        g0 = b.xor_all([z1, z2, b.and_(x1, b.xor(z1, z3)), mm])
        h0 = b.xor_all([z1, z3, b.and_(x1, z2), mm])
        out = iterate_into(b, g0, h0, refs[4 + 2 * k :], p.t)
    else:
        s = p.g.num_vars()
        g = construction_into(b, p.g, refs[:s])
        h = construction_into(b, p.h, refs[:s])
        if fam == "step":
            G, H = step_into(b, g, h, *refs[s : s + 3])
            out = G if p.which == "G" else H
        else:
            out = iterate_into(b, g, h, refs[s:], p.t)
    return b.not_(out) if p.complement else out


def synth_majority(n: int) -> Netlist:
    b = NetlistBuilder(n)
    return b.finish(majority_into(b, b.inputs))


def synth_construction(p: ConstructionParams) -> Netlist:
    p.validate()
    b = NetlistBuilder(p.num_vars())
    return b.finish(construction_into(b, p, b.inputs))


def count_gates(nl: Netlist) -> GateCount:
    tally = {op: 0 for op in OPS}
    for g in nl.gates:
        tally[g.op] += 1
    return GateCount(**tally)


# --- simulation ------------------------------------------------------------------


def simulate_words(nl: Netlist, words: Sequence[int], mask: int) -> int:
    """Bit-parallel evaluation: ``words[j]`` carries input ``j`` over many points."""
    if len(words) != nl.n:
        raise BoolFnError(f"expected {nl.n} input words, got {len(words)}")
    val = dict(zip(nl.inputs, words))
    for g in nl.gates:
        a, b = val[g.left], val[g.right]
        if g.op == "XOR":
            v = a ^ b
        elif g.op == "AND":
            v = a & b
        elif g.op == "OR":
            v = a | b
        else:
            v = ~(a & b) & mask
        val[g.name] = v
    return val[nl.output]


def simulate(nl: Netlist, x) -> int:
    """Evaluate at one assignment: an int mask (bit j-1 is x_j) or a bit sequence."""
    if isinstance(x, (int, np.integer)):
        x = int(x)
        if x < 0 or x >> nl.n:
            raise BoolFnError(f"assignment {x} out of range for {nl.n} inputs")
        bits = [(x >> j) & 1 for j in range(nl.n)]
    else:
        bits = [int(v) & 1 for v in x]
        if len(bits) != nl.n:
            raise BoolFnError(f"assignment covers {len(bits)} of {nl.n} inputs")
    return simulate_words(nl, bits, 1)


def netlist_truth_table(nl: Netlist) -> TruthTable:
    n = nl.n
    if n > LIMITS.exhaustive:
        raise CapExceeded(f"exhaustive simulation limited to n <= {LIMITS.exhaustive}")
    mask = full_mask(n)
    return TruthTable(n, simulate_words(nl, [var_bits(n, j) for j in range(1, n + 1)], mask))


@dataclass(frozen=True)
class Certificate:
    mode: str
    points_checked: int
    passed: bool
    counterexample: int | None = None  # assignment mask, bit j-1 = x_j
    seed: int | None = None

    def lines(self) -> list[str]:
        out = [
            f"mode = {self.mode}",
            f"points_checked = {self.points_checked}",
            f"passed = {str(self.passed).lower()}",
        ]
        if self.seed is not None:
            out.append(f"seed = {self.seed}")
        if self.counterexample is not None:
            out.append(f"counterexample = {self.counterexample}")
        return out


def verify_equivalence(
    nl: Netlist, f: TruthTable, mode: str = "exhaustive", samples: int = 100_000, seed: int = 0
) -> Certificate:
    if nl.n != f.n:
        raise BoolFnError(f"netlist has {nl.n} inputs, function has {f.n} variables")
    if mode == "exhaustive":
        diff = netlist_truth_table(nl).bits ^ f.bits
        cex = (diff & -diff).bit_length() - 1 if diff else None
        return Certificate("exhaustive", f.size, diff == 0, cex)
    if mode == "sampled":
        table = f.to_array().astype(bool)
        weights = 1 << np.arange(f.n, dtype=np.int64)

        def lookup(x: np.ndarray) -> np.ndarray:
            return table[(x.astype(np.int64) * weights).sum(axis=1)]

        return verify_sampled(nl, lookup, samples, seed)
    raise BoolFnError(f"mode must be exhaustive or sampled, got {mode!r}")


def verify_sampled(
    nl: Netlist, oracle: Callable[[np.ndarray], np.ndarray], samples: int, seed: int
) -> Certificate:
    """Compare against ``oracle`` on ``samples`` seeded random points."""
    if samples < 1:
        raise BoolFnError("samples must be positive")
    rng = np.random.default_rng(seed)
    x = rng.integers(0, 2, size=(samples, nl.n), dtype=np.uint8)
    expected = np.asarray(oracle(x), dtype=bool)
    words = [array_to_bits(x[:, j]) for j in range(nl.n)]
    got = simulate_words(nl, words, (1 << samples) - 1)
    got_arr = np.unpackbits(
        np.frombuffer(got.to_bytes((samples + 7) // 8, "little"), dtype=np.uint8), bitorder="little"
    )[:samples].astype(bool)
    bad = np.flatnonzero(got_arr != expected)
    cex = None
    if bad.size:
        row = x[bad[0]]
        cex = sum(int(v) << j for j, v in enumerate(row))
    return Certificate("sampled", samples, bad.size == 0, cex, seed)


def verify_structural(nl: Netlist, p: ConstructionParams, samples: int, seed: int) -> Certificate:
    """Sampled check of a synthesized construction against its defining formula."""
    return verify_sampled(nl, lambda x: evaluate_points(p, x), samples, seed)


# --- text format -------------------------------------------------------------------


def dumps_netlist(nl: Netlist) -> str:
    lines = [".inputs " + " ".join(nl.inputs)]
    lines += [f"{g.name} = {g.op} {g.left} {g.right}" for g in nl.gates]
    lines.append(f".output {nl.output}")
    return "\n".join(lines) + "\n"


_GATE_RE = re.compile(r"g(\d+)\s*=\s*(\w+)\s+(\S+)\s+(\S+)")


def loads_netlist(text: str) -> Netlist:
    inputs: tuple[str, ...] | None = None
    gates: list[Gate] = []
    output = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith(".inputs"):
            inputs = tuple(line.split()[1:])
        elif line.startswith(".output"):
            parts = line.split()
            if len(parts) != 2:
                raise BoolFnError(f"line {lineno}: expected '.output <ref>'")
            output = parts[1]
        else:
            m = _GATE_RE.fullmatch(line)
            if not m:
                raise BoolFnError(f"line {lineno}: cannot parse gate {line!r}")
            gid, op, a, b = m.groups()
            if op not in OPS:
                raise BoolFnError(f"line {lineno}: unknown op {op}")
            gates.append(Gate(int(gid), op, a, b))
    if inputs is None:
        raise BoolFnError("missing .inputs line")
    if output is None:
        raise BoolFnError("missing .output line")
    return Netlist(inputs, tuple(gates), output)


def read_netlist(path) -> Netlist:
    with open(path) as fh:
        return loads_netlist(fh.read())


def write_netlist(path, nl: Netlist) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_netlist(nl))
