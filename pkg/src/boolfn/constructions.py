"""Function families, the parameter solver, and the gate lower bound.

Variable layout of composite functions (lowest index bits first): parity
variables, then gadget variables (f5 or the seed gadget), then the MM
X-block, then the MM Y-block. The iterated construction appends three new
variables per round above all existing ones; the final concatenation
selector is the topmost variable.

Every family has two evaluators: :func:`build` produces a truth table, and
:func:`evaluate_points` evaluates the defining formula directly on arbitrary
assignments (used where 2^n is out of reach).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

import numpy as np

from boolfn.core import (
    BitPermutation,
    BoolFnError,
    TruthTable,
    _check_tt_size,
    array_to_bits,
    concat,
    direct_sum,
    popcount_array,
)

FAMILIES = ("maj", "mm", "f5", "thm_even", "thm_odd", "step", "iter", "gencons1", "gencons2")


# --- primitive families -----------------------------------------------------


def majority(n: int) -> TruthTable:
    if n < 1:
        raise BoolFnError("majority needs n >= 1")
    w = popcount_array(np.arange(1 << n, dtype=np.uint64))
    return TruthTable.from_array(n, w > n // 2)


def mm_bent(psi: BitPermutation, h: TruthTable) -> TruthTable:
    """``<psi(X), Y> + h(X)`` on 2k variables, X in the low k index bits."""
    k = psi.k
    if h.n != k:
        raise BoolFnError(f"inner function has {h.n} variables, psi has k={k}")
    if k < 2:
        raise BoolFnError("MM construction needs k >= 2")
    _check_tt_size(2 * k)
    idx = np.arange(1 << (2 * k), dtype=np.uint64)
    x = idx & np.uint64((1 << k) - 1)
    y = idx >> np.uint64(k)
    ip = popcount_array(psi.apply_array(x) & y) & 1
    return TruthTable.from_array(2 * k, ip ^ h.to_array()[x.astype(np.int64)])


def mm_majority(k: int, psi: BitPermutation | None = None) -> TruthTable:
    return mm_bent(psi or BitPermutation.identity(k), majority(k))


def f5() -> TruthTable:
    """The 5-variable 1-resilient function; (X1, X2, Z1, Z2, Z3) are index bits 0..4."""
    i = np.arange(32)
    x1, x2, z1, z2, z3 = ((i >> b) & 1 for b in range(5))
    v = z1 ^ z2 ^ (x1 & (z1 ^ z3)) ^ (x2 & (z2 ^ z3)) ^ (x1 & x2 & (z1 ^ z2 ^ z3))
    return TruthTable.from_array(5, v)


# --- parameter checks ---------------------------------------------------------


def thm_even_k(m: int, n: int) -> int:
    if m < 0 or n <= m:
        raise BoolFnError(f"need m >= 0 and n > m, got m={m}, n={n}")
    if (n - m) % 2 == 0:
        raise BoolFnError(f"n and m must have different parity, got m={m}, n={n}")
    k = (n - m - 1) // 2
    if k < 2:
        raise BoolFnError(f"k = (n-m-1)/2 = {k} < 2")
    return k


def thm_odd_k(m: int, n: int) -> int:
    if m < 1 or n < m + 4:
        raise BoolFnError(f"need m >= 1 and n >= m+4, got m={m}, n={n}")
    if (n - m) % 2:
        raise BoolFnError(f"n and m must have the same parity, got m={m}, n={n}")
    k = (n - m - 4) // 2
    if k < 2:
        raise BoolFnError(f"k = (n-m-4)/2 = {k} < 2")
    return k


def gencons1_k(n: int, t: int) -> int:
    if t < 0:
        raise BoolFnError("t must be non-negative")
    r = n - 3 * t - 1
    if r < 3 or r % 2 == 0:
        raise BoolFnError(f"n-3t-1 = {r} must be an odd integer >= 3")
    k = (n - 3 * t - 2) // 2
    if k < 2:
        raise BoolFnError(f"k = (n-3t-2)/2 = {k} < 2")
    return k


def gencons2_k(n: int, t: int) -> int:
    if t < 0:
        raise BoolFnError("t must be non-negative")
    r = n - 3 * t - 1
    if r < 4 or r % 2:
        raise BoolFnError(f"n-3t-1 = {r} must be an even integer >= 4")
    k = (n - 3 * t - 5) // 2
    if k < 2:
        raise BoolFnError(f"k = (n-3t-5)/2 = {k} < 2")
    return k


def _psi(psi: BitPermutation | None, k: int) -> BitPermutation:
    if psi is None:
        return BitPermutation.identity(k)
    if psi.k != k:
        raise BoolFnError(f"psi has size {psi.k}, construction needs k={k}")
    return psi


# --- composite families --------------------------------------------------------


def thm_even(m: int, n: int, psi: BitPermutation | None = None) -> TruthTable:
    """``X_1 + ... + X_{m+1} + MM_{2k}`` with ``k = (n-m-1)/2``."""
    k = thm_even_k(m, n)
    _check_tt_size(n)
    return direct_sum(TruthTable.parity(m + 1), mm_majority(k, _psi(psi, k)))


def thm_odd(m: int, n: int, psi: BitPermutation | None = None) -> TruthTable:
    """``Y_1 + ... + Y_{m-1} + f5 + MM_{2k}`` with ``k = (n-m-4)/2``."""
    k = thm_odd_k(m, n)
    _check_tt_size(n)
    core = direct_sum(f5(), mm_majority(k, _psi(psi, k)))
    if m == 1:
        return core
    return direct_sum(TruthTable.parity(m - 1), core)


def step(g: TruthTable, h: TruthTable) -> tuple[TruthTable, TruthTable]:
    """One round of the resiliency-raising transform; returns ``(G, H)`` on n+3 variables."""
    if g.n != h.n:
        raise BoolFnError(f"seed sizes differ: {g.n} vs {h.n}")
    _check_tt_size(g.n + 3)
    ga, ha = g.to_array(), h.to_array()
    gb, hb = 1 - ga, 1 - ha
    # block index a + 2b + 4c for (a, b, c) = (X_{n+1}, X_{n+2}, X_{n+3})
    G = [ga, ha, gb, hb, gb, hb, ga, ha]
    H = [ga, gb, ha, hb, hb, ha, gb, ga]
    return (
        TruthTable(g.n + 3, array_to_bits(np.concatenate(G))),
        TruthTable(g.n + 3, array_to_bits(np.concatenate(H))),
    )


def iterate(g: TruthTable, h: TruthTable, t: int) -> TruthTable:
    """``Concat`` of the t-fold ``step`` of ``(g, h)``: an (n+3t+1)-variable function."""
    if t < 0:
        raise BoolFnError("t must be non-negative")
    if g.n != h.n:
        raise BoolFnError(f"seed sizes differ: {g.n} vs {h.n}")
    _check_tt_size(g.n + 3 * t + 1)
    for _ in range(t):
        g, h = step(g, h)
    return concat(g, h)


def gencons1_seeds(n: int, t: int, psi: BitPermutation | None = None) -> tuple[TruthTable, TruthTable]:
    k = gencons1_k(n, t)
    g0 = direct_sum(TruthTable.variable(1, 1), mm_majority(k, _psi(psi, k)))
    return g0, g0.complement()


def gencons2_seeds(n: int, t: int, psi: BitPermutation | None = None) -> tuple[TruthTable, TruthTable]:
    k = gencons2_k(n, t)
    mm = mm_majority(k, _psi(psi, k))
    # gadget variables (X1, Z1, Z2, Z3) at index bits 0..3
    i = np.arange(16)
    x1, z1, z2, z3 = ((i >> b) & 1 for b in range(4))
    ga = TruthTable.from_array(4, z1 ^ z2 ^ (x1 & (z1 ^ z3)))
    ha = TruthTable.from_array(4, z1 ^ z3 ^ (x1 & z2))
    return direct_sum(ga, mm), direct_sum(ha, mm)


def gencons_case1(n: int, t: int, psi: BitPermutation | None = None) -> TruthTable:
    _check_tt_size(n)
    return iterate(*gencons1_seeds(n, t, psi), t)


def gencons_case2(n: int, t: int, psi: BitPermutation | None = None) -> TruthTable:
    _check_tt_size(n)
    return iterate(*gencons2_seeds(n, t, psi), t)


# --- parameter records ----------------------------------------------------------


@dataclass(frozen=True)
class ConstructionParams:
    """A fully specified member of one family.

    ``n`` is the total variable count except for ``maj`` (its size) and
    ``mm`` (``k`` is used, n = 2k). ``step``/``iter`` take seed parameters
    ``g`` and ``h``. ``complement`` negates the result.
    """

    family: str
    n: int | None = None
    m: int | None = None
    t: int | None = None
    k: int | None = None
    psi: BitPermutation | None = None
    g: ConstructionParams | None = None
    h: ConstructionParams | None = None
    complement: bool = False
    which: str = "G"  # output of ``step``

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise BoolFnError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")

    def num_vars(self) -> int:
        fam = self.family
        if fam == "maj":
            return _need(self.n, "n")
        if fam == "mm":
            return 2 * _need(self.k, "k")
        if fam == "f5":
            return 5
        if fam == "step":
            return self._seed_n() + 3
        if fam == "iter":
            return self._seed_n() + 3 * _need(self.t, "t") + 1
        return _need(self.n, "n")

    def _seed_n(self) -> int:
        if self.g is None or self.h is None:
            raise BoolFnError(f"family {self.family} needs seeds g and h")
        ng, nh = self.g.num_vars(), self.h.num_vars()
        if ng != nh:
            raise BoolFnError(f"seed sizes differ: {ng} vs {nh}")
        return ng

    def mm_k(self) -> int | None:
        """Size of the MM block, or None for families without one."""
        fam = self.family
        if fam == "mm":
            return self.k
        if fam == "thm_even":
            return thm_even_k(_need(self.m, "m"), _need(self.n, "n"))
        if fam == "thm_odd":
            return thm_odd_k(_need(self.m, "m"), _need(self.n, "n"))
        if fam == "gencons1":
            return gencons1_k(_need(self.n, "n"), _need(self.t, "t"))
        if fam == "gencons2":
            return gencons2_k(_need(self.n, "n"), _need(self.t, "t"))
        return None

    def validate(self) -> None:
        """Raise BoolFnError for family constraint violations."""
        self.num_vars()
        k = self.mm_k()
        if self.family == "mm" and (k is None or k < 2):
            raise BoolFnError("mm needs k >= 2")
        if self.family == "maj" and self.n < 1:
            raise BoolFnError("maj needs n >= 1")
        if k is not None:
            _psi(self.psi, k)
        if self.family == "step" and self.which not in ("G", "H"):
            raise BoolFnError("step output must be G or H")
        for seed in (self.g, self.h):
            if seed is not None:
                seed.validate()

    def psi_or_identity(self) -> BitPermutation | None:
        k = self.mm_k()
        return None if k is None else _psi(self.psi, k)

    def describe(self) -> str:
        parts = [self.family]
        for name in ("n", "m", "t", "k"):
            v = getattr(self, name)
            if v is not None:
                parts.append(f"{name}={v}")
        if self.psi is not None:
            parts.append(f"psi={self.psi}")
        s = ":".join([parts[0], ",".join(parts[1:])]) if len(parts) > 1 else parts[0]
        return ("~" if self.complement else "") + s


def _need(v, name: str):
    if v is None:
        raise BoolFnError(f"parameter {name} is required for this family")
    return v


_SEED_RE = re.compile(r"(~?)([a-z_0-9]+)(?::(.*))?")


def parse_seed(text: str) -> ConstructionParams:
    """Parse ``[~]family[:key=value,...]``, e.g. ``~thm_even:m=0,n=5``."""
    m = _SEED_RE.fullmatch(text.strip())
    if not m:
        raise BoolFnError(f"bad seed spec {text!r}")
    comp, fam, rest = m.groups()
    kw: dict = {}
    if rest:
        for item in re.split(r",(?=[a-z]+=)", rest):
            key, _, val = item.partition("=")
            if key in ("n", "m", "t", "k"):
                try:
                    kw[key] = int(val)
                except ValueError:
                    raise BoolFnError(f"bad integer in seed spec: {item!r}") from None
            elif key == "psi":
                kw["psi"] = val
            else:
                raise BoolFnError(f"unknown seed parameter {key!r}")
    psi_spec = kw.pop("psi", None)
    p = ConstructionParams(fam, complement=bool(comp), **kw)
    if psi_spec is not None:
        k = p.mm_k()
        if k is None:
            raise BoolFnError(f"family {fam} takes no psi")
        p = replace(p, psi=BitPermutation.parse(psi_spec, k))
    return p


def build(p: ConstructionParams) -> TruthTable:
    """Truth table of the function described by ``p``."""
    p.validate()
    _check_tt_size(p.num_vars())
    fam = p.family
    psi = p.psi_or_identity()
    if fam == "maj":
        f = majority(p.n)
    elif fam == "mm":
        f = mm_majority(p.k, psi)
    elif fam == "f5":
        f = f5()
    elif fam == "thm_even":
        f = thm_even(p.m, p.n, psi)
    elif fam == "thm_odd":
        f = thm_odd(p.m, p.n, psi)
    elif fam == "gencons1":
        f = gencons_case1(p.n, p.t, psi)
    elif fam == "gencons2":
        f = gencons_case2(p.n, p.t, psi)
    elif fam == "step":
        G, H = step(build(p.g), build(p.h))
        f = G if p.which == "G" else H
    else:
        f = iterate(build(p.g), build(p.h), p.t)
    return f.complement() if p.complement else f


# --- direct formula evaluation ----------------------------------------------------


def _xor_cols(x: np.ndarray, lo: int, count: int) -> np.ndarray:
    out = np.zeros(x.shape[0], dtype=bool)
    for j in range(lo, lo + count):
        out ^= x[:, j]
    return out


def _eval_mm(x: np.ndarray, lo: int, k: int, psi: BitPermutation) -> np.ndarray:
    xs = x[:, lo : lo + k]
    ys = x[:, lo + k : lo + 2 * k]
    out = xs.sum(axis=1) > k // 2
    for j, src in enumerate(psi.image):
        out ^= xs[:, src - 1] & ys[:, j]
    return out


def _eval_f5(x: np.ndarray, lo: int) -> np.ndarray:
    x1, x2, z1, z2, z3 = (x[:, lo + b] for b in range(5))
    return z1 ^ z2 ^ (x1 & (z1 ^ z3)) ^ (x2 & (z2 ^ z3)) ^ (x1 & x2 & (z1 ^ z2 ^ z3))


def evaluate_points(p: ConstructionParams, x: np.ndarray) -> np.ndarray:
    """Evaluate the family's defining formula on rows of ``x`` (shape (N, n), 0/1).

    Column ``j`` holds ``X_{j+1}``. Independent of the truth-table builders
    and of the netlist synthesis.
    """
    p.validate()
    x = np.asarray(x, dtype=bool)
    n = p.num_vars()
    if x.ndim != 2 or x.shape[1] != n:
        raise BoolFnError(f"points must have shape (N, {n})")
    fam = p.family
    psi = p.psi_or_identity()
    if fam == "maj":
        out = x.sum(axis=1) > n // 2
    elif fam == "mm":
        out = _eval_mm(x, 0, p.k, psi)
    elif fam == "f5":
        out = _eval_f5(x, 0)
    elif fam == "thm_even":
        out = _xor_cols(x, 0, p.m + 1) ^ _eval_mm(x, p.m + 1, p.mm_k(), psi)
    elif fam == "thm_odd":
        out = _xor_cols(x, 0, p.m - 1) ^ _eval_f5(x, p.m - 1) ^ _eval_mm(x, p.m + 4, p.mm_k(), psi)
    elif fam in ("gencons1", "gencons2"):
        k = p.mm_k()
        if fam == "gencons1":
            base = 1
            gv = x[:, 0] ^ _eval_mm(x, base, k, psi)
            hv = ~gv
        else:
            base = 4
            x1, z1, z2, z3 = (x[:, b] for b in range(4))
            mm = _eval_mm(x, base, k, psi)
            gv = z1 ^ z2 ^ (x1 & (z1 ^ z3)) ^ mm
            hv = z1 ^ z3 ^ (x1 & z2) ^ mm
        out = _iterate_points(x, base + 2 * k, gv, hv, p.t)
    elif fam == "step":
        s = p.num_vars() - 3
        gv = evaluate_points(p.g, x[:, :s])
        hv = evaluate_points(p.h, x[:, :s])
        G, H = _step_points(x, s, gv, hv)
        out = G if p.which == "G" else H
    else:
        s = p.g.num_vars()
        gv = evaluate_points(p.g, x[:, :s])
        hv = evaluate_points(p.h, x[:, :s])
        out = _iterate_points(x, s, gv, hv, p.t)
    return ~out if p.complement else out


def _step_points(x, s, gv, hv):
    a, b, c = x[:, s], x[:, s + 1], x[:, s + 2]
    G = c ^ b ^ np.where(a, hv, gv)
    H = c ^ a ^ np.where(c ^ b, hv, gv)
    return G, H


def _iterate_points(x, s, gv, hv, t):
    for _ in range(t):
        gv, hv = _step_points(x, s, gv, hv)
        s += 3
    return np.where(x[:, s], hv, gv)


# --- trade-off solver -----------------------------------------------------------


@dataclass(frozen=True)
class CaseResult:
    case: int
    n: int
    m: int
    x: int  # linear bias is 2^-x
    a: int  # guaranteed AI lower bound
    t: int | None = None

    def params(self) -> ConstructionParams:
        if self.case == 1:
            return ConstructionParams("thm_even", n=self.n, m=self.m)
        if self.case == 2:
            return ConstructionParams("thm_odd", n=self.n, m=self.m)
        if self.case == 3:
            return ConstructionParams("gencons1", n=self.n, t=self.t)
        return ConstructionParams("gencons2", n=self.n, t=self.t)

    def tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.m, self.x, self.a)


@dataclass(frozen=True)
class TradeoffSolution:
    m0: int
    x0: int
    a0: int
    cases: tuple[CaseResult, ...] = field(default=())

    @property
    def selected(self) -> CaseResult:
        return min(self.cases, key=lambda c: (c.n, c.case))

    def case(self, i: int) -> CaseResult:
        for c in self.cases:
            if c.case == i:
                return c
        raise KeyError(i)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _solve_case(case: int, m0: int, x0: int, a0: int) -> CaseResult:
    if case == 1:
        n = max(m0 + 1 + 2 * x0, m0 + 1 + 4 * a0)
        if (n - m0) % 2 == 0:
            n += 1
        return CaseResult(1, n, m0, (n - m0 - 1) // 2, _ceil_div(n - m0 - 1, 4))
    if case == 2:
        m = max(m0, 1)  # f5 supplies one order of resiliency
        n = max(m + 2 * x0, m + 4 + 4 * a0)
        if (n - m) % 2:
            n += 1
        return CaseResult(2, n, m, (n - m) // 2, _ceil_div(n - m - 4, 4))
    if case == 3:
        t = _ceil_div(m0, 2)
        n = max(2 * x0 + t + 2, 4 * a0 + 3 * t + 2)
        if (n - 3 * t - 1) % 2 == 0:
            n += 1
        return CaseResult(3, n, 2 * t, (n - t - 2) // 2, _ceil_div(n - 3 * t - 2, 4), t)
    if case == 4:
        t = max(0, _ceil_div(m0 - 1, 2))
        n = max(2 * x0 + t + 1, 4 * a0 + 3 * t + 5)
        if (n - 3 * t - 1) % 2:
            n += 1
        return CaseResult(4, n, 2 * t + 1, (n - t - 1) // 2, _ceil_div(n - 3 * t - 5, 4), t)
    raise BoolFnError(f"case must be 1..4, got {case}")


def solve_tradeoff(m0: int, x0: int, a0: int, cases=(1, 2, 3, 4)) -> TradeoffSolution:
    """Smallest n per construction meeting resiliency >= m0, LB <= 2^-x0, AI >= a0."""
    if m0 < 0 or x0 < 1 or a0 < 1:
        raise BoolFnError("targets need m0 >= 0, x0 >= 1, a0 >= 1")
    return TradeoffSolution(m0, x0, a0, tuple(_solve_case(c, m0, x0, a0) for c in cases))


def gate_lower_bound(m0: int, x0: int, a0: int) -> int:
    return max(m0 + 1, 2 * x0, 2 * a0 - 1) - 1


TABLE1_TARGETS = (
    (4, 6, 3),
    (4, 6, 4),
    (4, 9, 3),
    (4, 9, 4),
    (4, 12, 3),
    (4, 12, 4),
    (7, 6, 3),
    (7, 6, 4),
    (7, 9, 3),
    (7, 9, 4),
    (7, 12, 3),
    (7, 12, 4),
)


def table1() -> list[TradeoffSolution]:
    return [solve_tradeoff(*target) for target in TABLE1_TARGETS]

