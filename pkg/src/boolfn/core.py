"""Truth-table and ANF carriers, structural combinators, the Moebius transform.

Variable ``X_j`` (1-based) is bit ``j-1`` of the truth-table index, so the
variable added by :func:`concat` is the most significant index bit and the
string of ``concat(g, h)`` is literally ``g`` followed by ``h``.

Truth tables are stored as Python ints (bit ``i`` = ``f(i)``); numpy is used
where per-point arithmetic is needed.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np


class BoolFnError(ValueError):
    """Invalid argument or malformed input."""


class CapExceeded(BoolFnError):
    """A configured resource cap would be exceeded."""


@dataclass
class Limits:
    tt: int = 26  # max variables for a truth table
    ai: int = 18  # max variables for exact algebraic immunity
    fai: int = 12  # max variables for fast algebraic immunity
    exhaustive: int = 20  # max inputs for exhaustive netlist checks


LIMITS = Limits()


def _check_tt_size(n: int) -> None:
    if n < 1:
        raise BoolFnError(f"variable count must be >= 1, got {n}")
    if n > LIMITS.tt:
        raise CapExceeded(f"{n} variables exceeds the truth-table cap of {LIMITS.tt} (raise with --max-tt)")


def full_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=512)
def var_bits(n: int, j: int) -> int:
    """Truth table (as int) of the projection ``X_j`` on ``n`` variables."""
    half = 1 << (j - 1)
    block = ((1 << half) - 1) << half
    length = 2 * half
    size = 1 << n
    while length < size:
        block |= block << length
        length *= 2
    return block


def popcount_array(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a)


def bits_to_array(bits: int, n: int) -> np.ndarray:
    size = 1 << n
    raw = bits.to_bytes(max(1, size // 8), "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:size]


def array_to_bits(arr: np.ndarray) -> int:
    packed = np.packbits(np.asarray(arr, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


@dataclass(frozen=True)
class TruthTable:
    """Value vector of an ``n``-variable Boolean function."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        _check_tt_size(self.n)
        if self.bits < 0 or self.bits >> (1 << self.n):
            raise BoolFnError(f"truth table does not fit {1 << self.n} bits")

    @classmethod
    def from_array(cls, n: int, arr) -> TruthTable:
        arr = np.asarray(arr)
        if arr.shape != (1 << n,):
            raise BoolFnError(f"expected {1 << n} values, got shape {arr.shape}")
        return cls(n, array_to_bits(arr))

    @classmethod
    def from_callable(cls, n: int, func) -> TruthTable:
        """Tabulate ``func`` over all indices (slow path, for small n and tests)."""
        return cls.from_array(n, np.array([func(x) & 1 for x in range(1 << n)], dtype=np.uint8))

    @classmethod
    def constant(cls, n: int, value: int) -> TruthTable:
        return cls(n, full_mask(n) if value & 1 else 0)

    @classmethod
    def variable(cls, n: int, j: int) -> TruthTable:
        if not 1 <= j <= n:
            raise BoolFnError(f"variable index {j} out of range 1..{n}")
        return cls(n, var_bits(n, j))

    @classmethod
    def parity(cls, n: int) -> TruthTable:
        bits = 0
        for j in range(1, n + 1):
            bits ^= var_bits(n, j)
        return cls(n, bits)

    @property
    def size(self) -> int:
        return 1 << self.n

    def to_array(self) -> np.ndarray:
        return bits_to_array(self.bits, self.n)

    def evaluate(self, x: int) -> int:
        if not 0 <= x < self.size:
            raise BoolFnError(f"assignment {x} out of range for n={self.n}")
        return (self.bits >> x) & 1

    __call__ = evaluate

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_balanced(self) -> bool:
        return 2 * self.weight() == self.size

    def complement(self) -> TruthTable:
        return TruthTable(self.n, self.bits ^ full_mask(self.n))

    def __invert__(self) -> TruthTable:
        return self.complement()

    def __xor__(self, other: TruthTable) -> TruthTable:
        _same_n(self, other)
        return TruthTable(self.n, self.bits ^ other.bits)

    def __and__(self, other: TruthTable) -> TruthTable:
        _same_n(self, other)
        return TruthTable(self.n, self.bits & other.bits)

    def __or__(self, other: TruthTable) -> TruthTable:
        _same_n(self, other)
        return TruthTable(self.n, self.bits | other.bits)


def _same_n(a: TruthTable, b: TruthTable) -> None:
    if a.n != b.n:
        raise BoolFnError(f"variable counts differ: {a.n} vs {b.n}")


def weight(f: TruthTable) -> int:
    return f.weight()


def evaluate(f: TruthTable, x: int) -> int:
    return f.evaluate(x)


@dataclass(frozen=True)
class AnfPoly:
    """ANF coefficients; bit ``alpha`` is the coefficient of ``X^alpha``."""

    n: int
    coeffs: int

    def __post_init__(self) -> None:
        _check_tt_size(self.n)
        if self.coeffs < 0 or self.coeffs >> (1 << self.n):
            raise BoolFnError(f"coefficient vector does not fit {1 << self.n} bits")

    def monomials(self) -> list[int]:
        """Set monomial masks in (degree, mask) order."""
        idx = np.flatnonzero(bits_to_array(self.coeffs, self.n))
        return sorted(idx.tolist(), key=lambda a: (a.bit_count(), a))

    def degree(self) -> int:
        if self.coeffs == 0:
            return 0
        idx = np.flatnonzero(bits_to_array(self.coeffs, self.n))
        return int(popcount_array(idx.astype(np.uint64)).max())

    def __str__(self) -> str:
        return format_anf(self)


def degree(p: AnfPoly | TruthTable) -> int:
    """Algebraic degree; accepts a truth table for convenience."""
    if isinstance(p, TruthTable):
        p = mobius(p)
    return p.degree()


def _mobius_bits(bits: int, n: int) -> int:
    full = full_mask(n)
    for i in range(n):
        low = full ^ var_bits(n, i + 1)
        bits ^= (bits & low) << (1 << i)
    return bits


def mobius(tt: TruthTable) -> AnfPoly:
    return AnfPoly(tt.n, _mobius_bits(tt.bits, tt.n))


def mobius_inv(anf: AnfPoly) -> TruthTable:
    return TruthTable(anf.n, _mobius_bits(anf.coeffs, anf.n))


def concat(g: TruthTable, h: TruthTable) -> TruthTable:
    """``(1+X_{n+1}) g + X_{n+1} h``: g's string followed by h's."""
    _same_n(g, h)
    _check_tt_size(g.n + 1)
    return TruthTable(g.n + 1, g.bits | (h.bits << g.size))


def direct_sum(g: TruthTable, h: TruthTable) -> TruthTable:
    """``g(X) + h(Y)`` with g's variables in the low index bits."""
    _check_tt_size(g.n + h.n)
    ga = g.to_array().astype(bool)
    ha = h.to_array().astype(bool)
    arr = np.logical_xor(ha[:, None], ga[None, :]).reshape(-1)
    return TruthTable(g.n + h.n, array_to_bits(arr))


def add_parity_vars(f: TruthTable, count: int) -> TruthTable:
    """Direct sum of ``f`` with the parity of ``count`` new top variables."""
    if count < 0:
        raise BoolFnError("count must be non-negative")
    if count == 0:
        return f
    return direct_sum(f, TruthTable.parity(count))


def restrict(f: TruthTable, fixed: Mapping[int, int]) -> TruthTable:
    """Sub-function with the given variables fixed.

    Surviving variables keep their relative order and are renumbered from 1.
    """
    for j in fixed:
        if not 1 <= j <= f.n:
            raise BoolFnError(f"variable index {j} out of range 1..{f.n}")
    if not fixed:
        return f
    if len(fixed) >= f.n:
        raise BoolFnError("cannot fix every variable (zero-variable functions are not represented)")
    cube = f.to_array().reshape([2] * f.n)
    index = [slice(None)] * f.n
    for j, b in fixed.items():
        index[f.n - j] = int(b) & 1
    sub = cube[tuple(index)]
    return TruthTable.from_array(f.n - len(fixed), sub.reshape(-1))


def permute_variables(f: TruthTable, order: Sequence[int]) -> TruthTable:
    """Rename variables: new ``X_j`` is old ``X_{order[j-1]}``."""
    n = f.n
    if sorted(order) != list(range(1, n + 1)):
        raise BoolFnError(f"not a permutation of 1..{n}: {list(order)}")
    cube = f.to_array().reshape([2] * n)
    axes = [0] * n
    for j in range(1, n + 1):
        axes[n - j] = n - order[j - 1]
    return TruthTable.from_array(n, np.transpose(cube, axes).reshape(-1))


def reverse_variables(f: TruthTable) -> TruthTable:
    return permute_variables(f, list(range(f.n, 0, -1)))


def nondegenerate_vars(f: TruthTable) -> set[int]:
    out = set()
    full = full_mask(f.n)
    for j in range(1, f.n + 1):
        s = 1 << (j - 1)
        high = var_bits(f.n, j)
        low = full ^ high
        flipped = ((f.bits & high) >> s) | ((f.bits & low) << s)
        if flipped != f.bits:
            out.add(j)
    return out


@dataclass(frozen=True)
class BitPermutation:
    """``psi(x)_j = x_{image[j-1]}`` with 1-based ``image``."""

    k: int
    image: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.image:
            object.__setattr__(self, "image", tuple(range(1, self.k + 1)))
        if len(self.image) != self.k or sorted(self.image) != list(range(1, self.k + 1)):
            raise BoolFnError(f"not a permutation of 1..{self.k}: {self.image}")

    @classmethod
    def identity(cls, k: int) -> BitPermutation:
        return cls(k)

    @classmethod
    def random(cls, k: int, seed: int) -> BitPermutation:
        image = list(range(1, k + 1))
        random.Random(seed).shuffle(image)
        return cls(k, tuple(image))

    @classmethod
    def parse(cls, spec: str | None, k: int) -> BitPermutation:
        """``identity``, ``random:<seed>`` or an explicit list ``2,3,1``."""
        if spec is None or spec == "identity":
            return cls.identity(k)
        if spec.startswith("random:"):
            try:
                seed = int(spec.split(":", 1)[1])
            except ValueError:
                raise BoolFnError(f"bad psi seed in {spec!r}") from None
            return cls.random(k, seed)
        try:
            image = tuple(int(v) for v in spec.split(","))
        except ValueError:
            raise BoolFnError(f"bad psi spec {spec!r}") from None
        return cls(k, image)

    def apply(self, x: int) -> int:
        out = 0
        for j, src in enumerate(self.image):
            out |= ((x >> (src - 1)) & 1) << j
        return out

    def apply_array(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros_like(x)
        for j, src in enumerate(self.image):
            out |= ((x >> (src - 1)) & 1) << j
        return out

    def __str__(self) -> str:
        return ",".join(map(str, self.image))


# --- text formats -----------------------------------------------------------

_HEX = "0123456789abcdef"
_NIBBLE_WEIGHTS = np.array([8, 4, 2, 1], dtype=np.uint8)


def to_hex(f: TruthTable) -> str:
    arr = f.to_array()
    pad = (-arr.size) % 4
    if pad:
        arr = np.concatenate([arr, np.zeros(pad, dtype=np.uint8)])
    nibbles = arr.reshape(-1, 4) @ _NIBBLE_WEIGHTS
    return "".join(_HEX[v] for v in nibbles.tolist())


def from_hex(n: int, text: str) -> TruthTable:
    _check_tt_size(n)
    expected = max(1, (1 << n) // 4)
    text = text.strip().lower()
    if len(text) != expected:
        raise BoolFnError(f"hex length {len(text)} does not match n={n} (expected {expected})")
    if any(c not in _HEX for c in text):
        raise BoolFnError("truth table contains non-hex characters")
    vals = np.array([_HEX.index(c) for c in text], dtype=np.uint8)
    arr = ((vals[:, None] >> np.array([3, 2, 1, 0], dtype=np.uint8)) & 1).reshape(-1)
    if arr[1 << n:].any():
        raise BoolFnError("padding bits of the truth table must be zero")
    return TruthTable.from_array(n, arr[: 1 << n])


def dumps_function(f: TruthTable, msb_first: bool = False) -> str:
    if msb_first:
        f = reverse_variables(f)
    return f"n {f.n}\ntt {to_hex(f)}\n"


def loads_function(text: str, msb_first: bool = False) -> TruthTable:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise BoolFnError("line 1: empty function file")
    m = re.fullmatch(r"n\s+(\d+)", lines[0])
    if not m:
        raise BoolFnError(f"line 1: expected 'n <count>', got {lines[0]!r}")
    n = int(m.group(1))
    if len(lines) < 2:
        raise BoolFnError("line 2: missing 'tt <hex>' line")
    m = re.fullmatch(r"tt\s+(\S+)", lines[1])
    if not m:
        raise BoolFnError(f"line 2: expected 'tt <hex>', got {lines[1][:40]!r}")
    try:
        f = from_hex(n, m.group(1))
    except BoolFnError as exc:
        raise BoolFnError(f"line 2: {exc}") from None
    return reverse_variables(f) if msb_first else f


def read_function(path, msb_first: bool = False) -> TruthTable:
    with open(path) as fh:
        return loads_function(fh.read(), msb_first)


def write_function(path, f: TruthTable, msb_first: bool = False) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_function(f, msb_first))


def monomial_str(alpha: int) -> str:
    if alpha == 0:
        return "1"
    return "*".join(f"x{i + 1}" for i in range(alpha.bit_length()) if alpha >> i & 1)


def format_anf(p: AnfPoly) -> str:
    terms = p.monomials()
    if not terms:
        return "0"
    return " + ".join(monomial_str(a) for a in terms)


def parse_anf(text: str, n: int) -> AnfPoly:
    text = text.strip()
    coeffs = 0
    if text != "0":
        for term in text.split("+"):
            term = term.strip()
            alpha = 0
            if term != "1":
                for factor in term.split("*"):
                    m = re.fullmatch(r"x(\d+)", factor.strip())
                    if not m or not 1 <= int(m.group(1)) <= n:
                        raise BoolFnError(f"bad ANF factor {factor!r}")
                    alpha |= 1 << (int(m.group(1)) - 1)
            coeffs ^= 1 << alpha
    return AnfPoly(n, coeffs)


def monomials_of_degree(n: int, d: int) -> list[int]:
    """Masks of weight ``d`` in ascending order."""
    from itertools import combinations

    masks = [sum(1 << i for i in c) for c in combinations(range(n), d)]
    masks.sort()
    return masks


def graded_monomials(n: int, max_degree: int) -> Iterable[int]:
    for d in range(max_degree + 1):
        yield from monomials_of_degree(n, d)
