"""Algebraic and fast algebraic immunity by GF(2) elimination.

Annihilators of degree <= d for one side of ``f`` are the kernel of the
matrix whose rows are the side's support points (ascending) and whose
columns are the monomials of degree <= d in (degree, mask) order. Columns
are fed to an :class:`~boolfn.f2.EchelonBasis` degree by degree, so the
work done for degree d is reused for d + 1; the first column that reduces
to zero closes a kernel vector, which is the annihilator.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Literal

import numpy as np

from boolfn.core import (
    LIMITS,
    AnfPoly,
    BoolFnError,
    CapExceeded,
    TruthTable,
    full_mask,
    mobius,
    mobius_inv,
    monomials_of_degree,
    popcount_array,
    restrict,
    var_bits,
)
from boolfn.f2 import EchelonBasis, pack_rows, set_bits

Side = Literal["f", "complement"]


@dataclass(frozen=True)
class AnnihilatorWitness:
    side: Side
    g: AnfPoly
    degree: int


@dataclass(frozen=True)
class ImmunityResult:
    """``value`` is exact when ``exact`` is set, otherwise a lower bound."""

    value: int
    exact: bool
    witness: AnnihilatorWitness | None = None


def _side_bits(f: TruthTable, side: Side) -> int:
    if side == "f":
        return f.bits
    if side == "complement":
        return f.bits ^ full_mask(f.n)
    raise BoolFnError(f"side must be 'f' or 'complement', got {side!r}")


def verify_annihilator(f: TruthTable, w: AnnihilatorWitness) -> bool:
    g = mobius_inv(w.g)
    return g.bits != 0 and (g.bits & _side_bits(f, w.side)) == 0 and w.g.degree() == w.degree


class _AnnihilatorSearch:
    def __init__(self, f: TruthTable, side: Side):
        self.f = f
        self.side = side
        bits = _side_bits(f, side)
        self.support = np.flatnonzero(TruthTable(f.n, bits).to_array()).astype(np.uint64)
        self.basis = EchelonBasis(self.support.size)
        self.columns: list[int] = []

    def advance(self, d: int) -> AnnihilatorWitness | None:
        """Insert all degree-``d`` monomials; return the first annihilator found."""
        s = self.support
        for alpha in monomials_of_degree(self.f.n, d):
            a = np.uint64(alpha)
            col = pack_rows(((s & a) == a)[None, :])[0]
            self.columns.append(alpha)
            dep = self.basis.insert(col)
            if dep is not None:
                coeffs = 0
                for i in set_bits(dep):
                    coeffs |= 1 << self.columns[i]
                w = AnnihilatorWitness(self.side, AnfPoly(self.f.n, coeffs), d)
                if not verify_annihilator(self.f, w):
                    raise RuntimeError("annihilator failed pointwise verification")
                return w
        return None


def min_annihilator_degree(
    f: TruthTable, side: Side = "f", max_degree: int | None = None
) -> tuple[int, AnnihilatorWitness] | None:
    """Least degree of a nonzero annihilator of ``f`` (or of ``1+f``).

    Returns None when no annihilator exists up to ``max_degree``. An empty
    support is annihilated by the constant 1 (degree 0).
    """
    if _side_bits(f, side) == 0:
        return 0, AnnihilatorWitness(side, AnfPoly(f.n, 1), 0)
    cap = f.n if max_degree is None else max_degree
    search = _AnnihilatorSearch(f, side)
    for d in range(cap + 1):
        w = search.advance(d)
        if w is not None:
            return d, w
    return None


def algebraic_immunity(f: TruthTable, cap: int | None = None) -> ImmunityResult:
    """Exact AI, or with ``cap`` a bound check that no annihilator has degree <= cap.

    Without a cap the search runs to ``ceil(n/2)`` and requires
    ``n <= LIMITS.ai``. With a cap below ``ceil(n/2)`` and no annihilator
    found, the result is the lower bound ``cap + 1``.
    """
    top = (f.n + 1) // 2
    if cap is None:
        if f.n > LIMITS.ai:
            raise CapExceeded(
                f"exact AI limited to n <= {LIMITS.ai}; pass an AI cap for a bound check (--ai-cap)"
            )
        cap = top
    cap = min(cap, top)
    for side in ("f", "complement"):
        if _side_bits(f, side) == 0:
            return ImmunityResult(0, True, AnnihilatorWitness(side, AnfPoly(f.n, 1), 0))
    searches = [_AnnihilatorSearch(f, "f"), _AnnihilatorSearch(f, "complement")]
    for d in range(cap + 1):
        for search in searches:
            w = search.advance(d)
            if w is not None:
                return ImmunityResult(d, True, w)
    if cap == top:
        raise RuntimeError(f"no annihilator of degree <= {top}; impossible for n={f.n}")
    return ImmunityResult(cap + 1, False, None)


def _degree_masks(n: int) -> np.ndarray:
    return popcount_array(np.arange(1 << n, dtype=np.uint64))


def fast_algebraic_immunity(f: TruthTable) -> int:
    """``min(2 AI, min_{1<=e<AI} e + d_min(e))``.

    ``d_min(e)`` is the least d such that some nonzero g of degree <= e has
    deg(f g) <= d: a kernel of the map from g's coefficients to the ANF
    coefficients of f g above degree d.
    """
    if f.n > LIMITS.fai:
        raise CapExceeded(f"FAI limited to n <= {LIMITS.fai} (raise with --max-fai)")
    ai = algebraic_immunity(f).value
    best = 2 * ai
    deg_of = _degree_masks(f.n)
    for e in range(1, ai):
        rows = [
            _anf_array(TruthTable(f.n, f.bits & _monomial_tt(f.n, alpha)))
            for d_g in range(e + 1)
            for alpha in monomials_of_degree(f.n, d_g)
        ]
        mat = np.stack(rows)  # one row per monomial of g
        for d in range(best - e):
            sub = mat[:, deg_of > d]
            if sub.shape[1] < sub.shape[0] or _has_dependency(sub):
                best = e + d
                break
    return best


def _anf_array(tt: TruthTable) -> np.ndarray:
    anf = mobius(tt)
    return TruthTable(anf.n, anf.coeffs).to_array()


def _monomial_tt(n: int, alpha: int) -> int:
    bits = full_mask(n)
    for i in range(n):
        if alpha >> i & 1:
            bits &= var_bits(n, i + 1)
    return bits


def _has_dependency(rows01: np.ndarray) -> bool:
    basis = EchelonBasis(rows01.shape[1])
    packed = pack_rows(rows01)
    for i in range(packed.shape[0]):
        if basis.insert(packed[i]) is not None:
            return True
    return False


def ai_lower_bound_subfunctions(f: TruthTable, split: Iterable[int], cap: int | None = None) -> int:
    """``min_alpha AI(f_alpha)`` over all assignments of the ``split`` variables."""
    split = sorted(set(split))
    if not split or len(split) >= f.n:
        raise BoolFnError("split must be a nonempty proper subset of the variables")
    best = None
    for values in product((0, 1), repeat=len(split)):
        sub = restrict(f, dict(zip(split, values)))
        v = algebraic_immunity(sub, cap).value
        best = v if best is None else min(best, v)
    return best
