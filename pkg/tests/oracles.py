"""Slow, definition-level reference implementations used to check the fast code."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from boolfn.core import TruthTable, degree


def walsh_by_sum(f: TruthTable) -> list[int]:
    n = f.n
    vals = [f.evaluate(x) for x in range(1 << n)]
    return [
        sum(1 - 2 * (vals[x] ^ (bin(a & x).count("1") & 1)) for x in range(1 << n))
        for a in range(1 << n)
    ]


def affine_distance(f: TruthTable) -> int:
    """Minimum Hamming distance to all 2^(n+1) affine functions."""
    n = f.n
    x = np.arange(1 << n)
    # row a holds the linear function <a, x>
    lin = np.array([[bin(a & v).count("1") & 1 for v in x] for a in x], dtype=np.uint8)
    d = (lin ^ f.to_array()[None, :]).sum(axis=1)
    return int(min(d.min(), ((1 << n) - d).min()))


def anf_by_subsets(f: TruthTable) -> int:
    """ANF coefficient mask: a_u = XOR of f(x) over x contained in u."""
    coeffs = 0
    for u in range(1 << f.n):
        c = 0
        x = u
        while True:
            c ^= f.evaluate(x)
            if x == 0:
                break
            x = (x - 1) & u
        coeffs |= c << u
    return coeffs


def low_degree_monomials(n: int, d: int) -> list[int]:
    out = []
    for k in range(d + 1):
        for c in combinations(range(n), k):
            out.append(sum(1 << i for i in c))
    return out


def _monomial_table(n: int, m: int) -> int:
    bits = 0
    for x in range(1 << n):
        if x & m == m:
            bits |= 1 << x
    return bits


def ai_exhaustive(f: TruthTable, max_degree: int = 2) -> int | None:
    """AI by walking every coefficient vector of degree <= max_degree (tiny n only).

    The vectors are visited in Gray-code order so each step is one XOR.
    Returns the AI if it is at most ``max_degree``, otherwise None.
    """
    n = f.n
    comp = f.bits ^ ((1 << (1 << n)) - 1)
    if f.bits == 0 or comp == 0:
        return 0
    for d in range(1, max_degree + 1):
        tables = [_monomial_table(n, m) for m in low_degree_monomials(n, d)]
        g = 0
        for i in range(1, 1 << len(tables)):
            g ^= tables[(i & -i).bit_length() - 1]
            if g & f.bits == 0 or g & comp == 0:
                return d
    return None


def min_degree_affine_multiple(f: TruthTable) -> int:
    """Least deg(f g) over the 2^(n+1) - 1 nonzero affine g, by explicit products."""
    n = f.n
    best = None
    for a in range(1 << n):
        for c in (0, 1):
            if a == 0 and c == 0:
                continue
            g = TruthTable.from_callable(n, lambda x: (bin(a & x).count("1") + c) & 1)
            fg = f & g
            d = degree(fg) if fg.bits else 0
            best = d if best is None else min(best, d)
    return best
