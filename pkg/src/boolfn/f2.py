"""Bit-packed GF(2) linear algebra.

Vectors are little-endian packed into ``uint64`` words: bit ``j`` lives in
word ``j // 64`` at position ``j % 64``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def words_for(bits: int) -> int:
    return max(1, (bits + 63) // 64)


def pack_rows(bits: np.ndarray) -> np.ndarray:
    """Pack a 2-D 0/1 array along its last axis into uint64 words."""
    bits = np.atleast_2d(np.asarray(bits, dtype=bool))
    rows, cols = bits.shape
    nbytes = words_for(cols) * 8
    packed = np.packbits(bits, axis=1, bitorder="little")
    out = np.zeros((rows, nbytes), dtype=np.uint8)
    out[:, : packed.shape[1]] = packed
    return out.view("<u8").astype(np.uint64, copy=False)


def unpack_rows(words: np.ndarray, cols: int) -> np.ndarray:
    words = np.atleast_2d(words)
    raw = words.astype("<u8").view(np.uint8)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :cols]


def set_bits(words: np.ndarray) -> list[int]:
    return np.flatnonzero(unpack_rows(words, words.size * 64)[0]).tolist()


class EchelonBasis:
    """Reduced echelon basis grown one vector at a time.

    Every basis row has a 1 at its own pivot and 0 at every other pivot, so a
    new vector is reduced by one XOR-reduce over the rows whose pivots it
    hits. Each row also carries the combination of inserted vectors it
    equals; a vector that reduces to zero yields that combination as a
    linear dependency ending at the vector itself.
    """

    def __init__(self, width: int):
        self.width = width
        self.words = words_for(width)
        self.rank = 0
        self.count = 0
        self._rows = np.zeros((16, self.words), dtype=np.uint64)
        self._combo = np.zeros((16, 1), dtype=np.uint64)
        self._pw = np.zeros(16, dtype=np.int64)
        self._pb = np.zeros(16, dtype=np.uint64)

    def _grow(self) -> None:
        cap = self._rows.shape[0]
        if self.rank == cap:
            self._rows = np.vstack([self._rows, np.zeros_like(self._rows)])
            self._combo = np.vstack([self._combo, np.zeros_like(self._combo)])
            self._pw = np.concatenate([self._pw, np.zeros_like(self._pw)])
            self._pb = np.concatenate([self._pb, np.zeros_like(self._pb)])
        if self.count >= self._combo.shape[1] * 64:
            self._combo = np.hstack([self._combo, np.zeros_like(self._combo)])

    def insert(self, vec: np.ndarray) -> np.ndarray | None:
        """Add ``vec``; return a dependency (packed over insert order) or None."""
        self._grow()
        v = np.array(vec, dtype=np.uint64, copy=True).reshape(self.words)
        idx = self.count
        self.count += 1
        c = np.zeros(self._combo.shape[1], dtype=np.uint64)
        c[idx // 64] = np.uint64(1) << np.uint64(idx % 64)
        r = self.rank
        if r:
            hit = np.flatnonzero((v[self._pw[:r]] >> self._pb[:r]) & np.uint64(1))
            if hit.size:
                v ^= np.bitwise_xor.reduce(self._rows[hit], axis=0)
                c ^= np.bitwise_xor.reduce(self._combo[hit], axis=0)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return c
        w = int(nz[0])
        word = int(v[w])
        b = (word & -word).bit_length() - 1
        if r:
            col = (self._rows[:r, w] >> np.uint64(b)) & np.uint64(1)
            hit = np.flatnonzero(col)
            if hit.size:
                self._rows[hit] ^= v
                self._combo[hit] ^= c
        self._rows[r] = v
        self._combo[r] = c
        self._pw[r] = w
        self._pb[r] = b
        self.rank += 1
        return None


@dataclass(frozen=True, eq=False)
class F2Matrix:
    rows: int
    cols: int
    data: np.ndarray  # (rows, words_for(cols)) uint64, row-major

    @classmethod
    def from_dense(cls, bits) -> F2Matrix:
        arr = np.atleast_2d(np.asarray(bits, dtype=np.uint8))
        return cls(arr.shape[0], arr.shape[1], pack_rows(arr))

    def to_dense(self) -> np.ndarray:
        return unpack_rows(self.data, self.cols)

    def get(self, i: int, j: int) -> int:
        return int((self.data[i, j // 64] >> np.uint64(j % 64)) & np.uint64(1))

    def transpose(self) -> F2Matrix:
        return F2Matrix.from_dense(self.to_dense().T)

    def rank(self) -> int:
        basis = EchelonBasis(self.cols)
        for i in range(self.rows):
            basis.insert(self.data[i])
        return basis.rank

    def kernel_vector(self) -> np.ndarray | None:
        """A nonzero ``c`` with ``M c = 0`` (0/1 array over columns), or None."""
        cols = self.transpose()
        basis = EchelonBasis(cols.cols)
        for j in range(cols.rows):
            dep = basis.insert(cols.data[j])
            if dep is not None:
                return unpack_rows(dep, self.cols)[0]
        return None
