"""Walsh spectrum and the metrics read off it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from boolfn.core import BoolFnError, TruthTable, _check_tt_size, popcount_array


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    n: int
    values: np.ndarray  # int64, entry alpha = W_f(alpha)

    def max_abs(self) -> int:
        return int(np.abs(self.values).max())

    def __getitem__(self, alpha: int) -> int:
        return int(self.values[alpha])


@dataclass(frozen=True, order=False)
class DyadicRational:
    """``numerator / 2**exponent`` in lowest terms."""

    numerator: int
    exponent: int

    def __post_init__(self) -> None:
        if self.numerator < 0 or self.exponent < 0:
            raise BoolFnError("dyadic rational must be non-negative")
        num, exp = self.numerator, self.exponent
        if num == 0:
            exp = 0
        while exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "exponent", exp)

    @classmethod
    def power_of_two(cls, e: int) -> DyadicRational:
        """``2**-e``."""
        return cls(1, e)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __lt__(self, other: DyadicRational) -> bool:
        return self.as_fraction() < other.as_fraction()

    def __le__(self, other: DyadicRational) -> bool:
        return self.as_fraction() <= other.as_fraction()

    def __str__(self) -> str:
        return f"{self.numerator}/2^{self.exponent}"


def walsh_transform(f: TruthTable) -> WalshSpectrum:
    _check_tt_size(f.n)
    a = 1 - 2 * f.to_array().astype(np.int64)
    for i in range(f.n):
        s = 1 << i
        v = a.reshape(-1, 2, s)
        lo = v[:, 0, :].copy()
        v[:, 0, :] += v[:, 1, :]
        v[:, 1, :] = lo - v[:, 1, :]
    return WalshSpectrum(f.n, a)


def nonlinearity(s: WalshSpectrum) -> int:
    return (1 << (s.n - 1)) - s.max_abs() // 2


def linear_bias(s: WalshSpectrum) -> DyadicRational:
    return DyadicRational(s.max_abs(), s.n)


def resiliency_order(s: WalshSpectrum) -> int:
    """Largest m with W vanishing on all masks of weight <= m; -1 if unbalanced."""
    if s.values[0] != 0:
        return -1
    nz = np.flatnonzero(s.values)
    return int(popcount_array(nz.astype(np.uint64)).min()) - 1


def is_bent(s: WalshSpectrum) -> bool:
    if s.n % 2:
        return False
    return bool(np.all(np.abs(s.values) == (1 << (s.n // 2))))


def covering_radius_numerator(n: int) -> int:
    """``floor(2**(n/2 - 1))``, so that chi(n) is this over ``2**(n-1)``."""
    return isqrt(1 << (n - 2)) if n >= 2 else 0


def almost_optimal_lb(s: WalshSpectrum) -> bool:
    # chi <= max|W|/2^n <= 2 chi, with chi = c / 2^(n-1)
    c = covering_radius_numerator(s.n)
    w = s.max_abs()
    return 2 * c <= w <= 4 * c


def divisibility_exponent(n: int, m: int, d: int) -> int:
    if d < 1:
        raise BoolFnError("degree must be >= 1 for the divisibility check")
    if m < 0 or m > n - 2:
        raise BoolFnError(f"divisibility check needs 0 <= m <= n-2, got m={m}, n={n}")
    return m + 2 + (n - m - 2) // d


def divisibility_check(s: WalshSpectrum, m: int, d: int) -> bool:
    e = divisibility_exponent(s.n, m, d)
    return bool(np.all(s.values % (1 << e) == 0))


def siegenthaler_check(n: int, m: int, d: int) -> bool:
    if not 0 <= m <= n - 1:
        raise BoolFnError(f"resiliency order {m} out of range for n={n}")
    if m == n - 1:
        return d == 1
    return d <= n - m - 1
