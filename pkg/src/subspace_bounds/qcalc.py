"""Exact integer helpers and q-analog primitives.

Python ints are arbitrary precision and ``fractions.Fraction`` is kept
reduced with a positive denominator, so both are used directly as the
big-integer and big-rational types.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

PRIME_POWERS = (2, 3, 4, 5, 7, 8, 9)


class InvalidParameter(ValueError):
    pass


def _check_q(q: int) -> None:
    if q < 2:
        raise InvalidParameter(f"field size must be at least 2, got {q}")


@lru_cache(maxsize=None)
def _gauss(n: int, k: int, q: int) -> int:
    k = min(k, n - k)
    val = 1
    # each partial product is itself a Gaussian binomial, so division is exact
    for i in range(k):
        val = val * (q ** (n - i) - 1) // (q ** (i + 1) - 1)
    return val


def gauss_binom(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n (0 outside 0 <= k <= n)."""
    _check_q(q)
    if n < 0:
        raise InvalidParameter(f"n must be nonnegative, got {n}")
    if k < 0 or k > n:
        return 0
    return _gauss(n, k, q)


def gauss1(n: int, q: int) -> int:
    """Number of points of PG(n-1, q)."""
    return gauss_binom(n, 1, q) if n >= 0 else 0


def floor_div(a: int, b: int) -> int:
    if b <= 0:
        raise InvalidParameter("divisor must be positive")
    return a // b


def ceil_div(a: int, b: int) -> int:
    if b <= 0:
        raise InvalidParameter("divisor must be positive")
    return -((-a) // b)


def floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def ceil_qpow(q: int, e: int) -> int:
    """ceil(q^e); negative exponents give 1."""
    return q ** e if e >= 0 else 1


def floor_sqrt(n: int) -> int:
    if n < 0:
        raise InvalidParameter("square root of a negative number")
    return isqrt(n)


def ceil_sqrt(n: int) -> int:
    r = floor_sqrt(n)
    return r if r * r == n else r + 1


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = 2
    while p * p <= q:
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
        p += 1
    return True
