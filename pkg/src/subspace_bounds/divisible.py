"""Lengths of q^r-divisible multisets of points.

A length m is realizable iff it is a nonnegative integer combination of
s_{i,r} = q^(r-i) * [i+1]_q for i = 0..r.  ``feasible`` reads this off the
unique expansion m = sum a_i s_{i,r} with a_1..a_r in [0, q-1]: m is
realizable iff a_0 >= 0.  ``feasible_dp`` is a plain change-making table,
grown on demand and kept per (q, r), used as a cross-check.
"""
from __future__ import annotations

import threading

from .qcalc import gauss1

_tables: dict = {}
_lock = threading.Lock()


def denoms(q: int, r: int) -> list:
    return [q ** (r - i) * gauss1(i + 1, q) for i in range(r + 1)]


def _table(q: int, r: int, upto: int) -> bytearray:
    key = (q, r)
    with _lock:
        tab = _tables.get(key)
        if tab is not None and len(tab) > upto:
            return tab
        size = max(upto + 1, 2 * len(tab) if tab else 64)
        coins = denoms(q, r)
        new = bytearray(size)
        new[0] = 1
        for c in coins:
            for m in range(c, size):
                if new[m - c]:
                    new[m] = 1
        _tables[key] = new
        return new


def feasible(q: int, r: int, m: int) -> bool:
    if m < 0:
        return False
    # s_{r,r} = 1 mod q and s_{i,r} = q * s_{i,r-1} for i < r, so the top digit is m mod q
    for t in range(r, 0, -1):
        a = m % q
        m = (m - a * gauss1(t + 1, q)) // q
    return m >= 0


def feasible_dp(q: int, r: int, m: int) -> bool:
    if m < 0:
        return False
    return bool(_table(q, r, m)[m])


_frob_cache: dict = {}


def frobenius(q: int, r: int) -> int:
    """Largest non-representable length (-1 if every length works)."""
    key = (q, r)
    if key in _frob_cache:
        return _frob_cache[key]
    coins = denoms(q, r)
    smallest = coins[0]
    size = 256
    while True:
        tab = _table(q, r, size)
        run = 0
        last_bad = -1
        for m in range(len(tab)):
            if tab[m]:
                run += 1
                if run >= smallest:
                    break
            else:
                run = 0
                last_bad = m
        else:
            size *= 2
            continue
        _frob_cache[key] = last_bad
        return last_bad


def frac_round(a: int, q: int, k: int) -> tuple:
    """The {a / [k]_q}_k operator.

    Returns (b, ok): the largest b with a - b*[k]_q a realizable length for
    q^(k-1)-divisible multisets, and ok=False when no b >= 0 works.
    """
    g = gauss1(k, q)
    b = a // g
    while b >= 0:
        if feasible(q, k - 1, a - b * g):
            return b, True
        b -= 1
    return 0, False


def _h_g2(q: int, delta: int, n: int, t: int) -> tuple:
    D = delta
    h = (D * D * q * q * t * t + D * D * q * q * t - 2 * D * n * q * q * t
         - D * n * q * q + 2 * D * n * q * t + n * n * q * q + D * n * q
         - 2 * n * n * q + n * n + n * q - n)
    g2 = h - (2 * D * q * t + D * q - 2 * n * q + 2 * n + q - 2)
    return h, g2


def fourth_identity_excludes(q: int, r: int, m: int) -> bool:
    """Test the fourth MacWilliams identity criterion with Delta = q^r.

    True means no Delta-divisible set of cardinality m exists.  Diagnostic
    only, it is not consumed by any bound.
    """
    if m <= 0:
        return False
    delta = q ** r
    hi = m // delta + 2
    for t in range(-2, hi + 1):
        # n / Delta in [t, t+1]  <=>  t*Delta <= n <= (t+1)*Delta
        if t * delta <= m <= (t + 1) * delta:
            continue
        h, g2 = _h_g2(q, delta, m, t)
        if h >= 0 and g2 < 0:
            return True
    return False
