"""Partial spreads: exact values and the upper bound battery for d = 2k.

Throughout n = t*k + r with 0 <= r < k.
"""
from __future__ import annotations

from .model import EXACT, UPPER, BoundRecord
from .qcalc import floor_sqrt, gauss1

# (q, k, r, additive constant); l = (q^(n-k) - q^r) / (q^k - 1), blocks >= 2
KURZ16_ADDITIONAL = [
    (2, 4, 3, 4),
    (2, 6, 4, 8),
    (2, 6, 5, 18),
    (3, 4, 3, 14),
    (3, 5, 3, 13),
    (3, 5, 4, 44),
    (3, 6, 4, 41),
    (3, 6, 5, 133),
    (3, 7, 4, 40),
    (4, 5, 3, 32),
    (4, 6, 3, 30),
    (4, 6, 5, 548),
    (4, 7, 4, 128),
    (5, 5, 2, 7),
    (5, 5, 4, 329),
    (7, 5, 4, 1246),
    (8, 4, 3, 264),
    (8, 5, 2, 25),
    (8, 6, 2, 21),
    (9, 3, 2, 41),
    (9, 5, 3, 365),
]


def trivial_bound(q: int, n: int, k: int) -> int:
    return (q ** n - 1) // (q ** k - 1)


def _rec(name, value, direction=UPPER, parameter=""):
    return BoundRecord(name, parameter, value, direction)


def spread_exact(q: int, n: int, k: int) -> list:
    """Records of every exactness theorem that applies (possibly empty)."""
    if k < 2 or n < 2 * k:
        return []
    t, r = divmod(n, k)
    out = []
    if r == 0:
        out.append(_rec("spread", (q ** n - 1) // (q ** k - 1), EXACT))
    if r == 1:
        out.append(_rec("partial_spread_2", (q ** n - q ** (k + 1) + q ** k - 1) // (q ** k - 1), EXACT))
    if q == 2 and k == 3:
        m, rr = divmod(n, 3)
        if m >= 2:
            val = [(2 ** n - 1) // 7, (2 ** n - 9) // 7, (2 ** n - 18) // 7][rr]
            out.append(_rec("partial_spread_1", val, EXACT))
    if q == 2 and k >= 4 and r == 2 and t >= 2:
        out.append(_rec("partial_spread_kurz_q2", (2 ** n - 3 * 2 ** k - 1) // (2 ** k - 1), EXACT))
    if k > gauss1(r, q):
        out.append(_rec("partial_spread_NS", (q ** n - q ** (k + r)) // (q ** k - 1) + 1, EXACT))
    return out


def spread_exact_value(q: int, n: int, k: int):
    recs = spread_exact(q, n, k)
    return recs[0].value if recs else None


def spread_upper_battery(q: int, n: int, k: int) -> list:
    if k < 2 or n < 2 * k:
        return []
    t, r = divmod(n, k)
    qk = q ** k
    out = [_rec("spread_bound", trivial_bound(q, n, k))]
    if r:
        out.append(_rec("partial_spread_5", trivial_bound(q, n, k) - 1))
    if q == 3 and k >= 4 and r == 2:
        out.append(_rec("partial_spread_kurz_q3", (3 ** n - 9) // (3 ** k - 1) - 5))
    if 0 < r:
        qr = q ** r
        base = qr * (q ** (k * t) - 1) // (qk - 1)
        disc = 1 + 4 * qk * (qk - qr)
        b = 2 * qk - 2 * qr + 1
        theta = (floor_sqrt(disc) - b) // 2
        out.append(_rec("DrakeFreeman", base - theta - 1))
    if r >= 2 and k == gauss1(r, q) < n:
        l = (q ** (n - k) - q ** r) // (qk - 1)
        out.append(_rec("partial_spread_NS_upper_bound", l * qk + min(q, -(-q ** r // 2))))
    if 2 <= r < k <= gauss1(r, q):
        c1 = (2 - k) % q
        c2 = q if ((q - 1) * (k - 2) + c1) % (q * q) == 0 else 0
        val = (q ** n - q ** (k + r)) // (qk - 1) + q ** r - (q - 1) * (k - 2) - c1 + c2
        out.append(_rec("partial_spread_NS_2_Theorem6", val))
    if q == 2 and 2 <= r < k <= 2 ** r - 1:
        c = 1 if (k - 1) % 4 == 0 else 0
        val = (2 ** n - 2 ** (k + r)) // (2 ** k - 1) + 2 ** r - k + 1 + c
        out.append(_rec("partial_spread_NS_2_Theorem7", val))
    if r >= 1 and t >= 2 and k > r:
        z = max(0, gauss1(r, q) + 1 - k)
        l = (q ** (n - k) - q ** r) // (qk - 1)
        out.append(_rec("partial_spread_kurz16_28", l * qk + 1 + z * (q - 1), parameter=f"z={z}"))
    hkk = hkk16_t10(q, n, k)
    if hkk is not None:
        out.append(hkk)
    for qq, kk, rr, add in KURZ16_ADDITIONAL:
        if qq == q and kk == k and rr == r and t >= 2:
            l = (q ** (n - k) - q ** r) // (qk - 1)
            out.append(_rec("partial_spread_kurz16_additional", qk * l + add))
    return out


def hkk16_t10(q: int, n: int, k: int):
    t, r = divmod(n, k)
    if r < 1 or t < 2 or k <= r:
        return None
    z = gauss1(r, q) + 1 - k
    if z < 0:
        return None
    l = (q ** (n - k) - q ** r) // (q ** k - 1)
    best = None
    for y in range(max(r, 2), k + 1):
        u = q ** y
        disc = 1 + 4 * u * (u - (z + y - 1) * (q - 1) - 1)
        if disc < 0:
            continue
        # ceil(u - 1/2 - sqrt(disc)/2) computed with an integer square root
        term = -((floor_sqrt(disc) - (2 * u - 1)) // 2)
        val = l * q ** k + term
        if best is None or val < best[0]:
            best = (val, y)
    if best is None:
        return None
    return _rec("partial_spread_HKK16_T10", best[0], parameter=f"y={best[1]}")


def deficiency(q: int, n: int, k: int, upper: int) -> int:
    return trivial_bound(q, n, k) - upper
