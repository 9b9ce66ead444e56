"""Upper bounds for A_q(n,d;k).

Functions take canonical parameters (even d, k <= n/2) and, where the
bound is recursive, an object ``tab`` exposing ``upper(q, n, d, k)`` for
the current best upper bound of any (possibly non-canonical) point.
"""
from __future__ import annotations

from fractions import Fraction

from . import divisible, spreads
from .model import EXACT, UPPER, BoundRecord
from .qcalc import floor_frac, gauss1, gauss_binom as gb


def _rec(name, value, parameter=""):
    return BoundRecord(name, parameter, value, UPPER)


def all_subs(q, n, k):
    return gb(n, k, q)


def singleton(q, n, d, k):
    return gb(n - d // 2 + 1, k - d // 2 + 1, q)


def sphere_packing(q, n, d, k):
    e = (d // 2 - 1) // 2
    ball = sum(gb(k, i, q) * gb(n - k, i, q) * q ** (i * i) for i in range(e + 1))
    return gb(n, k, q) // ball


def anticode(q, n, d, k):
    return gb(n, k, q) // gb(n - k + d // 2 - 1, d // 2 - 1, q)


def xia_fu_johnson(q, n, d, k):
    m = min(k, n - k)
    if m < 1 or d != 2 * m:
        return None
    return (q ** n - 1) // (q ** m - 1)


def johnson_1(q, n, d, k, tab):
    return (q ** n - 1) * tab.upper(q, n - 1, d, k - 1) // (q ** k - 1)


def johnson_2(q, n, d, k, tab):
    return (q ** n - 1) * tab.upper(q, n - 1, d, k) // (q ** (n - k) - 1)


def ilp_family(which, q, n, d, k, tab):
    h = d // 2
    out = []
    name = f"ilp_{which}"
    if which == 1:
        for w in range(1, k - h + 1):
            v = gb(n, w, q) * tab.upper(q, n - w, d, k - w) // gb(k, w, q)
            out.append(_rec(name, v, str(w)))
    elif which == 2:
        for w in range(k - h + 1, k):
            out.append(_rec(name, gb(n, w, q) // gb(k, w, q), str(w)))
    elif which == 3:
        for a in range(k + 1, min(k + h - 1, n - 1) + 1):
            out.append(_rec(name, gb(n, a, q) // gb(n - k, a - k, q), str(a)))
    elif which == 4:
        for a in range(k + h, n):
            v = gb(n, a, q) * tab.upper(q, a, d, k) // gb(n - k, a - k, q)
            out.append(_rec(name, v, str(a)))
    return out


def ahlswede_aydinian(q, n, d, k, t, m, orth, tab):
    if orth:
        k = n - k
    r = d // 2
    if not (0 <= t < r <= k and k - t <= m < n and t <= n - m):
        return None
    # terms with k - i > m vanish (and would have a negative q-exponent)
    den = sum(q ** (i * (m + i - k)) * gb(m, k - i, q) * gb(n - m, i, q)
              for i in range(t + 1) if k - i <= m)
    if den == 0:
        return None
    return gb(n, k, q) * tab.upper(q, m, 2 * r - 2 * t, k - t) // den


def ahlswede_aydinian_all(q, n, d, k, tab):
    out = []
    for orth in (False, True):
        kk = n - k if orth else k
        for t in range(d // 2):
            for m in range(kk - t, n):
                v = ahlswede_aydinian(q, n, d, k, t, m, orth, tab)
                if v is not None:
                    par = f"{t}, {m}, o" if orth else f"{t}, {m}"
                    out.append(_rec("Ahlswede_Aydinian", v, par))
    return out


def improved_johnson(q, n, d, k, tab):
    a = gauss1(n, q) * tab.upper(q, n - 1, d, k - 1)
    b, ok = divisible.frac_round(a, q, k)
    return b if ok else None


def mrd_containing_bound(q, n, d, k, tab):
    """Upper bound for codes containing a lifted MRD code (min over cases)."""
    vals = []
    if k >= 3 and d == 2 * (k - 1):
        vals.append(q ** (2 * (n - k)) + tab.upper(q, n - k, 2 * (k - 2), k - 1))
    if d == 2 * k and n >= 2 * k:
        x = Fraction(q ** n - q ** (n - 2 * k), q ** (2 * k) - q ** k)
        v = q ** ((n - 2 * k) * (k + 1)) + gb(n - 2 * k, k, q) * x + tab.upper(q, n - 2 * k, 2 * k, 2 * k)
        vals.append(floor_frac(Fraction(v)))
    h = d // 2
    if 2 <= h <= k <= n - k:
        lm = q ** ((n - k) * (k - h + 1))
        if k < d and 3 * d <= 2 * n:
            vals.append(lm + tab.upper(q, n - k, 2 * (d - k), h))
        if k < d and 2 * n < 3 * d:
            vals.append(lm + 1)
        if d <= k and 2 * k < 3 * d:
            extra = Fraction(gb(n - k, h, q) * gb(k, d - 1, q) * q ** ((k - d + 1) * (n - k - h)),
                             gb(k - h, h - 1, q))
            vals.append(floor_frac(lm + tab.upper(q, n - k, 3 * d - 2 * k, d) + extra))
    return min(vals) if vals else None


def special_exact_cdc(q, n, d, k):
    """Exact values from classifications, plus the stored 272 bound."""
    if (q, n, d, k) == (2, 6, 4, 3):
        return [BoundRecord("classification", "", 77, EXACT, "classification")]
    if (q, n, d, k) == (2, 8, 6, 4):
        return [BoundRecord("classification", "", 257, EXACT, "classification"),
                _rec("special_case_2_8_6_4", 272)]
    return []


def in_lp_range(q, n, d, k):
    return 2 <= q <= 9 and 4 <= n <= 19 and 2 <= k <= n // 2 and 4 <= d <= 2 * k


def upper_records(q, n, d, k, tab) -> list:
    """Every upper bound record for a short-view point, in listing order.

    Aliases are folded onto the canonical point first; the formulas assume k <= n/2 and even d.
    """
    k, d = min(k, n - k), d + d % 2
    out = [_rec("all_subs", all_subs(q, n, k)), _rec("singleton", singleton(q, n, d, k))]
    out += ilp_family(2, q, n, d, k, tab)
    out += ilp_family(3, q, n, d, k, tab)
    ac = anticode(q, n, d, k)
    out.append(_rec("anticode", ac))
    if in_lp_range(q, n, d, k):
        out.append(_rec("linear_programming_bound", ac))
    out.append(_rec("sphere_packing", sphere_packing(q, n, d, k)))
    out += ilp_family(1, q, n, d, k, tab)
    out += ilp_family(4, q, n, d, k, tab)
    out.append(_rec("johnson_1", johnson_1(q, n, d, k, tab)))
    out.append(_rec("johnson_2", johnson_2(q, n, d, k, tab)))
    out += ahlswede_aydinian_all(q, n, d, k, tab)
    ij = improved_johnson(q, n, d, k, tab)
    if ij is not None:
        out.append(_rec("improved_johnson", ij))
    xfj = xia_fu_johnson(q, n, d, k)
    if xfj is not None:
        out.append(_rec("XiaFuJohnson1", xfj))
    if d == 2 * k:
        out += spreads.spread_upper_battery(q, n, k)
        out += spreads.spread_exact(q, n, k)
    out += special_exact_cdc(q, n, d, k)
    return out
