"""Bounds for mixed dimension codes A_q(n,d).

CDC sub-bounds are read through ``tab.cdc_lower`` / ``tab.cdc_upper``, which
already map an odd distance to the next even one.  ``tab.mdc_upper`` gives
the current best MDC upper bound (used by relax_d).
"""
from __future__ import annotations

from fractions import Fraction

from . import ef
from .model import EXACT, LOWER, UPPER, BoundRecord
from .qcalc import ceil_frac, floor_frac, gauss_binom as gb
from .ratlp import BUDGET, OPTIMAL, RationalLP, branch_and_bound_max, simplex_max

LP, BB = "lp", "bb"

SDP_TABLE = {
    (4, 3): 6, (5, 3): 20, (6, 3): 124, (7, 3): 776, (7, 5): 35, (8, 3): 9268,
    (8, 5): 360, (9, 3): 107419, (9, 5): 2485, (10, 3): 2532929, (10, 5): 49394,
    (10, 7): 1223, (11, 5): 660285, (11, 7): 8990, (12, 7): 323374, (12, 9): 4487,
    (13, 7): 4691980, (13, 9): 34306, (14, 9): 2334086, (14, 11): 17159,
    (15, 11): 134095, (16, 13): 67079,
}

# only the (6,3) value is used; see the notes on the (7,4) entry
NOTDERIVED = {(6, 3): 118}


def total_subspaces(q, n):
    return sum(gb(n, k, q) for k in range(n + 1))


def gilbert_varshamov(q, n, d):
    tot = total_subspaces(q, n)
    num = tot * tot
    den = 0
    for k in range(n + 1):
        ball = sum(gb(k, i, q) * gb(n - k, j - i, q) * q ** (i * (j - i))
                   for j in range(d) for i in range(j + 1))
        den += gb(n, k, q) * ball
    return -(-num // den)


def layer_construction(q, n, d, tab):
    dd = d + (d % 2)
    L = [0] * (n + 1)
    for N in range(n + 1):
        take = tab.cdc_lower(q, n, dd, N) + (L[N - d] if N - d >= 0 else 0)
        L[N] = max(L[N - 1] if N else 0, take)
    return L[n]


def improved_cdc_lower(q, n, d, tab):
    dd = d + (d % 2)
    r = (n // 2) % d
    return sum(tab.cdc_lower(q, n, dd, k) for k in range(n + 1) if k % d == r)


def improved_cdc_upper(q, n, d, tab):
    h = -(-d // 2)
    return 2 + sum(tab.cdc_upper(q, n, 2 * h, k) for k in range(h, n - h + 1))


def cdc_average_argument(q, n, d, tab, nmax):
    if n + 1 > nmax:
        return None
    best = Fraction(0)
    for k in range(n + 1):
        coef = Fraction(q ** (n + 1 - k) + q ** k - 2, q ** (n + 1) - 1)
        best = max(best, coef * tab.cdc_lower(q, n + 1, d + 1, k))
    return ceil_frac(best)


def cdc_projection_bounds(q, n, d, tab):
    lo = max(tab.cdc_lower(q, n, d, k) for k in range(n + 1))
    up = sum(tab.cdc_upper(q, n, d, k) for k in range(n + 1))
    return lo, up


def ev_ball_count(q, n, i, k, e):
    """c(i,k,e): k-subspaces within distance e of a fixed i-subspace."""
    lo = -(-(i + k - e) // 2)
    return sum(gb(i, j, q) * gb(n - i, k - j, q) * q ** ((i - j) * (k - j))
               for j in range(max(lo, 0), min(k, i) + 1))


def ev_program(q, n, d, tab):
    e = (d - 1) // 2
    ub = [tab.cdc_upper(q, n, 2 * e + 2, i) for i in range(n + 1)]
    A = [[ev_ball_count(q, n, i, k, e) for i in range(n + 1)] for k in range(n + 1)]
    b = [gb(n, k, q) for k in range(n + 1)]
    return RationalLP([1] * (n + 1), A, b, ub)


def etzion_vardy(q, n, d, tab, mode=LP, budget=20000):
    if d % 2 == 0:
        return None
    lp = ev_program(q, n, d, tab)
    if mode == BB:
        res = branch_and_bound_max(lp, budget)
        return res.value if res.status == OPTIMAL else res.bound
    res = simplex_max(lp)
    return floor_frac(res.value) if res.status == OPTIMAL else None


def etzion_vardy_enumerate(q, n, d, tab):
    """Brute force over all a vectors; only for tiny programs."""
    lp = ev_program(q, n, d, tab)
    best = 0

    def rec(i, a, load):
        nonlocal best
        if i == len(lp.c):
            best = max(best, sum(a))
            return
        for v in range(lp.ub[i] + 1):
            new = [load[k] + lp.A[k][i] * v for k in range(len(load))]
            if any(new[k] > lp.b[k] for k in range(len(new))):
                break
            rec(i + 1, a + [v], new)

    rec(0, [], [0] * len(lp.b))
    return best


# closed forms; q may be any integer for the polynomial ids

def mdc_closed_form(cid, q, n, d):
    """(value, direction) or None."""
    if cid == "trivial_2":
        return 0, LOWER
    if cid == "trivial_4":
        return (2, LOWER) if n >= 1 and d <= 2 * n else None
    if cid == "trivial_3":
        return total_subspaces(q, n), UPPER
    if cid == "trivial_dle1":
        return (total_subspaces(q, n), EXACT) if d <= 1 else None
    if cid == "d2":
        if d != 2:
            return None
        return max(sum(gb(n, i, q) for i in range(p, n + 1, 2)) for p in (0, 1)), EXACT
    if cid == "neqdeven":
        return (q ** (n // 2) + 1, EXACT) if d == n and n % 2 == 0 else None
    if cid == "nodd_deqn":
        return (2, UPPER) if d == n and n % 2 else None
    if cid == "neven_deqnm1":
        return (q ** (n // 2) + 1, EXACT) if n % 2 == 0 and n >= 4 and d == n - 1 else None
    if cid == "nodd_deqnm1":
        return (q ** (n // 2 + 1) + 1, EXACT) if n % 2 and n >= 5 and d == n - 1 else None
    if cid in ("nodd_deqnm2_l", "nodd_deqnm2_u"):
        if not (n % 2 and n >= 5 and d == n - 2):
            return None
        v = 2 * q ** (n // 2 + 1)
        return (v + 1, LOWER) if cid.endswith("_l") else (v + 2, UPPER)
    if cid in ("n5_d3_CPS", "nodd_deqnm2_e"):
        if (n, d) == (5, 3):
            return 2 * q ** 3 + 2, EXACT
        if cid == "nodd_deqnm2_e" and (q, n, d) == (2, 7, 5):
            return 34, EXACT
        return None
    if cid == "semidefinite_programming":
        v = SDP_TABLE.get((n, d)) if q == 2 else None
        return (v, UPPER) if v is not None else None
    if cid == "special_cases_upper_notderived":
        v = NOTDERIVED.get((n, d)) if q == 2 else None
        return (v, UPPER) if v is not None else None
    raise KeyError(cid)


CLOSED_IDS = (
    "trivial_2", "trivial_4", "nodd_deqnm2_l", "trivial_3", "nodd_deqn", "nodd_deqnm2_u",
    "semidefinite_programming", "special_cases_upper_notderived", "d2", "neqdeven",
    "neven_deqnm1", "nodd_deqnm1", "n5_d3_CPS", "nodd_deqnm2_e", "trivial_dle1",
)

_EF_IDS = {"exact": "ef_computation", "bb-incumbent": "echelon_ferrers", "greedy": "greedy_multicomponent"}


def ef_record(q, n, d, **kw):
    if d <= 2:
        return None
    res = ef.skeleton_optimize_mdc(q, n, d, **kw)
    if res is None:
        return None
    return BoundRecord(_EF_IDS[res.mode], res.parameter(), res.value, LOWER)


def mdc_records(q, n, d, tab, nmax, ev_mode=LP, ef_rec=None, ev_budget=20000):
    out = []
    for cid in CLOSED_IDS:
        r = mdc_closed_form(cid, q, n, d)
        if r is not None:
            out.append(BoundRecord(cid, "", r[0], r[1]))
    if d >= 2:
        out.append(BoundRecord("gilbert_varshamov", "", gilbert_varshamov(q, n, d), LOWER))
    if ef_rec is not None:
        out.append(ef_rec)
    v = cdc_average_argument(q, n, d, tab, nmax)
    if v is not None:
        out.append(BoundRecord("cdc_average_argument", "", v, LOWER))
    lo, up = cdc_projection_bounds(q, n, d, tab)
    out.append(BoundRecord("cdc_lower_bound", "", lo, LOWER))
    out.append(BoundRecord("improved_cdc_lower_bound", "", improved_cdc_lower(q, n, d, tab), LOWER))
    out.append(BoundRecord("layer_construction", "", layer_construction(q, n, d, tab), LOWER))
    out.append(BoundRecord("cdc_upper_bound", "", up, UPPER))
    if d % 2:
        ev = etzion_vardy(q, n, d, tab, ev_mode, ev_budget)
        if ev is not None:
            out.append(BoundRecord("Etzion_Vardy_ilp", ev_mode, ev, UPPER))
        if d >= 3:
            out.append(BoundRecord("relax_d", "", tab.mdc_upper(q, n, d - 1), UPPER))
    out.append(BoundRecord("improved_cdc_upper_bound", "", improved_cdc_upper(q, n, d, tab), UPPER))
    return out
