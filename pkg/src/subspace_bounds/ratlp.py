"""Exact rational simplex (Bland's rule) and a small branch-and-bound.

Programs are  max c.x  s.t.  A x <= b,  0 <= x <= ub  with entries
converted to Fraction.  Upper bounds are turned into ordinary rows.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"
BUDGET = "budget_exceeded"


@dataclass
class RationalLP:
    c: list
    A: list
    b: list
    ub: Optional[list] = None

    def rows(self):
        A = [[Fraction(v) for v in row] for row in self.A]
        b = [Fraction(v) for v in self.b]
        n = len(self.c)
        if self.ub is not None:
            for j, u in enumerate(self.ub):
                if u is None:
                    continue
                row = [Fraction(0)] * n
                row[j] = Fraction(1)
                A.append(row)
                b.append(Fraction(u))
        return A, b


@dataclass
class LPResult:
    status: str
    value: Optional[Fraction] = None
    x: list = field(default_factory=list)


def _pivot(T, basis, r, col):
    piv = T[r][col]
    rowr = T[r]
    if piv != 1:
        rowr = [v / piv for v in rowr]
        T[r] = rowr
    nz = [j for j, v in enumerate(rowr) if v]
    for i in range(len(T)):
        if i == r:
            continue
        f = T[i][col]
        if f:
            Ti = T[i]
            for j in nz:
                Ti[j] -= f * rowr[j]
    basis[r] = col


def _run(T, basis, ncols, allowed):
    """Maximize the objective stored in the last row (as reduced costs)."""
    obj = T[-1]
    m = len(T) - 1
    while True:
        col = -1
        for j in range(ncols):
            if allowed[j] and obj[j] < 0:
                col = j
                break
        if col < 0:
            return OPTIMAL
        r = -1
        best = None
        for i in range(m):
            a = T[i][col]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[r]):
                    best = ratio
                    r = i
        if r < 0:
            return UNBOUNDED
        _pivot(T, basis, r, col)
        obj = T[-1]


def simplex_max(lp: RationalLP) -> LPResult:
    A, b = lp.rows()
    n = len(lp.c)
    m = len(A)
    # columns: x (n), slack (m), artificial (m); last entry is rhs
    ncols = n + 2 * m
    T = []
    basis = []
    arts = []
    for i in range(m):
        row = [Fraction(0)] * (ncols + 1)
        sign = 1 if b[i] >= 0 else -1
        for j in range(n):
            row[j] = sign * A[i][j]
        row[n + i] = Fraction(sign)
        row[-1] = sign * b[i]
        if sign > 0:
            basis.append(n + i)
        else:
            row[n + m + i] = Fraction(1)
            basis.append(n + m + i)
            arts.append(i)
        T.append(row)
    allowed = [True] * (n + m) + [False] * m
    if arts:
        # phase one: maximize minus the sum of artificials
        obj = [Fraction(0)] * (ncols + 1)
        for i in arts:
            obj[n + m + i] = Fraction(1)
        for i in arts:
            obj = [o - t for o, t in zip(obj, T[i])]
        T.append(obj)
        allowed1 = allowed[:]
        for i in arts:
            allowed1[n + m + i] = True
        _run(T, basis, ncols, allowed1)
        if T[-1][-1] != 0:
            return LPResult(INFEASIBLE)
        T.pop()
        # drive remaining artificials out of the basis
        for i in range(m):
            if basis[i] >= n + m:
                for j in range(n + m):
                    if T[i][j] != 0:
                        _pivot(T, basis, i, j)
                        break
    obj = [Fraction(0)] * (ncols + 1)
    for j in range(n):
        obj[j] = -Fraction(lp.c[j])
    for i in range(m):
        cb = obj[basis[i]]
        if cb:
            obj = [o - cb * t for o, t in zip(obj, T[i])]
    T.append(obj)
    status = _run(T, basis, ncols, allowed)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i][-1]
    return LPResult(OPTIMAL, T[-1][-1], x)


@dataclass
class BBResult:
    status: str
    value: Optional[int] = None
    x: list = field(default_factory=list)
    bound: Optional[int] = None
    nodes: int = 0


def branch_and_bound_max(lp: RationalLP, budget: int = 10000) -> BBResult:
    """Integer optimum of an all-integer program, depth first.

    On budget exhaustion the incumbent and a valid upper bound (the best
    open LP bound, floored) are returned.
    """
    n = len(lp.c)
    base_ub = list(lp.ub) if lp.ub is not None else [None] * n
    best_val = None
    best_x: list = []
    stack = [([0] * n, base_ub)]
    nodes = 0
    open_bounds = []
    while stack:
        lo, hi = stack.pop()
        if nodes >= budget:
            open_bounds.append(_node_bound(lp, lo, hi))
            continue
        nodes += 1
        res = _solve_node(lp, lo, hi)
        if res.status == INFEASIBLE:
            continue
        if res.status == UNBOUNDED:
            raise ValueError("unbounded integer program")
        ub_val = res.value.numerator // res.value.denominator
        if best_val is not None and ub_val <= best_val:
            continue
        frac = [j for j, v in enumerate(res.x) if v.denominator != 1]
        if not frac:
            best_val = int(sum(Fraction(c) * v for c, v in zip(lp.c, res.x)))
            best_x = [int(v) for v in res.x]
            continue
        j = frac[0]
        v = res.x[j]
        fl = v.numerator // v.denominator
        hi_left = list(hi)
        hi_left[j] = fl
        lo_right = list(lo)
        lo_right[j] = fl + 1
        stack.append((lo_right, hi))
        stack.append((lo, hi_left))
    if open_bounds:
        live = [b for b in open_bounds if b is not None]
        bound = max([best_val or 0] + live)
        return BBResult(BUDGET, best_val, best_x, bound, nodes)
    return BBResult(OPTIMAL, best_val, best_x, best_val, nodes)


def _solve_node(lp, lo, hi):
    n = len(lp.c)
    A = [list(r) for r in lp.A]
    b = list(lp.b)
    for j in range(n):
        if lo[j] > 0:
            row = [0] * n
            row[j] = -1
            A.append(row)
            b.append(-lo[j])
    return simplex_max(RationalLP(lp.c, A, b, hi))


def _node_bound(lp, lo, hi):
    res = _solve_node(lp, lo, hi)
    if res.status != OPTIMAL:
        return None
    return res.value.numerator // res.value.denominator
