"""Echelon-Ferrers skeletons.

Pivot profiles are stored as sorted tuples of 0-based column indices, the
same form the query API prints.  A profile is priced with the Ferrers
diagram dimension bound, which is assumed to be attained.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .ratlp import OPTIMAL, RationalLP, simplex_max

EXACT_CAP = 400
GREEDY_CAP = 20000


@dataclass(frozen=True)
class FerrersDiagram:
    rows: tuple

    def dots(self) -> int:
        return sum(self.rows)


def ferrers_from_profile(n: int, pivots) -> FerrersDiagram:
    piv = set(pivots)
    free = [c for c in range(n) if c not in piv]
    rows = tuple(sum(1 for c in free if c > p) for p in sorted(piv))
    return FerrersDiagram(rows)


def ef_dim_bound(F: FerrersDiagram, delta: int) -> int:
    rows = F.rows
    best = None
    for i in range(delta):
        cut = delta - 1 - i
        nu = sum(max(0, r - cut) for r in rows[i:])
        if best is None or nu < best:
            best = nu
    return best if best is not None else F.dots()


@lru_cache(maxsize=None)
def profile_dim(n: int, pivots: tuple, delta: int) -> int:
    return ef_dim_bound(ferrers_from_profile(n, pivots), delta)


def _mask(p) -> int:
    m = 0
    for c in p:
        m |= 1 << c
    return m


@dataclass
class SkeletonResult:
    value: int
    profiles: list
    mode: str  # "exact", "bb-incumbent", "greedy"

    def parameter(self) -> str:
        return str([tuple(p) for p in self.profiles])


def shifted_blocks(n: int, d: int, k: int) -> list:
    step = d // 2
    out = []
    start = 0
    while start + k <= n:
        out.append(tuple(range(start, start + k)))
        start += step
    return out


def _vertices_cdc(n, d, k):
    delta = d // 2
    verts = []
    for p in combinations(range(n), k):
        verts.append((profile_dim(n, p, delta), p))
    verts.sort(key=lambda v: (-v[0], v[1]))
    return verts


def _vertices_mdc(n, d):
    delta = (d + 1) // 2
    verts = []
    for k in range(n + 1):
        for p in combinations(range(n), k):
            verts.append((profile_dim(n, p, delta), p))
    verts.sort(key=lambda v: (-v[0], len(v[1]), v[1]))
    return verts


@lru_cache(maxsize=None)
def _greedy(kind: str, n: int, d: int, k: int) -> tuple:
    verts = _vertices_cdc(n, d, k) if kind == "cdc" else _vertices_mdc(n, d)
    chosen = []
    masks = []
    for dim, p in verts:
        m = _mask(p)
        if all((m ^ o).bit_count() >= d for o in masks):
            masks.append(m)
            chosen.append((dim, p))
    return tuple(chosen)


class _Budget(Exception):
    pass


def _mwis(weights: list, adj: list, node_budget: int, deadline: float):
    """Maximum weight independent set by branch and bound.

    Vertices are indexed in order of non-increasing weight.  The bound is a
    greedy clique cover of the candidate set.
    """
    nv = len(weights)
    best = [0, 0]  # value, mask
    nodes = [0]

    def cover_bound(cand: int) -> int:
        total = 0
        while cand:
            v = (cand & -cand).bit_length() - 1
            clique = adj[v] & cand
            members = 1 << v
            while clique:
                u = (clique & -clique).bit_length() - 1
                members |= 1 << u
                clique &= adj[u]
            total += weights[v]
            cand &= ~members
        return total

    def rec(cand: int, cur: int, chosen: int):
        nodes[0] += 1
        if nodes[0] > node_budget or (nodes[0] & 1023 == 0 and time.monotonic() > deadline):
            raise _Budget
        if cur > best[0]:
            best[0] = cur
            best[1] = chosen
        if not cand:
            return
        if cur + cover_bound(cand) <= best[0]:
            return
        v = (cand & -cand).bit_length() - 1
        rec(cand & ~adj[v] & ~(1 << v), cur + weights[v], chosen | (1 << v))
        rec(cand & ~(1 << v), cur, chosen)

    try:
        rec((1 << nv) - 1, 0, 0)
        done = True
    except _Budget:
        done = False
    return best[0], best[1], done


def _optimize(verts, q, d, node_budget, time_budget):
    weights = [q ** dim for dim, _ in verts]
    masks = [_mask(p) for _, p in verts]
    nv = len(verts)
    adj = [0] * nv
    for i in range(nv):
        for j in range(i + 1, nv):
            if (masks[i] ^ masks[j]).bit_count() < d:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    val, chosen, done = _mwis(weights, adj, node_budget, time.monotonic() + time_budget)
    profiles = sorted(verts[i][1] for i in range(nv) if chosen >> i & 1)
    return val, profiles, done


def _priced(chosen, q):
    return sum(q ** dim for dim, _ in chosen), sorted(p for _, p in chosen)


def skeleton_optimize_cdc(q: int, n: int, d: int, k: int, mode: str = "exact",
                          node_budget: int = 200000, time_budget: float = 60.0,
                          cap: int = EXACT_CAP, shifted: bool = False):
    """Best skeleton code value for A_q(n,d;k); None when nothing is searched."""
    if d % 2 or d < 2 or k < 1 or k > n:
        return None
    if shifted:
        blocks = shifted_blocks(n, d, k)
        val = sum(q ** profile_dim(n, p, d // 2) for p in blocks)
        return SkeletonResult(val, blocks, "shifted")
    nverts = _binom(n, k)
    if mode == "exact" and nverts <= cap:
        verts = _vertices_cdc(n, d, k)
        val, profiles, done = _optimize(verts, q, d, node_budget, time_budget)
        g_val, g_prof = _priced(_greedy("cdc", n, d, k), q)
        if done:
            return SkeletonResult(val, profiles, "exact")
        if g_val > val:
            return SkeletonResult(g_val, g_prof, "greedy")
        return SkeletonResult(val, profiles, "bb-incumbent")
    if nverts > GREEDY_CAP:
        return None
    val, prof = _priced(_greedy("cdc", n, d, k), q)
    return SkeletonResult(val, prof, "greedy")


def skeleton_optimize_mdc(q: int, n: int, d: int, mode: str = "exact",
                          node_budget: int = 200000, time_budget: float = 60.0,
                          cap: int = EXACT_CAP):
    if d < 1:
        return None
    nverts = 2 ** n
    if mode == "exact" and nverts <= cap:
        verts = _vertices_mdc(n, d)
        val, profiles, done = _optimize(verts, q, d, node_budget, time_budget)
        if done:
            return SkeletonResult(val, profiles, "exact")
        g_val, g_prof = _priced(_greedy("mdc", n, d, 0), q)
        if g_val > val:
            return SkeletonResult(g_val, g_prof, "greedy")
        return SkeletonResult(val, profiles, "bb-incumbent")
    if nverts > GREEDY_CAP:
        return None
    val, prof = _priced(_greedy("mdc", n, d, 0), q)
    return SkeletonResult(val, prof, "greedy")


def lp_relaxation_cdc(q: int, n: int, d: int, k: int):
    """Edge-constraint LP relaxation of the skeleton program (exact)."""
    verts = _vertices_cdc(n, d, k)
    masks = [_mask(p) for _, p in verts]
    c = [q ** dim for dim, _ in verts]
    rows = []
    nv = len(verts)
    for i in range(nv):
        for j in range(i + 1, nv):
            if (masks[i] ^ masks[j]).bit_count() < d:
                row = [0] * nv
                row[i] = row[j] = 1
                rows.append(row)
    res = simplex_max(RationalLP(c, rows, [1] * len(rows), [1] * nv))
    return res.value if res.status == OPTIMAL else None


def _binom(n, k):
    from math import comb
    return comb(n, k)
