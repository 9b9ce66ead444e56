import itertools

import pytest

from subspace_bounds import ef
from subspace_bounds.cdc_lower import lifted_mrd
from subspace_bounds.qcalc import gauss_binom


def profile(bits):
    return tuple(i for i, ch in enumerate(bits) if ch == "1")


def dim_oracle(n, pivots, delta):
    """Dimension bound from explicit dot coordinates."""
    free = [c for c in range(n) if c not in pivots]
    dots = {(r, c) for r, p in enumerate(sorted(pivots)) for c in free if c > p}
    cols = sorted(free)
    best = None
    for i in range(delta):
        right = set(cols[len(cols) - (delta - 1 - i):]) if delta - 1 - i else set()
        nu = sum(1 for r, c in dots if r >= i and c not in right)
        best = nu if best is None else min(best, nu)
    return best


def test_ferrers_examples():
    assert ef.ferrers_from_profile(6, profile("111000")).rows == (3, 3, 3)
    assert ef.ferrers_from_profile(6, profile("001110")).rows == (1, 1, 1)
    assert ef.ferrers_from_profile(6, profile("110100")).rows == (3, 3, 2)


def test_dim_bound_examples():
    assert ef.ef_dim_bound(ef.FerrersDiagram((3, 3, 3)), 2) == 6
    assert ef.ef_dim_bound(ef.FerrersDiagram((1, 1, 1)), 2) == 0
    F = ef.FerrersDiagram((4, 2, 1))
    assert ef.ef_dim_bound(F, 1) == F.dots()


def test_dim_bound_matches_oracle():
    for n in range(2, 10):
        for k in range(1, n):
            for p in itertools.combinations(range(n), k):
                for delta in range(1, k + 1):
                    assert ef.profile_dim(n, p, delta) == dim_oracle(n, p, delta)


def test_rows_non_increasing():
    for n in range(2, 11):
        for k in range(1, n):
            for p in itertools.combinations(range(n), k):
                rows = ef.ferrers_from_profile(n, p).rows
                assert list(rows) == sorted(rows, reverse=True)


def test_rectangle_gives_lmrd_exponent():
    for n in range(4, 14):
        for k in range(1, n // 2 + 1):
            for h in range(1, k + 1):
                assert ef.profile_dim(n, tuple(range(k)), h) == (n - k) * (k - h + 1)


def brute_skeleton(q, n, d, k):
    verts = list(itertools.combinations(range(n), k))
    w = [q ** ef.profile_dim(n, p, d // 2) for p in verts]
    masks = [sum(1 << c for c in p) for p in verts]
    best = 0

    def rec(i, chosen, val):
        nonlocal best
        if i == len(verts):
            best = max(best, val)
            return
        if val + sum(w[i:]) <= best:
            return
        if all(bin(masks[i] ^ masks[j]).count("1") >= d for j in chosen):
            rec(i + 1, chosen + [i], val + w[i])
        rec(i + 1, chosen, val)

    rec(0, [], 0)
    return best


@pytest.mark.parametrize("q,n,d,k", [(2, 6, 4, 3), (2, 7, 4, 3), (3, 6, 4, 3), (2, 8, 6, 4), (2, 7, 4, 2)])
def test_exact_matches_brute_force(q, n, d, k):
    assert ef.skeleton_optimize_cdc(q, n, d, k).value == brute_skeleton(q, n, d, k)


def test_exact_2643():
    res = ef.skeleton_optimize_cdc(2, 6, 4, 3)
    assert res.mode == "exact" and res.value == 71 and len(res.profiles) == 4
    assert res.parameter() == "[(0, 1, 2), (0, 3, 4), (1, 3, 5), (2, 4, 5)]"


def test_shifted_blocks_value():
    assert ef.skeleton_optimize_cdc(2, 6, 4, 3, shifted=True).value == 65


def test_spread_case():
    for q in (2, 3):
        for k in (2, 3):
            assert ef.skeleton_optimize_cdc(q, 2 * k, 2 * k, k).value == q ** k + 1


def test_reversal_invariance():
    for n, d, k in [(6, 4, 3), (7, 4, 3), (8, 6, 4)]:
        verts = [tuple(sorted(n - 1 - c for c in p)) for p in itertools.combinations(range(n), k)]
        # reversed profiles give the same vertex set, so the optimum is unchanged
        assert sorted(verts) == sorted(itertools.combinations(range(n), k))
        assert brute_skeleton(2, n, d, k) == ef.skeleton_optimize_cdc(2, n, d, k).value


def test_ordering_exact_vs_components():
    from subspace_bounds.cdc_lower import multicomponent
    for n in range(4, 10):
        for k in range(2, n // 2 + 1):
            for d in range(4, 2 * k + 1, 2):
                ex = ef.skeleton_optimize_cdc(2, n, d, k)
                if ex is None or ex.mode != "exact":
                    continue
                assert ex.value >= multicomponent(2, n, d, k) >= lifted_mrd(2, n, d, k)


def test_greedy_over_cap():
    res = ef.skeleton_optimize_cdc(2, 8, 4, 4, cap=10)
    assert res.mode == "greedy"
    assert res.value <= ef.skeleton_optimize_cdc(2, 8, 4, 4).value
    masks = [sum(1 << c for c in p) for p in res.profiles]
    assert all(bin(a ^ b).count("1") >= 4 for a, b in itertools.combinations(masks, 2))


def test_lp_relaxation_dominates():
    assert ef.lp_relaxation_cdc(2, 6, 4, 3) >= 71


def test_mdc_skeleton():
    res = ef.skeleton_optimize_mdc(2, 4, 1)
    assert res.value == sum(gauss_binom(4, k, 2) for k in range(5))
    g = ef.skeleton_optimize_mdc(2, 4, 3, mode="greedy")
    assert 1 <= g.value <= 6
    for k in range(1, 4):
        p = tuple(range(k))
        assert 2 ** ef.profile_dim(6, p, 2) == lifted_mrd(2, 6, 4, k)
