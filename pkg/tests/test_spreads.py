from subspace_bounds import spreads
from subspace_bounds.qcalc import floor_sqrt


def by_name(recs):
    return {r.constraint: r.value for r in recs}


def test_exact_examples():
    assert spreads.spread_exact_value(2, 8, 4) == 17
    assert spreads.spread_exact_value(2, 8, 3) == 34
    assert spreads.spread_exact_value(2, 9, 4) == 33
    assert spreads.spread_exact_value(2, 7, 4) is None


def test_all_exact_theorems_agree():
    for q in (2, 3, 4, 5, 7, 8, 9):
        for k in range(2, 8):
            for n in range(2 * k, 20):
                vals = {r.value for r in spreads.spread_exact(q, n, k)}
                assert len(vals) <= 1, (q, n, k, vals)


def test_battery_examples():
    assert by_name(spreads.spread_upper_battery(2, 7, 3))["DrakeFreeman"] == 17
    rec = [r for r in spreads.spread_upper_battery(2, 8, 3) if r.constraint == "partial_spread_kurz16_28"][0]
    assert rec.value == 34 and rec.parameter == "z=1"
    hkk = spreads.hkk16_t10(2, 5, 2)
    assert hkk.value == 9 and hkk.parameter == "y=2"


def test_drake_freeman_oracle():
    # theta from its defining quadratic, by search
    for q in (2, 3, 4):
        for k in range(2, 6):
            for n in range(2 * k + 1, 16):
                t, r = divmod(n, k)
                if r == 0:
                    continue
                qk, qr = q ** k, q ** r
                disc = 1 + 4 * qk * (qk - qr)
                theta2 = floor_sqrt(disc) - (2 * qk - 2 * qr + 1)
                expect = qr * (q ** (k * t) - 1) // (qk - 1) - theta2 // 2 - 1
                assert by_name(spreads.spread_upper_battery(q, n, k))["DrakeFreeman"] == expect


def test_battery_properties():
    for q in (2, 3, 4, 5, 7, 8, 9):
        for k in range(2, 8):
            for n in range(2 * k, 20):
                recs = spreads.spread_upper_battery(q, n, k)
                names = by_name(recs)
                triv = spreads.trivial_bound(q, n, k)
                assert min(r.value for r in recs) <= names["spread_bound"] == triv
                assert ("partial_spread_5" in names) == (n % k != 0)
                ex = spreads.spread_exact_value(q, n, k)
                if ex is not None:
                    assert ex <= min(r.value for r in recs)


def test_mac_williams_family_at_least_as_tight():
    ns_ids = ("partial_spread_NS", "partial_spread_NS_upper_bound",
              "partial_spread_NS_2_Theorem6", "partial_spread_NS_2_Theorem7")
    for q in (2, 3, 4, 5, 7, 8, 9):
        for k in range(2, 8):
            for n in range(2 * k, 20):
                recs = spreads.spread_upper_battery(q, n, k) + spreads.spread_exact(q, n, k)
                ns = [r.value for r in recs if r.constraint in ns_ids]
                mw = [r.value for r in recs if r.constraint in ("partial_spread_kurz16_28", "partial_spread_HKK16_T10")]
                if ns and mw:
                    assert min(mw) <= min(ns), (q, n, k)


def test_battery_sound_against_tables(reference):
    for kind, key, lo, up, _ in reference:
        if kind != "cdc":
            continue
        q, n, d, k = key
        if d != 2 * k:
            continue
        recs = spreads.spread_upper_battery(q, n, k) + spreads.spread_exact(q, n, k)
        assert min(r.value for r in recs) >= lo, key
        ex = spreads.spread_exact_value(q, n, k)
        if ex is not None:
            assert ex == lo == up, key


def test_deficiency():
    assert spreads.deficiency(2, 8, 3, 34) == 2
    for q in (2, 3, 5):
        for k in (2, 3, 4):
            assert spreads.deficiency(q, 3 * k, k, spreads.spread_exact_value(q, 3 * k, k)) == 0
            assert spreads.deficiency(q, 3 * k + 1, k, spreads.spread_exact_value(q, 3 * k + 1, k)) == q - 1


def test_deficiency_non_increasing(grid):
    # along n = t*k + r for fixed residue r
    for q in (2, 3, 4):
        for k in range(2, 7):
            for r in range(k):
                ns = [n for n in range(2 * k, 14) if n % k == r and (q, n, 2 * k, k) in grid.cdc]
                sigs = [spreads.deficiency(q, n, k, grid.upper(q, n, 2 * k, k)) for n in ns]
                assert all(s >= 0 for s in sigs)
                assert sigs == sorted(sigs, reverse=True), (q, k, r, sigs)
