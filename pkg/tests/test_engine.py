import pytest

from subspace_bounds import engine
from subspace_bounds.model import EXACT, LOWER, UPPER, BoundRecord


def _sweep_changes(table):
    cfg = table.config
    changed = False
    for q in cfg.qs:
        for key in engine.cdc_short_points(q, cfg.nmax):
            changed |= table.update("cdc", key)
        for key in engine.mdc_points(q, cfg.nmax):
            changed |= table.update("mdc", key)
    return changed


def test_second_sweep_changes_nothing(small):
    before = {k: (c.best_lower, c.best_upper) for k, c in small.cdc.items()}
    assert not _sweep_changes(small)
    assert before == {k: (c.best_lower, c.best_upper) for k, c in small.cdc.items()}


def test_seeded_classification_cells(grid):
    c = grid.cdc[(2, 6, 4, 3)]
    assert (c.best_lower, c.best_upper, c.classified, c.iso_types) == (77, 77, True, "5")
    c = grid.cdc[(2, 8, 6, 4)]
    assert (c.best_lower, c.best_upper) == (257, 257)
    assert grid.cdc[(2, 6, 4, 2)].iso_types == "131044"
    assert grid.cdc[(2, 7, 6, 3)].iso_types == "715"


def test_partial_spread_cell(grid):
    c = grid.cdc[(2, 10, 8, 4)]
    assert (c.best_lower, c.best_upper) == (65, 65)
    names = {r.constraint for r in c.records if r.value == 65}
    assert {"multicomponent", "partial_spread_kurz_q2"} <= names


def test_no_violations(grid):
    assert grid.violations == []
    for store in (grid.cdc, grid.mdc):
        for cell in store.values():
            assert cell.best_lower <= cell.best_upper


def test_empty_facts_converge():
    t = engine.fixpoint(engine.GridConfig(qs=(2,), nmax=8, facts=""))
    assert t.violations == []
    # the classified values are built in; only iso-type counts and external records come from facts
    c = t.cdc[(2, 6, 4, 3)]
    assert (c.best_lower, c.best_upper, c.classified, c.iso_types) == (77, 77, True, None)
    assert not any(r.source == engine.EXTERNAL for cell in t.cdc.values() for r in cell.records)
    seeded = engine.fixpoint(engine.GridConfig(qs=(2,), nmax=8))
    for key, cell in t.cdc.items():
        assert seeded.cdc[key].best_lower >= cell.best_lower
        assert seeded.cdc[key].best_upper <= cell.best_upper


def test_external_facts_excluded_from_toplist(grid):
    ext = [r for c in grid.cdc.values() for r in c.records if r.source == engine.EXTERNAL]
    assert ext, "packaged facts should include external lower bounds"
    names = {n.rstrip("*") for n, _ in engine.toplist(grid, LOWER)}
    only_external = {r.constraint for r in ext} - {
        r.constraint for c in grid.cdc.values() for r in c.records if r.source == engine.DERIVED}
    assert not (only_external & names)


R = BoundRecord


def test_dominance_filter_views():
    recs = [R("johnson_1", "", 81, UPPER), R("johnson_2", "", 81, UPPER), R("anticode", "", 93, UPPER),
            R("Ahlswede_Aydinian", "0, 4", 93, UPPER), R("Ahlswede_Aydinian", "0, 5", 81, UPPER),
            R("improved_johnson", "", 81, UPPER)]
    assert engine.dominance_filter(recs, engine.ALL, UPPER) == recs
    short = engine.dominance_filter(recs, engine.SHORT, UPPER)
    assert [r.constraint for r in short] == ["johnson_1", "johnson_2", "anticode", "Ahlswede_Aydinian",
                                             "improved_johnson"]
    assert short[3].parameter == "0, 5"
    dom = engine.dominance_filter(recs, engine.DOMINANCE, UPPER)
    # Ahlswede_Aydinian hides johnson_1 and, transitively, everything below it
    assert [r.constraint for r in dom] == ["Ahlswede_Aydinian", "improved_johnson"]
    with pytest.raises(ValueError):
        engine.dominance_filter(recs, "bogus", UPPER)


def test_dominance_on_api_cell(grid):
    lows, ups, _ = engine.split_records(grid.cdc[(2, 6, 4, 3)].records)
    up_names = [r.constraint for r in engine.dominance_filter(ups, engine.DOMINANCE, UPPER)]
    assert "johnson_2" not in up_names
    low_names = [r.constraint for r in engine.dominance_filter(lows, engine.DOMINANCE, LOWER)]
    assert "lin_poly" not in low_names and "ef_computation" in low_names


def test_split_records_hides_classification():
    recs = [R("classification", "", 77, EXACT, engine.CLASSIFICATION), R("d2", "", 37, EXACT),
            R("trivial_1", "", 0, LOWER), R("all_subs", "", 1395, UPPER)]
    lows, ups, eqs = engine.split_records(recs)
    assert [r.constraint for r in lows] == ["trivial_1"]
    assert [r.constraint for r in ups] == ["all_subs"]
    assert [r.constraint for r in eqs] == ["d2"]


def test_render_short_n6(small):
    lines = engine.render_table(small, 2, 6).splitlines()
    assert lines[0].split() == ["n=6", "2", "3"]
    assert lines[1] == "4    21 * (131044)  77 * (5)"
    assert lines[2].split() == ["6", "9", "*", "(1)"]


def test_render_large_has_d2_gaussian(small):
    out = engine.render_table(small, 2, 6, "large")
    row2 = [ln for ln in out.splitlines() if ln.startswith("2 ")][0]
    assert row2.split()[1:] == ["1", "63", "651", "1395", "651", "63", "1"]


def test_render_ratio_view(small):
    lines = engine.render_table(small, 2, 6, "ratio_of_bounds").splitlines()
    assert lines[1].split() == ["4", "1.000", "1.000"]


def test_render_range_cell(small):
    out = engine.render_table(small, 2, 7)
    assert "333-381" in out.replace(" ", "")


def test_render_mdc(small):
    lines = engine.render_table(small, 2).splitlines()
    assert lines[0].split()[:3] == ["q=2", "1", "2"]
    row2 = [ln for ln in lines if ln.startswith("2 ")][0]
    assert "37 * (1)" in row2


def test_undefined_view(small):
    with pytest.raises((ValueError, engine.UndefinedView)):
        engine.render_table(small, 2, 6, "no_such_view")


def test_toplist_ranks(grid):
    lows = engine.toplist(grid, LOWER)
    ups = engine.toplist(grid, UPPER)
    assert lows[0][0] == "improved_linkage"
    assert ups[0][0] == "improved_johnson"
    cells = sum(1 for k in grid.cdc if k[1] >= 4)
    for lst in (lows, ups):
        assert all(0 < s <= 1 for _, s in lst)
        # every cell has at least one achiever
        assert sum(s for _, s in lst) * cells >= cells
    assert any(name.endswith("*") for name, _ in ups)


def test_toplist_mdc(grid):
    assert engine.toplist(grid, LOWER, "mdc")
    assert engine.toplist(grid, UPPER, "mdc")


def test_cache_round_trip(small, tmp_path):
    path = str(tmp_path / "cache.tsv")
    engine.save_cache(small, path)
    back = engine.load_cache(path)
    assert back.config == small.config
    assert back.cdc.keys() == small.cdc.keys() and back.mdc.keys() == small.mdc.keys()
    for store, other in ((small.cdc, back.cdc), (small.mdc, back.mdc)):
        for key, cell in store.items():
            o = other[key]
            assert (o.best_lower, o.best_upper, o.classified, o.iso_types, o.lifted_mrd_bound) == \
                (cell.best_lower, cell.best_upper, cell.classified, cell.iso_types, cell.lifted_mrd_bound)
            assert o.records == cell.records
    engine.save_cache(back, path + "2")
    assert open(path).read() == open(path + "2").read()


def test_load_cache_rejects_other_files(tmp_path):
    p = tmp_path / "x.tsv"
    p.write_text("hello\n")
    with pytest.raises(ValueError):
        engine.load_cache(str(p))


def test_config_key_depends_on_config():
    a = engine.GridConfig(qs=(2,), nmax=8)
    b = engine.GridConfig(qs=(2,), nmax=9)
    assert a.key() != b.key() and a.key() == engine.GridConfig(qs=(2,), nmax=8).key()
