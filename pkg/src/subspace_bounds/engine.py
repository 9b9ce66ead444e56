"""Fixpoint propagation over the parameter grid, views and persistence.

Every recursive constraint refers to a smaller ambient dimension, or to
the same n with a smaller (even) distance for MDC cells, so the dependency
graph is acyclic.  Each cell recomputes its best bounds from scratch from
its current records; sweeps repeat until no best bound moves, which makes
the converged table independent of the evaluation order.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Optional

from . import cdc_lower, cdc_upper, ef, mdc
from .model import (EXACT, LOWER, UPPER, BoundRecord, Cell, CdcParams, UndefinedView,
                    density, normalize_cdc, ratio_of_bounds, realized_density, relative_gap)
from .qcalc import PRIME_POWERS, gauss_binom

log = logging.getLogger(__name__)

CACHE_ENV = "SUBSPACE_BOUNDS_CACHE"
DEFAULT_CACHE = "subspace_bounds_cache.tsv"
CACHE_VERSION = 1

ALL, SHORT, DOMINANCE = "all", "short", "dominance"

# (better, worse): worse is hidden when better is present
UPPER_RELATIONS = [
    ("sphere_packing", "all_subs"), ("anticode", "sphere_packing"), ("anticode", "singleton"),
    ("johnson_1", "johnson_2"), ("johnson_1", "anticode"), ("johnson_1", "ilp_1"),
    ("ilp_1", "ilp_2"), ("ilp_4", "ilp_3"), ("johnson_2", "ilp_4"),
    ("Ahlswede_Aydinian", "johnson_1"), ("Ahlswede_Aydinian", "johnson_2"),
]
LOWER_RELATIONS = [
    ("sphere_covering", "trivial_1"), ("echelon_ferrers", "lin_poly"),
    ("ef_computation", "echelon_ferrers"), ("improved_linkage", "linkage_GLT"),
    ("improved_linkage", "linkage_ST"),
]

DERIVED, EXTERNAL, CLASSIFICATION = "derived", "external", "classification"


def default_cache_path() -> str:
    return os.environ.get(CACHE_ENV, DEFAULT_CACHE)


@dataclass
class GridConfig:
    qs: tuple = PRIME_POWERS
    nmax: int = 19
    ef_node_budget: int = 200000
    ef_time_budget: float = 60.0
    ef_cap: int = ef.EXACT_CAP
    ev_mode: str = mdc.LP
    facts: Optional[str] = None  # None: packaged facts, "": no facts

    def key(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True, default=list)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def cdc_short_points(q: int, nmax: int, nmin: int = 4):
    for n in range(nmin, nmax + 1):
        for k in range(2, n // 2 + 1):
            for d in range(4, 2 * k + 1, 2):
                yield (q, n, d, k)


def mdc_points(q: int, nmax: int):
    for n in range(1, nmax + 1):
        # even distances first: relax_d reads the cell with distance d-1
        for d in list(range(2, n + 1, 2)) + list(range(1, n + 1, 2)):
            yield (q, n, d)


# facts

@dataclass
class Fact:
    kind: str  # "cdc" or "mdc"
    key: tuple
    record: Optional[BoundRecord]
    iso: Optional[str]


def load_facts(path: Optional[str]) -> list:
    if path == "":
        return []
    if path is None:
        text = resources.files("subspace_bounds").joinpath("data/facts.tsv").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    out = []
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        kind, q, n, d, k, name, par, direction, value, source, iso = line.split("\t")
        key = (int(q), int(n), int(d)) + ((int(k),) if kind == "cdc" else ())
        rec = None
        if value != "-":
            rec = BoundRecord(name, par, int(value), direction, source)
        out.append(Fact(kind, key, rec, None if iso == "-" else iso))
    return out


class BoundsTable:
    """Grid of CDC cells (short view, canonical) and MDC cells."""

    def __init__(self, config: GridConfig):
        self.config = config
        self.cdc: dict = {}
        self.mdc: dict = {}
        self.violations: list = []
        self._facts_cdc: dict = {}
        self._facts_mdc: dict = {}
        self._ef_cache: dict = {}

    # lookups used by the constraint modules

    def _cdc_cell(self, q, n, d, k):
        """(cell or None, trivial value or None) for any point."""
        norm = normalize_cdc(CdcParams(q, n, d, k))
        if norm.trivial_value is not None:
            return None, norm.trivial_value
        p = norm.params
        return self.cdc.get((p.q, p.n, p.d, p.k)), None

    def lower(self, q, n, d, k):
        cell, triv = self._cdc_cell(q, n, d, k)
        if triv is not None:
            return triv
        return cell.best_lower if cell else 0

    def upper(self, q, n, d, k):
        cell, triv = self._cdc_cell(q, n, d, k)
        if triv is not None:
            return triv
        if cell:
            return cell.best_upper
        kk = min(k, n - k)
        return gauss_binom(n, kk, q)

    cdc_lower = lower
    cdc_upper = upper

    def mdc_upper(self, q, n, d):
        cell = self.mdc.get((q, n, d))
        return cell.best_upper if cell else mdc.total_subspaces(q, n)

    def mdc_lower(self, q, n, d):
        cell = self.mdc.get((q, n, d))
        return cell.best_lower if cell else 0

    # seeding

    def seed(self, facts: list):
        for f in facts:
            store = self._facts_cdc if f.kind == "cdc" else self._facts_mdc
            store.setdefault(f.key, []).append(f)

    def _seed_records(self, store, key):
        return [f.record for f in store.get(key, ()) if f.record is not None]

    def _seed_iso(self, store, key):
        for f in store.get(key, ()):
            if f.iso is not None:
                return f.iso
        return None

    # evaluation

    def _ef_cdc(self, q, n, d, k):
        key = (q, n, d, k)
        if key not in self._ef_cache:
            c = self.config
            self._ef_cache[key] = cdc_lower.ef_record(
                q, n, d, k, node_budget=c.ef_node_budget, time_budget=c.ef_time_budget, cap=c.ef_cap)
        return self._ef_cache[key]

    def _ef_mdc(self, q, n, d):
        key = (q, n, d)
        if key not in self._ef_cache:
            c = self.config
            self._ef_cache[key] = mdc.ef_record(
                q, n, d, node_budget=c.ef_node_budget, time_budget=c.ef_time_budget, cap=c.ef_cap)
        return self._ef_cache[key]

    def evaluate_cdc(self, key) -> Cell:
        q, n, d, k = key
        recs = cdc_upper.upper_records(q, n, d, k, self)
        recs += cdc_lower.lower_records(q, n, d, k, self, self._ef_cdc(q, n, d, k))
        recs += self._seed_records(self._facts_cdc, key)
        cell = _cell_from(recs)
        cell.lifted_mrd_bound = cdc_upper.mrd_containing_bound(q, n, d, k, self)
        _attach_iso(cell, self._seed_iso(self._facts_cdc, key))
        return cell

    def evaluate_mdc(self, key) -> Cell:
        q, n, d = key
        recs = mdc.mdc_records(q, n, d, self, self.config.nmax, self.config.ev_mode,
                               self._ef_mdc(q, n, d))
        recs += self._seed_records(self._facts_mdc, key)
        cell = _cell_from(recs)
        _attach_iso(cell, self._seed_iso(self._facts_mdc, key))
        return cell

    def update(self, kind, key) -> bool:
        store = self.cdc if kind == "cdc" else self.mdc
        cell = self.evaluate_cdc(key) if kind == "cdc" else self.evaluate_mdc(key)
        old = store.get(key)
        store[key] = cell
        if old is None:
            return True
        return (old.best_lower, old.best_upper, old.lifted_mrd_bound) != (
            cell.best_lower, cell.best_upper, cell.lifted_mrd_bound)

    def check(self):
        self.violations = []
        for store in (self.cdc, self.mdc):
            for key, cell in sorted(store.items()):
                if cell.best_lower > cell.best_upper:
                    lo = max((r for r in cell.records if r.is_lower()), key=lambda r: r.value)
                    up = min((r for r in cell.records if r.is_upper()), key=lambda r: r.value)
                    self.violations.append((key, lo, up))
        return self.violations


def _cell_from(recs) -> Cell:
    lo = max(r.value for r in recs if r.is_lower())
    up = min(r.value for r in recs if r.is_upper())
    classified = any(r.source == CLASSIFICATION for r in recs)
    return Cell(lo, up, list(recs), classified)


def _attach_iso(cell: Cell, iso):
    if iso is None:
        return
    cell.iso_types = iso
    if not iso.startswith(">="):
        cell.classified = True


def fixpoint(config: GridConfig, order: str = "ascending", seed: int = 0,
             max_sweeps: int = 50) -> BoundsTable:
    table = BoundsTable(config)
    table.seed(load_facts(config.facts))
    cdc_keys = [p for q in config.qs for p in cdc_short_points(q, config.nmax)]
    mdc_keys = [p for q in config.qs for p in mdc_points(q, config.nmax)]
    rng = random.Random(seed)
    for sweep in range(max_sweeps):
        if order == "random":
            rng.shuffle(cdc_keys)
            rng.shuffle(mdc_keys)
        changed = False
        for key in cdc_keys:
            changed |= table.update("cdc", key)
        for key in mdc_keys:
            changed |= table.update("mdc", key)
        log.info("sweep %d done, changed=%s", sweep + 1, changed)
        if not changed:
            break
    else:
        log.warning("fixpoint not reached after %d sweeps", max_sweeps)
    for v in table.check():
        log.warning("bound violation at %s: %s > %s", *v)
    return table


# record views

def _closure(relations):
    hides = {}
    for better, worse in relations:
        hides.setdefault(better, set()).add(worse)
    changed = True
    while changed:
        changed = False
        for a in hides:
            extra = set()
            for b in hides[a]:
                extra |= hides.get(b, set())
            if not extra <= hides[a]:
                hides[a] |= extra
                changed = True
    return hides


_HIDES = {LOWER: _closure(LOWER_RELATIONS), UPPER: _closure(UPPER_RELATIONS)}


def dominance_filter(records, view: str = ALL, direction: str = UPPER) -> list:
    """Filter one direction's record list for display."""
    if view == ALL:
        return list(records)
    best = {}
    for r in records:
        cur = best.get(r.constraint)
        if cur is None:
            best[r.constraint] = r
        elif (direction == UPPER and r.value < cur.value) or (direction == LOWER and r.value > cur.value):
            best[r.constraint] = r
    seen = set()
    short = []
    for r in records:
        if r.constraint not in seen:
            seen.add(r.constraint)
            short.append(best[r.constraint])
    if view == SHORT:
        return short
    if view != DOMINANCE:
        raise ValueError(f"unknown view {view}")
    present = {r.constraint for r in short}
    hidden = set()
    for name in present:
        hidden |= _HIDES[direction].get(name, set())
    return [r for r in short if r.constraint not in hidden]


def split_records(records):
    """(lower, upper, equal) display lists; classification facts are not listed."""
    lows, ups, eqs = [], [], []
    for r in records:
        if r.source == CLASSIFICATION:
            continue
        if r.direction == EXACT:
            eqs.append(r)
        elif r.direction == LOWER:
            lows.append(r)
        else:
            ups.append(r)
    return lows, ups, eqs


# table rendering

class UnknownView(ValueError):
    pass


CELL_VIEWS = ("short", "normal", "large")
NUMBER_VIEWS = ("relative_gap", "ratio_of_bounds", "density", "realized_density",
                "amount_lifted_mrd", "amount_multicomponent", "amount_mrd_bound")


def format_cell(lo, up, iso=None, classified=False) -> str:
    if lo != up:
        return f"{lo} - {up}"
    if iso is None:
        return str(lo)
    if iso.startswith(">="):
        return f"{lo} (≥ {iso[2:]})"
    return f"{lo} * ({iso})"


def _cdc_view_value(table, q, n, d, k, view):
    """Text of one CDC table entry, or '' when the view leaves it empty."""
    cell, triv = table._cdc_cell(q, n, d, k)
    if view in CELL_VIEWS:
        if triv is not None:
            return str(triv)
        if cell is None:
            return ""
        return format_cell(cell.best_lower, cell.best_upper, cell.iso_types, cell.classified)
    if cell is None:
        return ""
    if view == "relative_gap":
        val = relative_gap(cell)
    elif view == "ratio_of_bounds":
        val = ratio_of_bounds(cell)
    elif view in ("density", "realized_density"):
        ac = cdc_upper.anticode(q, n, d, k)
        val = density(cell, ac) if view == "density" else realized_density(cell, ac)
    elif view == "amount_lifted_mrd":
        val = Fraction(cell.best_lower, cdc_lower.lifted_mrd(q, n, d, k))
    elif view == "amount_multicomponent":
        mc = cdc_lower.multicomponent(q, n, d, k)
        if not mc:
            return ""
        val = Fraction(cell.best_lower, mc)
    elif view == "amount_mrd_bound":
        if not cell.lifted_mrd_bound:
            return ""
        val = Fraction(cell.best_lower, cell.lifted_mrd_bound)
    else:
        raise UnknownView(f"unknown view {view}")
    return f"{float(val):.3f}"


def _grid_text(corner, col_labels, rows) -> str:
    """Align a table; rows are (label, [entries])."""
    widths = [max([len(str(col_labels[i]))] + [len(r[1][i]) for r in rows]) for i in range(len(col_labels))]
    lw = max([len(corner)] + [len(str(r[0])) for r in rows])
    lines = ["  ".join([corner.ljust(lw)] + [str(c).ljust(w) for c, w in zip(col_labels, widths)]).rstrip()]
    for label, entries in rows:
        lines.append("  ".join([str(label).ljust(lw)] + [e.ljust(w) for e, w in zip(entries, widths)]).rstrip())
    return "\n".join(lines)


def render_cdc_table(table, q, n, view="short") -> str:
    if view == "large":
        ks, ds = list(range(0, n + 1)), list(range(1, n + 1))
    elif view == "normal":
        ks, ds = list(range(1, n // 2 + 1)), list(range(2, n + 1, 2))
    else:
        ks = list(range(2, n // 2 + 1))
        ds = list(range(4, 2 * (n // 2) + 1, 2))
    rows = []
    for d in ds:
        entries = []
        for k in ks:
            if view not in ("normal", "large") and d > 2 * k:
                entries.append("")
                continue
            try:
                entries.append(_cdc_view_value(table, q, n, d, k, view))
            except UndefinedView:
                entries.append("n/a")
        rows.append((d, entries))
    return _grid_text(f"n={n}", ks, rows)


def render_mdc_table(table, q, view="normal") -> str:
    nmax = table.config.nmax
    ns = list(range(1, nmax + 1))
    rows = []
    for d in range(1, nmax + 1):
        entries = []
        for n in ns:
            cell = table.mdc.get((q, n, d))
            if cell is None or d > n:
                entries.append("")
                continue
            if view in ("normal",) + CELL_VIEWS:
                entries.append(format_cell(cell.best_lower, cell.best_upper, cell.iso_types, cell.classified))
            elif view == "relative_gap":
                entries.append(f"{float(relative_gap(cell)):.3f}" if cell.best_lower else "n/a")
            elif view == "ratio_of_bounds":
                entries.append(f"{float(ratio_of_bounds(cell)):.3f}" if cell.best_lower else "n/a")
            else:
                raise UnknownView(f"view {view} is not available for mixed dimension tables")
        rows.append((d, entries))
    return _grid_text(f"q={q}", ns, rows)


def render_table(table, q, n=None, view="short") -> str:
    if view not in CELL_VIEWS + NUMBER_VIEWS:
        raise UnknownView(f"unknown view {view}; choose from {', '.join(CELL_VIEWS + NUMBER_VIEWS)}")
    if n is None:
        return render_mdc_table(table, q, "normal" if view in CELL_VIEWS else view)
    return render_cdc_table(table, q, n, view)


# toplist

def toplist(table, direction: str, kind: str = "cdc") -> list:
    """[(constraint, score)] sorted by score; exact-value ids carry a '*'."""
    if kind == "cdc":
        cells = [c for key, c in table.cdc.items() if key[1] >= 4]
    else:
        cells = [c for key, c in table.mdc.items() if key[1] >= 4]
    if not cells:
        return []
    score: dict = {}
    for cell in cells:
        target = cell.best_lower if direction == LOWER else cell.best_upper
        winners = set()
        for r in cell.records:
            if r.source != DERIVED:
                continue
            ok = r.is_lower() if direction == LOWER else r.is_upper()
            if ok and r.value == target:
                winners.add(r.constraint + ("*" if r.direction == EXACT else ""))
        for w in winners:
            score[w] = score.get(w, 0) + 1
    total = len(cells)
    return sorted(((name, Fraction(s, total)) for name, s in score.items()), key=lambda t: (-t[1], t[0]))


# cache

def save_cache(table: BoundsTable, path: str):
    cfg = table.config
    lines = [f"# subspace-bounds cache v{CACHE_VERSION}",
             "#config\t" + json.dumps(asdict(cfg), sort_keys=True, default=list),
             "#key\t" + cfg.key()]
    for store, kind in ((table.cdc, "cdc"), (table.mdc, "mdc")):
        for key in sorted(store):
            cell = store[key]
            kk = key if kind == "cdc" else key + (-1,)
            head = [kind] + [str(x) for x in kk]
            for r in cell.records:
                lines.append("\t".join(head + ["R", r.constraint, r.parameter, r.direction, str(r.value), r.source]))
            lines.append("\t".join(head + ["A", "classified", str(int(cell.classified))]))
            if cell.iso_types is not None:
                lines.append("\t".join(head + ["A", "iso_types", cell.iso_types]))
            if cell.lifted_mrd_bound is not None:
                lines.append("\t".join(head + ["A", "liftedmrdsizebound", str(cell.lifted_mrd_bound)]))
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def load_cache(path: str) -> BoundsTable:
    with open(path) as fh:
        text = fh.read()
    cfg = None
    recs: dict = {}
    attrs: dict = {}
    for line in text.splitlines():
        if line.startswith("#config\t"):
            raw = json.loads(line.split("\t", 1)[1])
            raw["qs"] = tuple(raw["qs"])
            cfg = GridConfig(**raw)
            continue
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        kind = parts[0]
        q, n, d, k = (int(x) for x in parts[1:5])
        key = (kind, (q, n, d, k) if kind == "cdc" else (q, n, d))
        if parts[5] == "R":
            name, par, direction, value, source = parts[6:11]
            recs.setdefault(key, []).append(BoundRecord(name, par, int(value), direction, source))
        else:
            attrs.setdefault(key, {})[parts[6]] = parts[7]
    if cfg is None:
        raise ValueError(f"{path} is not a bounds cache")
    table = BoundsTable(cfg)
    for (kind, key), rl in recs.items():
        cell = _cell_from(rl)
        a = attrs.get((kind, key), {})
        cell.classified = a.get("classified") == "1"
        cell.iso_types = a.get("iso_types")
        if "liftedmrdsizebound" in a:
            cell.lifted_mrd_bound = int(a["liftedmrdsizebound"])
        (table.cdc if kind == "cdc" else table.mdc)[key] = cell
    table.check()
    return table
