import os

import pytest

from subspace_bounds import engine

DATA = os.path.join(os.path.dirname(__file__), "data", "reference_tables.tsv")


def load_reference():
    """Rows of the published tables: (kind, key, lower, upper, iso)."""
    rows = []
    with open(DATA) as fh:
        for line in fh:
            if line.startswith("#") or not line.strip():
                continue
            kind, q, n, d, k, lo, up, iso = line.rstrip("\n").split("\t")
            key = (int(q), int(n), int(d)) + ((int(k),) if kind == "cdc" else ())
            rows.append((kind, key, int(lo), int(up), None if iso == "-" else iso))
    return rows


@pytest.fixture(scope="session")
def reference():
    return load_reference()


@pytest.fixture(scope="session")
def grid():
    """Converged table for q = 2, 3, 4 up to n = 13."""
    return engine.fixpoint(engine.GridConfig(qs=(2, 3, 4), nmax=13))


@pytest.fixture(scope="session")
def small():
    return engine.fixpoint(engine.GridConfig(qs=(2,), nmax=8))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        title, verdict, detail = RESULTS[num]
        line = f"criterion {num:2d} {verdict}  {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
