"""JSON query service over a converged bounds cache, and the command line."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from typing import List, Optional

from pydantic import BaseModel

from . import cdc_lower, engine, mdc
from .model import CdcParams, MdcParams, normalize_cdc
from .qcalc import PRIME_POWERS, InvalidParameter

log = logging.getLogger(__name__)


class Constraint(BaseModel):
    parameter: str
    name: str
    value: int


class CdcAnswer(BaseModel):
    upper_bound_constraints: List[Constraint]
    known_codes: list = []
    upper_bound: int
    classified: bool
    lower_bound: int
    lower_bound_constraints: List[Constraint]
    request: List[int]
    liftedmrdsizebound: int
    comments: str = ""
    equal_bound_constraints: List[Constraint]
    nondeduced: Optional[List[int]] = None


class MdcAnswer(BaseModel):
    upper_bound_constraints: List[Constraint]
    known_codes: list = []
    upper_bound: int
    classified: bool
    lower_bound: int
    lower_bound_constraints: List[Constraint]
    request: List[int]
    comments: str = ""
    equal_bound_constraints: List[Constraint]
    nondeduced: Optional[List[int]] = None


class NotInGrid(LookupError):
    pass


def _entries(records):
    return [Constraint(parameter=r.parameter, name=r.constraint, value=r.value) for r in records]


def cdc_answer(table, q: int, n: int, d: int, k: int) -> CdcAnswer:
    """Answer for A_q(n,d;k); raises InvalidParameter or NotInGrid."""
    req = CdcParams(q, n, d, k).validate()
    norm = normalize_cdc(req)
    p = norm.params
    canon = [p.q, p.n, p.d, max(p.k, 0)]
    alias = canon != [q, n, d, k]
    if norm.trivial_value is not None:
        v = norm.trivial_value
        lifted = cdc_lower.lifted_mrd(p.q, p.n, p.d, p.k) if p.k > 0 else 1
        return CdcAnswer(upper_bound_constraints=[], upper_bound=v, classified=False,
                         lower_bound=v, lower_bound_constraints=[], request=[q, n, d, k],
                         liftedmrdsizebound=lifted, comments="trivial",
                         equal_bound_constraints=[], nondeduced=canon if alias else None)
    cell = table.cdc.get(tuple(canon))
    if cell is None:
        raise NotInGrid(f"A_{q}({n},{d};{k}) is outside the computed grid")
    lows, ups, eqs = engine.split_records(cell.records)
    lifted = cell.lifted_mrd_bound if cell.lifted_mrd_bound is not None else cell.best_upper
    return CdcAnswer(upper_bound_constraints=_entries(ups), upper_bound=cell.best_upper,
                     classified=cell.classified, lower_bound=cell.best_lower,
                     lower_bound_constraints=_entries(lows), request=[q, n, d, k],
                     liftedmrdsizebound=lifted, comments=cell.comments,
                     equal_bound_constraints=_entries(eqs), nondeduced=canon if alias else None)


def mdc_answer(table, q: int, n: int, d: int) -> MdcAnswer:
    MdcParams(q, n, d).validate()
    cell = table.mdc.get((q, n, d))
    if cell is None:
        raise NotInGrid(f"A_{q}({n},{d}) is outside the computed grid")
    lows, ups, eqs = engine.split_records(cell.records)
    return MdcAnswer(upper_bound_constraints=_entries(ups), upper_bound=cell.best_upper,
                     classified=cell.classified, lower_bound=cell.best_lower,
                     lower_bound_constraints=_entries(lows), request=[q, n, d],
                     comments=cell.comments, equal_bound_constraints=_entries(eqs))


def answer_json(answer: BaseModel) -> str:
    return json.dumps(answer.model_dump(exclude_none=True))


class MissingCache(FileNotFoundError):
    pass


def open_cache(path: Optional[str]):
    path = path or engine.default_cache_path()
    if not os.path.exists(path):
        raise MissingCache(f"no bounds cache at {path}; run `subspace-bounds compute` first")
    return engine.load_cache(path)


# http

def create_app(cache_path: Optional[str] = None, table=None):
    from fastapi import FastAPI
    from fastapi.responses import JSONResponse

    if table is None:
        table = open_cache(cache_path)
    app = FastAPI(title="subspace code bounds")

    def _run(fn, *args):
        try:
            return JSONResponse(fn(table, *args).model_dump(exclude_none=True))
        except InvalidParameter as exc:
            return JSONResponse({"error": "invalid parameter", "detail": str(exc), "request": list(args)},
                                status_code=422)
        except NotInGrid as exc:
            return JSONResponse({"error": "not found", "detail": str(exc), "request": list(args)},
                                status_code=404)

    @app.get("/api/{q}/{n}/{d}/{k}/")
    def get_cdc(q: int, n: int, d: int, k: int):
        return _run(cdc_answer, q, n, d, k)

    @app.get("/api/{q}/{n}/{d}/")
    def get_mdc(q: int, n: int, d: int):
        return _run(mdc_answer, q, n, d)

    return app


# command line

def _cmd_compute(args):
    qs = tuple(q for q in PRIME_POWERS if q <= args.qmax)
    cfg = engine.GridConfig(qs=qs, nmax=args.nmax, ef_node_budget=args.ef_budget,
                            ev_mode=args.ev_mode, facts=args.facts)
    t0 = time.time()
    table = engine.fixpoint(cfg)
    path = args.cache or engine.default_cache_path()
    engine.save_cache(table, path)
    print(f"{len(table.cdc)} CDC and {len(table.mdc)} MDC cells in {time.time() - t0:.1f}s -> {path}")
    for v in table.violations:
        print(f"warning: lower above upper at {v}", file=sys.stderr)
    return 0


def _cmd_query(args):
    table = open_cache(args.cache)
    if args.k is None:
        ans = mdc_answer(table, args.q, args.n, args.d)
    else:
        ans = cdc_answer(table, args.q, args.n, args.d, args.k)
    print(answer_json(ans))
    return 0


def _cmd_table(args):
    table = open_cache(args.cache)
    print(engine.render_table(table, args.q, args.n, args.view))
    return 0


def _cmd_toplist(args):
    table = open_cache(args.cache)
    for direction in (engine.LOWER, engine.UPPER):
        print(f"{args.kind} {direction} bounds")
        for name, score in engine.toplist(table, direction, args.kind):
            print(f"  {name:40s} {float(score) * 100:6.2f}%")
    return 0


def _cmd_serve(args):
    import uvicorn

    app = create_app(args.cache)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="subspace-bounds",
                                 description="Bounds for constant and mixed dimension subspace codes.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("compute", help="run the fixpoint and write the cache")
    c.add_argument("--qmax", type=int, default=9)
    c.add_argument("--nmax", type=int, default=19)
    c.add_argument("--ef-budget", type=int, default=200000, help="branch-and-bound node budget per cell")
    c.add_argument("--ev-mode", choices=(mdc.LP, mdc.BB), default=mdc.LP)
    c.add_argument("--facts", default=None, help="facts TSV; empty string disables the packaged facts")
    c.add_argument("--cache")
    c.set_defaults(fn=_cmd_compute)

    qy = sub.add_parser("query", help="print the JSON answer for one cell")
    for name in ("q", "n", "d"):
        qy.add_argument(name, type=int)
    qy.add_argument("k", type=int, nargs="?")
    qy.add_argument("--cache")
    qy.set_defaults(fn=_cmd_query)

    t = sub.add_parser("table", help="render a table")
    t.add_argument("--q", type=int, required=True)
    t.add_argument("--n", type=int, help="omit for the MDC table")
    t.add_argument("--view", default="short")
    t.add_argument("--cache")
    t.set_defaults(fn=_cmd_table)

    tl = sub.add_parser("toplist", help="share of cells where each constraint is best")
    tl.add_argument("--kind", choices=("cdc", "mdc"), default="cdc")
    tl.add_argument("--cache")
    tl.set_defaults(fn=_cmd_toplist)

    s = sub.add_parser("serve", help="start the HTTP service")
    s.add_argument("--port", type=int, default=8000)
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--cache")
    s.set_defaults(fn=_cmd_serve)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.fn(args)
    except MissingCache as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidParameter, NotInGrid, engine.UnknownView) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
