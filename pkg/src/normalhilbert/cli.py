"""Command-line driver: ``normalhilbert <command> --input problem.json``.

Exit codes: 0 success, 1 disagreement or invariant violation, 2 input error,
3 stabilization or window exhaustion.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
import time
from pathlib import Path
from typing import Optional

from .analysis import Analysis
from .cohomology import THEOREMS, check_theorem, h2_cells
from .errors import IngestedSourceError, InputError, NormalHilbertError
from .hilbert import HilbertTable, mixed_multiplicity
from .ideals import closure, colength
from .jointred import INGESTED_REASON, normal_reduction_number, power_intersection_holds
from .problem import ProblemSpec, parse_problem

COMMANDS = ("closure", "colength", "table", "coeffs", "jointred", "h2", "check", "all")
H2_RANGE = 6
INT64 = 2**63


# -- serialization ----------------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= INT64 else obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def table_csv(T: HilbertTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "s", "length"])
    for r, s in T.cells():
        w.writerow([r, s, T[(r, s)]])
    return buf.getvalue()


def h2_csv(cells) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "s", "direct", "formula", "difference"])
    for c in cells:
        w.writerow([c.r, c.s, "" if c.direct is None else c.direct, c.formula, c.difference])
    return buf.getvalue()


def atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=path.suffix)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- command bodies ---------------------------------------------------------------


def _require_module(ctx: Analysis, what: str) -> None:
    if ctx.ingested:
        raise IngestedSourceError(f"{what}: {INGESTED_REASON}")


def _ideal_info(K) -> dict:
    Kb = closure(K)
    return {
        "generators": [list(g) for g in K.gens],
        "closure": [list(g) for g in Kb.gens],
        "newton_vertices": [list(v) for v in K.region().vertices],
    }


def cmd_closure(ctx: Analysis) -> dict:
    _require_module(ctx, "closure")
    F = ctx.filtration
    return {"I": _ideal_info(F.I), "J": _ideal_info(F.J)}


def cmd_colength(ctx: Analysis) -> dict:
    _require_module(ctx, "colength")
    F = ctx.filtration
    return {
        "I": colength(F.I),
        "I_closure": colength(F.I_bar),
        "J": colength(F.J),
        "J_closure": colength(F.J_bar),
    }


def cmd_table(ctx: Analysis) -> dict:
    T = ctx.table
    return {"grid": [T.rmax, T.smax], "source": T.source, "rows": [[r, s, T[(r, s)]] for r, s in T.cells()]}


def _upward_closed(cells: set, T: HilbertTable) -> bool:
    for r, s in cells:
        for nxt in ((r + 1, s), (r, s + 1)):
            if nxt[0] <= T.rmax and nxt[1] <= T.smax and nxt not in cells:
                return False
    return True


def cmd_coeffs(ctx: Analysis) -> dict:
    P, C, T = ctx.poly, ctx.bundle, ctx.table
    off = sorted(c for c in T.cells() if c not in P.frontier)
    return {
        "bhattacharya": P.as_dict(),
        "fit": {"base": P.base, "window": P.window},
        "cells_off_polynomial": [list(c) for c in off],
        "frontier_upward_closed": _upward_closed(set(P.frontier), T),
        "bundle": C.as_dict(),
        "e2_defect": C.e2_defect,
        "normal_reduction_number": {
            "I": normal_reduction_number(T.axis("I"), C.I),
            "J": normal_reduction_number(T.axis("J"), C.J),
        },
    }


def cmd_jointred(ctx: Analysis) -> dict:
    search = ctx.pair_search
    out = {"reason": search.reason, "tried": search.tried, "certificate": None}
    cert = search.certificate
    if cert is None:
        return out
    out["certificate"] = cert.as_dict()
    out["mixed_multiplicity"] = mixed_multiplicity(ctx.poly, ctx.filtration, cert.pair)
    w = ctx.window
    out["power_intersection"] = power_intersection_holds(ctx.filtration, cert, w.rv, w.sv)
    return out


def _h2_bound(ctx: Analysis) -> int:
    return min(H2_RANGE, ctx.table.rmax, ctx.table.smax)


def cmd_h2(ctx: Analysis) -> tuple[dict, list]:
    n = _h2_bound(ctx)
    cells = h2_cells(ctx, n, n)
    bad = [c for c in cells if not c.agrees]
    out = {
        "range": [0, n],
        "routes": ["formula", "difference"] + ([] if ctx.certificate is None else ["direct"]),
        "cells": [c.as_dict() for c in cells],
        "agree": not bad,
    }
    if ctx.ingested:
        out["formula_status"] = "formula-only"
    return out, cells


# -- driver -----------------------------------------------------------------------


class Result:
    def __init__(self):
        self.body: dict = {}
        self.files: dict[str, str] = {}
        self.ok = True


def run_command(
    spec: ProblemSpec, command: str, theorem: Optional[str] = None, r0: int = 0, s0: int = 0, ctx: Optional[Analysis] = None
) -> Result:
    """Run one command and collect the report body plus any table files."""
    ctx = ctx or spec.analysis()
    res = Result()
    if command == "closure":
        res.body = cmd_closure(ctx)
    elif command == "colength":
        res.body = cmd_colength(ctx)
    elif command == "table":
        res.body = cmd_table(ctx)
        res.files["hilbert.csv"] = table_csv(ctx.table)
    elif command == "coeffs":
        res.body = cmd_coeffs(ctx)
        res.files["hilbert.csv"] = table_csv(ctx.table)
    elif command == "jointred":
        res.body = cmd_jointred(ctx)
    elif command == "h2":
        res.body, cells = cmd_h2(ctx)
        res.files["h2.csv"] = h2_csv(cells)
        res.ok = res.body["agree"]
    elif command == "check":
        if theorem not in THEOREMS:
            raise InputError(f"check needs a theorem id: {', '.join(THEOREMS)}")
        rep = check_theorem(theorem, ctx, r0, s0)
        res.body = rep.as_dict()
        res.ok = rep.ok
    elif command == "all":
        body = {"table": cmd_table(ctx), "coeffs": cmd_coeffs(ctx), "jointred": cmd_jointred(ctx)}
        if not ctx.ingested:
            body["closure"] = cmd_closure(ctx)
            body["colength"] = cmd_colength(ctx)
        body["h2"], cells = cmd_h2(ctx)
        reports = {t: check_theorem(t, ctx, r0, s0) for t in THEOREMS}
        body["checks"] = {t: rep.as_dict() for t, rep in reports.items()}
        res.body = body
        res.files["hilbert.csv"] = table_csv(ctx.table)
        res.files["h2.csv"] = h2_csv(cells)
        res.ok = body["h2"]["agree"] and all(rep.ok for rep in reports.values())
    else:
        raise InputError(f"unknown command {command!r}")
    return res


def _cache_key(spec: ProblemSpec, args) -> str:
    parts = {
        "problem": spec.digest,
        "options": spec.options.as_dict(),
        "command": args.command,
        "theorem": args.theorem,
        "r0": args.r0,
        "s0": args.s0,
        "format": args.format,
    }
    return hashlib.sha256(json.dumps(parts, sort_keys=True).encode()).hexdigest()


def _cells_file(cache_dir: Path, spec: ProblemSpec) -> Path:
    key = hashlib.sha256(json.dumps(spec.describe() | {"label": ""}, sort_keys=True).encode()).hexdigest()
    return cache_dir / f"cells-{key}.json"


def load_cells(path: Path, ctx: Analysis) -> None:
    try:
        raw = json.loads(path.read_text())
        cells = {(int(r), int(s)): [tuple(g) for g in gens] for r, s, gens in raw}
    except (OSError, ValueError, TypeError):
        return
    ctx.filtration.seed(cells)


def save_cells(path: Path, ctx: Analysis) -> None:
    cells = ctx.filtration.cached_cells()
    rows = [[r, s, [list(g) for g in K.gens]] for (r, s), K in sorted(cells.items())]
    atomic_write(path, json.dumps(rows, separators=(",", ":")))


def default_cache_dir() -> Path:
    env = os.environ.get("NORMALHILBERT_CACHE")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "normalhilbert"


def _render(spec: ProblemSpec, args, res: Result) -> str:
    if args.format == "csv":
        if args.command == "table":
            return res.files["hilbert.csv"]
        if args.command == "h2":
            return res.files["h2.csv"]
        raise InputError("--format csv is only available for the table and h2 commands")
    report = {
        "problem_hash": spec.digest,
        "problem": spec.describe(),
        "command": args.command if args.theorem is None else f"{args.command} {args.theorem}",
        "options": spec.options.as_dict(),
        "result": res.body,
    }
    return dump_json(report)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="normalhilbert",
        description="Normal Hilbert coefficients, joint reductions and H^2 lengths for pairs of monomial ideals.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("theorem", nargs="?", help=f"theorem id for 'check' ({', '.join(THEOREMS)})")
    p.add_argument("--input", "-i", required=True, help="problem file (JSON)")
    p.add_argument("--grid", nargs=2, type=int, metavar=("R", "S"), help="Hilbert table bounds (default 10 10)")
    p.add_argument("--window", type=int, metavar="W", help="certification window: Rv = Sv = N_stab + W (default 4)")
    p.add_argument("--kcap", type=int, metavar="K", help="cap on k for the direct H^2 count (default 12)")
    p.add_argument("--r0", type=int, default=0)
    p.add_argument("--s0", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--no-cache", action="store_true", help="neither read nor write the result cache")
    p.add_argument("--cache-dir", type=Path, help="result cache location (default ~/.cache/normalhilbert)")
    p.add_argument("--out", type=Path, metavar="DIR", help="also write report.json and CSV tables here")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _apply_flags(spec: ProblemSpec, args) -> ProblemSpec:
    changes = {}
    if args.grid is not None:
        if min(args.grid) < 0:
            raise InputError("--grid bounds must be nonnegative")
        changes["rmax"], changes["smax"] = args.grid
    if args.window is not None:
        if args.window < 0:
            raise InputError("--window must be nonnegative")
        changes["cert_window"] = args.window
    if args.kcap is not None:
        if args.kcap < 2:
            raise InputError("--kcap must be at least 2")
        changes["kcap"] = args.kcap
    return spec.with_options(**changes) if changes else spec


def _emit(args, text: str, files: dict[str, str]) -> None:
    sys.stdout.write(text)
    if args.out is not None:
        atomic_write(args.out / ("report.csv" if args.format == "csv" else "report.json"), text)
        for name, body in files.items():
            atomic_write(args.out / name, body)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    def say(msg: str) -> None:
        if args.verbose:
            print(msg, file=sys.stderr)
    if args.command == "check" and args.theorem is None:
        print(f"error: check needs a theorem id ({', '.join(THEOREMS)})", file=sys.stderr)
        return 2
    if args.command != "check" and args.theorem is not None:
        print(f"error: unexpected argument {args.theorem!r}", file=sys.stderr)
        return 2
    try:
        spec = _apply_flags(parse_problem(args.input), args)
        cache_file = None
        cache_dir = args.cache_dir or default_cache_dir()
        if not args.no_cache:
            cache_file = cache_dir / f"{_cache_key(spec, args)}.json"
            if cache_file.exists():
                try:
                    hit = json.loads(cache_file.read_text())
                    say(f"cache hit {cache_file.name}")
                    _emit(args, hit["stdout"], hit["files"])
                    return hit["exit"]
                except (OSError, ValueError, KeyError):
                    print(f"warning: ignoring unreadable cache entry {cache_file}", file=sys.stderr)
        ctx = spec.analysis()
        cells_file = None if args.no_cache or spec.ingested else _cells_file(cache_dir, spec)
        if cells_file is not None and cells_file.exists():
            load_cells(cells_file, ctx)
        t0 = time.perf_counter()
        res = run_command(spec, args.command, args.theorem, args.r0, args.s0, ctx)
        text = _render(spec, args, res)
        code = 0 if res.ok else 1
        say(f"computed in {time.perf_counter() - t0:.3f} s")
        _emit(args, text, res.files)
        if cache_file is not None:
            atomic_write(cache_file, json.dumps({"exit": code, "stdout": text, "files": res.files}, sort_keys=True))
        if cells_file is not None:
            save_cells(cells_file, ctx)
        return code
    except NormalHilbertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
