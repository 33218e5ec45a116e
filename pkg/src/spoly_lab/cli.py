"""Command-line experiment runner: ``spoly-lab run|verify|gap|hull``.

Exit codes: 0 success, 1 a verification criterion failed, 2 invalid input,
3 solver failure, 130 interrupted (partial results are flushed with
``"truncated": true``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .approx import (
    best_weighted_approx_lawson,
    best_weighted_approx_lp,
    decay_rate,
    hull_approx_comparison,
    results_to_csv,
)
from .cones import IceCream, hull_lattice_points
from .config import ExperimentConfig
from .errors import ConfigError, DegenerateSampleError, DomainError, InadmissibleWeightError, SolverError
from .exponent_geometry import RationalPolytope, lattice_points
from .lattice_gap import gap_distance, gap_rate_report, polytope_delta
from .siciak import siciak_field
from .verification import SUITES, run_suite

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_SOLVER, EXIT_INTERRUPTED = 0, 1, 2, 3, 130


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, Path):
        return str(o)
    raise TypeError(f"not serializable: {type(o).__name__}")


def _clean(x):
    """Replace non-finite floats, which JSON cannot carry, by strings."""
    if isinstance(x, float) and not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


class _Outputs:
    def __init__(self, cfg: ExperimentConfig):
        self.cfg = cfg
        self.dir = Path(cfg.output)
        self.report: dict = {"config": cfg.resolved(), "truncated": False}
        self.table: str | None = None
        self.points: str | None = None

    def write(self) -> None:
        self.dir.mkdir(parents=True, exist_ok=True)
        text = json.dumps(_clean(self.report), indent=2, sort_keys=True, default=_json_default)
        (self.dir / "report.json").write_text(text + "\n")
        if self.table is not None:
            (self.dir / "table.csv").write_text(self.table)
        if self.points is not None:
            (self.dir / "points.csv").write_text(self.points)


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in r])
    return buf.getvalue()


# ------------------------------------------------------------ experiments


def _run_gap(cfg: ExperimentConfig, out: _Outputs) -> None:
    S = cfg.exponent_set()
    ms = cfg.ms()
    report = gap_rate_report(S, max(ms), workers=cfg.threads)
    keep = set(ms)
    rows = [r for r in report.rows if r.m in keep]
    bounds = dict(report.bound_rows or ())
    out.table = _csv(
        ["m", "d_m", "root", "delta", "bound"],
        [
            [r.m, r.d_m, r.root, "" if report.delta is None else report.delta, bounds.get(r.m, "")]
            for r in rows
        ],
    )
    d = report.to_dict()
    d["rows"] = [row for row in d["rows"] if row["m"] in keep]
    out.report["result"] = d


def _run_delta(cfg: ExperimentConfig, out: _Outputs) -> None:
    S = cfg.exponent_set()
    if not isinstance(S, RationalPolytope):
        raise ConfigError("set", "delta needs a rational polytope")
    res = polytope_delta(S)
    out.table = _csv(["delta", "common_denominator"], [[res.delta, res.common_denominator]])
    out.report["result"] = {
        "delta": res.delta,
        "common_denominator": res.common_denominator,
        "nearest": [str(c) for c in res.nearest] if res.nearest else None,
    }


def _run_hull(cfg: ExperimentConfig, out: _Outputs) -> None:
    S = cfg.exponent_set()
    rows, details = [], []
    samples = f = None
    if cfg.function is not None:
        samples = cfg.samples()
        f = cfg.target(samples)
    for m in cfg.ms():
        gap = gap_distance(S, m)
        own = set(lattice_points(S, m).exponents)
        hull, heuristic = hull_lattice_points(S, IceCream(gap), m)
        added = sorted(set(hull) - own)
        d_S = d_hull = ""
        if f is not None:
            cmp = hull_approx_comparison(f, samples, S, m, cfg.directions)
            d_S, d_hull = cmp.d_S, cmp.d_hull
        rows.append([m, gap, len(own), len(hull), len(added), d_S, d_hull, int(heuristic)])
        details.append({"m": m, "gap": gap, "added": [list(a) for a in added], "heuristic": heuristic})
    out.table = _csv(["m", "gap", "n_S", "n_hull", "n_added", "d_S", "d_hull", "heuristic"], rows)
    out.report["result"] = {"rows": details}


def _approx_one(args):
    solver, f, samples, S, m, cfg = args
    if solver == "lp":
        return best_weighted_approx_lp(f, samples, S, m, cfg["directions"])
    return best_weighted_approx_lawson(f, samples, S, m, cfg["max_iter"], cfg["tol"])


def _run_approx(cfg: ExperimentConfig, out: _Outputs) -> None:
    S = cfg.exponent_set()
    samples = cfg.samples()
    f = cfg.target(samples)
    solvers = ("lp", "lawson") if cfg.solver == "both" else (cfg.solver,)
    opts = {"directions": cfg.directions, "max_iter": cfg.max_iter, "tol": cfg.tol}
    jobs = [(s, f, samples, S, m, opts) for s in solvers for m in cfg.ms()]
    results = []
    try:
        if cfg.threads > 1:
            with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
                results = list(pool.map(_approx_one, jobs))
        else:
            for job in jobs:
                results.append(_approx_one(job))
    finally:
        results.sort(key=lambda r: (r.solver, r.m))
        out.table = results_to_csv(results)
        summary = {}
        for s in solvers:
            mine = [r for r in results if r.solver == s]
            entry: dict = {"rows": [r.to_row() for r in mine]}
            if s == "lp":
                entry["bounds"] = [[r.m, r.lower_bound, r.upper_bound] for r in mine]
            if len(mine) >= 4:
                fit = decay_rate(mine)
                entry.update(fitted_rate=fit.fitted_rate, window=list(fit.window), zero_flag=fit.zero_flag)
            summary[s] = entry
        out.report["result"] = summary
        if solvers[0] in summary and "fitted_rate" in summary[solvers[0]]:
            out.report["fitted_rate"] = summary[solvers[0]]["fitted_rate"]


def _run_siciak(cfg: ExperimentConfig, out: _Outputs) -> None:
    S = cfg.exponent_set()
    samples = cfg.samples()
    grid = cfg.grid_points()
    if grid.shape[1] != S.dim:
        raise ConfigError("grid", f"grid points live in C^{grid.shape[1]}, set in R^{S.dim}")
    fld = siciak_field(S, samples, cfg.ms(), grid, cfg.R, cfg.directions, cfg.threads)
    out.points = fld.to_csv()
    rows = []
    for i, m in enumerate(fld.m_list):
        col = fld.values[:, i]
        rows.append([m, float(col.min()), float(col.max())])
    out.table = _csv(["m", "phi_min", "phi_max"], rows)
    out.report["result"] = {
        "m_list": list(fld.m_list),
        "points": int(grid.shape[0]),
        "inside": None if fld.inside is None else int(fld.inside.sum()),
        "note": "v_hat is a finite-m lower approximant; the inside region over-approximates the sublevel set",
    }


_RUNNERS = {
    "gap": _run_gap,
    "delta": _run_delta,
    "hull": _run_hull,
    "approx-rate": _run_approx,
    "siciak-field": _run_siciak,
}


def run(cfg: ExperimentConfig) -> int:
    out = _Outputs(cfg)
    try:
        _RUNNERS[cfg.experiment](cfg, out)
    except KeyboardInterrupt:
        out.report["truncated"] = True
        out.write()
        return EXIT_INTERRUPTED
    out.write()
    return EXIT_OK


# ------------------------------------------------------------ argument handling


def _threads(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("SPOLY_LAB_THREADS")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise ConfigError("threads", f"SPOLY_LAB_THREADS={env!r} is not an integer") from exc
    return 1


def _overrides(args) -> dict:
    d = {"threads": _threads(args.threads)}
    if args.out is not None:
        d["output"] = args.out
    if args.seed is not None:
        d["seed"] = args.seed
    if args.directions is not None:
        d["directions"] = args.directions
    return d


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output directory")
    common.add_argument("--seed", type=int, help="seed for randomized choices")
    common.add_argument("--threads", type=int, help="worker processes (default: $SPOLY_LAB_THREADS or 1)")
    common.add_argument("--directions", type=int, help="polygon directions J for the LP relaxations")

    p = argparse.ArgumentParser(prog="spoly-lab", description="S-polynomial approximation experiments.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", parents=[common], help="run an experiment config")
    r.add_argument("config", help="path to a JSON experiment config")

    v = sub.add_parser("verify", parents=[common], help="run an acceptance suite")
    v.add_argument("suite", help="one of " + ", ".join(SUITES))

    g = sub.add_parser("gap", parents=[common], help="lattice gaps d_m for m = 1..m_max")
    g.add_argument("--set", required=True, help="builtin name, hypograph(b,c), or JSON file")
    g.add_argument("--m-max", type=int, required=True)

    h = sub.add_parser("hull", parents=[common], help="ice-cream-cone hull lattice points at one m")
    h.add_argument("--set", required=True, help="builtin name, hypograph(b,c), or JSON file")
    h.add_argument("--m", type=int, required=True)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits with 2 on bad usage
        return int(exc.code or 0)
    try:
        if args.command == "verify":
            if args.suite not in SUITES:
                print(f"error: unknown suite {args.suite!r}; choose from {', '.join(SUITES)}", file=sys.stderr)
                return EXIT_INVALID
            results = run_suite(args.suite)
            failed = sum(not r.passed for r in results)
            print(f"{len(results) - failed}/{len(results)} criteria passed")
            return EXIT_OK if failed == 0 else EXIT_FAILED
        if args.command == "run":
            cfg = ExperimentConfig.from_file(args.config)
            for k, val in _overrides(args).items():
                setattr(cfg, k, val)
            cfg.validate()
        elif args.command == "gap":
            cfg = ExperimentConfig.from_dict({"experiment": "gap", "set": args.set, "m_max": args.m_max, **_overrides(args)})
        else:
            cfg = ExperimentConfig.from_dict(
                {"experiment": "hull", "set": args.set, "m_list": [args.m], **_overrides(args)}
            )
        code = run(cfg)
        print(f"wrote results to {cfg.output}")
        return code
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (DomainError, InadmissibleWeightError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SolverError, DegenerateSampleError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
