"""Command line entry point.

    ecsring sectors --config job.json [--max-order N]
    ecsring product --config job.json
    ecsring verify  --config job.json [--seed N] [--jobs N]
    ecsring report  --config job.json

Reports are JSON (sorted keys, rationals as ``"p/q"``) or CSV. Exit status
is 0 when every check passes, 1 when some check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from pathlib import Path

from . import __version__
from .config import ConfigError, JobConfig, dump_json, load_config, parse_config
from .gkm import GKMError, degree_audit, ecs_product, sector_report
from .localization import matches, oracle_product
from .reduction import group_comparison
from .sectors import weight_sectors
from .suite import SuiteError, resolve_suite, run_suite, summarize
from .torus import format_fraction

COMMANDS = ("sectors", "product", "verify", "report")


class CommandError(ValueError):
    pass


# --- payloads ---------------------------------------------------------------


def _sectors(cfg: JobConfig) -> dict:
    if cfg.graph is not None:
        table = sector_report(cfg.graph, cfg.max_order)
        names = cfg.graph.names
        rows = [
            {
                "t": r.t.to_strings(),
                "order": r.order,
                "components": [
                    {"vertices": [names[v] for v in comp], "shift": format_fraction(s), "dim": d}
                    for comp, s, d in zip(r.components, r.shifts, r.dims)
                ],
            }
            for r in table.rows
        ]
        return {"kind": "gkm", "rows": rows}
    if cfg.weights is not None:
        rows = [
            {
                "t": r.t.to_strings(),
                "order": r.order,
                "shift": format_fraction(r.shift),
                "fixed_dim": r.fixed_dim,
                "centralizer_dim": r.centralizer_dim,
                "orbit_size": r.orbit_size,
            }
            for r in weight_sectors(cfg.group, cfg.weights, cfg.max_order)
        ]
        return {"kind": "weights", "rows": rows}
    raise CommandError("the sectors command needs a 'space' section")


def _products(cfg: JobConfig) -> tuple[dict, int]:
    if not cfg.classes:
        raise CommandError("the product command needs a nonempty 'classes' section")
    by_name = {c["name"]: c["class"] for c in cfg.classes}
    names = [c["name"] for c in cfg.classes]
    pairs = cfg.products
    if pairs is None:
        pairs = [(a, b) for i, a in enumerate(names) for b in names[i:]]
    rows, failures = [], 0
    for left, right in pairs:
        a, b = by_name[left], by_name[right]
        try:
            prod = ecs_product(a, b, cfg.graph)
        except GKMError as exc:
            rows.append({"left": left, "right": right, "error": str(exc)})
            failures += 1
            continue
        row = {
            "left": left,
            "right": right,
            "sector": prod.sector.t.to_strings(),
            "values": {n: p.to_json() for n, p in zip(cfg.graph.names, prod.values)},
            "oracle_ok": matches(oracle_product(a, b, cfg.graph), prod),
        }
        if a.degree is not None and b.degree is not None:
            audit = degree_audit(a, b, cfg.graph, prod)
            row["degree"] = [
                {"vertex": d.vertex, "degree": format_fraction(d.product_degree), "ok": d.ok} for d in audit
            ]
            row["degree_ok"] = all(d.ok for d in audit)
        else:
            row["degree_ok"] = None
        failures += (not row["oracle_ok"]) + (row["degree_ok"] is False)
        rows.append(row)
    return {"rows": rows}, failures


def _verify(cfg: JobConfig, jobs: int) -> tuple[dict, int]:
    suite = resolve_suite(cfg.suite, cfg.group if "group" in cfg.raw else None, cfg.graph)
    results = run_suite(suite, cfg.seed, jobs=jobs)
    summary = summarize(results)
    return {"results": [r.to_json() for r in results], "summary": summary}, summary["failed"]


def _comparison(cfg: JobConfig) -> dict:
    rows = []
    for pg, ph in cfg.compare["pairs"]:
        res = group_comparison(cfg.group, cfg.compare["h_group"], pg, ph)
        row = {"pair": pg.to_strings(), "h_pair": ph.to_strings() if ph else None}
        for key, v in res.items():
            row[key] = {
                "weights": {",".join(map(str, lam)): format_fraction(c) for lam, c in v.weights.items()},
                "trivial_rank": v.trivial,
                "shifts": [format_fraction(s) for s in v.shifts],
                "net_shift": format_fraction(v.net_shift),
            }
        rows.append(row)
    return {"rows": rows}


def run_command(command: str, cfg: JobConfig, jobs: int = 1) -> tuple[dict, int]:
    """Payload and number of failed checks for one command."""
    if command == "sectors":
        return _sectors(cfg), 0
    if command == "product":
        return _products(cfg)
    if command == "verify":
        return _verify(cfg, jobs)
    if command == "report":
        payload, failures = {}, 0
        if cfg.graph is not None or cfg.weights is not None:
            payload["sectors"] = _sectors(cfg)
        if cfg.classes:
            payload["products"], f = _products(cfg)
            failures += f
        if cfg.compare:
            payload["group_comparison"] = _comparison(cfg)
        payload["verify"], f = _verify(cfg, jobs)
        return payload, failures + f
    raise CommandError(f"unknown command {command!r}")


# --- rendering --------------------------------------------------------------


def _csv_tables(command: str, payload: dict) -> list[tuple[str, list[str], list[list]]]:
    tables = []
    sec = payload if command == "sectors" else payload.get("sectors")
    if sec:
        if sec["kind"] == "gkm":
            rows = [
                [" ".join(r["t"]), r["order"], i, " ".join(c["vertices"]), c["shift"], c["dim"]]
                for r in sec["rows"]
                for i, c in enumerate(r["components"])
            ]
            tables.append(("sectors", ["t", "order", "component", "vertices", "shift", "dim"], rows))
        else:
            keys = ["t", "order", "shift", "fixed_dim", "centralizer_dim", "orbit_size"]
            rows = [[" ".join(r["t"])] + [r[k] for k in keys[1:]] for r in sec["rows"]]
            tables.append(("sectors", keys, rows))
    prod = payload if command == "product" else payload.get("products")
    if prod:
        rows = []
        for r in prod["rows"]:
            if "error" in r:
                rows.append([r["left"], r["right"], "", "", "", "", "", r["error"]])
                continue
            for v, poly in r["values"].items():
                value = " + ".join(f"{c}*[{m}]" for m, c in poly.items()) or "0"
                rows.append([r["left"], r["right"], " ".join(r["sector"]), v, value, r["oracle_ok"], r["degree_ok"], ""])
        tables.append(("products", ["left", "right", "sector", "vertex", "value", "oracle_ok", "degree_ok", "error"], rows))
    ver = payload if command == "verify" else payload.get("verify")
    if ver:
        rows = [[r["check"], r["target"], r["instances"], r["passed"], r["failed"]] for r in ver["results"]]
        tables.append(("verify", ["check", "target", "instances", "passed", "failed"], rows))
    return tables


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return dump_json(report)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    multi = report["command"] == "report"
    for name, header, rows in _csv_tables(report["command"], report["payload"]):
        writer.writerow((["section"] if multi else []) + header)
        for row in rows:
            writer.writerow(([name] if multi else []) + [str(x) for x in row])
    return buf.getvalue()


def build_report(command: str, cfg: JobConfig, jobs: int = 1, timing: bool = False) -> tuple[dict, int]:
    start = time.perf_counter()
    payload, failures = run_command(command, cfg, jobs)
    echo = dict(cfg.raw)
    echo["seed"] = cfg.seed
    echo["max_order"] = cfg.max_order
    report = {
        "tool": "ecsring",
        "version": __version__,
        "command": command,
        "config": echo,
        "payload": payload,
        "failures": failures,
    }
    if timing:
        report["wall_time"] = round(time.perf_counter() - start, 3)
    return report, failures


# --- entry point ------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ecsring", description="Equivariant stringy product computations.")
    parser.add_argument("--version", action="version", version=f"ecsring {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON job file (defaults to an empty job)")
        p.add_argument("--seed", type=int, help="seed for randomized suites")
        p.add_argument("--max-order", type=int, help="largest element order to enumerate")
        p.add_argument("--format", choices=("json", "csv"), help="output format")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for suites")
        p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identity)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else parse_config("{}")
        if args.seed is not None:
            if args.seed < 0:
                raise CommandError("--seed must be nonnegative")
            cfg.seed = args.seed
        if args.max_order is not None:
            if args.max_order < 1:
                raise CommandError("--max-order must be at least 1")
            cfg.max_order = args.max_order
        if args.jobs < 1:
            raise CommandError("--jobs must be at least 1")
        report, failures = build_report(args.command, cfg, args.jobs, args.timing)
    except (ConfigError, CommandError, SuiteError) as exc:
        print(f"ecsring: error: {exc}", file=sys.stderr)
        return 2
    fmt = args.format or cfg.output_format
    text = render(report, fmt)
    out = args.out or cfg.output_path
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    if failures:
        print(f"ecsring: {failures} check(s) failed", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
