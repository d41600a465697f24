"""Job configuration files.

A configuration is a JSON object::

    {
      "group": "A2",                       # label, square matrix, or
                                           # {"simple_roots": ..., "coroots": ...}
      "space": {"preset": "CP2"},          # or {"vertices": ..., "edges": ...}
                                           # or {"weights": [[1, 0], ...]}
      "classes": [{"name": "a", "sector": ["1/2", "0"], "values": "1"}],
      "products": [["a", "a"]],
      "suite": {...},                      # see ecsring.suite
      "max_order": 3,
      "seed": 0,
      "output": {"path": "report.json", "format": "json"},
      "compare": {"h_group": "A1", "pairs": [[["1/4"], ["1/4"]]]}
    }

``compare`` lists pairs in ``group`` and an extra factor ``H``; the report
shows the correction class for ``G`` and for ``G x H`` side by side.

Every key is optional. Validation errors carry the line of the offending key.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .gkm import EquivariantClass, GKMGraph, build_sector, point_graph, projective_space
from .poly import Poly
from .root_datum import RootDatum, RootDatumError, build_root_datum
from .torus import DEFAULT_MAX_ORDER, CommutingTuple, TorusElement, parse_fraction
from .weights import WeightRep

KNOWN_KEYS = {"group", "space", "classes", "products", "suite", "max_order", "seed", "output", "compare"}
FORMATS = ("json", "csv")


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<config>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}" if line else source
        super().__init__(f"{where}: {message}")


@dataclass
class JobConfig:
    raw: dict
    group: RootDatum | None = None
    graph: GKMGraph | None = None
    weights: WeightRep | None = None
    classes: list[dict] = field(default_factory=list)
    products: list[tuple[str, str]] | None = None
    suite: dict | None = None
    max_order: int = 3
    seed: int = 0
    output_path: str | None = None
    output_format: str = "json"
    compare: dict | None = None

    @property
    def rank(self) -> int | None:
        if self.group is not None:
            return self.group.rank
        if self.graph is not None:
            return self.graph.rank
        if self.weights is not None:
            return self.weights.rank
        return None


class _Locator:
    """Maps a key path to the line where its key appears in the source."""

    def __init__(self, text: str):
        self.text = text

    def line(self, path: tuple) -> int | None:
        pos, found = 0, None
        for key in path:
            if isinstance(key, int):
                continue
            m = re.compile(r'"' + re.escape(str(key)) + r'"\s*:').search(self.text, pos)
            if not m:
                break
            pos, found = m.start(), m.start()
        if found is None:
            return 1 if self.text else None
        return self.text.count("\n", 0, found) + 1


def _path_str(path: tuple) -> str:
    out = ""
    for k in path:
        out += f"[{k}]" if isinstance(k, int) else (f".{k}" if out else str(k))
    return out


def load_config(path: str | Path) -> JobConfig:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read configuration: {exc.strerror}", source=str(p)) from None
    return parse_config(text, source=str(p))


def parse_config(text: str, source: str = "<config>") -> JobConfig:
    try:
        raw = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg} (column {exc.colno})", exc.lineno, source) from None
    loc = _Locator(text)

    def fail(msg: str, *path):
        prefix = f"{_path_str(path)}: " if path else ""
        raise ConfigError(prefix + msg, loc.line(path), source)

    if not isinstance(raw, dict):
        fail("top level must be an object")
    for key in raw:
        if key not in KNOWN_KEYS:
            fail(f"unknown key (expected one of {', '.join(sorted(KNOWN_KEYS))})", key)

    cfg = JobConfig(raw=raw)

    if "group" in raw:
        try:
            cfg.group = build_root_datum(raw["group"])
        except (RootDatumError, TypeError, ValueError) as exc:
            fail(str(exc), "group")

    if "space" in raw:
        space = raw["space"]
        if not isinstance(space, dict):
            fail("must be an object", "space")
        if "preset" in space:
            cfg.graph = _preset(space["preset"], fail)
        elif "vertices" in space:
            cfg.graph = _graph(space, fail)
        elif "weights" in space:
            cfg.weights = _weight_rep(space["weights"], space.get("rank", cfg.group.rank if cfg.group else None), fail)
        else:
            fail("needs one of 'preset', 'vertices' or 'weights'", "space")

    if cfg.graph is not None:
        if cfg.group is None:
            cfg.group = build_root_datum(f"T{cfg.graph.rank}")
        elif not cfg.group.is_abelian or cfg.group.rank != cfg.graph.rank:
            fail(f"a GKM space needs a torus of rank {cfg.graph.rank}", "group")
    if cfg.weights is not None:
        if cfg.group is None:
            cfg.group = build_root_datum(f"T{cfg.weights.rank}")
        elif cfg.group.rank != cfg.weights.rank:
            fail(f"weights have length {cfg.weights.rank} but the group has rank {cfg.group.rank}", "space", "weights")

    for key, lo in (("max_order", 1), ("seed", 0)):
        if key in raw:
            v = raw[key]
            if not isinstance(v, int) or isinstance(v, bool) or v < lo:
                fail(f"must be an integer >= {lo}", key)
            setattr(cfg, key, v)
    if cfg.max_order > DEFAULT_MAX_ORDER:
        fail(f"must be at most {DEFAULT_MAX_ORDER}", "max_order")

    if "classes" in raw:
        cfg.classes = _classes(raw["classes"], cfg, fail)
    if "products" in raw:
        names = {c["name"] for c in cfg.classes}
        prods = raw["products"]
        if not isinstance(prods, list):
            fail("must be a list of [name, name] pairs", "products")
        cfg.products = []
        for i, pr in enumerate(prods):
            if not (isinstance(pr, list) and len(pr) == 2 and all(isinstance(x, str) for x in pr)):
                fail("must be a [name, name] pair", "products", i)
            for x in pr:
                if x not in names:
                    fail(f"unknown class {x!r}", "products", i)
            cfg.products.append((pr[0], pr[1]))

    if "suite" in raw:
        if not isinstance(raw["suite"], dict):
            fail("must be an object", "suite")
        cfg.suite = raw["suite"]

    if "compare" in raw:
        cfg.compare = _compare(raw["compare"], cfg, fail)

    if "output" in raw:
        out = raw["output"]
        if not isinstance(out, dict):
            fail("must be an object", "output")
        if "format" in out:
            if out["format"] not in FORMATS:
                fail(f"must be one of {', '.join(FORMATS)}", "output", "format")
            cfg.output_format = out["format"]
        if "path" in out:
            if not isinstance(out["path"], str):
                fail("must be a string", "output", "path")
            cfg.output_path = out["path"]
    return cfg


def _preset(name, fail) -> GKMGraph:
    if name == "point":
        return point_graph(0)
    m = re.fullmatch(r"CP(\d+)", str(name))
    if not m:
        fail(f"unknown preset {name!r} (use 'point' or 'CP<n>')", "space", "preset")
    return projective_space(int(m.group(1)))


def _int_vector(v, rank, fail, *path) -> tuple[int, ...]:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        fail("must be a list of integers", *path)
    if rank is not None and len(v) != rank:
        fail(f"has length {len(v)}, expected {rank}", *path)
    return tuple(v)


def _first_length(ws) -> int:
    if not ws:
        return 0
    w = ws[0]["weight"] if isinstance(ws[0], dict) and "weight" in ws[0] else ws[0]
    return len(w) if isinstance(w, list) else 0


def _weight_line(item, rank, fail, *path) -> tuple[tuple[int, ...], int]:
    """A weight given as an integer list or as ``{"weight": [...], "mult": k}``."""
    if isinstance(item, dict):
        if "weight" not in item:
            fail("a weight object needs 'weight'", *path)
        mult = item.get("mult", 1)
        if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
            fail("'mult' must be a positive integer", *path)
        return _int_vector(item["weight"], rank, fail, *path), mult
    return _int_vector(item, rank, fail, *path), 1


def _weight_rep(ws, rank, fail) -> WeightRep:
    if not isinstance(ws, list):
        fail("must be a list of integer vectors", "space", "weights")
    if rank is None:
        rank = _first_length(ws)
    lines = [_weight_line(w, rank, fail, "space", "weights", i) for i, w in enumerate(ws)]
    return WeightRep(lines, rank=rank)


def _graph(space: dict, fail) -> GKMGraph:
    verts = space["vertices"]
    if not isinstance(verts, list) or not verts:
        fail("must be a nonempty list", "space", "vertices")
    rank = space.get("rank")
    names, tangent = [], []
    for i, v in enumerate(verts):
        if not isinstance(v, dict) or "name" not in v or "weights" not in v:
            fail("each vertex needs 'name' and 'weights'", "space", "vertices", i)
        ws = v["weights"]
        if not isinstance(ws, list):
            fail("must be a list", "space", "vertices", i, "weights")
        if rank is None:
            rank = _first_length(ws)
        lines = [_weight_line(w, rank, fail, "space", "vertices", i, "weights") for w in ws]
        names.append(str(v["name"]))
        tangent.append(WeightRep(lines, rank=rank))
    edges = []
    for i, e in enumerate(space.get("edges", [])):
        if not (isinstance(e, list) and len(e) == 3):
            fail("each edge is [from, to, weight]", "space", "edges", i)
        u, v, lam = e
        for end in (u, v):
            if end not in names:
                fail(f"unknown vertex {end!r}", "space", "edges", i)
        edges.append((names.index(u), names.index(v), _int_vector(lam, rank, fail, "space", "edges", i)))
    try:
        return GKMGraph(rank=rank, names=tuple(names), tangent=tuple(tangent), edges=tuple(edges))
    except ValueError as exc:
        fail(str(exc), "space")


def _classes(items, cfg: JobConfig, fail) -> list[dict]:
    if not isinstance(items, list):
        fail("must be a list", "classes")
    if cfg.graph is None:
        fail("classes need a GKM space", "classes")
    seen, out = set(), []
    for i, c in enumerate(items):
        if not isinstance(c, dict) or not {"name", "sector"} <= set(c):
            fail("each class needs 'name' and 'sector'", "classes", i)
        if c["name"] in seen:
            fail(f"duplicate class name {c['name']!r}", "classes", i)
        seen.add(c["name"])
        sec = c["sector"]
        if not isinstance(sec, list) or len(sec) != cfg.graph.rank:
            fail(f"must list {cfg.graph.rank} rationals", "classes", i, "sector")
        try:
            TorusElement(sec)
        except (TypeError, ValueError) as exc:
            fail(str(exc), "classes", i, "sector")
        vals = c.get("values", "1")
        if isinstance(vals, dict):
            for name in vals:
                if name not in cfg.graph.names:
                    fail(f"unknown vertex {name!r}", "classes", i, "values")
        elif not isinstance(vals, (str, int)) or isinstance(vals, bool):
            fail("must be a constant or a map from vertex names to polynomials", "classes", i, "values")
        try:
            sector = build_sector(cfg.graph, TorusElement(sec))
            if isinstance(vals, dict):
                polys = tuple(
                    Poly.from_json(cfg.graph.rank, vals.get(name, "0")) for name in cfg.graph.names
                )
            else:
                polys = tuple(Poly.const(cfg.graph.rank, parse_fraction(vals)) for _ in cfg.graph.names)
            cls = EquivariantClass(sector, polys)
        except (ValueError, TypeError) as exc:
            fail(str(exc), "classes", i, "values")
        out.append({"name": c["name"], "class": cls})
    return out


def _compare(desc, cfg: JobConfig, fail) -> dict:
    if not isinstance(desc, dict) or "h_group" not in desc or "pairs" not in desc:
        fail("needs 'h_group' and 'pairs'", "compare")
    if cfg.group is None:
        fail("needs a top-level group", "compare")
    try:
        h = build_root_datum(desc["h_group"])
    except (RootDatumError, TypeError, ValueError) as exc:
        fail(str(exc), "compare", "h_group")

    def pairs(key, rank):
        out = []
        items = desc[key]
        if not isinstance(items, list):
            fail("must be a list of pairs", "compare", key)
        for i, pr in enumerate(items):
            if not (isinstance(pr, list) and len(pr) == 2):
                fail("each entry is a pair of torus elements", "compare", key, i)
            try:
                elems = [TorusElement(e) for e in pr]
            except (TypeError, ValueError) as exc:
                fail(str(exc), "compare", key, i)
            if any(e.rank != rank for e in elems):
                fail(f"elements must have {rank} coordinates", "compare", key, i)
            out.append(CommutingTuple(elems))
        return out

    g_pairs = pairs("pairs", cfg.group.rank)
    h_pairs = pairs("h_pairs", h.rank) if "h_pairs" in desc else [None] * len(g_pairs)
    if len(h_pairs) != len(g_pairs):
        fail("must have as many entries as 'pairs'", "compare", "h_pairs")
    return {"h_group": h, "pairs": list(zip(g_pairs, h_pairs))}


def dump_json(obj: Any) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
