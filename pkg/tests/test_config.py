import json
from pathlib import Path

import pytest

from ecsring.config import ConfigError, dump_json, load_config, parse_config

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


@pytest.mark.parametrize("path", sorted(CONFIGS.glob("*.json")), ids=lambda p: p.name)
def test_shipped_configs_parse(path):
    load_config(path)


def test_empty_config_defaults():
    cfg = parse_config("")
    assert cfg.max_order == 3 and cfg.seed == 0 and cfg.suite is None
    assert cfg.output_format == "json"


def test_gkm_space_defaults_to_torus():
    cfg = parse_config('{"space": {"preset": "CP2"}}')
    assert cfg.group.label == "T2" and cfg.graph.nvertices == 3


def test_weight_objects():
    cfg = parse_config('{"group": "A1", "space": {"weights": [{"weight": [2], "mult": 2}, [-2]]}}')
    assert cfg.weights.dim == 3


def test_custom_graph():
    text = json.dumps({
        "space": {
            "vertices": [{"name": "n", "weights": [[1]]}, {"name": "s", "weights": [[-1]]}],
            "edges": [["n", "s", [1]]],
        }
    })
    cfg = parse_config(text)
    assert cfg.graph.names == ("n", "s")


def line_of(exc_info):
    return exc_info.value.line


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ('{\n  "seed": 1,\n  "bogus": 2\n}', 3, "unknown key"),
        ('{\n  "max_order": 0\n}', 2, ">= 1"),
        ('{\n  "group": "A1",\n  "space": {\n    "weights": [[1, 2]]\n  }\n}', 4, "length"),
        ('{\n  "group": "A2",\n  "space": {"preset": "CP2"}\n}', 2, "torus"),
        ('{\n  "space": {"preset": "CP1"},\n  "classes": [\n    {"name": "a", "sector": ["0"],\n     "values": {"p0": "1"}}\n  ]\n}', 5, "divisible"),
        ('{\n  "space": {"preset": "CP1"},\n  "classes": [{"name": "a", "sector": ["0"]}],\n  "products": [["a", "b"]]\n}', 4, "unknown class"),
        ('{\n  "output": {\n    "format": "xml"\n  }\n}', 3, "json, csv"),
        ('{\n  "seed": 1,\n  "group": 5,\n', 4, "invalid JSON"),
    ],
)
def test_errors_are_line_anchored(text, line, fragment):
    with pytest.raises(ConfigError) as exc:
        parse_config(text, source="job.json")
    assert line_of(exc) == line
    assert fragment in str(exc.value)
    assert str(exc.value).startswith(f"job.json:{line}:")


def test_corrupted_root_datum_rejected():
    text = '{\n  "group": {"simple_roots": [[2, -1]], "coroots": [[0, 1]]}\n}'
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert exc.value.line == 2


def test_missing_file():
    with pytest.raises(ConfigError):
        load_config("/nonexistent/job.json")


def test_dump_json_is_canonical():
    assert dump_json({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
