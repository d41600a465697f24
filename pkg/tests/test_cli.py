import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from ecsring import __version__
from ecsring.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, obj, name="job.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj, indent=2) if not isinstance(obj, str) else obj)
    return str(p)


def test_trivial_action_single_row(capsys):
    code, out, _ = run(capsys, "sectors", "--config", str(CONFIGS / "trivial.json"))
    assert code == 0
    rows = json.loads(out)["payload"]["rows"]
    assert len(rows) == 1 and rows[0]["t"] == [] and rows[0]["shift"] == "0"


def test_cp1_sectors(capsys):
    code, out, _ = run(capsys, "sectors", "--config", str(CONFIGS / "cp1.json"))
    rep = json.loads(out)
    assert code == 0 and rep["version"] == __version__
    rows = rep["payload"]["rows"]
    assert [r["t"] for r in rows] == [["0"], ["1/2"]]
    assert [c["shift"] for c in rows[1]["components"]] == ["1/2", "1/2"]


def test_max_order_flag_overrides(capsys):
    _, out, _ = run(capsys, "sectors", "--config", str(CONFIGS / "cp1.json"), "--max-order", "3")
    rep = json.loads(out)
    assert rep["config"]["max_order"] == 3
    assert len(rep["payload"]["rows"]) == 4


def test_products(capsys):
    code, out, _ = run(capsys, "product", "--config", str(CONFIGS / "cp1.json"))
    assert code == 0
    rows = {(r["left"], r["right"]): r for r in json.loads(out)["payload"]["rows"]}
    tw = rows[("tw", "tw")]
    assert tw["sector"] == ["0"]
    assert tw["values"] == {"p0": {"1": "1"}, "p1": {"1": "-1"}}
    assert all(r["oracle_ok"] and r["degree_ok"] for r in rows.values())


def test_empty_suite_passes(capsys):
    code, out, _ = run(capsys, "verify", "--config", str(CONFIGS / "trivial.json"))
    assert code == 0
    assert json.loads(out)["payload"]["summary"]["instances"] == 0


def test_weight_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--config", str(CONFIGS / "a1_weights.json"), "--seed", "11")
    assert code == 0
    rep = json.loads(out)
    assert rep["config"]["seed"] == 11 and rep["failures"] == 0


def test_failing_suite_exits_one(tmp_path, capsys):
    cfg = write(tmp_path, {"suite": {"root_data": ["B2"], "checks": {"levi": 2}}})
    code, out, err = run(capsys, "verify", "--config", cfg)
    assert code == 1 and "failed" in err
    assert json.loads(out)["failures"] == 2


@pytest.mark.parametrize(
    "obj,argv",
    [
        ('{"group": {"simple_roots": [[2, -1]], "coroots": [[0, 1]]}}', ["sectors"]),
        ('{"max_order": "x"}', ["sectors"]),
        ('{"space": {"preset": "CP1"}}', ["product"]),
        ("{}", ["sectors"]),
        ('{"suite": {"checks": {"nope": 1}}}', ["verify"]),
        ("{}", ["verify", "--seed", "-1"]),
        ("{}", ["verify", "--jobs", "0"]),
    ],
)
def test_bad_input_exits_two(tmp_path, capsys, obj, argv):
    cfg = write(tmp_path, obj)
    code, out, err = run(capsys, argv[0], "--config", cfg, *argv[1:])
    assert code == 2 and out == "" and err.startswith("ecsring: error:")


def test_csv_output(capsys):
    code, out, _ = run(capsys, "report", "--config", str(CONFIGS / "cp1.json"), "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][0] == "section"
    assert {r[0] for r in rows if r[0] != "section"} == {"sectors", "products", "verify"}


def test_out_file_and_config_format(tmp_path, capsys):
    target = tmp_path / "rep.csv"
    cfg = write(tmp_path, {"space": {"preset": "CP1"}, "output": {"path": str(target), "format": "csv"}})
    code, out, _ = run(capsys, "sectors", "--config", cfg)
    assert code == 0 and out == ""
    assert target.read_text().splitlines()[0] == "t,order,component,vertices,shift,dim"


def test_compare_report(capsys):
    code, out, _ = run(capsys, "report", "--config", str(CONFIGS / "compare.json"))
    rows = json.loads(out)["payload"]["group_comparison"]["rows"]
    assert code == 0 and rows
    for r in rows:
        assert r["G"]["trivial_rank"] == r["GxH"]["trivial_rank"]


def test_reports_are_byte_identical(tmp_path):
    outs = []
    for i, jobs in enumerate(("1", "1", "2")):
        dest = tmp_path / f"r{i}.json"
        subprocess.run(
            [sys.executable, "-m", "ecsring", "report", "--config", str(CONFIGS / "cp2.json"), "--jobs", jobs, "--out", str(dest)],
            check=False,
        )
        outs.append(dest.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_timing_is_opt_in(capsys):
    _, out, _ = run(capsys, "sectors", "--config", str(CONFIGS / "cp1.json"), "--timing")
    assert "wall_time" in json.loads(out)
    _, out, _ = run(capsys, "sectors", "--config", str(CONFIGS / "cp1.json"))
    assert "wall_time" not in json.loads(out)
