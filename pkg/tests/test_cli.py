import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from mixwreath import cli
from mixwreath.cli import ConfigError, emit_report, load_config, main, run_config

SCEN = Path(__file__).resolve().parent.parent / "scenarios"
HEADLINE = str(SCEN / "headline.toml")

BASE = """name = "t"
field = "Q"
generators = 2
degree = 3
variety_X = ["y*v1*v2"]
variety_Theta = ["[v1,v2]"]
"""


def write(tmp_path, body, name="c.toml"):
    p = tmp_path / name
    p.write_text(body)
    return str(p)


@pytest.mark.parametrize("path", sorted(SCEN.glob("*.toml")), ids=lambda p: p.stem)
def test_shipped_scenarios_pass(path, capsys):
    assert main(["verify", str(path)]) == 0
    assert "overall PASS" in capsys.readouterr().out


def test_headline_report_content():
    rep = run_config(HEADLINE)
    assert rep["passed"]
    assert [c["check"] for c in rep["checks"]] == ["theorem", "lemma3", "proposition", "corollary1",
                                                   "wreath_def1", "dims"]
    thm = rep["checks"][0]
    assert [row["kernel"] for row in thm["degrees"]] == [0, 0, 0, 0]
    assert [row["domain"] for row in thm["degrees"]] == [1, 2, 4, 8]


def test_empty_checks(tmp_path, capsys):
    path = write(tmp_path, BASE + "checks = []\n")
    rep = run_config(path)
    assert rep["checks"] == [] and rep["passed"]
    assert main(["verify", path, "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["checks"] == []
    assert emit_report({}, "text") == b""
    assert json.loads(emit_report({}, "json")) == {}


def test_parse_error_location(tmp_path, capsys):
    path = write(tmp_path, BASE.replace('"y*v1*v2"', '"y*v1*+"') + 'checks = ["theorem"]\n')
    assert main(["verify", path]) == 2
    err = capsys.readouterr().err
    assert "c.toml:5:" in err and "unexpected '+'" in err


@pytest.mark.parametrize("body,match", [
    (BASE + 'checks = ["theorem"]\nbogus = 1\n', "unknown keys"),
    (BASE + 'checks = ["nope"]\n', "nope"),
    (BASE.replace('"Q"', '"Fp:6"') + 'checks = ["theorem"]\n', "prime"),
    (BASE.replace("degree = 3", "degree = 0") + 'checks = ["theorem"]\n', "degree"),
    ("name = \n", "line 1"),
    (BASE + 'ideal_generators = ["x1"]\nchecks = []\n', "variety_Theta"),
])
def test_config_errors(tmp_path, body, match):
    with pytest.raises(ConfigError, match=match):
        run_config(write(tmp_path, body))


def test_proposition_defaults_to_generators(tmp_path):
    rep = run_config(write(tmp_path, BASE + 'checks = ["proposition"]\n'))
    assert rep["checks"][0]["Y"] == ["x1", "x2"] and rep["passed"]


def test_missing_file_exit_2(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "absent.toml")]) == 2


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 2


def test_failed_verdict_exit_1(monkeypatch, capsys):
    real = cli.run_check

    def broken(run, name):
        r = real(run, name)
        if name == "lemma3":
            r["passed"] = False
        return r

    monkeypatch.setattr(cli, "run_check", broken)
    assert main(["verify", HEADLINE]) == 1
    out = capsys.readouterr().out
    assert "[lemma3] FAIL" in out and "overall FAIL" in out


def test_json_round_trip(capsys):
    rep = run_config(HEADLINE)
    data = json.loads(emit_report(rep, "json"))
    rep.pop("seconds")
    assert data == rep
    assert list(data) == ["tool", "version", "name", "field", "generators", "degree", "passed", "checks"]


def test_json_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", HEADLINE, "--format", "json", "-o", str(a)]) == 0
    assert main(["verify", HEADLINE, "--format", "json", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert not [f for f in os.listdir(tmp_path) if f.startswith(".mixwreath-")]


def test_jobs_matches_serial():
    serial = emit_report(run_config(HEADLINE), "json")
    parallel = emit_report(run_config(HEADLINE, jobs=3), "json")
    assert serial == parallel


def test_overrides():
    rep = run_config(HEADLINE, field="Fp:11", degree=2)
    assert rep["field"] == "GF(11)" or "11" in rep["field"]
    assert rep["degree"] == 2 and rep["passed"]


def test_cap_aborts(capsys):
    assert main(["verify", HEADLINE, "--cap", "10"]) == 2
    assert "estimated basis size" in capsys.readouterr().err
    assert main(["verify", HEADLINE, "--degree", "10"]) == 2


def test_dims_command(capsys):
    assert main(["dims", HEADLINE]) == 0
    out = capsys.readouterr().out
    assert "[dims] PASS" in out and "[theorem]" not in out


def test_wreath_table(capsys):
    assert main(["wreath-table", HEADLINE, "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["basis"]) == 1 + 4 + 11 + 24
    assert data["basis"][0]["label"] == "1 (x) 1"
    assert main(["wreath-table", HEADLINE]) == 0
    text = capsys.readouterr().out
    assert text.startswith("# basis (40)")


def test_load_config_fields():
    cfg = load_config(HEADLINE)
    assert cfg.generators == 2 and cfg.degree == 3
    assert cfg.proposition_Y == ["x1 + x2"]


def test_module_entry_point(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run([sys.executable, "-m", "mixwreath", "verify", HEADLINE, "--format", "json",
                           "-o", str(out)], capture_output=True)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["passed"]
