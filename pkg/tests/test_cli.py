import configparser
import io
import json

import pytest

from lyapirreg.cli import main


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


def write_cfg(tmp_path, text):
    p = tmp_path / "cfg.ini"
    p.write_text(text)
    return str(p)


def test_print_defaults_round_trip(tmp_path):
    code, text = run(["print-defaults"])
    assert code == 0
    cp = configparser.ConfigParser()
    cp.read_string(text)
    assert set(cp.sections()) == {"ggs", "bowen", "cv"}
    cfg = write_cfg(tmp_path, text)
    assert run(["bowen", "--config", cfg, "--out", str(tmp_path / "o")])[0] == 0


@pytest.mark.parametrize("cmd,files", [
    ("ggs", ["ggs_series.csv", "ggs_verdict.json"]),
    ("bowen", ["bowen_passages.csv", "bowen_verdict.json"]),
    ("cv", ["cv_tables.csv", "cv_ftle.csv", "cv_verdict.json", "cv_birkhoff.csv"]),
    ("check-constants", ["cv_checks.csv"]),
])
def test_commands_pass_and_are_deterministic(tmp_path, cmd, files):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run([cmd, "--out", str(a)])[0] == 0
    assert run([cmd, "--out", str(b)])[0] == 0
    for f in files:
        assert (a / f).read_bytes() == (b / f).read_bytes()


def test_verdict_json(tmp_path):
    run(["cv", "--out", str(tmp_path)])
    rec = json.loads((tmp_path / "cv_verdict.json").read_text())
    assert rec["schema"] == "lyapirreg.verdict/1"
    assert rec["verdict"] == "irregular"
    assert rec["constants"] == {"k0": 4, "m_prime": 24, "k1": 28, "m0": 1}
    assert abs(rec["gap"] - rec["expected_gap"]) < 1e-3


def test_ggs_csv_header(tmp_path):
    run(["ggs", "--out", str(tmp_path)])
    first = (tmp_path / "ggs_series.csv").read_text().splitlines()[0]
    assert first == "schedule_name,d,time,exponent"


def test_cv_degenerate_note(tmp_path):
    cfg = write_cfg(tmp_path, "[cv]\nalpha = 1.15\nbeta = 1.15\n")
    code, text = run(["cv", "--config", cfg, "--out", str(tmp_path)])
    assert code == 0
    assert "degenerate" in text
    assert json.loads((tmp_path / "cv_verdict.json").read_text())["verdict"] == "regular"


def test_horseshoe_violation_exit_2(tmp_path, capsys):
    cfg = write_cfg(tmp_path, "[cv]\nlam = 0.2\n")
    code, _ = run(["cv", "--config", cfg, "--out", str(tmp_path)])
    assert code == 2
    assert "horseshoe" in capsys.readouterr().err


def test_xi_rejected(tmp_path):
    cfg = write_cfg(tmp_path, "[cv]\nxi = 1\n")
    assert run(["check-constants", "--config", cfg, "--out", str(tmp_path)])[0] == 2


def test_unknown_key_rejected(tmp_path):
    cfg = write_cfg(tmp_path, "[cv]\nbogus = 1\n")
    assert run(["cv", "--config", cfg, "--out", str(tmp_path)])[0] == 2
    cfg = write_cfg(tmp_path, "[other]\nx = 1\n")
    assert run(["cv", "--config", cfg, "--out", str(tmp_path)])[0] == 2


def test_check_constants_failure_exit_1(tmp_path):
    cfg = write_cfg(tmp_path, "[cv]\nalpha = 1.05\nbeta = 1.9\n")
    code, text = run(["check-constants", "--config", cfg, "--out", str(tmp_path)])
    assert code == 1
    assert "base rate" in text


def test_check_constants_suites_report_quadratic_bound(tmp_path):
    code, text = run(["check-constants", "--suites", "--out", str(tmp_path)])
    # the quadratic-term bound at m = m0 = 1 is violated for the defaults (see README)
    assert code == 1
    assert "quadratic term" in text
