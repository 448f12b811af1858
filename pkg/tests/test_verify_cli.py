import json
import subprocess
import sys

import pytest

from hqkoebe.cli import UsageError, main, parse_complex
from hqkoebe.errors import ConfigError
from hqkoebe.verify import build_grid, load_config, report_passed, run_verify


@pytest.mark.parametrize("text, value", [
    ("0.3+0.4i", 0.3 + 0.4j), ("-0.5-1e-3i", -0.5 - 0.001j), ("0.25", 0.25), ("0.2i", 0.2j),
])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


def test_parse_complex_rejects_garbage():
    with pytest.raises(UsageError):
        parse_complex("1+2j")


def test_verify_coeffs_default_grid():
    rep = run_verify("coeffs")
    assert rep["suite"] == "coeffs"
    assert report_passed(rep)
    assert list(rep) == ["suite", "grid", "checks", "elapsed_ms"]
    assert list(rep["checks"][0]) == ["name", "params", "measured", "bound_or_expected", "tol", "pass", "suite"]


def test_verify_univalence_reports_witness():
    rep = run_verify("univalence", a=3, lam=0.5)
    assert report_passed(rep)
    names = {c["name"]: c for c in rep["checks"]}
    assert names["univalence_verdict"]["measured"] == "not_univalent"
    assert "witness" in names["witness_collision"]["params"]


def test_verify_threads_match_serial():
    a = run_verify("growth", {"a": ["1/2", 2], "lambda": [0, "1/2"]})
    b = run_verify("growth", {"a": ["1/2", 2], "lambda": [0, "1/2"]}, jobs=4)
    assert a["checks"] == b["checks"]


def test_config_errors(tmp_path):
    bad = tmp_path / "c.json"
    bad.write_text('{"lambda": [1.5]}')
    with pytest.raises(ConfigError):
        build_grid(load_config(bad))
    bad.write_text("not json")
    with pytest.raises(ConfigError):
        load_config(bad)
    with pytest.raises(ConfigError):
        run_verify("nonsense")


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["eval", "--a", "2", "--lambda", "0", "--z", "0.5+0i", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["f"].startswith("2.0") or out["f"].startswith("1.999")
    assert main(["eval", "--a", "2", "--z", "1.5"]) == 2
    assert main(["verify", "--suite", "coeffs", "--a", "1", "--lambda", "1/2"]) == 0
    cfg = tmp_path / "c.json"
    cfg.write_text('{"bogus": 1}')
    assert main(["verify", "--config", str(cfg)]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_cli_check_failure_exit_status(monkeypatch):
    import hqkoebe.verify as verify
    monkeypatch.setitem(verify._SUITE_FUNCS, "coeffs",
                        lambda a, lam, seed: [verify._check("forced", a, lam, 1, 0, 0, False)])
    assert main(["verify", "--suite", "coeffs", "--a", "1", "--lambda", "0"]) == 1


def test_cli_coeffs_exact(capsys):
    assert main(["coeffs", "--a", "2", "--lambda", "1/2", "--exact", "--order", "4", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["a_n"] == ["0", "1", "9/4", "15/4", "173/32"]
    assert out["closed_forms"]["b3"] == "3/4"


def test_cli_render_writes_file(tmp_path):
    out = tmp_path / "f.svg"
    assert main(["render", "--preset", "fig6", "-o", str(out)]) == 0
    assert out.read_text().startswith("<?xml")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hqkoebe", "univalence", "--a", "3", "--lambda", "0.5", "--json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["verdict"] == "not_univalent"
