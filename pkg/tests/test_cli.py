import json
from fractions import Fraction

import pytest

from backend.api.main import main
from backend.utils.helpers import format_decimal, format_duration, format_exact, merge_settings
from config.settings import settings


def run(capsys, *argv):
    code = main(["--no-progress", *argv])
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_sturm(capsys):
    code, payload = run_json(capsys, "sturm", "--level", "576")
    assert code == 0
    assert payload["bound"] == 192
    assert payload["index"] == 1152


def test_sturm_text(capsys):
    code, out = run(capsys, "--format", "text", "sturm", "--level", "576")
    assert code == 0
    assert out.startswith("sturm_bound(k=2, N=576) = 192")


def test_expand(capsys):
    code, payload = run_json(capsys, "expand", "eta(12z)^2*eta(48z)^2", "--terms", "10")
    assert code == 0
    series = payload["series"]
    assert series["valuation"] == 5
    assert series["truncation"] == 15
    assert len(series["coeffs"]) == 10
    assert series["coeffs"][0] == "1"


@pytest.mark.parametrize("spec, exit_code", [
    ("eta(z", 2),
    ("eta(z)^1", 3),
])
def test_expand_errors(capsys, spec, exit_code):
    code, payload = run_json(capsys, "expand", spec)
    assert code == exit_code
    assert payload["exit_code"] == exit_code
    assert payload["success"] is False


def test_usage_error_exits_with_2():
    with pytest.raises(SystemExit) as info:
        main(["verify", "--case", "9"])
    assert info.value.code == 2


def test_unknown_log_level_exits_with_2(capsys):
    code, payload = run_json(capsys, "--log-level", "bogus", "sturm", "--level", "576")
    assert code == 2
    assert payload["error_type"] == "ParseError"
    assert "bogus" in payload["error"]


def test_verify_small_case(capsys, tmp_path, monkeypatch):
    monkeypatch.setattr(settings, "OUTPUT_DIR", tmp_path)
    code, payload = run_json(capsys, "--output", "case1.json", "verify", "--case", "1")
    assert code == 0
    assert payload["equal"]
    assert payload["bound"] == 12
    assert json.loads((tmp_path / "case1.json").read_text())["case"] == 1


def test_verify_with_missing_fixtures(capsys, tmp_path):
    code, payload = run_json(capsys, "--fixtures", str(tmp_path), "verify", "--case", "4")
    assert code == 4
    assert payload["error_type"] == "FixtureError"


def test_hecke_non_lacunary_b(capsys):
    code, payload = run_json(capsys, "hecke", "--b", "5", "--terms", "300")
    assert code == 0
    assert payload["level"] == 720
    assert payload["input_truncation"] == 23 * 300
    assert payload["output_truncation"] == 300
    assert payload["sturm_bound"] == 288
    assert payload["vanishes_through_bound"] is False


def test_hecke_short_output_is_undecided(capsys):
    code, payload = run_json(capsys, "hecke", "--b", "1", "--terms", "10")
    assert code == 0
    assert payload["vanishes_through_bound"] is None


def test_density(capsys):
    code, payload = run_json(capsys, "density", "--b", "1", "--x", "100")
    assert code == 0
    assert payload["mode"] == "support_progression"
    [point] = payload["points"]
    assert point["x"] == 100
    assert point["total"] == 9


def test_density_limit(capsys):
    code, _ = run_json(capsys, "density", "--b", "1", "--x", str(settings.DENSITY_X_MAX + 1))
    assert code == 3


def test_scan_text(capsys):
    code, out = run(capsys, "--format", "text", "scan", "--b-max", "4")
    assert code == 0
    assert out.strip().splitlines()[-1] == "lacunary: {1,2,3,4}"


def test_scan_defaults():
    assert settings.get_scan_defaults("full")["start_truncation"] is None
    assert settings.get_scan_defaults("adaptive")["start_truncation"] == settings.SCAN_START_TRUNCATION
    with pytest.raises(ValueError):
        settings.get_scan_defaults("sideways")


def test_helpers():
    assert format_exact(Fraction(6, 14)) == "3/7"
    assert format_exact(4) == "4"
    assert format_decimal(Fraction(1, 3)) == "0.333333"
    assert format_duration(75) == "1m 15.0s"
    merged = merge_settings({"mode": "full", "b_max": 175}, {"b_max": 10, "mode": None})
    assert merged == {"mode": "full", "b_max": 10}
