import json

import pytest

from koszul_derham.app import build_parser, parse_degree_range, run_cli
from koszul_derham.config import get_settings
from koszul_derham.errors import InputError


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    monkeypatch.setenv("KDR_LOG_LEVEL", "WARNING")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def run(capsys, *argv):
    code = run_cli(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_quadric(capsys):
    code, out, _ = run(capsys, "verify", "x^2+y^2+z^2")
    assert code == 0
    report = json.loads(out)
    assert report["theorem"]["status"] == "verified"
    assert report["input"]["vars"] == ["x", "y", "z"]


def test_verify_singular_input(capsys):
    code, out, _ = run(capsys, "verify", "x^2*y", "--vars", "x,y,z")
    assert code == 4
    assert json.loads(out)["theorem"]["status"] == "hypothesis_not_met"


def test_syntax_error(capsys):
    code, out, err = run(capsys, "check", "x^2+")
    assert code == 2
    assert out == ""
    assert "reason=syntax_error position=5" in err


def test_not_homogeneous(capsys):
    code, _, err = run(capsys, "check", "x^2+y")
    assert code == 2
    assert "reason=not_homogeneous" in err


def test_check_weighted(capsys):
    code, out, _ = run(capsys, "check", "x^2+y^3+z^6", "--weights", "3,2,1")
    assert code == 0
    report = json.loads(out)
    assert report["checks"]["smooth_isolated"]
    assert report["milnor"]["top_degree"] == 6


def test_jkoszul_range(capsys):
    code, out, _ = run(capsys, "jkoszul", "x^2+y^2+z^2", "--p", "1", "--t-range", "0..4")
    assert code == 0
    assert json.loads(out)["dims"] == {"0": 0, "1": 0, "2": 1, "3": 0, "4": 0}


def test_jkoszul_rejects_bad_p(capsys):
    code, _, err = run(capsys, "jkoszul", "x^2+y^2+z^2", "--p", "5")
    assert code == 2
    assert "reason=bad_argument" in err


def test_derham(capsys):
    code, out, _ = run(capsys, "derham", "x^2+y^2+z^2", "--p", "2")
    assert code == 0
    entry = json.loads(out)["derham"]
    assert entry["dim"] == 1
    assert entry["filtration"]["saturation_index"] == 1


def test_derham_low_pole_cap(capsys):
    code, out, err = run(capsys, "derham", "x^2+y^2+z^2", "--p", "2", "--pole-cap", "1")
    assert code == 3
    assert json.loads(out)["derham"]["status"] == "not_stabilized"
    assert "reason=not_stabilized" in err


def test_milnor_table(capsys):
    code, out, _ = run(capsys, "milnor", "x^3+y^3+z^3", "--format", "table")
    assert code == 0
    assert "dim M_t" in out
    assert "x^3 + y^3 + z^3" in out


def test_selftest_command(capsys):
    get_settings.cache_clear()
    code, out, _ = run(capsys, "selftest", "x^2+y^2", "--seed", "2")
    assert code == 0
    assert json.loads(out)["status"] == "passed"


def test_bad_configuration(capsys, monkeypatch):
    monkeypatch.setenv("KDR_MODULAR_PRIME", "100")
    get_settings.cache_clear()
    code, _, err = run(capsys, "milnor", "x^2+y^2")
    assert code == 2
    assert "reason=configuration_error" in err


def test_degree_range_parsing():
    assert parse_degree_range("2..5") == (2, 5)
    for text in ("5..2", "3", "a..b"):
        with pytest.raises(InputError) as excinfo:
            parse_degree_range(text)
        assert excinfo.value.reason == "bad_range"


def test_t_and_t_range_are_exclusive():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["jkoszul", "x^2", "--p", "1", "--t", "1", "--t-range", "0..2"])


@pytest.mark.parametrize("argv, expected", [(["verify"], 2), (["frobnicate", "x"], 2), (["--help"], 0)])
def test_argument_errors_return_exit_codes(capsys, argv, expected):
    assert run_cli(argv) == expected
    capsys.readouterr()


@pytest.mark.parametrize("f", ["x", "x^2+y^2"])
def test_verify_needs_three_variables(capsys, f):
    code, out, _ = run(capsys, "verify", f)
    assert code == 4
    theorem = json.loads(out)["theorem"]
    assert theorem["status"] == "hypothesis_not_met"
    assert {"name": "n >= 3", "passed": False}.items() <= theorem["assertions"][0].items()
