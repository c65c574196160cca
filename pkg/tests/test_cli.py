"""
End-to-end tests of the command line interface.
"""

import json
from fractions import Fraction

import pytest

from plmagnus import __version__
from plmagnus.algebra.engine import PostLieAlgebra
from plmagnus.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.parametrize("mode", ["postlie", "prelie"])
@pytest.mark.parametrize("order", [2, 3, 4])
def test_chi_json_matches_golden(capsys, golden, mode, order):
    code, out, _ = run(capsys, "chi", "--order", str(order), "--mode", mode, "--format", "json")
    assert code == 0
    assert out == golden(f"chi_{mode}_order{order}.json")


def test_chi_output_is_deterministic(capsys):
    first = run(capsys, "chi", "--order", "5", "--format", "json")
    second = run(capsys, "chi", "--order", "5", "--format", "json")
    assert first[0] == second[0] == 0
    assert first[1] == second[1]


def test_chi_text(capsys):
    code, out, _ = run(capsys, "chi", "--order", "2")
    assert code == 0
    assert out == "1\t[]\n-1/2\t[[]]\n"


def test_chi_writes_file(capsys, tmp_path, golden):
    path = tmp_path / "out" / "chi.json"
    code, out, _ = run(capsys, "chi", "--order", "4", "--format", "json", "--out", str(path))
    assert code == 0
    assert out == ""
    with open(path, newline="") as f:
        assert f.read() == golden("chi_postlie_order4.json")


def test_chi_uses_config_file(capsys, tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"truncation_order": 2, "mode": "prelie"}))
    code, out, _ = run(capsys, "--config", str(path), "chi")
    assert code == 0
    assert out == "1\t[]\n-1/2\t[[]]\n"


@pytest.mark.parametrize("argv", [["chi", "--order", "12"], ["chi", "--order", "0"], ["chi", "--format", "csv"]])
def test_chi_rejects_bad_settings(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "Error" in err or "error" in err


def test_table_gl(capsys):
    code, out, _ = run(capsys, "table", "gl", "[]", "[]")
    assert code == 0
    assert out == "1\t[[]]\n1\t[] []\n"


def test_table_post(capsys):
    code, out, _ = run(capsys, "table", "post", "[]", "[[]]")
    assert code == 0
    assert out == "1\t[[[]]]\n1\t[[][]]\n"


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", "theta", "[] []", "--format", "json", "--order", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["operation"] == "theta"
    assert payload["order"] == 3
    assert payload["terms"] == [[["[[]]"], 1, 1], [["[]", "[]"], 1, 1]]


def test_table_prelie_commutes(capsys):
    code, out, _ = run(capsys, "table", "bracket", "[]", "[[]]", "--mode", "prelie")
    assert code == 0
    assert out == "0\n"


def test_table_parses_combinations(capsys):
    code, out, _ = run(capsys, "table", "concat", "[] + -1/2*[[]]", "[]", "--order", "3")
    assert code == 0
    assert out == "1\t[] []\n-1/2\t[[]] []\n"


@pytest.mark.parametrize(
    "argv",
    [
        ["table", "chi", "[] []"],
        ["table", "gl", "[]"],
        ["table", "theta", "[[]"],
        ["table", "nope", "[]"],
        ["table", "log", "[]"],
    ],
)
def test_table_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_table_parse_error_reports_position(capsys):
    code, _, err = run(capsys, "table", "theta", "[] [x]")
    assert code == 2
    assert "position 4" in err


def test_no_command_is_a_usage_error(capsys):
    code, out, _ = run(capsys)
    assert code == 2
    assert "usage" in out


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0
    assert __version__ in out


def test_missing_config_file(capsys, tmp_path):
    code, _, err = run(capsys, "--config", str(tmp_path / "absent.json"), "chi")
    assert code == 2
    assert "Config file not found" in err


def test_verify_selected_groups(capsys):
    code, out, _ = run(capsys, "verify", "--only", "exact,trees")
    assert code == 0
    assert out.splitlines()[-1] == "7/7 suites passed"


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--only", "exact", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert {item["group"] for item in payload} == {"exact"}
    assert all(item["passed"] for item in payload)


def test_verify_unknown_group(capsys):
    code, _, _ = run(capsys, "verify", "--only", "exact,bogus")
    assert code == 2


def test_verify_detects_broken_gl_product(capsys, mocker):
    original = PostLieAlgebra._gl_words

    def mutated(self, left, right):
        result = dict(original(self, left, right))
        if len(left) == 1 and len(right) == 1:
            word = self._concat(left, right)
            result[word] = -result.get(word, Fraction(0))
        return result

    mocker.patch.object(PostLieAlgebra, "_gl_words", mutated)
    code, out, _ = run(capsys, "verify", "--only", "postlie", "--order", "4")
    assert code == 1
    assert "FAIL  GL associativity" in out


def test_magnus_solve_csv(capsys, tmp_path):
    code, out, _ = run(capsys, "magnus-solve", "--problem", "commuting", "--k", "1", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "h,error,fitted_slope"
    assert len(lines) == 5
    assert all(line.endswith(",exact") for line in lines[1:])
    assert (tmp_path / "commuting_k1.csv").read_text() == out
    assert json.loads((tmp_path / "commuting_k1.json").read_text())["fitted_slope"] == "exact"


def test_magnus_solve_text_summary(capsys, tmp_path):
    code, out, _ = run(capsys, "magnus-solve", "--problem", "xty", "--k", "2", "--steps", "0.25,0.125,0.0625")
    assert code == 0
    assert out.startswith("problem: xty")
    assert "fitted slope:" in out
    assert "oracle error estimate:" in out
    assert (tmp_path / "xty_k2.csv").exists()


def test_magnus_solve_writes_prefix(capsys, tmp_path):
    prefix = tmp_path / "runs" / "xty"
    code, _, _ = run(
        capsys, "magnus-solve", "--problem", "xty", "--k", "3", "--steps", "0.5,0.25,0.125", "--out", str(prefix)
    )
    assert code == 0
    assert (tmp_path / "runs" / "xty.csv").read_text().startswith("h,error,fitted_slope\n")
    report = json.loads((tmp_path / "runs" / "xty.json").read_text())
    assert report["k"] == 3
    assert [row["h"] for row in report["rows"]] == [0.5, 0.25, 0.125]
    assert report["oracle_error_estimate"] > 0
    assert not (tmp_path / "xty_k3.csv").exists()


@pytest.mark.parametrize(
    "argv",
    [
        ["magnus-solve", "--problem", "pendulum"],
        ["magnus-solve", "--problem", "poly:1,2;3"],
        ["magnus-solve", "--k", "4"],
        ["magnus-solve", "--steps", "0.3"],
        ["magnus-solve", "--steps", "0.5,0.25"],
        ["magnus-solve", "--steps", "0.5,0.25,0.2"],
        ["magnus-solve", "--steps", "a,b"],
        ["magnus-solve", "--horizon", "0"],
    ],
)
def test_magnus_solve_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2
