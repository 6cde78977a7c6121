import json
import subprocess
import sys

import pytest

from nuclei.cli import run

MIMIC = {
    "carrier": ["f", "q", "h", "g"],
    "axioms": [{"from": ["q"], "to": "g"}, {"from": ["h"], "to": "g"}, {"from": ["f"], "to": "g"}],
    "rules": [{"premises": [{"from": ["f"], "to": "q"}], "conclusion": {"from": [], "to": "h"}}],
    "nucleus": {"f": "f", "q": "g", "h": "g", "g": "g"},
}
NOT_A_NUCLEUS = {"carrier": ["a", "b"], "nucleus": {"a": "b", "b": "b"}}


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, data in {"mimic": MIMIC, "bad": NOT_A_NUCLEUS, "plain": {"carrier": ["a"]}}.items():
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(data))
        paths[name] = str(path)
    (tmp_path / "broken.json").write_text("{")
    paths["broken"] = str(tmp_path / "broken.json")
    return paths


def invoke(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# (argv, exit code, text expected somewhere in stdout)
GOLDEN = [
    (["prove", "--logic", "i", "|- p | ~p"], 1, "Unprovable"),
    (["prove", "--logic", "c", "|- p | ~p"], 0, "Provable"),
    (["prove", "--logic", "m", "F |- q"], 1, "1 worlds"),
    (["prove", "--logic", "i", "F |- q"], 0, "Provable"),
    (["prove", "--logic", "p", "p, p -> q |- q"], 0, "Provable"),
    (["translate", "--nucleus", "df", "p -> q"], 0, "(p -> q) | F\n"),
    (["translate", "--nucleus", "glivenko", "p"], 0, "~~p\n"),
    (["translate", "--nucleus", "deduction:r", "p"], 0, "r -> p\n"),
    (["conserve", "--check", "glivenko", "--samples", "1000", "--seed", "7"], 0, "1000/1000"),
    (["conserve", "--check", "peirce", "--samples", "50"], 0, "passed"),
    (["campaign", "--trials", "50", "--seed", "2"], 0, "passed"),
    (["campaign", "--trials", "20", "--kind", "all"], 0, "intermediate"),
]


@pytest.mark.parametrize("argv, code, expected", GOLDEN)
def test_golden(capsys, argv, code, expected):
    got, out, err = invoke(capsys, argv)
    assert got == code, err
    assert expected in out


def test_excluded_middle_countermodel_has_two_worlds(capsys):
    code, out, _ = invoke(capsys, ["prove", "--logic", "i", "--format", "json", "|- p | ~p"])
    data = json.loads(out)
    assert code == 1 and data["verdict"] == "Unprovable"
    assert data["countermodel"]["worlds"] == [0, 1]


def test_abstract_commands(capsys, files):
    code, out, _ = invoke(capsys, ["abstract", "--file", files["mimic"], "--format", "json"])
    assert code == 0 and json.loads(out)["relation"]["generators"]["g"] == [["f"], ["q"], ["h"], ["g"]]
    code, out, _ = invoke(capsys, ["abstract", "--file", files["mimic"], "--nucleus-check"])
    assert code == 0 and "True" in out
    code, out, _ = invoke(capsys, ["abstract", "--file", files["mimic"], "--conservation", "--format", "json"])
    data = json.loads(out)["conservation"]
    assert code == 0 and data["equal"] is False and data["biconditional_ok"] is True
    code, out, _ = invoke(capsys, ["abstract", "--file", files["bad"], "--nucleus-check", "--format", "json"])
    assert code == 1 and json.loads(out)["nucleus"]["rj_violations"] == ["a"]
    code, out, _ = invoke(capsys, ["abstract", "--file", files["bad"], "--conservation"])
    assert code == 1


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["prove"],
        ["prove", "p |"],
        ["prove", "--logic", "z", "p"],
        ["translate", "--nucleus", "kuroda", "p"],
        ["translate", "--nucleus", "deduction:", "p"],
        ["translate", "--nucleus", "df", "p &"],
        ["conserve", "--check", "nope"],
        ["conserve", "--check", "df", "--samples", "0"],
        ["campaign", "--trials", "x"],
        ["abstract", "--file", "/nonexistent.json"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = invoke(capsys, argv)
    assert code == 2 and out == "" and err


def test_abstract_input_errors(capsys, files):
    assert invoke(capsys, ["abstract", "--file", files["broken"]])[0] == 2
    assert invoke(capsys, ["abstract", "--file", files["plain"], "--nucleus-check"])[0] == 2


def test_parse_error_mentions_offset(capsys):
    code, _, err = invoke(capsys, ["prove", "p | "])
    assert code == 2 and "offset 4" in err


def test_json_reports_are_byte_identical(capsys):
    argv = ["conserve", "--check", "df", "--samples", "300", "--seed", "11", "--format", "json"]
    first = invoke(capsys, argv)[1]
    second = invoke(capsys, argv)[1]
    assert first == second
    argv = ["campaign", "--trials", "100", "--seed", "4", "--kind", "all", "--format", "json"]
    assert invoke(capsys, argv)[1] == invoke(capsys, argv)[1]


def test_seed_defaults_to_zero(capsys, monkeypatch):
    monkeypatch.delenv("CI_STRICT", raising=False)
    a = invoke(capsys, ["conserve", "--check", "peirce", "--samples", "20", "--format", "json"])[1]
    b = invoke(capsys, ["conserve", "--check", "peirce", "--samples", "20", "--seed", "0", "--format", "json"])[1]
    assert a == b and json.loads(a)["seed"] == 0


def test_ci_strict_requires_seed(capsys, monkeypatch):
    monkeypatch.setenv("CI_STRICT", "1")
    code, _, err = invoke(capsys, ["campaign", "--trials", "3"])
    assert code == 2 and "--seed" in err
    assert invoke(capsys, ["campaign", "--trials", "3", "--seed", "1"])[0] == 0
    # commands without randomness are unaffected
    assert invoke(capsys, ["translate", "--nucleus", "df", "p"])[0] == 0


def test_output_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = invoke(capsys, ["translate", "--nucleus", "df", "p", "--format", "json", "-o", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text()) == {"input": "p", "nucleus": "df", "output": "p | F"}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nuclei", "translate", "--nucleus", "df", "p -> q"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "(p -> q) | F\n"
