import json
import subprocess
import sys

import pytest

from typeii import cli
from typeii.unprojection import Parameters, generic_ring


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_unproject_std12_with_oracle(capsys):
    code, out, _ = run(["unproject", "-k", "1", "-n", "2", "--spec", "std12", "--oracle"], capsys)
    assert code == cli.EXIT_OK
    assert "oracle: EQUAL" in out
    assert "counts: I_X=1, f^a=2, f^b=2, g^a=0, g^b=1, non-I_X=5" in out


def test_output_is_byte_identical_across_runs(capsys):
    argv = ["verify", "-k", "1", "-n", "2", "--suite", "all"]
    first = run(argv, capsys)
    second = run(argv, capsys)
    assert first == second and first[0] == cli.EXIT_OK


def test_structured_output(capsys):
    code, out, _ = run(["hilbert", "--builtin", "twisted-cubic", "--format", "structured"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["numerator"] == [1, 2]
    assert doc["k_polynomial"] == [1, 0, -3, 2]
    assert doc["palindromic"] is False


def test_hilbert_of_x_squared(capsys):
    code, out, _ = run(["hilbert", "--ring", "x", "--gen", "x^2"], capsys)
    assert code == 0
    assert "numerator: 1 + t\n" in out
    assert "K-polynomial: 1 - t^2\n" in out


def test_generate_structured_lists_minors(capsys):
    _, out, _ = run(["generate", "-k", "1", "-n", "2", "--format", "structured"], capsys)
    doc = json.loads(out)
    assert len(doc["minors"]) == 6 and doc["minors"][0]["columns"] == [1, 2]


@pytest.mark.parametrize("argv", [
    ["generate", "-k", "0", "-n", "2"],
    ["generate", "-k", "1", "-n", "1"],
    ["unproject", "-k", "1", "-n", "2", "--spec", "nowhere.subst"],
    ["unproject", "-k", "1", "-n", "3", "--spec", "std12"],
    ["hilbert", "--ring", "x", "--gen", "x^"],
    ["hilbert"],
])
def test_bad_input_exit_code(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == cli.EXIT_INPUT
    assert err.startswith("error:") and out == ""


def test_substitution_error_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.subst"
    bad.write_text("w_1_1 = a_1_1\nw_1_2 = a_1_1 +* z\n")
    code, _, err = run(["unproject", "-k", "1", "-n", "2", "--spec", str(bad)], capsys)
    assert code == cli.EXIT_INPUT
    assert "line 2, column 16" in err


def test_all_zero_specialization_is_a_genericity_failure(tmp_path, capsys):
    zero = tmp_path / "zero.subst"
    names = [v for v in generic_ring(Parameters(1, 2)).names if v.startswith("w_")]
    zero.write_text("".join(f"{v} = 0\n" for v in names))
    code, _, err = run(["unproject", "-k", "1", "-n", "2", "--spec", str(zero)], capsys)
    assert code == cli.EXIT_GENERIC
    assert "genericity" in err


def test_budget_one_exits_three(capsys):
    code, _, err = run(["unproject", "-k", "1", "-n", "2", "--spec", "std12", "--budget", "1"], capsys)
    assert code == cli.EXIT_BUDGET and "budget" in err


def test_inhomogeneous_hilbert_exits_five(capsys):
    code, _, _ = run(["hilbert", "--ring", "x, y", "--gen", "x^2 + y"], capsys)
    assert code == cli.EXIT_GRADING


def test_config_precedence(tmp_path, monkeypatch):
    conf = tmp_path / "job.json"
    conf.write_text(json.dumps({"budget": 7, "format": "structured", "k": 1, "n": 2}))
    parser = cli.build_parser()
    cfg = cli.resolve_config(parser.parse_args(["generate", "--config", str(conf)]), environ={})
    assert (cfg.budget, cfg.format, cfg.k) == (7, "structured", 1)
    cfg = cli.resolve_config(parser.parse_args(["generate", "--config", str(conf)]),
                             environ={cli.BUDGET_ENV: "11"})
    assert cfg.budget == 11
    cfg = cli.resolve_config(parser.parse_args(["generate", "--config", str(conf), "--budget", "13"]),
                             environ={cli.BUDGET_ENV: "11"})
    assert cfg.budget == 13


def test_config_rejects_unknown_keys(tmp_path, capsys):
    conf = tmp_path / "job.json"
    conf.write_text(json.dumps({"colour": "red"}))
    code, _, err = run(["generate", "--config", str(conf)], capsys)
    assert code == cli.EXIT_INPUT and "colour" in err


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "out.txt"
    code, out, _ = run(["hilbert", "--builtin", "twisted-cubic", "-o", str(dest)], capsys)
    assert code == 0 and out == ""
    assert "palindromic: no" in dest.read_text()


def test_ideal_file(tmp_path, capsys):
    f = tmp_path / "ideal.txt"
    f.write_text("ring: x, y:2\n# a weighted hypersurface\nx^4 - y^2\n")
    code, out, _ = run(["hilbert", "--ideal-file", str(f)], capsys)
    assert code == 0 and "palindromic: yes" in out


def test_verify_lemma_suite(capsys):
    code, out, _ = run(["verify", "--suite", "lemma", "--kmax", "2", "--nmax", "3"], capsys)
    assert code == 0
    assert "negative-controls: 12/12 mutated identities rejected" in out
    assert out.rstrip().endswith("summary: 13 passed, 0 failed, 0 skipped")


def test_environment_budget_via_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "typeii", "unproject", "-k", "1", "-n", "2", "--spec", "std12"],
        env={"TYPEII_STEP_BUDGET": "1", "PATH": ""}, capture_output=True, text=True)
    assert proc.returncode == cli.EXIT_BUDGET
