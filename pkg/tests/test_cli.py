import json
import os
import subprocess
import sys

import pytest

from trunsym.cli import UsageError, main, parse_char, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_parse_range():
    assert parse_range("3") == [3]
    assert parse_range("2..5") == [2, 3, 4, 5]
    assert parse_range("5,1,1") == [1, 5]
    for bad in ("5..2", "x", ""):
        with pytest.raises(UsageError):
            parse_range(bad)
    with pytest.raises(UsageError):
        parse_char("4")


def test_generators_mod_two(capsys):
    code, rep = run_json(capsys, "generators", "--n", "2", "--d", "2", "--char", "2")
    assert code == 0 and rep["verdict"] == "generates"
    assert [g["orbit_sum"] for g in rep["tables"]["generators"]] == ["P[3]", "P[4]", "P[3,3]"]


def test_generators_char_zero(capsys):
    code, rep = run_json(capsys, "generators", "--n", "3", "--d", "1")
    assert code == 0 and rep["verdict"] == "generates"
    assert [g["orbit_sum"] for g in rep["tables"]["generators"]] == ["P[2]", "P[3]", "P[4]"]
    assert rep["tables"]["min_generators"]["total"] == 3


def test_generators_trivial(capsys):
    code, out, _ = run(capsys, "generators", "--n", "1", "--d", "0")
    assert code == 0
    assert "generators: P[1]" in out and "verdict: generates" in out


def test_generators_partial(capsys):
    code, rep = run_json(capsys, "generators", "--n", "2", "--d", "2", "--max-degree", "3")
    assert code == 0 and rep["verdict"] == "partial (checked through 3)"


def test_generators_out_of_range_is_hypothesis_violation(capsys):
    code, _, err = run(capsys, "generators", "--n", "4", "--d", "1", "--char", "2")
    assert code == 3 and "hypothesis" in err


def test_socle_commands(capsys):
    code, rep = run_json(capsys, "socle", "--n", "2", "--d", "2", "--char", "2")
    assert code == 0 and rep["tables"]["dimension"] == 2
    assert sorted(e["degree"] for e in rep["tables"]["elements"]) == [3, 4]
    code, rep = run_json(capsys, "socle", "--n", "2", "--d", "1")
    assert rep["tables"]["dimension"] == 1 and rep["verdict"] == "complete_intersection"
    code, rep = run_json(capsys, "socle", "--n", "3", "--d", "2", "--char", "3")
    assert rep["tables"]["dimension"] >= 2


def test_series_commands(capsys):
    cases = [
        (["--kind", "exterior", "--n", "2", "--d", "1"], "1 + t^3 + t^5 + t^8"),
        (["--kind", "quotient", "--n", "2", "--d", "2"], "1 + t + 2t^2 + t^3 + t^4"),
        (["--kind", "flag", "--n", "2"], "1 + t^2"),
        (["--kind", "flag", "--n", "2", "--grading", "algebraic"], "1 + t"),
        (["--kind", "w", "--n", "2", "--d", "1"], "1 + t^2 + 2t^3 + 2t^5 + t^6 + t^8"),
        (["--kind", "quotient", "--n", "2", "--d", "1", "--grading", "complex"], "1 + t^2 + t^4"),
        (["--kind", "hilbert", "--n", "2", "--up-to", "4"], "1 + t + 2t^2 + 2t^3 + 3t^4 + O(t^5)"),
    ]
    for argv, expected in cases:
        code, out, _ = run(capsys, "series", *argv)
        assert code == 0
        assert out.strip().splitlines()[-1] == expected


def test_series_json(capsys):
    code, rep = run_json(capsys, "series", "--kind", "exterior", "--n", "2", "--d", "1")
    assert rep["tables"]["coefficients"] == [[0, 1], [3, 1], [5, 1], [8, 1]]


def test_series_errors(capsys):
    assert run(capsys, "series", "--kind", "w", "--n", "3", "--d", "1")[0] == 3
    assert run(capsys, "series", "--kind", "exterior", "--n", "2")[0] == 4
    assert run(capsys, "series", "--kind", "exterior", "--n", "2", "--d", "1", "--grading", "real")[0] == 4


def test_verify_thm1a(capsys):
    code, rep = run_json(capsys, "verify", "--case", "thm1a", "--n", "2..4", "--d", "1..3")
    assert code == 0 and rep["tables"]["summary"] == {"agree": 9}


def test_verify_serre(capsys):
    code, rep = run_json(capsys, "verify", "--case", "serre", "--n", "2..5", "--d", "1..5")
    assert code == 0
    for row in rep["tables"]["points"]:
        assert row["checks"]["collapses"] == (row["d"] >= row["n"] - 1)


def test_verify_cor(capsys):
    code, rep = run_json(capsys, "verify", "--case", "cor", "--char", "2", "--n", "2", "--d", "1..3")
    assert code == 0
    assert [r["checks"]["min_generators"] for r in rep["tables"]["points"]] == [3, 3, 3]


def test_verify_lists_violations(capsys):
    code, rep = run_json(capsys, "verify", "--case", "thm2b", "--char", "2", "--n", "2..3", "--d", "1..2")
    assert code == 3
    verdicts = {(r["n"], r["d"]): r["verdict"] for r in rep["tables"]["points"]}
    assert verdicts == {(2, 1): "agree", (2, 2): "agree", (3, 1): "hypothesis_violation", (3, 2): "agree"}


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "--case", "powers", "--n", "1..3", "--d", "0")
    assert code == 0
    assert out.strip().splitlines()[-1] == "summary: agree=3"


def test_usage_errors(capsys):
    assert run(capsys, "verify", "--case", "nope", "--n", "2", "--d", "1")[0] == 4
    assert run(capsys, "frobnicate")[0] == 4
    assert run(capsys, "--help")[0] == 0
    assert run(capsys, "socle", "--n", "2..3", "--d", "1")[0] == 4
    assert run(capsys, "socle", "--n", "2", "--d", "1", "--char", "6")[0] == 4


def test_timings_opt_in(capsys):
    _, rep = run_json(capsys, "socle", "--n", "2", "--d", "1")
    assert "timings" not in rep
    _, rep = run_json(capsys, "socle", "--n", "2", "--d", "1", "--timings")
    assert rep["timings"]["seconds"] >= 0


def _cli(args, **env):
    full = dict(os.environ, **env)
    res = subprocess.run([sys.executable, "-m", "trunsym", *args], capture_output=True, text=True, env=full)
    return res.returncode, res.stdout


VERIFY = ["verify", "--case", "thm1b", "--char", "2,3", "--n", "2..3", "--d", "1..2", "--format", "json"]


def test_json_is_byte_identical():
    first = _cli(VERIFY)
    assert first[0] == 0
    assert _cli(VERIFY) == first


def test_jit_flag_and_threads_do_not_change_output():
    base = _cli(VERIFY)
    assert _cli(VERIFY, TRUNSYM_DISABLE_JIT="1") == base
    assert _cli(VERIFY, TRUNSYM_THREADS="3") == base
