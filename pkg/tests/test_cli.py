import json

import pytest

from gentlekit.cli import main
from gentlekit.goldens import NINE_VERTEX_CURVE


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_cohomology_report(capsys):
    code, rep = run_json(capsys, "cohomology", "--algebra", "nine_vertex", "--complex", NINE_VERTEX_CURVE)
    assert code == 0 and rep["hl"] == 3 and rep["diff"] == []
    table = {d["n"]: d["dims"] for d in rep["truncation"]["degrees"]}
    assert table == {-3: {}, -2: {"6": 1, "7": 1}, -1: {"3": 2, "4": 1}, 0: {"1": 2, "9": 1}}
    strings = {d["n"]: d["strings"] for d in rep["truncation"]["degrees"]}
    assert sorted(strings[-1]) == ["a3", "e(3)"] and sorted(strings[0]) == ["a9", "e(1)"]


def test_reports_are_byte_stable(capsys):
    argv = ("nogaps", "--algebra", "kronecker", "--max-len", "6")
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    cert = json.loads(first[1])
    assert cert["gap_free"] and cert["achieved"] == list(range(1, 10))


def test_resolve(capsys):
    code, rep = run_json(capsys, "resolve", "--algebra", "nine_vertex", "--string", "e(1)")
    assert code == 0
    assert rep["component_dims"] == {"-3": 2, "-2": 4, "-1": 4, "0": 3}
    assert rep["projective_dimension"] == 3


def test_draw_svg(capsys):
    code, out = run(capsys, "draw", "--algebra", "nine_vertex", "--string", "~a9.a1")
    assert code == 0
    assert out.count('class="node"') == 3 and out.count('class="arrow"') == 2


def test_hl_and_reduce(capsys):
    code, rep = run_json(capsys, "hl", "--algebra", "kronecker", "--band", "band[a.~b]", "--n", "2", "--lam", "2")
    assert code == 0 and rep["hl"] == 4
    code, rep = run_json(capsys, "reduce-hl", "--algebra", "nine_vertex", "--complex", NINE_VERTEX_CURVE)
    assert code == 0 and (rep["hl_before"], rep["hl_after"]) == (3, 2)
    code, rep = run_json(capsys, "reduce-hl", "--algebra", "kronecker", "--complex", "[0] e(2)")
    assert code == 1 and rep["error"]["kind"] == "validation"


def test_nakayama(capsys):
    code, rep = run_json(capsys, "nakayama", "--algebra", "kronecker", "--all", "--max-len", "2")
    assert code == 0 and len(rep["witnesses"]) == 6 + 4
    code, rep = run_json(capsys, "nakayama", "--algebra", "nine_vertex", "--string", "e(1)")
    assert code == 0 and rep["witnesses"][0]["d"] == 1


def test_validation_errors_exit_one(capsys, tmp_path):
    bad = tmp_path / "bad.quiver"
    bad.write_text("vertex 1\nvertex 2\narrow a : 1 -> 2\narrow b : 1 -> 2\narrow c : 1 -> 2\n")
    code, rep = run_json(capsys, "validate", "--algebra", str(bad))
    assert code == 1 and rep["error"]["clause"] == "valency"
    code, rep = run_json(capsys, "validate", "--algebra", "nine_vertex", "--string", "a1.a2")
    assert code == 1 and rep["error"]["type"] == "StringError"


def test_missing_files_exit_three(capsys, tmp_path):
    code, rep = run_json(capsys, "validate", "--algebra", str(tmp_path / "missing.quiver"))
    assert code == 3 and rep["error"]["kind"] == "io"
    code, rep = run_json(capsys, "cohomology", "--algebra", "nine_vertex", "--complex", "@" + str(tmp_path / "none"))
    assert code == 3


def test_files_in_and_out(capsys, tmp_path):
    src = tmp_path / "curve.txt"
    src.write_text(NINE_VERTEX_CURVE + "\n")
    out = tmp_path / "report.json"
    code, _ = run(capsys, "hl", "--algebra", "nine_vertex", "--complex", "@" + str(src), "--out", str(out))
    assert code == 0 and json.loads(out.read_text())["hl"] == 3


def test_selftest_and_fuzz(capsys):
    code, rep = run_json(capsys, "selftest")
    assert code == 0 and rep["passed"] and len(rep["checks"]) == 4
    code, rep = run_json(capsys, "fuzz", "--seed", "12345", "--count", "3")
    assert code == 0 and rep["seed"] == 12345 and rep["passed"]


def test_seed_range(capsys):
    code, rep = run_json(capsys, "fuzz", "--seed", str(2 ** 64))
    assert code == 1


def test_mismatch_exits_two(capsys, monkeypatch):
    import gentlekit.cli as cli

    def broken(q, h, decompose=True):
        report = cli.cohomology_oracle(q, cli.assemble(q, h))
        report.degrees[0].dims["x"] = 1
        return report

    monkeypatch.setattr(cli, "cohomology_truncation", broken)
    code, rep = run_json(capsys, "cohomology", "--algebra", "nine_vertex", "--complex", NINE_VERTEX_CURVE)
    assert code == 2 and rep["mismatch"] and rep["diff"]


def test_help_lists_commands(capsys):
    with pytest.raises(SystemExit):
        main(["--help"])
    out = capsys.readouterr().out
    for name in ("validate", "resolve", "cohomology", "hl", "reduce-hl", "nogaps", "nakayama", "draw", "selftest"):
        assert name in out
