"""Command line behavior and exit codes."""

import pytest

from loopkit import cli, varieties
from loopkit.core import dump_path, loads
from loopkit.tables import cyclic, dihedral
from loopkit.varieties import TheoremReport


@pytest.fixture()
def z4_file(tmp_path):
    path = tmp_path / "z4.loop"
    dump_path(cyclic(4), str(path))
    return str(path)


@pytest.fixture()
def s3_file(tmp_path):
    path = tmp_path / "s3.loop"
    dump_path(dihedral(3), str(path))
    return str(path)


@pytest.fixture()
def z16_file(tmp_path):
    path = tmp_path / "z16.loop"
    dump_path(cyclic(16), str(path))
    return str(path)


def test_list_varieties(capsys):
    assert cli.main(["--list-varieties"]) == 0
    out = capsys.readouterr().out
    assert "osborn:" in out
    assert "moufang:" in out


def test_no_command_is_usage_error(capsys):
    assert cli.main([]) == 1


def test_unknown_command_exits_one():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 1


def test_check_reports_structure(z4_file, capsys):
    assert cli.main(["check", z4_file]) == 0
    out = capsys.readouterr().out
    assert "order: 4" in out
    assert "associative: yes" in out
    assert "commutative: yes" in out
    assert "center: {0, 1, 2, 3}" in out
    assert "nilpotency class: 1" in out
    assert "gloop" not in out


def test_check_gloop_flag(z4_file, capsys):
    assert cli.main(["check", z4_file, "--gloop"]) == 0
    assert "gloop: yes" in capsys.readouterr().out


def test_check_missing_file(capsys):
    assert cli.main(["check", "does-not-exist.loop"]) == 1
    assert "error:" in capsys.readouterr().err


def test_check_corrupted_file(tmp_path, capsys):
    bad = tmp_path / "bad.loop"
    bad.write_text("3\n0 1 2\n1 2 0\n1 2 0\n")
    assert cli.main(["check", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "col" in err or "row" in err


def test_search_count_iso(capsys):
    assert cli.main(["search", "--order", "5", "--mode", "count-iso"]) == 0
    out = capsys.readouterr().out
    assert "found=6" in out
    assert "order=5" in out


def test_search_first_writes_witness(tmp_path, capsys):
    code = cli.main([
        "search", "--order", "6", "--require", "cc", "--forbid", "assoc",
        "--mode", "first", "--out", str(tmp_path),
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "wrote" in out
    witness = loads((tmp_path / "order6-0.loop").read_text())
    assert varieties.check_variety(witness, "cc")
    assert not varieties.check_variety(witness, "associative")


def test_search_count_mode_writes_nothing(tmp_path, capsys):
    code = cli.main(["search", "--order", "4", "--mode", "count", "--out", str(tmp_path)])
    assert code == 0
    assert "found=4" in capsys.readouterr().out
    assert list(tmp_path.iterdir()) == []


def test_search_unknown_variety(capsys):
    assert cli.main(["search", "--order", "4", "--require", "nope"]) == 1
    assert "error:" in capsys.readouterr().err


def test_search_budget_exceeded(capsys):
    assert cli.main(["search", "--order", "6", "--budget-nodes", "100"]) == 2
    assert "budget exceeded" in capsys.readouterr().err


def test_search_sharded_collect(tmp_path, capsys):
    code = cli.main([
        "search", "--order", "5", "--require", "commutative", "--mode", "collect",
        "--shards", "2", "--out", str(tmp_path),
    ])
    assert code == 0
    files = sorted(tmp_path.glob("*.loop"))
    assert len(files) == 6
    seen = {loads(f.read_text()) for f in files}
    assert len(seen) == 6


def test_verify_requires_input(capsys):
    assert cli.main(["verify"]) == 1


def test_verify_corpus_passes(z4_file, capsys):
    assert cli.main(["verify", z4_file, "--corpus", "3"]) == 0
    out = capsys.readouterr().out
    assert "z4 osborn_eightway_agreement PASS" in out
    assert "order3-0" in out
    assert "FAIL" not in out
    assert "checked 4 loops, 0 failures" in out


def test_verify_exit_three_on_failure(z4_file, capsys, monkeypatch):
    def fake(q, loop_id="loop", cap=0):
        return TheoremReport(loop_id, [("made_up_check", "FAIL")])

    monkeypatch.setattr(varieties, "verify_theorems", fake)
    assert cli.main(["verify", z4_file]) == 3
    out = capsys.readouterr().out
    assert "z4 made_up_check FAIL" in out


def test_verify_order16_gate_not_triggered_for_group(z16_file, capsys):
    assert cli.main(["verify", z16_file]) == 0
    out = capsys.readouterr().out
    assert "center_order_two" not in out


def test_verify_order16_gate_runs_when_proper(z16_file, capsys, monkeypatch):
    monkeypatch.setattr(varieties, "is_proper_osborn", lambda q: q.order == 16)
    code = cli.main(["verify", z16_file])
    out = capsys.readouterr().out
    assert "z16 center_order_two FAIL" in out
    assert "z16 fourth_power_translations no" in out
    assert code == 3


def test_construct_mul(capsys):
    assert cli.main(["construct", "--p", "2", "mul", "(1,3)", "(1,4)"]) == 0
    assert capsys.readouterr().out.strip() == "(0,14)"


def test_construct_divisions(capsys):
    assert cli.main(["construct", "--p", "2", "ldiv", "(1,0)", "(0,1)"]) == 0
    assert capsys.readouterr().out.strip() == "(3,0)"
    assert cli.main(["construct", "--p", "2", "rdiv", "(0,1)", "(3,0)"]) == 0
    assert capsys.readouterr().out.strip() == "(1,0)"


def test_construct_inner(capsys):
    assert cli.main(["construct", "--p", "2", "inner", "LL", "(1,0)", "(1,0)", "(0,1)"]) == 0
    out = capsys.readouterr().out.strip()
    assert out.startswith("(0,")


def test_construct_witness(capsys):
    assert cli.main(["construct", "--p", "2", "witness"]) == 0
    line = capsys.readouterr().out.strip()
    assert line == "x=(1,0) y=(1,0) s0=(0,1) preimage=(2,0)"


def test_construct_audit(capsys):
    assert cli.main(["construct", "--p", "3", "audit"]) == 0
    out = capsys.readouterr().out
    assert out.strip().endswith("0 violations")


def test_construct_bad_element(capsys):
    assert cli.main(["construct", "--p", "2", "mul", "(1;3)", "(1,4)"]) == 1
    assert cli.main(["construct", "--p", "2", "mul", "(1,3)"]) == 1
    assert cli.main(["construct", "--p", "4", "mul", "(1,3)", "(1,4)"]) == 1


def test_isotopes_of_group(z4_file, capsys):
    assert cli.main(["isotopes", z4_file]) == 0
    out = capsys.readouterr().out
    assert "principal isotopes: 16" in out
    assert "isomorphism classes: 1" in out
    assert "gloop: yes" in out


def test_quotient_by_named_subloop(s3_file, capsys):
    assert cli.main(["quotient", s3_file, "--by", "0,1,2"]) == 0
    out = capsys.readouterr().out
    assert loads(out).order == 2


def test_quotient_not_normal(s3_file, capsys):
    assert cli.main(["quotient", s3_file, "--by", "0,3"]) == 1
    assert "error:" in capsys.readouterr().err


def test_quotient_writes_file(s3_file, tmp_path, capsys):
    out_path = tmp_path / "quot.loop"
    assert cli.main(["quotient", s3_file, "--by", "center", "--out", str(out_path)]) == 0
    assert loads(out_path.read_text()).order == 6
