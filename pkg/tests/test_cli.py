import os

import pytest

from spg.catalog import SurveyRecord, emit_revlex
from spg.cli import main, parse_matrix
from spg.matroid import Matroid


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_self_projecting(capsys):
    code, out, _ = run(capsys, "check", "2 4 ******")
    assert code == 0
    assert "self-projecting: yes" in out


def test_check_negative_verdict(capsys):
    code, out, _ = run(capsys, "check", "--rank", "2", "--n", "3", "--bases", "1,3 2,3")
    assert code == 1
    assert "self-projecting: no" in out
    assert "half-coloop: e=" in out


def test_check_parse_error(capsys):
    code, _, err = run(capsys, "check", "2 4 %%%%%%")
    assert code == 2
    assert "error" in err


def test_certify_witness(tmp_path, capsys):
    p = tmp_path / "m.txt"
    p.write_text("1 0 3/5 -4/5\n0 1 4/5 3/5\n", encoding="utf-8")
    code, out, _ = run(capsys, "certify", str(p))
    assert code == 0
    assert "witness:" in out and "stiefel residual zero: True" in out


def test_certify_refusal(tmp_path, capsys):
    p = tmp_path / "m.txt"
    p.write_text("1 0 1 2 0\n0 1 1 1 3\n1 1 0 2 1\n", encoding="utf-8")
    code, out, _ = run(capsys, "certify", str(p))
    assert code == 1
    assert "refused" in out


def test_certify_rank_deficient(tmp_path, capsys):
    p = tmp_path / "m.txt"
    p.write_text("1 2\n2 4\n", encoding="utf-8")
    code, _, err = run(capsys, "certify", str(p))
    assert code == 2


def test_rspace_and_records(capsys):
    code, out, _ = run(capsys, "rspace", emit_revlex(Matroid.uniform(2, 4), header=True))
    assert code == 0
    assert "dimension: 1" in out
    code, out, _ = run(
        capsys, "--format", "records", "rspace", emit_revlex(Matroid.uniform(2, 4), header=True)
    )
    assert code == 0
    rec = SurveyRecord.from_line(out.strip().splitlines()[-1])
    assert rec.r_dim == 1 and rec.s_dim is None


def test_sprspace(capsys):
    code, out, _ = run(capsys, "sprspace", emit_revlex(Matroid.uniform(2, 4), header=True))
    assert code == 0
    assert "dimension: 1" in out


def test_survey_counts_check(capsys):
    code, out, _ = run(capsys, "survey", "--rank", "2", "--n", "4..6",
                       "--check", "--counts-only")
    assert code == 0
    assert out.count("[OK]") == 3


def test_survey_single_n_histogram(capsys):
    code, out, _ = run(capsys, "--jobs", "2", "survey", "--rank", "2", "--n", "4")
    assert code == 0
    assert "(4,R)" in out and "(4,S)" in out and "verdicts" in out


def test_survey_rank4_needs_source(capsys):
    code, _, err = run(capsys, "survey", "--rank", "4", "--n", "8")
    assert code == 2
    assert "--source" in err


def test_survey_ingests_source(tmp_path, capsys):
    cat = tmp_path / "r2n4.txt"
    from spg.catalog import enumerate_rank2

    cat.write_text(
        "\n".join(emit_revlex(m) for m in enumerate_rank2(4)) + "\n", encoding="utf-8"
    )
    code, out, _ = run(capsys, "survey", "--rank", "4", "--n", "8",
                       "--source", str(cat), "--counts-only")
    # wrong-length lines are collected as errors, not fatal
    assert code == 0
    code, out, _ = run(
        capsys, "survey", "--rank", "2", "--n", "4", "--source", str(cat), "--counts-only"
    )
    assert "7 matroids" in out


def test_positroids_check(capsys):
    code, out, _ = run(capsys, "positroids", "--rank", "3", "--n", "6", "--check")
    assert code == 0
    assert "[OK]" in out


def test_tables(capsys):
    code, out, _ = run(capsys, "tables")
    assert code == 0
    assert "matroid counts" in out
    assert "positroid survey rows" in out
    code, out, _ = run(capsys, "tables", "--which", "5")
    assert "(3, 6)" in out or "(3,1" in out or "(3, " in out


def test_budget_env(monkeypatch, capsys):
    monkeypatch.setenv("SPG_BUDGET_SECONDS", "120")
    code, out, _ = run(capsys, "rspace", "2 4 ******")
    assert code == 0


def test_parse_matrix_errors():
    from spg.cli import InputError

    with pytest.raises(InputError):
        parse_matrix("")
    with pytest.raises(InputError):
        parse_matrix("1 2\n3\n")
    with pytest.raises(InputError):
        parse_matrix("1 x\n")
