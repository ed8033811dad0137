from __future__ import annotations

import pytest

from steiner import parse_factorization, parse_sts, validate_one_factorization, validate_sts, verify_extension
from steiner.cli import main
from steiner.corpus import corpus_dir, load_entry
from steiner.extension import certificate_from


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def porcelain(text):
    return dict(tok.split("=", 1) for line in text.splitlines() for tok in line.split(" ") if "=" in tok)


def test_make_and_verify_sts(capsys, tmp_path):
    out = tmp_path / "s7.sts"
    code, _, _ = run(capsys, "make-sts", "--kind", "cyclic", "--v", "7", "--base", "0,1,3", "--out", str(out))
    assert code == 0 and validate_sts(parse_sts(out.read_text()))
    code, text, _ = run(capsys, "verify-sts", str(out), "--porcelain")
    assert code == 0 and porcelain(text)["verdict"] == "pass"


def test_make_sts_bad_cyclic_is_fail(capsys, tmp_path):
    out = tmp_path / "s9.sts"
    code, text, _ = run(capsys, "make-sts", "--kind", "cyclic", "--v", "9", "--base", "0,1,3", "--out", str(out), "--porcelain")
    assert code == 1 and porcelain(text)["verdict"] == "fail"
    code, _, _ = run(capsys, "verify-sts", str(out))
    assert code == 1


def test_make_sts_to_stdout(capsys):
    code, out, err = run(capsys, "make-sts", "--kind", "bose", "--v", "9")
    assert code == 0 and out.startswith("STS n=9 b=12") and "pass" in err


def test_make_fac_and_verify(capsys, tmp_path):
    out = tmp_path / "f.fac"
    code, _, _ = run(capsys, "make-fac", "--points", "14..27", "--out", str(out))
    assert code == 0 and validate_one_factorization(parse_factorization(out.read_text()))
    code, text, _ = run(capsys, "verify-fac", str(out), "--porcelain")
    assert code == 0 and porcelain(text)["edges"] == "91"


def test_double(capsys, tmp_path):
    s, f, d = tmp_path / "s.sts", tmp_path / "f.fac", tmp_path / "d.sts"
    run(capsys, "make-sts", "--kind", "skolem", "--v", "13", "--out", str(s))
    run(capsys, "make-fac", "--points", "14..27", "--out", str(f))
    code, text, _ = run(capsys, "double", str(s), str(f), "--out", str(d), "--porcelain")
    assert code == 0 and porcelain(text)["blocks"] == "117"
    assert validate_sts(parse_sts(d.read_text()))


def test_double_mismatch_is_usage_error(capsys, tmp_path):
    s, f = tmp_path / "s.sts", tmp_path / "f.fac"
    run(capsys, "make-sts", "--kind", "cyclic", "--v", "7", "--base", "0,1,3", "--out", str(s))
    run(capsys, "make-fac", "--points", "14..27", "--out", str(f))
    code, _, err = run(capsys, "double", str(s), str(f))
    assert code == 3 and "13 factors" in err


@pytest.mark.parametrize(
    "args",
    [
        ["bogus"],
        ["make-sts", "--kind", "cyclic", "--v", "7"],
        ["make-sts", "--kind", "bose", "--v", "7"],
        ["make-fac", "--points", "14-27"],
        ["verify-sts", "/nonexistent.sts"],
        ["verify-table", "x"],
        ["spectrum", "a.sts", "--budget", "-1"],
    ],
)
def test_usage_errors(capsys, args):
    assert run(capsys, *args)[0] == 3


def test_parse_error_exit_3(capsys, tmp_path):
    bad = tmp_path / "bad.sts"
    bad.write_text("STS n=7 b=1\n1 2\n")
    code, _, err = run(capsys, "verify-sts", str(bad))
    assert code == 3 and "line 2" in err


def test_check_coloring(capsys, tmp_path):
    s, c = tmp_path / "s.sts", tmp_path / "c.cls"
    s.write_text("STS n=3 b=1\n1 2 3\n")
    c.write_text("CLASSES n=3 k=2\n1: 1 2\n2: 3\n")
    assert run(capsys, "check-coloring", str(s), str(c))[0] == 0
    c.write_text("CLASSES n=3 k=3\n1: 1\n2: 2\n3: 3\n")
    code, text, _ = run(capsys, "check-coloring", str(s), str(c), "--porcelain")
    assert code == 1 and porcelain(text)["polychromatic"] == "1"


def test_spectrum(capsys, tmp_path):
    s = tmp_path / "s.sts"
    run(capsys, "make-sts", "--kind", "cyclic", "--v", "7", "--base", "0,1,3", "--out", str(s))
    code, text, _ = run(capsys, "spectrum", str(s), "--porcelain")
    assert code == 0
    assert "feasible=3 lower=3 upper=3" in text.splitlines()


def test_spectrum_empty_is_fail(capsys, tmp_path):
    s = tmp_path / "s.sts"
    run(capsys, "make-sts", "--kind", "bose", "--v", "15", "--out", str(s))
    code, text, _ = run(capsys, "spectrum", str(s), "--porcelain")
    assert code == 1 and "feasible=none lower=none upper=none" in text


def test_spectrum_budget_rules(capsys, tmp_path):
    s = tmp_path / "s.sts"
    run(capsys, "make-sts", "--kind", "bose", "--v", "21", "--out", str(s))
    assert run(capsys, "spectrum", str(s))[0] == 3
    code, text, _ = run(capsys, "spectrum", str(s), "--budget", "3", "--porcelain")
    assert code == 2 and porcelain(text)["verdict"] == "unknown"


def test_extend_table16(capsys, tmp_path):
    out = tmp_path / "e.fac"
    cls = corpus_dir() / "bsts27_t16.cls"
    code, text, _ = run(capsys, "extend", "--classes", str(cls), "--v", "13", "--out", str(out), "--porcelain")
    assert code == 0 and porcelain(text)["verdict"] == "found"
    cert = certificate_from(load_entry(16).classes, parse_factorization(out.read_text()))
    assert verify_extension(cert)


def test_extend_budget_rules(capsys, tmp_path):
    cls = corpus_dir() / "bsts91_t22.cls"
    assert run(capsys, "extend", "--classes", str(cls), "--v", "45")[0] == 3
    code, text, _ = run(capsys, "extend", "--classes", str(cls), "--v", "45", "--budget", "5", "--porcelain")
    assert code == 2 and porcelain(text)["verdict"] == "unknown"


def test_extend_infeasible(capsys, tmp_path):
    cls = tmp_path / "c.cls"
    cls.write_text("CLASSES n=7 k=2\n1: 1 2 4 5 6 7\n2: 3\n")
    code, text, _ = run(capsys, "extend", "--classes", str(cls), "--v", "3", "--porcelain")
    assert code == 1 and porcelain(text)["verdict"] == "infeasible"


def test_reconstruct(capsys, tmp_path):
    out = tmp_path / "b.sts"
    cls = corpus_dir() / "bsts27_t16.cls"
    code, _, _ = run(capsys, "reconstruct", "--classes", str(cls), "--v", "13", "--out", str(out))
    assert code == 0 and validate_sts(parse_sts(out.read_text()))


def test_verify_table_16(capsys):
    code, text, _ = run(capsys, "verify-table", "16")
    assert code == 0
    assert "class sizes (6, 9, 12)" in text and "91 induced triples" in text and "pass" in text


def test_verify_table_22_echoes_errata(capsys):
    code, text, _ = run(capsys, "verify-table", "22", "--porcelain")
    assert code == 0
    assert any(line.startswith("table=22 errata=") for line in text.splitlines())


def test_verify_table_all(capsys):
    code, text, _ = run(capsys, "verify-table", "all", "--jobs", "2", "--porcelain")
    assert code == 0 and text.count("passed=yes") == 11


def test_corpus_env_override(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("STEINER_CORPUS_DIR", str(tmp_path))
    assert run(capsys, "verify-table", "16")[0] == 3
