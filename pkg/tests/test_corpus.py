from __future__ import annotations

import shutil

import pytest

from steiner import CorpusEntry, CorpusError, load_entry, verify_all, verify_table
from steiner.corpus import corpus_dir, load_manifest

ORDERS = {16: 27, 17: 27, 18: 43, 19: 43, 20: 43, 21: 43, 22: 91, 23: 99, 24: 99, 25: 99, 26: 99}
SIZES = {
    16: (6, 9, 12),
    17: (9, 6, 12),
    22: (8, 14, 25, 44),
    23: (1, 4, 16, 36, 42),
}


def test_manifest_lists_all_tables():
    m = load_manifest()
    assert sorted(m) == list(range(16, 27))
    for tid, line in m.items():
        assert 2 * line.v + 1 == ORDERS[tid]
        assert line.classes_file == f"bsts{ORDERS[tid]}_t{tid}.cls"
    assert m[22].errata and "30" in m[22].errata
    assert not m[16].errata


@pytest.mark.parametrize("tid", sorted(ORDERS))
def test_every_table_verifies(tid):
    e = load_entry(tid)
    rep = verify_table(e)
    v = e.base_order
    assert rep.passed, rep.summary()
    assert e.target_order == ORDERS[tid]
    assert rep.stats["induced_triples"] == v * (v + 1) // 2
    assert sum(rep.stats["patterns"].values()) == v * (v + 1) // 2
    if tid in SIZES:
        assert rep.stats["class_sizes"] == SIZES[tid]
    # classes holding new points show up in the statistics, the others never do
    for c, (new, touched) in enumerate(zip(rep.stats["new_point_classes"], rep.stats["class_triples"]), start=1):
        assert (new > 0) == (touched > 0), (tid, c)


def test_classes_without_new_points():
    rep = verify_table(load_entry(23))
    assert rep.stats["new_point_classes"][:2] == (0, 0)
    assert rep.stats["class_triples"][:2] == (0, 0)


def test_verify_all_parallel_order():
    serial = verify_all()
    parallel = verify_all(jobs=3)
    assert [t for t, _ in parallel] == list(range(16, 27))
    assert [(t, r.stats) for t, r in serial] == [(t, r.stats) for t, r in parallel]


def test_checksum_mismatch_detected(tmp_path, monkeypatch):
    d = tmp_path / "corpus"
    shutil.copytree(corpus_dir(), d)
    fac = d / "bsts27_t16.fac"
    fac.write_text(fac.read_text().replace("14-18", "14-19", 1))
    monkeypatch.setenv("STEINER_CORPUS_DIR", str(d))
    assert corpus_dir() == d
    with pytest.raises(CorpusError, match="checksum"):
        load_entry(16)
    load_entry(17)


def test_missing_table_and_manifest(tmp_path):
    with pytest.raises(CorpusError):
        load_entry(99)
    with pytest.raises(CorpusError):
        load_manifest(tmp_path)


def test_entry_invariants(table16):
    with pytest.raises(CorpusError):
        CorpusEntry(16, 29, 13, table16.classes, table16.factorization)
    with pytest.raises(CorpusError):
        CorpusEntry(16, 27, 13, table16.classes.restrict(range(1, 14)), table16.factorization)
