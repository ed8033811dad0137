"""The curated table corpus: colorings and factorizations of doubled systems.

Each entry is a ``.cls`` file (partition of ``1..2v+1``) plus a ``.fac`` file
(one factor per old point on ``v+1..2v+1``), listed in ``MANIFEST`` together
with SHA-256 checksums and a note on any transcription errata.
"""

from __future__ import annotations

import hashlib
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .coloring import ColorPartition
from .constructions import OneFactorization
from .design import VerificationReport
from .extension import ExtensionProblem, certificate_from, verify_extension
from .formats import parse_classes, parse_factorization, read_text

__all__ = [
    "CorpusEntry",
    "CorpusError",
    "ManifestLine",
    "corpus_dir",
    "load_entry",
    "load_manifest",
    "parse_classes",
    "parse_factorization",
    "table_ids",
    "verify_all",
    "verify_table",
]

ENV_VAR = "STEINER_CORPUS_DIR"


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class ManifestLine:
    table_id: int
    v: int
    classes_file: str
    classes_sha256: str
    factorization_file: str
    factorization_sha256: str
    errata: str


@dataclass(frozen=True)
class CorpusEntry:
    table_id: int
    target_order: int
    base_order: int
    classes: ColorPartition
    factorization: OneFactorization
    errata: str = ""

    def __post_init__(self) -> None:
        v = self.base_order
        if self.target_order != 2 * v + 1:
            raise CorpusError(f"table {self.table_id}: target order {self.target_order} != 2*{v}+1")
        if self.classes.order != self.target_order:
            raise CorpusError(f"table {self.table_id}: classes cover 1..{self.classes.order}, expected 1..{self.target_order}")
        f = self.factorization
        if f.v != v or (f.lo, f.hi) != (v + 1, self.target_order):
            raise CorpusError(
                f"table {self.table_id}: factorization has {f.v} factors on {f.lo}..{f.hi}, "
                f"expected {v} on {v + 1}..{self.target_order}"
            )

    @property
    def problem(self) -> ExtensionProblem:
        return ExtensionProblem.from_merged(self.classes, self.base_order)


def corpus_dir() -> Path:
    """``$STEINER_CORPUS_DIR`` if set, else the corpus shipped with the package."""
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("steiner") / "data" / "corpus"))


def load_manifest(directory: Path | None = None) -> dict[int, ManifestLine]:
    directory = directory or corpus_dir()
    path = directory / "MANIFEST"
    if not path.is_file():
        raise CorpusError(f"no MANIFEST in {directory}")
    out: dict[int, ManifestLine] = {}
    for no, line in enumerate(read_text(path).split("\n"), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 7:
            raise CorpusError(f"MANIFEST line {no}: expected 7 tab-separated fields, got {len(fields)}")
        tid, v = int(fields[0]), int(fields[1])
        errata = "" if fields[6] == "-" else fields[6]
        out[tid] = ManifestLine(tid, v, fields[2], fields[3], fields[4], fields[5], errata)
    return out


def table_ids(directory: Path | None = None) -> list[int]:
    return sorted(load_manifest(directory))


def _checked_text(directory: Path, name: str, digest: str) -> str:
    text = read_text(directory / name)
    actual = hashlib.sha256(text.encode("utf-8")).hexdigest()
    if actual != digest:
        raise CorpusError(f"{name}: checksum {actual[:12]}... does not match MANIFEST {digest[:12]}...")
    return text


def load_entry(table_id: int, directory: Path | None = None) -> CorpusEntry:
    """Read one table, checking both files against the MANIFEST checksums."""
    directory = directory or corpus_dir()
    manifest = load_manifest(directory)
    if table_id not in manifest:
        raise CorpusError(f"table {table_id} is not in the corpus (have {sorted(manifest)})")
    m = manifest[table_id]
    classes = parse_classes(_checked_text(directory, m.classes_file, m.classes_sha256))
    fac = parse_factorization(_checked_text(directory, m.factorization_file, m.factorization_sha256))
    return CorpusEntry(table_id, 2 * m.v + 1, m.v, classes, fac, m.errata)


def verify_table(entry: CorpusEntry) -> VerificationReport:
    """Re-check an entry as an extension certificate and add per-table statistics.

    Extra stats: ``new_point_classes`` gives, per class, how many new points it
    holds, and ``class_triples`` how many induced triples meet each class.
    """
    rep = verify_extension(certificate_from(entry.classes, entry.factorization))
    v = entry.base_order
    col = entry.classes.color_of
    new_counts = [0] * entry.classes.k
    for p in range(v + 1, entry.target_order + 1):
        new_counts[col[p] - 1] += 1
    # triples whose new-point edge touches each class
    touched = [0] * entry.classes.k
    for _, (a, b) in entry.factorization.edges():
        for c in {col[a], col[b]}:
            touched[c - 1] += 1
    rep.subject = f"table {entry.table_id} (v={v}, order {entry.target_order})"
    rep.stats.update(
        table_id=entry.table_id,
        factors=entry.factorization.v,
        new_point_classes=tuple(new_counts),
        class_triples=tuple(touched),
        errata=entry.errata,
    )
    return rep


def _verify_one(args: tuple[int, str | None]) -> tuple[int, VerificationReport]:
    tid, directory = args
    return tid, verify_table(load_entry(tid, Path(directory) if directory else None))


def verify_all(directory: Path | None = None, jobs: int = 1) -> list[tuple[int, VerificationReport]]:
    """Verify every entry; results come back sorted by table id whatever ``jobs`` is."""
    d = str(directory) if directory else None
    tasks = [(tid, d) for tid in table_ids(directory)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_one, tasks))
    else:
        results = [_verify_one(t) for t in tasks]
    return sorted(results, key=lambda r: r[0])
