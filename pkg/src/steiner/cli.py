"""``steiner`` command line: build, double, color, search and verify.

Exit codes: 0 pass/found, 1 fail/infeasible, 2 unknown (budget exhausted),
3 usage or input error.  With ``--porcelain`` the report is a series of lines
of space-separated ``key=value`` tokens; values containing spaces are JSON
quoted.  Commands that produce a file write it to ``--out`` when given and
to standard output otherwise; in the latter case the report goes to standard
error so the two never mix.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

from . import corpus
from .coloring import DEFAULT_BUDGET, check_bicoloring, chromatic_spectrum
from .constructions import (
    bose,
    cyclic_sts,
    doubling,
    round_robin_factorization,
    skolem,
    validate_one_factorization,
)
from .design import VerificationReport, validate_sts
from .extension import (
    FOUND,
    INFEASIBLE,
    ExtensionProblem,
    reconstruct_base,
    search_extension,
    verify_extension,
)
from .formats import (
    format_factorization,
    format_sts,
    parse_classes,
    parse_factorization,
    parse_sts,
    read_text,
    write_text,
)

EXIT_PASS, EXIT_FAIL, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 3
EXIT_FOR = {"pass": EXIT_PASS, "found": EXIT_PASS, "fail": EXIT_FAIL, "infeasible": EXIT_FAIL, "unknown": EXIT_UNKNOWN}

# orders above which a search needs an explicit --budget
SPECTRUM_FREE_ORDER = 15
EXTEND_FREE_V = 21


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    verdict: str
    fields: list[list[tuple[str, Any]]] = field(default_factory=list)
    human: list[str] = field(default_factory=list)
    artifact: str | None = None

    @property
    def exit_code(self) -> int:
        return EXIT_FOR[self.verdict]

    def line(self, *pairs: tuple[str, Any]) -> None:
        self.fields.append(list(pairs))

    def porcelain(self) -> str:
        rows = [[("verdict", self.verdict)]] + self.fields
        return "".join(" ".join(f"{k}={_value(v)}" for k, v in row) + "\n" for row in rows)

    def text(self) -> str:
        return "".join(line + "\n" for line in self.human)


def _value(v: Any) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return ",".join(_value(x) for x in v) if v else "none"
    s = str(v)
    return json.dumps(s) if (" " in s or not s) else s


def _verdict(rep: VerificationReport) -> str:
    return "pass" if rep.passed else "fail"


def _issue_lines(rep: VerificationReport, limit: int = 5) -> list[str]:
    out = []
    for kind, items in rep.issues.items():
        shown = ", ".join(str(x) for x in items[:limit])
        more = f" (+{len(items) - limit} more)" if len(items) > limit else ""
        out.append(f"  {kind}: {shown}{more}")
    return out


def _issue_counts(res: CommandResult, rep: VerificationReport, kinds: Sequence[str]) -> None:
    res.line(*[(k, len(rep.issues.get(k, []))) for k in kinds])


# --------------------------------------------------------------------------
# Commands


def cmd_verify_sts(args: argparse.Namespace) -> CommandResult:
    ts = parse_sts(read_text(args.path))
    rep = validate_sts(ts)
    res = CommandResult(_verdict(rep))
    res.line(("order", ts.order), ("blocks", len(ts.blocks)), ("expected_blocks", rep.stats["expected_blocks"]))
    _issue_counts(res, rep, ["uncovered_pairs", "multiply_covered_pairs"])
    res.human = [rep.summary(), f"  {len(ts.blocks)} blocks, expected {rep.stats['expected_blocks']}"]
    res.human += _issue_lines(rep)
    return res


def _parse_base(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"--base expects comma-separated integers, got {text!r}") from None


def cmd_make_sts(args: argparse.Namespace) -> CommandResult:
    if args.kind == "cyclic":
        if not args.base:
            raise UsageError("--kind cyclic needs at least one --base block")
        ts = cyclic_sts(args.v, [_parse_base(b) for b in args.base])
    elif args.base:
        raise UsageError(f"--base only applies to --kind cyclic, not {args.kind}")
    else:
        ts = bose(args.v) if args.kind == "bose" else skolem(args.v)
    rep = validate_sts(ts)
    res = CommandResult(_verdict(rep), artifact=format_sts(ts))
    res.line(("kind", args.kind), ("order", ts.order), ("blocks", len(ts.blocks)))
    res.human = [f"{args.kind} system: {rep.summary()}"] + _issue_lines(rep)
    return res


def _parse_points(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"--points expects lo..hi, got {text!r}") from None


def cmd_make_fac(args: argparse.Namespace) -> CommandResult:
    lo, hi = _parse_points(args.points)
    f = round_robin_factorization(lo, hi)
    rep = validate_one_factorization(f)
    res = CommandResult(_verdict(rep), artifact=format_factorization(f))
    res.line(("points", f"{lo}..{hi}"), ("factors", f.v), ("edges", rep.stats["edges"]))
    res.human = [rep.summary(), f"  {f.v} factors, {rep.stats['edges']} edges"]
    return res


def cmd_verify_fac(args: argparse.Namespace) -> CommandResult:
    f = parse_factorization(read_text(args.path))
    rep = validate_one_factorization(f)
    res = CommandResult(_verdict(rep))
    res.line(("points", f"{f.lo}..{f.hi}"), ("factors", f.v), ("edges", rep.stats["edges"]),
             ("expected_edges", rep.stats["expected_edges"]))
    _issue_counts(res, rep, ["wrong_factor_count", "not_perfect", "duplicated_edges", "missing_edges"])
    res.human = [rep.summary(), f"  {rep.stats['edges']} edges, expected {rep.stats['expected_edges']}"]
    res.human += _issue_lines(rep)
    return res


def cmd_double(args: argparse.Namespace) -> CommandResult:
    base = parse_sts(read_text(args.sts))
    f = parse_factorization(read_text(args.fac))
    big = doubling(base, f)
    rep = validate_sts(big)
    res = CommandResult(_verdict(rep), artifact=format_sts(big))
    res.line(("base_order", base.order), ("order", big.order), ("blocks", len(big.blocks)))
    res.human = [f"doubled {base.order} -> {big.order}: {rep.summary()}"] + _issue_lines(rep)
    return res


def cmd_check_coloring(args: argparse.Namespace) -> CommandResult:
    ts = parse_sts(read_text(args.sts))
    p = parse_classes(read_text(args.classes))
    rep = check_bicoloring(ts, p)
    res = CommandResult(_verdict(rep))
    res.line(("order", ts.order), ("k", p.k), ("class_sizes", p.sizes()))
    _issue_counts(res, rep, ["monochromatic", "polychromatic"])
    res.human = [rep.summary(), f"  class sizes {p.sizes()}"] + _issue_lines(rep)
    return res


def cmd_spectrum(args: argparse.Namespace) -> CommandResult:
    ts = parse_sts(read_text(args.sts))
    if args.budget is None and ts.order > SPECTRUM_FREE_ORDER:
        raise UsageError(f"spectrum of order {ts.order} > {SPECTRUM_FREE_ORDER} needs an explicit --budget")
    budget = DEFAULT_BUDGET if args.budget is None else args.budget
    sp = chromatic_spectrum(ts, k_max=args.kmax, budget=budget, jobs=args.jobs)
    if sp.undecided:
        verdict = "unknown"
    else:
        verdict = "pass" if sp.feasible_counts else "fail"
    res = CommandResult(verdict)
    feasible = sorted(sp.feasible_counts)
    res.line(("order", ts.order), ("k_max", sp.k_max))
    res.line(("feasible", feasible), ("lower", sp.lower), ("upper", sp.upper))
    res.line(("undecided", sp.undecided), ("nodes", sum(sp.nodes.values())))
    res.human = [
        f"order {ts.order}, k = 1..{sp.k_max}",
        f"  feasible k: {feasible or 'none'}",
        f"  lower chromatic number: {sp.lower}, upper chromatic number: {sp.upper}",
    ]
    if sp.undecided:
        res.human.append(f"  undecided (budget exhausted): {sp.undecided}")
    return res


def cmd_extend(args: argparse.Namespace) -> CommandResult:
    merged = parse_classes(read_text(args.classes))
    if args.budget is None and args.v > EXTEND_FREE_V:
        raise UsageError(f"extend with v = {args.v} > {EXTEND_FREE_V} needs an explicit --budget")
    budget = DEFAULT_BUDGET if args.budget is None else args.budget
    problem = ExtensionProblem.from_merged(merged, args.v)
    r = search_extension(problem, budget, args.seed, jobs=args.jobs, strategy=args.strategy, restarts=args.restarts)
    res = CommandResult(r.status)
    res.line(("v", args.v), ("k", problem.k), ("class_sizes", merged.sizes()), ("nodes", r.nodes))
    res.human = [f"extension of v={args.v} with k={problem.k}: {r.status} after {r.nodes} nodes"]
    if r.status == FOUND:
        assert r.certificate is not None
        rep = verify_extension(r.certificate)
        if not rep:
            raise AssertionError(f"search produced an invalid certificate: {rep.summary()}")
        res.artifact = format_factorization(r.certificate.factorization)
        res.line(("certificate", "verified"), ("induced_triples", rep.stats["induced_triples"]))
        res.human.append(f"  certificate verified: {rep.stats['induced_triples']} induced triples, all two-colored")
    elif r.status == INFEASIBLE:
        res.human.append("  exhaustive search: no factorization exists")
    else:
        res.human.append("  budget exhausted before a decision")
    return res


def cmd_reconstruct(args: argparse.Namespace) -> CommandResult:
    classes = parse_classes(read_text(args.classes))
    if classes.order != args.v:
        classes = classes.restrict(range(1, args.v + 1))
    budget = DEFAULT_BUDGET if args.budget is None else args.budget
    r = reconstruct_base(args.v, classes, budget)
    res = CommandResult(r.status)
    res.line(("v", args.v), ("k", classes.k), ("nodes", r.nodes))
    res.human = [f"base of order {args.v} bicolored by {classes.sizes()}: {r.status} after {r.nodes} nodes"]
    if r.system is not None:
        res.artifact = format_sts(r.system)
    return res


def _table_lines(tid: int, rep: VerificationReport, res: CommandResult) -> None:
    s = rep.stats
    pats = ",".join(f"{d}-{d}-{c}:{n}" for (d, c), n in s["patterns"].items())
    res.line(("table", tid), ("passed", rep.passed), ("v", s["factors"]), ("edges", s["edges"]),
             ("induced_triples", s["induced_triples"]), ("class_sizes", s["class_sizes"]),
             ("new_point_classes", s["new_point_classes"]), ("patterns", pats))
    if s["errata"]:
        res.line(("table", tid), ("errata", s["errata"]))
    res.human.append(rep.summary())
    res.human.append(f"  class sizes {s['class_sizes']}, new points per class {s['new_point_classes']}")
    res.human.append(f"  {s['factors']} factors, {s['edges']} edges, {s['induced_triples']} induced triples")
    res.human.append("  patterns (doubled, single): " + ", ".join(f"{k}: {n}" for k, n in s["patterns"].items()))
    if s["errata"]:
        res.human.append(f"  errata: {s['errata']}")
    res.human += _issue_lines(rep)


def cmd_verify_table(args: argparse.Namespace) -> CommandResult:
    if args.table == "all":
        reports = corpus.verify_all(jobs=args.jobs)
    else:
        try:
            tid = int(args.table)
        except ValueError:
            raise UsageError(f"table must be an id or 'all', got {args.table!r}") from None
        reports = [(tid, corpus.verify_table(corpus.load_entry(tid)))]
    res = CommandResult("pass" if all(r.passed for _, r in reports) else "fail")
    for tid, rep in reports:
        _table_lines(tid, rep, res)
    return res


# --------------------------------------------------------------------------
# Parser


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {n}")
    return n


def _positive(text: str) -> int:
    n = _nonneg(text)
    if n == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--porcelain", action="store_true", help="machine-readable key=value report")
    common.add_argument("--seed", type=_nonneg, default=0, help="random seed; 0 is deterministic (default)")
    common.add_argument("--budget", type=_positive, default=None, help="search node limit")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes (default 1)")
    common.add_argument("--out", type=Path, default=None, help="write the produced file here")

    parser = _Parser(prog="steiner", description="Steiner triple systems, doubling, and bicolorings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn: Callable[[argparse.Namespace], CommandResult], help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    p = add("verify-sts", cmd_verify_sts, "check that a .sts file is a Steiner triple system")
    p.add_argument("path")
    p = add("make-sts", cmd_make_sts, "build a system (cyclic, bose or skolem)")
    p.add_argument("--kind", choices=["cyclic", "bose", "skolem"], required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--base", action="append", default=[], help="base block a,b,c for --kind cyclic (repeatable)")
    p = add("make-fac", cmd_make_fac, "round-robin one-factorization on lo..hi")
    p.add_argument("--points", required=True, help="lo..hi, an even number of points")
    p = add("verify-fac", cmd_verify_fac, "check that a .fac file is a one-factorization")
    p.add_argument("path")
    p = add("double", cmd_double, "STS(2v+1) from an STS(v) and a factorization on v+1..2v+1")
    p.add_argument("sts")
    p.add_argument("fac")
    p = add("check-coloring", cmd_check_coloring, "check that a partition bicolors a system")
    p.add_argument("sts")
    p.add_argument("classes")
    p = add("spectrum", cmd_spectrum, "all k admitting a k-bicoloring")
    p.add_argument("sts")
    p.add_argument("--kmax", type=_positive, default=None)
    p = add("extend", cmd_extend, "search a factorization extending a coloring of 1..v to 1..2v+1")
    p.add_argument("--classes", required=True, help="merged partition of 1..2v+1")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--strategy", choices=["cover", "factor"], default="cover")
    p.add_argument("--restarts", type=_positive, default=1, help="split the budget over restarts (seed != 0)")
    p = add("reconstruct", cmd_reconstruct, "find an STS(v) bicolored by the given classes")
    p.add_argument("--classes", required=True, help="partition of 1..v, or a merged one (restricted)")
    p.add_argument("--v", type=int, required=True)
    p = add("verify-table", cmd_verify_table, "re-verify a corpus table")
    p.add_argument("table", help="table id (16..26) or 'all'")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help exits 0; usage errors exit 3
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        res = args.func(args)
    except UsageError as exc:
        print(f"steiner: error: {exc}", file=sys.stderr)
        if args.porcelain:
            print("verdict=error")
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"steiner {args.command}: error: {exc}", file=sys.stderr)
        if args.porcelain:
            print("verdict=error")
        return EXIT_USAGE
    report = res.porcelain() if args.porcelain else res.text()
    if res.artifact is not None and args.out is None:
        sys.stdout.write(res.artifact)
        sys.stderr.write(report)
    else:
        if res.artifact is not None:
            write_text(args.out, res.artifact)
        sys.stdout.write(report)
    return res.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
