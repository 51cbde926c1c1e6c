"""Command-line entry point: ``separatrix <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple

from . import corpus
from .certify import Certificate, certify, replay_certificate
from .errors import SeparatrixError
from .germ import BranchGerm, VectorFieldGerm
from .index import NotInPosRat, PosRatOrZero, classify, css_index_branch, divisor_index_sum_first_blowup
from .parser import parse_poly
from .proctrack import dual_relations, processes_up_to, simulate, verify_estimates
from .resolution import (
    DEFAULT_MAX_STEPS, export_dot, extract_process, is_resolved, parse_process, resolve,
)

PROBLEM_SCHEMA = "problem-v1"

EXIT_OK, EXIT_ERROR, EXIT_NOT_APPLICABLE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

log = logging.getLogger(__name__)


# -- documents -----------------------------------------------------------------


@dataclass(frozen=True)
class Problem:
    field: VectorFieldGerm
    branch: BranchGerm
    max_steps: int
    force: bool


def problem_document(P: str, Q: str, branch: str, max_steps: int = DEFAULT_MAX_STEPS,
                     force: bool = False) -> dict:
    return {
        "schema": PROBLEM_SCHEMA,
        "field": {"P": P, "Q": Q},
        "branch": branch,
        "options": {"max_steps": max_steps, "force": force},
    }


def load_problem(doc: dict) -> Problem:
    if doc.get("schema", PROBLEM_SCHEMA) != PROBLEM_SCHEMA:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    try:
        fld = doc["field"]
        F = VectorFieldGerm(parse_poly(fld["P"]), parse_poly(fld["Q"]))
        S = BranchGerm(parse_poly(doc["branch"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed problem document: missing {exc}") from exc
    opts = doc.get("options") or {}
    return Problem(F, S, int(opts.get("max_steps", DEFAULT_MAX_STEPS)), bool(opts.get("force", False)))


def _read_json(path: str) -> dict:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return json.loads(text)


def _problem_from_args(args) -> Problem:
    pb = load_problem(_read_json(args.document))
    max_steps = args.max_steps if args.max_steps is not None else pb.max_steps
    return Problem(pb.field, pb.branch, max_steps, pb.force or args.force)


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


# -- commands ------------------------------------------------------------------


def cmd_index(args) -> int:
    pb = _problem_from_args(args)
    iv = css_index_branch(pb.field, pb.branch, pb.max_steps)
    member = classify(iv.value, PosRatOrZero())
    text = f"index = {iv.value.exact_str()}; in Q+∪{{0}}: {'yes' if member else 'no'}"
    _emit(args, text, {
        "index": iv.value.to_json(),
        "in_nonnegative_rationals": member,
        "blowups": list(iv.blowups),
        "dicritical": iv.dicritical,
    })
    return EXIT_OK


def cmd_resolve(args) -> int:
    pb = _problem_from_args(args)
    trace = resolve(pb.field, pb.branch, pb.max_steps)
    if args.dot:
        Path(args.dot).write_text(export_dot(trace))
    if not trace.steps:
        _emit(args, "already smooth", {"steps": [], "multiplicities": [], "process": None})
        return EXIT_OK
    mults = trace.multiplicity_sequence
    kinds = [s.intersection.value for s in trace.steps]
    mult_text = f"mult: {','.join(map(str, mults))}"
    note = f"; dicritical at step {len(trace.steps)}" if trace.dicritical else ""
    if not is_resolved(trace.final):
        _emit(args, mult_text + note, {"steps": trace.to_json(), "multiplicities": list(mults),
                                       "process": None, "dicritical": trace.dicritical})
        return EXIT_OK
    process = extract_process(trace)
    lines = [f"{mult_text}; process: {process.literal}{note}"]
    lines += [f"  step {j}: m={m} -> {k}" for j, (m, k) in enumerate(zip(mults, kinds), start=1)]
    _emit(args, "\n".join(lines), {
        "steps": trace.to_json(),
        "multiplicities": list(mults),
        "process": process.literal,
        "dicritical": trace.dicritical,
    })
    return EXIT_OK


def cmd_simulate(args) -> int:
    # literals are read as ``resolve`` prints them, final blow-up included
    rows = simulate(parse_process(args.process).without_final_blowup())
    if args.format == "json":
        _emit(args, "", [r.to_json() for r in rows])
        return EXIT_OK
    header = ("phase", "n", "m", "quad", "det=1", "d1", "d2", "d", "B")
    table = [header]
    for r in rows:
        quad = "-" if r.quad is None else "(" + ",".join(map(str, r.quad.astuple())) + ")"
        uni = "-" if r.unimodular is None else ("yes" if r.unimodular else "NO")
        table.append((r.phase.value, str(r.blowups), str(r.multiplicity), quad, uni,
                      _opt(r.d1_bound), _opt(r.d2_bound), _opt(r.d_bound), str(r.branch_exclusion)))
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return EXIT_OK


def _opt(v) -> str:
    return "-" if v is None else str(v)


def cmd_certify(args) -> int:
    pb = _problem_from_args(args)
    cert = certify(pb.field, pb.branch, pb.max_steps, pb.force)
    body = cert.dumps()
    if args.out:
        Path(args.out).write_text(body + "\n")
    if args.format == "json":
        print(body)
    else:
        print(_summary(cert))
    if cert.kind in ("C1", "C2", "Dicritical"):
        return EXIT_OK
    return EXIT_NOT_APPLICABLE if cert.kind == "NotApplicable" else EXIT_INCONCLUSIVE


def _summary(cert: Certificate) -> str:
    if cert.kind == "C1":
        return f"C1 at stage {cert.stage}: index {cert.index.exact_str()} on {'/'.join(cert.curves)}"
    if cert.kind == "C2":
        return (f"C2 at stage {cert.stage}: r = {cert.r}, indices {cert.index_s0.exact_str()} / "
                f"{cert.index_s1.exact_str()} on {'/'.join(cert.curves)}")
    if cert.kind == "Dicritical":
        return f"Dicritical at stage {cert.stage}"
    if cert.kind == "NotApplicable":
        return f"NotApplicable: index {cert.index.exact_str()} lies in Q+∪{{0}}"
    return f"Inconclusive: {cert.reason}"


def cmd_verify(args) -> int:
    doc = _read_json(args.certificate)
    replay_certificate(doc)
    _emit(args, f"replay ok: {doc.get('kind')}", {"replay": True, "kind": doc.get("kind")})
    return EXIT_OK


# -- check suites --------------------------------------------------------------


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    failures: Tuple[str, ...]
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"name": self.name, "cases": self.cases, "failures": list(self.failures),
                "ok": self.ok}


def euclid_sequence(p: int, q: int) -> Tuple[int, ...]:
    """Remainder run sequence of the Euclidean algorithm on (q, p)."""
    out: List[int] = []
    a, b = q, p
    while b:
        quot, rest = divmod(a, b)
        out += [b] * quot
        a, b = b, rest
    return tuple(out)


def suite_euclid(limit: int) -> Tuple[int, List[str]]:
    bad = []
    pairs = corpus.coprime_pairs(limit)
    for p, q in pairs:
        S = corpus.monomial_branch(p, q)
        got = resolve(corpus.hamiltonian(S.f), S).multiplicity_sequence
        if got != euclid_sequence(p, q):
            bad.append(f"({p},{q}): {got}")
    return len(pairs), bad


def suite_index_theorem() -> Tuple[int, List[str]]:
    bad = []
    fields = corpus.first_blowup_fields()
    for F in fields:
        total = divisor_index_sum_first_blowup(F).value
        if total != -1:
            bad.append(f"{F.to_json()}: {total}")
    return len(fields), bad


def suite_unimodular(depth: int) -> Tuple[int, List[str]]:
    bad, n = [], 0
    for P in processes_up_to(depth):
        for row in simulate(P):
            n += 1
            if row.unimodular is False:
                bad.append(f"{P.literal} @ {row.blowups}")
    return n, bad


def suite_duality(depth: int) -> Tuple[int, List[str]]:
    bad, n = [], 0
    for P in processes_up_to(depth):
        if len(P.stages) < 2:
            continue
        n += 1
        try:
            dual_relations(P)
        except SeparatrixError as exc:
            bad.append(f"{P.literal}: {exc}")
    return n, bad


def suite_estimates(limit: int) -> Tuple[int, List[str]]:
    bad = []
    pairs = corpus.coprime_pairs(limit)
    for p, q in pairs:
        S = corpus.monomial_branch(p, q)
        report = verify_estimates(extract_process(resolve(corpus.hamiltonian(S.f), S)), False)
        bad += [f"({p},{q}) {c}" for c in report.checks if not c.holds]
    return len(pairs), bad


def suite_tripwire() -> Tuple[int, List[str]]:
    bad = []
    entries = corpus.certificate_corpus()
    for name, F, S in entries:
        try:
            certify(F, S)
        except SeparatrixError as exc:
            bad.append(f"{name}: {type(exc).__name__}: {exc}")
    return len(entries), bad


def suite_hypothesis_classes() -> Tuple[int, List[str]]:
    """The two membership tests partition the index values seen on the corpus."""
    bad = []
    pairs = corpus.singular_pairs(5)
    for F, S in pairs:
        v = css_index_branch(F, S).value
        if classify(v, PosRatOrZero()) == classify(v, NotInPosRat()):
            bad.append(str(v))
    return len(pairs), bad


def _suites(name: str) -> List[Tuple[str, Callable[[], Tuple[int, List[str]]]]]:
    if name == "builtin":
        return [
            ("euclid", lambda: suite_euclid(12)),
            ("index-theorem", suite_index_theorem),
            ("unimodularity", lambda: suite_unimodular(12)),
            ("duality", lambda: suite_duality(10)),
            ("estimates", lambda: suite_estimates(12)),
            ("membership", suite_hypothesis_classes),
            ("tripwire", suite_tripwire),
        ]
    if name.replace(" ", "") == "pq<=12":
        return [("euclid", lambda: suite_euclid(12))]
    raise ValueError(f"unknown corpus {name!r}; expected 'builtin' or 'pq<=12'")


def run_check(name: str) -> List[SuiteResult]:
    results = []
    for suite, fn in _suites(name):
        t0 = time.perf_counter()
        try:
            cases, bad = fn()
        except SeparatrixError as exc:
            cases, bad = 0, [f"aborted: {type(exc).__name__}: {exc}"]
        results.append(SuiteResult(suite, cases, tuple(bad), time.perf_counter() - t0))
    return results


def cmd_check(args) -> int:
    results = run_check(args.corpus)
    if args.format == "json":
        _emit(args, "", [r.to_json() for r in results])
    else:
        for r in results:
            mark = "pass" if r.ok else "FAIL"
            print(f"{mark}  {r.name:<14} {r.cases:>6} cases  {r.seconds:6.2f}s")
            for line in r.failures[:10]:
                print(f"      {line}")
    return EXIT_OK if all(r.ok for r in results) else EXIT_ERROR


# -- argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--verbose", "-v", action="store_true")

    problem = argparse.ArgumentParser(add_help=False)
    problem.add_argument("document", help="problem document (JSON), or - for stdin")
    problem.add_argument("--max-steps", type=int, default=None)
    problem.add_argument("--force", action="store_true")

    parser = argparse.ArgumentParser(prog="separatrix", parents=[common],
                                     description="Exact separatrix certificates for foliation germs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", parents=[common, problem], help="index of the branch")
    p.set_defaults(run=cmd_index)

    p = sub.add_parser("resolve", parents=[common, problem], help="resolve the branch")
    p.add_argument("--dot", metavar="PATH")
    p.set_defaults(run=cmd_resolve)

    p = sub.add_parser("simulate", parents=[common], help="coefficient ledger of a process")
    p.add_argument("process", help='literal such as "(1,2);(2,1)"')
    p.set_defaults(run=cmd_simulate)

    p = sub.add_parser("certify", parents=[common, problem], help="search for a certificate")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(run=cmd_certify)

    p = sub.add_parser("verify", parents=[common], help="replay a certificate")
    p.add_argument("certificate")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("check", parents=[common], help="run the property suites")
    p.add_argument("--corpus", default="builtin")
    p.set_defaults(run=cmd_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.run(args)
    except SeparatrixError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
