"""Command-line interface.

Exit codes: 0 success (an undecided verdict counts as a result), 1 property
mismatch, 2 parse error, 3 enumeration bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import algebra as alg
from . import gallery as g
from . import invariants as inv
from .algebra import DEFAULT_BOUND, AlgebraFormatError, EnumerationBoundExceeded, FiniteRing, Ring
from .ce import CEReport, decide
from .suite import SuiteConfig, run_suite

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_BOUND = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE", help="algebra in the JSON exchange format ('-' for stdin)")
    src.add_argument("--gallery", choices=sorted(g.GALLERY), help="built-in ring")
    p.add_argument("--n", type=_positive, help="rank for grassmann, size for matrix")
    p.add_argument("--field", help="Q or Fp, e.g. F3")
    p.add_argument("--kind", choices=["K", "R", "S", "T"], help="rank3 variant")
    p.add_argument("--k", help="parameter of rank3 S(k), e.g. 7/3")
    p.add_argument("--group", help="q8, s3 or cN for group-algebra; p:k,... for endring")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--bound", type=_positive, default=DEFAULT_BOUND, help="enumeration bound (ring order)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=_positive, default=100)
    p.add_argument("--jobs", type=_positive, default=1, help="worker threads for exhaustive scans")


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs; built from the parsed arguments."""

    command: str
    input: str | None = None
    gallery: str | None = None
    gallery_args: dict = field(default_factory=dict)
    format: str = "text"
    bound: int = DEFAULT_BOUND
    seed: int = 0
    trials: int = 100
    jobs: int = 1

    def __post_init__(self):
        if self.input is not None and self.gallery is not None:
            raise UsageError("give either --input or --gallery, not both")
        if min(self.bound, self.trials, self.jobs) <= 0:
            raise UsageError("bounds must be positive")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        gallery_args = {}
        for key in ("n", "field", "kind", "group"):
            value = getattr(args, key, None)
            if value is not None:
                gallery_args[key] = value
        if getattr(args, "k", None) is not None:
            try:
                gallery_args["k"] = Fraction(args.k)
            except (ValueError, ZeroDivisionError) as exc:
                raise UsageError(f"--k: not a rational number: {args.k}") from exc
        return cls(
            command=args.command,
            input=getattr(args, "input", None),
            gallery=getattr(args, "gallery", None),
            gallery_args=gallery_args,
            format=getattr(args, "format", "text"),
            bound=getattr(args, "bound", DEFAULT_BOUND),
            seed=getattr(args, "seed", 0),
            trials=getattr(args, "trials", 100),
            jobs=getattr(args, "jobs", 1),
        )


def load_ring(cfg: RunConfig) -> Ring:
    if cfg.input:
        text = sys.stdin.read() if cfg.input == "-" else Path(cfg.input).read_text(encoding="utf-8")
        return alg.loads(text)
    if cfg.gallery is None:
        raise UsageError("no input given")
    try:
        return g.GALLERY[cfg.gallery](**cfg.gallery_args)
    except TypeError as exc:
        raise UsageError(f"gallery {cfg.gallery}: {exc}") from exc


def _emit(doc, fmt: str, text: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text)


def _basis_text(R: Ring, U) -> list[str]:
    return [R.format_element(R._normalize(v)) for v in U.basis]


def _size_text(U) -> str:
    s = inv.size(U)
    return f"dim {s['dim']}" if "dim" in s else f"order {s['order']}"


def render_report(R: Ring, report: CEReport) -> tuple[dict, str]:
    doc = report.to_json()
    lines = [f"ring: {report.ring}"]
    if isinstance(R, FiniteRing):
        lines.append(f"additive group: {' + '.join(f'Z/{m}' for m in R.moduli) or '0'} (order {R.order})")
    else:
        lines.append(f"field: {R.field}, dimension {R.dim}")
    I = report.invariants
    if I is not None:
        doc["spans"] = {}
        for key in ("center", "radical", "center_radical", "socle_right", "socle_central"):
            U = getattr(I, key)
            doc["spans"][key] = _basis_text(R, U)
            lines.append(f"{key}: {_size_text(U)}, spanned by [{', '.join(doc['spans'][key])}]")
        lines.append(
            f"commutative: {I.commutative}; R/J commutative: {I.quotient_commutative}; "
            f"semiprime: {I.semiprime}; local: {I.local}"
        )
    f = report.prop34
    lines.append(
        f"local criteria: quotient_commutative={f.quotient_commutative} socles_equal={f.socles_equal} "
        f"socle_in_center={f.socle_in_center} every_min_ideal_meets_center={f.every_min_ideal_meets_center}"
    )
    if report.consistent is not None:
        lines.append(f"local criteria consistent with decision: {report.consistent}")
    lines.append(f"centrally essential: {doc['decision']} (method {report.method})")
    if report.witness_failure is not None:
        lines.append(f"failure witness: a = {report.witness_text} (aC meets C only in 0)")
    if report.reason:
        lines.append(f"note: {report.reason}")
    return doc, "\n".join(lines) + "\n"


def cmd_validate(args: argparse.Namespace) -> int:
    R = load_ring(RunConfig.from_args(args))
    violations = alg.validate(R)
    doc = {"ring": R.name or repr(R), "violations": [str(v) for v in violations], "valid": not violations}
    text = "".join(f"violation: {v}\n" for v in violations) + ("valid\n" if not violations else "")
    _emit(doc, args.format, text)
    return EXIT_OK if not violations else EXIT_MISMATCH


def cmd_report(args: argparse.Namespace) -> int:
    R = load_ring(RunConfig.from_args(args))
    violations = alg.validate(R)
    if violations:
        for v in violations:
            print(f"violation: {v}", file=sys.stderr)
        return EXIT_MISMATCH
    report = decide(R, bound=args.bound, jobs=args.jobs)
    doc, text = render_report(R, report)
    _emit(doc, args.format, text)
    return EXIT_OK


def cmd_endring(args: argparse.Namespace) -> int:
    A = g.FiniteAbelianGroup.parse(args.spec)
    if A.order > args.bound:
        print(f"group order {A.order} exceeds --bound {args.bound}; rerun with --bound {A.order}", file=sys.stderr)
        return EXIT_BOUND
    R = g.endomorphism_ring(A, args.bound)
    report = decide(R, bound=args.bound, jobs=args.jobs)
    commutative = alg.is_commutative(R)
    doc, text = render_report(R, report)
    doc["commutative"] = commutative
    doc["every_component_cyclic"] = A.every_component_cyclic()
    agree = report.decision is None or report.decision == commutative
    doc["agree"] = agree
    text += f"commutative: {commutative}; every p-component cyclic: {A.every_component_cyclic()}; agree: {agree}\n"
    _emit(doc, args.format, text)
    return EXIT_OK if agree else EXIT_MISMATCH


def cmd_suite(args: argparse.Namespace) -> int:
    cfg = SuiteConfig(bound=args.bound, seed=args.seed, trials=args.trials, cases=args.cases, jobs=args.jobs)
    rows = run_suite(cfg)
    doc = [
        {"criterion": r.number, "title": r.title, "expected": r.expected, "computed": r.computed, "passed": r.passed}
        for r in rows
    ]
    failing = [r for r in rows if not r.passed]
    text = "".join(r.line() + "\n" for r in rows)
    text += f"{len(rows) - len(failing)}/{len(rows)} criteria passed\n"
    _emit(doc, args.format, text)
    return EXIT_OK if not failing else EXIT_MISMATCH


def cmd_emit(args: argparse.Namespace) -> int:
    R = load_ring(RunConfig.from_args(args))
    sys.stdout.write(alg.dumps(R) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cerings", description="Centrally essential rings: invariants and decisions.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check identity and associativity of a structure table")
    _add_input(p)
    _add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("report", help="invariants, local criteria and the CE decision")
    _add_input(p)
    _add_common(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("endring", help="CE and commutativity of End(Z/p^k + ...)")
    p.add_argument("spec", help='summands as "p:k,p:k,...", e.g. 2:1,2:2')
    _add_common(p)
    p.set_defaults(func=cmd_endring)

    p = sub.add_parser("paper-suite", help="run every acceptance criterion")
    _add_common(p)
    p.add_argument("--cases", type=_positive, default=1000, help="randomized cases per linear algebra property")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("emit", help="print a ring in the JSON exchange format")
    _add_input(p)
    p.set_defaults(func=cmd_emit)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (AlgebraFormatError, json.JSONDecodeError, UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EnumerationBoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":
    sys.exit(main())
