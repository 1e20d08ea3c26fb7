"""Command-line front end.

Results go to stdout, snapping warnings and errors to stderr.  Exit
statuses: 0 success, 1 usage or parse error, 2 dimension/domain/capacity
error, 3 closed form and oracle disagree (or a property check failed),
4 amendment iteration did not settle.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from collections import Counter
from pathlib import Path

from . import amendment as amendment_mod
from .amendment import Method, PropertyViolation, iterate_to_fixpoint, oracle_amend, simple_majority
from .axioms import Mode, enumerate_consistent_rules, founding_rule
from .core import (
    HALF,
    CapacityError,
    ConstitutionError,
    CycleError,
    DimensionError,
    DomainError,
    ParseError,
    format_fraction,
    snap_delta,
    to_fraction,
)
from .generation import Distribution, random_profiles
from .preferences import IdealProfile, SnapWarning
from .verification import DEFAULT_SAMPLES, verify

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_MISMATCH, EXIT_CYCLE = 0, 1, 2, 3, 4
MODE_NAMES = {"full": Mode.FULL_TABLE, "count": Mode.COUNT_ONLY}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(doc: dict, text: str, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _rational(text: str):
    try:
        return to_fraction(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _n_range(text: str) -> range:
    try:
        if ".." in text:
            lo, hi = (int(part) for part in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or non-positive range {text!r}")
    return range(lo, hi + 1)


def load_community(path: str, err) -> tuple[IdealProfile, object]:
    """Read ``{"n", "ideals", optional "delta"}`` from ``path`` (``-`` is stdin)."""
    try:
        raw = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected a JSON object")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", SnapWarning)
        ideals = IdealProfile.from_dict(doc)
    for w in caught:
        err.write(f"warning: {w.message}\n")
    delta = doc.get("delta")
    return ideals, None if delta is None else to_fraction(str(delta))


# -- commands ----------------------------------------------------------------


def cmd_found(args, out, err) -> int:
    mode = MODE_NAMES[args.mode]
    report = enumerate_consistent_rules(args.n, mode)
    rule = founding_rule(args.n)
    doc = report.to_dict()
    doc["founding_rule"] = {"n": rule.n, "m": rule.m, "delta": format_fraction(rule.delta)}
    kept = ", ".join(f"m={m}" for m in report.nondegenerate_thresholds)
    text = (
        f"n={args.n} mode={mode.value}: {report.candidate_count} candidates, "
        f"{len(report.survivors)} survivors ({kept}"
        f"{', degenerate never-accept' if any(report.degenerate) else ''})\n"
        f"founding rule: m={rule.m} (delta={format_fraction(rule.delta)})"
    )
    _emit(doc, text, args.format, out)
    return EXIT_OK


def _outcome_text(outcome) -> str:
    if not outcome.amended:
        return f"retain delta={format_fraction(outcome.rule.delta)}"
    return (
        f"amend delta={format_fraction(outcome.rule.delta)} -> {format_fraction(outcome.new_rule.delta)} "
        f"({outcome.direction.value}, support {outcome.support}/{outcome.rule.n}, "
        f"ballot {outcome.to_dict()['ballot']})"
    )


def cmd_amend(args, out, err) -> int:
    ideals, doc_delta = load_community(args.input, err)
    delta = args.delta if args.delta is not None else (doc_delta if doc_delta is not None else HALF)
    rule = snap_delta(ideals.n, delta)
    method = Method(args.method)
    outcome = amendment_mod.amend(rule, ideals, method)
    doc = {"method": method.value, **outcome.to_dict()}
    text = _outcome_text(outcome)
    status = EXIT_OK
    if args.verify:
        try:
            expected, diagnostic = oracle_amend(rule, ideals, method)
        except PropertyViolation as exc:
            err.write(f"error: oracle: {exc}\n")
            doc["oracle"], doc["verified"] = exc.diagnostic.to_dict() if exc.diagnostic else None, False
            _emit(doc, text, args.format, out)
            return EXIT_MISMATCH
        agree = expected.result == outcome.result
        doc["oracle"], doc["verified"] = diagnostic.to_dict(), agree
        text += f"\noracle: {format_fraction(expected.result.delta)} ({'agrees' if agree else 'DISAGREES'})"
        if not agree:
            err.write("error: closed form and oracle disagree\n")
            status = EXIT_MISMATCH
    _emit(doc, text, args.format, out)
    return status


def cmd_iterate(args, out, err) -> int:
    ideals, doc_delta = load_community(args.input, err)
    delta = args.delta if args.delta is not None else (doc_delta if doc_delta is not None else HALF)
    rule = snap_delta(ideals.n, delta)
    method = Method(args.method)
    path = iterate_to_fixpoint(rule, ideals, method)
    doc = path.to_dict()
    text = " -> ".join(format_fraction(x) for x in path.deltas) + " (retain)"
    status = EXIT_OK
    if args.verify and rule == simple_majority(ideals.n) and method is Method.CONSERVATIVE:
        single = amendment_mod.condorcet_amend(rule, ideals).result
        agree = single == path.terminal
        doc["condorcet_single_step"], doc["verified"] = format_fraction(single.delta), agree
        text += f"\nsingle Condorcet step: {format_fraction(single.delta)} ({'agrees' if agree else 'DISAGREES'})"
        if not agree:
            err.write("error: iterated conservative amendment does not reach the Condorcet result\n")
            status = EXIT_MISMATCH
    _emit(doc, text, args.format, out)
    return status


def cmd_random(args, out, err) -> int:
    dist = Distribution.parse(args.distribution)
    if args.n < 1 or args.count < 1:
        raise DomainError("--n and --count must be positive")
    profiles = random_profiles(args.n, args.count, args.seed, dist)
    rule = snap_delta(args.n, args.delta if args.delta is not None else HALF)
    summary = {}
    for method in Method:
        tally = Counter(amendment_mod.amend(rule, p, method).direction.value for p in profiles)
        summary[method.value] = {"increase": tally["increase"], "decrease": tally["decrease"], "retain": tally["none"]}
    if args.output_dir:
        target = Path(args.output_dir)
        target.mkdir(parents=True, exist_ok=True)
        width = len(str(args.count - 1))
        for i, p in enumerate(profiles):
            (target / f"profile_{i:0{width}d}.json").write_text(json.dumps(p.to_dict(), indent=2) + "\n")
    doc = {
        "n": args.n,
        "count": args.count,
        "seed": args.seed,
        "distribution": str(dist),
        "delta": format_fraction(rule.delta),
        "summary": summary,
        "profiles": [p.to_dict()["ideals"] for p in profiles],
    }
    lines = [f"{args.count} profiles, n={args.n}, {dist}, seed {args.seed}, from delta={format_fraction(rule.delta)}"]
    for name, tally in summary.items():
        lines.append(f"{name:<13} increase {tally['increase']:>6}  decrease {tally['decrease']:>6}  retain {tally['retain']:>6}")
    _emit(doc, "\n".join(lines), args.format, out)
    return EXIT_OK


def cmd_verify(args, out, err) -> int:
    founding = {}
    for n in args.n:
        if n <= 12:
            report = enumerate_consistent_rules(n, Mode.COUNT_ONLY)
            founding[str(n)] = report.characterization_holds and report.winner == simple_majority(n)
    report = verify(args.n, samples=args.count, seed=args.seed)
    doc = {"n": [args.n.start, args.n.stop - 1], "seed": args.seed, "samples": args.count,
           "founding": founding, **report.to_dict()}
    ok = report.ok and all(founding.values())
    doc["ok"] = ok
    text = report.to_text()
    if founding:
        bad = [n for n, good in founding.items() if not good]
        text = f"founding characterization: {'ok' if not bad else 'FAILED for n=' + ','.join(bad)}\n" + text
    _emit(doc, text, args.format, out)
    return EXIT_OK if ok else EXIT_MISMATCH


# -- wiring ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="constitution", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("found", help="enumerate rules consistent with the founding axioms")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=tuple(MODE_NAMES), default="count")
    common(p)
    p.set_defaults(func=cmd_found)

    for name, func, default_method, helptext in (
        ("amend", cmd_amend, "condorcet", "apply one amendment step"),
        ("iterate", cmd_iterate, "conservative", "amend until the rule is retained"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--input", required=True, help="JSON community document, or - for stdin")
        p.add_argument("--delta", type=_rational, help="rule in force (default: document's delta, else 1/2)")
        p.add_argument("--method", choices=[m.value for m in Method], default=default_method)
        p.add_argument("--verify", action="store_true", help="cross-check against the brute-force oracle")
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("random", help="generate seeded random ideal profiles")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--distribution", default="uniform", help="uniform, or clustered(1/2:0.6,4/5:0.4)")
    p.add_argument("--delta", type=_rational, help="rule in force for the summary (default 1/2)")
    p.add_argument("--output-dir", help="also write one JSON file per profile here")
    common(p)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("verify", help="run the property suite over a range of community sizes")
    p.add_argument("--n", type=_n_range, default=_n_range("1..7"), help="N or LO..HI (default 1..7)")
    p.add_argument("--count", type=int, default=DEFAULT_SAMPLES, help="random profiles per n beyond the exhaustive range")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out, err)
    except ParseError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except CycleError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CYCLE
    except PropertyViolation as exc:
        err.write(f"error: {exc}\n")
        return EXIT_MISMATCH
    except (DimensionError, DomainError, CapacityError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except ConstitutionError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
