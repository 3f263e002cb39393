"""Command-line front end.

Subcommands: norms, chaos, spectrum, conjugacy, negative.  Exit status is 0
for PASS/INFO, 1 for FAIL and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import reports, spectral
from .negative import ExtensionVariant
from .operators import OperatorSpec, SpecError, WeightError
from .sampling import DEFAULT_SEED
from .scalar import Scalar, ScalarParseError, parse_rational
from .sequences import IndexBase, finseq_from_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SHIFT_VARIANTS = ("bounded", "unbounded")
ALL_VARIANTS = SHIFT_VARIANTS + ("bounded-hat", "unbounded-hat")


class UsageError(Exception):
    pass


def _scalar(text: str) -> Scalar:
    try:
        return Scalar.parse(text)
    except ScalarParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational(text: str):
    try:
        return parse_rational(text)
    except ScalarParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _global_flags(parser: argparse.ArgumentParser, defaults: bool) -> None:
    # accepted both before and after the subcommand
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    parser.add_argument("--format", choices=("table", "json", "csv"),
                        **({"default": "json"} if defaults else kw))
    parser.add_argument("--seed", type=int, **({"default": DEFAULT_SEED} if defaults else kw))
    parser.add_argument("--K", type=_positive, **({"default": 500} if defaults else kw),
                        help="verification horizon for infinite-support sequences")
    parser.add_argument("--approx", action="store_true",
                        **({"default": False} if defaults else kw),
                        help="add float log-magnitude columns (labelled approx_*)")


def _spec_args(p: argparse.ArgumentParser, variants=SHIFT_VARIANTS) -> None:
    p.add_argument("--variant", choices=variants, required=True)
    p.add_argument("--base", choices=("one", "zero"), default="one")
    p.add_argument("--w", type=_scalar, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shiftchaos",
                                     description="Exact checks for weighted backward shifts on c0 and c.")
    _global_flags(parser, defaults=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norms", help="closed-form vs brute-force operator norms")
    _spec_args(p)
    p.add_argument("--n-max", type=_positive, default=10)
    p.add_argument("--oracle-horizon", type=_positive, default=200)
    _global_flags(p, defaults=False)

    p = sub.add_parser("chaos", help="SCC check, periodic points, orbit visits")
    _spec_args(p)
    p.add_argument("--targets-file", type=Path)
    p.add_argument("--tolerance", type=_rational, default=parse_rational("1/1000000"))
    p.add_argument("--period", type=_positive)
    p.add_argument("--power", type=_positive, default=1)
    p.add_argument("--samples", type=_positive, default=20)
    p.add_argument("--n-max", type=_positive, default=20)
    _global_flags(p, defaults=False)

    p = sub.add_parser("spectrum", help="spectrum classification with eigen-residuals")
    _spec_args(p, ALL_VARIANTS)
    p.add_argument("--lambda-grid", required=True,
                   help="comma-separated scalars, e.g. '0,1,2,3' or '1/2+1 i,3'")
    p.add_argument("--field", choices=("complex", "real"), default="complex")
    _global_flags(p, defaults=False)

    p = sub.add_parser("conjugacy", help="commuting-diagram checks for the operators on c")
    p.add_argument("--w", type=_scalar, default=Scalar(2))
    p.add_argument("--n-max", type=_positive, default=5)
    p.add_argument("--samples", type=_positive, default=20)
    _global_flags(p, defaults=False)

    p = sub.add_parser("negative", help="non-hypercyclicity certificates on c")
    p.add_argument("--variant", choices=[v.value for v in ExtensionVariant], required=True)
    p.add_argument("--w", type=_scalar, required=True)
    p.add_argument("--samples", type=_positive, default=100)
    p.add_argument("--plant", action="store_true", help="add one sample with nonzero limit")
    _global_flags(p, defaults=False)
    return parser


def _make_spec(args) -> OperatorSpec:
    base = IndexBase.parse(args.base)
    if args.variant.endswith("-hat"):
        if base is not IndexBase.ONE:
            raise UsageError("conjugated operators act on c over base one")
        return OperatorSpec.hat(args.variant == "bounded-hat", args.w)
    return OperatorSpec.shift(args.variant == "bounded", base, args.w)


def _load_targets(path: Path, base: IndexBase):
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read targets file: {exc}") from None
    items = data if isinstance(data, list) else [data]
    try:
        targets = [finseq_from_json(obj) for obj in items]
    except (ValueError, TypeError, ScalarParseError) as exc:
        raise UsageError(f"malformed targets file: {exc}") from None
    for t in targets:
        if t.base != base:
            raise UsageError("targets must use the operator's index base")
    return targets


def run(args) -> dict:
    if args.command == "norms":
        return reports.norms_report(_make_spec(args), args.n_max, args.oracle_horizon,
                                    approx=args.approx)
    if args.command == "chaos":
        spec = _make_spec(args)
        if args.tolerance <= 0:
            raise UsageError("tolerance must be positive")
        targets = (_load_targets(args.targets_file, spec.base) if args.targets_file
                   else reports.default_targets(spec.base))
        if args.period is not None:
            too_long = [t for t in targets if t.support_length > args.power * args.period]
            if too_long:
                raise UsageError("a target's support does not fit in the requested period")
        return reports.chaos_report(spec, targets, args.tolerance, args.power, args.period,
                                    args.samples, args.n_max, args.seed, args.K, args.approx)
    if args.command == "spectrum":
        spec = _make_spec(args)
        try:
            grid = [Scalar.parse(t) for t in args.lambda_grid.split(",") if t.strip()]
        except ScalarParseError as exc:
            raise UsageError(str(exc)) from None
        field = spectral.Field(args.field)
        if field is spectral.Field.REAL and (not spec.w.is_real or any(not g.is_real for g in grid)):
            raise UsageError("real field needs real w and real λ values")
        return reports.spectrum_report(spec, grid, args.K, field)
    if args.command == "conjugacy":
        return reports.conjugacy_report(args.w, args.n_max, args.samples, args.seed)
    if args.command == "negative":
        return reports.negative_report(ExtensionVariant(args.variant), args.w, args.samples,
                                       args.seed, args.plant)
    raise UsageError(f"unknown command {args.command}")


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return reports.canonical_json(report)
    rows = report["results"].get("rows", [])
    columns: list[str] = []
    for row in rows:
        columns.extend(c for c in row if c not in columns)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({c: _cell(row.get(c)) for c in columns})
        return buf.getvalue()
    cells = [[_cell(row.get(c)) for c in columns] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = [f"{report['command']}  spec={json.dumps(report['spec'], sort_keys=True)}"]
    lines.append("  ".join(c.ljust(wd) for c, wd in zip(columns, widths)).rstrip())
    lines.extend("  ".join(v.ljust(wd) for v, wd in zip(r, widths)).rstrip() for r in cells)
    lines.extend(f"note: {n}" for n in report.get("notes", []))
    lines.append(f"verdict: {report['verdict']}")
    return "\n".join(lines) + "\n"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run(args)
    except (UsageError, WeightError, SpecError) as exc:
        print(f"shiftchaos: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(report, args.format))
    return EXIT_FAIL if report["verdict"] == reports.FAIL else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
