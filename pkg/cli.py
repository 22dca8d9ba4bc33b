import argparse
import asyncio
import logging
import sys
import time

from pydantic import ValidationError

from algebra.classification import SERIES_A, enumerate_fine_gradings
from algebra.extension import typeII_extension
from algebra.grading import GradedMatrixAlgebra
from algebra.involutions import (
    check_division_refinement,
    division_refinement,
    format_witness,
    involution_equivalence_witness,
    is_fine_phi,
    weak_equivalence_witness,
)
from algebra.presentation import universal_group
from algebra.torsion import TorsionGroup
from algebra.weyl import weyl_report
from config import settings
from errors import DomainError, GradingError, VerificationError
from models import (
    INVOLUTION_SIGN,
    PHI_SERIES,
    EquivalenceResult,
    GradingSpec,
    Report,
    Series,
    SupportRow,
)
from pipeline.batch_runner import run_sweep
from pipeline.report_formatter import render_json, render_table

SERIES_CHOICES = [SERIES_A] + [s.value for s in Series]


def _split(text: str | None) -> list[str]:
    if not text:
        return []
    return [part.strip() for part in text.split(",") if part.strip()]


def _series(value: str | None) -> Series:
    if value is None:
        raise DomainError("--series is required")
    try:
        return Series(value)
    except ValueError:
        raise DomainError(f"series {value!r} does not name a single grading") from None


def _rank(text: str | None) -> int:
    if text in (None, "", "trivial", "e"):
        return 0
    if not text.isdigit():
        raise DomainError(f"--T must be r (T = Z2^(2r)) for this series, got {text!r}")
    return int(text)


def _cyclic_orders(text: str | None) -> list[int]:
    if text in (None, "", "trivial", "e", "1"):
        return []
    try:
        factors = [int(x) for x in _split(text)]
    except ValueError:
        raise DomainError(f"--T must list invariant factors such as 3,3, got {text!r}") from None
    return list(TorsionGroup.from_invariants(factors).pairs)


def spec_from_args(args) -> GradingSpec:
    if args.spec:
        return GradingSpec.model_validate_json(args.spec[0])
    series = _series(args.series)
    data: dict = {"series": series}
    if series in PHI_SERIES:
        r = _rank(args.T)
        group = TorsionGroup.elementary(r)
        tau = [group.format(group.parse(t)) for t in _split(args.tau)]
        if not tau and r == 0 and args.q:
            # trivial T has a single element
            tau = [group.format(group.identity)] * args.q
        data.update(r=r, q=len(tau) if args.q is None else args.q, s=args.s or 0, tau=tau)
        if series in INVOLUTION_SIGN:
            data["delta"] = INVOLUTION_SIGN[series] if args.delta is None else args.delta
        elif args.delta is not None:
            data["delta"] = args.delta
        if series == Series.RAW_MPHI:
            data["mu"] = [int(x) for x in _split(args.mu)]
    else:
        data["T"] = _cyclic_orders(args.T)
        data["k"] = args.k
    return GradingSpec.model_validate(data)


def _progress(total: int):
    def progress(index, label, status):
        print(f"  [{index + 1}/{total}] {status}: {label}", file=sys.stderr)

    return progress


# ── Commands ──


def cmd_enumerate(args) -> tuple[Report, int]:
    if args.series is None or args.n is None:
        raise DomainError("enumerate needs --series and --n")
    series = args.series if args.series == SERIES_A else _series(args.series)
    specs = enumerate_fine_gradings(series, args.n)
    return Report(command=[], specs=specs, count=len(specs)), 0


def cmd_weyl(args) -> tuple[Report, int]:
    spec = spec_from_args(args)
    weyl = weyl_report(spec, verify=args.verify)
    code = 3 if weyl.verdict == "mismatch" else 0
    return Report(command=[], specs=[spec], weyl=weyl), code


def cmd_support(args) -> tuple[Report, int]:
    spec = spec_from_args(args)
    algebra = GradedMatrixAlgebra(spec)
    presentation = universal_group(spec, algebra)
    report = Report(
        command=[],
        specs=[spec],
        presentation=presentation.to_model(),
        support=[SupportRow(**row) for row in algebra.support_table()],
    )
    if spec.series == Series.AII:
        report.extension = typeII_extension(spec, algebra).to_model()
    if spec.is_phi and not is_fine_phi(spec):
        refined = division_refinement(spec)
        if not check_division_refinement(spec, refined):
            raise VerificationError(f"{refined.label()} does not refine {spec.label()}")
        report.refinement = refined
    return report, 0


def decide_equivalence(spec1: GradingSpec, spec2: GradingSpec, weak: bool = False) -> EquivalenceResult:
    if spec1.series != spec2.series:
        return EquivalenceResult(equivalent=False, kind="series")
    if not spec1.is_phi:
        same = sorted(spec1.pairs or []) == sorted(spec2.pairs or []) and spec1.k == spec2.k
        return EquivalenceResult(equivalent=same, kind="grading")
    if weak or spec1.series in (Series.AII, Series.RAW_MPHI):
        witness = weak_equivalence_witness(spec1, spec2)
        return EquivalenceResult(equivalent=witness is not None, kind="weak", witness=format_witness(witness))
    witness = involution_equivalence_witness(spec1, spec2)
    return EquivalenceResult(equivalent=witness is not None, kind="involution", witness=format_witness(witness))


def cmd_equiv(args) -> tuple[Report, int]:
    if not args.spec or len(args.spec) != 2:
        raise DomainError("equiv takes exactly two --spec JSON arguments")
    spec1, spec2 = (GradingSpec.model_validate_json(text) for text in args.spec)
    result = decide_equivalence(spec1, spec2, weak=args.weak)
    return Report(command=[], specs=[spec1, spec2], equivalence=result), 0


def cmd_sweep(args) -> tuple[Report, int]:
    if args.series is None or args.n is None:
        raise DomainError("sweep needs --series and --n")
    series = args.series if args.series == SERIES_A else _series(args.series)
    specs = enumerate_fine_gradings(series, args.n)
    print(f"Computing Weyl groups of {len(specs)} classes...", file=sys.stderr)
    result = asyncio.run(run_sweep(specs, verify=args.verify, on_progress=_progress(len(specs))))
    print(f"{'=' * 50}", file=sys.stderr)
    print(f"  Total:      {result.total}", file=sys.stderr)
    print(f"  Verified:   {result.verified}", file=sys.stderr)
    print(f"  Mismatches: {result.mismatches}", file=sys.stderr)
    print(f"  Failures:   {result.failures}", file=sys.stderr)
    print(f"{'=' * 50}", file=sys.stderr)
    code = max((item.exit_code for item in result.items), default=0)
    return Report(command=[], sweep=result), code


COMMANDS = {
    "enumerate": cmd_enumerate,
    "weyl": cmd_weyl,
    "support": cmd_support,
    "equiv": cmd_equiv,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--series", choices=SERIES_CHOICES, help="Grading series")
    common.add_argument("--n", type=int, help="Matrix size")
    common.add_argument("--T", help="r for the phi-series, invariant factors (e.g. 3,3) for AI and RAW_M")
    common.add_argument("--k", type=int, help="Number of blocks for AI and RAW_M")
    common.add_argument("--q", type=int, help="Number of single blocks")
    common.add_argument("--s", type=int, help="Number of block pairs")
    common.add_argument("--tau", help="Comma-separated elements of T, e.g. '10 01,e'")
    common.add_argument("--delta", type=int, choices=[-1, 1], help="Involution sign (B, C, D)")
    common.add_argument("--mu", help="Comma-separated nonzero integers (RAW_MPHI)")
    common.add_argument("--spec", action="append", help="Canonical spec JSON (twice for equiv)")
    common.add_argument("--weak", action="store_true", help="Decide weak equivalence")
    common.add_argument("--verify", action="store_true", help="Cross-check against the brute-force Weyl group")
    common.add_argument("--format", choices=["json", "table"], default="json")
    common.add_argument("--bound", type=int, help="Override the enumeration and closure bounds")
    common.add_argument("-v", "--verbose", action="store_true", help="Log progress to stderr")

    parser = argparse.ArgumentParser(
        prog="fine-gradings",
        description="Fine gradings on matrix algebras and the Weyl groups of the classical Lie algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("enumerate", parents=[common], help="One canonical spec per equivalence class")
    sub.add_parser("weyl", parents=[common], help="Weyl group of one grading")
    sub.add_parser("support", parents=[common], help="Universal group, support and Type II extension")
    sub.add_parser("equiv", parents=[common], help="Decide equivalence of two specs")
    sub.add_parser("sweep", parents=[common], help="Weyl groups of every class of a series")
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)

    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else settings.log_level,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.bound:
        settings.enumeration_bound = args.bound
        settings.closure_bound = args.bound

    start = time.perf_counter()
    try:
        report, code = COMMANDS[args.command](args)
    except GradingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    report.command = argv
    print(render_table(report) if args.format == "table" else render_json(report))
    print(f"elapsed {time.perf_counter() - start:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
