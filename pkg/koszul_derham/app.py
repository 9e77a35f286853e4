# koszul_derham/app.py
import argparse
import logging
import sys
from typing import List, Optional, Sequence, Tuple

from koszul_derham.config import EngineSettings, get_settings
from koszul_derham.core.parser import ExpressionSource, infer_variables, parse_polynomial
from koszul_derham.core.ring import RingContext
from koszul_derham.engines.derham import DeRhamEngine
from koszul_derham.engines.jacobian import HypersurfaceContext, JacobianEngine
from koszul_derham.errors import InputError, KoszulDerhamError, NotStabilizedError
from koszul_derham.pipeline.orchestrator import (
    derham_entry,
    filtration_block,
    input_block,
    milnor_block,
    verify_main_theorem,
)
from koszul_derham.pipeline.report import (
    CheckReport,
    ChecksBlock,
    DerhamReport,
    JacobianReport,
    MilnorReport,
    Report,
    emit_report,
)
from koszul_derham.pipeline.selftest import run_selftest

logger = logging.getLogger(__name__)

STATUS_EXIT_CODES = {
    "verified": 0,
    "failed": 1,
    "inconclusive": 3,
    "hypothesis_not_met": 4,
}


# -- argument parsing ------------------------------------------------------

def _int_list(text: str, what: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InputError(f"{what} must be a comma-separated list of integers, got {text!r}", reason="bad_weights")


def parse_degree_range(text: str) -> Tuple[int, int]:
    """'A..B' -> (A, B), inclusive."""
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError(text)
        bounds = (int(lo), int(hi))
    except ValueError:
        raise InputError(f"degree range must look like A..B, got {text!r}", reason="bad_range")
    if bounds[0] > bounds[1]:
        raise InputError(f"empty degree range {text!r}", reason="bad_range")
    return bounds


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("f", help="polynomial, e.g. 'x^3+y^3+z^3'")
    common.add_argument("--vars", help="comma-separated variable names (default: inferred)")
    common.add_argument("--weights", help="comma-separated positive weights (default: all 1)")
    common.add_argument("--format", choices=["json", "table"], default="json")
    common.add_argument("--degree-cap", type=int, default=None, help="bound on the Jacobian slice scan")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timing", action="store_true", help="record per-stage timings")

    parser = argparse.ArgumentParser(
        prog="koszul_derham",
        description="Exact Koszul and de Rham homology of weighted-homogeneous hypersurfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="homogeneity, Euler identity and smoothness")
    sub.add_parser("milnor", parents=[common], help="Hilbert function of the Milnor algebra")

    jk = sub.add_parser("jkoszul", parents=[common], help="dimensions of H_p(df;A)_t")
    jk.add_argument("--p", type=int, required=True)
    degrees = jk.add_mutually_exclusive_group()
    degrees.add_argument("--t", type=int)
    degrees.add_argument("--t-range", dest="t_range")

    dr = sub.add_parser("derham", parents=[common], help="H_p(d;R_f) in one internal degree")
    dr.add_argument("--p", type=int, required=True)
    dr.add_argument("--pole-cap", type=int, default=None)
    dr.add_argument("--internal-degree", type=int, default=None)

    sub.add_parser("verify", parents=[common], help="run the full vanishing-theorem pipeline")
    sub.add_parser("selftest", parents=[common], help="seeded property checks")
    return parser


def build_context(args: argparse.Namespace, settings: EngineSettings) -> HypersurfaceContext:
    names = [v.strip() for v in args.vars.split(",")] if args.vars else infer_variables(args.f)
    weights = _int_list(args.weights, "weights") if args.weights else [1] * len(names)
    ring = RingContext(names, weights)
    f = parse_polynomial(ExpressionSource(args.f, tuple(names)), ring, settings.max_exponent)
    return HypersurfaceContext(f)


# -- commands ---------------------------------------------------------------

def cmd_check(h: HypersurfaceContext, args, settings) -> Tuple[Report, int]:
    jacobian = JacobianEngine(h, settings)
    profile = jacobian.milnor_profile(args.degree_cap)
    checks = ChecksBlock(
        quasi_homogeneous=True,
        euler_identity=True,
        smooth_isolated=profile.is_artinian,
        milnor_scan_bound=profile.scan_bound,
        degree_cap=args.degree_cap,
        complete_intersection_series=profile.matches_complete_intersection,
    )
    return CheckReport(input=input_block(h), checks=checks, milnor=milnor_block(h, profile)), 0


def cmd_milnor(h: HypersurfaceContext, args, settings) -> Tuple[Report, int]:
    profile = JacobianEngine(h, settings).milnor_profile(args.degree_cap)
    return MilnorReport(input=input_block(h), milnor=milnor_block(h, profile)), 0


def cmd_jkoszul(h: HypersurfaceContext, args, settings) -> Tuple[Report, int]:
    if not 0 <= args.p <= h.n:
        raise InputError(f"--p must lie in 0..{h.n}, got {args.p}", reason="bad_argument")
    jacobian = JacobianEngine(h, settings)
    if args.t is not None:
        degrees = range(args.t, args.t + 1)
    elif args.t_range:
        lo, hi = parse_degree_range(args.t_range)
        degrees = range(lo, hi + 1)
    else:
        degrees = range(0, jacobian.eta_cutoff(args.degree_cap) + 1)
    dims = {str(t): dim for t, dim in jacobian.scan_dims(args.p, degrees).items()}
    return JacobianReport(input=input_block(h), p=args.p, dims=dims), 0


def cmd_derham(h: HypersurfaceContext, args, settings) -> Tuple[Report, int]:
    engine = DeRhamEngine(h, settings=settings)
    H = engine.derham_homology(
        args.p, j=args.internal_degree, pole_cap=args.pole_cap, degree_cap=args.degree_cap, strict=False
    )
    entry = derham_entry(H)
    if not H.stabilized:
        report = DerhamReport(input=input_block(h), derham=entry)
        error = NotStabilizedError(f"H_{args.p} not stabilized at pole cap {H.pole_cap}; raise --pole-cap")
        sys.stderr.write(error.diagnostic() + "\n")
        return report, error.exit_code
    if H.p < h.n and H.internal_degree == -h.omega and engine.hypothesis_holds(H.p, args.degree_cap):
        entry.filtration = filtration_block(engine.filtration(H.p, H, args.degree_cap))
    return DerhamReport(input=input_block(h), derham=entry), 0


def cmd_verify(h: HypersurfaceContext, args, settings) -> Tuple[Report, int]:
    report = verify_main_theorem(h, args.degree_cap, args.timing, settings)
    if report.corollary is not None and report.corollary.status == "failed":
        return report, STATUS_EXIT_CODES["failed"]
    return report, STATUS_EXIT_CODES[report.theorem.status]


def cmd_selftest(h: HypersurfaceContext, args, settings) -> Tuple[Report, int]:
    report = run_selftest(h, seed=args.seed, degree_cap=args.degree_cap, settings=settings)
    return report, 0 if report.status == "passed" else 1


COMMANDS = {
    "check": cmd_check,
    "milnor": cmd_milnor,
    "jkoszul": cmd_jkoszul,
    "derham": cmd_derham,
    "verify": cmd_verify,
    "selftest": cmd_selftest,
}


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run one command, write its report to stdout; returns the exit code."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse has already written its usage message
        return e.code if isinstance(e.code, int) else 2
    try:
        settings = get_settings()
        logging.basicConfig(level=settings.log_level)
        h = build_context(args, settings)
        logger.info(f"Running {args.command} on {args.f!r}")
        report, code = COMMANDS[args.command](h, args, settings)
        sys.stdout.write(emit_report(report, args.format))
        return code
    except KoszulDerhamError as e:
        logger.debug(f"{args.command} failed: {e.message}")
        sys.stderr.write(e.diagnostic() + "\n")
        return e.exit_code
    except Exception as e:
        logger.error(f"Unexpected error in {args.command}: {e}", exc_info=True)
        sys.stderr.write(f'error reason=unexpected detail="{str(e)}"\n')
        return 1


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
