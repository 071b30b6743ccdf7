#!/usr/bin/env python3
"""
sumform command-line tool.

Builds, verifies and classifies solutions of the sum-form equations and
evaluates the entropy of degree α. Results are written as JSON (CSV for
``solve-grid``) to stdout or ``--output``; errors go to stderr as one JSON
object per line.

Exit status: 0 on success, 1 when a verification fails, 2 on a usage or
validation error.

Usage:
    sumform verify --equation 1.11 --family 3.3 --alpha 2 --d 6
    sumform construct --family 5.4 --alpha 3 -o h3.json
    sumform verify --bundle h3.json --perturb 1/10
    sumform entropy --alpha 2 --dist 1/2,1/2
    sumform classify --bundle h3.json
    sumform solve-grid --g-spec templates/function-specs/power2.json --d 4
"""

import argparse
import json
import logging
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union

from sumform import __version__
from sumform.cli.defaults import DEFAULT_ALPHA, ZERO_TAIL, bundle_for
from sumform.cli.specs import load_bundle, load_function_specs
from sumform.discover.classify import classify_detailed
from sumform.discover.grid_solver import DEFAULT_CAP, grid_solve_eq110
from sumform.discover.samples import SampleSet
from sumform.entropy import Alpha, entropy_alpha
from sumform.equations import EquationId, EquationSpec, FamilyTag
from sumform.errors import SumFormError, UsageError
from sumform.families import SolutionBundle
from sumform.maps.functions import power_function
from sumform.residual import verify_over_grid, verify_over_samples
from sumform.scalar import Backend, Scalar, parse_scalar
from sumform.simplex import make_distribution

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

SUBCOMMANDS = ("verify", "construct", "entropy", "classify", "solve-grid")

DEFAULT_SIZE = 3
DEFAULT_RESOLUTION = 6


class _Parser(argparse.ArgumentParser):
    """Argument parser that raises instead of printing usage and exiting."""

    def error(self, message: str):
        raise UsageError("usage", message)


@dataclass
class CommandConfig:
    """
    Validated settings of one command run.

    Attributes:
        subcommand: One of ``SUBCOMMANDS``.
        equation: Equation id, when given.
        family: Family tag, when given.
        n: Length of p.
        m: Length of q.
        d: Grid resolution.
        alpha: Power of the multiplicative parts and entropy order.
        lam: Explicit λ; derived from α when absent.
        backend: Forced backend; exact when the bundle allows it otherwise.
        seed: Seed of sampled sweeps.
        output: Output path, stdout when None.
        verbose: Log progress to stderr.
        hamel: Hamel tail of the additive part (values at √2, √3, √6).
        bundle: Bundle file to read instead of building one.
        perturb: Constant added to the first function.
        samples: Random pair count; replaces the grid sweep.
        include_irrational: Add the fixed irrational distributions to grid sweeps.
        dist: Distribution for ``entropy``, comma separated.
        samples_csv: Sample file for ``classify``.
        g_spec: Function-spec file with g_1..g_m for ``solve-grid``.
        cap: Largest number of unknowns ``solve-grid`` accepts.
    """

    subcommand: str
    equation: Optional[EquationId] = None
    family: Optional[FamilyTag] = None
    n: int = DEFAULT_SIZE
    m: int = DEFAULT_SIZE
    d: int = DEFAULT_RESOLUTION
    alpha: Union[int, float] = DEFAULT_ALPHA
    lam: Optional[Scalar] = None
    backend: Optional[Backend] = None
    seed: Optional[int] = None
    output: Optional[str] = None
    verbose: bool = False
    hamel: Tuple[Scalar, ...] = ZERO_TAIL
    bundle: Optional[str] = None
    perturb: Optional[Scalar] = None
    samples: Optional[int] = None
    include_irrational: bool = True
    dist: Optional[str] = None
    samples_csv: Optional[str] = None
    g_spec: Optional[str] = None
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError("usage", f"unknown subcommand {self.subcommand!r}")
        if self.d < 1:
            raise UsageError("invalid-grid", f"d must be at least 1, got {self.d}")
        if self.lam is not None and self.lam.is_zero():
            raise UsageError("lambda-zero", "--lambda must be non-zero")
        if self.samples is not None:
            if self.samples < 1:
                raise UsageError("usage", f"--samples must be positive, got {self.samples}")
            if self.seed is None:
                raise UsageError("seed-required", "sampled sweeps need --seed")
        if len(self.hamel) != 3:
            raise UsageError("invalid-hamel", f"--hamel needs 3 values, got {len(self.hamel)}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'CommandConfig':
        """Convert parsed arguments, parsing the text-valued flags."""
        values: Dict[str, Any] = vars(args)

        def get(name: str, default: Any = None) -> Any:
            return values.get(name, default)

        return cls(
            subcommand=args.command,
            equation=EquationId.parse(args.equation) if get("equation") else None,
            family=FamilyTag.parse(args.family) if get("family") else None,
            n=args.n,
            m=args.m,
            d=args.d,
            alpha=args.alpha,
            lam=_scalar_flag("--lambda", args.lam),
            backend=Backend(args.backend) if args.backend else None,
            seed=args.seed,
            output=args.output,
            verbose=args.verbose,
            hamel=_hamel_flag(get("hamel")),
            bundle=get("bundle"),
            perturb=_scalar_flag("--perturb", get("perturb")),
            samples=get("samples"),
            include_irrational=not get("no_irrational", False),
            dist=get("dist"),
            samples_csv=get("samples_csv"),
            g_spec=get("g_spec"),
            cap=get("cap", DEFAULT_CAP),
        )


@dataclass
class CommandResult:
    """Exit status and the text written to the output."""

    status: int
    output: str


def _number(text: str) -> Union[int, float]:
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _scalar_flag(flag: str, text: Optional[str]) -> Optional[Scalar]:
    if text is None:
        return None
    try:
        return parse_scalar(text)
    except SumFormError as e:
        raise UsageError("usage", f"{flag}: {e.message}")


def _hamel_flag(text: Optional[str]) -> Tuple[Scalar, ...]:
    if not text:
        return ZERO_TAIL
    return tuple(_scalar_flag("--hamel", part) for part in text.split(","))


def _to_json(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------

def _target_bundle(config: CommandConfig) -> SolutionBundle:
    if config.bundle:
        bundle = load_bundle(config.bundle)
        if config.equation is not None and config.equation is not bundle.equation:
            raise UsageError(
                "equation-family-mismatch",
                f"bundle solves {bundle.equation.value}, not {config.equation.value}",
            )
    else:
        bundle = bundle_for(
            config.equation,
            config.family,
            config.n,
            config.m,
            config.alpha,
            config.lam,
            config.hamel,
        )
    if config.perturb is not None:
        bundle = bundle.perturbed(config.perturb)
    return bundle


def _verify(config: CommandConfig) -> CommandResult:
    bundle = _target_bundle(config)
    spec = bundle.spec()
    if config.samples is not None:
        report = verify_over_samples(spec, bundle, config.samples, config.seed or 0, config.backend)
    else:
        report = verify_over_grid(spec, bundle, config.d, config.include_irrational, config.backend)
    status = EXIT_OK if report.passed else EXIT_FAILED
    return CommandResult(status, _to_json(report.to_dict()))


def _construct(config: CommandConfig) -> CommandResult:
    return CommandResult(EXIT_OK, _to_json(_target_bundle(config).to_dict()))


def _entropy(config: CommandConfig) -> CommandResult:
    if not config.dist:
        raise UsageError("usage", "entropy needs --dist")
    P = make_distribution(config.dist.split(","))
    H = entropy_alpha(P, config.alpha)
    data = {"alpha": Alpha.of(config.alpha).value, "distribution": P.to_list(), "H": H.to_float()}
    return CommandResult(EXIT_OK, _to_json(data))


def _classify(config: CommandConfig) -> CommandResult:
    if config.samples_csv:
        if config.equation is None:
            raise UsageError("spec-required", "classifying samples needs --equation 1.10 or 1.11")
        text = Path(config.samples_csv).read_text(encoding="utf-8")
        spec = EquationSpec(config.equation, config.n, config.m, config.lam)
        result = classify_detailed(SampleSet.from_csv(text), spec)
    else:
        result = classify_detailed(_target_bundle(config), d=config.d)
    return CommandResult(EXIT_OK, _to_json(result.to_dict()))


def _solve_grid(config: CommandConfig) -> CommandResult:
    if config.g_spec:
        g = load_function_specs(config.g_spec, config.m)
    else:
        g = [power_function(config.alpha)] * config.m
    solution = grid_solve_eq110(g, config.n, config.m, config.d, config.cap)
    logger.info(
        "nullity %d, residual norm %.3g, f(1) = 1: %s",
        solution.nullity,
        solution.residual_norm,
        solution.normalized,
    )
    return CommandResult(EXIT_OK, solution.to_sample_set().to_csv())


_HANDLERS = {
    "verify": _verify,
    "construct": _construct,
    "entropy": _entropy,
    "classify": _classify,
    "solve-grid": _solve_grid,
}


def run(config: CommandConfig) -> CommandResult:
    """
    Execute one command.

    Raises:
        SumFormError: on any validation failure (exit status 2).
    """
    return _HANDLERS[config.subcommand](config)


# ----------------------------------------------------------------------
# Entry point
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument('--n', type=int, default=DEFAULT_SIZE, help='Length of p (default: 3)')
    common.add_argument('--m', type=int, default=DEFAULT_SIZE, help='Length of q (default: 3)')
    common.add_argument(
        '--d', type=int, default=DEFAULT_RESOLUTION, help='Grid resolution (default: 6)'
    )
    common.add_argument(
        '--alpha', type=_number, default=DEFAULT_ALPHA, help='Power / entropy order (default: 2)'
    )
    common.add_argument('--lambda', dest='lam', help='λ, default 2^(1-α) - 1')
    common.add_argument(
        '--backend', choices=[b.value for b in Backend], help='Force the arithmetic backend'
    )
    common.add_argument('--seed', type=int, help='Seed for sampled sweeps')
    common.add_argument('-o', '--output', help='Output file (default: stdout)')
    common.add_argument('--verbose', action='store_true', help='Log progress to stderr')

    target = _Parser(add_help=False)
    target.add_argument('--family', help='Solution family, e.g. 3.3 or 5.4')
    target.add_argument('--equation', help='Equation id, e.g. 1.10')
    target.add_argument('--bundle', help='Bundle JSON written by "construct"')
    target.add_argument('--hamel', help='Hamel tail t1,t2,t3 of the additive part')
    target.add_argument('--perturb', help='Add this constant to the first function')

    parser = _Parser(
        prog="sumform",
        description="Sum-form functional equations: construct, verify and classify solutions",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
    sumform verify --family 3.3 --d 6
    sumform verify --family 4.2 --hamel 1,0,0 --samples 50 --seed 7
    sumform entropy --alpha 2 --dist 1/2,1/2
        """,
    )
    parser.add_argument('--version', action='version', version=f'sumform {__version__}')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    verify = sub.add_parser('verify', parents=[common, target], help='Residual sweep of a bundle')
    verify.add_argument(
        '--samples', type=int, help='Random pairs instead of the grid (needs --seed)'
    )
    verify.add_argument('--no-irrational', action='store_true', help='Grid points only')

    sub.add_parser('construct', parents=[common, target], help='Write a bundle as JSON')

    entropy = sub.add_parser(
        'entropy', parents=[common], help='Entropy of degree α of a distribution'
    )
    entropy.add_argument('--dist', help='Comma-separated components, e.g. 1/2,1/2')

    classify = sub.add_parser(
        'classify', parents=[common, target], help='Family of a bundle or sample set'
    )
    classify.add_argument('--samples-csv', help='Samples x,y of f (1.10) or φ (1.11)')

    solve = sub.add_parser('solve-grid', parents=[common], help='Solve 1.10 for f on a grid')
    solve.add_argument(
        '--g-spec', help='Function spec (or list of m specs) for g_j (default: p^α)'
    )
    solve.add_argument('--cap', type=int, default=DEFAULT_CAP, help='Largest number of unknowns')
    return parser


@contextmanager
def _logging_to_stderr(enabled: bool) -> Iterator[None]:
    if not enabled:
        yield
        return
    package_logger = logging.getLogger("sumform")
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    previous = package_logger.level
    package_logger.addHandler(handler)
    package_logger.setLevel(logging.INFO)
    try:
        yield
    finally:
        package_logger.removeHandler(handler)
        package_logger.setLevel(previous)


def _write(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _error_line(error: Dict[str, str]) -> None:
    sys.stderr.write(json.dumps(error, ensure_ascii=False) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    """CLI entry point; returns the exit status."""
    try:
        args = build_parser().parse_args(argv)
        config = CommandConfig.from_args(args)
        with _logging_to_stderr(config.verbose):
            result = run(config)
        _write(result.output, config.output)
    except SumFormError as e:
        _error_line(e.to_dict())
        return EXIT_USAGE
    except OSError as e:
        _error_line({"error": "io-error", "message": str(e)})
        return EXIT_USAGE
    return result.status


if __name__ == '__main__':
    sys.exit(main())
