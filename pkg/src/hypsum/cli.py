"""Command line front end.

    hypsum verify --identity theorem-even --nu 0..10 --i 0..5
    hypsum eval --identity knuth-lhs --n 2 --i 0
    hypsum table --identity corollary-even --nu 0..5 --i 0..3 --format markdown

Exit status: 0 when every check matched, 1 when at least one did not (the
failing points go to stderr), 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from hypsum.errors import HypsumError
from hypsum.exact import HalfInt, pival_as_rational
from hypsum.hypergeom import EvalMode, gauss_second, master_even, master_odd
from hypsum.identities import (
    Grid,
    Identity,
    VerificationReport,
    corollary_rhs,
    knuth_even_rhs,
    knuth_lhs,
    knuth_odd_rhs,
    reduce_to_2f1,
    riordan_even_rhs,
    riordan_odd_rhs,
    theorem_rhs,
    verify,
)
from hypsum.report import OutputFormat, emit_pivot, emit_table, format_value

DEFAULT_ALPHAS = (Fraction(1, 3), Fraction(2, 5), Fraction(3, 7), Fraction(5, 4))
DEFAULT_GAUSS_B = tuple(Fraction(k, 2) for k in range(0, 11))

EVAL_IDENTITIES = ("knuth-lhs", "reduce") + tuple(i.value for i in Identity)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    identity: Identity | None  # None means every identity
    nu_range: range
    i_range: range
    alpha_list: list[Fraction] = field(default_factory=list)
    mode: EvalMode | None = None
    format: OutputFormat = OutputFormat.CSV
    output_path: Path | None = None
    workers: int = 1

    def __post_init__(self):
        if self.workers < 1:
            raise UsageError(f"--workers must be >= 1, got {self.workers}")


def parse_range(text: str) -> range:
    """``a..b`` (inclusive) or a single integer ``a``."""
    lo, sep, hi = text.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected a..b") from None
    if lo_i < 0 or hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"range {text!r} must be nonempty and nonnegative")
    return range(lo_i, hi_i + 1)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad rational {text!r}; expected p/q") from None


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hypsum", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def grid_args(p, default_format):
        names = [i.value for i in Identity] + ["all"]
        p.add_argument("--identity", required=True, choices=names)
        p.add_argument("--nu", type=parse_range, default=parse_range("0..10"))
        p.add_argument("--i", type=parse_range, default=parse_range("0..3"))
        p.add_argument("--alpha", type=parse_rational, action="append", default=[])
        p.add_argument("--mode", choices=["exact", "float"], default=None)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--format", choices=[f.value for f in OutputFormat], default=default_format)
        p.add_argument("--out", type=Path, default=None)
        p.add_argument("--workers", type=int, default=1)

    grid_args(sub.add_parser("verify", help="check identities on a parameter grid"), "csv")
    grid_args(sub.add_parser("table", help="closed-form values, one column per i"), "csv")

    ev = sub.add_parser("eval", help="evaluate a single expression")
    ev.add_argument("--identity", required=True, choices=EVAL_IDENTITIES)
    ev.add_argument("--n", type=_nonneg_int, default=None)
    ev.add_argument("--nu", type=_nonneg_int, default=None)
    ev.add_argument("--i", type=_nonneg_int, default=0)
    ev.add_argument("--alpha", type=parse_rational, action="append", default=[])
    ev.add_argument("--mode", choices=["exact", "float"], default=None)
    ev.add_argument("--tol", type=float, default=1e-9)
    return parser


def _mode(name: str | None, tol: float) -> EvalMode | None:
    if name is None:
        return None
    if tol <= 0:
        raise UsageError(f"--tol must be positive, got {tol}")
    return EvalMode.exact() if name == "exact" else EvalMode.float(tol)


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        identity=None if args.identity == "all" else Identity(args.identity),
        nu_range=args.nu,
        i_range=args.i,
        alpha_list=list(args.alpha),
        # only the master identities read the mode; the rest are always exact
        mode=_mode(args.mode or "float", args.tol),
        format=OutputFormat(args.format),
        output_path=args.out,
        workers=args.workers,
    )


def _grid_for(identity: Identity, cfg: RunConfig, everything: bool) -> Grid:
    shifts = cfg.i_range
    alphas = cfg.alpha_list
    if everything and identity in (Identity.COROLLARY_EVEN, Identity.COROLLARY_ODD):
        shifts = [i for i in shifts if i <= 3]
    if identity in (Identity.MASTER_EVEN, Identity.MASTER_ODD):
        alphas = alphas or list(DEFAULT_ALPHAS)
    elif identity is Identity.GAUSS_SECOND:
        alphas = list(DEFAULT_GAUSS_B) if everything or not alphas else alphas
    return Grid(nu=cfg.nu_range, i=shifts, alpha=alphas)


def run_grid(cfg: RunConfig) -> list[VerificationReport]:
    identities = [cfg.identity] if cfg.identity else list(Identity)
    reports = []
    for ident in identities:
        grid = _grid_for(ident, cfg, everything=cfg.identity is None)
        reports.extend(verify(ident, grid, cfg.mode, cfg.workers))
    return reports


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


def _report_mismatches(reports: list[VerificationReport]) -> int:
    bad = [r for r in reports if not r.matched]
    for r in bad:
        point = ", ".join(f"{k}={format_value(v) if k == 'alpha' else v}" for k, v in r.grid_point.items())
        print(
            f"MISMATCH {r.identity.value} ({point}): lhs={format_value(r.lhs)} rhs={format_value(r.rhs)}",
            file=sys.stderr,
        )
    return 1 if bad else 0


def _eval(args: argparse.Namespace) -> str:
    name = args.identity
    alpha = args.alpha[0] if args.alpha else None

    def need(value, flag):
        if value is None:
            raise UsageError(f"eval --identity {name} needs {flag}")
        return value

    if name == "knuth-lhs":
        return format_value(knuth_lhs(need(args.n, "--n"), args.i))
    if name == "reduce":
        pre, spec = reduce_to_2f1(need(args.n, "--n"), args.i)
        return (
            f"{format_value(pre)} * 2F1({spec.a}, {format_value(spec.b)}; "
            f"{format_value(spec.c)}; {format_value(spec.z)})"
        )
    ident = Identity(name)
    if ident in (Identity.MASTER_EVEN, Identity.MASTER_ODD):
        fn = master_even if ident is Identity.MASTER_EVEN else master_odd
        mode = _mode(args.mode, args.tol) or (
            EvalMode.exact() if alpha is not None and alpha.denominator <= 2 else EvalMode.float(args.tol)
        )
        return format_value(fn(need(args.n, "--n"), need(alpha, "--alpha"), args.i, mode))
    if ident is Identity.GAUSS_SECOND:
        m = need(args.n, "--n")
        b = need(alpha, "--alpha")
        if b.denominator > 2:
            raise UsageError(f"gauss-second needs a half-integer b, got {b}")
        return format_value(pival_as_rational(gauss_second(HalfInt(-2 * m), HalfInt.from_rational(b))))
    nu = need(args.nu, "--nu")
    if ident in (Identity.THEOREM_EVEN, Identity.THEOREM_ODD):
        return format_value(theorem_rhs(nu, args.i, ident.parity))
    if ident in (Identity.COROLLARY_EVEN, Identity.COROLLARY_ODD):
        return format_value(corollary_rhs(nu, args.i, ident.parity))
    classical = {
        Identity.KNUTH_EVEN: knuth_even_rhs,
        Identity.KNUTH_ODD: knuth_odd_rhs,
        Identity.RIORDAN_EVEN: riordan_even_rhs,
        Identity.RIORDAN_ODD: riordan_odd_rhs,
    }
    return format_value(classical[ident](nu))


def run_cli(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "eval":
            print(_eval(args))
            return 0
        cfg = config_from_args(args)
        reports = run_grid(cfg)
    except SystemExit as exc:  # --help
        return exc.code or 0
    except (UsageError, HypsumError) as exc:
        print(f"hypsum: error: {exc}", file=sys.stderr)
        return 2

    if args.command == "verify":
        _emit(emit_table(reports, cfg.format), cfg.output_path)
    else:
        _emit(emit_pivot(reports, cfg.format), cfg.output_path)
    return _report_mismatches(reports)


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
