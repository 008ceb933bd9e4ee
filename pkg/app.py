import argparse
import json
import logging
import sys

import pandas as pd

from config import DEFAULT_METHOD, DEFAULT_TOL, LOG_LEVEL, N_JOBS
from datasets import DatasetBuilder, SweepSpec
from mathieu import Method
from multipole import load_cluster
from spectrum import critical_dipole
from utils.errors import (
    BracketNotFoundError,
    ClusterFormatError,
    ConvergenceError,
    DomainError,
)
from utils.ranges import Range, parse_int_list, parse_range

logger = logging.getLogger("dipole2d")

EXIT_OK      = 0
EXIT_FAILURE = 1   # verification or convergence failure
EXIT_USAGE   = 2
EXIT_DOMAIN  = 3   # no bound state / singular point

FLOAT_FORMAT = "%.12g"


# ─────────────────────────────────────────────────────────────
# OUTPUT
# ─────────────────────────────────────────────────────────────

def write_table(df: pd.DataFrame, out: str = None, as_json: bool = False):
    """Single header line, '.' decimals, empty fields for missing values"""
    if as_json:
        text = df.to_json(orient="records", double_precision=12) + "\n"
    else:
        text = df.to_csv(index=False, float_format=FLOAT_FORMAT, na_rep="", lineterminator="\n")
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
        logger.info(f"✅ wrote {len(df)} rows to {out}")
    else:
        sys.stdout.write(text)


def write_mapping(data: dict, out: str = None, as_json: bool = False):
    if as_json:
        text = json.dumps(data, indent=2) + "\n"
    else:
        lines = []
        for key, value in data.items():
            if isinstance(value, float):
                value = f"{value:.6g}"
            elif isinstance(value, (list, tuple)):
                value = "(" + ", ".join(f"{v:.6g}" for v in value) + ")"
            lines.append(f"{key} = {value}")
        text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ─────────────────────────────────────────────────────────────
# SUBCOMMANDS
# ─────────────────────────────────────────────────────────────

def cmd_critical(args, builder: DatasetBuilder) -> int:
    write_table(builder.critical_table(args.m_max), args.out, args.json)
    return EXIT_OK


def cmd_charvals(args, builder: DatasetBuilder) -> int:
    if args.m_max < 0:
        raise ValueError(f"m_max must be >= 0, got {args.m_max}")
    spec = SweepSpec(m=list(range(args.m_max + 1)), p_range=args.p_range,
                     method=Method.MATRIX, output=args.out, fmt="json" if args.json else "csv")
    write_table(builder.charvals_table(spec), spec.output, spec.fmt == "json")
    return EXIT_OK


def cmd_energies(args, builder: DatasetBuilder) -> int:
    m = abs(args.m)
    d_range = args.d_range
    if d_range is None:
        d_crit = critical_dipole(m)
        if d_crit == 0.0:
            raise DomainError("s states (m=0) have no bound state for any D > 0; pass --d-range")
        d_range = Range(0.0, d_crit, 200)
    elif m > 0:
        d_crit = critical_dipole(m)
        if d_range.max > d_crit:
            logger.warning(f"⚠️ D range passes D_crit={d_crit:.6g}; cells beyond it are left empty")
    spec = SweepSpec(m=m, n_list=args.n or list(range(m, m + 5)), d_range=d_range,
                     method=args.method, output=args.out, fmt="json" if args.json else "csv")
    write_table(builder.energies_table(spec), spec.output, spec.fmt == "json")
    return EXIT_OK


def cmd_wavefunction(args, builder: DatasetBuilder) -> int:
    df = builder.wavefunction_table(args.n, args.m, args.D, args.r_range,
                                    args.theta_steps, args.method)
    write_table(df, args.out, args.json)
    return EXIT_OK


def cmd_state(args, builder: DatasetBuilder) -> int:
    write_mapping(builder.state_summary(args.n, args.m, args.D, args.method), args.out, args.json)
    return EXIT_OK


def cmd_reduce(args, builder: DatasetBuilder) -> int:
    summary = builder.reduction_summary(load_cluster(args.path))
    if not args.json:
        summary = {k: summary[k] for k in ("Q", "D", "axis")}
    write_mapping(summary, args.out, args.json)
    return EXIT_OK


def cmd_verify(args, builder: DatasetBuilder) -> int:
    df = builder.verification_table(quick=args.quick, fault=args.inject_fault)
    failed = int((~df["passed"]).sum())
    if args.json:
        write_table(df, args.out, as_json=True)
    else:
        text = df.to_string(index=False, float_format=lambda v: f"{v:.6g}") + "\n"
        text += f"{len(df) - failed}/{len(df)} checks passed\n"
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    if failed:
        logger.error(f"❌ verification failed: {failed} of {len(df)} checks")
        return EXIT_FAILURE
    logger.info(f"✅ all {len(df)} checks passed")
    return EXIT_OK


# ─────────────────────────────────────────────────────────────
# PARSER
# ─────────────────────────────────────────────────────────────

def _range_arg(text: str) -> Range:
    try:
        return parse_range(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _int_list_arg(text: str) -> list:
    try:
        return parse_int_list(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--method", choices=[m.value for m in Method], default=DEFAULT_METHOD,
                        help="angular eigenvalue route (default: auto)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="Mathieu convergence tolerance (default: 1e-10)")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of CSV/text")

    parser = argparse.ArgumentParser(
        prog="dipole2d",
        description="Bound states of the 2D non-pure dipole potential Q/r + D cos(theta)/r^2",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("critical", parents=[common], help="critical dipole moments D_crit(m)")
    p.add_argument("--m-max", type=int, default=7)
    p.set_defaults(handler=cmd_critical)

    p = sub.add_parser("charvals", parents=[common], help="characteristic values a_2m(p)")
    p.add_argument("--p-range", type=_range_arg, default=parse_range("0:50:101"),
                   help="min:max:steps (default: 0:50:101)")
    p.add_argument("--m-max", type=int, default=4)
    p.set_defaults(handler=cmd_charvals)

    p = sub.add_parser("energies", parents=[common], help="energy curves E_{n,m}(D)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=_int_list_arg, default=None, help="e.g. 1,2,3 or 1-5")
    p.add_argument("--d-range", type=_range_arg, default=None,
                   help="min:max:steps (default: 0:D_crit:200)")
    p.set_defaults(handler=cmd_energies)

    p = sub.add_parser("wavefunction", parents=[common], help="psi(r, theta) on a grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--D", type=float, required=True)
    p.add_argument("--r-range", type=_range_arg, default=parse_range("0:20:101"))
    p.add_argument("--theta-steps", type=int, default=72)
    p.set_defaults(handler=cmd_wavefunction)

    p = sub.add_parser("state", parents=[common], help="one bound state")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--D", type=float, required=True)
    p.set_defaults(handler=cmd_state)

    p = sub.add_parser("reduce", parents=[common], help="reduce a charge cluster to (Q, D, axis)")
    p.add_argument("path", help="cluster JSON file")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("verify", parents=[common], help="run the oracle verification grid")
    p.add_argument("--quick", action="store_true", help="m = 1 subset")
    p.add_argument("--inject-fault", type=float, default=0.0, help=argparse.SUPPRESS)
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=LOG_LEVEL, format="%(message)s", stream=sys.stderr)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        builder = DatasetBuilder(tol=args.tol, n_jobs=N_JOBS)
        return args.handler(args, builder)
    except DomainError as e:
        logger.error(f"❌ {e}")
        return EXIT_DOMAIN
    except (ConvergenceError, BracketNotFoundError) as e:
        logger.error(f"❌ {e}")
        return EXIT_FAILURE
    except (ClusterFormatError, ValueError, OSError) as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
