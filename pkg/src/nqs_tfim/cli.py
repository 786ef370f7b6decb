"""Command-line driver: one subcommand per figure-class experiment."""

import argparse
import sys

from . import experiments
from .experiments import KINDS, RUNNERS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nqs-tfim",
        description="RBM neural-quantum-state experiments on the rotated "
                    "transverse-field Ising chain.",
    )
    sub = parser.add_subparsers(dest="kind", required=True)
    for kind in KINDS:
        p = sub.add_parser(kind, help=f"run the {kind} experiment")
        p.add_argument("--config", help="YAML experiment file (defaults to the "
                                        "shipped config for the chosen profile)")
        p.add_argument("--out", help="output directory (overrides config)")
        p.add_argument("--seed", type=int, help="master seed (overrides config)")
        p.add_argument("--profile", choices=("paper", "ci"), default="ci",
                       help="which shipped default config to use when --config "
                            "is not given")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config_path = args.config or experiments.default_config_path(args.kind, args.profile)
    cfg = experiments.load_config(
        config_path, kind=args.kind, out_dir=args.out, seed=args.seed,
    )
    failures = RUNNERS[args.kind](cfg)
    if failures:
        print(f"{failures} grid point(s) failed", file=sys.stderr)
        return 1
    print(f"{args.kind}: results written to {cfg.out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
