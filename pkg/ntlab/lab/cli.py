"""
The ``ntlab`` command line.

    ntlab mean --d 2 --x 1e4 --y 1e3
    ntlab smooth-mean --x 500 --Y 64 --out results/smooth.jsonl
    ntlab sweep --config sweeps/mean.ini --threads 4 -v

Exit status is 0 on success, 2 for a configuration or parameter error and 3
when a verify command finds an invariant violation.
"""
import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

import inflection

import ntlab
from ntlab._compat import pydantic
from ntlab.utils import InvariantViolation

from .config import SweepConfig, load_config
from .params import OPTIONS_TO_PARAMETERS, InvalidParamException, options_to_params
from .runner import COMMANDS, run_sweep

logger = logging.getLogger("ntlab")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INVARIANT = 3

_FLAGS = ("poisson", "cross_check")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ntlab",
        description="Evaluate power-residue prime counts, character sums and their envelopes.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS) + ["sweep"])
    parser.add_argument("--version", action="version", version=f"%(prog)s {ntlab.__version__}")
    parser.add_argument("--config", help="INI sweep configuration")
    parser.add_argument("--out", help="append records to this file (default: print them)")
    parser.add_argument("--csv", help="write the CSV summary here")
    parser.add_argument("--cache", help="cache index (default: <out>.index.json)")
    parser.add_argument("--eps", type=float, help="ε in the (xy)^ε envelope factor")
    parser.add_argument("--threads", type=int, help="grid points run concurrently")
    parser.add_argument("-v", "--verbose", action="count", default=0)

    group = parser.add_argument_group("parameters", "each overrides the config grid with one value")
    for name in sorted(set(OPTIONS_TO_PARAMETERS.values()) - set(_FLAGS)):
        group.add_argument("--" + inflection.dasherize(name), dest=name, metavar="VALUE")
    group.add_argument("--poisson", dest="poisson", action="store_const", const="true")
    group.add_argument("--no-cross-check", dest="cross_check", action="store_const", const="false")
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    logging.captureWarnings(True)


def _build_config(args: argparse.Namespace) -> SweepConfig:
    options: Dict[str, Any] = {
        name: getattr(args, name)
        for name in set(OPTIONS_TO_PARAMETERS.values())
        if getattr(args, name, None) is not None
    }
    grid = {name: [value] for name, value in options_to_params(options).items()}
    if args.command == "sweep":
        if not args.config:
            raise InvalidParamException("config", "sweep needs --config")
        config = load_config(args.config)
    elif args.config:
        config = load_config(args.config, command=args.command)
    else:
        config = SweepConfig(command=args.command)
    config = config.override(
        grid=grid,
        out=args.out,
        csv=args.csv,
        cache=args.cache,
        threads=args.threads,
        eps=args.eps,
    )
    if not config.grid:
        raise InvalidParamException(
            config.command, f"{config.command}: no parameters given; see ntlab --help"
        )
    return config


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = _build_config(args)
        records = run_sweep(config)
    except InvalidParamException as exc:
        print(f"ntlab: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except pydantic.ValidationError as exc:
        print(f"ntlab: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InvariantViolation as exc:
        print(f"ntlab: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT

    if config.out is None:
        for record in records:
            print(record.to_line())

    errors = [record for record in records if record.status == "error"]
    logger.info("%s: %d records, %d errors", config.command, len(records), len(errors))
    for record in errors:
        print(f"ntlab: {record.command} {record.params}: {record.error}", file=sys.stderr)
    if any(record.error_type == InvariantViolation.__name__ for record in errors):
        return EXIT_INVARIANT
    if errors and not args.config and len(records) == 1:
        # a lone point given on the command line failed its preconditions
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
