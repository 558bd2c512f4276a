"""Command-line entry point: ``banalg <command> [options]``.

Exit codes: 0 computation completed (yes and no decisions alike), 1 harness
failures or an unexpected error, 2 input error, 3 solver failure.
"""

import argparse
import logging
import sys
from typing import Optional, Sequence, TextIO

from .const import CONVENTIONS, DEFAULT_CONVENTION, EXIT_INPUT_ERROR, FORMAT_JSON, FORMATS
from .controllers import ALL_COMMANDS, BaseCommand
from .exceptions import ConfigError
from .models.run_config import RunConfig
from .utils.config import default_seed, default_tol, log_level

_LOGGER = logging.getLogger(__name__)


def _int_literal(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer literal: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subparser per registered command, each carrying the global flags."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="log more (-v info, -vv debug)")
    common.add_argument("--seed", type=_int_literal, help="solver seed (default 0xC0FFEE or $BANALG_SEED)")
    common.add_argument("--tol", type=float, help="decision tolerance (default 1e-8 or $BANALG_TOL)")
    common.add_argument("--format", choices=FORMATS, default=FORMAT_JSON, help="output format")
    common.add_argument("--convention", choices=CONVENTIONS, default=DEFAULT_CONVENTION, help="φ-amenability convention")
    common.add_argument("--input", dest="input_path", help="algebra JSON file")
    common.add_argument("--algebra", dest="algebra_json", help="inline algebra or constructor JSON")

    parser = argparse.ArgumentParser(
        prog="banalg",
        description="Character spaces and Δ-weak amenability of finite-dimensional algebras.",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    for command in ALL_COMMANDS:
        sub = subparsers.add_parser(command.name, help=command.help, parents=[common])
        command.add_arguments(sub)
        sub.set_defaults(command_class=command)
    return parser


def configure_logging(verbosity: int, stream: Optional[TextIO] = None) -> None:
    """Route logs to stderr; ``-v`` selects INFO, ``-vv`` DEBUG, else ``$BANALG_LOG_LEVEL``."""
    if verbosity >= 2:
        level: int | str = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = log_level()
        if not isinstance(logging.getLevelName(level), int):
            level = logging.WARNING
    logging.basicConfig(
        level=level,
        stream=stream if stream is not None else sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def build_config(args: argparse.Namespace, command: type[BaseCommand]) -> RunConfig:
    """Merge parsed flags with environment defaults.

    Raises:
        ConfigError: On invalid values.
    """
    return RunConfig(
        command=command.name,
        input_path=args.input_path,
        algebra_json=args.algebra_json,
        phi=getattr(args, "phi", None),
        seed=args.seed if args.seed is not None else default_seed(),
        tol=args.tol if args.tol is not None else default_tol(),
        format=args.format,
        convention=args.convention,
        options=command.options_from(args),
    )


def main(
    argv: Optional[Sequence[str]] = None,
    stdout: Optional[TextIO] = None,
    stdin: Optional[TextIO] = None,
) -> int:
    """Run the CLI and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_INPUT_ERROR

    configure_logging(args.verbose)
    command_class: type[BaseCommand] = args.command_class
    try:
        config = build_config(args, command_class)
    except ConfigError as err:
        _LOGGER.error("Invalid configuration: %s", err)
        return err.exit_code
    return command_class(config, stdout=stdout, stdin=stdin).run()


if __name__ == "__main__":
    sys.exit(main())
