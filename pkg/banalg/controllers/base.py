"""Base command class and shared helpers for the CLI controllers."""

import argparse
import json
import logging
import sys
from functools import wraps
from typing import Any, Callable, Optional, TextIO

from ..const import EXIT_OK, FORMAT_JSON
from ..exceptions import BanalgError, SchemaError, SelectorError
from ..models.algebra import Algebra
from ..models.base import encode_value
from ..models.character import CharacterLike
from ..models.run_config import RunConfig
from ..repositories.algebra_repository import AlgebraRepository
from ..services.character_solver import resolve_character

_LOGGER = logging.getLogger(__name__)

__all__ = ["BaseCommand", "handle_errors", "parse_json_option", "format_complex"]


def handle_errors(func: Callable[..., int]) -> Callable[..., int]:
    """Map exceptions raised by a command to exit codes.

    ``BanalgError`` subclasses carry their own exit code (2 for input
    errors, 3 for solver failures); anything else is logged with its
    traceback and mapped to 1.
    """

    @wraps(func)
    def wrapper(self: "BaseCommand", *args: Any, **kwargs: Any) -> int:
        try:
            return func(self, *args, **kwargs)
        except BanalgError as err:
            if err.residual is not None:
                _LOGGER.error("%s failed: %s: %s (residual %.3e)", self.name, type(err).__name__, err, err.residual)
            else:
                _LOGGER.error("%s failed: %s: %s", self.name, type(err).__name__, err)
            return err.exit_code
        except Exception as err:  # noqa: BLE001
            _LOGGER.exception("Unexpected failure in %s", self.name, exc_info=err)
            return 1

    return wrapper


def parse_json_option(raw: Optional[str], option: str) -> Any:
    """Parse a JSON option value; ``@path`` reads the JSON from a file.

    Raises:
        SchemaError: On malformed JSON or an unreadable file.
    """
    if raw is None:
        return None
    text = raw
    if raw.startswith("@"):
        text = AlgebraRepository.read_text(raw[1:])
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{option} is not valid JSON: {exc}") from exc


def format_complex(value: complex, digits: int = 6) -> str:
    value = complex(value)
    if abs(value.imag) < 10 ** (-digits):
        return f"{value.real:.{digits}g}"
    return f"{value.real:.{digits}g}{value.imag:+.{digits}g}j"


class BaseCommand:
    """One CLI subcommand.

    Subclasses set:
        * ``name``          – subcommand name, e.g. ``"dw-amen"``
        * ``help``          – one-line description for ``--help``
        * ``needs_algebra`` – whether an algebra is read from the input
        * ``needs_phi``     – whether ``--phi`` is required

    and implement ``execute()``, returning a payload that is a model, a
    dict or a list. ``render_text()`` formats it for ``--format text``.
    """

    name: str = ""
    help: str = ""
    needs_algebra: bool = True
    needs_phi: bool = False

    def __init__(self, config: RunConfig, stdout: Optional[TextIO] = None, stdin: Optional[TextIO] = None) -> None:
        self.config = config
        self.stdout = stdout if stdout is not None else sys.stdout
        self.stdin = stdin if stdin is not None else sys.stdin
        self._algebra: Optional[Algebra] = None

    # ------------------------------------------------------------------
    # Parser wiring
    # ------------------------------------------------------------------

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        """Add subcommand-specific arguments; ``--phi`` is added when needed."""
        if cls.needs_phi:
            parser.add_argument("--phi", required=True, help="character: zero, phi_k, k, or [[re,im],...]")

    @classmethod
    def options_from(cls, args: argparse.Namespace) -> dict[str, Any]:
        """Subcommand-specific values copied into ``RunConfig.options``."""
        return {}

    # ------------------------------------------------------------------
    # Inputs
    # ------------------------------------------------------------------

    @property
    def algebra(self) -> Algebra:
        if self._algebra is None:
            repo = AlgebraRepository(self.config.seed, self.config.tol)
            self._algebra = repo.read(self.config.input_path, self.config.algebra_json, self.stdin)
            _LOGGER.debug("%s: loaded %r", self.name, self._algebra)
        return self._algebra

    def phi(self) -> CharacterLike:
        """The character named by ``--phi``.

        Raises:
            SelectorError: If ``--phi`` is missing or does not resolve.
        """
        if self.config.phi is None:
            raise SelectorError(f"{self.name} needs --phi")
        return resolve_character(self.algebra, self.config.phi, self.config.tol, self.config.seed)

    # ------------------------------------------------------------------
    # Execution
    # ------------------------------------------------------------------

    def execute(self) -> Any:
        raise NotImplementedError(f"{type(self).__name__} must implement execute()")

    def exit_code(self, payload: Any) -> int:
        return EXIT_OK

    def render_text(self, payload: Any) -> str:
        data = encode_value(payload)
        if isinstance(data, dict):
            return "\n".join(f"{key}: {value}" for key, value in data.items())
        return str(data)

    def emit(self, payload: Any) -> None:
        if self.config.format == FORMAT_JSON:
            text = json.dumps(encode_value(payload), ensure_ascii=False, indent=2)
        else:
            text = self.render_text(payload)
        self.stdout.write(text + "\n")
        self.stdout.flush()

    @handle_errors
    def run(self) -> int:
        _LOGGER.info("Running %s (seed %#x, tol %g)", self.name, self.config.seed, self.config.tol)
        payload = self.execute()
        self.emit(payload)
        code = self.exit_code(payload)
        _LOGGER.info("%s finished with exit code %d", self.name, code)
        return code
