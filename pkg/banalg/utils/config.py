"""Runtime configuration lookup.

Values come from the process environment, optionally seeded from a ``.env``
file in the working directory. Defaults live in ``const.py``.
"""

import logging
import os
from typing import Optional

from dotenv import load_dotenv

from ..const import DEFAULT_SEED, DEFAULT_TOL, ENV_LOG_LEVEL, ENV_SEED, ENV_TOL
from ..exceptions import ConfigError

_LOGGER = logging.getLogger(__name__)

_DOTENV_LOADED = False


def _ensure_dotenv() -> None:
    """Load ``.env`` once; existing environment variables win."""
    global _DOTENV_LOADED
    if not _DOTENV_LOADED:
        load_dotenv(override=False)
        _DOTENV_LOADED = True


def get_config(key: str, default: Optional[str] = None) -> Optional[str]:
    """Return the configuration value for *key*, or *default*."""
    _ensure_dotenv()
    value = os.getenv(key)
    if value is None or value.strip() == "":
        return default
    _LOGGER.debug("Config %s=%s", key, value)
    return value.strip()


def default_seed() -> int:
    """Seed from ``BANALG_SEED`` (any int literal, e.g. ``0xC0FFEE``) or the built-in default.

    Raises:
        ConfigError: If the variable is set but not an integer literal.
    """
    raw = get_config(ENV_SEED)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw, 0)
    except ValueError as exc:
        raise ConfigError(f"{ENV_SEED} must be an integer literal, got {raw!r}") from exc


def default_tol() -> float:
    """Tolerance from ``BANALG_TOL`` or the built-in default.

    Raises:
        ConfigError: If the value is not a positive float.
    """
    raw = get_config(ENV_TOL)
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError as exc:
        raise ConfigError(f"{ENV_TOL} must be a float, got {raw!r}") from exc
    if not tol > 0:
        raise ConfigError(f"{ENV_TOL} must be positive, got {tol}")
    return tol


def log_level(default: str = "WARNING") -> str:
    """Logging level name from ``BANALG_LOG_LEVEL``."""
    return (get_config(ENV_LOG_LEVEL, default) or default).upper()
