"""RunConfig: validated settings of one CLI invocation."""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from ..const import CONVENTIONS, DEFAULT_CONVENTION, DEFAULT_SEED, DEFAULT_TOL, FORMAT_JSON, FORMATS
from ..exceptions import ConfigError
from .base import SerializableMixin


@dataclass(frozen=True)
class RunConfig(SerializableMixin):
    """Settings shared by every subcommand.

    Attributes:
        command: Subcommand name.
        input_path: Algebra file, or None for inline/stdin input.
        algebra_json: Inline algebra or constructor JSON.
        phi: Character selector (``zero``, ``phi_k``, ``k`` or a covector literal).
        seed: Seed for the character solver.
        tol: Decision tolerance.
        format: ``json`` or ``text``.
        convention: φ-amenability convention.
        options: Command-specific extras.
    """

    command: str
    input_path: Optional[str] = None
    algebra_json: Optional[str] = None
    phi: Optional[str] = None
    seed: int = DEFAULT_SEED
    tol: float = DEFAULT_TOL
    format: str = FORMAT_JSON
    convention: str = DEFAULT_CONVENTION
    options: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.tol > 0:
            raise ConfigError(f"Tolerance must be positive, got {self.tol}")
        if self.format not in FORMATS:
            raise ConfigError(f"Unknown output format {self.format!r}")
        if self.convention not in CONVENTIONS:
            raise ConfigError(f"Unknown convention {self.convention!r}")
