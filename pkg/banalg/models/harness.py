"""Fixture corpus and theorem-harness result models."""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from ..const import FACT_TAGS
from ..exceptions import SchemaError
from .base import SerializableMixin


@dataclass(frozen=True)
class ExpectedFact(SerializableMixin):
    """One expected property of a fixture.

    Attributes:
        key: Fact kind (``dim``, ``characters``, ``phi_amenable``, ...).
        value: Expected value (int, bool or string).
        tag: Provenance, one of ``PUBLISHED``, ``DERIVED``, ``TRIVIAL``.
        phi: Character label the fact refers to, if any.
        convention: Dual-action convention for ``phi_amenable`` facts.
    """

    key: str
    value: Any = None
    tag: str = "DERIVED"
    phi: Optional[str] = None
    convention: Optional[str] = None

    def __post_init__(self) -> None:
        if self.tag not in FACT_TAGS:
            raise SchemaError(f"Unknown provenance tag {self.tag!r} on fact {self.key!r}")

    @property
    def name(self) -> str:
        parts = [self.key]
        if self.phi:
            parts.append(self.phi)
        if self.convention:
            parts.append(self.convention)
        return ":".join(parts)


@dataclass(frozen=True)
class Fixture(SerializableMixin):
    """A named algebra of the corpus with its expected facts."""

    name: str
    family: str
    spec: Dict[str, Any] = field(default_factory=dict)
    facts: tuple[ExpectedFact, ...] = ()

    def __post_init__(self) -> None:
        facts = tuple(f if isinstance(f, ExpectedFact) else ExpectedFact.from_dict(f) for f in self.facts)
        object.__setattr__(self, "facts", facts)


@dataclass(frozen=True)
class CheckResult(SerializableMixin):
    """Outcome of one harness check on one fixture."""

    fixture: str
    check: str
    passed: bool
    detail: str = ""

    @property
    def name(self) -> str:
        return f"{self.fixture}::{self.check}"


@dataclass(frozen=True)
class HarnessSummary(SerializableMixin):
    """Machine-readable summary of a harness run.

    ``failures`` lists the names of failed checks, sorted.
    """

    fixtures: int = 0
    checks: int = 0
    failures: tuple[str, ...] = ()
    seed: int = 0
    tol: float = 0.0
    _results: tuple[CheckResult, ...] = field(default=(), repr=False)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def results(self) -> tuple[CheckResult, ...]:
        return self._results
