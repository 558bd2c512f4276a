"""Dataclass models for banalg."""

from .algebra import Algebra, Element, LinearMap
from .base import SerializableMixin
from .character import Character, CharacterLike, CharacterSet, ZeroCharacter
from .harness import CheckResult, ExpectedFact, Fixture, HarnessSummary
from .report import DecisionReport, WitnessCheckReport
from .run_config import RunConfig
from .subspace import SubspaceBasis

__all__ = [
    "Algebra",
    "Character",
    "CharacterLike",
    "CharacterSet",
    "CheckResult",
    "DecisionReport",
    "Element",
    "ExpectedFact",
    "Fixture",
    "HarnessSummary",
    "LinearMap",
    "RunConfig",
    "SerializableMixin",
    "SubspaceBasis",
    "WitnessCheckReport",
    "ZeroCharacter",
]
