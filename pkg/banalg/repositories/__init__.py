"""Repository layer for banalg: algebra documents and the fixture corpus."""

from .algebra_repository import AlgebraRepository, load_algebra
from .fixture_repository import FixtureRepository, load_corpus

__all__ = [
    "AlgebraRepository",
    "FixtureRepository",
    "load_algebra",
    "load_corpus",
]
