"""Character models.

A character is a nonzero multiplicative linear functional, stored as a
covector: ``phi(a) = covector . coeffs(a)``. The zero functional needed by
the ``phi = 0`` case of Δ-weak amenability has its own sentinel type.
"""

from dataclasses import dataclass, field
from typing import ClassVar, Dict, Iterator, Optional, Union

import numpy as np

from ..const import DEDUPE_THRESHOLD, ZERO_LABEL
from ..exceptions import CharacterNotVerified, SelectorError
from ..utils.linalg import linf
from .base import SerializableMixin, frozen_array


@dataclass(frozen=True, eq=False)
class Character(SerializableMixin):
    """Nonzero multiplicative linear functional.

    Attributes:
        covector: Values on the basis vectors.
        residual: ``max |phi(e_i e_j) - phi(e_i) phi(e_j)|`` over basis pairs.
        label: Display label such as ``phi_2``.
    """

    covector: np.ndarray
    residual: float = 0.0
    label: Optional[str] = None

    _array_fields: ClassVar[Dict[str, int]] = {"covector": 1}

    is_zero: ClassVar[bool] = False

    def __post_init__(self) -> None:
        covector = np.asarray(self.covector, dtype=complex).reshape(-1)
        if linf(covector) <= DEDUPE_THRESHOLD:
            raise CharacterNotVerified("A character must be a nonzero functional")
        object.__setattr__(self, "covector", frozen_array(covector))
        object.__setattr__(self, "residual", float(self.residual))

    @property
    def dim(self) -> int:
        return int(self.covector.shape[0])

    def distance(self, other: Union["Character", "ZeroCharacter", np.ndarray]) -> float:
        """ℓ∞ distance between covectors."""
        vec = other if isinstance(other, np.ndarray) else other.covector
        return linf(self.covector - np.asarray(vec, dtype=complex))

    def relabel(self, label: str) -> "Character":
        return Character(self.covector, self.residual, label)

    def __repr__(self) -> str:
        return f"Character({self.label or '?'}, {np.array2string(self.covector, precision=6)})"


@dataclass(frozen=True, eq=False)
class ZeroCharacter(SerializableMixin):
    """The zero functional, used where ``phi`` ranges over ``Δ(A) ∪ {0}``."""

    dim: int
    label: str = ZERO_LABEL
    residual: float = 0.0

    is_zero: ClassVar[bool] = True

    @property
    def covector(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=complex)

    def distance(self, other: Union[Character, "ZeroCharacter", np.ndarray]) -> float:
        vec = other if isinstance(other, np.ndarray) else other.covector
        return linf(np.asarray(vec, dtype=complex))


CharacterLike = Union[Character, ZeroCharacter]


@dataclass(frozen=True, eq=False)
class CharacterSet(SerializableMixin):
    """The full character space Δ(A) as computed by the solver.

    Attributes:
        characters: Labelled characters in canonical order.
        seed: Seed of the random generator used by the solver.
        retries: Number of retries the solver needed.
        algebra_dim: Dimension of the algebra.
    """

    characters: tuple[Character, ...] = ()
    seed: int = 0
    retries: int = 0
    algebra_dim: int = 0
    _by_label: Dict[str, Character] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        characters = tuple(
            c if isinstance(c, Character) else Character.from_dict(c) for c in self.characters  # type: ignore[arg-type]
        )
        object.__setattr__(self, "characters", characters)
        object.__setattr__(self, "_by_label", {c.label: c for c in characters if c.label})

    def __len__(self) -> int:
        return len(self.characters)

    def __iter__(self) -> Iterator[Character]:
        return iter(self.characters)

    def __getitem__(self, index: int) -> Character:
        return self.characters[index]

    @property
    def labels(self) -> list[str]:
        return [c.label or "" for c in self.characters]

    @property
    def matrix(self) -> np.ndarray:
        """``k x n`` array whose rows are the covectors."""
        if not self.characters:
            return np.zeros((0, self.algebra_dim), dtype=complex)
        return np.vstack([c.covector for c in self.characters])

    def by_label(self, label: str) -> Character:
        """Return the character labelled *label*.

        Raises:
            SelectorError: If no character carries that label.
        """
        try:
            return self._by_label[label]
        except KeyError as exc:
            known = ", ".join(self.labels) or "none"
            raise SelectorError(f"No character labelled {label!r} (known: {known})") from exc

    def others(self, phi: CharacterLike) -> list[Character]:
        """Characters at ℓ∞ distance above the dedupe threshold from *phi*."""
        return [c for c in self.characters if c.distance(phi) > DEDUPE_THRESHOLD]

    def to_dict(self) -> dict:
        return {
            "characters": [c.to_dict() for c in self.characters],
            "seed": self.seed,
            "retries": self.retries,
            "algebra_dim": self.algebra_dim,
        }
