"""SubspaceBasis model: orthonormal basis of a subspace of an algebra."""

from dataclasses import dataclass
from typing import ClassVar, Dict

import numpy as np

from ..exceptions import DimensionMismatch
from ..utils.linalg import linf, span_distance
from .algebra import Element, VectorLike, as_coeffs
from .base import SerializableMixin, frozen_array


@dataclass(frozen=True, eq=False)
class SubspaceBasis(SerializableMixin):
    """Orthonormal basis of a linear subspace (a kernel, an ideal, a summand).

    Attributes:
        basis: ``ambient_dim x k`` matrix whose columns are orthonormal.
        ambient_dim: Dimension of the surrounding algebra.
        is_two_sided_ideal: Closure flag computed when the basis was built.
        closure_residual: Largest distance of ``e_i v`` or ``v e_i`` from
            the span, over all basis pairs.
    """

    basis: np.ndarray
    ambient_dim: int = -1
    is_two_sided_ideal: bool = False
    closure_residual: float = 0.0

    _array_fields: ClassVar[Dict[str, int]] = {"basis": 2}

    def __post_init__(self) -> None:
        basis = np.asarray(self.basis, dtype=complex)
        if basis.size == 0 and self.ambient_dim >= 0:
            basis = np.zeros((self.ambient_dim, 0), dtype=complex)
        if basis.ndim != 2:
            raise DimensionMismatch(f"Subspace basis must be a matrix, got shape {basis.shape}")
        if self.ambient_dim < 0:
            object.__setattr__(self, "ambient_dim", basis.shape[0])
        if basis.shape[0] != self.ambient_dim:
            raise DimensionMismatch(f"Basis vectors have {basis.shape[0]} entries, ambient dimension is {self.ambient_dim}")
        gram = basis.conj().T @ basis
        if linf(gram - np.eye(basis.shape[1])) > 1e-10:
            raise DimensionMismatch("Subspace basis vectors are not orthonormal")
        object.__setattr__(self, "basis", frozen_array(basis))
        object.__setattr__(self, "is_two_sided_ideal", bool(self.is_two_sided_ideal))

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])

    @property
    def vectors(self) -> list[Element]:
        """The basis vectors as elements of the ambient algebra."""
        return [Element(self.basis[:, j], self.ambient_dim) for j in range(self.dim)]

    def coordinates(self, value: VectorLike) -> np.ndarray:
        """Coordinates of the orthogonal projection of *value* onto the subspace."""
        return self.basis.conj().T @ as_coeffs(value, self.ambient_dim)

    def distance(self, value: VectorLike) -> float:
        return span_distance(as_coeffs(value, self.ambient_dim), self.basis)

    def contains(self, value: VectorLike, tol: float = 1e-9) -> bool:
        return self.distance(value) <= tol

    def __repr__(self) -> str:
        return f"SubspaceBasis(dim={self.dim}, ambient_dim={self.ambient_dim}, ideal={self.is_two_sided_ideal})"
