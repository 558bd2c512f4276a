"""Algebra, Element and LinearMap value objects.

An algebra is stored by its structure constants ``table[i, j, k]``, the
coefficient of ``e_k`` in ``e_i * e_j``. Elements are coefficient vectors
relative to that basis.
"""

from dataclasses import dataclass, field
from typing import Any, ClassVar, Dict, Optional, Sequence, Union

import numpy as np

from ..const import ASSOCIATIVITY_TOL
from ..exceptions import DimensionMismatch, NonAssociativeTable
from ..utils.linalg import linf, scaled_tol
from .base import SerializableMixin, frozen_array

VectorLike = Union["Element", np.ndarray, Sequence[complex]]


def associativity_residual(table: np.ndarray) -> float:
    """Max over all basis triples of ``|(e_i e_j) e_k - e_i (e_j e_k)|``."""
    if table.size == 0:
        return 0.0
    lhs = np.einsum("ijl,lkm->ijkm", table, table)
    rhs = np.einsum("jkl,ilm->ijkm", table, table)
    return linf(lhs - rhs)


@dataclass(frozen=True, eq=False)
class Element(SerializableMixin):
    """Coefficient vector of an element of an algebra.

    Attributes:
        coeffs: Complex coefficients relative to the algebra basis.
        algebra_dim: Dimension of the algebra the element belongs to.
    """

    coeffs: np.ndarray
    algebra_dim: int = -1

    _array_fields: ClassVar[Dict[str, int]] = {"coeffs": 1}

    def __post_init__(self) -> None:
        coeffs = frozen_array(np.asarray(self.coeffs, dtype=complex).reshape(-1))
        object.__setattr__(self, "coeffs", coeffs)
        if self.algebra_dim < 0:
            object.__setattr__(self, "algebra_dim", coeffs.shape[0])
        if coeffs.shape[0] != self.algebra_dim:
            raise DimensionMismatch(f"Element has {coeffs.shape[0]} coefficients, algebra has dimension {self.algebra_dim}")

    @property
    def l1_norm(self) -> float:
        """The ℓ¹ coefficient norm, used for reporting witness sizes."""
        return float(np.sum(np.abs(self.coeffs)))

    def is_close(self, other: VectorLike, tol: float = 1e-9) -> bool:
        """True when the coefficients agree within *tol* in max-modulus."""
        other_coeffs = other.coeffs if isinstance(other, Element) else np.asarray(other, dtype=complex)
        if other_coeffs.shape != self.coeffs.shape:
            return False
        return linf(self.coeffs - other_coeffs) <= tol

    def __add__(self, other: "Element") -> "Element":
        _check_same_dim(self, other)
        return Element(self.coeffs + other.coeffs, self.algebra_dim)

    def __sub__(self, other: "Element") -> "Element":
        _check_same_dim(self, other)
        return Element(self.coeffs - other.coeffs, self.algebra_dim)

    def __rmul__(self, scalar: complex) -> "Element":
        return Element(complex(scalar) * self.coeffs, self.algebra_dim)

    def __neg__(self) -> "Element":
        return Element(-self.coeffs, self.algebra_dim)

    def __repr__(self) -> str:
        return f"Element({np.array2string(self.coeffs, precision=6)})"


def _check_same_dim(first: Element, second: Element) -> None:
    if first.algebra_dim != second.algebra_dim:
        raise DimensionMismatch(f"Elements of dimensions {first.algebra_dim} and {second.algebra_dim} cannot be combined")


@dataclass(frozen=True, eq=False)
class Algebra(SerializableMixin):
    """Finite-dimensional associative algebra over ℂ.

    Attributes:
        dim: Dimension of the algebra, at least 1.
        table: Structure constants, shape ``(dim, dim, dim)``.
        labels: Basis labels, one per basis vector.
        provenance: Constructor tag (``"upper_triangular"``, ``"raw"``, ...).

    Raises:
        DimensionMismatch: If the table shape or label count is wrong.
        NonAssociativeTable: If associativity fails beyond
            ``1e-10 * (1 + max|c|)``.
    """

    dim: int
    table: np.ndarray
    labels: tuple[str, ...] = ()
    provenance: str = "raw"
    _associativity_residual: float = field(default=0.0, init=False, repr=False)

    _array_fields: ClassVar[Dict[str, int]] = {"table": 3}

    def __post_init__(self) -> None:
        try:
            dim = int(self.dim)
        except (TypeError, ValueError) as exc:
            raise DimensionMismatch(f"Algebra dimension must be an integer, got {self.dim!r}") from exc
        if dim < 1:
            raise DimensionMismatch(f"Algebra dimension must be at least 1, got {dim}")
        table = np.asarray(self.table, dtype=complex)
        if table.shape != (dim, dim, dim):
            raise DimensionMismatch(f"Structure table has shape {table.shape}, expected {(dim, dim, dim)}")
        labels = tuple(str(label) for label in self.labels) if self.labels else tuple(f"e{i + 1}" for i in range(dim))
        if len(labels) != dim:
            raise DimensionMismatch(f"Got {len(labels)} labels for an algebra of dimension {dim}")

        residual = associativity_residual(table)
        if residual > scaled_tol(ASSOCIATIVITY_TOL, linf(table)):
            raise NonAssociativeTable(
                f"Structure constants are not associative (residual {residual:.3e})",
                residual=residual,
            )

        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "table", frozen_array(table))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_associativity_residual", residual)

    # ------------------------------------------------------------------
    # Elements
    # ------------------------------------------------------------------

    @property
    def scale(self) -> float:
        """``max|c|`` over the structure constants."""
        return linf(self.table)

    @property
    def associativity_residual(self) -> float:
        return self._associativity_residual

    def element(self, coeffs: VectorLike) -> Element:
        """Wrap coefficients as an element of this algebra."""
        if isinstance(coeffs, Element):
            if coeffs.algebra_dim != self.dim:
                raise DimensionMismatch(f"Element of dimension {coeffs.algebra_dim} used in an algebra of dimension {self.dim}")
            return coeffs
        return Element(np.asarray(coeffs, dtype=complex), self.dim)

    def basis_element(self, index: int) -> Element:
        coeffs = np.zeros(self.dim, dtype=complex)
        coeffs[index] = 1.0
        return Element(coeffs, self.dim)

    def zero(self) -> Element:
        return Element(np.zeros(self.dim, dtype=complex), self.dim)

    def multiply(self, a: VectorLike, b: VectorLike) -> Element:
        """Bilinear extension of the structure constants."""
        x = self.element(a).coeffs
        y = self.element(b).coeffs
        return Element(np.einsum("i,j,ijk->k", x, y, self.table), self.dim)

    # ------------------------------------------------------------------
    # Multiplication operators
    # ------------------------------------------------------------------

    def left_matrix(self, a: VectorLike) -> np.ndarray:
        """Matrix of ``x -> a x``."""
        return np.einsum("i,ijk->kj", self.element(a).coeffs, self.table)

    def right_matrix(self, b: VectorLike) -> np.ndarray:
        """Matrix of ``x -> x b``."""
        return np.einsum("j,ijk->ki", self.element(b).coeffs, self.table)

    def left_operators(self) -> np.ndarray:
        """Stack of ``L_{e_i}``, shape ``(dim, dim, dim)``."""
        return np.transpose(self.table, (0, 2, 1))

    def right_operators(self) -> np.ndarray:
        """Stack of ``R_{e_j}``, shape ``(dim, dim, dim)``."""
        return np.transpose(self.table, (1, 2, 0))

    def __repr__(self) -> str:
        return f"Algebra(dim={self.dim}, provenance={self.provenance!r})"


@dataclass(frozen=True, eq=False)
class LinearMap(SerializableMixin):
    """Linear map between coefficient spaces, ``matrix`` is ``target x source``."""

    matrix: np.ndarray
    source_dim: int = -1
    target_dim: int = -1
    label: Optional[str] = None

    _array_fields: ClassVar[Dict[str, int]] = {"matrix": 2}

    def __post_init__(self) -> None:
        matrix = np.asarray(self.matrix, dtype=complex)
        if matrix.ndim != 2:
            raise DimensionMismatch(f"Linear map matrix must be 2-dimensional, got shape {matrix.shape}")
        if self.source_dim < 0:
            object.__setattr__(self, "source_dim", matrix.shape[1])
        if self.target_dim < 0:
            object.__setattr__(self, "target_dim", matrix.shape[0])
        if matrix.shape != (self.target_dim, self.source_dim):
            raise DimensionMismatch(f"Matrix shape {matrix.shape} does not match {self.target_dim}x{self.source_dim}")
        object.__setattr__(self, "matrix", frozen_array(matrix))

    def apply(self, element: VectorLike) -> Element:
        coeffs = element.coeffs if isinstance(element, Element) else np.asarray(element, dtype=complex)
        if coeffs.shape != (self.source_dim,):
            raise DimensionMismatch(f"Map expects {self.source_dim} coefficients, got {coeffs.shape}")
        return Element(self.matrix @ coeffs, self.target_dim)

    @classmethod
    def identity(cls, dim: int) -> "LinearMap":
        return cls(np.eye(dim, dtype=complex), dim, dim, label="identity")


def as_coeffs(value: Any, dim: int) -> np.ndarray:
    """Coefficient vector of an Element or array, checked against *dim*."""
    coeffs = value.coeffs if isinstance(value, Element) else np.asarray(value, dtype=complex).reshape(-1)
    if coeffs.shape != (dim,):
        raise DimensionMismatch(f"Expected {dim} coefficients, got {coeffs.shape[0]}")
    return coeffs
