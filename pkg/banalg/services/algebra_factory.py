"""Algebra constructors.

Every constructor returns a validated ``Algebra`` (associativity is checked
when the model is built). ``AlgebraFactory`` dispatches constructor JSON of
the form ``{"kind": ..., ...}`` onto these functions.
"""

import itertools
import logging
from typing import Any, Mapping, Optional, Sequence

import numpy as np

from ..const import DEFAULT_SEED, DEFAULT_TOL, HOMOMORPHISM_TOL, IDEAL_TOL, RANK_TOL, UNIT_LABEL
from ..exceptions import (
    CharacterNotVerified,
    DimensionMismatch,
    NotAGroup,
    NotAnIdeal,
    SchemaError,
    UnknownConstructor,
    ZeroFunctional,
)
from ..models.algebra import Algebra, Element, LinearMap, VectorLike, as_coeffs
from ..models.character import Character
from ..models.subspace import SubspaceBasis
from ..utils.complex_codec import decode_array
from ..utils.linalg import linf, numerical_rank, orthogonal_complement, orthonormal_basis, scaled_tol

_LOGGER = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Basic construction and arithmetic
# ---------------------------------------------------------------------------


def new_algebra(
    dim: int,
    table: Any,
    labels: Optional[Sequence[str]] = None,
    provenance: str = "raw",
) -> Algebra:
    """Validate structure constants and return the algebra.

    Raises:
        DimensionMismatch: If ``table`` is not ``dim x dim x dim``.
        NonAssociativeTable: If associativity fails beyond tolerance.
    """
    return Algebra(dim=dim, table=np.asarray(table, dtype=complex), labels=tuple(labels or ()), provenance=provenance)


def multiply(algebra: Algebra, a: VectorLike, b: VectorLike) -> Element:
    """Product ``a * b`` in *algebra*."""
    return algebra.multiply(a, b)


def zero_algebra(dim: int) -> Algebra:
    """Algebra of dimension *dim* with every product zero."""
    return new_algebra(dim, np.zeros((dim, dim, dim), dtype=complex), provenance="zero")


def upper_triangular(n: int) -> Algebra:
    """Upper-triangular ``n x n`` matrices on the matrix units ``E_ij``, ``i <= j``.

    Basis order is row-major: ``E11, E12, ..., E1n, E22, ...``.
    """
    if n < 1:
        raise DimensionMismatch(f"upper_triangular needs n >= 1, got {n}")
    units = [(i, j) for i in range(n) for j in range(i, n)]
    index = {unit: k for k, unit in enumerate(units)}
    dim = len(units)
    table = np.zeros((dim, dim, dim), dtype=complex)
    for p, (i, j) in enumerate(units):
        for q, (k, m) in enumerate(units):
            if j == k:
                table[p, q, index[(i, m)]] = 1.0
    sep = "" if n < 10 else ","
    labels = [f"E{i + 1}{sep}{j + 1}" for i, j in units]
    return new_algebra(dim, table, labels, provenance="upper_triangular")


def a_phi_algebra(dim: int, phi: Any) -> Algebra:
    """The algebra ``A_phi(C^dim)`` with product ``ab = phi(a) b``.

    Raises:
        ZeroFunctional: If ``phi`` vanishes.
        DimensionMismatch: If ``phi`` has the wrong length.
    """
    covector = np.asarray(phi, dtype=complex).reshape(-1)
    if covector.shape != (dim,):
        raise DimensionMismatch(f"phi has {covector.shape[0]} entries, expected {dim}")
    if linf(covector) == 0.0:
        raise ZeroFunctional("a_phi_algebra needs a nonzero functional")
    table = np.zeros((dim, dim, dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            table[i, j, j] = covector[i]
    return new_algebra(dim, table, provenance="a_phi")


def lau_product(a: Algebra, b: Algebra, theta: Any, tol: float = DEFAULT_TOL) -> Algebra:
    """θ-Lau product ``A x_θ B``.

    ``(a, b)(a1, b1) = (a a1 + θ(b) a1 + θ(b1) a, b b1)``; the basis of A comes
    first, then the basis of B.

    Raises:
        CharacterNotVerified: If ``theta`` is not a character of B.
    """
    from .character_solver import verify_character

    covector = theta.covector if isinstance(theta, Character) else np.asarray(theta, dtype=complex).reshape(-1)
    if covector.shape != (b.dim,):
        raise CharacterNotVerified(f"theta has {covector.shape[0]} entries, B has dimension {b.dim}")
    residual = verify_character(b, covector)
    if linf(covector) == 0.0 or residual > scaled_tol(tol, b.scale):
        raise CharacterNotVerified(f"theta is not a character of B (residual {residual:.3e})", residual=residual)

    m, n = a.dim, b.dim
    table = np.zeros((m + n, m + n, m + n), dtype=complex)
    table[:m, :m, :m] = a.table
    table[m:, m:, m:] = b.table
    for i in range(m):
        for j in range(n):
            table[i, m + j, i] += covector[j]
            table[m + j, i, i] += covector[j]
    labels = [f"({label},0)" for label in a.labels] + [f"(0,{label})" for label in b.labels]
    return new_algebra(m + n, table, labels, provenance="lau")


def cyclic_group_cayley(m: int) -> list[list[int]]:
    """Cayley table of ℤ/m, elements ordered by residue."""
    if m < 1:
        raise NotAGroup(f"cyclic group order must be at least 1, got {m}")
    return [[(i + j) % m for j in range(m)] for i in range(m)]


def symmetric_group_cayley(n: int) -> list[list[int]]:
    """Cayley table of S_n, permutations in lexicographic order (identity first).

    The product ``s * t`` is the composition ``x -> s(t(x))``.
    """
    if n < 1:
        raise NotAGroup(f"symmetric group degree must be at least 1, got {n}")
    perms = list(itertools.permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    return [[index[tuple(s[t[x]] for x in range(n))] for t in perms] for s in perms]


def _validate_cayley(cayley: Sequence[Sequence[int]]) -> np.ndarray:
    try:
        table = np.asarray(cayley, dtype=int)
    except (TypeError, ValueError) as exc:
        raise NotAGroup(f"Cayley table must be a square integer table: {exc}") from exc
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise NotAGroup(f"Cayley table must be square and non-empty, got shape {table.shape}")
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise NotAGroup("Cayley table entries must be element indices")
    # associativity: (gh)k = g(hk)
    idx = np.arange(n)
    left = table[table[:, :, None], idx[None, None, :]]
    right = table[idx[:, None, None], table[None, :, :]]
    if not np.array_equal(left, right):
        raise NotAGroup("Cayley table is not associative")
    identities = [e for e in range(n) if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx)]
    if not identities:
        raise NotAGroup("Cayley table has no identity element")
    e = identities[0]
    for g in range(n):
        if not np.any(table[g] == e) or not np.any(table[:, g] == e):
            raise NotAGroup(f"Element {g} has no inverse")
    return table


def finite_group_algebra(cayley: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None) -> Algebra:
    """Group algebra ℂ[G] on the basis of group elements.

    Raises:
        NotAGroup: If the table fails closure, associativity, identity or inverses.
    """
    table = _validate_cayley(cayley)
    n = table.shape[0]
    constants = np.zeros((n, n, n), dtype=complex)
    for g in range(n):
        for h in range(n):
            constants[g, h, table[g, h]] = 1.0
    return new_algebra(n, constants, labels or [f"g{g}" for g in range(n)], provenance="group")


def direct_sum(a: Algebra, b: Algebra) -> Algebra:
    """Direct sum ``A ⊕ B`` with componentwise product."""
    m, n = a.dim, b.dim
    table = np.zeros((m + n, m + n, m + n), dtype=complex)
    table[:m, :m, :m] = a.table
    table[m:, m:, m:] = b.table
    labels = [f"({label},0)" for label in a.labels] + [f"(0,{label})" for label in b.labels]
    return new_algebra(m + n, table, labels, provenance="direct_sum")


def unitization(a: Algebra) -> Algebra:
    """``A¹ = A ⊕ ℂ`` with the adjoined unit as the last basis vector."""
    n = a.dim
    table = np.zeros((n + 1, n + 1, n + 1), dtype=complex)
    table[:n, :n, :n] = a.table
    for i in range(n):
        table[n, i, i] = 1.0
        table[i, n, i] = 1.0
    table[n, n, n] = 1.0
    unit_label = UNIT_LABEL if UNIT_LABEL not in a.labels else f"{UNIT_LABEL}'"
    return new_algebra(n + 1, table, [*a.labels, unit_label], provenance="unitization")


# ---------------------------------------------------------------------------
# Subspaces, ideals, quotients
# ---------------------------------------------------------------------------


def closure_residuals(algebra: Algebra, basis: np.ndarray) -> tuple[float, float]:
    """Distances of ``e_i v`` and ``v e_i`` from span(basis), maximized over pairs."""
    if basis.shape[1] == 0:
        return 0.0, 0.0
    projector = np.eye(algebra.dim) - basis @ basis.conj().T
    left = np.einsum("ikj,jq->ikq", algebra.left_operators(), basis)
    right = np.einsum("ikj,jq->ikq", algebra.right_operators(), basis)
    left_out = np.einsum("lk,ikq->ilq", projector, left)
    right_out = np.einsum("lk,ikq->ilq", projector, right)
    return linf(left_out), linf(right_out)


def span(algebra: Algebra, vectors: Any, *, require_ideal: bool = False) -> SubspaceBasis:
    """Orthonormal basis of the span of *vectors* with its ideal flag.

    Args:
        algebra: Ambient algebra.
        vectors: Elements, coefficient vectors, or an ``n x k`` matrix of columns.
        require_ideal: Raise when the span is not a two-sided ideal.

    Raises:
        NotAnIdeal: If ``require_ideal`` and the closure residual exceeds 1e-9.
    """
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        columns = vectors.astype(complex)
    else:
        items = [as_coeffs(v, algebra.dim) for v in vectors]
        columns = np.column_stack(items) if items else np.zeros((algebra.dim, 0), dtype=complex)
    if columns.shape[0] != algebra.dim:
        raise DimensionMismatch(f"Vectors have {columns.shape[0]} entries, algebra has dimension {algebra.dim}")
    basis = orthonormal_basis(columns, RANK_TOL)
    left, right = closure_residuals(algebra, basis)
    residual = max(left, right)
    is_ideal = residual <= scaled_tol(IDEAL_TOL, algebra.scale)
    if require_ideal and not is_ideal:
        raise NotAnIdeal(f"Subspace is not a two-sided ideal (closure residual {residual:.3e})", residual=residual)
    return SubspaceBasis(basis, algebra.dim, is_ideal, residual)


def _product_coordinates(algebra: Algebra, source: np.ndarray, target: np.ndarray) -> np.ndarray:
    """``T[p, q, r]``: coordinate r (in *target*) of ``source_p * source_q``."""
    products = np.einsum("ip,jq,ijk->pqk", source, source, algebra.table)
    return np.einsum("pqk,kr->pqr", products, target.conj())


def subalgebra(algebra: Algebra, subspace: SubspaceBasis) -> Algebra:
    """The algebra structure of a multiplicatively closed subspace, in its basis coordinates.

    Raises:
        NotAnIdeal: If products of basis vectors leave the subspace.
        DimensionMismatch: If the subspace is zero.
    """
    q = subspace.basis
    if q.shape[1] == 0:
        raise DimensionMismatch("The zero subspace is not an algebra")
    products = np.einsum("ip,jq,ijk->pqk", q, q, algebra.table)
    outside = products - np.einsum("pqk,kr,lr->pql", products, q.conj(), q)
    residual = linf(outside)
    if residual > scaled_tol(IDEAL_TOL, algebra.scale):
        raise NotAnIdeal(f"Subspace is not closed under multiplication (residual {residual:.3e})", residual=residual)
    table = _product_coordinates(algebra, q, q)
    return new_algebra(q.shape[1], table, provenance="subalgebra")


def quotient(algebra: Algebra, ideal: SubspaceBasis) -> tuple[Algebra, LinearMap]:
    """Quotient ``A / I`` on the orthogonal complement of I.

    Returns:
        ``(quotient_algebra, projection)``; the projection is ``C^H`` where
        the columns of C span the complement.

    Raises:
        NotAnIdeal: If I is not flagged as a two-sided ideal.
        DimensionMismatch: If ``I`` is the whole algebra.
    """
    if ideal.ambient_dim != algebra.dim:
        raise DimensionMismatch(f"Ideal lives in dimension {ideal.ambient_dim}, algebra has dimension {algebra.dim}")
    if not ideal.is_two_sided_ideal:
        raise NotAnIdeal("quotient needs a two-sided ideal", residual=ideal.closure_residual)
    if ideal.dim >= algebra.dim:
        raise DimensionMismatch("Cannot take the quotient by the whole algebra")
    complement = orthogonal_complement(ideal.basis, algebra.dim)
    table = _product_coordinates(algebra, complement, complement)
    quotient_algebra = new_algebra(complement.shape[1], table, provenance="quotient")
    projection = LinearMap(complement.conj().T, algebra.dim, complement.shape[1], label="projection")
    _LOGGER.debug("quotient: dim %d / %d -> %d", algebra.dim, ideal.dim, quotient_algebra.dim)
    return quotient_algebra, projection


def is_homomorphism(source: Algebra, target: Algebra, h: LinearMap) -> float:
    """Max over basis pairs of ``|h(e_i e_j) - h(e_i) h(e_j)|``."""
    if h.source_dim != source.dim or h.target_dim != target.dim:
        raise DimensionMismatch(f"Map is {h.source_dim} -> {h.target_dim}, algebras are {source.dim} -> {target.dim}")
    image_of_products = np.einsum("ijk,lk->ijl", source.table, h.matrix)
    products_of_images = np.einsum("pi,qj,pqr->ijr", h.matrix, h.matrix, target.table)
    return linf(image_of_products - products_of_images)


def is_surjective(h: LinearMap) -> bool:
    return numerical_rank(h.matrix, RANK_TOL) == h.target_dim


def direct_sum_projection(a: Algebra, b: Algebra, first: bool = True) -> LinearMap:
    """Coordinate projection of ``A ⊕ B`` onto one summand."""
    m, n = a.dim, b.dim
    if first:
        matrix = np.hstack([np.eye(m), np.zeros((m, n))])
        return LinearMap(matrix, m + n, m, label="first_summand")
    matrix = np.hstack([np.zeros((n, m)), np.eye(n)])
    return LinearMap(matrix, m + n, n, label="second_summand")


def homomorphism_residual_ok(source: Algebra, target: Algebra, h: LinearMap) -> bool:
    return is_homomorphism(source, target, h) <= scaled_tol(HOMOMORPHISM_TOL, max(source.scale, target.scale))


# ---------------------------------------------------------------------------
# Constructor JSON dispatch
# ---------------------------------------------------------------------------


class AlgebraFactory:
    """Build algebras from constructor specs such as ``{"kind": "upper_triangular", "n": 3}``.

    Specs nest: ``lau``, ``direct_sum``, ``unitization`` and ``quotient`` take
    other specs as operands. The seed is used when a spec refers to a
    character by label (``theta: "phi_1"``, ``kernel_of: "phi_2"``).
    """

    def __init__(self, seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOL) -> None:
        self._seed = seed
        self._tol = tol

    def create(self, spec: Mapping[str, Any]) -> Algebra:
        """Build the algebra described by *spec*.

        Raises:
            UnknownConstructor: If the kind is not known.
            SchemaError: If a required parameter is missing or malformed.
        """
        if not isinstance(spec, Mapping):
            raise SchemaError(f"Constructor spec must be an object, got {type(spec).__name__}")
        kind = str(spec.get("kind", "raw")).lower()
        _LOGGER.debug("Building algebra of kind %s", kind)

        try:
            if kind == "raw":
                return new_algebra(
                    int(spec["dim"]),
                    decode_array(spec["table"], 3),
                    spec.get("labels"),
                    spec.get("provenance", "raw"),
                )

            elif kind == "upper_triangular":
                return upper_triangular(int(spec["n"]))

            elif kind == "a_phi":
                dim = int(spec["dim"])
                phi = decode_array(spec["phi"], 1) if "phi" in spec else _first_coordinate(dim)
                return a_phi_algebra(dim, phi)

            elif kind == "lau":
                a = self.create(spec["a"])
                b = self.create(spec["b"])
                return lau_product(a, b, self.resolve_covector(b, spec["theta"]), self._tol)

            elif kind == "group":
                if "cayley" in spec:
                    return finite_group_algebra(spec["cayley"], spec.get("labels"))
                if "cyclic" in spec:
                    return finite_group_algebra(cyclic_group_cayley(int(spec["cyclic"])))
                if "symmetric" in spec:
                    return finite_group_algebra(symmetric_group_cayley(int(spec["symmetric"])))
                raise SchemaError("group spec needs one of 'cayley', 'cyclic' or 'symmetric'")

            elif kind == "direct_sum":
                operands = spec.get("summands") or [spec["a"], spec["b"]]
                algebras = [self.create(operand) for operand in operands]
                result = algebras[0]
                for other in algebras[1:]:
                    result = direct_sum(result, other)
                return result

            elif kind == "unitization":
                return unitization(self.create(spec["of"]))

            elif kind == "quotient":
                base = self.create(spec["of"])
                ideal = self._kernel_ideal(base, spec["kernel_of"])
                return quotient(base, ideal)[0]

            elif kind == "zero":
                return zero_algebra(int(spec["dim"]))

            else:
                _LOGGER.warning("Unknown constructor kind: %s", kind)
                raise UnknownConstructor(f"Unknown constructor kind {kind!r}")

        except KeyError as exc:
            raise SchemaError(f"Constructor {kind!r} is missing parameter {exc.args[0]!r}") from exc
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"Constructor {kind!r} has a malformed parameter: {exc}") from exc

    def resolve_covector(self, algebra: Algebra, selector: Any) -> np.ndarray:
        """A character covector given literally or by label."""
        if isinstance(selector, str):
            from .character_solver import character_space

            return character_space(algebra, self._tol, self._seed).by_label(selector).covector
        return decode_array(selector, 1)

    def _kernel_ideal(self, algebra: Algebra, selector: Any) -> SubspaceBasis:
        from .amenability_service import kernel_basis
        from .character_solver import resolve_character

        phi = resolve_character(algebra, selector, self._tol, self._seed)
        return kernel_basis(algebra, phi, self._tol)


def _first_coordinate(dim: int) -> np.ndarray:
    phi = np.zeros(dim, dtype=complex)
    phi[0] = 1.0
    return phi
