"""Amenability deciders with witnesses.

In finite dimensions the functional ``m`` of the amenability definitions is
an element u of the algebra and every net collapses to a single element, so
each question is the feasibility of a linear system. Systems are solved by a
minimum-norm least-squares solve; the decision is "yes" when the residual of
every constraint is within ``tol * (1 + max|c|)``.
"""

import logging
from typing import Any, Optional

import numpy as np

from ..const import (
    CONVENTION_LEFT,
    CONVENTION_RIGHT,
    CONVENTIONS,
    DEFAULT_CONVENTION,
    DEFAULT_SEED,
    DEFAULT_TOL,
    RANK_TOL,
    ZERO_LABEL,
)
from ..exceptions import (
    CharacterNotVerified,
    ConfigError,
    DimensionMismatch,
    ExtensionNotMultiplicative,
    NoCharacters,
    NotAnIdeal,
    NotAnIdentityOfI,
    PostconditionViolated,
    PreconditionViolated,
)
from ..models.algebra import Algebra, Element, VectorLike, as_coeffs
from ..models.character import Character, CharacterLike, CharacterSet
from ..models.report import DecisionReport, WitnessCheckReport, decide
from ..models.subspace import SubspaceBasis
from ..utils.linalg import linf, min_norm_solve, null_space, numerical_rank, scaled_tol
from .algebra_factory import span
from .character_solver import character_space, match_character, require_character, verify_character

_LOGGER = logging.getLogger(__name__)


def _characters(algebra: Algebra, tol: float, seed: int, characters: Optional[CharacterSet]) -> CharacterSet:
    chars = characters if characters is not None else character_space(algebra, tol, seed)
    if len(chars) == 0:
        raise NoCharacters(f"{algebra!r} has no characters")
    return chars


def _member(algebra: Algebra, phi: CharacterLike, chars: CharacterSet, tol: float) -> CharacterLike:
    """Check *phi* and return the labelled member of Δ(A) it equals."""
    if phi.is_zero:
        if phi.covector.shape != (algebra.dim,):
            raise DimensionMismatch(f"Zero functional of dimension {phi.covector.shape[0]} used on dimension {algebra.dim}")
        return phi
    require_character(algebra, phi, tol)
    found = match_character(phi.covector, chars)
    if found is None:
        raise CharacterNotVerified(f"Character {phi.label} is not in the computed character space")
    return found


def _image_coeffs(algebra: Algebra, u: np.ndarray) -> np.ndarray:
    """Column k is ``e_k u``."""
    return np.einsum("kjm,j->mk", algebra.table, u)


# ---------------------------------------------------------------------------
# Kernels and Δ-weak identities
# ---------------------------------------------------------------------------


def kernel_basis(algebra: Algebra, phi: Character, tol: float = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of ``ker(phi)``, a two-sided ideal of codimension 1.

    Raises:
        CharacterNotVerified: If *phi* is not a character of *algebra*.
    """
    require_character(algebra, phi, tol)
    kernel = null_space(phi.covector[None, :], RANK_TOL * (1.0 + linf(phi.covector)))
    return span(algebra, kernel)


def delta_weak_identity(
    algebra: Algebra,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    characters: Optional[CharacterSet] = None,
) -> DecisionReport:
    """Element e with ``psi(e) = 1`` for every character psi.

    The witness is the minimum-norm solution; ``affine_dim`` is the
    dimension of the affine space of all such elements.

    Raises:
        NoCharacters: If Δ(A) is empty.
    """
    chars = _characters(algebra, tol, seed, characters)
    matrix = chars.matrix
    u, _ = min_norm_solve(matrix, np.ones(len(chars)))
    residuals = list(np.abs(matrix @ u - 1.0))
    affine_dim = algebra.dim - numerical_rank(matrix, RANK_TOL)
    notes = ["unique" if affine_dim == 0 else f"not unique: {affine_dim}-dimensional affine family"]
    return decide(
        Element(u, algebra.dim),
        residuals,
        scaled_tol(tol, algebra.scale),
        phi=ZERO_LABEL,
        affine_dim=affine_dim,
        notes=tuple(notes),
    )


def delta_weak_phi_amenable(
    algebra: Algebra,
    phi: CharacterLike,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    characters: Optional[CharacterSet] = None,
) -> DecisionReport:
    """Decide Δ-weak φ-amenability.

    The finite-dimensional criterion is the feasibility of ``phi(u) = 0``
    together with ``psi(u) = 1`` for every other character psi; for the zero
    functional it is the Δ-weak identity system. A single-character algebra
    is decided yes with witness 0. The defects ``psi(a u) - psi(a)`` over a
    basis of ``ker(phi)`` are recorded as ``form_residuals``.

    Raises:
        NoCharacters: If Δ(A) is empty.
        CharacterNotVerified: If *phi* is neither zero nor a member of Δ(A).
    """
    chars = _characters(algebra, tol, seed, characters)
    phi = _member(algebra, phi, chars, tol)
    threshold = scaled_tol(tol, algebra.scale)

    notes: list[str] = []
    if phi.is_zero:
        rows = [c.covector for c in chars]
        rhs = [1.0] * len(chars)
    else:
        others = chars.others(phi)
        rows = [phi.covector] + [c.covector for c in others]
        rhs = [0.0] + [1.0] * len(others)
        if not others:
            notes.append("single character: witness 0")

    matrix = np.vstack(rows)
    if phi.is_zero or len(rows) > 1:
        u, _ = min_norm_solve(matrix, np.array(rhs, dtype=complex))
    else:
        u = np.zeros(algebra.dim, dtype=complex)
    residuals = list(np.abs(matrix @ u - np.array(rhs)))
    affine_dim = algebra.dim - numerical_rank(matrix, RANK_TOL)

    kernel = np.eye(algebra.dim, dtype=complex) if phi.is_zero else kernel_basis(algebra, phi, tol).basis
    images = _image_coeffs(algebra, u)
    form = [
        abs(complex(c.covector @ (images @ kernel[:, j]) - c.covector @ kernel[:, j]))
        for c in chars
        for j in range(kernel.shape[1])
    ]
    _LOGGER.debug("delta_weak_phi_amenable(%s): max residual %.3e", phi.label, linf(residuals))
    return decide(
        Element(u, algebra.dim),
        residuals,
        threshold,
        phi=phi.label,
        affine_dim=affine_dim,
        notes=tuple(notes),
        form_residuals=tuple(form),
    )


# ---------------------------------------------------------------------------
# φ-amenability and kernel identities
# ---------------------------------------------------------------------------


def phi_amenable(
    algebra: Algebra,
    phi: Character,
    convention: str = DEFAULT_CONVENTION,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    characters: Optional[CharacterSet] = None,
) -> DecisionReport:
    """Decide φ-amenability, ``m`` being an element u with ``phi(u) = 1``.

    ``right`` convention: ``e_i u = phi(e_i) u`` for all i. ``left``
    convention: ``u e_i = phi(e_i) u`` for all i.

    Raises:
        NoCharacters: If Δ(A) is empty.
        CharacterNotVerified: If *phi* is not a character.
        ConfigError: On an unknown convention.
    """
    if convention not in CONVENTIONS:
        raise ConfigError(f"Unknown convention {convention!r}, expected one of {CONVENTIONS}")
    chars = _characters(algebra, tol, seed, characters)
    phi = _member(algebra, phi, chars, tol)
    n = algebra.dim
    ops = algebra.left_operators() if convention == CONVENTION_RIGHT else algebra.right_operators()
    blocks = [ops[i] - phi.covector[i] * np.eye(n) for i in range(n)]
    matrix = np.vstack(blocks + [phi.covector[None, :]])
    rhs = np.concatenate([np.zeros(n * n), [1.0]])
    u, _ = min_norm_solve(matrix, rhs)
    defects = matrix @ u - rhs
    residuals = [linf(defects[i * n : (i + 1) * n]) for i in range(n)] + [abs(defects[-1])]
    return decide(
        Element(u, n),
        residuals,
        scaled_tol(tol, algebra.scale),
        phi=phi.label,
        convention=convention,
    )


def _kernel_identity(
    algebra: Algebra,
    phi: Character,
    side: str,
    tol: float,
    seed: int,
    characters: Optional[CharacterSet],
) -> DecisionReport:
    from .identity_service import identity_system

    if characters is not None:
        phi = _member(algebra, phi, characters, tol)  # type: ignore[assignment]
    kernel = kernel_basis(algebra, phi, tol)
    if kernel.dim == 0:
        return decide(
            algebra.zero(),
            [],
            scaled_tol(tol, algebra.scale),
            phi=phi.label,
            notes=("kernel is zero: vacuous identity 0",),
        )
    matrix, rhs = identity_system(algebra, kernel.basis, side)
    y, _ = min_norm_solve(matrix, rhs)
    n = algebra.dim
    defects = matrix @ y - rhs
    residuals = [linf(defects[j * n : (j + 1) * n]) for j in range(kernel.dim)]
    return decide(Element(kernel.basis @ y, n), residuals, scaled_tol(tol, algebra.scale), phi=phi.label)


def right_identity_in_kernel(
    algebra: Algebra,
    phi: Character,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    characters: Optional[CharacterSet] = None,
) -> DecisionReport:
    """Decide whether ``ker(phi)`` has a right identity u (``a u = a`` on the kernel)."""
    return _kernel_identity(algebra, phi, CONVENTION_RIGHT, tol, seed, characters)


def left_identity_in_kernel(
    algebra: Algebra,
    phi: Character,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    characters: Optional[CharacterSet] = None,
) -> DecisionReport:
    """Decide whether ``ker(phi)`` has a left identity u (``u a = a`` on the kernel)."""
    return _kernel_identity(algebra, phi, CONVENTION_LEFT, tol, seed, characters)


# ---------------------------------------------------------------------------
# Constructive operations
# ---------------------------------------------------------------------------


def combine_identities(
    algebra: Algebra,
    ideal: SubspaceBasis,
    e: VectorLike,
    f: VectorLike,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    characters: Optional[CharacterSet] = None,
) -> Element:
    """Combine a Δ-weak identity of an ideal with a left identity of the quotient.

    Returns ``g = e + f - e f``, checked to satisfy ``psi(g a) = psi(a)`` for
    every basis vector a and every character psi.

    Raises:
        NotAnIdeal: If *ideal* is not a two-sided ideal.
        PreconditionViolated: If e is not in I, e is not a Δ-weak identity
            for I, or ``f a - a`` leaves I for some basis vector a.
        PostconditionViolated: If the combined element fails its check.
    """
    if not ideal.is_two_sided_ideal:
        raise NotAnIdeal("combine_identities needs a two-sided ideal", residual=ideal.closure_residual)
    chars = characters if characters is not None else character_space(algebra, tol, seed)
    threshold = scaled_tol(tol, algebra.scale)
    e_coeffs = as_coeffs(e, algebra.dim)
    f_coeffs = as_coeffs(f, algebra.dim)
    matrix = chars.matrix

    outside = ideal.distance(e_coeffs)
    if outside > threshold:
        raise PreconditionViolated(f"e is not in the ideal (distance {outside:.3e})", residual=outside)

    on_ideal = _image_coeffs(algebra, e_coeffs).T  # row k: e_k e
    ideal_products = ideal.basis.T @ on_ideal  # row j: q_j e
    defect_e = linf(matrix @ ideal_products.T - matrix @ ideal.basis) if len(chars) and ideal.dim else 0.0
    if defect_e > threshold:
        raise PreconditionViolated(f"e is not a Δ-weak identity for the ideal (defect {defect_e:.3e})", residual=defect_e)

    f_left = algebra.left_matrix(f_coeffs) - np.eye(algebra.dim)
    defect_f = max((ideal.distance(f_left[:, k]) for k in range(algebra.dim)), default=0.0)
    if defect_f > threshold:
        raise PreconditionViolated(f"f is not a left identity modulo the ideal (defect {defect_f:.3e})", residual=defect_f)

    g = e_coeffs + f_coeffs - algebra.multiply(e_coeffs, f_coeffs).coeffs
    post = linf(matrix @ algebra.left_matrix(g) - matrix) if len(chars) else 0.0
    _LOGGER.debug("combine_identities: pre (%.3e, %.3e), post %.3e", defect_e, defect_f, post)
    if post > threshold:
        raise PostconditionViolated(f"Combined element fails psi(g a) = psi(a) (defect {post:.3e})", residual=post)
    return Element(g, algebra.dim)


def extend_character_from_ideal(
    algebra: Algebra,
    ideal: SubspaceBasis,
    phi_ideal: Any,
    u: VectorLike,
    tol: float = DEFAULT_TOL,
) -> Character:
    """Extend a character of an ideal to the algebra by ``a -> phi_I(a u)``.

    Args:
        algebra: The algebra.
        ideal: A two-sided ideal I.
        phi_ideal: Covector of the character on I, in I's basis coordinates
            (a ``Character`` of the ideal viewed as an algebra also works).
        u: Two-sided identity of I with ``phi_I(u) = 1``.
        tol: Tolerance, scaled by ``1 + max|c|``.

    Raises:
        NotAnIdeal: If *ideal* is not a two-sided ideal.
        NotAnIdentityOfI: If u is outside I, is not a two-sided identity of
            I, or ``phi_I(u) != 1``.
        ExtensionNotMultiplicative: If the extension fails verification.
    """
    from .identity_service import identity_defect

    if not ideal.is_two_sided_ideal:
        raise NotAnIdeal("extend_character_from_ideal needs a two-sided ideal", residual=ideal.closure_residual)
    covector = phi_ideal.covector if hasattr(phi_ideal, "covector") else np.asarray(phi_ideal, dtype=complex).reshape(-1)
    if covector.shape != (ideal.dim,):
        raise DimensionMismatch(f"phi_I has {covector.shape[0]} entries, the ideal has dimension {ideal.dim}")
    threshold = scaled_tol(tol, algebra.scale)
    u_coeffs = as_coeffs(u, algebra.dim)

    outside = ideal.distance(u_coeffs)
    right, left = identity_defect(algebra, u_coeffs, ideal)
    if max(outside, right, left) > threshold:
        raise NotAnIdentityOfI(
            f"u is not a two-sided identity of the ideal (distance {outside:.3e}, defects {right:.3e}/{left:.3e})",
            residual=max(outside, right, left),
        )
    value_at_u = complex(covector @ ideal.coordinates(u_coeffs))
    if abs(value_at_u - 1.0) > threshold:
        raise NotAnIdentityOfI(f"phi_I(u) = {value_at_u:.6g}, expected 1", residual=abs(value_at_u - 1.0))

    extended = (ideal.basis.conj().T @ _image_coeffs(algebra, u_coeffs)).T @ covector
    residual = verify_character(algebra, extended)
    restriction = linf(extended @ ideal.basis - covector)
    if residual > threshold or restriction > threshold:
        raise ExtensionNotMultiplicative(
            f"Extended functional fails verification (residual {residual:.3e}, restriction {restriction:.3e})",
            residual=max(residual, restriction),
        )
    return Character(extended, residual, "extended")


def extend_witness_check(
    algebra: Algebra,
    phi: Character,
    u: VectorLike,
    a0: VectorLike,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    characters: Optional[CharacterSet] = None,
) -> WitnessCheckReport:
    """Defects of ``psi(a u) = psi(a)`` over the whole basis of A.

    For psi other than phi the defects vanish for a genuine witness; the row
    for phi itself shows why the identity cannot extend to phi:
    ``phi(a0 u) = 0`` while ``phi(a0) = 1``.
    """
    chars = characters if characters is not None else character_space(algebra, tol, seed)
    threshold = scaled_tol(tol, algebra.scale)
    u_coeffs = as_coeffs(u, algebra.dim)
    a0_coeffs = as_coeffs(a0, algebra.dim)
    images = _image_coeffs(algebra, u_coeffs)  # column k: e_k u

    def defects(covector: np.ndarray) -> list[float]:
        return [float(v) for v in np.abs(covector @ images - covector)]

    psi_defects = {c.label or "": defects(c.covector) for c in chars.others(phi)}
    phi_defects = defects(phi.covector)
    phi_a0 = complex(phi.covector @ a0_coeffs)
    phi_a0_u = complex(phi.covector @ algebra.multiply(a0_coeffs, u_coeffs).coeffs)

    notes = []
    if not psi_defects:
        notes.append("no other characters: vacuous pass")
    notes.append(f"phi(a0) = {phi_a0.real:.6g}{phi_a0.imag:+.6g}j, phi(a0 u) = {phi_a0_u.real:.6g}{phi_a0_u.imag:+.6g}j")
    passed = all(d <= threshold for row in psi_defects.values() for d in row) and abs(phi_a0 - 1.0) <= threshold
    return WitnessCheckReport(
        phi=phi.label or "",
        psi_defects=psi_defects,
        phi_defects=phi_defects,
        phi_of_a0=phi_a0,
        passed=passed,
        tol=threshold,
        notes=tuple(notes),
    )
