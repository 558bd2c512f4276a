"""Identity search on an algebra or on a subspace of it.

A right identity u satisfies ``a u = a``, a left identity ``u a = a``. Both
conditions are linear in u, so the search is one minimum-norm least-squares
solve; a witness is returned only when the residual is within tolerance.
"""

import logging
from typing import Optional

import numpy as np

from ..const import DEFAULT_TOL, SIDE_LEFT, SIDE_RIGHT, SIDE_TWO_SIDED, SIDES
from ..exceptions import ConfigError, DimensionMismatch
from ..models.algebra import Algebra, Element, VectorLike, as_coeffs
from ..models.subspace import SubspaceBasis
from ..utils.linalg import linf, min_norm_solve, scaled_tol

_LOGGER = logging.getLogger(__name__)


def identity_system(
    algebra: Algebra,
    basis: np.ndarray,
    side: str,
) -> tuple[np.ndarray, np.ndarray]:
    """Linear system ``M y = b`` whose solutions give identities ``u = basis @ y`` of span(basis).

    Rows come in blocks of ``algebra.dim``, one block per basis vector and side.
    """
    if side not in SIDES:
        raise ConfigError(f"Unknown side {side!r}, expected one of {SIDES}")
    blocks: list[np.ndarray] = []
    rhs: list[np.ndarray] = []
    for j in range(basis.shape[1]):
        v = basis[:, j]
        if side in (SIDE_RIGHT, SIDE_TWO_SIDED):
            blocks.append(algebra.left_matrix(v) @ basis)
            rhs.append(v)
        if side in (SIDE_LEFT, SIDE_TWO_SIDED):
            blocks.append(algebra.right_matrix(v) @ basis)
            rhs.append(v)
    if not blocks:
        return np.zeros((0, basis.shape[1]), dtype=complex), np.zeros(0, dtype=complex)
    return np.vstack(blocks), np.concatenate(rhs)


def find_identity_on(
    algebra: Algebra,
    subspace: Optional[SubspaceBasis],
    side: str = SIDE_TWO_SIDED,
    tol: float = DEFAULT_TOL,
) -> Optional[Element]:
    """Identity of the given *side* for the subspace, lying in the subspace.

    Args:
        algebra: Ambient algebra.
        subspace: Subspace S; ``None`` means the whole algebra.
        side: ``left``, ``right`` or ``two_sided``.
        tol: Decision tolerance, scaled by ``1 + max|c|``.

    Returns:
        The minimum-norm identity, or ``None`` when none exists. The zero
        subspace has the vacuous identity 0.
    """
    if subspace is not None and subspace.ambient_dim != algebra.dim:
        raise DimensionMismatch(f"Subspace lives in dimension {subspace.ambient_dim}, algebra has dimension {algebra.dim}")
    basis = np.eye(algebra.dim, dtype=complex) if subspace is None else subspace.basis
    matrix, rhs = identity_system(algebra, basis, side)
    y, residual = min_norm_solve(matrix, rhs)
    threshold = scaled_tol(tol, algebra.scale)
    _LOGGER.debug("find_identity_on(%s, dim %d): residual %.3e", side, basis.shape[1], residual)
    if residual > threshold:
        return None
    return Element(basis @ y, algebra.dim)


def find_identity(algebra: Algebra, side: str = SIDE_TWO_SIDED, tol: float = DEFAULT_TOL) -> Optional[Element]:
    """Identity of *algebra* of the given side, or ``None``."""
    return find_identity_on(algebra, None, side, tol)


def find_right_identity_on(algebra: Algebra, subspace: SubspaceBasis, tol: float = DEFAULT_TOL) -> Optional[Element]:
    """Element u of S with ``a u = a`` for every a in S, or ``None``."""
    return find_identity_on(algebra, subspace, SIDE_RIGHT, tol)


def identity_defect(
    algebra: Algebra,
    u: VectorLike,
    subspace: Optional[SubspaceBasis] = None,
) -> tuple[float, float]:
    """``(max |a u - a|, max |u a - a|)`` over a basis of S (default: all of A)."""
    coeffs = as_coeffs(u, algebra.dim)
    basis = np.eye(algebra.dim, dtype=complex) if subspace is None else subspace.basis
    if basis.shape[1] == 0:
        return 0.0, 0.0
    right = algebra.right_matrix(coeffs) @ basis - basis
    left = algebra.left_matrix(coeffs) @ basis - basis
    return linf(right), linf(left)
