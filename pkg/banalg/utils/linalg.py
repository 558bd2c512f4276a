"""SVD-based linear algebra helpers.

Every feasibility question in banalg reduces to a linear system solved in
the least-squares sense with a minimum-norm tie-break, or to a null space /
orthonormal basis extracted from a singular value decomposition.
"""

import logging
from typing import Optional

import numpy as np
import scipy.linalg

from ..const import RANK_TOL

_LOGGER = logging.getLogger(__name__)


def scaled_tol(tol: float, scale: float) -> float:
    """Return ``tol * (1 + scale)``, the threshold used for residual decisions."""
    return float(tol) * (1.0 + float(scale))


def linf(values: np.ndarray) -> float:
    """Max-modulus of an array, 0.0 for empty arrays."""
    arr = np.asarray(values)
    if arr.size == 0:
        return 0.0
    return float(np.max(np.abs(arr)))


def canonical_phase(columns: np.ndarray) -> np.ndarray:
    """Rotate each column so that its largest-modulus entry is real positive.

    SVD and QR bases are only defined up to a unit scalar per column; fixing
    the phase makes subspace bases reproducible and readable.
    """
    q = np.array(columns, dtype=complex, copy=True)
    for j in range(q.shape[1]):
        col = q[:, j]
        if col.size == 0:
            continue
        pivot = int(np.argmax(np.round(np.abs(col), 12)))
        value = col[pivot]
        if abs(value) > 0:
            q[:, j] = col * (abs(value) / value)
    return q


def null_space(matrix: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal basis (as columns) of the null space of *matrix*.

    Singular values at or below the absolute threshold *tol* count as zero.
    A matrix with no rows has the whole space as null space.
    """
    a = np.asarray(matrix, dtype=complex)
    n = a.shape[1]
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    if a.shape[0] == 0:
        return np.eye(n, dtype=complex)
    _, s, vh = scipy.linalg.svd(a, full_matrices=True)
    rank = int(np.sum(s > tol))
    return canonical_phase(vh[rank:].conj().T)


def orthonormal_basis(columns: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis of the column span of *columns*.

    Columns are dropped when their singular value falls below
    ``tol * max(1, s_max)``.
    """
    a = np.asarray(columns, dtype=complex)
    if a.ndim != 2 or a.shape[1] == 0:
        rows = a.shape[0] if a.ndim >= 1 else 0
        return np.zeros((rows, 0), dtype=complex)
    u, s, _ = scipy.linalg.svd(a, full_matrices=False)
    if s.size == 0:
        return np.zeros((a.shape[0], 0), dtype=complex)
    keep = s > tol * max(1.0, float(s[0]))
    return canonical_phase(u[:, keep])


def orthogonal_complement(basis: np.ndarray, dim: int) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of an orthonormal *basis*."""
    q = np.asarray(basis, dtype=complex).reshape(dim, -1)
    if q.shape[1] == 0:
        return np.eye(dim, dtype=complex)
    return null_space(q.conj().T, RANK_TOL)


def numerical_rank(matrix: np.ndarray, tol: float) -> int:
    """Number of singular values above ``tol * max(1, s_max)``."""
    a = np.asarray(matrix, dtype=complex)
    if a.size == 0:
        return 0
    s = scipy.linalg.svd(a, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, float(s[0]))))


def min_norm_solve(
    matrix: np.ndarray,
    rhs: np.ndarray,
    rcond: float = RANK_TOL,
) -> tuple[np.ndarray, float]:
    """Minimum-norm least-squares solution of ``matrix @ x = rhs``.

    Singular values at or below ``rcond * max(1, s_max)`` count as zero, the
    same rule as :func:`numerical_rank`. A matrix made only of rounding noise
    therefore has rank 0 and yields ``x = 0``.

    Args:
        matrix: Coefficient matrix (m x n).
        rhs: Right-hand side (m,).
        rcond: Singular value cutoff, absolute below ``s_max = 1``.

    Returns:
        ``(x, residual)`` where residual is the max-modulus of ``matrix @ x - rhs``.
    """
    a = np.asarray(matrix, dtype=complex)
    b = np.asarray(rhs, dtype=complex).reshape(-1)
    n = a.shape[1] if a.ndim == 2 else 0
    if n == 0:
        return np.zeros(0, dtype=complex), linf(b)
    if a.shape[0] == 0:
        return np.zeros(n, dtype=complex), 0.0
    s_max = float(scipy.linalg.svdvals(a)[0])
    cutoff = rcond * max(1.0, s_max)
    if s_max <= cutoff:
        x = np.zeros(n, dtype=complex)
    else:
        x, *_ = np.linalg.lstsq(a, b, rcond=cutoff / s_max)
    residual = linf(a @ x - b)
    _LOGGER.debug("min_norm_solve: %dx%d system, residual %.3e", a.shape[0], n, residual)
    return x, residual


def snap_small(values: np.ndarray, threshold: float) -> np.ndarray:
    """Copy of *values* with real and imaginary parts of modulus ``<= threshold`` set to 0."""
    arr = np.asarray(values, dtype=complex)
    real = np.where(np.abs(arr.real) <= threshold, 0.0, arr.real)
    imag = np.where(np.abs(arr.imag) <= threshold, 0.0, arr.imag)
    return real + 1j * imag


def span_distance(vector: np.ndarray, basis: Optional[np.ndarray]) -> float:
    """Max-modulus of the component of *vector* orthogonal to an orthonormal *basis*."""
    v = np.asarray(vector, dtype=complex)
    if basis is None or basis.shape[1] == 0:
        return linf(v)
    return linf(v - basis @ (basis.conj().T @ v))


def same_span(first: np.ndarray, second: np.ndarray, tol: float = 1e-8) -> bool:
    """True when two orthonormal bases span the same subspace."""
    if first.shape != second.shape:
        return False
    p1 = first @ first.conj().T
    p2 = second @ second.conj().T
    return linf(p1 - p2) <= tol
