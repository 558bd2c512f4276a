"""Independent Newton-multistart oracle for small character spaces.

Solves the quadratic system ``sum_k c[i,j,k] x_k = x_i x_j`` by
Levenberg-Marquardt from many seeded random starts, then polishes, verifies
and deduplicates. It shares no code path with the eigenvector solver apart
from the final Gauss-Newton polish, and is only used as a cross-check on
algebras of dimension at most 4.
"""

import logging

import numpy as np
from scipy.optimize import least_squares

from ..const import DEDUPE_THRESHOLD, DEFAULT_SEED, DEFAULT_TOL, ORACLE_STARTS
from ..models.algebra import Algebra
from ..utils.linalg import linf, scaled_tol
from .character_solver import canonical_key, newton_polish, quadratic_defect

_LOGGER = logging.getLogger(__name__)


def _split_residual(z: np.ndarray, table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    defect = quadratic_defect(table, z[:n] + 1j * z[n:]).reshape(-1)
    return np.concatenate([defect.real, defect.imag])


def _split_jacobian(z: np.ndarray, table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    x = z[:n] + 1j * z[n:]
    eye = np.eye(n)
    jac = (table - eye[:, None, :] * x[None, :, None] - eye[None, :, :] * x[:, None, None]).reshape(n * n, n)
    return np.block([[jac.real, -jac.imag], [jac.imag, jac.real]])


def newton_oracle(
    algebra: Algebra,
    starts: int = ORACLE_STARTS,
    seed: int = DEFAULT_SEED,
    tol: float = DEFAULT_TOL,
) -> list[np.ndarray]:
    """Characters of *algebra* found by multistart least squares.

    Args:
        algebra: The algebra, ideally of dimension at most 4.
        starts: Number of random starting points.
        seed: Seed for the starting points.
        tol: Verification tolerance, scaled by ``1 + max|c|``.

    Returns:
        Verified, deduplicated, nonzero covectors in canonical order.
    """
    table = np.asarray(algebra.table)
    n = algebra.dim
    rng = np.random.default_rng(seed)
    threshold = scaled_tol(tol, algebra.scale)
    found: list[np.ndarray] = []

    for _ in range(starts):
        z0 = rng.standard_normal(2 * n)
        result = least_squares(
            _split_residual,
            z0,
            jac=_split_jacobian,
            method="lm",
            args=(table,),
            xtol=1e-14,
            ftol=1e-14,
            gtol=1e-14,
            max_nfev=200,
        )
        candidate, residual = newton_polish(table, result.x[:n] + 1j * result.x[n:])
        if residual > threshold or linf(candidate) <= DEDUPE_THRESHOLD:
            continue
        if all(linf(candidate - other) > DEDUPE_THRESHOLD for other in found):
            found.append(candidate)

    _LOGGER.debug("Oracle found %d character(s) of %r from %d starts", len(found), algebra, starts)
    return sorted(found, key=canonical_key)


def same_character_sets(first: list[np.ndarray], second: list[np.ndarray], tol: float = DEDUPE_THRESHOLD) -> bool:
    """Set equality of two covector lists up to ℓ∞ *tol*."""
    if len(first) != len(second):
        return False
    return all(any(linf(x - y) <= tol for y in second) for x in first) and all(
        any(linf(x - y) <= tol for x in first) for y in second
    )
