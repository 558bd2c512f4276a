"""Character space solver.

Characters of an algebra A are the nonzero solutions x of the quadratic
system ``sum_k c[i,j,k] x_k = x_i x_j``. The solver works on the
unitization A¹, whose characters are exactly the common eigenvectors of the
transposed left-multiplication operators ``L_{e_i}^T`` (normalized to send
the adjoined unit to 1). Common eigenvectors are isolated by recursively
splitting invariant subspaces along eigenspaces of a random generic
``L_r^T``. Candidates are polished by Gauss-Newton steps on the quadratic
system, verified, deduplicated and labelled in a seed-independent order.
"""

import json
import logging
from typing import Any, Optional, Sequence, Union

import numpy as np

from ..const import (
    CHARACTER_LABEL_PREFIX,
    DEDUPE_THRESHOLD,
    DEFAULT_SEED,
    DEFAULT_TOL,
    INDEPENDENCE_RANK_TOL,
    SOLVER_CLUSTER_TOL,
    SOLVER_MAX_RETRIES,
    SOLVER_NEWTON_STEPS,
    SOLVER_SPLIT_ATTEMPTS,
    ZERO_LABEL,
)
from ..exceptions import (
    CharacterNotVerified,
    CharactersEqual,
    DimensionMismatch,
    SchemaError,
    SelectorError,
    SolverDidNotConverge,
)
from ..models.algebra import Algebra, Element, VectorLike, as_coeffs
from ..models.character import Character, CharacterLike, CharacterSet, ZeroCharacter
from ..models.subspace import SubspaceBasis
from ..utils.complex_codec import decode_array
from ..utils.linalg import linf, min_norm_solve, null_space, numerical_rank, orthonormal_basis, scaled_tol, snap_small
from .algebra_factory import unitization

_LOGGER = logging.getLogger(__name__)

# Absolute null-space threshold inside the solver, scaled by (1 + max|c|).
_SUBSPACE_TOL = 1e-8


# ---------------------------------------------------------------------------
# Evaluation and verification
# ---------------------------------------------------------------------------


def quadratic_defect(table: np.ndarray, x: np.ndarray) -> np.ndarray:
    """``F[i, j] = x(e_i e_j) - x(e_i) x(e_j)``."""
    return np.einsum("ijk,k->ij", table, x) - np.outer(x, x)


def verify_character(algebra: Algebra, covector: Any) -> float:
    """Max multiplicativity defect of *covector* over all basis pairs.

    The caller compares the result with its tolerance; the zero covector has
    residual 0 but is not a character.
    """
    x = as_coeffs(covector.covector if hasattr(covector, "covector") else covector, algebra.dim)
    return linf(quadratic_defect(algebra.table, x))


def evaluate(phi: CharacterLike, a: VectorLike) -> complex:
    """``phi(a)``.

    Raises:
        DimensionMismatch: If the element and the character live in different dimensions.
    """
    coeffs = a.coeffs if isinstance(a, Element) else np.asarray(a, dtype=complex).reshape(-1)
    if coeffs.shape[0] != phi.covector.shape[0]:
        raise DimensionMismatch(f"Character of dimension {phi.covector.shape[0]} applied to an element of dimension {coeffs.shape[0]}")
    return complex(phi.covector @ coeffs)


def newton_polish(table: np.ndarray, x: np.ndarray, steps: int = SOLVER_NEWTON_STEPS) -> tuple[np.ndarray, float]:
    """Gauss-Newton refinement of a candidate solution of the quadratic system.

    Returns the best iterate seen and its residual, so polishing never makes
    a candidate worse.
    """
    n = x.shape[0]
    eye = np.eye(n)
    best = np.array(x, dtype=complex)
    best_residual = linf(quadratic_defect(table, best))
    current = best
    for _ in range(steps):
        defect = quadratic_defect(table, current).reshape(-1)
        jacobian = (table - eye[:, None, :] * current[None, :, None] - eye[None, :, :] * current[:, None, None]).reshape(
            n * n, n
        )
        step, _ = min_norm_solve(jacobian, -defect)
        current = current + step
        residual = linf(quadratic_defect(table, current))
        if residual < best_residual:
            best, best_residual = current, residual
        if best_residual == 0.0:
            break
    return best, best_residual


def canonical_key(covector: np.ndarray) -> tuple:
    """Seed-independent sort key: first significant index, then rounded values."""
    significant = np.nonzero(np.abs(covector) > DEDUPE_THRESHOLD)[0]
    first = int(significant[0]) if significant.size else covector.shape[0]
    rounded = tuple((round(z.real, 6) + 0.0, round(z.imag, 6) + 0.0) for z in covector)
    return (first, rounded)


def dedupe(covectors: Sequence[np.ndarray], threshold: float = DEDUPE_THRESHOLD) -> list[np.ndarray]:
    """Drop covectors within ℓ∞ *threshold* of an earlier one."""
    kept: list[np.ndarray] = []
    for x in covectors:
        if all(linf(x - y) > threshold for y in kept):
            kept.append(x)
    return kept


def label_characters(covectors: Sequence[np.ndarray], residuals: Sequence[float]) -> tuple[Character, ...]:
    """Sort covectors canonically and label them ``phi_1 .. phi_k``."""
    order = sorted(range(len(covectors)), key=lambda i: canonical_key(covectors[i]))
    return tuple(
        Character(covectors[i], residuals[i], f"{CHARACTER_LABEL_PREFIX}{rank + 1}") for rank, i in enumerate(order)
    )


# ---------------------------------------------------------------------------
# Solver
# ---------------------------------------------------------------------------


class _Shortfall(Exception):
    """Internal signal that one solver attempt must be retried."""


class CharacterSolver:
    """Computes Δ(A) for one algebra.

    Args:
        algebra: The algebra.
        tol: Verification tolerance, scaled by ``1 + max|c|``.
        seed: Seed of the generator for random generic elements.
        max_retries: Attempts after the first before giving up.
    """

    def __init__(
        self,
        algebra: Algebra,
        tol: float = DEFAULT_TOL,
        seed: int = DEFAULT_SEED,
        max_retries: int = SOLVER_MAX_RETRIES,
    ) -> None:
        self.algebra = algebra
        self.tol = tol
        self.seed = seed
        self.max_retries = max_retries
        self._unitized = unitization(algebra)
        self._ops_t = np.transpose(self._unitized.left_operators(), (0, 2, 1))
        self._null_tol = _SUBSPACE_TOL * (1.0 + self._unitized.scale)

    def solve(self) -> CharacterSet:
        """Run the solver, retrying on shortfall.

        Raises:
            SolverDidNotConverge: If no attempt yields a verified, complete set.
        """
        rng = np.random.default_rng(self.seed)
        last_reason = ""
        for attempt in range(self.max_retries + 1):
            try:
                covectors, residuals = self._attempt(rng)
            except _Shortfall as exc:
                last_reason = str(exc)
                _LOGGER.warning(
                    "Character solver attempt %d/%d on %r failed: %s",
                    attempt + 1,
                    self.max_retries + 1,
                    self.algebra,
                    exc,
                )
                continue
            characters = label_characters(covectors, residuals)
            _LOGGER.debug("Found %d character(s) of %r after %d retries", len(characters), self.algebra, attempt)
            return CharacterSet(characters, seed=self.seed, retries=attempt, algebra_dim=self.algebra.dim)
        raise SolverDidNotConverge(
            f"Character solver did not converge after {self.max_retries + 1} attempts: {last_reason}"
        )

    # ------------------------------------------------------------------

    def _attempt(self, rng: np.random.Generator) -> tuple[list[np.ndarray], list[float]]:
        n = self.algebra.dim
        size = n + 1
        leaves = self._split(np.eye(size, dtype=complex), rng)

        unit_chars: list[np.ndarray] = []
        for v in leaves:
            if abs(v[n]) <= _SUBSPACE_TOL * linf(v):
                raise _Shortfall("eigenvector vanishes on the adjoined unit")
            unit_chars.append(v / v[n])
        unit_chars = dedupe(unit_chars)

        if not any(linf(x[:n]) <= DEDUPE_THRESHOLD for x in unit_chars):
            raise _Shortfall("the character killing A was not recovered")
        if unit_chars and numerical_rank(np.vstack(unit_chars), INDEPENDENCE_RANK_TOL) != len(unit_chars):
            raise _Shortfall("recovered characters are linearly dependent")

        threshold = scaled_tol(self.tol, self.algebra.scale)
        covectors: list[np.ndarray] = []
        residuals: list[float] = []
        for x in unit_chars:
            if linf(x[:n]) <= DEDUPE_THRESHOLD:
                continue
            polished, residual = newton_polish(self.algebra.table, x[:n])
            snapped = snap_small(polished, DEDUPE_THRESHOLD)
            snapped_residual = linf(quadratic_defect(self.algebra.table, snapped))
            if snapped_residual <= max(residual, threshold):
                polished, residual = snapped, snapped_residual
            if residual > threshold:
                raise _Shortfall(f"candidate failed verification (residual {residual:.3e})")
            if any(linf(polished - y) <= DEDUPE_THRESHOLD for y in covectors):
                continue
            covectors.append(polished)
            residuals.append(residual)
        return covectors, residuals

    def _split(self, basis: np.ndarray, rng: np.random.Generator) -> list[np.ndarray]:
        """Common eigenvectors inside the invariant subspace spanned by *basis*."""
        d = basis.shape[1]
        if d == 0:
            return []
        if d == 1:
            return [basis[:, 0]]

        for _ in range(SOLVER_SPLIT_ATTEMPTS):
            r = rng.standard_normal(self._ops_t.shape[0]) + 1j * rng.standard_normal(self._ops_t.shape[0])
            restricted = basis.conj().T @ np.einsum("i,ikj->kj", r, self._ops_t) @ basis
            clusters = _cluster(np.linalg.eigvals(restricted), SOLVER_CLUSTER_TOL * (1.0 + linf(restricted)))
            eigenspaces = [null_space(restricted - value * np.eye(d), self._null_tol) for value in clusters]
            if len(clusters) == 1 and eigenspaces[0].shape[1] == d:
                _LOGGER.debug("Generic element acts as a scalar on a %d-dim subspace, redrawing", d)
                continue

            leaves: list[np.ndarray] = []
            for value, eigen in zip(clusters, eigenspaces):
                if eigen.shape[1] == 0:
                    raise _Shortfall(f"empty eigenspace for eigenvalue {value:.6g}")
                invariant = self._largest_invariant(basis @ eigen)
                _LOGGER.debug("Eigenvalue %.6g: eigenspace dim %d, invariant dim %d", value, eigen.shape[1], invariant.shape[1])
                leaves.extend(self._split(invariant, rng))
            return leaves
        raise _Shortfall(f"could not split a {d}-dimensional invariant subspace")

    def _largest_invariant(self, basis: np.ndarray) -> np.ndarray:
        """Largest subspace of span(basis) mapped into itself by every ``L_{e_i}^T``."""
        current = orthonormal_basis(basis)
        while current.shape[1] > 0:
            projector = np.eye(current.shape[0]) - current @ current.conj().T
            images = np.einsum("lk,ikj,jq->ilq", projector, self._ops_t, current)
            stacked = images.reshape(-1, current.shape[1])
            keep = null_space(stacked, self._null_tol)
            if keep.shape[1] == current.shape[1]:
                return current
            current = orthonormal_basis(current @ keep)
        return current


def _cluster(values: np.ndarray, tol: float) -> list[complex]:
    """Group eigenvalues within *tol* of each other; returns cluster means."""
    ordered = sorted((complex(v) for v in values), key=lambda z: (z.real, z.imag))
    groups: list[list[complex]] = []
    for value in ordered:
        for group in groups:
            if abs(value - group[0]) <= tol:
                group.append(value)
                break
        else:
            groups.append([value])
    return [complex(np.mean(group)) for group in groups]


def character_space(algebra: Algebra, tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED) -> CharacterSet:
    """Δ(A): every character of *algebra*, verified and labelled.

    Raises:
        SolverDidNotConverge: If the solver cannot produce a complete verified set.
    """
    return CharacterSolver(algebra, tol, seed).solve()


# ---------------------------------------------------------------------------
# Working with characters
# ---------------------------------------------------------------------------


def character_matrix(characters: Union[CharacterSet, Sequence[Character]], dim: Optional[int] = None) -> np.ndarray:
    """``k x n`` array whose rows are the covectors."""
    items = list(characters)
    if not items:
        if isinstance(characters, CharacterSet):
            return characters.matrix
        return np.zeros((0, dim or 0), dtype=complex)
    return np.vstack([c.covector for c in items])


def match_character(
    covector: Any,
    characters: Union[CharacterSet, Sequence[Character]],
    threshold: float = DEDUPE_THRESHOLD,
) -> Optional[Character]:
    """The character within ℓ∞ *threshold* of *covector*, if any."""
    x = np.asarray(covector, dtype=complex).reshape(-1)
    for character in characters:
        if character.covector.shape == x.shape and linf(character.covector - x) <= threshold:
            return character
    return None


def restrict_character(phi: CharacterLike, subspace: SubspaceBasis) -> np.ndarray:
    """Covector of ``phi`` restricted to *subspace*, in its basis coordinates."""
    if phi.covector.shape[0] != subspace.ambient_dim:
        raise DimensionMismatch(f"Character of dimension {phi.covector.shape[0]} restricted to a subspace of dimension {subspace.ambient_dim}")
    return phi.covector @ subspace.basis


def separating_element(
    algebra: Algebra,
    phi: Character,
    psi: Character,
    tol: float = DEFAULT_TOL,
) -> Element:
    """Minimum-norm a with ``phi(a) = 0`` and ``psi(a) = 1``.

    Raises:
        CharactersEqual: If the two characters coincide.
    """
    if phi.distance(psi) <= DEDUPE_THRESHOLD:
        raise CharactersEqual(f"Characters {phi.label} and {psi.label} coincide")
    system = np.vstack([phi.covector, psi.covector])
    solution, residual = min_norm_solve(system, np.array([0.0, 1.0]))
    _LOGGER.debug("separating_element(%s, %s): residual %.3e", phi.label, psi.label, residual)
    return Element(solution, algebra.dim)


def _parse_selector(selector: Any) -> Any:
    if isinstance(selector, str):
        text = selector.strip()
        if text.startswith("["):
            try:
                return json.loads(text)
            except json.JSONDecodeError as exc:
                raise SelectorError(f"Covector literal is not valid JSON: {exc}") from exc
        return text
    return selector


def resolve_character(
    algebra: Algebra,
    selector: Any,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    characters: Optional[CharacterSet] = None,
) -> CharacterLike:
    """Resolve a selector to a character or the zero sentinel.

    Accepted selectors: ``"zero"``, a label such as ``"phi_2"``, a 1-based
    index (``2`` or ``"2"``), a covector literal ``[[re, im], ...]`` or a
    ``Character`` instance.

    Raises:
        SelectorError: If the selector resolves to nothing.
        CharacterNotVerified: If a covector literal is not a character.
    """
    if isinstance(selector, (Character, ZeroCharacter)):
        return selector
    value = _parse_selector(selector)
    if isinstance(value, str) and value.lower() == ZERO_LABEL:
        return ZeroCharacter(algebra.dim)

    chars = characters if characters is not None else character_space(algebra, tol, seed)

    if isinstance(value, str) and value.startswith(CHARACTER_LABEL_PREFIX):
        return chars.by_label(value)
    if (isinstance(value, int) and not isinstance(value, bool)) or (isinstance(value, str) and value.isdigit()):
        index = int(value)
        if not 1 <= index <= len(chars):
            raise SelectorError(f"Character index {index} out of range 1..{len(chars)}")
        return chars[index - 1]
    if isinstance(value, (list, tuple)):
        try:
            covector = decode_array(value, 1)
        except SchemaError as exc:
            raise SelectorError(f"Malformed covector literal: {exc}") from exc
        if covector.shape != (algebra.dim,):
            raise SelectorError(f"Covector literal has {covector.shape[0]} entries, algebra has dimension {algebra.dim}")
        found = match_character(covector, chars)
        if found is not None:
            return found
        residual = verify_character(algebra, covector)
        if linf(covector) <= DEDUPE_THRESHOLD or residual > scaled_tol(tol, algebra.scale):
            raise CharacterNotVerified(f"Covector is not a character (residual {residual:.3e})", residual=residual)
        return Character(covector, residual, "custom")
    raise SelectorError(f"Cannot resolve character selector {selector!r}")


def require_character(algebra: Algebra, phi: CharacterLike, tol: float) -> None:
    """Check that *phi* is a verified character of *algebra*.

    Raises:
        CharacterNotVerified: On dimension mismatch, zero covector or a
            residual above ``tol * (1 + max|c|)``.
    """
    if phi.is_zero:
        raise CharacterNotVerified("The zero functional is not a character")
    if phi.covector.shape != (algebra.dim,):
        raise CharacterNotVerified(f"Character has {phi.covector.shape[0]} entries, algebra has dimension {algebra.dim}")
    residual = verify_character(algebra, phi.covector)
    if residual > scaled_tol(tol, algebra.scale):
        raise CharacterNotVerified(f"Character {phi.label} fails multiplicativity (residual {residual:.3e})", residual=residual)
