"""Theorem harness.

Replays the finite-dimensionally valid theorems about Δ-weak amenability
against the solvers over the fixture corpus: per-fixture expected facts,
corpus-wide invariants (every φ in Δ(A) ∪ {0} is Δ-weak amenable, the
identity chains, the kernel-identity characterization of φ-amenability),
hereditary transfers along surjections and to unital ideals, and the
independent oracle cross-check.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Iterable, Optional, Sequence

import numpy as np

from ..const import (
    CONVENTION_LEFT,
    CONVENTION_RIGHT,
    DEDUPE_THRESHOLD,
    DEFAULT_SEED,
    DEFAULT_TOL,
    HOMOMORPHISM_TOL,
    INDEPENDENCE_RANK_TOL,
    ORACLE_MATCH_TOL,
    ORACLE_MAX_DIM,
    ORACLE_STARTS,
    SIDE_TWO_SIDED,
)
from ..exceptions import (
    BanalgError,
    IdealHasNoIdentity,
    IdealInsideKernel,
    NotAHomomorphism,
    NotSurjective,
    PreconditionViolated,
)
from ..models.algebra import Algebra, LinearMap
from ..models.character import Character, CharacterSet, ZeroCharacter
from ..models.harness import CheckResult, ExpectedFact, Fixture, HarnessSummary
from ..models.subspace import SubspaceBasis
from ..utils.linalg import linf, min_norm_solve, numerical_rank, scaled_tol
from .algebra_factory import (
    AlgebraFactory,
    direct_sum_projection,
    is_homomorphism,
    is_surjective,
    quotient,
    span,
    subalgebra,
)
from .amenability_service import (
    combine_identities,
    delta_weak_identity,
    delta_weak_phi_amenable,
    extend_character_from_ideal,
    extend_witness_check,
    kernel_basis,
    left_identity_in_kernel,
    phi_amenable,
    right_identity_in_kernel,
)
from .character_oracle import newton_oracle, same_character_sets
from .character_solver import character_space, match_character, restrict_character
from .identity_service import find_identity, find_identity_on

_LOGGER = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Individual theorem checks
# ---------------------------------------------------------------------------


def check_small_delta(
    algebra: Algebra,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    characters: Optional[CharacterSet] = None,
) -> bool:
    """With one or two characters, A is Δ-weak φ-amenable for every φ in Δ(A).

    Raises:
        PreconditionViolated: If Δ(A) does not have 1 or 2 elements.
    """
    chars = characters if characters is not None else character_space(algebra, tol, seed)
    if len(chars) not in (1, 2):
        raise PreconditionViolated(f"check_small_delta needs 1 or 2 characters, got {len(chars)}")
    return all(delta_weak_phi_amenable(algebra, phi, tol, seed, chars).is_yes for phi in chars)


def check_surjection_transfer(
    source: Algebra,
    target: Algebra,
    h: LinearMap,
    phi: Character,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
) -> bool:
    """Δ-weak (φ∘h)-amenability of A transfers to Δ-weak φ-amenability of B.

    Raises:
        NotAHomomorphism: If h is not multiplicative within 1e-9.
        NotSurjective: If h does not have full rank onto B.
    """
    residual = is_homomorphism(source, target, h)
    if residual > scaled_tol(HOMOMORPHISM_TOL, max(source.scale, target.scale)):
        raise NotAHomomorphism(f"Map is not multiplicative (residual {residual:.3e})", residual=residual)
    if not is_surjective(h):
        raise NotSurjective("Map does not have full rank onto the target")
    pulled_back = Character(phi.covector @ h.matrix, 0.0, f"{phi.label}∘h")
    if not delta_weak_phi_amenable(source, pulled_back, tol, seed).is_yes:
        return True
    return delta_weak_phi_amenable(target, phi, tol, seed).is_yes


def check_ideal_restriction(
    algebra: Algebra,
    ideal: SubspaceBasis,
    phi: Character,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
) -> bool:
    """Δ-weak φ-amenability of A passes to a unital ideal I not inside ker φ.

    The character space of I is computed independently and must contain
    the restriction of φ.

    Raises:
        IdealHasNoIdentity: If I has no two-sided identity.
        IdealInsideKernel: If φ vanishes on I.
    """
    if find_identity_on(algebra, ideal, SIDE_TWO_SIDED, tol) is None:
        raise IdealHasNoIdentity("The ideal has no two-sided identity")
    restricted = restrict_character(phi, ideal)
    if linf(restricted) <= DEDUPE_THRESHOLD:
        raise IdealInsideKernel(f"The ideal lies inside ker({phi.label})")
    ideal_algebra = subalgebra(algebra, ideal)
    ideal_chars = character_space(ideal_algebra, tol, seed)
    phi_ideal = match_character(restricted, ideal_chars)
    if phi_ideal is None:
        _LOGGER.warning("Restriction of %s is not among the characters of the ideal", phi.label)
        return False
    if not delta_weak_phi_amenable(algebra, phi, tol, seed).is_yes:
        return True
    return delta_weak_phi_amenable(ideal_algebra, phi_ideal, tol, seed, ideal_chars).is_yes


def check_character_independence(
    algebra: Algebra,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    characters: Optional[CharacterSet] = None,
) -> bool:
    """The character matrix has full row rank (SVD, tolerance 1e-8)."""
    chars = characters if characters is not None else character_space(algebra, tol, seed)
    if len(chars) == 0:
        return True
    return numerical_rank(chars.matrix, INDEPENDENCE_RANK_TOL) == len(chars)


# ---------------------------------------------------------------------------
# Per-fixture runner
# ---------------------------------------------------------------------------


class FixtureRunner:
    """Runs every check that applies to one fixture."""

    def __init__(self, fixture: Fixture, seed: int, tol: float) -> None:
        self.fixture = fixture
        self.seed = seed
        self.tol = tol
        self.factory = AlgebraFactory(seed, tol)
        self.results: list[CheckResult] = []
        self.algebra: Optional[Algebra] = None
        self.chars: Optional[CharacterSet] = None

    def _record(self, check: str, passed: bool, detail: str = "") -> None:
        self.results.append(CheckResult(self.fixture.name, check, bool(passed), detail))

    def _run(self, check: str, func: Callable[[], Any]) -> Any:
        """Run *func*; a falsy result or an exception is a failure."""
        try:
            outcome = func()
        except BanalgError as exc:
            self._record(check, False, f"{type(exc).__name__}: {exc}")
            return None
        except Exception as exc:  # noqa: BLE001
            _LOGGER.exception("Unexpected error in %s::%s", self.fixture.name, check)
            self._record(check, False, f"{type(exc).__name__}: {exc}")
            return None
        if isinstance(outcome, tuple):
            passed, detail = outcome
        else:
            passed, detail = bool(outcome), ""
        self._record(check, passed, detail)
        return outcome

    @property
    def threshold(self) -> float:
        assert self.algebra is not None
        return scaled_tol(self.tol, self.algebra.scale)

    # ------------------------------------------------------------------

    def run(self) -> list[CheckResult]:
        _LOGGER.info("Harness: fixture %s", self.fixture.name)
        try:
            self.algebra = self.factory.create(self.fixture.spec)
            self.chars = character_space(self.algebra, self.tol, self.seed)
        except BanalgError as exc:
            self._record("build", False, f"{type(exc).__name__}: {exc}")
            return self.results
        self._record("build", True)

        self._check_facts()
        self._run("determinism", self._determinism)
        self._run("character_independence", lambda: check_character_independence(self.algebra, characters=self.chars))
        if self.algebra.dim <= ORACLE_MAX_DIM:
            self._run("oracle", self._oracle)
        if self.fixture.family == "lau":
            self._run("lau_characters", self._lau_characters)

        if len(self.chars) == 0:
            return self.results

        if len(self.chars) in (1, 2):
            self._run("small_delta", lambda: check_small_delta(self.algebra, self.tol, self.seed, self.chars))
        self._run("dw_identity", self._dw_identity)
        self._run("zero_amenable_chain", self._zero_chain)
        for phi in self.chars:
            self._per_character(phi)
        unit = find_identity(self.algebra, SIDE_TWO_SIDED, self.tol)
        if unit is not None:
            for phi in self.chars:
                self._run(f"kernel_identity_equivalence:{phi.label}", lambda phi=phi: self._kernel_equivalence(phi))
        self._transfers()
        self._ideals(unit is not None)
        return self.results

    # ------------------------------------------------------------------

    def _check_facts(self) -> None:
        for fact in self.fixture.facts:
            self._run(f"fact:{fact.name}", lambda fact=fact: self._fact(fact))

    def _fact(self, fact: ExpectedFact) -> tuple[bool, str]:
        algebra, chars = self.algebra, self.chars
        assert algebra is not None and chars is not None
        if fact.key == "dim":
            actual: Any = algebra.dim
        elif fact.key == "characters":
            actual = len(chars)
        elif fact.key == "unital":
            actual = find_identity(algebra, SIDE_TWO_SIDED, self.tol) is not None
        elif fact.key == "dw_identity_affine_dim":
            actual = delta_weak_identity(algebra, self.tol, self.seed, chars).affine_dim
        elif fact.key == "covector":
            expected = np.asarray(fact.value, dtype=complex)
            distance = linf(chars.by_label(fact.phi or "").covector - expected)
            return distance <= ORACLE_MATCH_TOL, f"distance {distance:.3e}"
        elif fact.key == "phi_amenable":
            phi = chars.by_label(fact.phi or "")
            actual = phi_amenable(algebra, phi, fact.convention or CONVENTION_LEFT, self.tol, self.seed, chars).is_yes
        elif fact.key == "right_identity_in_kernel":
            actual = right_identity_in_kernel(algebra, chars.by_label(fact.phi or ""), self.tol, self.seed, chars).is_yes
        else:
            return False, f"unknown fact key {fact.key!r}"
        return actual == fact.value, f"expected {fact.value!r} [{fact.tag}], got {actual!r}"

    def _determinism(self) -> tuple[bool, str]:
        assert self.algebra is not None and self.chars is not None
        again = character_space(self.algebra, self.tol, self.seed)
        same = again.labels == self.chars.labels and np.array_equal(again.matrix, self.chars.matrix)
        return same, "" if same else "second solve differs"

    def _oracle(self) -> tuple[bool, str]:
        assert self.algebra is not None and self.chars is not None
        found = newton_oracle(self.algebra, ORACLE_STARTS, self.seed, self.tol)
        solver = [c.covector for c in self.chars]
        return same_character_sets(solver, found, ORACLE_MATCH_TOL), f"solver {len(solver)}, oracle {len(found)}"

    def _lau_characters(self) -> tuple[bool, str]:
        assert self.algebra is not None and self.chars is not None
        spec = self.fixture.spec
        a = self.factory.create(spec["a"])
        b = self.factory.create(spec["b"])
        theta = self.factory.resolve_covector(b, spec["theta"])
        a_chars = character_space(a, self.tol, self.seed)
        b_chars = character_space(b, self.tol, self.seed)
        expected = [np.concatenate([c.covector, theta]) for c in a_chars]
        expected += [np.concatenate([np.zeros(a.dim), c.covector]) for c in b_chars]
        ok = same_character_sets([c.covector for c in self.chars], expected, ORACLE_MATCH_TOL)
        return ok, f"|Δ| = {len(self.chars)}, expected {len(a_chars)} + {len(b_chars)}"

    def _dw_identity(self) -> tuple[bool, str]:
        assert self.algebra is not None and self.chars is not None
        report = delta_weak_identity(self.algebra, self.tol, self.seed, self.chars)
        if not report.is_yes or report.witness is None:
            return False, "no Δ-weak identity"
        values = self.chars.matrix @ report.witness.coeffs
        return linf(values - 1.0) <= self.threshold, f"affine dim {report.affine_dim}"

    def _zero_chain(self) -> tuple[bool, str]:
        assert self.algebra is not None and self.chars is not None
        some = any(delta_weak_phi_amenable(self.algebra, phi, self.tol, self.seed, self.chars).is_yes for phi in self.chars)
        zero = delta_weak_phi_amenable(self.algebra, ZeroCharacter(self.algebra.dim), self.tol, self.seed, self.chars)
        return (not some) or zero.is_yes, f"some φ: {some}, zero: {zero.decision}"

    def _per_character(self, phi: Character) -> None:
        algebra, chars = self.algebra, self.chars
        assert algebra is not None and chars is not None
        label = phi.label

        report = self._run(f"dw_phi_amenable:{label}", lambda: delta_weak_phi_amenable(algebra, phi, self.tol, self.seed, chars).is_yes)
        self._run(f"witness_soundness:{label}", lambda: self._witness_sound(phi))
        self._run(
            f"dw_identity_chain:{label}",
            lambda: (not delta_weak_phi_amenable(algebra, phi, self.tol, self.seed, chars).is_yes)
            or delta_weak_identity(algebra, self.tol, self.seed, chars).is_yes,
        )
        self._run(f"kernel_dim:{label}", lambda: kernel_basis(algebra, phi, self.tol).dim == algebra.dim - 1)
        if report:
            self._run(f"combine_identities:{label}", lambda: self._combine(phi))
            self._run(f"extend_witness:{label}", lambda: self._extend_witness(phi))

    def _witness_sound(self, phi: Character) -> tuple[bool, str]:
        assert self.algebra is not None and self.chars is not None
        report = delta_weak_phi_amenable(self.algebra, phi, self.tol, self.seed, self.chars)
        if report.witness is None:
            return False, "no witness"
        u = report.witness.coeffs
        defects = [abs(complex(phi.covector @ u))]
        defects += [abs(complex(psi.covector @ u) - 1.0) for psi in self.chars.others(phi)]
        worst = max(max(defects), max(report.form_residuals, default=0.0))
        return worst <= self.threshold, f"max defect {worst:.3e}"

    def _unit_value_element(self, phi: Character) -> np.ndarray:
        a0, _ = min_norm_solve(phi.covector[None, :], np.array([1.0]))
        return a0

    def _combine(self, phi: Character) -> tuple[bool, str]:
        assert self.algebra is not None and self.chars is not None
        report = delta_weak_phi_amenable(self.algebra, phi, self.tol, self.seed, self.chars)
        assert report.witness is not None
        ideal = kernel_basis(self.algebra, phi, self.tol)
        g = combine_identities(self.algebra, ideal, report.witness, self._unit_value_element(phi), self.tol, self.seed, self.chars)
        defect = linf(self.chars.matrix @ g.coeffs - 1.0)
        return defect <= self.threshold, f"Δ-weak identity defect {defect:.3e}"

    def _extend_witness(self, phi: Character) -> tuple[bool, str]:
        assert self.algebra is not None and self.chars is not None
        report = delta_weak_phi_amenable(self.algebra, phi, self.tol, self.seed, self.chars)
        assert report.witness is not None
        check = extend_witness_check(self.algebra, phi, report.witness, self._unit_value_element(phi), self.tol, self.seed, self.chars)
        expected_phi_defect = linf(phi.covector)
        ok = check.passed and abs(check.max_phi_defect - expected_phi_defect) <= self.threshold
        return ok, f"psi defect {check.max_psi_defect:.3e}, phi defect {check.max_phi_defect:.3e}"

    def _kernel_equivalence(self, phi: Character) -> tuple[bool, str]:
        assert self.algebra is not None and self.chars is not None
        algebra, chars = self.algebra, self.chars
        rid = right_identity_in_kernel(algebra, phi, self.tol, self.seed, chars).is_yes
        lid = left_identity_in_kernel(algebra, phi, self.tol, self.seed, chars).is_yes
        right = phi_amenable(algebra, phi, CONVENTION_RIGHT, self.tol, self.seed, chars).is_yes
        left = phi_amenable(algebra, phi, CONVENTION_LEFT, self.tol, self.seed, chars).is_yes
        return rid == right and lid == left, f"rid {rid}/right {right}, lid {lid}/left {left}"

    # ------------------------------------------------------------------

    def _transfers(self) -> None:
        algebra, chars = self.algebra, self.chars
        assert algebra is not None and chars is not None
        identity = LinearMap.identity(algebra.dim)
        for phi in chars:
            self._run(
                f"transfer_identity:{phi.label}",
                lambda phi=phi: check_surjection_transfer(algebra, algebra, identity, phi, self.tol, self.seed),
            )
            if algebra.dim > 1:
                self._run(f"transfer_quotient:{phi.label}", lambda phi=phi: self._quotient_transfer(phi))
        if self.fixture.family == "direct_sum":
            a = self.factory.create(self.fixture.spec["a"])
            b = self.factory.create(self.fixture.spec["b"])
            for first, summand in ((True, a), (False, b)):
                projection = direct_sum_projection(a, b, first)
                for psi in character_space(summand, self.tol, self.seed):
                    self._run(
                        f"transfer_{projection.label}:{psi.label}",
                        lambda summand=summand, projection=projection, psi=psi: check_surjection_transfer(
                            algebra, summand, projection, psi, self.tol, self.seed
                        ),
                    )

    def _quotient_transfer(self, phi: Character) -> tuple[bool, str]:
        assert self.algebra is not None
        target, projection = quotient(self.algebra, kernel_basis(self.algebra, phi, self.tol))
        target_chars = character_space(target, self.tol, self.seed)
        if len(target_chars) != 1:
            return False, f"quotient has {len(target_chars)} characters"
        psi = target_chars[0]
        pulled = psi.covector @ projection.matrix
        if linf(pulled - phi.covector) > ORACLE_MATCH_TOL:
            return False, "quotient character does not pull back to phi"
        return check_surjection_transfer(self.algebra, target, projection, psi, self.tol, self.seed), ""

    def _ideals(self, unital: bool) -> None:
        algebra, chars = self.algebra, self.chars
        assert algebra is not None and chars is not None
        ideals: list[tuple[str, SubspaceBasis]] = []
        if unital:
            ideals.append(("whole", span(algebra, np.eye(algebra.dim), require_ideal=True)))
        if self.fixture.family == "direct_sum":
            a = self.factory.create(self.fixture.spec["a"])
            eye = np.eye(algebra.dim)
            ideals.append(("first_summand", span(algebra, eye[:, : a.dim], require_ideal=True)))
            ideals.append(("second_summand", span(algebra, eye[:, a.dim :], require_ideal=True)))

        for name, ideal in ideals:
            unit = find_identity_on(algebra, ideal, SIDE_TWO_SIDED, self.tol)
            if unit is None:
                continue
            for phi in chars:
                if linf(restrict_character(phi, ideal)) <= DEDUPE_THRESHOLD:
                    continue
                self._run(
                    f"ideal_restriction_{name}:{phi.label}",
                    lambda ideal=ideal, phi=phi: check_ideal_restriction(algebra, ideal, phi, self.tol, self.seed),
                )
            self._run(f"extend_from_ideal_{name}", lambda ideal=ideal, unit=unit: self._extend_from(ideal, unit))

    def _extend_from(self, ideal: SubspaceBasis, unit: Any) -> tuple[bool, str]:
        assert self.algebra is not None and self.chars is not None
        ideal_chars = character_space(subalgebra(self.algebra, ideal), self.tol, self.seed)
        for psi in ideal_chars:
            extended = extend_character_from_ideal(self.algebra, ideal, psi, unit, self.tol)
            if match_character(extended.covector, self.chars, ORACLE_MATCH_TOL) is None:
                return False, f"extension of {psi.label} is not a character of A"
        return True, f"{len(ideal_chars)} extension(s)"


# ---------------------------------------------------------------------------
# Corpus run
# ---------------------------------------------------------------------------


def select_fixtures(corpus: Iterable[Fixture], family: Optional[str] = None) -> list[Fixture]:
    """Fixtures whose family or name starts with *family* (all when None)."""
    fixtures = list(corpus)
    if not family:
        return fixtures
    return [f for f in fixtures if f.family.startswith(family) or f.name.startswith(family)]


def run_fixture(fixture: Fixture, seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOL) -> list[CheckResult]:
    return FixtureRunner(fixture, seed, tol).run()


def run_all(
    corpus: Sequence[Fixture],
    seed: int = DEFAULT_SEED,
    tol: float = DEFAULT_TOL,
    workers: int = 1,
    family: Optional[str] = None,
) -> HarnessSummary:
    """Run every check over the corpus.

    Args:
        corpus: Fixtures to evaluate.
        seed: Solver seed.
        tol: Decision tolerance.
        workers: Thread count; fixtures are independent.
        family: Optional family/name prefix filter.

    Returns:
        Summary with results sorted by fixture and check name.
    """
    fixtures = select_fixtures(corpus, family)
    _LOGGER.info("Harness: %d fixture(s), seed %#x, tol %g", len(fixtures), seed, tol)
    if workers > 1 and len(fixtures) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(lambda f: run_fixture(f, seed, tol), fixtures))
    else:
        batches = [run_fixture(f, seed, tol) for f in fixtures]

    results = sorted((r for batch in batches for r in batch), key=lambda r: (r.fixture, r.check))
    failures = tuple(r.name for r in results if not r.passed)
    for result in results:
        if not result.passed:
            _LOGGER.warning("Check failed: %s (%s)", result.name, result.detail)
    return HarnessSummary(
        fixtures=len(fixtures),
        checks=len(results),
        failures=failures,
        seed=seed,
        tol=tol,
        _results=tuple(results),
    )
