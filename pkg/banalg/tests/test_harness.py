"""Tests for the theorem checks, the fixture corpus and the harness runner."""

import numpy as np

from banalg.exceptions import (
    IdealHasNoIdentity,
    IdealInsideKernel,
    NotAHomomorphism,
    NotSurjective,
    PreconditionViolated,
    SchemaError,
)
from banalg.models.algebra import LinearMap
from banalg.models.harness import ExpectedFact, Fixture
from banalg.repositories.fixture_repository import load_corpus
from banalg.services.algebra_factory import direct_sum, quotient, span, zero_algebra
from banalg.services.amenability_service import kernel_basis
from banalg.services.character_solver import character_space
from banalg.services.theorem_harness import (
    check_character_independence,
    check_ideal_restriction,
    check_small_delta,
    check_surjection_transfer,
    run_all,
    run_fixture,
    select_fixtures,
)
from banalg.tests import helpers

MINI_CORPUS = helpers.FIXTURES_DIR / "mini_corpus.yaml"


# ---------------------------------------------------------------------------
# Individual checks
# ---------------------------------------------------------------------------


def test_small_delta():
    assert check_small_delta(helpers.t(2))
    assert check_small_delta(helpers.a_phi(3))
    with helpers.assert_raises(PreconditionViolated, match="got 3"):
        check_small_delta(helpers.t(3))
    with helpers.assert_raises(PreconditionViolated, match="got 0"):
        check_small_delta(zero_algebra(1))


def test_surjection_transfer_through_identity_and_quotient():
    t2 = helpers.t(2)
    for phi in helpers.t_chars(2):
        assert check_surjection_transfer(t2, t2, LinearMap.identity(3), phi)
    phi_1 = helpers.t_chars(2).by_label("phi_1")
    target, projection = quotient(t2, kernel_basis(t2, phi_1))
    psi = character_space(target)[0]
    assert check_surjection_transfer(t2, target, projection, psi)


def test_surjection_transfer_preconditions():
    t2 = helpers.t(2)
    phi = helpers.t_chars(2)[0]
    with helpers.assert_raises(NotAHomomorphism):
        check_surjection_transfer(t2, t2, LinearMap(2 * np.eye(3), 3, 3), phi)
    c_plus_c = direct_sum(helpers.t(1), helpers.t(1))
    with helpers.assert_raises(NotSurjective):
        check_surjection_transfer(c_plus_c, helpers.t(1), LinearMap(np.zeros((1, 2)), 2, 1), helpers.t_chars(1)[0])


def test_ideal_restriction():
    algebra = helpers.t2_plus_c()
    chars = character_space(algebra)
    ideal = span(algebra, [helpers.unit_vector(4, 3)], require_ideal=True)
    last = chars.by_label("phi_3")
    helpers.assert_close(last.covector, [0, 0, 0, 1], tol=1e-6)
    assert check_ideal_restriction(algebra, ideal, last)
    with helpers.assert_raises(IdealInsideKernel):
        check_ideal_restriction(algebra, ideal, chars.by_label("phi_1"))


def test_ideal_restriction_needs_unital_ideal():
    t2 = helpers.t(2)
    phi_1, phi_2 = helpers.t_chars(2)
    with helpers.assert_raises(IdealHasNoIdentity):
        check_ideal_restriction(t2, kernel_basis(t2, phi_1), phi_2)


def test_character_independence():
    assert check_character_independence(helpers.t(3))
    assert check_character_independence(zero_algebra(2))


# ---------------------------------------------------------------------------
# Corpus
# ---------------------------------------------------------------------------


def test_bundled_corpus_loads():
    corpus = load_corpus()
    names = [f.name for f in corpus]
    assert len(names) == len(set(names))
    families = {f.family for f in corpus}
    assert {"upper_triangular", "a_phi", "lau", "group", "direct_sum", "quotient", "zero"} <= families
    assert all(fact.tag in ("PUBLISHED", "DERIVED", "TRIVIAL") for f in corpus for fact in f.facts)


def test_corpus_schema_errors():
    with helpers.assert_raises(SchemaError, match="Duplicate"):
        load_corpus(helpers.FIXTURES_DIR / "duplicate_names.yaml")
    with helpers.assert_raises(SchemaError, match="Cannot read"):
        load_corpus(helpers.FIXTURES_DIR / "missing.yaml")
    with helpers.assert_raises(SchemaError):
        ExpectedFact(key="dim", value=1, tag="GUESSED")


def test_fact_names():
    assert ExpectedFact(key="phi_amenable", value=True, phi="phi_1", convention="left").name == "phi_amenable:phi_1:left"
    assert ExpectedFact(key="dim", value=3).name == "dim"


def test_select_fixtures():
    corpus = load_corpus()
    uppers = select_fixtures(corpus, "upper_triangular")
    assert uppers and all(f.family == "upper_triangular" for f in uppers)
    assert [f.name for f in select_fixtures(corpus, "lau_c")] == ["lau_c_c"]
    assert len(select_fixtures(corpus)) == len(corpus)


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------


def test_full_corpus_passes():
    summary = run_all(load_corpus())
    assert summary.passed, f"failures: {summary.failures}"
    assert summary.fixtures == len(load_corpus())
    assert summary.checks == len(summary.results)


def test_a_phi_kernel_facts_hold_for_several_seeds():
    fixtures = select_fixtures(load_corpus(), "a_phi")
    assert fixtures
    for seed in (0, 1, 7):
        summary = run_all(fixtures, seed=seed)
        assert summary.passed, (seed, summary.failures)


def test_results_are_sorted_and_deterministic():
    corpus = load_corpus(MINI_CORPUS)
    first = run_all(corpus)
    second = run_all(corpus, workers=2)
    keys = [(r.fixture, r.check) for r in first.results]
    assert keys == sorted(keys)
    assert [(r.name, r.passed) for r in first.results] == [(r.name, r.passed) for r in second.results]
    assert first.fixtures == 3


def test_wrong_fact_is_reported():
    summary = run_all(load_corpus(helpers.FIXTURES_DIR / "wrong_fact.yaml"))
    assert not summary.passed
    assert summary.failures == ("upper_triangular_2_wrong::fact:characters",)


def test_build_failure_is_recorded():
    results = run_fixture(Fixture(name="broken", family="raw", spec={"kind": "nope"}))
    assert len(results) == 1
    assert results[0].check == "build"
    assert not results[0].passed
    assert "UnknownConstructor" in results[0].detail


def test_empty_corpus():
    summary = run_all([])
    assert summary.fixtures == 0
    assert summary.checks == 0
    assert summary.passed


def test_zero_algebra_fixture_skips_character_checks():
    results = run_fixture(Fixture(name="zero_1", family="zero", spec={"kind": "zero", "dim": 1}))
    checks = {r.check for r in results}
    assert all(r.passed for r in results)
    assert "dw_identity" not in checks
    assert {"build", "determinism", "character_independence", "oracle"} <= checks


def test_family_filter():
    summary = run_all(load_corpus(MINI_CORPUS), family="direct_sum")
    assert summary.fixtures == 1
    assert {r.fixture for r in summary.results} == {"direct_sum_c_c"}
    assert any(r.check.startswith("transfer_first_summand") for r in summary.results)
    assert any(r.check.startswith("ideal_restriction_second_summand") for r in summary.results)


# ---------------------------------------------------------------------------
# Test suite registration
# ---------------------------------------------------------------------------

SUITE_LABEL = "📐 Theorem Harness Tests"
TEST_SUITE = [
    ("small Δ", test_small_delta),
    ("surjection transfer", test_surjection_transfer_through_identity_and_quotient),
    ("surjection preconditions", test_surjection_transfer_preconditions),
    ("ideal restriction", test_ideal_restriction),
    ("ideal restriction needs unit", test_ideal_restriction_needs_unital_ideal),
    ("character independence", test_character_independence),
    ("bundled corpus loads", test_bundled_corpus_loads),
    ("corpus schema errors", test_corpus_schema_errors),
    ("fact names", test_fact_names),
    ("select fixtures", test_select_fixtures),
    ("full corpus passes", test_full_corpus_passes),
    ("A_phi facts across seeds", test_a_phi_kernel_facts_hold_for_several_seeds),
    ("sorted deterministic results", test_results_are_sorted_and_deterministic),
    ("wrong fact reported", test_wrong_fact_is_reported),
    ("build failure recorded", test_build_failure_is_recorded),
    ("empty corpus", test_empty_corpus),
    ("zero algebra fixture", test_zero_algebra_fixture_skips_character_checks),
    ("family filter", test_family_filter),
]
