"""Tests for the Δ-weak amenability, φ-amenability and kernel identity deciders,
and for the constructive operations on ideals."""

import numpy as np

from banalg.const import DEFAULT_SEED
from banalg.exceptions import (
    CharacterNotVerified,
    ConfigError,
    DimensionMismatch,
    NoCharacters,
    NotAnIdeal,
    NotAnIdentityOfI,
    PreconditionViolated,
)
from banalg.models.character import Character, ZeroCharacter
from banalg.services.algebra_factory import span, subalgebra, zero_algebra
from banalg.services.amenability_service import (
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
from banalg.services.character_solver import character_space, evaluate
from banalg.tests import helpers
from banalg.utils.linalg import min_norm_solve

E11, E12, E22 = ([1, 0, 0], [0, 1, 0], [0, 0, 1])


def _t2_phi(label: str) -> Character:
    return helpers.t_chars(2).by_label(label)


# ---------------------------------------------------------------------------
# Δ-weak identities and Δ-weak φ-amenability
# ---------------------------------------------------------------------------


def test_t2_delta_weak_identity():
    report = delta_weak_identity(helpers.t(2))
    assert report.is_yes
    helpers.assert_close(report.witness.coeffs, [1, 0, 1])
    assert report.affine_dim == 1
    assert report.max_residual <= report.tol


def test_a_phi_delta_weak_identity_family():
    for d in (2, 3, 4):
        report = delta_weak_identity(helpers.a_phi(d))
        assert report.is_yes
        assert report.affine_dim == d - 1
        helpers.assert_close(report.witness.coeffs, helpers.unit_vector(d, 0))


def test_delta_weak_identity_needs_characters():
    with helpers.assert_raises(NoCharacters):
        delta_weak_identity(zero_algebra(2))
    with helpers.assert_raises(NoCharacters):
        delta_weak_phi_amenable(zero_algebra(2), ZeroCharacter(2))


def test_t2_delta_weak_phi_amenable():
    report = delta_weak_phi_amenable(helpers.t(2), _t2_phi("phi_1"))
    assert report.is_yes
    assert report.phi == "phi_1"
    helpers.assert_close(report.witness.coeffs, E22)
    assert max(report.form_residuals) < 1e-12

    report = delta_weak_phi_amenable(helpers.t(2), _t2_phi("phi_2"))
    assert report.is_yes
    helpers.assert_close(report.witness.coeffs, E11)


def test_tn_delta_weak_phi_amenable_for_every_character():
    for n in (3, 4):
        chars = helpers.t_chars(n)
        for phi in chars:
            report = delta_weak_phi_amenable(helpers.t(n), phi, characters=chars)
            assert report.is_yes, f"T_{n} {phi.label}"
            assert abs(phi.covector @ report.witness.coeffs) < 1e-9


def test_single_character_uses_zero_witness():
    algebra = helpers.a_phi(2)
    phi = character_space(algebra)[0]
    report = delta_weak_phi_amenable(algebra, phi)
    assert report.is_yes
    helpers.assert_close(report.witness.coeffs, [0, 0])
    assert any("single character" in note for note in report.notes)


def test_zero_functional_matches_delta_weak_identity():
    algebra = helpers.t(2)
    zero = delta_weak_phi_amenable(algebra, ZeroCharacter(3))
    identity = delta_weak_identity(algebra)
    assert zero.is_yes and identity.is_yes
    assert zero.phi == "zero"
    helpers.assert_close(zero.witness.coeffs, identity.witness.coeffs)


def test_delta_weak_rejects_non_characters():
    with helpers.assert_raises(CharacterNotVerified):
        delta_weak_phi_amenable(helpers.t(2), Character(np.ones(3)))
    with helpers.assert_raises(CharacterNotVerified):
        delta_weak_phi_amenable(helpers.t(2), Character(np.ones(2)))
    with helpers.assert_raises(DimensionMismatch):
        delta_weak_phi_amenable(helpers.t(2), ZeroCharacter(2))


def test_report_serialization():
    data = delta_weak_phi_amenable(helpers.t(2), _t2_phi("phi_1")).to_dict()
    assert data["decision"] == "yes"
    assert data["phi"] == "phi_1"
    assert len(data["witness"]) == 3
    assert abs(data["witness_l1"] - 1.0) < 1e-9


# ---------------------------------------------------------------------------
# φ-amenability
# ---------------------------------------------------------------------------


def test_t2_phi_amenable_right_convention():
    yes = phi_amenable(helpers.t(2), _t2_phi("phi_1"), "right")
    assert yes.is_yes
    assert yes.convention == "right"
    helpers.assert_close(yes.witness.coeffs, E11)
    assert not phi_amenable(helpers.t(2), _t2_phi("phi_2"), "right").is_yes


def test_t2_phi_amenable_left_convention():
    yes = phi_amenable(helpers.t(2), _t2_phi("phi_2"), "left")
    assert yes.is_yes
    helpers.assert_close(yes.witness.coeffs, E22)
    no = phi_amenable(helpers.t(2), _t2_phi("phi_1"), "left")
    assert not no.is_yes
    assert no.witness is None
    assert no.max_residual > no.tol


def test_default_convention_is_left():
    assert phi_amenable(helpers.t(2), _t2_phi("phi_2")).convention == "left"
    assert phi_amenable(helpers.t(2), _t2_phi("phi_2")).is_yes


def test_tn_phi_amenable_conventions():
    n = 3
    chars = helpers.t_chars(n)
    for k, phi in enumerate(chars, start=1):
        right = phi_amenable(helpers.t(n), phi, "right", characters=chars).is_yes
        left = phi_amenable(helpers.t(n), phi, "left", characters=chars).is_yes
        assert right == (k == 1), f"right {phi.label}"
        assert left == (k == n), f"left {phi.label}"


def test_a_phi_phi_amenable_conventions():
    algebra = helpers.a_phi(2)
    phi = character_space(algebra)[0]
    assert phi_amenable(algebra, phi, "right").is_yes
    assert not phi_amenable(algebra, phi, "left").is_yes


def test_unknown_convention_rejected():
    with helpers.assert_raises(ConfigError):
        phi_amenable(helpers.t(2), _t2_phi("phi_1"), "middle")


# ---------------------------------------------------------------------------
# Kernel identities
# ---------------------------------------------------------------------------


def test_kernel_basis_dimension():
    for n in (2, 3):
        for phi in helpers.t_chars(n):
            kernel = kernel_basis(helpers.t(n), phi)
            assert kernel.dim == helpers.t(n).dim - 1
            assert kernel.is_two_sided_ideal


def test_t2_kernel_right_identity():
    yes = right_identity_in_kernel(helpers.t(2), _t2_phi("phi_1"))
    assert yes.is_yes
    helpers.assert_close(yes.witness.coeffs, E22)
    assert not right_identity_in_kernel(helpers.t(2), _t2_phi("phi_2")).is_yes


def test_t2_kernel_left_identity():
    yes = left_identity_in_kernel(helpers.t(2), _t2_phi("phi_2"))
    assert yes.is_yes
    helpers.assert_close(yes.witness.coeffs, E11)
    assert not left_identity_in_kernel(helpers.t(2), _t2_phi("phi_1")).is_yes


def test_zero_kernel_is_vacuous():
    phi = helpers.t_chars(1)[0]
    report = right_identity_in_kernel(helpers.t(1), phi)
    assert report.is_yes
    helpers.assert_close(report.witness.coeffs, [0])
    assert any("vacuous" in note for note in report.notes)


def test_kernel_identity_matches_phi_amenability_on_unital_algebras():
    for n in (2, 3, 4):
        chars = helpers.t_chars(n)
        for phi in chars:
            algebra = helpers.t(n)
            rid = right_identity_in_kernel(algebra, phi, characters=chars).is_yes
            lid = left_identity_in_kernel(algebra, phi, characters=chars).is_yes
            assert rid == phi_amenable(algebra, phi, "right", characters=chars).is_yes
            assert lid == phi_amenable(algebra, phi, "left", characters=chars).is_yes


_SEEDS = (0, 1, 7, DEFAULT_SEED)


def test_a_phi_kernel_has_no_identity_for_any_seed():
    # a u = phi(a) u = 0 for every a in ker phi
    for dim in (2, 3, 4, 5):
        algebra = helpers.a_phi(dim)
        for seed in _SEEDS:
            chars = character_space(algebra, seed=seed)
            phi = chars[0]
            for decider in (right_identity_in_kernel, left_identity_in_kernel):
                report = decider(algebra, phi, seed=seed, characters=chars)
                assert report.decision == "no", (dim, seed, decider.__name__, report.witness)


def test_kernel_identity_decisions_do_not_depend_on_seed():
    algebra = helpers.t(3)
    for seed in _SEEDS:
        chars = character_space(algebra, seed=seed)
        for k, phi in enumerate(chars, start=1):
            rid = right_identity_in_kernel(algebra, phi, seed=seed, characters=chars)
            lid = left_identity_in_kernel(algebra, phi, seed=seed, characters=chars)
            assert rid.is_yes == (k == 1), (seed, k)
            assert lid.is_yes == (k == 3), (seed, k)
            for report in (rid, lid):
                if report.is_yes:
                    assert abs(evaluate(phi, report.witness.coeffs)) < 1e-8


def test_min_norm_solve_treats_noise_as_rank_zero():
    x, residual = min_norm_solve(np.full((3, 2), 1e-63, dtype=complex), np.array([1.0, 0.0, 0.0]))
    assert np.array_equal(x, np.zeros(2))
    assert residual == 1.0
    x, residual = min_norm_solve(np.diag([2.0, 1e-12]), np.array([4.0, 1.0]))
    helpers.assert_close(x, [2.0, 0.0])
    assert residual == 1.0


# ---------------------------------------------------------------------------
# Combining identities
# ---------------------------------------------------------------------------


def test_combine_identities_on_t2():
    t2 = helpers.t(2)
    ideal = kernel_basis(t2, _t2_phi("phi_1"))
    g = combine_identities(t2, ideal, E22, E11)
    helpers.assert_close(g.coeffs, [1, 0, 1])


def test_combine_identities_preconditions():
    t2 = helpers.t(2)
    ideal = kernel_basis(t2, _t2_phi("phi_1"))
    with helpers.assert_raises(PreconditionViolated, match="not in the ideal"):
        combine_identities(t2, ideal, E11, E11)
    with helpers.assert_raises(PreconditionViolated, match="left identity"):
        combine_identities(t2, ideal, E22, [0, 0, 0])
    with helpers.assert_raises(NotAnIdeal):
        combine_identities(t2, span(t2, [E11]), E11, E11)


# ---------------------------------------------------------------------------
# Extending characters from ideals
# ---------------------------------------------------------------------------


def _summand_ideal():
    algebra = helpers.t2_plus_c()
    return algebra, span(algebra, [helpers.unit_vector(4, 3)], require_ideal=True)


def test_extend_character_from_summand():
    algebra, ideal = _summand_ideal()
    extended = extend_character_from_ideal(algebra, ideal, [1], helpers.unit_vector(4, 3))
    helpers.assert_close(extended.covector, [0, 0, 0, 1])
    assert extended.residual < 1e-12


def test_extend_character_of_ideal_algebra():
    algebra, ideal = _summand_ideal()
    psi = character_space(subalgebra(algebra, ideal))[0]
    extended = extend_character_from_ideal(algebra, ideal, psi, helpers.unit_vector(4, 3))
    helpers.assert_close(extended.covector, [0, 0, 0, 1], tol=1e-8)


def test_extend_character_checks_identity():
    algebra, ideal = _summand_ideal()
    with helpers.assert_raises(NotAnIdentityOfI):
        extend_character_from_ideal(algebra, ideal, [1], 2 * helpers.unit_vector(4, 3))
    with helpers.assert_raises(NotAnIdentityOfI):
        extend_character_from_ideal(algebra, ideal, [1], helpers.unit_vector(4, 0))
    with helpers.assert_raises(NotAnIdentityOfI, match="expected 1"):
        extend_character_from_ideal(algebra, ideal, [2], helpers.unit_vector(4, 3))
    with helpers.assert_raises(DimensionMismatch):
        extend_character_from_ideal(algebra, ideal, [1, 0], helpers.unit_vector(4, 3))
    with helpers.assert_raises(NotAnIdeal):
        extend_character_from_ideal(algebra, span(algebra, [helpers.unit_vector(4, 0)]), [1], helpers.unit_vector(4, 0))


def test_extend_witness_check():
    t2 = helpers.t(2)
    phi = _t2_phi("phi_1")
    witness = delta_weak_phi_amenable(t2, phi).witness
    report = extend_witness_check(t2, phi, witness, E11)
    assert report.passed
    assert report.max_psi_defect < 1e-12
    assert abs(report.max_phi_defect - 1.0) < 1e-9
    assert abs(report.phi_of_a0 - 1.0) < 1e-9
    assert not extend_witness_check(t2, phi, witness, E22).passed


# ---------------------------------------------------------------------------
# Test suite registration
# ---------------------------------------------------------------------------

SUITE_LABEL = "⚖️ Amenability Tests"
TEST_SUITE = [
    ("T_2 Δ-weak identity", test_t2_delta_weak_identity),
    ("A_phi Δ-weak identity family", test_a_phi_delta_weak_identity_family),
    ("Δ-weak identity needs characters", test_delta_weak_identity_needs_characters),
    ("T_2 Δ-weak φ-amenable", test_t2_delta_weak_phi_amenable),
    ("T_n Δ-weak φ-amenable", test_tn_delta_weak_phi_amenable_for_every_character),
    ("single character zero witness", test_single_character_uses_zero_witness),
    ("zero functional", test_zero_functional_matches_delta_weak_identity),
    ("non-characters rejected", test_delta_weak_rejects_non_characters),
    ("report serialization", test_report_serialization),
    ("T_2 φ-amenable right", test_t2_phi_amenable_right_convention),
    ("T_2 φ-amenable left", test_t2_phi_amenable_left_convention),
    ("default convention left", test_default_convention_is_left),
    ("T_3 conventions", test_tn_phi_amenable_conventions),
    ("A_phi conventions", test_a_phi_phi_amenable_conventions),
    ("unknown convention", test_unknown_convention_rejected),
    ("kernel dimension", test_kernel_basis_dimension),
    ("T_2 kernel right identity", test_t2_kernel_right_identity),
    ("T_2 kernel left identity", test_t2_kernel_left_identity),
    ("zero kernel vacuous", test_zero_kernel_is_vacuous),
    ("kernel identity ⇔ φ-amenability", test_kernel_identity_matches_phi_amenability_on_unital_algebras),
    ("A_phi kernel identities across seeds", test_a_phi_kernel_has_no_identity_for_any_seed),
    ("kernel decisions seed-independent", test_kernel_identity_decisions_do_not_depend_on_seed),
    ("noise-only system has rank 0", test_min_norm_solve_treats_noise_as_rank_zero),
    ("combine identities", test_combine_identities_on_t2),
    ("combine preconditions", test_combine_identities_preconditions),
    ("extend from summand", test_extend_character_from_summand),
    ("extend ideal character", test_extend_character_of_ideal_algebra),
    ("extend checks identity", test_extend_character_checks_identity),
    ("extend witness check", test_extend_witness_check),
]
