"""Tests for algebra construction, subspaces, quotients and identity search."""

import numpy as np

from banalg.exceptions import (
    CharacterNotVerified,
    DimensionMismatch,
    NonAssociativeTable,
    NotAGroup,
    NotAnIdeal,
    ZeroFunctional,
)
from banalg.models.algebra import Algebra, LinearMap
from banalg.services.algebra_factory import (
    a_phi_algebra,
    closure_residuals,
    cyclic_group_cayley,
    direct_sum,
    direct_sum_projection,
    finite_group_algebra,
    is_homomorphism,
    is_surjective,
    lau_product,
    multiply,
    new_algebra,
    quotient,
    span,
    subalgebra,
    symmetric_group_cayley,
    unitization,
    upper_triangular,
    zero_algebra,
)
from banalg.services.identity_service import find_identity, find_identity_on, find_right_identity_on, identity_defect
from banalg.tests import helpers

E11, E12, E22 = (helpers.unit_vector(3, k) for k in range(3))


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def test_t2_products():
    t2 = helpers.t(2)
    helpers.assert_close(multiply(t2, E11, E12).coeffs, E12)
    helpers.assert_close(multiply(t2, E12, E11).coeffs, np.zeros(3))
    helpers.assert_close(multiply(t2, E12, E22).coeffs, E12)
    helpers.assert_close(multiply(t2, E22, E22).coeffs, E22)
    assert t2.labels == ("E11", "E12", "E22")


def test_upper_triangular_dimensions():
    for n in range(1, 6):
        assert upper_triangular(n).dim == n * (n + 1) // 2


def test_bilinear_product():
    t2 = helpers.t(2)
    a = np.array([1, 2j, -1])
    b = np.array([3, 0, 1 + 1j])
    # (E11 + 2i E12 - E22)(3 E11 + (1+i) E22) = 3 E11 + 2i(1+i) E12 - (1+i) E22
    helpers.assert_close(multiply(t2, a, b).coeffs, [3, 2j * (1 + 1j), -(1 + 1j)])


def test_non_associative_table_rejected():
    table = np.zeros((2, 2, 2))
    table[0, 0, 1] = 1.0  # e1 e1 = e2
    table[1, 0, 0] = 1.0  # e2 e1 = e1
    with helpers.assert_raises(NonAssociativeTable, match="residual"):
        new_algebra(2, table)


def test_table_shape_checked():
    with helpers.assert_raises(DimensionMismatch):
        new_algebra(2, np.zeros((2, 2, 3)))
    with helpers.assert_raises(DimensionMismatch):
        new_algebra(0, np.zeros((0, 0, 0)))
    with helpers.assert_raises(DimensionMismatch):
        new_algebra(2, np.zeros((2, 2, 2)), labels=["only_one"])


def test_a_phi_product():
    a = a_phi_algebra(2, [1, 0])
    # ab = phi(a) b
    helpers.assert_close(a.multiply([2, 3], [5, 7]).coeffs, [10, 14])


def test_a_phi_zero_functional_rejected():
    with helpers.assert_raises(ZeroFunctional):
        a_phi_algebra(2, [0, 0])
    with helpers.assert_raises(DimensionMismatch):
        a_phi_algebra(2, [1, 0, 0])


def test_group_algebra_checks_cayley_table():
    with helpers.assert_raises(NotAGroup, match="inverse"):
        finite_group_algebra([[0, 0], [0, 1]])
    with helpers.assert_raises(NotAGroup):
        finite_group_algebra([[0, 1]])
    with helpers.assert_raises(NotAGroup):
        finite_group_algebra([[0, 2], [1, 0]])


def test_cyclic_group_algebra_is_commutative():
    c3 = finite_group_algebra(cyclic_group_cayley(3))
    assert c3.dim == 3
    assert np.allclose(c3.table, np.transpose(c3.table, (1, 0, 2)))


def test_symmetric_group_algebra_is_not_commutative():
    s3 = finite_group_algebra(symmetric_group_cayley(3))
    assert s3.dim == 6
    assert not np.allclose(s3.table, np.transpose(s3.table, (1, 0, 2)))
    # identity permutation first
    helpers.assert_close(find_identity(s3).coeffs, helpers.unit_vector(6, 0))


def test_direct_sum_is_componentwise():
    algebra = helpers.t2_plus_c()
    assert algebra.dim == 4
    e4 = helpers.unit_vector(4, 3)
    helpers.assert_close(algebra.multiply(e4, e4).coeffs, e4)
    helpers.assert_close(algebra.multiply(helpers.unit_vector(4, 0), e4).coeffs, np.zeros(4))
    assert algebra.labels[0] == "(E11,0)"


def test_unitization_appends_unit_last():
    algebra = unitization(helpers.a_phi(2))
    assert algebra.dim == 3
    assert algebra.labels[-1] == "1"
    helpers.assert_close(find_identity(algebra).coeffs, helpers.unit_vector(3, 2))


def test_lau_product_unit_comes_from_b():
    lau = lau_product(helpers.t(2), helpers.t(1), [1])
    helpers.assert_close(find_identity(lau).coeffs, helpers.unit_vector(4, 3))


def test_lau_product_rejects_non_character_theta():
    with helpers.assert_raises(CharacterNotVerified):
        lau_product(helpers.t(2), helpers.t(1), [2])
    with helpers.assert_raises(CharacterNotVerified):
        lau_product(helpers.t(2), helpers.t(1), [1, 0])


def test_lau_product_of_non_unital_operands():
    lau = helpers.lau_a_phi()
    assert lau.dim == 4
    assert find_identity(lau) is None


# ---------------------------------------------------------------------------
# Subspaces and quotients
# ---------------------------------------------------------------------------


def test_span_flags_ideals():
    t2 = helpers.t(2)
    radical = span(t2, [E12])
    assert radical.is_two_sided_ideal
    assert radical.dim == 1
    corner = span(t2, [E11])
    assert not corner.is_two_sided_ideal
    assert corner.closure_residual > 0.5
    with helpers.assert_raises(NotAnIdeal):
        span(t2, [E11], require_ideal=True)


def test_span_drops_dependent_vectors():
    subspace = span(helpers.t(2), [E12, 2 * E12, E12 + E22])
    assert subspace.dim == 2
    assert subspace.contains(E22)
    assert not subspace.contains(E11)


def test_closure_residuals_of_whole_algebra_vanish():
    t2 = helpers.t(2)
    left, right = closure_residuals(t2, np.eye(3, dtype=complex))
    assert left == 0.0 and right == 0.0


def test_quotient_by_radical():
    t2 = helpers.t(2)
    target, projection = quotient(t2, span(t2, [E12]))
    assert target.dim == 2
    assert is_surjective(projection)
    assert is_homomorphism(t2, target, projection) < 1e-12
    # T_2 modulo its radical is commutative
    assert np.allclose(target.table, np.transpose(target.table, (1, 0, 2)))


def test_quotient_requires_ideal():
    t2 = helpers.t(2)
    with helpers.assert_raises(NotAnIdeal):
        quotient(t2, span(t2, [E11]))
    with helpers.assert_raises(DimensionMismatch):
        quotient(t2, span(t2, np.eye(3)))


def test_subalgebra_of_ideal():
    algebra = helpers.t2_plus_c()
    ideal = span(algebra, [helpers.unit_vector(4, 3)], require_ideal=True)
    sub = subalgebra(algebra, ideal)
    assert sub.dim == 1
    # one-dimensional idempotent algebra, whatever the basis sign
    assert abs(abs(sub.table[0, 0, 0]) - 1.0) < 1e-12


def test_homomorphism_residual():
    t2 = helpers.t(2)
    doubled = LinearMap(2 * np.eye(3), 3, 3)
    assert is_homomorphism(t2, t2, doubled) > 1.0
    assert is_homomorphism(t2, t2, LinearMap.identity(3)) == 0.0


def test_direct_sum_projection_is_surjective_homomorphism():
    a, b = helpers.t(2), helpers.t(1)
    total = direct_sum(a, b)
    for first, target in ((True, a), (False, b)):
        projection = direct_sum_projection(a, b, first)
        assert is_surjective(projection)
        assert is_homomorphism(total, target, projection) == 0.0


# ---------------------------------------------------------------------------
# Identity search
# ---------------------------------------------------------------------------


def test_t2_identity():
    t2 = helpers.t(2)
    unit = find_identity(t2)
    assert unit is not None
    helpers.assert_close(unit.coeffs, E11 + E22)
    assert max(identity_defect(t2, unit)) < 1e-12


def test_a_phi_has_only_left_identity():
    algebra = helpers.a_phi(2)
    left = find_identity(algebra, "left")
    assert left is not None
    helpers.assert_close(left.coeffs, [1, 0])
    assert find_identity(algebra, "right") is None
    assert find_identity(algebra, "two_sided") is None


def test_zero_algebra_has_no_identity():
    assert find_identity(zero_algebra(2)) is None


def test_identity_on_summand():
    algebra = helpers.t2_plus_c()
    ideal = span(algebra, [helpers.unit_vector(4, 3)], require_ideal=True)
    unit = find_identity_on(algebra, ideal)
    assert unit is not None
    helpers.assert_close(unit.coeffs, helpers.unit_vector(4, 3))


def test_right_identity_on_kernels_of_t2():
    t2 = helpers.t(2)
    unit = find_right_identity_on(t2, span(t2, [E12, E22]))
    assert unit is not None
    helpers.assert_close(unit.coeffs, E22)
    assert find_right_identity_on(t2, span(t2, [E11, E12])) is None


def test_algebra_roundtrip_through_dict():
    t2 = helpers.t(2)
    again = Algebra.from_dict(t2.to_dict())
    assert again.dim == 3
    assert again.labels == t2.labels
    assert np.array_equal(again.table, t2.table)


# ---------------------------------------------------------------------------
# Test suite registration
# ---------------------------------------------------------------------------

SUITE_LABEL = "🧮 Algebra Core Tests"
TEST_SUITE = [
    ("T_2 products", test_t2_products),
    ("T_n dimensions", test_upper_triangular_dimensions),
    ("bilinear product", test_bilinear_product),
    ("non-associative table rejected", test_non_associative_table_rejected),
    ("table shape checked", test_table_shape_checked),
    ("A_phi product", test_a_phi_product),
    ("A_phi zero functional rejected", test_a_phi_zero_functional_rejected),
    ("Cayley table validation", test_group_algebra_checks_cayley_table),
    ("cyclic group algebra commutative", test_cyclic_group_algebra_is_commutative),
    ("S_3 algebra non-commutative", test_symmetric_group_algebra_is_not_commutative),
    ("direct sum componentwise", test_direct_sum_is_componentwise),
    ("unitization unit last", test_unitization_appends_unit_last),
    ("Lau product unit", test_lau_product_unit_comes_from_b),
    ("Lau product theta check", test_lau_product_rejects_non_character_theta),
    ("Lau product non-unital", test_lau_product_of_non_unital_operands),
    ("span ideal flag", test_span_flags_ideals),
    ("span drops dependent vectors", test_span_drops_dependent_vectors),
    ("closure residuals of A", test_closure_residuals_of_whole_algebra_vanish),
    ("quotient by radical", test_quotient_by_radical),
    ("quotient requires ideal", test_quotient_requires_ideal),
    ("subalgebra of ideal", test_subalgebra_of_ideal),
    ("homomorphism residual", test_homomorphism_residual),
    ("direct sum projections", test_direct_sum_projection_is_surjective_homomorphism),
    ("T_2 identity", test_t2_identity),
    ("A_phi left identity only", test_a_phi_has_only_left_identity),
    ("zero algebra no identity", test_zero_algebra_has_no_identity),
    ("right identity on kernels", test_right_identity_on_kernels_of_t2),
    ("identity on summand", test_identity_on_summand),
    ("algebra dict roundtrip", test_algebra_roundtrip_through_dict),
]
