"""Group actions, isotypic gradings, and deformed products."""

import numpy as np
import pytest

from natorus import (
    Cochain3,
    GAction,
    GradedElement,
    GradingError,
    associator_table,
    deformed_norm,
    deformed_product,
    full_matrix_algebra,
    functions_algebra,
    grading_check,
    isotypic_projection,
    make_group,
    octonion_associator_tricharacter,
    pairing,
    phi_zero_intertwiner,
    represent,
)
from natorus.presets import m4_conjugation_action, translation_action


@pytest.fixture(scope="module")
def trans4():
    return translation_action(make_group([4]))


@pytest.fixture(scope="module")
def conj4():
    return m4_conjugation_action()


def test_algebra_membership():
    funcs = functions_algebra(3)
    assert funcs.member_defect(np.diag([1.0, 2.0, 3.0])) == 0.0
    assert funcs.member_defect(np.ones((3, 3))) > 0.1
    full = full_matrix_algebra(3)
    assert full.member_defect(np.ones((3, 3))) == 0.0
    assert np.array_equal(funcs.identity, np.eye(3))


def test_bundled_actions_validate(trans4, conj4):
    trans4.validate()
    conj4.validate()
    assert grading_check(trans4).passed
    assert grading_check(conj4).passed


def test_translation_action_permutes_points(trans4):
    g = trans4.group
    f = np.diag([1.0, 2.0, 3.0, 4.0])
    moved = trans4.apply(g.elements[1], f)
    assert np.allclose(np.diag(moved), np.roll(np.diag(f), 1)) or np.allclose(
        np.diag(moved), np.roll(np.diag(f), -1)
    )
    assert np.allclose(trans4.apply(g.identity, f), f)


def test_action_is_homomorphism(trans4, conj4, rng):
    for action in (trans4, conj4):
        g = action.group
        m = action.algebra.random_element(rng)
        for _ in range(10):
            s, t = (g.elements[i] for i in rng.choice(g.order, size=2))
            lhs = action.apply(s, action.apply(t, m))
            assert np.allclose(lhs, action.apply(s + t, m), atol=1e-12)


def test_non_homomorphic_action_fails_grading(conj4):
    w = conj4.unitaries.copy()
    w[[2, 3]] = w[[3, 2]]
    broken = GAction(conj4.group, conj4.algebra, w)
    report = grading_check(broken)
    assert not report.passed
    assert report.witness is not None
    with pytest.raises(GradingError):
        broken.validate()


def test_isotypic_projections_resolve_identity(trans4, conj4, rng):
    for action in (trans4, conj4):
        m = action.algebra.random_element(rng)
        parts = [isotypic_projection(action, m, chi) for chi in action.group.dual.elements]
        assert np.allclose(sum(parts), m, atol=1e-12)


def test_isotypic_projections_are_idempotent_and_orthogonal(trans4, rng):
    m = trans4.algebra.random_element(rng)
    gh = trans4.group.dual
    for chi in gh.elements:
        p = isotypic_projection(trans4, m, chi)
        assert np.allclose(isotypic_projection(trans4, p, chi), p, atol=1e-12)
        for eta in gh.elements:
            if eta != chi:
                assert np.allclose(isotypic_projection(trans4, p, eta), 0.0, atol=1e-12)


def test_homogeneous_elements_are_action_eigenvectors(conj4, rng):
    g = conj4.group
    for chi in g.dual.elements:
        h = conj4.random_homogeneous(chi, rng)
        for t in g.elements:
            expected = pairing(chi, t).to_complex() * h
            assert np.allclose(conj4.apply(t, h), expected, atol=1e-12)


def test_graded_element_roundtrip(trans4, rng):
    m = trans4.algebra.random_element(rng)
    a = GradedElement.from_matrix(trans4, m)
    assert np.allclose(a.underlying_matrix(), m, atol=1e-12)
    a.validate_grading()


def test_from_blocks_rejects_non_homogeneous(conj4, rng):
    m = conj4.algebra.random_element(rng)
    chi = conj4.group.dual.elements[1]
    with pytest.raises(GradingError):
        GradedElement.from_blocks(conj4, {chi: m})


def test_from_blocks_rejects_bad_shape(conj4):
    chi = conj4.group.dual.elements[0]
    with pytest.raises(GradingError):
        GradedElement.from_blocks(conj4, {chi: np.eye(3)})


def test_intertwiner_multiplicative_at_zero_phi(trans4, conj4, rng):
    for action in (trans4, conj4):
        zero = Cochain3.zero(action.group.dual)
        for _ in range(20):
            a = GradedElement.from_matrix(action, action.algebra.random_element(rng))
            b = GradedElement.from_matrix(action, action.algebra.random_element(rng))
            lhs = phi_zero_intertwiner(deformed_product(a, b, zero))
            rhs = phi_zero_intertwiner(a) @ phi_zero_intertwiner(b)
            assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_zero_phi_product_recovers_matrix_product(trans4, rng):
    zero = Cochain3.zero(trans4.group.dual)
    m1 = trans4.algebra.random_element(rng)
    m2 = trans4.algebra.random_element(rng)
    a = GradedElement.from_matrix(trans4, m1)
    b = GradedElement.from_matrix(trans4, m2)
    prod = deformed_product(a, b, zero)
    assert np.allclose(prod.underlying_matrix(), m1 @ m2, atol=1e-10)


def test_deformed_product_is_bilinear(trans4, rng):
    phi = octonion_associator_tricharacter()
    action = translation_action(make_group([2, 2, 2]))
    a = GradedElement.from_matrix(action, action.algebra.random_element(rng))
    b = GradedElement.from_matrix(action, action.algebra.random_element(rng))
    c = GradedElement.from_matrix(action, action.algebra.random_element(rng))
    lhs = deformed_product(a + 2.0 * b, c, phi)
    rhs = deformed_product(a, c, phi) + 2.0 * deformed_product(b, c, phi)
    assert lhs.isclose(rhs, tol=1e-10)


def test_associator_table_zero_phi_is_flat(trans4):
    zero = Cochain3.zero(trans4.group.dual)
    report = associator_table(trans4, zero)
    assert report.passed
    assert report.max_error < 1e-10


def test_associator_table_octonion_phi():
    action = translation_action(make_group([2, 2, 2]))
    phi = octonion_associator_tricharacter()
    report = associator_table(action, phi)
    assert report.passed
    assert len(report.entries) == 512
    assert report.max_error < 1e-10


def test_represent_identity_has_unit_norm(trans4):
    a = GradedElement.from_matrix(trans4, trans4.algebra.identity)
    zero = Cochain3.zero(trans4.group.dual)
    assert abs(deformed_norm(a, zero) - 1.0) < 1e-12
    op = represent(a, zero)
    assert op.shape[0] == op.shape[1]


def test_deformed_norm_is_a_norm(trans4, rng):
    phi = Cochain3.zero(trans4.group.dual)
    a = GradedElement.from_matrix(trans4, trans4.algebra.random_element(rng))
    b = GradedElement.from_matrix(trans4, trans4.algebra.random_element(rng))
    na, nb = deformed_norm(a, phi), deformed_norm(b, phi)
    assert deformed_norm(a + b, phi) <= na + nb + 1e-10
    assert abs(deformed_norm(2.0 * a, phi) - 2.0 * na) < 1e-10
