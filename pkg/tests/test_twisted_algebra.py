"""Twisted group algebras and the octonion presentation."""

import itertools

import numpy as np
import pytest

from natorus import (
    Cochain2,
    IncompatibleGroupsError,
    TwistedGroupAlgebra,
    cross_form,
    make_group,
    octonion_algebra,
    octonion_exponent,
    octonion_group,
    octonion_sigma,
)
from natorus.presets import shift_bicharacter


def sign_exponent_reference(a, b):
    """Independent restatement of the octonion sign exponent."""
    total = 0
    for i in range(3):
        for j in range(i, 3):
            total += a[i] * b[j]
    total += a[0] * a[1] * b[2] + a[2] * a[0] * b[1] + a[1] * a[2] * b[0]
    return total % 2


def test_octonion_exponent_matches_reference():
    g = octonion_group()
    for a, b in itertools.product(g.elements, repeat=2):
        assert octonion_exponent(a, b) == sign_exponent_reference(a.coords, b.coords)


def test_octonion_basis_products_are_signed_basis_elements():
    alg = octonion_algebra()
    g = alg.group
    for a, b in itertools.product(g.elements, repeat=2):
        prod = alg.multiply(alg.basis_element(a), alg.basis_element(b))
        sign = -1.0 if sign_exponent_reference(a.coords, b.coords) else 1.0
        expected = np.zeros(8)
        expected[(a + b).index] = sign
        assert np.array_equal(prod.coeffs, expected)


def test_unit_is_two_sided_identity(rng):
    alg = octonion_algebra()
    x = alg.random_element(rng)
    assert (alg.unit * x).isclose(x, tol=0)
    assert (x * alg.unit).isclose(x, tol=0)


def test_octonions_not_associative_but_shift_twist_is():
    assert not octonion_algebra().is_associative()
    g = octonion_group()
    assert TwistedGroupAlgebra(g, shift_bicharacter(g)).is_associative()
    assert TwistedGroupAlgebra(g, Cochain2.zero(g)).is_associative()


def test_octonion_algebra_is_real():
    assert octonion_algebra().is_real()


def test_star_is_involutive(rng):
    alg = octonion_algebra()
    x = alg.random_element(rng)
    assert x.star().star().isclose(x, tol=0)


def test_star_antimultiplicative_in_associative_twist(rng):
    g = octonion_group()
    alg = TwistedGroupAlgebra(g, shift_bicharacter(g))
    for _ in range(20):
        x, y = alg.random_element(rng), alg.random_element(rng)
        assert ((x * y).star()).isclose(y.star() * x.star(), tol=1e-12)


def test_octonion_conjugation_recovers_norm(rng):
    # x x* = |x|^2 e0 for real coefficient vectors.
    alg = octonion_algebra()
    for _ in range(20):
        x = alg.random_element(rng, real=True)
        prod = x * x.star()
        expected = np.zeros(8)
        expected[0] = np.sum(x.coeffs.real**2)
        assert np.allclose(prod.coeffs, expected, atol=1e-12)


def test_octonion_norm_multiplicativity(rng):
    alg = octonion_algebra()
    for _ in range(200):
        x = alg.random_element(rng, real=True)
        y = alg.random_element(rng, real=True)
        lhs = (x * y).norm()
        rhs = x.norm() * y.norm()
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, rhs)


def test_left_regular_matrix_is_scaled_isometry(rng):
    # Norm multiplicativity forces L_x^T L_x = |x|^2 I over the reals.
    alg = octonion_algebra()
    x = alg.random_element(rng, real=True)
    L = alg.left_regular_matrix(x).real
    assert np.allclose(L.T @ L, (x.norm() ** 2) * np.eye(8), atol=1e-12)
    assert abs(x.operator_norm() - x.norm()) < 1e-12


def test_operator_norm_of_unit():
    alg = octonion_algebra()
    assert abs(alg.unit.operator_norm() - 1.0) < 1e-14


def test_associator_phase_equals_cross_form():
    alg = octonion_algebra()
    g = alg.group
    for a, b, c in itertools.product(g.elements, repeat=3):
        assert alg.associator_phase(a, b, c) == cross_form(a, b, c)


def test_associator_phase_vanishes_on_associative_twist():
    g = octonion_group()
    alg = TwistedGroupAlgebra(g, shift_bicharacter(g))
    for a, b, c in itertools.product(g.elements[:4], repeat=3):
        assert alg.associator_phase(a, b, c).is_zero()


def test_sigma_must_match_group():
    with pytest.raises(IncompatibleGroupsError):
        TwistedGroupAlgebra(make_group([4]), octonion_sigma())


def test_elements_from_different_algebras_do_not_mix(rng):
    g = octonion_group()
    a1 = octonion_algebra()
    a2 = TwistedGroupAlgebra(g, Cochain2.zero(g))
    with pytest.raises(IncompatibleGroupsError):
        a1.random_element(rng) * a2.random_element(rng)


def test_element_vector_space_ops(rng):
    alg = octonion_algebra()
    x, y = alg.random_element(rng), alg.random_element(rng)
    assert np.allclose((x + y).coeffs, x.coeffs + y.coeffs)
    assert np.allclose((x - y).coeffs, x.coeffs - y.coeffs)
    assert np.allclose((2.5 * x).coeffs, 2.5 * x.coeffs)
    assert np.allclose((-x).coeffs, -x.coeffs)
