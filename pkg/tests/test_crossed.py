"""Twisted crossed products, strictification, and the duality transform."""

import numpy as np
import pytest

from natorus import (
    Cochain2,
    Cochain3,
    CrossedElement,
    StrictifiedElement,
    TwistData,
    TwistDataError,
    coboundary2,
    double_dual_action,
    dual_action,
    evaluation_side_product,
    fourier_side_product,
    lbs_involution,
    lbs_product,
    make_group,
    octonion_group,
    octonion_sigma,
    strictified_product,
    takai_inverse,
    takai_transform,
    tricharacter_from_tensor,
    verify_duality,
)
from natorus.presets import pauli_m2_twist, shift_bicharacter, z4_scalar_twist


@pytest.fixture(scope="module")
def tw_m2():
    return pauli_m2_twist()


@pytest.fixture(scope="module")
def tw_shift():
    g = octonion_group()
    return TwistData.scalar_from_sigma(g, shift_bicharacter(g))


def test_bundled_twists_validate(tw_m2):
    tw_m2.validate()
    z4_scalar_twist().validate()
    TwistData.trivial(make_group([4]), dim=3).validate()


def test_scalar_twist_phi_is_sigma_coboundary():
    g = octonion_group()
    tw = TwistData.scalar_from_sigma(g, octonion_sigma())
    assert tw.phi == coboundary2(octonion_sigma())
    assert tw.is_scalar()


def test_bicharacter_twist_is_untwisted_up_to_phi(tw_shift):
    # Bicharacters are 2-cocycles, so the associator class vanishes.
    assert tw_shift.phi.is_zero()


def test_corrupted_multiplier_rejected(tw_m2):
    u = tw_m2.u.copy()
    u[1, 2] = 1j * u[1, 2]
    with pytest.raises(TwistDataError):
        TwistData(tw_m2.group, dim=tw_m2.dim, beta=tw_m2.beta, u=u, phi=tw_m2.phi)


def test_crossed_unit_is_identity(tw_m2, rng):
    one = CrossedElement.unit(tw_m2)
    a = CrossedElement.random(tw_m2, rng)
    assert lbs_product(one, a).isclose(a, tol=1e-12)
    assert lbs_product(a, one).isclose(a, tol=1e-12)


def test_involution_is_involutive(tw_m2, rng):
    a = CrossedElement.random(tw_m2, rng)
    assert lbs_involution(lbs_involution(a)).isclose(a, tol=1e-12)


def test_involution_antimultiplicative_on_associative_twist(tw_shift, rng):
    for _ in range(10):
        a = CrossedElement.random(tw_shift, rng)
        b = CrossedElement.random(tw_shift, rng)
        lhs = lbs_involution(lbs_product(a, b))
        rhs = lbs_product(lbs_involution(b), lbs_involution(a))
        assert lhs.isclose(rhs, tol=1e-12)


def test_dual_action_is_multiplicative_automorphism(tw_m2, rng):
    g = tw_m2.group
    for _ in range(10):
        xi = g.dual.elements[rng.integers(g.order)]
        a = CrossedElement.random(tw_m2, rng)
        b = CrossedElement.random(tw_m2, rng)
        lhs = dual_action(xi, lbs_product(a, b))
        rhs = lbs_product(dual_action(xi, a), dual_action(xi, b))
        assert lhs.isclose(rhs, tol=1e-12)
    assert dual_action(g.dual.identity, a).isclose(a, tol=0)


def test_dual_action_composes(tw_m2, rng):
    g = tw_m2.group
    a = CrossedElement.random(tw_m2, rng)
    xi, eta = g.dual.elements[3], g.dual.elements[5]
    lhs = dual_action(xi, dual_action(eta, a))
    assert lhs.isclose(dual_action(xi + eta, a), tol=1e-12)


def test_strictified_product_restricts_to_lbs(tw_m2, rng):
    # Constant-in-x elements with weight psi = -phi multiply like the
    # underlying twisted crossed product.
    g = tw_m2.group
    n, d = g.order, tw_m2.dim
    psi = -tw_m2.phi
    a = CrossedElement.random(tw_m2, rng)
    b = CrossedElement.random(tw_m2, rng)
    lift = lambda c: StrictifiedElement(
        tw_m2, np.broadcast_to(c.values[:, None], (n, n, d, d)).copy()
    )
    big = strictified_product(lift(a), lift(b), psi)
    small = lbs_product(a, b)
    for x in range(n):
        assert np.allclose(big.values[:, x], small.values, atol=1e-12)


@pytest.mark.parametrize("make_tw", [pauli_m2_twist, z4_scalar_twist])
def test_takai_transform_roundtrip(make_tw, rng):
    tw = make_tw()
    psi = Cochain3.zero(tw.group)
    a = StrictifiedElement.random(tw, rng)
    assert takai_inverse(takai_transform(a, psi), tw).isclose(a, tol=1e-12)
    k = takai_transform(StrictifiedElement.random(tw, rng), psi)
    assert takai_transform(takai_inverse(k, tw), psi).isclose(k, tol=1e-12)


@pytest.mark.parametrize("make_tw", [pauli_m2_twist, z4_scalar_twist])
def test_duality_zero_and_opposite_regimes(make_tw):
    tw = make_tw()
    for psi in (Cochain3.zero(tw.group), -tw.phi):
        report = verify_duality(tw, psi, trials=30, seed=11)
        assert report.passed, report.as_dict()
        assert report.max_error < 1e-10


def test_duality_generic_alternating_regime():
    tw = z4_scalar_twist()
    psi = tricharacter_from_tensor(tw.group, _epsilon(), modulus=4)
    assert psi != tw.phi and psi != -tw.phi and not psi.is_zero()
    report = verify_duality(tw, psi, trials=30, seed=11)
    assert report.passed
    assert report.max_error < 1e-10


def test_duality_fails_for_non_alternating_psi(tw_m2):
    # The transform intertwines products only for alternating tricharacters;
    # a plain one-slot tensor breaks the identity by a visible margin.
    tensor = np.zeros((3, 3, 3), dtype=np.int64)
    tensor[0, 1, 2] = 1
    psi = tricharacter_from_tensor(tw_m2.group, tensor, modulus=2)
    report = verify_duality(tw_m2, psi, trials=20, seed=3)
    assert not report.passed
    assert report.max_error > 1e-3
    assert report.witness is not None


def test_duality_fails_without_multiplier(tw_m2):
    report = verify_duality(
        tw_m2, Cochain3.zero(tw_m2.group), trials=20, seed=3, include_multiplier=False
    )
    assert not report.passed
    assert report.max_error > 1e-3


def test_double_dual_identity_and_composition(rng):
    g = octonion_group()
    tw = pauli_m2_twist()
    psi = Cochain3.zero(g)
    k = takai_transform(StrictifiedElement.random(tw, rng), psi)
    assert double_dual_action(g.identity, k).isclose(k, tol=0)
    for _ in range(10):
        v, w = (g.elements[i] for i in rng.choice(g.order, size=2))
        lhs = double_dual_action(v, double_dual_action(w, k))
        assert lhs.isclose(double_dual_action(v + w, k), tol=1e-12)


def test_double_dual_with_conjugators(rng):
    g = octonion_group()
    tw = pauli_m2_twist()
    k = takai_transform(StrictifiedElement.random(tw, rng), Cochain3.zero(g))
    v, w = g.elements[3], g.elements[5]
    lhs = double_dual_action(v, double_dual_action(w, k, alpha=tw.beta), alpha=tw.beta)
    rhs = double_dual_action(v + w, k, alpha=tw.beta)
    assert lhs.isclose(rhs, tol=1e-12)


@pytest.mark.parametrize("dim", [1, 2])
def test_evaluation_equals_fourier_side(dim, rng):
    g = make_group([4])
    n = g.order
    shape = (n, n) if dim == 1 else (n, n, dim, dim)
    for _ in range(10):
        a = rng.normal(size=shape) + 1j * rng.normal(size=shape)
        b = rng.normal(size=shape) + 1j * rng.normal(size=shape)
        lhs = evaluation_side_product(g, a, b)
        rhs = fourier_side_product(g, a, b)
        assert np.max(np.abs(lhs - rhs)) < 1e-10


def _epsilon():
    eps = np.zeros((3, 3, 3), dtype=np.int64)
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[i, j, k] = 1
        eps[i, k, j] = -1
    return eps
