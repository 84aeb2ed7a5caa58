"""Cochain tables, coboundaries, tricharacters, and phi-multipliers."""

import itertools

import numpy as np
import pytest

from natorus import (
    Cochain2,
    Cochain3,
    CochainError,
    HALF_PHASE,
    IncompatibleGroupsError,
    Phase,
    TensorShapeError,
    ZERO_PHASE,
    check_multiplier_relation,
    coboundary2,
    coboundary3,
    cocycle3_witness,
    is_cocycle2,
    is_cocycle3,
    is_trivial_on,
    make_group,
    multiplier_from_phi,
    octonion_associator_tricharacter,
    octonion_sigma,
    restrict,
    tricharacter_from_tensor,
    trivializing_cochain,
)
from natorus.presets import epsilon_tricharacter_z4, octonion_trivializing_generators


def random_cochain2(group, rng, den=8):
    table = rng.integers(0, den, size=(group.order, group.order))
    table[0, :] = 0
    table[:, 0] = 0
    return Cochain2(group, table, den)


def coboundary2_reference(sigma):
    """Slow, index-free restatement of the coboundary used as an oracle."""
    g = sigma.group
    out = {}
    for a, b, c in itertools.product(g.elements, repeat=3):
        out[(a, b, c)] = (
            sigma.value(b, c) - sigma.value(a + b, c) + sigma.value(a, b + c) - sigma.value(a, b)
        )
    return out


def test_normalization_enforced():
    g = make_group([2, 2])
    table = np.ones((4, 4), dtype=np.int64)
    with pytest.raises(CochainError):
        Cochain2(g, table, 2)


def test_tables_are_read_only():
    sigma = octonion_sigma()
    with pytest.raises(ValueError):
        sigma.table[1, 1] = 1


def test_from_entries_sparse_lookup():
    g = make_group([2, 2])
    sigma = Cochain2.from_entries(g, {((1, 0), (0, 1)): HALF_PHASE})
    assert sigma.value((1, 0), (0, 1)) == HALF_PHASE
    assert sigma.value((0, 1), (1, 0)) == ZERO_PHASE
    assert sigma((1, 0), (0, 1)) == HALF_PHASE


def test_arithmetic_coerces_denominators():
    g = make_group([2])
    a = Cochain2.from_entries(g, {((1,), (1,)): HALF_PHASE})
    b = Cochain2.from_entries(g, {((1,), (1,)): Phase(1, 4)})
    assert (a + b).value((1,), (1,)) == Phase(3, 4)
    assert (a - b).value((1,), (1,)) == Phase(1, 4)
    assert (-b).value((1,), (1,)) == Phase(3, 4)
    assert a - a == Cochain2.zero(g)


@pytest.mark.parametrize("factors", [[4], [2, 2]])
def test_coboundary2_matches_reference(factors, rng):
    g = make_group(factors)
    sigma = random_cochain2(g, rng)
    phi = coboundary2(sigma)
    for (a, b, c), expected in coboundary2_reference(sigma).items():
        assert phi.value(a, b, c) == expected


def test_coboundary_squares_to_zero(rng):
    for factors in ([2, 2, 2], [4], [3, 3]):
        g = make_group(factors)
        for _ in range(5):
            sigma = random_cochain2(g, rng)
            assert coboundary3(coboundary2(sigma)).is_zero()


def test_octonion_sigma_trivializes_octonion_phi():
    assert coboundary2(octonion_sigma()) == octonion_associator_tricharacter()


def test_bundled_tricharacters_are_cocycles():
    for phi in (octonion_associator_tricharacter(), epsilon_tricharacter_z4()):
        assert is_cocycle3(phi)
        assert cocycle3_witness(phi) is None
        assert phi.is_alternating()


def test_corrupted_cocycle_has_witness():
    phi = octonion_associator_tricharacter()
    table = phi.table.copy()
    table[1, 2, 3] = (table[1, 2, 3] + 1) % phi.den
    bad = Cochain3(phi.group, table, phi.den)
    assert not is_cocycle3(bad)
    witness = cocycle3_witness(bad)
    assert witness is not None and len(witness) == 4


def test_tricharacter_is_multilinear(rng):
    for phi in (octonion_associator_tricharacter(), epsilon_tricharacter_z4()):
        g = phi.group
        for _ in range(25):
            a, a2, b, c = (g.elements[i] for i in rng.choice(g.order, size=4))
            assert phi.value(a + a2, b, c) == phi.value(a, b, c) + phi.value(a2, b, c)
            assert phi.value(a, b + a2, c) == phi.value(a, b, c) + phi.value(a, a2, c)
            assert phi.value(a, b, c + a2) == phi.value(a, b, c) + phi.value(a, b, a2)


def test_ill_defined_tensor_rejected():
    g = make_group([2, 2, 2])
    tensor = np.zeros((3, 3, 3), dtype=np.int64)
    tensor[0, 1, 2] = 1
    # 2 * 1 != 0 mod 4, so the formula is not constant on residue classes.
    with pytest.raises(TensorShapeError):
        tricharacter_from_tensor(g, tensor, modulus=4)


def test_non_alternating_tensor_detected():
    g = make_group([2, 2, 2])
    tensor = np.zeros((3, 3, 3), dtype=np.int64)
    tensor[0, 1, 2] = 1
    phi = tricharacter_from_tensor(g, tensor, modulus=2)
    assert is_cocycle3(phi)
    assert not phi.is_alternating()


def test_multiplier_relation_for_bundled_tricharacters():
    assert check_multiplier_relation(octonion_associator_tricharacter()) is None
    assert check_multiplier_relation(epsilon_tricharacter_z4()) is None


def test_multiplier_diagonal_values():
    phi = octonion_associator_tricharacter()
    u = multiplier_from_phi(phi)
    g = phi.group
    beta, gamma = g.elements[3], g.elements[5]
    diag = u.diagonal(beta, gamma)
    assert np.array_equal(u(beta, gamma), np.diag(diag))
    for x in g.elements:
        assert diag[x.index] == phi.value(x, beta, gamma).to_complex()
    assert u.phases(beta, gamma) == [phi.value(x, beta, gamma) for x in g.elements]


def test_multiplier_rejects_non_cocycle():
    phi = octonion_associator_tricharacter()
    table = phi.table.copy()
    table[1, 2, 3] = (table[1, 2, 3] + 1) % phi.den
    with pytest.raises(CochainError):
        multiplier_from_phi(Cochain3(phi.group, table, phi.den))


def test_restrict_covers_subgroup_cube():
    phi = octonion_associator_tricharacter()
    table = restrict(phi, [(1, 0, 0), (0, 1, 0)])
    assert len(table) == 4**3
    for (a, b, c), value in table.items():
        assert value == phi.value(a, b, c)


def test_octonion_phi_trivial_on_quaternion_subgroup():
    phi = octonion_associator_tricharacter()
    assert is_trivial_on(phi, octonion_trivializing_generators())
    assert not is_trivial_on(phi, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def test_trivializing_cochain_of_zero():
    g = make_group([2, 2])
    assert trivializing_cochain(Cochain3.zero(g)) == Cochain2.zero(g)


def test_trivializing_cochain_solves_coboundary_equation():
    phi = octonion_associator_tricharacter()
    tau = trivializing_cochain(phi)
    assert coboundary2(tau) == phi
    assert is_cocycle2(tau) is False  # a cocycle would have zero coboundary


def test_trivializing_cochain_refuses_nontrivial_class():
    with pytest.raises(CochainError):
        trivializing_cochain(epsilon_tricharacter_z4())


def test_complex_table_exact_for_half_turns():
    sigma = octonion_sigma()
    w = sigma.complex_table
    assert np.all(w.imag == 0.0)
    assert set(np.unique(w.real)) == {-1.0, 1.0}


def test_complex_table_generic_denominator(rng):
    g = make_group([3])
    sigma = random_cochain2(g, rng, den=8)
    w = sigma.complex_table
    assert np.allclose(w, np.exp(2j * np.pi * sigma.table / 8), atol=1e-15)


def test_group_mismatch_raises():
    a = Cochain2.zero(make_group([2]))
    b = Cochain2.zero(make_group([4]))
    with pytest.raises(IncompatibleGroupsError):
        a + b
