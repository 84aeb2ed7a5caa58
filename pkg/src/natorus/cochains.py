"""Normalized group cochains with exact rational values.

Tables are stored as integer numerators over a single common denominator, so
coboundaries and cocycle identities are evaluated in exact integer arithmetic
(vectorized with numpy). Values come in and out as `Phase` objects.

A k-cochain here is always normalized: it vanishes whenever any argument is
the identity. Tricharacters (multilinear phase forms built from an integer
3-tensor mod m) are the cocycles of interest for the twisted-kernel and
crossed-product machinery; a general cocycle need not be one, and operations
that require antisymmetry check for it rather than assume it.
"""

from __future__ import annotations

from functools import cached_property
from math import gcd, lcm
from typing import Callable, Mapping

import numpy as np

from .errors import (
    CochainError,
    IncompatibleGroupsError,
    NotACocycleError,
    TensorShapeError,
)
from .groups import FiniteAbelianGroup, GroupElement, subgroup_elements
from .phases import Phase


class CochainTable:
    """A normalized k-cochain as an integer table over a common denominator."""

    def __init__(self, group: FiniteAbelianGroup, arity: int, table: np.ndarray, den: int):
        n = group.order
        table = np.asarray(table, dtype=np.int64) % den
        if table.shape != (n,) * arity:
            raise CochainError(
                f"table shape {table.shape} does not match arity {arity} over order {n}"
            )
        if den < 1:
            raise CochainError(f"denominator must be positive, got {den}")
        for axis in range(arity):
            sl = [slice(None)] * arity
            sl[axis] = 0
            if table[tuple(sl)].any():
                raise CochainError(
                    f"cochain is not normalized: nonzero value with identity in slot {axis}"
                )
        table.setflags(write=False)
        self.group = group
        self.arity = arity
        self.table = table
        self.den = int(den)

    # ------------------------------------------------------------ access

    def value(self, *args) -> Phase:
        if len(args) != self.arity:
            raise CochainError(f"expected {self.arity} arguments, got {len(args)}")
        idx = tuple(self.group.element(a).index for a in args)
        return Phase(int(self.table[idx]), self.den)

    def __call__(self, *args) -> Phase:
        return self.value(*args)

    @cached_property
    def complex_table(self) -> np.ndarray:
        """exp(2 pi i table / den), the numerical weight tensor.

        Quarter-turn denominators give exact +-1 and +-i entries, so sign
        tables like the octonion structure constants carry no roundoff.
        """
        if self.den in (1, 2, 4):
            quarters = np.array([1.0, 1.0j, -1.0, -1.0j])
            w = quarters[(self.table * (4 // self.den)) % 4]
        else:
            w = np.exp(2j * np.pi * self.table / self.den)
        w.setflags(write=False)
        return w

    def is_zero(self) -> bool:
        return not self.table.any()

    # --------------------------------------------------------- arithmetic

    def _coerced(self, other: "CochainTable") -> tuple[np.ndarray, np.ndarray, int]:
        if not isinstance(other, CochainTable) or other.arity != self.arity:
            raise CochainError("can only combine cochains of equal arity")
        self.group._require_same(other.group)
        d = lcm(self.den, other.den)
        return self.table * (d // self.den), other.table * (d // other.den), d

    def __add__(self, other: "CochainTable") -> "CochainTable":
        a, b, d = self._coerced(other)
        return type(self)._from_table(self.group, self.arity, (a + b) % d, d)

    def __sub__(self, other: "CochainTable") -> "CochainTable":
        a, b, d = self._coerced(other)
        return type(self)._from_table(self.group, self.arity, (a - b) % d, d)

    def __neg__(self) -> "CochainTable":
        return type(self)._from_table(self.group, self.arity, (-self.table) % self.den, self.den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CochainTable):
            return NotImplemented
        if self.arity != other.arity or self.group.factors != other.group.factors:
            return False
        a, b, _ = self._coerced(other)
        return bool((a == b).all())

    __hash__ = None  # unhashable; tables are compared by content

    @classmethod
    def _from_table(cls, group, arity, table, den):
        # Reduce the common denominator when possible to keep tables tidy.
        g = gcd(int(np.gcd.reduce(table.ravel() % den)) if table.any() else den, den)
        if g > 1:
            table = table // g
            den = den // g
        if arity == 3 and issubclass(cls, Cochain3):
            return Cochain3(group, table, den)
        if arity == 2 and issubclass(cls, Cochain2):
            return Cochain2(group, table, den)
        return CochainTable(group, arity, table, den)

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(group={self.group.factors}, den={self.den}, "
            f"nonzero={int(np.count_nonzero(self.table))})"
        )


class Cochain2(CochainTable):
    """A normalized 2-cochain on G with values in Q/Z."""

    def __init__(self, group: FiniteAbelianGroup, table, den: int):
        super().__init__(group, 2, table, den)

    @classmethod
    def from_function(cls, group: FiniteAbelianGroup, fn: Callable) -> "Cochain2":
        return cls(*_tabulate(group, 2, fn))

    @classmethod
    def from_entries(cls, group: FiniteAbelianGroup, entries: Mapping) -> "Cochain2":
        return cls(*_from_entries(group, 2, entries))

    @classmethod
    def zero(cls, group: FiniteAbelianGroup) -> "Cochain2":
        return cls(group, np.zeros((group.order,) * 2, dtype=np.int64), 1)


class Cochain3(CochainTable):
    """A normalized 3-cochain on G with values in Q/Z."""

    def __init__(self, group: FiniteAbelianGroup, table, den: int):
        super().__init__(group, 3, table, den)

    @classmethod
    def from_function(cls, group: FiniteAbelianGroup, fn: Callable) -> "Cochain3":
        return cls(*_tabulate(group, 3, fn))

    @classmethod
    def from_entries(cls, group: FiniteAbelianGroup, entries: Mapping) -> "Cochain3":
        return cls(*_from_entries(group, 3, entries))

    @classmethod
    def zero(cls, group: FiniteAbelianGroup) -> "Cochain3":
        return cls(group, np.zeros((group.order,) * 3, dtype=np.int64), 1)

    def is_alternating(self) -> bool:
        """True when the value dies on any repeated argument."""
        n = self.group.order
        r = np.arange(n)
        t = self.table
        return not (t[r, r, :].any() or t[r, :, r].any() or t[:, r, r].any())


def _tabulate(group, arity, fn):
    elems = group.elements
    n = group.order
    values = np.empty((n,) * arity, dtype=object)
    den = 1
    for idx in np.ndindex(*values.shape):
        p = Phase(fn(*(elems[i] for i in idx)))
        values[idx] = p
        den = lcm(den, p.denominator)
    table = np.empty(values.shape, dtype=np.int64)
    for idx in np.ndindex(*values.shape):
        p = values[idx]
        table[idx] = p.numerator * (den // p.denominator)
    return group, table, den


def _from_entries(group, arity, entries):
    n = group.order
    den = 1
    parsed = []
    for args, value in entries.items() if isinstance(entries, Mapping) else entries:
        idx = tuple(group.element(a).index for a in args)
        if len(idx) != arity:
            raise CochainError(f"entry {args} has wrong arity, expected {arity}")
        p = Phase.parse(value)
        parsed.append((idx, p))
        den = lcm(den, p.denominator)
    table = np.zeros((n,) * arity, dtype=np.int64)
    for idx, p in parsed:
        table[idx] = p.numerator * (den // p.denominator)
    return group, table, den


class Tricharacter(Cochain3):
    """phi(a,b,c) = (1/m) sum_ijk M[i,j,k] a_i b_j c_k, multilinear in each slot.

    The tensor must be compatible with the factors: m | M[i,j,k] * n  for the
    factor n attached to each slot index, otherwise the form does not descend
    to the group and multilinearity breaks under coordinate reduction.
    """

    def __init__(self, group: FiniteAbelianGroup, tensor, modulus: int | None = None):
        tensor = np.asarray(tensor, dtype=np.int64)
        k = group.rank
        if tensor.shape != (k, k, k):
            raise TensorShapeError(
                f"tensor shape {tensor.shape} does not match group rank {k}"
            )
        m = group.exponent if modulus is None else int(modulus)
        if m < 1:
            raise CochainError(f"modulus must be positive, got {m}")
        facs = np.array(group.factors, dtype=np.int64)
        for axis, view in enumerate(
            (tensor * facs[:, None, None], tensor * facs[None, :, None], tensor * facs[None, None, :])
        ):
            if (view % m).any():
                raise TensorShapeError(
                    f"tensor is incompatible with the factors in slot {axis}: "
                    f"need modulus {m} to divide every entry times the slot factor"
                )
        coords = group.coords
        table = np.einsum("ai,bj,ck,ijk->abc", coords, coords, coords, tensor) % m
        super().__init__(group, table, m)
        self.tensor = tensor
        self.modulus = m


def tricharacter_from_tensor(
    group: FiniteAbelianGroup, tensor, modulus: int | None = None
) -> Tricharacter:
    return Tricharacter(group, tensor, modulus)


def bicharacter_from_matrix(
    group: FiniteAbelianGroup, matrix, modulus: int | None = None
) -> Cochain2:
    """sigma(a,b) = (1/m) sum_ij B[i,j] a_i b_j; bilinear, hence a 2-cocycle."""
    matrix = np.asarray(matrix, dtype=np.int64)
    k = group.rank
    if matrix.shape != (k, k):
        raise TensorShapeError(f"matrix shape {matrix.shape} does not match group rank {k}")
    m = group.exponent if modulus is None else int(modulus)
    facs = np.array(group.factors, dtype=np.int64)
    if ((matrix * facs[:, None]) % m).any() or ((matrix * facs[None, :]) % m).any():
        raise TensorShapeError(
            f"matrix is incompatible with the factors: need modulus {m} to divide "
            "every entry times the slot factor"
        )
    coords = group.coords
    table = np.einsum("ai,bj,ij->ab", coords, coords, matrix) % m
    return Cochain2(group, table, m)


# ------------------------------------------------------------- coboundaries


def coboundary2(sigma: Cochain2) -> Cochain3:
    """(delta sigma)(x,y,z) = sigma(y,z) - sigma(x+y,z) + sigma(x,y+z) - sigma(x,y)."""
    add = sigma.group.add_table
    t = sigma.table
    d = sigma.den
    out = (t[None, :, :] - t[add, :] + t[:, add] - t[:, :, None]) % d
    return Cochain3._from_table(sigma.group, 3, out, d)


def coboundary3(phi: Cochain3) -> CochainTable:
    """(delta phi)(w,x,y,z) with the alternating-sum convention; arity-4 table."""
    n = phi.group.order
    add = phi.group.add_table
    t = phi.table
    d = phi.den
    out = np.empty((n, n, n, n), dtype=np.int64)
    for w in range(n):
        out[w] = (t - t[add[w], :, :] + t[w][add, :] - t[w][:, add] + t[w][:, :, None]) % d
    return CochainTable._from_table(phi.group, 4, out, d)


def _coboundary3_witness(phi: Cochain3):
    """First (w,x,y,z) index tuple where delta phi != 0, or None; chunked over w."""
    n = phi.group.order
    add = phi.group.add_table
    t = phi.table
    d = phi.den
    for w in range(n):
        chunk = (t - t[add[w], :, :] + t[w][add, :] - t[w][:, add] + t[w][:, :, None]) % d
        if chunk.any():
            x, y, z = np.argwhere(chunk)[0]
            return (w, int(x), int(y), int(z))
    return None


def is_cocycle2(sigma: Cochain2) -> bool:
    return coboundary2(sigma).is_zero()


def is_cocycle3(phi: Cochain3) -> bool:
    return _coboundary3_witness(phi) is None


def cocycle3_witness(phi: Cochain3):
    """None when phi is a cocycle, else the first failing (w,x,y,z) as elements."""
    w = _coboundary3_witness(phi)
    if w is None:
        return None
    return tuple(phi.group.element(i) for i in w)


# ----------------------------------------------------- multiplier from phi


class PhiMultiplier:
    """u(beta, gamma): the diagonal unitary with entries exp(2 pi i phi(., beta, gamma)).

    Acts on functions over the group in enumeration order. Only cocycles are
    accepted; the construction is rejected otherwise with the failing
    coboundary quadruple.
    """

    def __init__(self, phi: Cochain3):
        witness = cocycle3_witness(phi)
        if witness is not None:
            raise NotACocycleError(
                f"phi is not a 3-cocycle, delta phi != 0 at {witness}", witness=witness
            )
        self.phi = phi
        self.group = phi.group

    def phases(self, beta, gamma) -> list[Phase]:
        """Exact diagonal phases phi(alpha, beta, gamma) over alpha in order."""
        ib = self.group.element(beta).index
        ig = self.group.element(gamma).index
        col = self.phi.table[:, ib, ig]
        return [Phase(int(v), self.phi.den) for v in col]

    def diagonal(self, beta, gamma) -> np.ndarray:
        ib = self.group.element(beta).index
        ig = self.group.element(gamma).index
        return self.phi.complex_table[:, ib, ig]

    def __call__(self, beta, gamma) -> np.ndarray:
        return np.diag(self.diagonal(beta, gamma))


def multiplier_from_phi(phi: Cochain3) -> PhiMultiplier:
    return PhiMultiplier(phi)


def check_multiplier_relation(phi: Cochain3):
    """Exhaustive exact check of
        phi(a,b,c) u(a,b) u(a+b,c) = xi_a[u(b,c)] u(a,b+c)
    on diagonal entries, where xi_a translates the diagonal by a. Returns None
    on success, else the first failing (a, b, c, entry) index tuple.
    """
    n = phi.group.order
    add = phi.group.add_table
    t = phi.table
    d = phi.den
    for a in range(n):
        # entries indexed [b, c, g]
        lhs = t[a][:, :, None] + t[:, a, :].T[:, None, :] + t[:, add[a], :].transpose(1, 2, 0)
        rhs = t[add[:, a]].transpose(1, 2, 0) + t[:, a, :][:, add].transpose(1, 2, 0)
        bad = (lhs - rhs) % d
        if bad.any():
            b, c, g = np.argwhere(bad)[0]
            return (a, int(b), int(c), int(g))
    return None


# ----------------------------------------------------------- restriction


def restrict(phi: Cochain3, generators) -> dict:
    """The table of phi over the subgroup generated by the given elements.

    Returns {(h1.coords, h2.coords, h3.coords): Phase} over all triples of
    the closure, in enumeration order of the ambient group.
    """
    H = subgroup_elements(phi.group, generators)
    out = {}
    for h1 in H:
        for h2 in H:
            for h3 in H:
                out[(h1.coords, h2.coords, h3.coords)] = phi.value(h1, h2, h3)
    return out


def is_trivial_on(phi: Cochain3, generators) -> bool:
    """True when phi restricts to zero on the generated subgroup."""
    return all(p.is_zero() for p in restrict(phi, generators).values())


# ------------------------------------------------- trivializing 2-cochains


def trivializing_cochain(phi: Cochain3) -> Cochain2:
    """A 2-cochain tau with (delta tau) = phi, when one can be written down.

    Supported inputs: the zero cochain (tau = 0) and tensor tricharacters
    whose doubled tensor vanishes mod m (2-torsion classes), where the
    quadratic cochain tau(a,b) = -(1/m) sum_{i<j,k} M[i,j,k] a_i a_j b_k
    works. The result is verified exactly; anything else raises, since such
    classes (e.g. the epsilon tensor mod 4 on three Z/4 factors) are not
    coboundaries at all.
    """
    if phi.is_zero():
        return Cochain2.zero(phi.group)
    if isinstance(phi, Tricharacter) and not ((2 * phi.tensor) % phi.modulus).any():
        k = phi.group.rank
        upper = np.triu(np.ones((k, k), dtype=np.int64), 1)
        N = (-phi.tensor) * upper[:, :, None]
        coords = phi.group.coords
        table = np.einsum("ai,aj,bk,ijk->ab", coords, coords, coords, N) % phi.modulus
        tau = Cochain2(phi.group, table, phi.modulus)
        if coboundary2(tau) == phi:
            return tau
    raise CochainError(
        "no trivializing 2-cochain available: phi is not recognizably a "
        "coboundary (2 * tensor != 0 mod m obstructs the quadratic ansatz)"
    )
