"""Twisted matrix algebras: kernels on G x G with a tricharacter twist.

For a 3-cocycle phi the twisted product of kernels is
    (K1 * K2)(x, z) = sum_y exp(2 pi i phi(x, y, z)) K1(x, y) K2(y, z),
which is nonassociative for nonzero phi. Kernels may be scalar (shape (n, n))
or B-valued with B a matrix block (shape (n, n, d, d)).

The translation twist
    gamma_xi[K](eta, zeta) = exp(-2 pi i phi(xi, eta, zeta)) K(eta - xi, zeta - xi)
multiplies the twisted product; composing two of them differs from the sum
translation by conjugation with an explicit diagonal multiplier, and the
multiplier fails the 2-cocycle identity by exactly the constant phi itself.
Both facts are checked in exact integer arithmetic here. They require phi to
be alternating and multilinear, not just a cocycle.
"""

from __future__ import annotations

import numpy as np

from .cochains import Cochain3
from .errors import CochainError, IncompatibleGroupsError, NotACocycleError
from .groups import FiniteAbelianGroup
from .phases import Phase


class TwistedKernel:
    """A kernel on G x G multiplied with a phi-twisted convolution."""

    __slots__ = ("group", "phi", "data", "block_dim")

    def __init__(self, group: FiniteAbelianGroup, phi: Cochain3, data):
        if phi.group != group:
            raise IncompatibleGroupsError("phi lives on a different group")
        data = np.asarray(data, dtype=complex)
        n = group.order
        if data.shape == (n, n):
            block = 1
        elif data.ndim == 4 and data.shape[:2] == (n, n) and data.shape[2] == data.shape[3]:
            block = data.shape[2]
        else:
            raise CochainError(
                f"kernel data must have shape ({n}, {n}) or ({n}, {n}, d, d), got {data.shape}"
            )
        self.group = group
        self.phi = phi
        self.data = data
        self.block_dim = block

    # ------------------------------------------------------------ helpers

    @classmethod
    def from_function(cls, group, phi, fn, block_dim: int = 1) -> "TwistedKernel":
        n = group.order
        if block_dim == 1:
            data = np.array(
                [[fn(x, y) for y in group.elements] for x in group.elements], dtype=complex
            )
        else:
            data = np.empty((n, n, block_dim, block_dim), dtype=complex)
            for i, x in enumerate(group.elements):
                for j, y in enumerate(group.elements):
                    data[i, j] = np.asarray(fn(x, y), dtype=complex)
        return cls(group, phi, data)

    @classmethod
    def identity(cls, group, phi, block_dim: int = 1) -> "TwistedKernel":
        n = group.order
        if block_dim == 1:
            return cls(group, phi, np.eye(n, dtype=complex))
        data = np.zeros((n, n, block_dim, block_dim), dtype=complex)
        data[np.arange(n), np.arange(n)] = np.eye(block_dim)
        return cls(group, phi, data)

    @classmethod
    def random(cls, group, phi, rng: np.random.Generator, block_dim: int = 1) -> "TwistedKernel":
        n = group.order
        shape = (n, n) if block_dim == 1 else (n, n, block_dim, block_dim)
        return cls(group, phi, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))

    def _check(self, other: "TwistedKernel") -> None:
        if self.group != other.group or self.phi != other.phi or self.block_dim != other.block_dim:
            raise IncompatibleGroupsError("kernels live over different twists")

    # ---------------------------------------------------------- operations

    def __add__(self, other: "TwistedKernel") -> "TwistedKernel":
        self._check(other)
        return TwistedKernel(self.group, self.phi, self.data + other.data)

    def __sub__(self, other: "TwistedKernel") -> "TwistedKernel":
        self._check(other)
        return TwistedKernel(self.group, self.phi, self.data - other.data)

    def __mul__(self, other):
        if isinstance(other, TwistedKernel):
            return kernel_product(self, other)
        if isinstance(other, (int, float, complex)):
            return TwistedKernel(self.group, self.phi, self.data * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return TwistedKernel(self.group, self.phi, self.data * other)
        return NotImplemented

    def adjoint(self) -> "TwistedKernel":
        """K*(x, z) = K(z, x) conjugated (blockwise conjugate transpose)."""
        if self.block_dim == 1:
            return TwistedKernel(self.group, self.phi, np.conj(self.data.T))
        return TwistedKernel(self.group, self.phi, np.conj(self.data.transpose(1, 0, 3, 2)))

    def norm(self) -> float:
        return float(np.linalg.norm(self.data.ravel()))

    def isclose(self, other: "TwistedKernel", tol: float = 1e-9) -> bool:
        self._check(other)
        return bool(np.allclose(self.data, other.data, atol=tol, rtol=0.0))

    def __repr__(self) -> str:
        return (
            f"TwistedKernel(group={self.group.factors}, block={self.block_dim}, "
            f"norm={self.norm():.4g})"
        )


def kernel_product(k1: TwistedKernel, k2: TwistedKernel) -> TwistedKernel:
    """(K1 * K2)(x, z) = sum_y exp(2 pi i phi(x, y, z)) K1(x, y) K2(y, z)."""
    k1._check(k2)
    w = k1.phi.complex_table
    if k1.block_dim == 1:
        out = np.einsum("xyz,xy,yz->xz", w, k1.data, k2.data)
    else:
        out = np.einsum("xyz,xyab,yzbc->xzac", w, k1.data, k2.data)
    return TwistedKernel(k1.group, k1.phi, out)


def gamma_action(xi, kernel: TwistedKernel) -> TwistedKernel:
    """gamma_xi[K](eta, zeta) = exp(-2 pi i phi(xi, eta, zeta)) K(eta - xi, zeta - xi)."""
    g = kernel.group
    i = g.element(xi).index
    rows = g.sub_table[:, i]
    w = np.conj(kernel.phi.complex_table[i])
    if kernel.block_dim == 1:
        data = w * kernel.data[np.ix_(rows, rows)]
    else:
        data = w[:, :, None, None] * kernel.data[np.ix_(rows, rows)]
    return TwistedKernel(g, kernel.phi, data)


def gamma_multiplier(phi: Cochain3, omega, xi) -> np.ndarray:
    """The diagonal u(omega, xi) with gamma_omega gamma_xi = ad(u) gamma_{omega+xi}.

    Entries u(omega, xi)(x) = exp(2 pi i phi(omega, xi, x)); the relation
    holds when phi is an alternating tricharacter.
    """
    g = phi.group
    io = g.element(omega).index
    ix = g.element(xi).index
    return phi.complex_table[io, ix, :]


def gamma_multiplier_phases(phi: Cochain3, omega, xi) -> list[Phase]:
    g = phi.group
    io = g.element(omega).index
    ix = g.element(xi).index
    col = phi.table[io, ix, :]
    return [Phase(int(v), phi.den) for v in col]


def check_gamma_relation(phi: Cochain3, omega, xi, kernel: TwistedKernel) -> float:
    """Max deviation of gamma_omega(gamma_xi K) from ad(u(omega,xi)) gamma_{omega+xi} K."""
    g = phi.group
    lhs = gamma_action(omega, gamma_action(xi, kernel)).data
    shifted = gamma_action(g.element(omega) + g.element(xi), kernel).data
    u = gamma_multiplier(phi, omega, xi)
    if kernel.block_dim == 1:
        rhs = u[:, None] * shifted * np.conj(u)[None, :]
    else:
        rhs = u[:, None, None, None] * shifted * np.conj(u)[None, :, None, None]
    return float(np.max(np.abs(lhs - rhs)))


# ------------------------------------------------ associativity cocycle


def multiplier_combination(phi: Cochain3, xi, eta, zeta) -> np.ndarray:
    """The pointwise product u(xi,eta) u(xi+eta,zeta) u(xi,eta+zeta)^-1 gamma_xi[u(eta,zeta)]^-1.

    Returned as the complex vector over x, with gamma_xi acting on a diagonal
    multiplier by translation. For an alternating tricharacter the vector is
    constant and equal to exp(2 pi i phi(eta, zeta, xi)): the failure of the
    multiplier to be a 2-cocycle is the twist itself.
    """
    g = phi.group
    xi, eta, zeta = (g.element(v) for v in (xi, eta, zeta))
    u12 = gamma_multiplier(phi, xi, eta)
    u12_3 = gamma_multiplier(phi, xi + eta, zeta)
    u1_23 = gamma_multiplier(phi, xi, eta + zeta)
    u23 = gamma_multiplier(phi, eta, zeta)
    translated = u23[g.sub_table[:, xi.index]]
    return u12 * u12_3 * np.conj(u1_23) * np.conj(translated)


def _combination_defect_chunk(phi: Cochain3, ix: int) -> np.ndarray:
    """Exact exponent of the combination minus phi(eta,zeta,xi), indexed [eta, zeta, x]."""
    t = phi.table
    g = phi.group
    add, sub = g.add_table, g.sub_table
    # u(xi, eta)(x) = exp(2 pi i t[xi, eta, x]); combination exponent:
    #   t[xi, eta, x] + t[xi+eta, zeta, x] - t[xi, eta+zeta, x] - t[eta, zeta, x-xi]
    t1 = t[ix][:, None, :]
    t2 = t[add[ix]]
    t3 = t[ix][add]
    t4 = t[:, :, sub[:, ix]]
    rhs = t[:, :, ix][:, :, None]
    return (t1 + t2 - t3 - t4 - rhs) % phi.den


def associativity_cocycle(phi: Cochain3, xi, eta, zeta) -> Phase:
    """The constant value of the multiplier combination at (xi, eta, zeta).

    Computed exactly over every diagonal entry; raises when the combination
    is not pointwise constant (phi not an alternating tricharacter). For an
    alternating tricharacter the value is phi(eta, zeta, xi).
    """
    g = phi.group
    i, j, k = (g.element(v).index for v in (xi, eta, zeta))
    t, add, sub = phi.table, g.add_table, g.sub_table
    vals = (t[i, j, :] + t[add[i, j], k, :] - t[i, add[j, k], :] - t[j, k, sub[:, i]]) % phi.den
    if not (vals == vals[0]).all():
        raise NotACocycleError(
            "associativity cocycle is not pointwise constant at "
            f"({g.element(xi)}, {g.element(eta)}, {g.element(zeta)})"
        )
    return Phase(int(vals[0]), phi.den)


def associativity_cocycle_sweep(phi: Cochain3):
    """Exact sweep of the cocycle identity over every (xi, eta, zeta, x).

    Verifies that the combination of multipliers equals exp(2 pi i phi(eta,
    zeta, xi)) pointwise. Returns None on success, else the first failing
    (xi, eta, zeta, x) index tuple. Chunked over xi so the full fourth-power
    table is never materialized.
    """
    n = phi.group.order
    for ix in range(n):
        bad = _combination_defect_chunk(phi, ix)
        if bad.any():
            e, z, x = np.argwhere(bad)[0]
            return (ix, int(e), int(z), int(x))
    return None
