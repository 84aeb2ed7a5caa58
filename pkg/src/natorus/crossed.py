"""Twisted crossed products, their strictification, and the duality transform.

A twist datum is a quadruple (B, beta, u, phi): a matrix coefficient algebra
B = M_d, per-element conjugators implementing beta: G -> Aut(B), a unitary
multiplier u on G x G, and a 3-cocycle phi, tied together by

    beta_x beta_y = ad(u(x,y)) beta_{x+y}
    exp(2 pi i phi(x,y,z)) u(x,y) u(x+y,z) = beta_x[u(y,z)] u(x,y+z).

Crossed elements are B-valued functions on G with the twisted convolution;
strictified elements carry an extra function leg and multiply with an
additional 3-cocycle weight psi. The transform

    a~(w, z) = beta_w^-1[ a(w - z, z) u(w - z, z) ]

carries the strictified product to the psi-twisted kernel product of block
kernels, which is the duality statement this module exists to check: the
crossed product by the dual action is B tensor twisted compacts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cochains import Cochain2, Cochain3, coboundary2
from .errors import IncompatibleGroupsError, TwistDataError
from .groups import FiniteAbelianGroup
from .kernels import TwistedKernel, kernel_product


class TwistData:
    """Coefficient algebra M_d with compatible (beta, u, phi)."""

    def __init__(
        self,
        group: FiniteAbelianGroup,
        dim: int = 1,
        beta: np.ndarray | None = None,
        u: np.ndarray | None = None,
        phi: Cochain3 | None = None,
        validate: bool = True,
        tol: float = 1e-10,
    ):
        n = group.order
        if beta is None:
            beta = np.broadcast_to(np.eye(dim, dtype=complex), (n, dim, dim)).copy()
        beta = np.asarray(beta, dtype=complex)
        if u is None:
            u = np.broadcast_to(np.eye(dim, dtype=complex), (n, n, dim, dim)).copy()
        u = np.asarray(u, dtype=complex)
        if phi is None:
            phi = Cochain3.zero(group)
        if beta.shape != (n, dim, dim):
            raise TwistDataError(f"beta must have shape {(n, dim, dim)}, got {beta.shape}")
        if u.shape != (n, n, dim, dim):
            raise TwistDataError(f"u must have shape {(n, n, dim, dim)}, got {u.shape}")
        if phi.group != group:
            raise IncompatibleGroupsError("phi lives on a different group")
        beta.setflags(write=False)
        u.setflags(write=False)
        self.group = group
        self.dim = dim
        self.beta = beta
        self.u = u
        self.phi = phi
        if validate:
            self.validate(tol)

    # -------------------------------------------------------- constructors

    @classmethod
    def trivial(cls, group: FiniteAbelianGroup, dim: int = 1) -> "TwistData":
        return cls(group, dim)

    @classmethod
    def scalar_from_sigma(cls, group, sigma: Cochain2, dim: int = 1) -> "TwistData":
        """Trivial beta, u(x,y) = exp(2 pi i sigma(x,y)) 1_B, phi = delta sigma."""
        u = sigma.complex_table[:, :, None, None] * np.eye(dim, dtype=complex)
        return cls(group, dim, u=u, phi=coboundary2(sigma))

    @classmethod
    def with_scalar_multiplier(
        cls, group, sigma: Cochain2, beta: np.ndarray, phi: Cochain3, dim: int
    ) -> "TwistData":
        """beta given as conjugators, u scalar from sigma; needs delta sigma = phi
        whenever the conjugators commute with the scalars (always) and
        ad(beta) is a homomorphism."""
        u = sigma.complex_table[:, :, None, None] * np.eye(dim, dtype=complex)
        return cls(group, dim, beta=beta, u=u, phi=phi)

    # ------------------------------------------------------------- queries

    def beta_apply(self, t, b: np.ndarray) -> np.ndarray:
        v = self.beta[self.group.element(t).index]
        return v @ b @ v.conj().T

    def beta_inverse_apply(self, t, b: np.ndarray) -> np.ndarray:
        v = self.beta[self.group.element(t).index]
        return v.conj().T @ b @ v

    def multiplier(self, x, y) -> np.ndarray:
        g = self.group
        return self.u[g.element(x).index, g.element(y).index]

    def is_scalar(self) -> bool:
        return self.dim == 1

    # ----------------------------------------------------------- validation

    def validate(self, tol: float = 1e-10) -> None:
        """Exhaustive check of unitarity, normalization, and both relations."""
        n, d = self.group.order, self.dim
        v, u = self.beta, self.u
        eye = np.eye(d)
        verr = np.max(np.abs(np.einsum("tab,tcb->tac", v, np.conj(v)) - eye[None]))
        if verr > tol:
            raise TwistDataError(f"beta conjugators are not unitary (defect {verr:.3e})")
        uerr = np.max(np.abs(np.einsum("xyab,xycb->xyac", u, np.conj(u)) - eye[None, None]))
        if uerr > tol:
            raise TwistDataError(f"u values are not unitary (defect {uerr:.3e})")
        if np.max(np.abs(v[0] - eye)) > tol:
            raise TwistDataError("beta_0 is not the identity")
        norm_err = max(
            float(np.max(np.abs(u[0] - eye[None]))), float(np.max(np.abs(u[:, 0] - eye[None])))
        )
        if norm_err > tol:
            raise TwistDataError(f"u is not normalized at the identity (defect {norm_err:.3e})")
        add = self.group.add_table
        # beta_x beta_y = ad(u(x,y)) beta_{x+y}: V_x V_y (u(x,y) V_{x+y})^H central
        prod = np.einsum("xab,ybc->xyac", v, v)
        target = np.einsum("xyab,xybc->xyac", u, v[add])
        c = np.einsum("xyab,xycb->xyac", prod, np.conj(target))
        trace = np.einsum("xyaa->xy", c) / d
        central_defect = np.abs(c - trace[:, :, None, None] * eye[None, None])
        if central_defect.max() > tol:
            x, y = np.unravel_index(
                int(central_defect.max(axis=(2, 3)).argmax()), (n, n)
            )
            raise TwistDataError(
                f"beta_x beta_y != ad(u) beta_(x+y) at indices ({x}, {y})",
                witness=(int(x), int(y)),
            )
        # phase relation: e^{2 pi i phi} u(x,y) u(x+y,z) = beta_x[u(y,z)] u(x,y+z)
        w = self.phi.complex_table
        for x in range(n):
            lhs = np.einsum("yz,yab,yzbc->yzac", w[x], u[x], u[add[x]])
            moved = np.einsum("ab,yzbc,dc->yzad", v[x], u, np.conj(v[x]))
            rhs = np.einsum("yzab,yzbc->yzac", moved, u[x][add])
            err = np.abs(lhs - rhs)
            if err.max() > tol:
                y, z = np.unravel_index(int(err.max(axis=(2, 3)).argmax()), (n, n))
                raise TwistDataError(
                    f"multiplier relation fails at indices ({x}, {int(y)}, {int(z)})",
                    witness=(x, int(y), int(z)),
                )

    def __repr__(self) -> str:
        return f"TwistData(group={self.group.factors}, dim={self.dim})"


# ------------------------------------------------------------ crossed elements


class CrossedElement:
    """A B-valued function on G, an element of the twisted crossed product."""

    __slots__ = ("twist", "values")

    def __init__(self, twist: TwistData, values):
        n, d = twist.group.order, twist.dim
        values = np.asarray(values, dtype=complex)
        if values.shape == (n,) and d == 1:
            values = values[:, None, None]
        if values.shape != (n, d, d):
            raise TwistDataError(f"values must have shape {(n, d, d)}, got {values.shape}")
        self.twist = twist
        self.values = values

    @classmethod
    def delta(cls, twist: TwistData, at, value=None) -> "CrossedElement":
        n, d = twist.group.order, twist.dim
        vals = np.zeros((n, d, d), dtype=complex)
        vals[twist.group.element(at).index] = np.eye(d) if value is None else value
        return cls(twist, vals)

    @classmethod
    def unit(cls, twist: TwistData) -> "CrossedElement":
        return cls.delta(twist, twist.group.identity)

    @classmethod
    def random(cls, twist: TwistData, rng: np.random.Generator) -> "CrossedElement":
        n, d = twist.group.order, twist.dim
        return cls(twist, rng.standard_normal((n, d, d)) + 1j * rng.standard_normal((n, d, d)))

    def _check(self, other: "CrossedElement") -> None:
        if self.twist is not other.twist and (
            self.twist.group != other.twist.group or self.twist.dim != other.twist.dim
        ):
            raise IncompatibleGroupsError("elements live over different twist data")

    def __add__(self, other):
        self._check(other)
        return CrossedElement(self.twist, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return CrossedElement(self.twist, self.values - other.values)

    def __mul__(self, other):
        if isinstance(other, CrossedElement):
            return lbs_product(self, other)
        if isinstance(other, (int, float, complex)):
            return CrossedElement(self.twist, self.values * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return CrossedElement(self.twist, self.values * other)
        return NotImplemented

    def norm(self) -> float:
        return float(np.linalg.norm(self.values.ravel()))

    def isclose(self, other: "CrossedElement", tol: float = 1e-9) -> bool:
        self._check(other)
        return bool(np.allclose(self.values, other.values, atol=tol, rtol=0.0))

    def __repr__(self) -> str:
        return f"CrossedElement(group={self.twist.group.factors}, dim={self.twist.dim})"


def lbs_product(a: CrossedElement, b: CrossedElement) -> CrossedElement:
    """(a * b)(s) = sum_t a(t) beta_t[b(s - t)] u(t, s - t)."""
    a._check(b)
    tw = a.twist
    g = tw.group
    n = g.order
    sub = g.sub_table
    out = np.zeros_like(a.values)
    for t in range(n):
        moved = np.einsum("ab,sbc,dc->sad", tw.beta[t], b.values, np.conj(tw.beta[t]))
        # index s: a(t) moved[s - t] u(t, s - t)
        rt = sub[:, t]
        out += np.einsum("ab,sbc,scd->sad", a.values[t], moved[rt], tw.u[t][rt])
    return CrossedElement(tw, out)


def lbs_involution(a: CrossedElement) -> CrossedElement:
    """a*(x) = u(x, -x)^-1 (beta_x[a(-x)])^H."""
    tw = a.twist
    g = tw.group
    neg = g.neg_table
    moved = np.einsum("xab,xbc,xdc->xad", tw.beta, a.values[neg], np.conj(tw.beta))
    uinv = np.conj(tw.u[np.arange(g.order), neg].transpose(0, 2, 1))
    out = np.einsum("xab,xcb->xac", uinv, np.conj(moved))
    return CrossedElement(tw, out)


def dual_action(xi, a: CrossedElement) -> CrossedElement:
    """(beta-hat_xi a)(t) = exp(2 pi i <xi, t>) a(t)."""
    g = a.twist.group
    row = g.character_matrix[g.element(xi).index]
    return CrossedElement(a.twist, row[:, None, None] * a.values)


# --------------------------------------------------------- strictified algebra


class StrictifiedElement:
    """A B-valued function on G x G; the second slot is the function leg."""

    __slots__ = ("twist", "values")

    def __init__(self, twist: TwistData, values):
        n, d = twist.group.order, twist.dim
        values = np.asarray(values, dtype=complex)
        if values.shape == (n, n) and d == 1:
            values = values[:, :, None, None]
        if values.shape != (n, n, d, d):
            raise TwistDataError(f"values must have shape {(n, n, d, d)}, got {values.shape}")
        self.twist = twist
        self.values = values

    @classmethod
    def delta(cls, twist: TwistData, at, x, value=None) -> "StrictifiedElement":
        n, d = twist.group.order, twist.dim
        vals = np.zeros((n, n, d, d), dtype=complex)
        g = twist.group
        vals[g.element(at).index, g.element(x).index] = np.eye(d) if value is None else value
        return cls(twist, vals)

    @classmethod
    def random(cls, twist: TwistData, rng: np.random.Generator) -> "StrictifiedElement":
        n, d = twist.group.order, twist.dim
        shape = (n, n, d, d)
        return cls(twist, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))

    def _check(self, other: "StrictifiedElement") -> None:
        if self.twist is not other.twist and (
            self.twist.group != other.twist.group or self.twist.dim != other.twist.dim
        ):
            raise IncompatibleGroupsError("elements live over different twist data")

    def __add__(self, other):
        self._check(other)
        return StrictifiedElement(self.twist, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return StrictifiedElement(self.twist, self.values - other.values)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return StrictifiedElement(self.twist, self.values * other)
        return NotImplemented

    __rmul__ = __mul__

    def multiply_function(self, f) -> "StrictifiedElement":
        """The C0(G) action: pointwise multiplication in the second slot."""
        f = np.asarray(f, dtype=complex)
        return StrictifiedElement(self.twist, self.values * f[None, :, None, None])

    def norm(self) -> float:
        return float(np.linalg.norm(self.values.ravel()))

    def isclose(self, other: "StrictifiedElement", tol: float = 1e-9) -> bool:
        self._check(other)
        return bool(np.allclose(self.values, other.values, atol=tol, rtol=0.0))

    def __repr__(self) -> str:
        return f"StrictifiedElement(group={self.twist.group.factors}, dim={self.twist.dim})"


def strictified_product(
    a: StrictifiedElement, b: StrictifiedElement, psi: Cochain3
) -> StrictifiedElement:
    """(a * b)(s, x) = sum_t w(t, s-t, x) a(t, (s-t)+x) beta_t[b(s-t, x)] u(t, s-t)
    with w = exp(2 pi i (psi + phi)); the function leg shifts the first
    factor's argument.
    """
    a._check(b)
    tw = a.twist
    g = tw.group
    if psi.group != g:
        raise IncompatibleGroupsError("psi lives on a different group")
    n = g.order
    add = g.add_table
    weight = (psi + tw.phi).complex_table  # [t, r, x], r = s - t
    out = np.zeros_like(a.values)
    for t in range(n):
        a_shift = a.values[t][add]  # [r, x] -> a(t, r + x)
        moved = np.einsum("ab,rxbc,dc->rxad", tw.beta[t], b.values, np.conj(tw.beta[t]))
        term = np.einsum("rx,rxab,rxbc,rcd->rxad", weight[t], a_shift, moved, tw.u[t])
        out[add[t]] += term
    return StrictifiedElement(tw, out)


def takai_transform(
    a: StrictifiedElement, psi: Cochain3, include_multiplier: bool = True
) -> TwistedKernel:
    """a~(w, z) = beta_w^-1[a(w - z, z) u(w - z, z)], as a psi-twisted kernel.

    include_multiplier=False drops the u factor; that breaks the duality
    identity on purpose and exists for negative controls.
    """
    tw = a.twist
    g = tw.group
    if psi.group != g:
        raise IncompatibleGroupsError("psi lives on a different group")
    n = g.order
    sub = g.sub_table
    zi = np.arange(n)
    gathered = a.values[sub, zi[None, :]]  # [w, z] -> a(w - z, z)
    if include_multiplier:
        gathered = np.einsum("wzab,wzbc->wzac", gathered, tw.u[sub, zi[None, :]])
    data = np.einsum("wba,wzbc,wcd->wzad", np.conj(tw.beta), gathered, tw.beta)
    return TwistedKernel(g, psi, data if tw.dim > 1 else data[:, :, 0, 0])


def takai_inverse(kernel: TwistedKernel, tw: TwistData) -> StrictifiedElement:
    """a(t, x) = beta_{t+x}[a~(t+x, x)] u(t, x)^-1; inverse of the transform."""
    g = tw.group
    if kernel.group != g:
        raise IncompatibleGroupsError("kernel lives on a different group")
    n, d = g.order, tw.dim
    data = kernel.data if kernel.block_dim > 1 else kernel.data[:, :, None, None]
    add = g.add_table
    xi = np.arange(n)
    gathered = data[add, xi[None, :]]  # [t, x] -> a~(t + x, x)
    moved = np.einsum("txab,txbc,txdc->txad", tw.beta[add], gathered, np.conj(tw.beta[add]))
    uinv = np.conj(tw.u.transpose(0, 1, 3, 2))
    out = np.einsum("txab,txbc->txac", moved, uinv)
    return StrictifiedElement(tw, out)


def double_dual_action(v, kernel: TwistedKernel, alpha: np.ndarray | None = None) -> TwistedKernel:
    """out(x, z) = alpha_v[F(x + v, z + v)]; alpha given as conjugators or None."""
    g = kernel.group
    iv = g.element(v).index
    rows = g.add_table[:, iv]
    data = kernel.data[np.ix_(rows, rows)]
    if alpha is not None:
        w = np.asarray(alpha, dtype=complex)[iv]
        if kernel.block_dim == 1:
            raise TwistDataError("coefficient action needs block kernels")
        data = np.einsum("ab,xzbc,dc->xzad", w, data, np.conj(w))
    return TwistedKernel(g, kernel.phi, data)


# ----------------------------------------------------------- duality report


@dataclass
class DualityReport:
    passed: bool
    max_error: float
    tol: float
    trials: int
    mode: str
    witness: tuple | None = None

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "max_error": self.max_error,
            "tol": self.tol,
            "trials": self.trials,
            "mode": self.mode,
            "witness": None if self.witness is None else list(self.witness),
        }


def verify_duality(
    tw: TwistData,
    psi: Cochain3,
    trials: int = 100,
    seed: int = 0,
    tol: float = 1e-10,
    include_multiplier: bool = True,
) -> DualityReport:
    """Check transform(a * b) = transform(a) * transform(b) (psi-twisted kernels).

    Exhaustive over basis pairs when |G|^2 dim(B)^2 <= 64, else seeded random
    pairs. include_multiplier=False propagates to the transform and should
    make the check fail loudly.
    """
    g = tw.group
    n, d = g.order, tw.dim

    def run_pair(a, b):
        lhs = takai_transform(strictified_product(a, b, psi), psi, include_multiplier)
        ra = takai_transform(a, psi, include_multiplier)
        rb = takai_transform(b, psi, include_multiplier)
        rhs = kernel_product(ra, rb)
        return float(np.max(np.abs(lhs.data - rhs.data)))

    max_error = 0.0
    witness = None
    if n * n * d * d <= 64:
        mode = "exhaustive"
        count = 0
        basis = []
        for t in range(n):
            for x in range(n):
                for i in range(d):
                    for j in range(d):
                        val = np.zeros((d, d), dtype=complex)
                        val[i, j] = 1.0
                        basis.append(((t, x, i, j), StrictifiedElement.delta(tw, t, x, val)))
        for key_a, ea in basis:
            for key_b, eb in basis:
                err = run_pair(ea, eb)
                count += 1
                if err > max_error:
                    max_error = err
                    witness = (key_a, key_b)
        trials = count
    else:
        mode = "random"
        rng = np.random.default_rng(seed)
        for k in range(trials):
            a = StrictifiedElement.random(tw, rng)
            b = StrictifiedElement.random(tw, rng)
            err = run_pair(a, b)
            if err > max_error:
                max_error = err
                witness = ("trial", k)
    passed = max_error < tol
    return DualityReport(passed, max_error, tol, trials, mode, None if passed else witness)


# ------------------------------------------------- Fourier-side presentation


def evaluation_side_product(group: FiniteAbelianGroup, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """c(x, g) = a(x + g, g) b(x, g): the evaluation form of the convolution."""
    a, b, scalar = _as_blocks(group, a, b)
    add = group.add_table
    gi = np.arange(group.order)
    c = np.einsum("xgab,xgbc->xgac", a[add, gi[None, :]], b)
    return c[:, :, 0, 0] if scalar else c


def fourier_side_product(group: FiniteAbelianGroup, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """The same product computed through the Fourier side.

    a-hat(eta, g) = sum_x a(x, g) exp(2 pi i <eta, x>); the convolution
    c-hat(xi, g) = |G|^-1 sum_eta a-hat(eta, g) exp(-2 pi i <eta, g>)
    b-hat(xi - eta, g); returned after inverse transform in the first slot.
    """
    a, b, scalar = _as_blocks(group, a, b)
    n = group.order
    ch = group.character_matrix  # [eta, x]
    ahat = np.einsum("ex,xgab->egab", ch, a)
    bhat = np.einsum("ex,xgab->egab", ch, b)
    sub = group.sub_table
    cc = np.conj(ch)
    chat = np.einsum("eg,egab,segbc->sgac", cc, ahat, bhat[sub]) / n
    c = np.einsum("sx,sgab->xgab", cc, chat) / n
    return c[:, :, 0, 0] if scalar else c


def _as_blocks(group, a, b):
    n = group.order
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    scalar = a.ndim == 2
    if scalar:
        a = a[:, :, None, None]
        b = b[:, :, None, None]
    if a.shape[:2] != (n, n) or b.shape != a.shape:
        raise TwistDataError(f"operands must be (n, n[, d, d]) with n = {n}")
    return a, b, scalar
