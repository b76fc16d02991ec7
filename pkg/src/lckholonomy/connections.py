"""Levi-Civita connection, the two-parameter family around it, and curvature.

Conventions (0-based frame indices):

* ``gamma[i, j, k]`` is the ``e_k``-component of ``nabla_{e_i} e_j``;
* ``Connection.matrix(i)`` is ``nabla_{e_i}`` as a matrix acting on columns;
* ``Curvature.arr[i, j, k, l]`` is the ``e_l``-component of ``R(e_i, e_j) e_k``
  with ``R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]``;
* tensors carry a ``kinds`` string, one letter per axis, ``"u"`` for a vector
  slot and ``"d"`` for a covector slot. A (1,1)-tensor is ``"ud"``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .frames import (
    FrameAlgebra,
    FrameError,
    HermitianStructure,
    KForm,
    LeeData,
    SPHERE,
    all_zero,
    arrays_equal,
    exterior_derivative,
    fundamental_form,
    zeros,
)
from .rings import SpherePolynomial


class NotSkewError(FrameError):
    """The torsion of the connection is not totally skew-symmetric."""


@dataclass(eq=False)
class Connection:
    fa: FrameAlgebra
    gamma: np.ndarray
    label: str = ""

    @property
    def m(self) -> int:
        return self.fa.m

    def matrix(self, i: int) -> np.ndarray:
        return self.gamma[i].T

    def covariant(self, X, Y) -> np.ndarray:
        """``nabla_X Y`` for vector fields with ring coefficients."""
        X = np.asarray(X, dtype=object)
        Y = np.asarray(Y, dtype=object)
        out = zeros(self.m)
        for i in range(self.m):
            if X[i] == 0:
                continue
            out = out + X[i] * (self.gamma[i].T @ Y + self.fa.act_array(i, Y))
        return out

    def derivative(self, arr, kinds: str) -> np.ndarray:
        return covariant_derivative(self, arr, kinds)


def levi_civita(fa: FrameAlgebra, g) -> Connection:
    """Koszul formula for a constant metric: only the bracket terms survive."""
    g = np.asarray(g, dtype=object)
    ginv = linalg.inverse(g)
    F = fa.lowered_brackets(g)
    lowered = (F - F.transpose(0, 2, 1) - F.transpose(2, 0, 1)) * Fraction(1, 2)
    return Connection(fa, np.tensordot(lowered, ginv, axes=([2], [0])), "levi-civita")


@dataclass(eq=False)
class EpsRhoFamily:
    """``gamma(eps, rho) = gamma_g + eps * d_eps + rho * d_rho`` where

    ``g(nabla_X Y, Z) = g(nabla^g_X Y, Z) + eps d(omega)(JX,JY,JZ) - rho d(omega)(JX,Y,Z)``.
    """

    fa: FrameAlgebra
    H: HermitianStructure
    levi_civita: Connection
    d_eps: np.ndarray
    d_rho: np.ndarray

    def at(self, eps, rho, label: str | None = None) -> Connection:
        eps, rho = Fraction(eps), Fraction(rho)
        gamma = self.levi_civita.gamma + self.d_eps * eps + self.d_rho * rho
        return Connection(self.fa, gamma, label or f"eps-rho({eps},{rho})")

    def gauduchon(self, t) -> Connection:
        t = Fraction(t)
        return self.at((1 - t) / 4, (1 + t) / 4, f"gauduchon({t})")

    def bismut(self) -> Connection:
        return self.at(Fraction(1, 2), 0, "bismut")

    def chern(self) -> Connection:
        return self.at(0, Fraction(1, 2), "chern")


def eps_rho_family(fa: FrameAlgebra, H: HermitianStructure,
                   nabla_g: Connection | None = None) -> EpsRhoFamily:
    if nabla_g is None:
        nabla_g = levi_civita(fa, H.g)
    d_omega = exterior_derivative(fa, fundamental_form(H))
    ginv = H.g_inverse
    full = d_omega.pullback(H.J).arr
    first = np.tensordot(H.J, d_omega.arr, axes=([0], [0]))
    d_eps = np.tensordot(full, ginv, axes=([2], [0]))
    d_rho = -np.tensordot(first, ginv, axes=([2], [0]))
    return EpsRhoFamily(fa, H, nabla_g, d_eps, d_rho)


def eps_rho_connection(nabla_g: Connection, fa: FrameAlgebra, H: HermitianStructure,
                       eps, rho) -> Connection:
    return eps_rho_family(fa, H, nabla_g).at(eps, rho)


def gauduchon_t(nabla_g: Connection, fa: FrameAlgebra, H: HermitianStructure, t) -> Connection:
    return eps_rho_family(fa, H, nabla_g).gauduchon(t)


def bismut(fa: FrameAlgebra, H: HermitianStructure) -> Connection:
    return eps_rho_family(fa, H).bismut()


# ---------------------------------------------------------------------------
# tensors


def _difference_terms(gamma_i: np.ndarray, arr: np.ndarray, kinds: str) -> np.ndarray:
    out = zeros(*arr.shape)
    for axis, kind in enumerate(kinds):
        if kind == "d":
            term = -np.tensordot(gamma_i, arr, axes=([1], [axis]))
        elif kind == "u":
            term = np.tensordot(gamma_i, arr, axes=([0], [axis]))
        else:
            raise FrameError(f"unknown slot kind {kind!r}")
        out = out + np.moveaxis(term, 0, axis)
    return out


def covariant_derivative(conn: Connection, arr, kinds: str, *,
                         derivative_terms: bool = True) -> np.ndarray:
    """``out[i, ...] = (nabla_{e_i} T)[...]`` for a tensor of the given slot kinds.

    With ``derivative_terms=False`` only the connection-coefficient part is
    returned, which is linear in ``gamma``.
    """
    arr = np.asarray(arr, dtype=object)
    if len(kinds) != arr.ndim or arr.ndim == 0:
        raise FrameError("unsupported valence")
    m = conn.m
    pieces = []
    for i in range(m):
        piece = _difference_terms(conn.gamma[i], arr, kinds)
        if derivative_terms and conn.fa.ring == SPHERE:
            piece = piece + conn.fa.act_array(i, arr)
        pieces.append(piece)
    return np.array(pieces, dtype=object).reshape((m,) + arr.shape)


def metric_defect(conn: Connection, g) -> np.ndarray:
    """``nabla g`` for a constant metric; zero iff the connection is metric."""
    return covariant_derivative(conn, np.asarray(g, dtype=object), "dd")


def torsion(conn: Connection) -> np.ndarray:
    """``T[i, j, k]``: ``e_k``-component of ``nabla_i e_j - nabla_j e_i - [e_i, e_j]``."""
    G = conn.gamma
    return G - G.transpose(1, 0, 2) - conn.fa.brackets


def torsion_three_form(conn: Connection, g) -> KForm:
    """``c(X, Y, Z) = g(X, T(Y, Z))``; raises if it is not totally skew."""
    T = torsion(conn)
    c = np.tensordot(np.asarray(g, dtype=object), T, axes=([1], [2]))
    for perm in ((1, 0, 2), (0, 2, 1), (2, 1, 0)):
        if not arrays_equal(c, -c.transpose(perm)):
            raise NotSkewError("torsion is not totally skew-symmetric")
    return KForm(conn.m, 3, c)


@dataclass(eq=False)
class Curvature:
    arr: np.ndarray

    @property
    def m(self) -> int:
        return self.arr.shape[0]

    def matrix(self, i: int, j: int) -> np.ndarray:
        """``R(e_i, e_j)`` acting on columns."""
        return self.arr[i, j].T

    def endomorphism(self, X, Y) -> np.ndarray:
        X = np.asarray(X, dtype=object)
        Y = np.asarray(Y, dtype=object)
        mats = np.tensordot(np.tensordot(X, self.arr, axes=([0], [0])), Y, axes=([0], [0]))
        return mats.T

    def lowered(self, g) -> np.ndarray:
        """``R(X, Y, Z, W) = g(R(X, Y) Z, W)``."""
        return np.tensordot(self.arr, np.asarray(g, dtype=object), axes=([3], [0]))

    def is_zero(self) -> bool:
        return all_zero(self.arr)


def curvature(conn: Connection) -> Curvature:
    fa = conn.fa
    m = fa.m
    N = [conn.matrix(i) for i in range(m)]
    dN = None
    if fa.ring == SPHERE:
        dN = [[fa.act_array(i, N[j]) for j in range(m)] for i in range(m)]
    arr = zeros(m, m, m, m)
    for i, j in itertools.combinations(range(m), 2):
        mat = N[i] @ N[j] - N[j] @ N[i]
        for c in range(m):
            coeff = fa.brackets[i, j, c]
            if coeff != 0:
                mat = mat - N[c] * coeff
        if dN is not None:
            mat = mat + dN[i][j] - dN[j][i]
        arr[i, j] = mat.T
        arr[j, i] = -mat.T
    return Curvature(arr)


def ricci(R: Curvature) -> np.ndarray:
    """``Ric[j, k] = sum_i (e_i-component of R(e_i, e_j) e_k)``."""
    m = R.m
    out = zeros(m, m)
    for j in range(m):
        for k in range(m):
            total = Fraction(0)
            for i in range(m):
                total = total + R.arr[i, j, k, i]
            out[j, k] = total
    return out


def phi_tensor(H: HermitianStructure, lee: LeeData) -> np.ndarray:
    """``phi = J - theta (x) JA + J theta (x) A`` as a matrix acting on columns."""
    return H.J - np.multiply.outer(lee.JA, lee.theta.arr) + np.multiply.outer(lee.A, lee.J_theta.arr)


def codifferential(nabla_g: Connection, g, eta: KForm) -> KForm:
    """``(delta eta)(Y, ...) = -sum g^{ij} (nabla^g_{e_i} eta)(e_j, Y, ...)``."""
    if eta.degree < 1:
        raise FrameError("codifferential needs degree >= 1")
    D = covariant_derivative(nabla_g, eta.arr, "d" * eta.degree)
    ginv = linalg.inverse(np.asarray(g, dtype=object))
    out = -np.tensordot(ginv, D, axes=([0, 1], [0, 1]))
    return KForm(eta.m, eta.degree - 1, out)


def lee_from_codifferential(nabla_g: Connection, H: HermitianStructure) -> KForm:
    """``-(1/(n-1)) (delta omega)(J .)`` with ``2n`` the frame size."""
    n = H.m // 2
    delta = codifferential(nabla_g, H.g, fundamental_form(H))
    return KForm(H.m, 1, (H.J.T @ delta.arr) * Fraction(-1, n - 1))


def lee_derivative(conn: Connection, lee: LeeData) -> np.ndarray:
    return covariant_derivative(conn, lee.theta.arr, "d")


def is_vaisman(fa: FrameAlgebra, H: HermitianStructure, lee: LeeData,
               nabla_g: Connection | None = None) -> bool:
    if nabla_g is None:
        nabla_g = levi_civita(fa, H.g)
    return all_zero(lee_derivative(nabla_g, lee))


# ---------------------------------------------------------------------------
# parameter scans


@dataclass(frozen=True)
class AffineSolution:
    """Solution set of an affine system in one or two rational parameters.

    ``kind`` is ``"empty"``, ``"point"``, ``"line"`` or ``"all"``. For a point
    ``values`` holds the coordinates; for a line in two parameters
    ``equation = (a, b, c)`` means ``a*x + b*y = c`` (normalized so the first
    nonzero of ``a, b`` is 1).
    """

    kind: str
    values: tuple = ()
    equation: tuple = ()

    def __str__(self):
        if self.kind == "point":
            return "{" + ", ".join(str(v) for v in self.values) + "}"
        if self.kind == "line":
            a, b, c = self.equation
            parts = [f"{a}*eps" if a else "", f"{b}*rho" if b else ""]
            return " + ".join(p for p in parts if p) + f" = {c}"
        return self.kind


def _coefficients(value) -> dict:
    if isinstance(value, SpherePolynomial):
        return dict(value.terms)
    return {(): Fraction(value)} if value != 0 else {}


def _affine_rows(base, parts) -> list[list[Fraction]]:
    """Rows ``[p_1, .., p_r, -b]`` for every monomial of every entry of ``base + sum x_k parts[k]``."""
    rows = []
    for idx in np.ndindex(np.asarray(base).shape):
        cb = _coefficients(base[idx])
        cps = [_coefficients(p[idx]) for p in parts]
        monos = set(cb)
        for c in cps:
            monos.update(c)
        for mono in sorted(monos):
            rows.append([c.get(mono, Fraction(0)) for c in cps] + [-cb.get(mono, Fraction(0))])
    return rows


def solve_affine(base, parts) -> AffineSolution:
    nvars = len(parts)
    rows = _affine_rows(base, parts)
    reduced, pivots = linalg.rref(rows) if rows else ([], [])
    if nvars in pivots:
        return AffineSolution("empty")
    r = len(pivots)
    if r == 0:
        return AffineSolution("all")
    if r == nvars:
        return AffineSolution("point", tuple(row[nvars] for row in reduced))
    row = reduced[0]
    return AffineSolution("line", equation=tuple(row))


@dataclass(frozen=True)
class GauduchonScan:
    t: AffineSolution
    eps_rho: AffineSolution


def gauduchon_theta_scan(fa: FrameAlgebra, H: HermitianStructure, lee: LeeData,
                         family: EpsRhoFamily | None = None) -> GauduchonScan:
    """Parameters for which the Lee form is parallel, solved exactly."""
    if family is None:
        family = eps_rho_family(fa, H)
    theta = lee.theta.arr
    base = covariant_derivative(family.levi_civita, theta, "d")
    P = covariant_derivative(Connection(fa, family.d_eps), theta, "d", derivative_terms=False)
    Q = covariant_derivative(Connection(fa, family.d_rho), theta, "d", derivative_terms=False)
    quarter = Fraction(1, 4)
    t_base = base + (P + Q) * quarter
    t_slope = (Q - P) * quarter
    return GauduchonScan(solve_affine(t_base, [t_slope]), solve_affine(base, [P, Q]))


@dataclass(frozen=True)
class JDerivativeSplit:
    """``nabla^{eps,rho} J = base + eps * P + rho * Q``."""

    base: np.ndarray
    P: np.ndarray
    Q: np.ndarray

    def identity_holds(self) -> bool:
        """``nabla^{eps,rho} J = -2 (eps + rho - 1/2) nabla^g J`` as polynomials in eps, rho."""
        return arrays_equal(self.P, self.base * -2) and arrays_equal(self.Q, self.base * -2)

    def at(self, eps, rho) -> np.ndarray:
        return self.base + self.P * Fraction(eps) + self.Q * Fraction(rho)


def j_derivative_split(family: EpsRhoFamily) -> JDerivativeSplit:
    fa = family.fa
    J = family.H.J
    base = covariant_derivative(family.levi_civita, J, "ud")
    P = covariant_derivative(Connection(fa, family.d_eps), J, "ud", derivative_terms=False)
    Q = covariant_derivative(Connection(fa, family.d_rho), J, "ud", derivative_terms=False)
    return JDerivativeSplit(base, P, Q)


# ---------------------------------------------------------------------------
# conversion identities on Vaisman structures with |A| = 1


def _theta_J(H: HermitianStructure, lee: LeeData) -> np.ndarray:
    """Covector ``theta(J .)``."""
    return H.J.T @ lee.theta.arr


def rb_from_rg(Rg: Curvature, lee: LeeData, H: HermitianStructure) -> Curvature:
    """Bismut curvature rebuilt from the Riemannian one by the closed-form conversion."""
    m = H.m
    g, J = H.g, H.J
    q = Fraction(1, 4)
    thJ = _theta_J(H, lee)
    omega = fundamental_form(H)
    gphi = np.asarray(phi_tensor(H, lee)).T @ g
    jtw = lee.J_theta.wedge(omega).arr
    jtw_JZ = np.tensordot(jtw, J, axes=([2], [0]))
    tw = lee.theta.wedge(omega).arr
    out = zeros(m, m, m, m)
    for i, j, k in itertools.product(range(m), repeat=3):
        if i == j:
            continue
        v = np.array(Rg.arr[i, j, k], dtype=object)
        v[i] = v[i] - q * thJ[j] * thJ[k]
        v[j] = v[j] + q * thJ[i] * thJ[k]
        v = v + J[:, i] * (q * gphi[j, k]) - J[:, j] * (q * gphi[i, k]) \
            + J[:, k] * (gphi[i, j] * Fraction(1, 2))
        v = v + lee.A * (q * (-omega.arr[i, j] * thJ[k] + jtw[i, j, k]))
        v = v - lee.JA * (q * (jtw_JZ[i, j, k] + tw[i, j, k]))
        out[i, j, k] = v
    return Curvature(out)


def ricb_from_ricg(ric_g: np.ndarray, lee: LeeData, H: HermitianStructure) -> np.ndarray:
    """``Ric^g - g/2 + theta theta / 2 - ((n-2)/2) theta(J.) theta(J.)`` with ``2n`` the frame size."""
    n = H.m // 2
    th = lee.theta.arr
    thJ = _theta_J(H, lee)
    return (ric_g - H.g * Fraction(1, 2) + np.multiply.outer(th, th) * Fraction(1, 2)
            - np.multiply.outer(thJ, thJ) * Fraction(n - 2, 2))
