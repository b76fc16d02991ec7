"""Framed geometries: bracket tables, differential forms, Hermitian structures, Lee forms.

Vector fields are 1-d object arrays of ring elements (components in the
frame), tensors are object arrays with one axis per slot. Frame indices are
0-based in code and 1-based in every user-facing string.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .rings import SpherePolynomial, as_fraction, frame_derivation

CONSTANTS = "constants"
SPHERE = "sphere"


class FrameError(ValueError):
    """Invalid frame-algebra or Hermitian input."""


class RingMismatchError(FrameError):
    pass


class NotLCKError(FrameError):
    pass


class NotClosedError(FrameError):
    pass


class DegenerateLeeError(FrameError):
    pass


# ---------------------------------------------------------------------------
# array helpers


def zeros(*shape) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr.fill(Fraction(0))
    return arr


def to_object(values) -> np.ndarray:
    arr = np.array(values, dtype=object)
    flat = arr.reshape(-1)
    for k, x in enumerate(flat):
        if isinstance(x, (int, str)) and not isinstance(x, bool):
            flat[k] = as_fraction(x)
    return arr


def all_zero(arr) -> bool:
    return all(x == 0 for x in np.asarray(arr, dtype=object).flat)


def first_nonzero(arr) -> tuple[tuple[int, ...], object] | None:
    arr = np.asarray(arr, dtype=object)
    for idx in np.ndindex(arr.shape):
        if arr[idx] != 0:
            return idx, arr[idx]
    return None


def arrays_equal(a, b) -> bool:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    return a.shape == b.shape and all_zero(a - b)


def basis_vector(m: int, i: int) -> np.ndarray:
    v = zeros(m)
    v[i] = Fraction(1)
    return v


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


_PERMS: dict[int, list[tuple[tuple[int, ...], int]]] = {}


def _perms(k: int):
    if k not in _PERMS:
        _PERMS[k] = [(p, _perm_sign(p)) for p in itertools.permutations(range(k))]
    return _PERMS[k]


# ---------------------------------------------------------------------------
# frame algebras


@dataclass(frozen=True, eq=False)
class FrameAlgebra:
    """Global frame ``e_1..e_m`` with ``[e_i, e_j] = sum_k f[i,j,k] e_k``.

    ``ring`` is ``"constants"`` (left-invariant frames on a Lie group) or
    ``"sphere"`` (coefficients are polynomials on the unit sphere in ``m``
    variables and ``e_i`` acts on them by ``e_i(x_j) = d_ij - x_i x_j``).
    """

    m: int
    ring: str
    brackets: np.ndarray

    def __post_init__(self):
        if self.ring not in (CONSTANTS, SPHERE):
            raise FrameError(f"unknown ring {self.ring!r}")
        f = np.asarray(self.brackets, dtype=object)
        if f.shape != (self.m,) * 3:
            raise FrameError(f"bracket table must have shape {(self.m,) * 3}, got {f.shape}")
        f = f.copy()
        for idx in np.ndindex(f.shape):
            f[idx] = self.coerce(f[idx])
        object.__setattr__(self, "brackets", f)

    def coerce(self, value):
        if isinstance(value, SpherePolynomial):
            if self.ring == CONSTANTS:
                if value.is_constant():
                    return value.constant_value()
                raise RingMismatchError(f"polynomial coefficient {value} in the constants ring")
            if value.m != self.m:
                raise RingMismatchError(f"polynomial in {value.m} variables, frame has {self.m}")
            return value
        return as_fraction(value)

    def variable(self, j: int) -> SpherePolynomial:
        """Coordinate function ``x_{j+1}`` (0-based ``j``)."""
        if self.ring != SPHERE:
            raise RingMismatchError("coordinate functions only exist in the sphere ring")
        return SpherePolynomial.variable(self.m, j + 1)

    # derivations ------------------------------------------------------
    def act(self, i: int, value):
        """``e_i(value)`` for a scalar function."""
        if self.ring == CONSTANTS or not isinstance(value, SpherePolynomial):
            return Fraction(0)
        return frame_derivation(i + 1, value)

    def act_array(self, i: int, arr) -> np.ndarray:
        arr = np.asarray(arr, dtype=object)
        out = zeros(*arr.shape)
        if self.ring == CONSTANTS:
            return out
        for idx in np.ndindex(arr.shape):
            x = arr[idx]
            if isinstance(x, SpherePolynomial):
                out[idx] = x.derive(i + 1)
        return out

    def apply(self, X, value):
        """``X(value)`` for a vector field ``X``."""
        if self.ring == CONSTANTS:
            return Fraction(0)
        total = Fraction(0)
        for i in range(self.m):
            if X[i] != 0:
                total = total + X[i] * self.act(i, value)
        return total

    def apply_array(self, X, arr) -> np.ndarray:
        arr = np.asarray(arr, dtype=object)
        out = zeros(*arr.shape)
        if self.ring == CONSTANTS:
            return out
        for i in range(self.m):
            if X[i] != 0:
                out = out + X[i] * self.act_array(i, arr)
        return out

    # brackets --------------------------------------------------------
    def frame(self, i: int) -> np.ndarray:
        return basis_vector(self.m, i)

    def bracket(self, X, Y) -> np.ndarray:
        """Lie bracket of vector fields with ring coefficients."""
        X = np.asarray(X, dtype=object)
        Y = np.asarray(Y, dtype=object)
        if X.shape != (self.m,) or Y.shape != (self.m,):
            raise FrameError("vector fields must have one component per frame field")
        out = zeros(self.m)
        for i in range(self.m):
            if X[i] == 0:
                continue
            for j in range(self.m):
                if Y[j] == 0:
                    continue
                coeff = X[i] * Y[j]
                out = out + np.array([coeff * c for c in self.brackets[i, j]], dtype=object)
        if self.ring == SPHERE:
            out = out + self.apply_array(X, Y) - self.apply_array(Y, X)
        return out

    def lowered_brackets(self, g) -> np.ndarray:
        """``F[i,j,k] = g([e_i,e_j], e_k)``."""
        return np.tensordot(self.brackets, np.asarray(g, dtype=object), axes=([2], [0]))

    def ad(self, X) -> np.ndarray:
        """Matrix of ``Y -> [X, Y]`` on frame fields (column ``j`` is ``[X, e_j]``)."""
        cols = [self.bracket(X, self.frame(j)) for j in range(self.m)]
        return np.array(cols, dtype=object).T


@dataclass
class DefectReport:
    zero: bool
    witness: str = ""

    def __bool__(self):
        return self.zero


def check_antisymmetry(fa: FrameAlgebra) -> DefectReport:
    f = fa.brackets
    for i in range(fa.m):
        for k in range(fa.m):
            if f[i, i, k] != 0:
                return DefectReport(False, f"f[{i+1},{i+1}]^{k+1} = {f[i, i, k]}")
        for j in range(i + 1, fa.m):
            for k in range(fa.m):
                if f[i, j, k] + f[j, i, k] != 0:
                    return DefectReport(
                        False, f"f[{i+1},{j+1}]^{k+1} = {f[i, j, k]} but f[{j+1},{i+1}]^{k+1} = {f[j, i, k]}")
    return DefectReport(True)


def jacobi_defect(fa: FrameAlgebra) -> DefectReport:
    """Zero iff the bracket (derivation terms included) satisfies Jacobi."""
    m = fa.m
    frame = [fa.frame(i) for i in range(m)]
    brk = {}
    for i in range(m):
        for j in range(m):
            brk[i, j] = fa.bracket(frame[i], frame[j])
    for i, j, k in itertools.combinations(range(m), 3):
        total = (fa.bracket(brk[i, j], frame[k]) + fa.bracket(brk[j, k], frame[i])
                 + fa.bracket(brk[k, i], frame[j]))
        hit = first_nonzero(total)
        if hit is not None:
            (c,), value = hit
            return DefectReport(False, f"cyclic sum on (e{i+1},e{j+1},e{k+1}) has e{c+1}-component {value}")
    return DefectReport(True)


def frame_action_defect(fa: FrameAlgebra) -> DefectReport:
    """Sphere ring: ``[e_i,e_j](x_l) = e_i(e_j x_l) - e_j(e_i x_l)`` for all coordinates.

    This ties the bracket table to the fixed action ``e_i(x_j) = d_ij - x_i x_j``.
    Always zero for the constants ring.
    """
    if fa.ring != SPHERE:
        return DefectReport(True)
    m = fa.m
    for l in range(m):
        x = fa.variable(l)
        for i in range(m):
            for j in range(i + 1, m):
                lhs = fa.apply(fa.bracket(fa.frame(i), fa.frame(j)), x)
                rhs = fa.act(i, fa.act(j, x)) - fa.act(j, fa.act(i, x))
                if lhs != rhs:
                    return DefectReport(
                        False, f"[e{i+1},e{j+1}](x{l+1}) = {lhs} but the commutator gives {rhs}")
    return DefectReport(True)


def is_unimodular(fa: FrameAlgebra) -> bool:
    """``trace(ad_x) = 0`` for every frame field (constants ring)."""
    return all(sum(fa.brackets[i, j, j] for j in range(fa.m)) == 0 for i in range(fa.m))


# ---------------------------------------------------------------------------
# differential forms


class KForm:
    """Alternating k-form with coefficients ``arr[i1..ik] = eta(e_i1, .., e_ik)``.

    Wedge products use the determinant convention, e.g.
    ``(a ^ b)(X, Y) = a(X) b(Y) - a(Y) b(X)``.
    """

    def __init__(self, m: int, degree: int, arr=None):
        if not 0 <= degree <= 4:
            raise FrameError("only forms of degree 0..4 are supported")
        self.m = m
        self.degree = degree
        if arr is None:
            arr = zeros(*(m,) * degree) if degree else np.array(Fraction(0), dtype=object)
        self.arr = np.asarray(arr, dtype=object)
        if self.arr.shape != (m,) * degree:
            raise FrameError(f"coefficient array must have shape {(m,) * degree}")

    @classmethod
    def from_components(cls, m: int, degree: int, comps: dict[tuple[int, ...], object]) -> "KForm":
        """Build from values on increasing index tuples (0-based)."""
        form = cls(m, degree)
        for idx, value in comps.items():
            form._set_sorted(tuple(idx), value)
        return form

    @classmethod
    def coframe(cls, m: int, i: int) -> "KForm":
        return cls(m, 1, basis_vector(m, i))

    @classmethod
    def from_covector(cls, values) -> "KForm":
        arr = to_object(values)
        return cls(len(arr), 1, arr)

    def _set_sorted(self, idx: tuple[int, ...], value) -> None:
        if len(set(idx)) < len(idx):
            if value != 0:
                raise FrameError(f"repeated index {idx} with nonzero value")
            return
        order = sorted(range(len(idx)), key=lambda a: idx[a])
        base = tuple(idx[a] for a in order)
        sign0 = _perm_sign(order)
        value = value * sign0 if sign0 < 0 else value
        for perm, sign in _perms(len(base)):
            self.arr[tuple(base[p] for p in perm)] = value if sign > 0 else -value

    def components(self) -> dict[tuple[int, ...], object]:
        out = {}
        for idx in itertools.combinations(range(self.m), self.degree):
            if self.arr[idx] != 0:
                out[idx] = self.arr[idx]
        return out

    def __call__(self, *vectors):
        if len(vectors) != self.degree:
            raise FrameError(f"{self.degree}-form evaluated on {len(vectors)} vectors")
        out = self.arr
        for v in reversed(vectors):
            out = np.tensordot(out, np.asarray(v, dtype=object), axes=([out.ndim - 1], [0]))
        return out[()] if isinstance(out, np.ndarray) else out

    def _check(self, other: "KForm"):
        if not isinstance(other, KForm) or other.m != self.m or other.degree != self.degree:
            raise FrameError("forms must share dimension and degree")

    def __add__(self, other):
        self._check(other)
        return KForm(self.m, self.degree, self.arr + other.arr)

    def __sub__(self, other):
        self._check(other)
        return KForm(self.m, self.degree, self.arr - other.arr)

    def __neg__(self):
        return KForm(self.m, self.degree, -self.arr)

    def __mul__(self, scalar):
        return KForm(self.m, self.degree, self.arr * scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        return self.m == other.m and self.degree == other.degree and arrays_equal(self.arr, other.arr)

    __hash__ = None

    def is_zero(self) -> bool:
        return all_zero(self.arr)

    def wedge(self, other: "KForm") -> "KForm":
        p, q = self.degree, other.degree
        if p + q > 4:
            raise FrameError("wedge product would exceed degree 4")
        if p == 0:
            return KForm(self.m, q, other.arr * self.arr[()])
        if q == 0:
            return KForm(self.m, p, self.arr * other.arr[()])
        comps = {}
        for idx in itertools.combinations(range(self.m), p + q):
            total = Fraction(0)
            for pos in itertools.combinations(range(p + q), p):
                rest = tuple(a for a in range(p + q) if a not in pos)
                a = self.arr[tuple(idx[k] for k in pos)]
                if a == 0:
                    continue
                b = other.arr[tuple(idx[k] for k in rest)]
                if b == 0:
                    continue
                sign = -1 if (sum(pos) - p * (p - 1) // 2) % 2 else 1
                total = total + (a * b if sign > 0 else -(a * b))
            if total != 0:
                comps[idx] = total
        return KForm.from_components(self.m, p + q, comps)

    def __xor__(self, other):
        return self.wedge(other)

    def pullback(self, matrix) -> "KForm":
        """``eta(M., M., ...)`` for a constant endomorphism ``M`` (columns = images)."""
        mat = np.asarray(matrix, dtype=object)
        out = self.arr
        for axis in range(self.degree):
            out = np.moveaxis(np.tensordot(out, mat, axes=([axis], [0])), -1, axis)
        return KForm(self.m, self.degree, out)

    def insert(self, X) -> "KForm":
        """Interior product ``eta(X, ...)``."""
        if self.degree == 0:
            raise FrameError("cannot contract a 0-form")
        arr = np.tensordot(np.asarray(X, dtype=object), self.arr, axes=([0], [0]))
        return KForm(self.m, self.degree - 1, arr)

    def __repr__(self):
        terms = ", ".join(
            f"e^{''.join(str(i + 1) for i in idx)}: {v}" for idx, v in self.components().items())
        return f"KForm(deg={self.degree}, {{{terms}}})"


def exterior_derivative(fa: FrameAlgebra, eta: KForm) -> KForm:
    """Frame formula for ``d``: derivative terms plus bracket terms, no 1/(k+1) factor."""
    k = eta.degree
    if k > 3:
        raise FrameError("exterior derivative only for degree <= 3")
    if eta.m != fa.m:
        raise FrameError("form and frame have different dimensions")
    f = fa.brackets
    comps = {}
    for idx in itertools.combinations(range(fa.m), k + 1):
        total = Fraction(0)
        if fa.ring == SPHERE:
            for a in range(k + 1):
                rest = idx[:a] + idx[a + 1:]
                value = eta.arr[rest] if k else eta.arr[()]
                if value != 0:
                    term = fa.act(idx[a], value)
                    total = total + (term if a % 2 == 0 else -term)
        if k:
            for a in range(k + 1):
                for b in range(a + 1, k + 1):
                    rest = tuple(idx[c] for c in range(k + 1) if c not in (a, b))
                    s = Fraction(0)
                    for c in range(fa.m):
                        coeff = f[idx[a], idx[b], c]
                        if coeff != 0:
                            value = eta.arr[(c,) + rest]
                            if value != 0:
                                s = s + coeff * value
                    total = total + (s if (a + b) % 2 == 0 else -s)
        if total != 0:
            comps[idx] = total
    return KForm.from_components(fa.m, k + 1, comps)


def lie_derivative_metric(fa: FrameAlgebra, g, X) -> np.ndarray:
    """``(L_X g)(e_j, e_k)`` for a constant metric."""
    g = np.asarray(g, dtype=object)
    m = fa.m
    out = zeros(m, m)
    cols = [fa.bracket(X, fa.frame(j)) for j in range(m)]
    for j in range(m):
        for k in range(m):
            out[j, k] = -(cols[j] @ g[:, k]) - (g[j, :] @ cols[k])
    return out


# ---------------------------------------------------------------------------
# Hermitian structures


@dataclass(eq=False)
class HermitianStructure:
    """Constant metric ``g`` and endomorphism ``J`` on the frame (column ``i`` of ``J`` is ``J e_i``)."""

    g: np.ndarray
    J: np.ndarray

    def __post_init__(self):
        self.g = to_object(self.g)
        self.J = to_object(self.J)
        m = self.g.shape[0]
        if self.g.shape != (m, m) or self.J.shape != (m, m):
            raise FrameError("metric and J must be square matrices of the same size")
        for x in itertools.chain(self.g.flat, self.J.flat):
            if not isinstance(x, Fraction):
                raise RingMismatchError("metric and J entries must be rational constants")

    @property
    def m(self) -> int:
        return self.g.shape[0]

    def inner(self, X, Y):
        return np.asarray(X, dtype=object) @ self.g @ np.asarray(Y, dtype=object)

    def apply_J(self, X) -> np.ndarray:
        return self.J @ np.asarray(X, dtype=object)

    def lower(self, X) -> np.ndarray:
        """Covector ``g(X, .)``."""
        return self.g @ np.asarray(X, dtype=object)

    def raise_index(self, covector) -> np.ndarray:
        return self.g_inverse @ np.asarray(covector, dtype=object)

    @property
    def g_inverse(self) -> np.ndarray:
        if not hasattr(self, "_ginv"):
            self._ginv = linalg.inverse(self.g)
        return self._ginv

    def checks(self) -> dict[str, bool]:
        m = self.m
        eye = to_object(np.eye(m, dtype=int))
        out = {
            "J^2 = -I": arrays_equal(self.J @ self.J, -eye),
            "g symmetric": arrays_equal(self.g, self.g.T),
            "g positive definite": False,
            "g(J.,J.) = g": arrays_equal(self.J.T @ self.g @ self.J, self.g),
        }
        if out["g symmetric"]:
            out["g positive definite"] = linalg.is_positive_definite(self.g)
        omega = self.J.T @ self.g
        out["omega nondegenerate"] = linalg.determinant(omega) != 0
        return out

    def is_valid(self) -> bool:
        return all(self.checks().values())


def fundamental_form(H: HermitianStructure) -> KForm:
    """``omega(X, Y) = g(JX, Y)``."""
    return KForm(H.m, 2, H.J.T @ H.g)


@dataclass
class NijenhuisReport:
    zero: bool
    worst: tuple[int, int, int, object] | None = None

    def __bool__(self):
        return self.zero


def nijenhuis(fa: FrameAlgebra, J) -> NijenhuisReport:
    """``N(X,Y) = [JX,JY] - [X,Y] - J([JX,Y] + [X,JY])`` on all frame pairs."""
    J = to_object(J)
    m = fa.m
    frame = [fa.frame(i) for i in range(m)]
    Jframe = [J[:, i] for i in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            val = (fa.bracket(Jframe[i], Jframe[j]) - fa.bracket(frame[i], frame[j])
                   - J @ (fa.bracket(Jframe[i], frame[j]) + fa.bracket(frame[i], Jframe[j])))
            hit = first_nonzero(val)
            if hit is not None:
                (k,), value = hit
                return NijenhuisReport(False, (i, j, k, value))
    return NijenhuisReport(True)


# ---------------------------------------------------------------------------
# Lee forms


@dataclass(eq=False)
class LeeData:
    """Lee form ``theta`` with its metric dual ``A`` and ``JA``."""

    theta: KForm
    A: np.ndarray
    JA: np.ndarray
    norm_squared: object
    J_theta: KForm = field(repr=False)

    @property
    def is_kahler(self) -> bool:
        return self.theta.is_zero()


def lee_data(H: HermitianStructure, theta) -> LeeData:
    if not isinstance(theta, KForm):
        theta = KForm.from_covector(theta)
    A = H.raise_index(theta.arr)
    JA = H.apply_J(A)
    norm = theta(A)
    # (J theta)(X) = -theta(JX)
    jtheta = KForm(H.m, 1, -(H.J.T @ theta.arr))
    return LeeData(theta, A, JA, norm, jtheta)


def verify_lck(fa: FrameAlgebra, H: HermitianStructure, theta) -> bool:
    """``d omega = theta ^ omega`` and ``d theta = 0`` identically."""
    if not isinstance(theta, KForm):
        theta = KForm.from_covector([fa.coerce(t) for t in theta])
    omega = fundamental_form(H)
    d_omega = exterior_derivative(fa, omega)
    return d_omega == theta.wedge(omega) and exterior_derivative(fa, theta).is_zero()


def wedge_omega_matrix(omega: KForm) -> tuple[list[tuple[int, ...]], list[list]]:
    """Matrix of ``tau -> tau ^ omega`` from 1-forms to 3-forms (rows = increasing triples)."""
    m = omega.m
    rows, triples = [], []
    for a, b, c in itertools.combinations(range(m), 3):
        row = [Fraction(0)] * m
        row[a] += omega.arr[b, c]
        row[b] -= omega.arr[a, c]
        row[c] += omega.arr[a, b]
        rows.append(row)
        triples.append((a, b, c))
    return triples, rows


def solve_lee_form(fa: FrameAlgebra, H: HermitianStructure) -> LeeData:
    """Solve ``d omega = theta ^ omega`` for a constant 1-form ``theta``.

    Returns Lee data with ``theta = 0`` for Kähler input. Raises
    :class:`NotLCKError` when no solution exists and :class:`NotClosedError`
    when the solution is not closed.
    """
    if fa.ring != CONSTANTS:
        raise RingMismatchError("automatic Lee form solving needs the constants ring")
    if fa.m < 4:
        raise FrameError("Lee form is only determined in dimension >= 4")
    omega = fundamental_form(H)
    d_omega = exterior_derivative(fa, omega)
    triples, rows = wedge_omega_matrix(omega)
    rhs = [d_omega.arr[t] for t in triples]
    sol = linalg.solve(rows, rhs)
    if sol is None:
        raise NotLCKError("d(omega) is not of the form theta ^ omega")
    theta = KForm.from_covector(sol)
    if not exterior_derivative(fa, theta).is_zero():
        raise NotClosedError("the solution of d(omega) = theta ^ omega is not closed")
    return lee_data(H, theta)


def _gram_schmidt(H: HermitianStructure, vectors: Iterable) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    for v in vectors:
        w = to_object(v)
        for u in out:
            w = w - (H.inner(w, u) / H.inner(u, u)) * u
        if not all_zero(w):
            out.append(w)
    return out


def distribution_basis(H: HermitianStructure, lee: LeeData) -> list[np.ndarray]:
    """g-orthogonal basis of the complement of ``span{A, JA}`` (constant coefficients)."""
    if lee.is_kahler:
        raise DegenerateLeeError("theta = 0: the distribution is undefined")
    for x in itertools.chain(lee.A, lee.JA):
        if not isinstance(x, Fraction):
            raise RingMismatchError("distribution basis needs constant Lee data")
    rows = [list(H.lower(lee.A)), list(H.lower(lee.JA))]
    return _gram_schmidt(H, linalg.nullspace(rows, H.m))


def projected_frame(H: HermitianStructure, lee: LeeData) -> list[np.ndarray]:
    """Projections of the frame fields onto the complement of ``span{A, JA}``.

    They span the distribution over the ring even when ``A`` has function
    coefficients; requires ``|A|^2`` to be a nonzero constant.
    """
    norm = lee.norm_squared
    if isinstance(norm, SpherePolynomial):
        if not norm.is_constant():
            raise FrameError("|A|^2 is not constant")
        norm = norm.constant_value()
    if norm == 0:
        raise DegenerateLeeError("theta = 0: the distribution is undefined")
    out = []
    for i in range(H.m):
        e = basis_vector(H.m, i)
        x = e - (lee.theta.arr[i] / norm) * lee.A - (H.inner(lee.JA, e) / norm) * lee.JA
        out.append(x)
    return out
