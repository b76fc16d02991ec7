"""Holonomy algebras: Ambrose-Singer closure, curvature spans at a point, classification."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from . import linalg
from .connections import Connection, Curvature
from .frames import CONSTANTS, RingMismatchError, arrays_equal, zeros
from .rings import QuadraticNumber, SpherePolynomial, evaluate_uniform

MAX_STEPS_ENV = "LCKHOLONOMY_MAX_CLOSURE_STEPS"


class ClosureLimitError(RuntimeError):
    pass


class MatrixSubspace:
    """Span of m x m matrices kept as a reduced echelon basis of flattened vectors."""

    def __init__(self, m: int, d: int = 1):
        self.m = m
        self.d = d
        self._echelon = linalg.EchelonBasis(m * m)
        self.generators: list[np.ndarray] = []

    @property
    def field(self) -> str:
        return "Q" if self.d == 1 else f"Q(sqrt{self.d})"

    @property
    def dimension(self) -> int:
        return len(self._echelon)

    def __len__(self):
        return self.dimension

    def _flatten(self, mat) -> list:
        mat = np.asarray(mat, dtype=object)
        if mat.shape != (self.m, self.m):
            raise ValueError(f"expected a {self.m}x{self.m} matrix")
        return list(mat.reshape(-1))

    def add(self, mat) -> bool:
        grew = self._echelon.add(self._flatten(mat))
        if grew:
            self.generators.append(np.asarray(mat, dtype=object))
        return grew

    def contains(self, mat) -> bool:
        return self._echelon.contains(self._flatten(mat))

    def basis(self) -> list[np.ndarray]:
        """Echelon basis, reshaped back into matrices."""
        return [np.array(row, dtype=object).reshape(self.m, self.m) for row in self._echelon.rows]

    def same_span(self, other: "MatrixSubspace") -> bool:
        return (self.dimension == other.dimension
                and all(other.contains(b) for b in self.basis()))


def _max_steps() -> int | None:
    raw = os.environ.get(MAX_STEPS_ENV)
    return int(raw) if raw else None


def curvature_generators(R: Curvature) -> list[np.ndarray]:
    return [R.matrix(i, j) for i, j in itertools.combinations(range(R.m), 2)]


def ambrose_singer_closure(conn: Connection, R: Curvature, *, order=None) -> MatrixSubspace:
    """Smallest subspace containing every ``R(e_i, e_j)`` and closed under
    ``X -> [nabla_{e_k}, X]`` and internal commutators (left-invariant case).

    ``order`` optionally permutes the seed generators; the result does not
    depend on it.
    """
    if conn.fa.ring != CONSTANTS:
        raise RingMismatchError("Ambrose-Singer closure needs constant coefficients")
    m = conn.m
    N = [conn.matrix(i) for i in range(m)]
    seeds = curvature_generators(R)
    if order is not None:
        seeds = [seeds[k] for k in order]
    span = MatrixSubspace(m)
    queue = list(seeds)
    limit = _max_steps()
    steps = 0
    while queue:
        X = queue.pop(0)
        steps += 1
        if limit is not None and steps > limit:
            raise ClosureLimitError(f"closure did not finish within {limit} steps")
        if not span.add(X):
            continue
        for Nk in N:
            queue.append(Nk @ X - X @ Nk)
        for B in span.generators[:-1]:
            queue.append(X @ B - B @ X)
    return span


def evaluate_matrix(mat, m: int) -> np.ndarray:
    """Entrywise value at the point with every coordinate ``1/sqrt(m)``."""
    mat = np.asarray(mat, dtype=object)
    out = np.empty(mat.shape, dtype=object)
    for idx in np.ndindex(mat.shape):
        x = mat[idx]
        out[idx] = evaluate_uniform(x, m) if isinstance(x, SpherePolynomial) else QuadraticNumber(x, 0, m)
    return out


def curvature_span_at_point(R: Curvature, m: int | None = None) -> MatrixSubspace:
    """Span of the curvature endomorphisms at the uniform point, over ``Q(sqrt m)``."""
    m = m or R.m
    for x in R.arr.flat:
        if isinstance(x, SpherePolynomial) and x.m != m:
            raise RingMismatchError(f"curvature lives in {x.m} variables, not {m}")
    span = MatrixSubspace(R.m, m)
    for mat in curvature_generators(R):
        span.add(evaluate_matrix(mat, m))
    return span


@dataclass
class ClosureReport:
    dimension: int
    basis: list
    flags: dict = field(default_factory=dict)
    traces_J: list = field(default_factory=list)

    def __getitem__(self, key):
        return self.flags[key]


def _zero(mat) -> bool:
    return all(x == 0 for x in np.asarray(mat, dtype=object).flat)


def classify(span: MatrixSubspace, g, J, A=None, JA=None, phi=None) -> ClosureReport:
    """Membership tests of every basis element inside u(n) and the Lee-field stabilizer."""
    g = np.asarray(g, dtype=object)
    J = np.asarray(J, dtype=object)
    basis = span.basis()
    traces = [sum((J @ b)[k, k] for k in range(span.m)) for b in basis]
    flags = {
        "is_skew_symmetric_wrt_g": all(_zero(b.T @ g + g @ b) for b in basis),
        "commutes_with_J": all(_zero(b @ J - J @ b) for b in basis),
        "annihilates_A": A is None or all(_zero(b @ np.asarray(A, dtype=object)) for b in basis),
        "annihilates_JA": JA is None or all(_zero(b @ np.asarray(JA, dtype=object)) for b in basis),
        "inside_su": all(t == 0 for t in traces),
        "contains_phi": phi is not None and span.contains(phi),
    }
    return ClosureReport(span.dimension, basis, flags, traces)


def is_closed(span: MatrixSubspace, conn: Connection) -> bool:
    """True iff the span is already invariant under both kinds of commutators."""
    N = [conn.matrix(i) for i in range(conn.m)]
    basis = span.basis()
    for X in basis:
        if not all(span.contains(Nk @ X - X @ Nk) for Nk in N):
            return False
    return all(span.contains(X @ Y - Y @ X) for X, Y in itertools.combinations(basis, 2))


# ---------------------------------------------------------------------------
# Hopf independence systems


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(1, n + 1), 2))


def hopf_system1(n: int) -> np.ndarray:
    """Coefficient matrix of the first system (pairs ``r<s`` among ``1..n``)."""
    pairs = _pairs(n)
    index = {p: k for k, p in enumerate(pairs)}
    M = zeros(len(pairs), len(pairs))
    for row, (r, s) in enumerate(pairs):
        M[row, index[r, s]] += -(n - 2)
        for j in range(r + 1, n + 1):
            if j != s:
                M[row, index[r, j]] += 1
        for i in range(1, r):
            M[row, index[i, r]] += 1
        for j in range(s + 1, n + 1):
            M[row, index[s, j]] += 1
        for i in range(1, s):
            if i != r:
                M[row, index[i, s]] += 1
    return M


def hopf_system1_inverse(n: int, M, *, disjoint_sign: int = 1) -> np.ndarray:
    """Closed-form inverse of :func:`hopf_system1`.

    Entries for disjoint pairs (``M = 0``) are ``+2/(n(n-2))``; passing
    ``disjoint_sign=-1`` gives the variant with the opposite sign, which is
    only an inverse for ``n = 3`` (where no disjoint pairs exist).
    """
    size = M.shape[0]
    out = zeros(size, size)
    den = n * (n - 2)
    for a, b in itertools.product(range(size), repeat=2):
        if a == b:
            out[a, b] = Fraction(-(2 * n - 6), den)
        elif M[a, b] == 1:
            out[a, b] = Fraction(-(n - 6), 2 * den)
        else:
            out[a, b] = Fraction(2 * disjoint_sign, den)
    return out


def hopf_system2(n: int) -> np.ndarray:
    """Coefficient matrix of the second system (pairs ``r<s`` among ``1..n-1``)."""
    top = n - 1
    pairs = _pairs(top)
    index = {p: k for k, p in enumerate(pairs)}
    M = zeros(len(pairs), len(pairs))
    for row, (r, s) in enumerate(pairs):
        M[row, index[r, s]] += -(n - 2)
        for j in range(r + 1, top + 1):
            if j != s:
                M[row, index[r, j]] += 1
        for i in range(1, r):
            M[row, index[i, r]] -= 1
        for j in range(s + 1, top + 1):
            M[row, index[s, j]] -= 1
        for i in range(1, s):
            if i != r:
                M[row, index[i, s]] += 1
    return M


def hopf_system2_inverse(n: int, M) -> np.ndarray:
    size = M.shape[0]
    out = zeros(size, size)
    for a, b in itertools.product(range(size), repeat=2):
        if a == b:
            out[a, b] = Fraction(-3, n)
        elif M[a, b] != 0:
            out[a, b] = -Fraction(M[a, b]) / n
    return out


@dataclass
class IndependenceReport:
    n: int
    system1_identity: bool
    system2_identity: bool
    system1_matches_curvature: bool | None = None
    system2_matches_curvature: bool | None = None
    rank_mixed: int | None = None
    rank_odd: int | None = None
    rank_union: int | None = None
    expected_mixed: int = 0
    expected_odd: int = 0

    @property
    def ok(self) -> bool:
        checks = [self.system1_identity, self.system2_identity]
        for value in (self.system1_matches_curvature, self.system2_matches_curvature):
            if value is not None:
                checks.append(value)
        if self.rank_mixed is not None:
            checks += [self.rank_mixed == self.expected_mixed, self.rank_odd == self.expected_odd,
                       self.rank_union == self.expected_mixed + self.expected_odd]
        return all(checks)


def _identity(k: int) -> np.ndarray:
    out = zeros(k, k)
    for a in range(k):
        out[a, a] = Fraction(1)
    return out


def independence_system_hopf(n: int, R: Curvature | None = None) -> IndependenceReport:
    """Both linear systems with their closed-form inverses, plus direct ranks when ``R`` is given."""
    if n < 3:
        raise ValueError("the independence systems need n >= 3")
    M1 = hopf_system1(n)
    M2 = hopf_system2(n)
    rep = IndependenceReport(
        n,
        arrays_equal(M1 @ hopf_system1_inverse(n, M1), _identity(M1.shape[0])),
        arrays_equal(M2 @ hopf_system2_inverse(n, M2), _identity(M2.shape[0])),
        expected_mixed=comb(n, 2),
        expected_odd=comb(n - 1, 2),
    )
    if R is None:
        return rep
    m = 2 * n
    mixed = {(i, j): evaluate_matrix(R.matrix(2 * i - 2, 2 * j - 1), m) for i, j in _pairs(n)}
    odd = {(i, j): evaluate_matrix(R.matrix(2 * i - 2, 2 * j - 2), m) for i, j in _pairs(n - 1)}
    # the (rs) equation is n * g(sum c_ij R_ij U_{2r-1}, U_{2s}) (resp. U_{2s-1})
    ok1 = all(n * mixed[i, j][2 * s - 1, 2 * r - 2] == M1[a, b]
              for a, (r, s) in enumerate(_pairs(n)) for b, (i, j) in enumerate(_pairs(n)))
    ok2 = all(n * odd[i, j][2 * s - 2, 2 * r - 2] == M2[a, b]
              for a, (r, s) in enumerate(_pairs(n - 1)) for b, (i, j) in enumerate(_pairs(n - 1)))
    rep.system1_matches_curvature = ok1
    rep.system2_matches_curvature = ok2
    span_mixed = MatrixSubspace(m, m)
    for mat in mixed.values():
        span_mixed.add(mat)
    span_odd = MatrixSubspace(m, m)
    for mat in odd.values():
        span_odd.add(mat)
    union = MatrixSubspace(m, m)
    for mat in itertools.chain(mixed.values(), odd.values()):
        union.add(mat)
    rep.rank_mixed = span_mixed.dimension
    rep.rank_odd = span_odd.dimension
    rep.rank_union = union.dimension
    return rep
