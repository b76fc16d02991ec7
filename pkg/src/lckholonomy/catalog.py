"""Example families and transcribed expected values for their tensors."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from .frames import (
    CONSTANTS,
    SPHERE,
    FrameAlgebra,
    FrameError,
    HermitianStructure,
    KForm,
    LeeData,
    basis_vector,
    lee_data,
    zeros,
)
from .rings import SpherePolynomial, as_fraction


class CatalogError(FrameError):
    pass


@dataclass(eq=False)
class CatalogEntry:
    name: str
    params: dict
    fa: FrameAlgebra
    H: HermitianStructure
    lee: LeeData
    lck: bool
    vaisman: bool
    labels: list[str]
    solvable: bool = False

    @property
    def m(self) -> int:
        return self.fa.m

    @property
    def kahler(self) -> bool:
        return self.lee.is_kahler

    @property
    def ident(self) -> str:
        if not self.params:
            return self.name
        parts = []
        for key, value in self.params.items():
            if isinstance(value, (list, tuple)):
                value = ",".join(str(v) for v in value)
            parts.append(f"{key}={value}")
        return f"{self.name}(" + ", ".join(parts) + ")"


def _table(m: int) -> np.ndarray:
    return zeros(m, m, m)


def _set_bracket(f: np.ndarray, i: int, j: int, vec: dict[int, object]) -> None:
    for k, v in vec.items():
        f[i, j, k] = f[i, j, k] + v
        f[j, i, k] = f[j, i, k] - v


def _complex_structure(m: int, pairs: Sequence[tuple[int, int]]) -> np.ndarray:
    J = zeros(m, m)
    for a, b in pairs:
        J[b, a] = Fraction(1)
        J[a, b] = Fraction(-1)
    return J


def _identity(m: int) -> np.ndarray:
    g = zeros(m, m)
    for i in range(m):
        g[i, i] = Fraction(1)
    return g


def _fractions(values, count: int, what: str) -> list[Fraction]:
    out = [as_fraction(v) for v in values]
    if len(out) != count:
        raise CatalogError(f"{what} needs {count} values, got {len(out)}")
    return out


# ---------------------------------------------------------------------------
# constructors


def make_heisenberg(n: int, a: Sequence) -> CatalogEntry:
    """Basis ``A, B, e1..e_{2n-2}`` (indices 0, 1, 2..), orthonormal, ``JA = B``."""
    if n < 2:
        raise CatalogError("heisenberg needs n >= 2")
    a = _fractions(a, n - 1, "heisenberg a")
    m = 2 * n
    f = _table(m)
    for i, ai in enumerate(a):
        odd, even = 2 + 2 * i, 3 + 2 * i
        _set_bracket(f, 0, odd, {even: ai})
        _set_bracket(f, 0, even, {odd: -ai})
        _set_bracket(f, odd, even, {1: Fraction(1)})
    fa = FrameAlgebra(m, CONSTANTS, f)
    J = _complex_structure(m, [(0, 1)] + [(2 + 2 * i, 3 + 2 * i) for i in range(n - 1)])
    H = HermitianStructure(_identity(m), J)
    lee = lee_data(H, KForm.coframe(m, 0))
    labels = ["A", "B"] + [f"e{k}" for k in range(1, m - 1)]
    return CatalogEntry("heisenberg", {"n": n, "a": a}, fa, H, lee, True, True, labels, True)


def make_inoue(mu, y) -> CatalogEntry:
    mu, y = as_fraction(mu), as_fraction(y)
    if mu == 0:
        raise CatalogError("inoue needs mu != 0 (mu = 0 gives a Kahler structure, not LCK)")
    f = _table(4)
    _set_bracket(f, 0, 1, {1: mu})
    _set_bracket(f, 0, 2, {2: -mu / 2, 3: y})
    _set_bracket(f, 0, 3, {2: -y, 3: -mu / 2})
    fa = FrameAlgebra(4, CONSTANTS, f)
    H = HermitianStructure(_identity(4), _complex_structure(4, [(0, 1), (2, 3)]))
    lee = lee_data(H, KForm.coframe(4, 0) * mu)
    return CatalogEntry("inoue", {"mu": mu, "y": y}, fa, H, lee, True, False,
                        ["e1", "e2", "e3", "e4"], True)


def make_ot(s: int, r: Sequence) -> CatalogEntry:
    """Basis ``A_1..A_s, B_1..B_s, C1, C2``."""
    if s < 1:
        raise CatalogError("ot needs s >= 1")
    r = _fractions(r, s, "ot r")
    m = 2 * s + 2
    c1, c2 = 2 * s, 2 * s + 1
    half = Fraction(1, 2)
    f = _table(m)
    for i in range(s):
        _set_bracket(f, i, s + i, {s + i: Fraction(1)})
        _set_bracket(f, i, c1, {c1: -half, c2: r[i]})
        _set_bracket(f, i, c2, {c1: -r[i], c2: -half})
    fa = FrameAlgebra(m, CONSTANTS, f)
    g = zeros(m, m)
    for i, j in itertools.product(range(s), repeat=2):
        g[i, j] = g[s + i, s + j] = Fraction(2 if i == j else 1)
    g[c1, c1] = g[c2, c2] = Fraction(1)
    J = _complex_structure(m, [(i, s + i) for i in range(s)] + [(c1, c2)])
    H = HermitianStructure(g, J)
    theta = zeros(m)
    theta[:s] = Fraction(1)
    lee = lee_data(H, theta)
    labels = [f"A{i}" for i in range(1, s + 1)] + [f"B{i}" for i in range(1, s + 1)] + ["C1", "C2"]
    return CatalogEntry("ot", {"s": s, "r": r}, fa, H, lee, True, False, labels, True)


def hopf_variables(n: int) -> list[SpherePolynomial]:
    return [SpherePolynomial.variable(2 * n, k) for k in range(1, 2 * n + 1)]


def make_hopf(n: int) -> CatalogEntry:
    """Frame ``U_1..U_{2n}`` on S^1 x S^{2n-1}, identity metric, Lee form ``-2 alpha``."""
    if n < 2:
        raise CatalogError("hopf needs n >= 2")
    m = 2 * n
    x = hopf_variables(n)
    f = _table(m)
    for i, j in itertools.combinations(range(m), 2):
        _set_bracket(f, i, j, {j: x[i], i: -x[j]})
    fa = FrameAlgebra(m, SPHERE, f)
    H = HermitianStructure(_identity(m), _complex_structure(m, [(2 * i, 2 * i + 1) for i in range(n)]))
    theta = np.array([xk * -2 for xk in x], dtype=object)
    lee = lee_data(H, KForm(m, 1, theta))
    return CatalogEntry("hopf", {"n": n}, fa, H, lee, True, True, [f"U{k}" for k in range(1, m + 1)])


def hopf_H(n: int) -> np.ndarray:
    """``H = sum x_k U_k``, the metric dual of ``alpha``."""
    return np.array(hopf_variables(n), dtype=object)


def make_abelian(m: int = 4) -> CatalogEntry:
    """Flat Kähler frame: zero brackets, identity metric, standard J."""
    if m < 2 or m % 2:
        raise CatalogError("abelian needs an even dimension >= 2")
    fa = FrameAlgebra(m, CONSTANTS, _table(m))
    H = HermitianStructure(_identity(m), _complex_structure(m, [(2 * i, 2 * i + 1) for i in range(m // 2)]))
    lee = lee_data(H, KForm(m, 1))
    return CatalogEntry("abelian", {"m": m}, fa, H, lee, True, False,
                        [f"e{k}" for k in range(1, m + 1)], True)


def normalized(entry: CatalogEntry) -> CatalogEntry:
    """Copy with the metric rescaled by ``|A|^2`` so that ``|A| = 1``.

    A constant rescaling leaves ``theta``, ``J``, the Levi-Civita and Bismut
    connections and all (1,3) curvature tensors unchanged.
    """
    norm = entry.lee.norm_squared
    if isinstance(norm, SpherePolynomial):
        if not norm.is_constant():
            raise CatalogError("|A|^2 is not constant")
        norm = norm.constant_value()
    if norm == 0:
        raise CatalogError("cannot normalize a Kähler entry")
    if norm == 1:
        return entry
    H = HermitianStructure(entry.H.g * norm, entry.H.J)
    lee = lee_data(H, entry.lee.theta)
    return replace(entry, H=H, lee=lee, params=dict(entry.params, normalized=True))


def make_entry(name: str, **params) -> CatalogEntry:
    """Build a catalog entry from a name and keyword parameters."""
    name = name.lower()
    try:
        if name == "heisenberg":
            n = int(params.get("n") or 2)
            a = params.get("a")
            return make_heisenberg(n, a if a is not None else [1] * (n - 1))
        if name == "inoue":
            mu = params.get("mu")
            y = params.get("y")
            return make_inoue(1 if mu is None else mu, 1 if y is None else y)
        if name == "ot":
            s = int(params.get("s") or 1)
            r = params.get("r")
            return make_ot(s, r if r is not None else [1] * s)
        if name == "hopf":
            return make_hopf(int(params.get("n") or 2))
        if name == "abelian":
            return make_abelian(int(params.get("m") or 4))
    except (TypeError, ValueError) as exc:
        raise CatalogError(str(exc)) from exc
    raise CatalogError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")


EXAMPLES = ("heisenberg", "inoue", "ot", "hopf", "abelian")


# ---------------------------------------------------------------------------
# expected values


@dataclass
class OracleTables:
    """Expected values keyed by 0-based frame tuples.

    ``connections[name][(i, j)]`` is ``nabla_{e_i} e_j``;
    ``curvature[name][(i, j, k)]`` is ``R(e_i, e_j) e_k`` for ``i < j``;
    ``ricci[name]`` is a full matrix.
    """

    connections: dict = field(default_factory=dict)
    curvature: dict = field(default_factory=dict)
    ricci: dict = field(default_factory=dict)
    matrices: dict = field(default_factory=dict)


def _vec(m: int, comps: dict[int, object]) -> np.ndarray:
    v = zeros(m)
    for k, c in comps.items():
        v[k] = v[k] + c
    return v


def _J_complete(J: np.ndarray, table: dict, m: int, paired: dict[int, int]) -> None:
    """Fill ``nabla_X (J Y) = J nabla_X Y`` for every ``Y`` with a known partner."""
    for (i, j), v in list(table.items()):
        k = paired.get(j)
        if k is not None and (i, k) not in table:
            table[i, k] = J @ v


def _heisenberg_oracles(entry: CatalogEntry) -> OracleTables:
    from .connections import phi_tensor

    m = entry.m
    g = entry.H.g
    phi = phi_tensor(entry.H, entry.lee)
    gphi = phi.T @ g
    curv = {}
    for i, j in itertools.combinations(range(m), 2):
        for k in range(m):
            curv[i, j, k] = phi[:, k] * gphi[i, j]
    n = m // 2
    th = entry.lee.theta.arr
    thJ = entry.H.J.T @ th
    ricb = -g + np.multiply.outer(th, th) + np.multiply.outer(thJ, thJ)
    ricg = g * Fraction(-1, 2) + np.multiply.outer(th, th) * Fraction(1, 2) \
        + np.multiply.outer(thJ, thJ) * Fraction(n, 2)
    phi_block = zeros(m, m)
    for i in range(1, n):
        phi_block[2 * i + 1, 2 * i] = Fraction(1)
        phi_block[2 * i, 2 * i + 1] = Fraction(-1)
    return OracleTables(curvature={"bismut": curv}, ricci={"bismut": ricb, "levi-civita": ricg},
                        matrices={"phi": phi_block})


def _inoue_oracles(entry: CatalogEntry) -> OracleTables:
    mu, y = entry.params["mu"], entry.params["y"]
    h = mu / 2
    q = mu * mu / 4
    M = lambda rows: np.array([[as_fraction(v) for v in r] for r in rows], dtype=object)  # noqa: E731
    nab = {
        0: M([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, -y], [0, 0, y, 0]]),
        1: M([[0, mu, 0, 0], [-mu, 0, 0, 0], [0, 0, 0, h], [0, 0, -h, 0]]),
        2: M([[0, 0, -h, 0], [0, 0, 0, -h], [h, 0, 0, 0], [0, h, 0, 0]]),
        3: M([[0, 0, 0, -h], [0, 0, h, 0], [0, -h, 0, 0], [h, 0, 0, 0]]),
    }
    r12 = M([[0, -mu * mu, 0, 0], [mu * mu, 0, 0, 0], [0, 0, 0, -2 * q], [0, 0, 2 * q, 0]])
    r13 = M([[0, 0, -q, 0], [0, 0, 0, -q], [q, 0, 0, 0], [0, q, 0, 0]])
    r14 = M([[0, 0, 0, -q], [0, 0, q, 0], [0, -q, 0, 0], [q, 0, 0, 0]])
    r34 = M([[0, 2 * q, 0, 0], [-2 * q, 0, 0, 0], [0, 0, 0, -2 * q], [0, 0, 2 * q, 0]])
    curv_mats = {(0, 1): r12, (0, 2): r13, (1, 3): -r13, (0, 3): r14, (1, 2): r14, (2, 3): r34}
    conn = {(i, j): nab[i][:, j] for i in range(4) for j in range(4)}
    curv = {(i, j, k): mat[:, k] for (i, j), mat in curv_mats.items() for k in range(4)}
    return OracleTables(connections={"bismut": conn}, curvature={"bismut": curv},
                        matrices={f"nabla_b_{i + 1}": nab[i] for i in range(4)})


def _ot_oracles(entry: CatalogEntry) -> OracleTables:
    s = entry.params["s"]
    r = entry.params["r"]
    m = entry.m
    J = entry.H.J
    A = [i for i in range(s)]
    B = [s + i for i in range(s)]
    C = [2 * s, 2 * s + 1]
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    A_vec = entry.lee.A
    JA_vec = entry.lee.JA
    e = lambda k: basis_vector(m, k)  # noqa: E731
    d = lambda i, j: 1 if i == j else 0  # noqa: E731

    g_conn = {}
    for i, j in itertools.product(range(s), repeat=2):
        g_conn[A[i], A[j]] = zeros(m)
        g_conn[A[i], B[j]] = -e(B[i]) * half + JA_vec * (half * (1 + d(i, j)))
        g_conn[B[i], A[j]] = -e(B[j]) * (half + d(i, j)) + JA_vec * (half * (1 + d(i, j)))
        g_conn[B[i], B[j]] = ((e(A[i]) + e(A[j])) * half - A_vec) * (1 + d(i, j))
    for i in range(s):
        g_conn[A[i], C[0]] = e(C[1]) * r[i]
        g_conn[A[i], C[1]] = -e(C[0]) * r[i]
        for k in C:
            g_conn[B[i], k] = zeros(m)
            g_conn[k, A[i]] = e(k) * half
            g_conn[k, B[i]] = zeros(m)
    for k in C:
        g_conn[k, k] = -A_vec * half
    g_conn[C[0], C[1]] = zeros(m)
    g_conn[C[1], C[0]] = zeros(m)

    b_conn = {}
    for i, j in itertools.product(range(s), repeat=2):
        b_conn[A[i], A[j]] = zeros(m)
        b_conn[B[i], A[j]] = (-e(B[j]) + JA_vec) * (1 + d(i, j))
    for i in range(s):
        b_conn[A[i], C[0]] = e(C[1]) * r[i]
        b_conn[B[i], C[0]] = -e(C[1]) * half
        for k in C:
            b_conn[k, A[i]] = e(k) * half
    b_conn[C[0], C[0]] = -A_vec * half
    b_conn[C[1], C[0]] = JA_vec * half
    partner = {A[i]: B[i] for i in range(s)}
    partner[C[0]] = C[1]
    _J_complete(J, b_conn, m, partner)

    curv = {}
    den = s + 1
    for i, j in itertools.product(range(s), repeat=2):
        for k in range(m):
            if i < j:
                curv[A[i], A[j], k] = zeros(m)
            if i != j:
                curv[min(A[i], B[j]), max(A[i], B[j]), k] = zeros(m)
    for i in range(s):
        for j in range(s):
            curv[A[i], B[i], A[j]] = (e(B[j]) - JA_vec) * (1 + d(i, j))
        curv[A[i], B[i], C[0]] = e(C[1]) * half
    for i, j in itertools.combinations(range(s), 2):
        for k in range(s):
            curv[B[i], B[j], A[k]] = (e(A[i]) * (1 + d(j, k)) - e(A[j]) * (1 + d(i, k))) / den
        curv[B[i], B[j], C[0]] = zeros(m)
    for i in range(s):
        for k in C:
            for j in range(s):
                curv[A[i], k, A[j]] = e(k) * quarter
        curv[A[i], C[0], C[0]] = -A_vec * quarter
        curv[A[i], C[1], C[0]] = JA_vec * quarter
        for j in range(s):
            curv[B[i], C[0], A[j]] = e(C[1]) * Fraction(-s + 1 + 2 * d(i, j), 4 * den)
            curv[B[i], C[1], A[j]] = e(C[0]) * Fraction(s - 1 - 2 * d(i, j), 4 * den)
        curv[B[i], C[0], C[0]] = e(B[i]) * Fraction(1, 2 * den) - JA_vec * quarter
        curv[B[i], C[1], C[0]] = e(A[i]) * Fraction(1, 2 * den) - A_vec * quarter
        curv[C[0], C[1], A[i]] = -JA_vec * half
    curv[C[0], C[1], C[0]] = e(C[1]) * Fraction(s, 2 * den)
    # remaining columns via R(X, Y) J = J R(X, Y)
    for (a, b, k), v in list(curv.items()):
        partner_k = partner.get(k)
        if partner_k is not None and (a, b, partner_k) not in curv:
            curv[a, b, partner_k] = J @ v
    return OracleTables(connections={"levi-civita": g_conn, "bismut": b_conn},
                        curvature={"bismut": curv})


def _hopf_oracles(entry: CatalogEntry) -> OracleTables:
    n = entry.params["n"]
    m = 2 * n
    J = entry.H.J
    xs = hopf_variables(n)
    x = lambda k: xs[k - 1]  # noqa: E731
    U = lambda k: basis_vector(m, k - 1)  # noqa: E731
    H = hopf_H(n)
    JH = J @ H
    one = SpherePolynomial.constant(m, 1)

    g_conn = {}
    for i, j in itertools.product(range(1, m + 1), repeat=2):
        g_conn[i - 1, j - 1] = H - U(i) * x(i) if i == j else -U(i) * x(j)

    b_conn = {}
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        o_i, e_i, o_j, e_j = 2 * i - 1, 2 * i, 2 * j - 1, 2 * j
        if i != j:
            b_conn[o_i - 1, o_j - 1] = -U(o_i) * x(o_j) + U(e_i) * x(e_j) - U(e_j) * x(e_i)
            b_conn[o_i - 1, e_j - 1] = -U(o_i) * x(e_j) + U(o_j) * x(e_i) - U(e_i) * x(o_j)
            b_conn[e_i - 1, o_j - 1] = -U(o_i) * x(e_j) - U(e_i) * x(o_j) + U(e_j) * x(o_i)
            b_conn[e_i - 1, e_j - 1] = -U(o_j) * x(o_i) + U(o_i) * x(o_j) - U(e_i) * x(e_j)
        else:
            b_conn[o_i - 1, o_i - 1] = H - U(o_i) * x(o_i)
            b_conn[o_i - 1, e_i - 1] = JH - U(e_i) * x(o_i)
            b_conn[e_i - 1, o_i - 1] = -JH - U(o_i) * x(e_i)
            b_conn[e_i - 1, e_i - 1] = H - U(e_i) * x(e_i)

    def P(i, j):
        return one - x(2 * i - 1) ** 2 - x(2 * i) ** 2 - x(2 * j - 1) ** 2 - x(2 * j) ** 2

    others = lambda i, j: [k for k in range(1, n + 1) if k not in (i, j)]  # noqa: E731

    def curv1(i, r):
        """R(U_{2i-1}, U_{2i}) U_{2r-1}."""
        if r == i:
            return zeros(m)
        j = r
        v = U(2 * j) * (P(i, j) * 2)
        for k in others(i, j):
            v = v + U(2 * k - 1) * ((x(2 * j - 1) * x(2 * k) - x(2 * j) * x(2 * k - 1)) * 2)
            v = v - U(2 * k) * ((x(2 * j - 1) * x(2 * k - 1) + x(2 * j) * x(2 * k)) * 2)
        return v

    def curv3(i, j, r):
        """R(U_{2i-1}, U_{2j}) U_{2r-1}, i != j."""
        if r in (i, j):
            a = j if r == i else i
            v = -U(2 * a) * P(i, j)
            for k in others(i, j):
                v = v + U(2 * k - 1) * (x(2 * a) * x(2 * k - 1) - x(2 * a - 1) * x(2 * k))
                v = v + U(2 * k) * (x(2 * a - 1) * x(2 * k - 1) + x(2 * a) * x(2 * k))
            return v
        k = r
        return (U(2 * i - 1) * (x(2 * j - 1) * x(2 * k) - x(2 * j) * x(2 * k - 1))
                + U(2 * i) * (x(2 * j - 1) * x(2 * k - 1) + x(2 * j) * x(2 * k))
                + U(2 * j - 1) * (x(2 * i - 1) * x(2 * k) - x(2 * i) * x(2 * k - 1))
                + U(2 * j) * (x(2 * i - 1) * x(2 * k - 1) + x(2 * i) * x(2 * k))
                - U(2 * k) * ((x(2 * i - 1) * x(2 * j - 1) + x(2 * i) * x(2 * j)) * 2))

    def curv2(i, j, r):
        """R(U_{2i-1}, U_{2j-1}) U_{2r-1}, i != j."""
        if r == i:
            v = -U(2 * j - 1) * P(i, j)
            for k in others(i, j):
                v = v + U(2 * k - 1) * (x(2 * j - 1) * x(2 * k - 1) + x(2 * j) * x(2 * k))
                v = v + U(2 * k) * (x(2 * j - 1) * x(2 * k) - x(2 * j) * x(2 * k - 1))
            return v
        if r == j:
            v = U(2 * i - 1) * P(i, j)
            for k in others(i, j):
                v = v - U(2 * k - 1) * (x(2 * i - 1) * x(2 * k - 1) + x(2 * i) * x(2 * k))
                v = v + U(2 * k) * (x(2 * i) * x(2 * k - 1) - x(2 * i - 1) * x(2 * k))
            return v
        k = r
        return (-U(2 * i - 1) * (x(2 * j - 1) * x(2 * k - 1) + x(2 * j) * x(2 * k))
                + U(2 * i) * (x(2 * j - 1) * x(2 * k) - x(2 * j) * x(2 * k - 1))
                + U(2 * j - 1) * (x(2 * i - 1) * x(2 * k - 1) + x(2 * i) * x(2 * k))
                + U(2 * j) * (x(2 * i) * x(2 * k - 1) - x(2 * i - 1) * x(2 * k))
                + U(2 * k) * ((x(2 * i - 1) * x(2 * j) - x(2 * i) * x(2 * j - 1)) * 2))

    def odd_columns(a, b):
        """R(U_a, U_b) U_{2r-1} for r = 1..n (1-based a < b)."""
        ia, ib = (a + 1) // 2, (b + 1) // 2
        if a % 2 and not b % 2:
            if ia == ib:
                return {r: curv1(ia, r) for r in range(1, n + 1)}
            return {r: curv3(ia, ib, r) for r in range(1, n + 1)}
        if a % 2 and b % 2:
            return {r: curv2(ia, ib, r) for r in range(1, n + 1)}
        if not a % 2 and b % 2:
            return {r: -curv3(ib, ia, r) for r in range(1, n + 1)}
        return {r: curv2(ia, ib, r) for r in range(1, n + 1)}

    curv = {}
    for a, b in itertools.combinations(range(1, m + 1), 2):
        for r, v in odd_columns(a, b).items():
            curv[a - 1, b - 1, 2 * r - 2] = v
            curv[a - 1, b - 1, 2 * r - 1] = J @ v

    ric = zeros(m, m)
    c = -2 * (n - 2)
    for r, s_ in itertools.product(range(1, n + 1), repeat=2):
        oo = (x(2 * r - 1) * x(2 * s_ - 1) + x(2 * r) * x(2 * s_) - (1 if r == s_ else 0)) * c
        oe = (x(2 * r - 1) * x(2 * s_) - x(2 * r) * x(2 * s_ - 1)) * c
        eo = (x(2 * s_ - 1) * x(2 * r) - x(2 * s_) * x(2 * r - 1)) * c
        ric[2 * r - 2, 2 * s_ - 2] = oo
        ric[2 * r - 1, 2 * s_ - 1] = oo
        ric[2 * r - 2, 2 * s_ - 1] = oe
        ric[2 * r - 1, 2 * s_ - 2] = eo
    return OracleTables(connections={"levi-civita": g_conn, "bismut": b_conn},
                        curvature={"bismut": curv}, ricci={"bismut": ric})


def oracle_tables(entry: CatalogEntry) -> OracleTables:
    builders = {
        "heisenberg": _heisenberg_oracles,
        "inoue": _inoue_oracles,
        "ot": _ot_oracles,
        "hopf": _hopf_oracles,
    }
    if entry.name not in builders:
        raise CatalogError(f"no transcribed values for {entry.name!r}")
    return builders[entry.name](entry)


# ---------------------------------------------------------------------------
# OT operator families


@dataclass
class OTOperators:
    S: list
    S_defined: list
    T: dict
    T_defined: dict
    U: list
    V: list


def ot_operators(entry: CatalogEntry, R) -> OTOperators:
    """``S_i`` and ``T_ij`` both from curvature and from their defining action."""
    if entry.name != "ot":
        raise CatalogError("OT operators need an ot entry")
    s = entry.params["s"]
    m = entry.m
    J = entry.H.J
    A = list(range(s))
    B = [s + i for i in range(s)]
    C1, C2 = 2 * s, 2 * s + 1
    half = Fraction(1, 2)
    Rm = lambda a, b: R.matrix(a, b)  # noqa: E731

    S = []
    for i in range(s):
        mat = Rm(A[i], B[i]) * -s
        for k in range(s):
            if k != i:
                mat = mat + Rm(A[k], B[k])
        S.append(mat)

    def with_J(cols: dict[int, np.ndarray]) -> np.ndarray:
        mat = zeros(m, m)
        for k, v in cols.items():
            mat[:, k] = v
        for k, v in cols.items():
            partner = B[k] if k < s else (C2 if k == C1 else None)
            mat[:, partner] = J @ v
        return mat

    S_def = []
    for i in range(s):
        cols = {}
        for j in range(s):
            v = zeros(m)
            if i == j:
                for k in range(s):
                    v[B[k]] = Fraction(-s if k == j else 1)
            cols[A[j]] = v
        cols[C1] = basis_vector(m, C2) * -half
        S_def.append(with_J(cols))

    T, T_def = {}, {}
    den = s + 1
    for i, j in itertools.permutations(range(s), 2):
        RB = Rm(B[i], B[j])
        T[i, j] = S[i] @ RB - RB @ S[i]
        cols = {}
        for l in range(s):
            v = zeros(m)
            if l == i:
                for k in range(s):
                    v[B[k]] = Fraction(-s if k in (i, j) else 1, den)
            elif l == j:
                for k in range(s):
                    v[B[k]] = Fraction(-2 * s if k == i else 2, den)
            else:
                for k in range(s):
                    v[B[k]] = Fraction(-s if k == i else 1, den)
            cols[A[l]] = v
        cols[C1] = zeros(m)
        T_def[i, j] = with_J(cols)

    U_family = [Rm(B[i], C1) for i in range(s)] + [Rm(B[i], C2) for i in range(s)]
    U_family += [Rm(B[i], B[j]) for i, j in itertools.combinations(range(s), 2)]
    V_family = list(S) + [Rm(C1, C2)] + [T[i, j] for i, j in itertools.combinations(range(s), 2)]
    return OTOperators(S, S_def, T, T_def, U_family, V_family)
