"""Verification suites run on catalog entries or user frame descriptions."""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb

import numpy as np

from . import linalg
from .catalog import (
    CatalogEntry,
    CatalogError,
    hopf_H,
    make_entry,
    oracle_tables,
    ot_operators,
)
from .connections import (
    Connection,
    NotSkewError,
    codifferential,
    covariant_derivative,
    curvature,
    eps_rho_family,
    gauduchon_theta_scan,
    j_derivative_split,
    lee_from_codifferential,
    levi_civita,
    metric_defect,
    phi_tensor,
    rb_from_rg,
    ricb_from_ricg,
    ricci,
    torsion,
    torsion_three_form,
)
from .fileformat import FrameDescription
from .frames import (
    CONSTANTS,
    SPHERE,
    FrameAlgebra,
    FrameError,
    HermitianStructure,
    KForm,
    LeeData,
    all_zero,
    arrays_equal,
    basis_vector,
    check_antisymmetry,
    distribution_basis,
    exterior_derivative,
    first_nonzero,
    fundamental_form,
    is_unimodular,
    frame_action_defect,
    jacobi_defect,
    lee_data,
    lie_derivative_metric,
    nijenhuis,
    projected_frame,
    solve_lee_form,
    verify_lck,
    wedge_omega_matrix,
)
from .holonomy import (
    ambrose_singer_closure,
    classify,
    curvature_span_at_point,
    evaluate_matrix,
    independence_system_hopf,
    is_closed,
)
from .rings import SpherePolynomial

SUITES = ("structure", "lck", "vaisman-identities", "bismut-tables", "curvature-tables",
          "ricci", "holonomy", "gauduchon-scan", "hopf-symbolic", "ot-operators")
PASS, FAIL, SKIP = "pass", "fail", "skip"


class SuiteError(ValueError):
    """Invalid selector or suite; maps to exit code 2."""


@dataclass
class Check:
    name: str
    status: str
    detail: str
    anchor: str

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail, "anchor": self.anchor}


@dataclass
class SuiteReport:
    example: str
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def status(self) -> str:
        return FAIL if any(c.status == FAIL for c in self.checks) else PASS

    @property
    def exit_code(self) -> int:
        return 1 if self.status == FAIL else 0

    def to_dict(self) -> dict:
        return {"example": self.example, "suite": self.suite,
                "checks": [c.to_dict() for c in self.checks], "status": self.status}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        width = max([len(c.name) for c in self.checks] + [5])
        lines = [f"example: {self.example}", f"suite:   {self.suite}", ""]
        for c in self.checks:
            lines.append(f"{c.status.upper():<5} {c.name:<{width}}  {c.detail}")
            lines.append(f"      {'':<{width}}  [{c.anchor}]")
        counts = {s: sum(c.status == s for c in self.checks) for s in (PASS, FAIL, SKIP)}
        lines.append("")
        lines.append(f"status: {self.status.upper()} "
                     f"({counts[PASS]} passed, {counts[FAIL]} failed, {counts[SKIP]} skipped)")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# formatting helpers


def _fmt(value) -> str:
    if isinstance(value, np.ndarray):
        return "[" + ", ".join(_fmt(v) for v in value.flat) + "]"
    return str(value)


def _witness(arr, label: str = "entry") -> str:
    hit = first_nonzero(arr)
    if hit is None:
        return "identically zero"
    idx, value = hit
    return f"{label} {tuple(i + 1 for i in idx)} = {_fmt(value)}"


def _check(name: str, ok: bool, anchor: str, detail: str = "", fail_detail: str | None = None) -> Check:
    if not ok and fail_detail is not None:
        detail = fail_detail
    return Check(name, PASS if ok else FAIL, detail or ("holds" if ok else "does not hold"), anchor)


def _zero_check(name: str, arr, anchor: str, label: str = "entry") -> Check:
    ok = all_zero(arr)
    return _check(name, ok, anchor, "identically zero", _witness(arr, label))


def _equal_check(name: str, lhs, rhs, anchor: str) -> Check:
    lhs = np.asarray(lhs, dtype=object)
    rhs = np.asarray(rhs, dtype=object)
    return _zero_check(name, lhs - rhs, anchor, "difference at")


def _skip(name: str, detail: str, anchor: str) -> Check:
    return Check(name, SKIP, detail, anchor)


def _as_constant(value):
    if isinstance(value, SpherePolynomial):
        return value.constant_value() if value.is_constant() else None
    return value


# ---------------------------------------------------------------------------
# subjects


class Subject:
    """A frame algebra with Hermitian data and lazily computed tensors."""

    def __init__(self, ident: str, fa: FrameAlgebra, H: HermitianStructure, *,
                 theta: KForm | None = None, declared_vaisman: bool | None = None,
                 entry: CatalogEntry | None = None):
        self.ident = ident
        self.fa = fa
        self.H = H
        self.declared_theta = theta
        self.declared_vaisman = declared_vaisman
        self.entry = entry
        self.embedded = False

    @classmethod
    def from_entry(cls, entry: CatalogEntry) -> "Subject":
        return cls(entry.ident, entry.fa, entry.H, theta=entry.lee.theta,
                   declared_vaisman=entry.vaisman, entry=entry)

    @classmethod
    def from_description(cls, desc: FrameDescription, fallback_name: str = "custom") -> "Subject":
        entry = _recognize(desc)
        if entry is not None:
            return cls.from_entry(entry)
        fa, theta = desc.fa, desc.theta
        embedded = _constant_copy(fa, theta)
        if embedded is not None:
            fa, theta = embedded
        subject = cls(desc.name or fallback_name, fa, desc.H, theta=theta, declared_vaisman=desc.vaisman)
        subject.embedded = embedded is not None
        return subject

    # basic facts ----------------------------------------------------------
    @property
    def m(self) -> int:
        return self.fa.m

    @property
    def kind(self) -> str | None:
        return self.entry.name if self.entry is not None else None

    @cached_property
    def structure_checks(self) -> list[Check]:
        return _structure_checks(self)

    @cached_property
    def structure_ok(self) -> bool:
        return all(c.status != FAIL for c in self.structure_checks)

    @cached_property
    def lee_result(self) -> tuple[LeeData | None, str]:
        if self.declared_theta is not None:
            if verify_lck(self.fa, self.H, self.declared_theta):
                return lee_data(self.H, self.declared_theta), "declared Lee form verified"
            return None, "declared Lee form does not satisfy d(omega) = theta ^ omega with d(theta) = 0"
        try:
            lee = solve_lee_form(self.fa, self.H)
        except FrameError as exc:
            return None, str(exc)
        return lee, "solved from d(omega) = theta ^ omega"

    @property
    def lee(self) -> LeeData | None:
        return self.lee_result[0]

    @property
    def kahler(self) -> bool:
        return self.lee is not None and self.lee.is_kahler

    @cached_property
    def levi_civita(self) -> Connection:
        return levi_civita(self.fa, self.H.g)

    @cached_property
    def family(self):
        return eps_rho_family(self.fa, self.H)

    @cached_property
    def bismut(self) -> Connection:
        return self.family.bismut()

    @cached_property
    def Rb(self):
        return curvature(self.bismut)

    @cached_property
    def Rg(self):
        return curvature(self.levi_civita)

    @cached_property
    def closure(self):
        return ambrose_singer_closure(self.bismut, self.Rb)

    @cached_property
    def ric_b(self):
        return ricci(self.Rb)

    @cached_property
    def ric_g(self):
        return ricci(self.Rg)

    @cached_property
    def vaisman(self) -> bool:
        lee = self.lee
        if lee is None or lee.is_kahler:
            return False
        return all_zero(covariant_derivative(self.levi_civita, lee.theta.arr, "d"))

    @cached_property
    def normalized(self) -> tuple[HermitianStructure, LeeData] | None:
        """Hermitian data rescaled so that ``|A| = 1`` (None if impossible)."""
        lee = self.lee
        if lee is None or lee.is_kahler:
            return None
        norm = _as_constant(lee.norm_squared)
        if norm is None or norm <= 0:
            return None
        if norm == 1:
            return self.H, lee
        H = HermitianStructure(self.H.g * norm, self.H.J)
        return H, lee_data(H, lee.theta)

    @cached_property
    def oracles(self):
        if self.kind in ("heisenberg", "inoue", "ot", "hopf"):
            return oracle_tables(self.entry)
        return None

    @cached_property
    def solvable(self) -> bool:
        return self.entry is not None and self.entry.solvable


_IDENT = re.compile(r"^(\w+)(?:\((.*)\))?$")


def _constant_copy(fa: FrameAlgebra, theta: KForm | None):
    """Sphere-ring data whose coefficients are all constants, moved to the constants ring."""
    if fa.ring != SPHERE:
        return None
    values = list(fa.brackets.flat) + (list(theta.arr.flat) if theta is not None else [])
    if any(isinstance(x, SpherePolynomial) and not x.is_constant() for x in values):
        return None

    def const(x):
        return x.constant_value() if isinstance(x, SpherePolynomial) else Fraction(x)

    f = np.vectorize(const, otypes=[object])(fa.brackets)
    flat = FrameAlgebra(fa.m, CONSTANTS, f)
    if theta is not None:
        theta = KForm(fa.m, 1, np.array([const(t) for t in theta.arr], dtype=object))
    return flat, theta


def _parse_ident(text: str) -> tuple[str, dict] | None:
    match = _IDENT.match(text.strip())
    if not match:
        return None
    name, body = match.group(1), match.group(2)
    params: dict = {}
    if body:
        for part in re.split(r",\s+(?=\w+=)", body):
            if "=" not in part:
                return None
            key, value = part.split("=", 1)
            params[key.strip()] = value.split(",") if "," in value else value
    return name, params


def _recognize(desc: FrameDescription) -> CatalogEntry | None:
    """Catalog entry whose data coincides exactly with the description, if any."""
    if not desc.name:
        return None
    parsed = _parse_ident(desc.name)
    if parsed is None:
        return None
    name, params = parsed
    for key in ("a", "r"):
        if key in params and not isinstance(params[key], list):
            params[key] = [params[key]]
    try:
        entry = make_entry(name, **params)
    except (CatalogError, TypeError, ValueError, ZeroDivisionError):
        return None
    if entry.ident != desc.name:
        return None
    same = (entry.fa.ring == desc.fa.ring and entry.m == desc.fa.m
            and arrays_equal(entry.fa.brackets, desc.fa.brackets)
            and arrays_equal(entry.H.g, desc.H.g) and arrays_equal(entry.H.J, desc.H.J)
            and desc.theta is not None and arrays_equal(entry.lee.theta.arr, desc.theta.arr)
            and desc.vaisman in (None, entry.vaisman))
    return entry if same else None


# ---------------------------------------------------------------------------
# structure


def _structure_checks(S: Subject) -> list[Check]:
    fa, H = S.fa, S.H
    out = []
    rep = check_antisymmetry(fa)
    out.append(_check("bracket table antisymmetric", rep.zero, "Lie bracket axioms",
                      "f[i,j,k] = -f[j,i,k]", f"witness {rep.witness}"))
    rep = jacobi_defect(fa)
    out.append(_check("Jacobi identity", rep.zero, "Lie bracket axioms",
                      "all frame triples", f"witness {rep.witness}"))
    if fa.ring == SPHERE:
        rep = frame_action_defect(fa)
        out.append(_check("brackets agree with the frame action", rep.zero, "sphere-ring frames",
                          "[e_i,e_j](x_l) = e_i e_j x_l - e_j e_i x_l", f"witness {rep.witness}"))
    elif S.embedded:
        out.append(_skip("brackets agree with the frame action",
                         "sphere ring with constant coefficients, treated as a constant frame",
                         "sphere-ring frames"))
    for name, ok in H.checks().items():
        out.append(_check(name, ok, "Hermitian structure axioms"))
    if any(c.status == FAIL for c in out):
        return out
    rep = nijenhuis(fa, H.J)
    out.append(_check("Nijenhuis tensor vanishes", rep.zero, "integrability of J",
                      "N_J = 0 on frame pairs", f"witness {rep.worst}"))
    worst = None
    for i in range(fa.m):
        dd = exterior_derivative(fa, exterior_derivative(fa, KForm.coframe(fa.m, i)))
        if not dd.is_zero():
            worst = f"d(d e^{i + 1}) != 0"
            break
    dd_omega = exterior_derivative(fa, exterior_derivative(fa, fundamental_form(H)))
    if worst is None and not dd_omega.is_zero():
        worst = "d(d omega) != 0"
    out.append(_check("d o d = 0 on coframe and omega", worst is None,
                      "exterior derivative on frame algebras", "identically zero", worst))
    if fa.ring == CONSTANTS:
        uni = is_unimodular(fa)
        if S.solvable:
            out.append(_check("unimodular", uni, "lattices need unimodular groups", "trace ad_x = 0"))
        else:
            out.append(Check("unimodular", PASS if uni else SKIP,
                             "trace ad_x = 0" if uni else "not unimodular; no lattice quotient",
                             "lattices need unimodular groups"))
    return out


def suite_structure(S: Subject) -> list[Check]:
    return list(S.structure_checks)


# ---------------------------------------------------------------------------
# lck


def _distribution(H: HermitianStructure, lee: LeeData) -> list[np.ndarray]:
    if all(isinstance(x, Fraction) for x in itertools.chain(lee.A, lee.JA)):
        return distribution_basis(H, lee)
    return projected_frame(H, lee)


def suite_lck(S: Subject) -> list[Check]:
    fa, H = S.fa, S.H
    anchor = "LCK condition d(omega) = theta ^ omega, d(theta) = 0"
    lee, how = S.lee_result
    out = [_check("Lee form", lee is not None, anchor,
                  f"{how}: theta = {_fmt(lee.theta.arr)}" if lee is not None else "", how)]
    if lee is None:
        return out
    omega = fundamental_form(H)
    out.append(_equal_check("d(omega) = theta ^ omega", exterior_derivative(fa, omega).arr,
                            lee.theta.wedge(omega).arr, anchor))
    out.append(_zero_check("d(theta) = 0", exterior_derivative(fa, lee.theta).arr, anchor))
    if S.m >= 4 and fa.ring == CONSTANTS:
        r = linalg.rank(wedge_omega_matrix(omega)[1])
        out.append(_check("tau -> tau ^ omega injective", r == S.m, "uniqueness of the Lee form",
                          f"rank {r} = {S.m}", f"rank {r} < {S.m}"))
    out.append(_equal_check("Lee form from the codifferential of omega",
                            lee_from_codifferential(S.levi_civita, H).arr, lee.theta.arr,
                            "theta = -(1/(n-1)) (delta omega)(J .)"))
    kind = "Kähler (theta = 0)" if lee.is_kahler else ("Vaisman" if S.vaisman else "LCK, not Vaisman")
    out.append(Check("type", PASS, kind, "Vaisman: theta parallel for Levi-Civita"))
    if S.declared_vaisman is not None:
        out.append(_check("declared Vaisman flag", S.declared_vaisman == S.vaisman,
                          "Vaisman: theta parallel for Levi-Civita",
                          f"declared {S.declared_vaisman}, computed {S.vaisman}"))
    if not S.vaisman:
        return out
    out.extend(_vaisman_structure(S))
    return out


def _vaisman_structure(S: Subject) -> list[Check]:
    fa = S.fa
    H, lee = S.normalized
    A, JA, J = lee.A, lee.JA, H.J
    frame = [basis_vector(S.m, i) for i in range(S.m)]
    anchor = "Lee field and anti-Lee field on Vaisman manifolds"
    out = [_zero_check("[A, JA] = 0", fa.bracket(A, JA), anchor)]
    out.append(_zero_check("A is Killing", lie_derivative_metric(fa, H.g, A), anchor))
    out.append(_zero_check("JA is Killing", lie_derivative_metric(fa, H.g, JA), anchor))
    for label, V in (("A", A), ("JA", JA)):
        defect = np.array([fa.bracket(V, J @ X) - J @ fa.bracket(V, X) for X in frame], dtype=object)
        out.append(_zero_check(f"L_{label} J = 0", defect, anchor, "frame field"))
    D = _distribution(H, lee)
    rows = []
    for X in D:
        for V in (A, JA):
            br = fa.bracket(V, X)
            rows.append([H.inner(br, A), H.inner(br, JA)])
    out.append(_zero_check("[A, D] and [JA, D] lie in D", np.array(rows, dtype=object),
                           "the distribution D orthogonal to A and JA", "pair"))
    omega = fundamental_form(H)
    vals = [H.inner(JA, fa.bracket(X, Y)) - omega(X, Y) for X, Y in itertools.combinations(D, 2)]
    out.append(_zero_check("g(JA, [X, Y]) = omega(X, Y) on D", np.array(vals, dtype=object),
                           "the distribution D orthogonal to A and JA", "pair"))
    if fa.ring == CONSTANTS and is_unimodular(fa):
        central = np.array([fa.bracket(JA, X) for X in frame], dtype=object)
        out.append(_zero_check("JA is central", central, "unimodular Vaisman Lie algebras", "frame field"))
    if S.kind == "heisenberg":
        vals = np.array([fa.bracket(X, Y) - JA * omega(X, Y) for X, Y in itertools.combinations(D, 2)],
                        dtype=object)
        out.append(_zero_check("[x, y] = omega(x, y) JA on D (abelian quotient)", vals,
                               "Vaisman Lie algebras as extensions of a Kähler algebra", "pair"))
    return out


# ---------------------------------------------------------------------------
# vaisman identities


def suite_vaisman(S: Subject) -> list[Check]:
    lee = S.lee
    if lee is None:
        return [_skip("Vaisman identities", "no Lee form", "Vaisman identities")]
    theta = lee.theta.arr
    bt = all_zero(covariant_derivative(S.bismut, theta, "d"))
    gt = all_zero(covariant_derivative(S.levi_civita, theta, "d"))
    out = [_check("theta Bismut-parallel iff Levi-Civita-parallel", bt == gt,
                  "parallel Lee form characterizes Vaisman",
                  f"Bismut {bt}, Levi-Civita {gt}")]
    if not S.vaisman:
        out.append(_skip("remaining identities", "not Vaisman", "Vaisman identities"))
        return out
    fa = S.fa
    H, lee = S.normalized
    g, J = H.g, H.J
    A, JA = lee.A, lee.JA
    b, lc = S.bismut, S.levi_civita
    omega = fundamental_form(H)
    d_omega = exterior_derivative(fa, omega)
    phi = phi_tensor(H, lee)
    t_anchor = "Bismut torsion of Vaisman manifolds"
    out.append(_zero_check("nabla^b A = 0", covariant_derivative(b, A, "u"), "Lee field is Bismut-parallel"))
    out.append(_zero_check("nabla^b JA = 0", covariant_derivative(b, JA, "u"), "Lee field is Bismut-parallel"))
    try:
        c = torsion_three_form(b, g)
    except NotSkewError:
        out.append(Check("torsion totally skew", FAIL, "torsion is not a 3-form", t_anchor))
        return out
    out.append(_equal_check("c = -J theta ^ omega", c.arr, -(lee.J_theta.wedge(omega)).arr, t_anchor))
    out.append(_equal_check("c = d omega(J., J., J.)", c.arr, d_omega.pullback(J).arr, t_anchor))
    out.append(_zero_check("c(A, ., .) = 0", c.insert(A).arr, t_anchor))
    out.append(_zero_check("nabla^b c = 0", covariant_derivative(b, c.arr, "ddd"), t_anchor))
    out.append(_zero_check("nabla^b phi = 0", covariant_derivative(b, phi, "ud"),
                           "the f-structure phi is Bismut-parallel"))
    out.append(_equal_check("phi^3 + phi = 0", phi @ phi @ phi, -phi, "the f-structure phi"))
    out.append(_zero_check("phi(A) = phi(JA) = 0", np.array([phi @ A, phi @ JA], dtype=object),
                           "the f-structure phi"))
    dJt = exterior_derivative(fa, lee.J_theta)
    dj_anchor = "exterior derivative of J theta"
    out.append(_equal_check("d(J theta) = c(JA, ., .)", dJt.arr, c.insert(JA).arr, dj_anchor))
    out.append(_equal_check("d(J theta)(J., J.) = d(J theta)", dJt.pullback(J).arr, dJt.arr, dj_anchor))
    out.append(_zero_check("d(J theta)(A, .) = d(J theta)(JA, .) = 0",
                           np.array([dJt.insert(A).arr, dJt.insert(JA).arr], dtype=object), dj_anchor))

    Rb, Rg = S.Rb, S.Rg
    c_anchor = "symmetries of the Bismut curvature on Vaisman manifolds"
    m = S.m
    RJ = np.array([[Rb.matrix(i, j) @ J - J @ Rb.matrix(i, j) for j in range(m)] for i in range(m)],
                  dtype=object)
    out.append(_zero_check("R^b(X, Y) J = J R^b(X, Y)", RJ, c_anchor, "pair/entry"))
    low = Rb.lowered(g)
    out.append(_equal_check("R^b(X, Y, Z, W) = R^b(Z, W, X, Y)", low, low.transpose(2, 3, 0, 1), c_anchor))
    RJJ = np.tensordot(np.tensordot(Rb.arr, J, axes=([0], [0])), J, axes=([0], [0]))
    out.append(_equal_check("R^b(JX, JY) = R^b(X, Y)", np.moveaxis(RJJ, (2, 3), (0, 1)), Rb.arr, c_anchor))
    out.append(_zero_check("R^b(A, .) = R^b(JA, .) = 0",
                           np.array([np.tensordot(A, Rb.arr, axes=([0], [0])),
                                     np.tensordot(JA, Rb.arr, axes=([0], [0]))], dtype=object),
                           c_anchor))
    out.append(_equal_check("R^b from R^g by the conversion formula", rb_from_rg(Rg, lee, H).arr, Rb.arr,
                            "Bismut versus Riemannian curvature on Vaisman manifolds"))
    out.append(_equal_check("Ric^b from Ric^g by the conversion formula",
                            ricb_from_ricg(S.ric_g, lee, H), S.ric_b,
                            "Bismut versus Riemannian Ricci on Vaisman manifolds"))
    out.append(_zero_check("delta c = 0", codifferential(lc, g, c).arr, "the torsion 3-form is co-closed"))
    dc = exterior_derivative(fa, c)
    closed_anchor = "torsion 3-form closed only in dimension 4"
    if m >= 6:
        eta = dJt - lee.J_theta.wedge(lee.theta)
        witness = eta(A, JA)
        out.append(_check("dc != 0", not dc.is_zero(), closed_anchor, _witness(dc.arr, "dc at"),
                          "dc vanishes identically"))
        out.append(_check("eta(A, JA) = 1 with eta = d(J theta) - J theta ^ theta", witness == 1,
                          closed_anchor, f"eta(A, JA) = {witness}"))
    else:
        out.append(_zero_check("dc = 0", dc.arr, closed_anchor))

    n_anchor = "Bismut connection in terms of J A and phi"
    frame = [basis_vector(m, i) for i in range(m)]
    defect = np.array([b.covariant(JA, X) - (fa.bracket(JA, X) - phi @ X) for X in frame], dtype=object)
    out.append(_zero_check("nabla^b_JA X = [JA, X] - phi X", defect, n_anchor, "frame field"))
    D = _distribution(H, lee)
    diffs, normal = [], []
    for X, Y in itertools.product(D, repeat=2):
        v = b.covariant(X, Y)
        diffs.append(v - (lc.covariant(X, Y) - JA * (omega(X, Y) * Fraction(1, 2))))
        normal.append([H.inner(v, A), H.inner(v, JA)])
    out.append(_zero_check("nabla^b_X Y = nabla^g_X Y - omega(X, Y) JA / 2 on D",
                           np.array(diffs, dtype=object), n_anchor, "pair"))
    out.append(_zero_check("nabla^b_X Y lies in D", np.array(normal, dtype=object), n_anchor, "pair"))
    return out


# ---------------------------------------------------------------------------
# connection and curvature tables


def _compare_connection(name: str, conn: Connection, table: dict, labels, anchor: str) -> Check:
    m = conn.m
    for (i, j), expected in sorted(table.items()):
        got = conn.covariant(basis_vector(m, i), basis_vector(m, j))
        if not arrays_equal(got, expected):
            return Check(name, FAIL, f"nabla_{labels[i]} {labels[j]}: computed {_fmt(got)}, "
                                      f"expected {_fmt(expected)}", anchor)
    return Check(name, PASS, f"{len(table)} entries match", anchor)


def _compare_curvature(name: str, R, table: dict, labels, anchor: str) -> Check:
    for (i, j, k), expected in sorted(table.items()):
        got = R.arr[i, j, k]
        if not arrays_equal(got, expected):
            return Check(name, FAIL, f"R({labels[i]}, {labels[j]}) {labels[k]}: computed {_fmt(got)}, "
                                      f"expected {_fmt(expected)}", anchor)
    return Check(name, PASS, f"{len(table)} entries match", anchor)


def _labels(S: Subject) -> list[str]:
    if S.entry is not None:
        return S.entry.labels
    return [f"e{k}" for k in range(1, S.m + 1)]


TABLE_ANCHORS = {
    "heisenberg": "Bismut curvature of Vaisman solvmanifolds",
    "inoue": "Inoue surface example: displayed connection and curvature matrices",
    "ot": "OT(s,1) connection and curvature lists",
    "hopf": "Hopf manifold connection and curvature closed forms",
}


def suite_bismut_tables(S: Subject) -> list[Check]:
    lc, g, J = S.levi_civita, S.H.g, S.H.J
    out = [_zero_check("Levi-Civita torsion-free", torsion(lc), "Koszul formula", "T at"),
           _zero_check("Levi-Civita metric", metric_defect(lc, g), "Koszul formula")]
    b = S.bismut
    out.append(_zero_check("Bismut metric", metric_defect(b, g), "Bismut connection"))
    out.append(_zero_check("Bismut nabla J = 0", covariant_derivative(b, J, "ud"), "Bismut connection"))
    try:
        c = torsion_three_form(b, g)
        out.append(_equal_check("Bismut torsion c = d omega(J., J., J.)", c.arr,
                                exterior_derivative(S.fa, fundamental_form(S.H)).pullback(J).arr,
                                "Bismut connection"))
    except NotSkewError as exc:
        out.append(Check("Bismut torsion totally skew", FAIL, str(exc), "Bismut connection"))
    for t in (Fraction(0), Fraction(1)):
        conn = S.family.gauduchon(t)
        ok = all_zero(metric_defect(conn, g)) and all_zero(covariant_derivative(conn, J, "ud"))
        out.append(_check(f"Gauduchon t = {t} Hermitian", ok, "Gauduchon line",
                          "nabla g = 0 and nabla J = 0"))
    sample = S.family.at(Fraction(1, 3), Fraction(-2, 5))
    out.append(_zero_check("nabla^{eps,rho} metric at (1/3, -2/5)", metric_defect(sample, g),
                           "two-parameter family of metric connections"))
    tabs = S.oracles
    labels = _labels(S)
    if tabs is None or not tabs.connections:
        out.append(_skip("connection tables", "no transcribed connection table for this example",
                         "transcribed tables"))
        return out
    anchor = TABLE_ANCHORS[S.kind]
    conns = {"levi-civita": lc, "bismut": b}
    for name, table in tabs.connections.items():
        out.append(_compare_connection(f"{name} table", conns[name], table, labels, anchor))
    return out


def suite_curvature_tables(S: Subject) -> list[Check]:
    Rg, Rb = S.Rg, S.Rb
    m = S.m
    bianchi = np.array([Rg.arr[i, j, k] + Rg.arr[j, k, i] + Rg.arr[k, i, j]
                        for i, j, k in itertools.combinations(range(m), 3)], dtype=object)
    out = [_zero_check("first Bianchi identity for Levi-Civita", bianchi, "Riemannian curvature", "triple")]
    if S.kind == "hopf":
        n = S.entry.params["n"]
        flat = Rb.is_zero()
        out.append(_check("R^b = 0 iff n = 2", flat == (n == 2),
                          "Bismut-flat Hopf surfaces", "R^b identically zero" if flat else "R^b nonzero"))
    if S.vaisman and S.solvable:
        out.append(_zero_check("nabla^b R^b = 0", covariant_derivative(S.bismut, Rb.arr, "dddu"),
                               "Bismut curvature of Vaisman solvmanifolds"))
    tabs = S.oracles
    if tabs is None or not tabs.curvature:
        out.append(_skip("curvature tables", "no transcribed curvature table for this example",
                         "transcribed tables"))
        return out
    for name, table in tabs.curvature.items():
        out.append(_compare_curvature(f"{name} curvature table", Rb, table, _labels(S),
                                      TABLE_ANCHORS[S.kind]))
    return out


def suite_ricci(S: Subject) -> list[Check]:
    ric_b, J = S.ric_b, S.H.J
    out = []
    if S.vaisman:
        anchor = "Bismut Ricci of Vaisman manifolds"
        out.append(_equal_check("Ric^b symmetric", ric_b, ric_b.T, anchor))
        out.append(_equal_check("Ric^b J-invariant", J.T @ ric_b @ J, ric_b, anchor))
    else:
        sym = arrays_equal(ric_b, ric_b.T)
        out.append(Check("Ric^b symmetric", PASS if sym else SKIP,
                         "symmetric" if sym else "not symmetric (only asserted on Vaisman manifolds)",
                         "Bismut Ricci of Vaisman manifolds"))
    if S.kind == "hopf":
        n = S.entry.params["n"]
        zero = all_zero(ric_b)
        out.append(_check("Ric^b = 0 iff n = 2", zero == (n == 2), "Hopf manifold Bismut Ricci",
                          "Ric^b = 0" if zero else "Ric^b != 0"))
    tabs = S.oracles
    if tabs is None or not tabs.ricci:
        out.append(_skip("Ricci closed forms", "no closed form for this example", "transcribed tables"))
        return out
    computed = {"bismut": ric_b, "levi-civita": S.ric_g}
    anchor = TABLE_ANCHORS[S.kind] if S.kind != "heisenberg" else "Ricci tensors of Vaisman solvmanifolds"
    if S.kind == "hopf":
        anchor = "Hopf manifold Bismut Ricci"
    for name, expected in tabs.ricci.items():
        out.append(_equal_check(f"{name} Ricci closed form", computed[name], expected, anchor))
    return out


# ---------------------------------------------------------------------------
# holonomy


def suite_holonomy(S: Subject) -> list[Check]:
    H = S.H
    lee = S.lee
    if S.fa.ring == CONSTANTS:
        span = S.closure
        phi = phi_tensor(H, lee) if lee is not None and not lee.is_kahler else None
        rep = classify(span, H.g, H.J, phi=phi)
        anchor = "Ambrose-Singer closure"
        out = [Check("closure dimension", PASS, f"dim hol^b = {rep.dimension}", anchor),
               _check("closure is closed", is_closed(span, S.bismut), anchor,
                      "invariant under [nabla_x, .] and commutators")]
        for key, label in (("is_skew_symmetric_wrt_g", "skew"), ("commutes_with_J", "J-commuting")):
            out.append(_check(f"hol^b inside u(n): {label}", rep[key], "Hermitian holonomy",
                              f"{key} = true", f"{key} = false"))
        expected = _expected_dimension(S)
        if expected is not None:
            value, why, exp_anchor = expected
            out.append(_check("expected dimension", rep.dimension == value, exp_anchor,
                              f"{rep.dimension} = {why}", f"{rep.dimension} != {why}"))
        if S.kind == "heisenberg":
            trace = sum((H.J @ phi)[k, k] for k in range(S.m))
            out.append(_check("phi in hol^b", rep["contains_phi"], "holonomy spanned by phi",
                              "contains_phi = true", "contains_phi = false"))
            out.append(_check("trace(J phi) != 0", trace != 0, "holonomy spanned by phi",
                              f"trace(J phi) = {trace}"))
        return out

    anchor = "curvature span at the base point"
    m = S.m
    span = curvature_span_at_point(S.Rb, m)
    A = evaluate_matrix(lee.A, m) if lee is not None else None
    JA = evaluate_matrix(lee.JA, m) if lee is not None else None
    rep = classify(span, H.g, H.J, A, JA)
    out = [Check("curvature span dimension", PASS, f"dim = {rep.dimension} over {span.field}", anchor)]
    for key, label in (("is_skew_symmetric_wrt_g", "skew"), ("commutes_with_J", "J-commuting"),
                       ("annihilates_A", "kills A_p"), ("annihilates_JA", "kills JA_p")):
        out.append(_check(f"span {label}", rep[key], anchor, f"{key} = true", f"{key} = false"))
    if S.kind == "hopf":
        n = S.entry.params["n"]
        if n == 2:
            out.append(_check("dimension = 0 (Bismut-flat)", rep.dimension == 0, "Bismut-flat Hopf surfaces",
                              f"dim = {rep.dimension}"))
        else:
            want = (n - 1) ** 2
            out.append(_check("dimension = dim u(n-1)", rep.dimension == want,
                              "Bismut holonomy of Hopf manifolds is u(n-1)",
                              f"{rep.dimension} = (n-1)^2", f"{rep.dimension} != {want}"))
    return out


def _expected_dimension(S: Subject):
    if S.kind == "heisenberg":
        return 1, "1", "holonomy spanned by phi"
    if S.kind == "inoue":
        return 4, "dim u(2)", "Inoue surface example: holonomy u(2)"
    if S.kind == "ot":
        s = S.entry.params["s"]
        return (s + 1) ** 2, "(s+1)^2", "OT(s,1) holonomy u(s+1)"
    if S.kind == "abelian":
        return 0, "0 (flat)", "flat Kähler frame"
    return None


# ---------------------------------------------------------------------------
# gauduchon scan


def _scan_expectation(S: Subject):
    if S.lee is None:
        return None
    if S.kahler:
        return "all", "all"
    if S.vaisman:
        return "point:-1", "line:rho=0"
    if S.kind in ("inoue", "ot"):
        return "empty", "empty"
    return None


def _describe(sol, variables) -> str:
    if sol.kind == "point":
        return "{" + ", ".join(f"{v} = {x}" for v, x in zip(variables, sol.values)) + "}"
    if sol.kind == "line":
        return f"line {sol}"
    return sol.kind


def _matches(sol, expectation: str) -> bool:
    if expectation == "point:-1":
        return sol.kind == "point" and sol.values == (Fraction(-1),)
    if expectation == "line:rho=0":
        return sol.kind == "line" and sol.equation == (0, 1, 0)
    return sol.kind == expectation


def suite_gauduchon(S: Subject) -> list[Check]:
    out = []
    anchor = "Gauduchon connections with parallel Lee form"
    split = j_derivative_split(S.family)
    j_anchor = "nabla^{eps,rho} J = -2 (eps + rho - 1/2) nabla^g J"
    out.append(_check("J-derivative proportionality (symbolic)", split.identity_holds(), j_anchor,
                      "coefficients of eps and rho are both -2 nabla^g J"))
    for eps, rho in ((Fraction(0), Fraction(0)), (Fraction(1, 2), Fraction(0)), (Fraction(1, 3), Fraction(-2))):
        got = covariant_derivative(S.family.at(eps, rho), S.H.J, "ud")
        expected = split.base * (-2 * (eps + rho - Fraction(1, 2)))
        out.append(_equal_check(f"J-derivative proportionality at ({eps}, {rho})", got, expected, j_anchor))
    lee = S.lee
    if lee is None:
        out.append(_skip("parameter scans", "no Lee form", anchor))
        return out
    scan = gauduchon_theta_scan(S.fa, S.H, lee, S.family)
    expectation = _scan_expectation(S)
    t_text = _describe(scan.t, ["t"])
    er_text = _describe(scan.eps_rho, ["eps", "rho"])
    if expectation is None:
        out.append(_skip("t with nabla^t theta = 0", t_text, anchor))
        out.append(_skip("(eps, rho) with nabla^{eps,rho} theta = 0", er_text, anchor))
    else:
        out.append(_check("t with nabla^t theta = 0", _matches(scan.t, expectation[0]), anchor,
                          t_text, f"{t_text}, expected {expectation[0]}"))
        out.append(_check("(eps, rho) with nabla^{eps,rho} theta = 0", _matches(scan.eps_rho, expectation[1]),
                          anchor, er_text, f"{er_text}, expected {expectation[1]}"))
    if not lee.is_kahler:
        out.append(_nabla_t_residual(S, lee))
    return out


def _nabla_t_residual(S: Subject, lee: LeeData) -> Check:
    """``nabla^t theta = 0`` iff ``nabla^g_X A = ((t+1)/4)(|A|^2 X - theta(X) A + theta(JX) JA)``."""
    m = S.m
    DA = covariant_derivative(S.levi_civita, lee.A, "u")
    thJ = S.H.J.T @ lee.theta.arr
    bad = []
    for t in (Fraction(-1), Fraction(0), Fraction(1), Fraction(1, 2)):
        k = (t + 1) / 4
        resid = np.array([DA[i] - (basis_vector(m, i) * lee.norm_squared - lee.A * lee.theta.arr[i]
                                   + lee.JA * thJ[i]) * k for i in range(m)], dtype=object)
        parallel = all_zero(covariant_derivative(S.family.gauduchon(t), lee.theta.arr, "d"))
        if parallel != all_zero(resid):
            bad.append(str(t))
    return _check("nabla^t theta = 0 iff the Lee-field residual vanishes", not bad,
                  "Gauduchon connections with parallel Lee form", "t in {-1, 0, 1, 1/2}",
                  f"disagreement at t = {', '.join(bad)}")


# ---------------------------------------------------------------------------
# hopf and OT specifics


def suite_hopf(S: Subject) -> list[Check]:
    n = S.entry.params["n"]
    lee = S.entry.lee
    H_vec = hopf_H(n)
    anchor = "Hopf manifold frame"
    out = [_check("theta = -2 alpha is an LCK Lee form", verify_lck(S.fa, S.H, lee.theta), anchor)]
    alpha = KForm(S.m, 1, H_vec.copy())
    out.append(_check("alpha(H) = 1", alpha(H_vec) == 1, anchor, f"alpha(H) = {alpha(H_vec)}"))
    out.append(_equal_check("H = -A/2", H_vec, lee.A * Fraction(-1, 2), anchor))
    out.append(_check("|A|^2 = 4", lee.norm_squared == 4, anchor, f"|A|^2 = {lee.norm_squared}"))
    tabs = S.oracles
    out.append(_compare_curvature("R^b closed forms modulo the sphere relation", S.Rb,
                                  tabs.curvature["bismut"], _labels(S), "Hopf manifold curvature closed forms"))
    if n < 3:
        out.append(_skip("independence systems", "need n >= 3", "linear independence of curvature operators"))
        return out
    rep = independence_system_hopf(n, S.Rb)
    i_anchor = "linear independence of curvature operators"
    out.append(_check("first system M M~ = I", rep.system1_identity, i_anchor))
    out.append(_check("second system M M~ = I", rep.system2_identity, i_anchor))
    out.append(_check("first system matrix read off the curvature", rep.system1_matches_curvature, i_anchor))
    out.append(_check("second system matrix read off the curvature", rep.system2_matches_curvature, i_anchor))
    out.append(_check("rank of R(U_2i-1, U_2j) at p", rep.rank_mixed == comb(n, 2), i_anchor,
                      f"{rep.rank_mixed} = C(n,2)", f"{rep.rank_mixed} != {comb(n, 2)}"))
    out.append(_check("rank of R(U_2i-1, U_2j-1), j < n, at p", rep.rank_odd == comb(n - 1, 2), i_anchor,
                      f"{rep.rank_odd} = C(n-1,2)", f"{rep.rank_odd} != {comb(n - 1, 2)}"))
    want = (n - 1) ** 2
    out.append(_check("rank of the union at p", rep.rank_union == want, i_anchor,
                      f"{rep.rank_union} = (n-1)^2", f"{rep.rank_union} != {want}"))
    return out


def _rank(mats) -> int:
    return linalg.rank([list(np.asarray(x).reshape(-1)) for x in mats]) if mats else 0


def suite_ot(S: Subject) -> list[Check]:
    s = S.entry.params["s"]
    ops = ot_operators(S.entry, S.Rb)
    anchor_s = "operators S_i on OT(s,1)"
    anchor_t = "operators T_ij on OT(s,1)"
    out = []
    for i in range(s):
        out.append(_equal_check(f"S_{i + 1} defining action", ops.S[i], ops.S_defined[i], anchor_s))
    Rm = S.Rb.matrix
    inv_ok = True
    for i in range(s):
        rhs = ops.S[i] * 2
        for k in range(s):
            if k != i:
                rhs = rhs + ops.S[k]
        if not arrays_equal(Rm(i, s + i), rhs * Fraction(-1, s + 1)):
            inv_ok = False
    out.append(_check("R(A_i, B_i) = -(2 S_i + sum_k!=i S_k)/(s+1)", inv_ok, anchor_s))
    bad = [f"T_{i + 1}{j + 1}" for (i, j) in sorted(ops.T) if not arrays_equal(ops.T[i, j], ops.T_defined[i, j])]
    if ops.T:
        out.append(_check("T_ij entry table", not bad, anchor_t, f"{len(ops.T)} operators match",
                          "mismatch: " + ", ".join(bad)))
    else:
        out.append(_skip("T_ij entry table", "needs s >= 2", anchor_t))
    ru, rv, ruv = _rank(ops.U), _rank(ops.V), _rank(ops.U + ops.V)
    l_anchor = "linearly independent families in the OT holonomy"
    targets = (("rank U", ru, s * (s + 3) // 2, "s(s+3)/2"), ("rank V", rv, (s * s + s + 2) // 2, "(s^2+s+2)/2"),
               ("rank U + V", ruv, (s + 1) ** 2, "(s+1)^2"))
    for name, got, want, formula in targets:
        if s >= 3:
            out.append(_check(name, got == want, l_anchor, f"{got} = {formula}", f"{got} != {formula} = {want}"))
        else:
            out.append(_skip(name, f"{got} (count {formula} = {want} is claimed for s >= 3)", l_anchor))
    span = S.closure
    inside = all(span.contains(x) for x in ops.U + ops.V)
    out.append(_check("U and V inside hol^b", inside, l_anchor))
    return out


# ---------------------------------------------------------------------------
# dispatch


RUNNERS = {
    "structure": suite_structure,
    "lck": suite_lck,
    "vaisman-identities": suite_vaisman,
    "bismut-tables": suite_bismut_tables,
    "curvature-tables": suite_curvature_tables,
    "ricci": suite_ricci,
    "holonomy": suite_holonomy,
    "gauduchon-scan": suite_gauduchon,
    "hopf-symbolic": suite_hopf,
    "ot-operators": suite_ot,
}


def applicable(S: Subject, suite: str) -> bool:
    if suite == "hopf-symbolic":
        return S.kind == "hopf"
    if suite == "ot-operators":
        return S.kind == "ot"
    return suite in RUNNERS


def applicable_suites(S: Subject) -> list[str]:
    return [name for name in SUITES if applicable(S, name)]


def _run_one(S: Subject, suite: str) -> list[Check]:
    if suite == "structure":
        return suite_structure(S)
    if not S.structure_ok:
        failed = [c for c in S.structure_checks if c.status == FAIL]
        return failed + [_skip(suite, "gated by failing structure suite", "structure suite gates the rest")]
    return RUNNERS[suite](S)


def run_subject(S: Subject, suite: str) -> SuiteReport:
    if suite == "all":
        checks = []
        structure = suite_structure(S)
        checks.extend(_prefixed("structure", structure))
        for name in applicable_suites(S):
            if name == "structure":
                continue
            if not S.structure_ok:
                checks.append(_skip(name, "gated by failing structure suite", "structure suite gates the rest"))
                continue
            checks.extend(_prefixed(name, _run_one(S, name)))
        return SuiteReport(S.ident, suite, checks)
    if suite not in RUNNERS:
        raise SuiteError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    if not applicable(S, suite):
        raise SuiteError(f"suite {suite!r} does not apply to {S.ident}")
    return SuiteReport(S.ident, suite, _run_one(S, suite))


def _prefixed(prefix: str, checks: list[Check]) -> list[Check]:
    return [Check(f"{prefix}: {c.name}", c.status, c.detail, c.anchor) for c in checks]


def run_suite(example: str, suite: str, **params) -> SuiteReport:
    """Run ``suite`` on the catalog entry ``example`` built from ``params``."""
    try:
        entry = make_entry(example, **{k: v for k, v in params.items() if v is not None})
    except CatalogError as exc:
        raise SuiteError(str(exc)) from exc
    return run_subject(Subject.from_entry(entry), suite)


def run_custom(desc: FrameDescription, suite: str, name: str = "custom") -> SuiteReport:
    return run_subject(Subject.from_description(desc, name), suite)


__all__ = [
    "Check", "SuiteReport", "Subject", "SuiteError", "SUITES", "run_suite", "run_custom",
    "run_subject", "applicable_suites",
]
