import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lckholonomy.catalog import _complex_structure, _identity, _set_bracket, _table, hopf_H, make_hopf
from lckholonomy.frames import (
    CONSTANTS,
    SPHERE,
    FrameAlgebra,
    FrameError,
    HermitianStructure,
    KForm,
    NotClosedError,
    NotLCKError,
    RingMismatchError,
    check_antisymmetry,
    distribution_basis,
    exterior_derivative,
    frame_action_defect,
    fundamental_form,
    is_unimodular,
    jacobi_defect,
    nijenhuis,
    solve_lee_form,
    verify_lck,
)
from lckholonomy.rings import SpherePolynomial
from support import CATALOG, catalog_ids, subject

small = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def algebra(m, brackets, ring=CONSTANTS):
    f = _table(m)
    for i, j, vec in brackets:
        _set_bracket(f, i, j, vec)
    return FrameAlgebra(m, ring, f)


def standard(m):
    return HermitianStructure(_identity(m), _complex_structure(m, [(2 * i, 2 * i + 1) for i in range(m // 2)]))


def random_form(draw, m, degree, coeff):
    comps = {}
    for idx in itertools.combinations(range(m), degree):
        comps[idx] = draw(coeff)
    return KForm.from_components(m, degree, comps)


# -- exterior algebra ---------------------------------------------------------------------


@pytest.mark.parametrize("name,params", CATALOG, ids=catalog_ids())
@settings(max_examples=15)
@given(data=st.data())
def test_d_squared_vanishes(name, params, data):
    fa = subject(name, **params).fa
    if fa.ring == SPHERE:
        m = fa.m
        var = st.integers(1, m).map(lambda j: SpherePolynomial.variable(m, j))
        coeff = st.tuples(small, var).map(lambda t: t[1] * t[0])
    else:
        coeff = small
    for degree in (0, 1, 2):
        eta = random_form(data.draw, fa.m, degree, coeff) if degree else KForm(
            fa.m, 0, np.array(data.draw(coeff), dtype=object))
        assert exterior_derivative(fa, exterior_derivative(fa, eta)).is_zero()


@settings(max_examples=50)
@given(data=st.data())
def test_wedge_graded_commutative_and_associative(data):
    m = 5
    a, b, c = (random_form(data.draw, m, 1, small) for _ in range(3))
    w = random_form(data.draw, m, 2, small)
    assert a.wedge(b) == -b.wedge(a)
    assert a.wedge(a).is_zero()
    assert a.wedge(w) == w.wedge(a)
    assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))


@settings(max_examples=30)
@given(data=st.data())
def test_d_is_an_antiderivation(data):
    fa = subject("ot", s=2, r=[1, "1/2"]).fa
    a = random_form(data.draw, fa.m, 1, small)
    b = random_form(data.draw, fa.m, 1, small)
    da, db = exterior_derivative(fa, a), exterior_derivative(fa, b)
    assert exterior_derivative(fa, a.wedge(b)) == da.wedge(b) - a.wedge(db)


def test_wedge_uses_determinant_convention():
    e1, e2 = KForm.coframe(4, 0), KForm.coframe(4, 1)
    form = e1.wedge(e2)
    assert form.arr[0, 1] == 1 and form.arr[1, 0] == -1


def test_differential_of_coframe_is_minus_dual_bracket():
    # [e1, e2] = e3 gives de^3 = -e^12
    fa = algebra(4, [(0, 1, {2: Fraction(1)})])
    assert exterior_derivative(fa, KForm.coframe(4, 2)) == -KForm.coframe(4, 0).wedge(KForm.coframe(4, 1))


def test_kform_degree_limits():
    with pytest.raises(FrameError):
        KForm(4, 5)
    with pytest.raises(FrameError):
        exterior_derivative(algebra(4, []), KForm(4, 4))


# -- structure checks ------------------------------------------------------------------------


@pytest.mark.parametrize("name,params", CATALOG, ids=catalog_ids())
def test_catalog_structure(name, params):
    s = subject(name, **params)
    assert check_antisymmetry(s.fa)
    assert jacobi_defect(s.fa)
    assert nijenhuis(s.fa, s.H.J)
    assert s.H.is_valid()
    assert verify_lck(s.fa, s.H, s.entry.lee.theta)
    if s.fa.ring == CONSTANTS:
        assert is_unimodular(s.fa)


def test_jacobi_failure_has_witness():
    # [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e1 breaks Jacobi
    fa = algebra(4, [(0, 1, {2: Fraction(1)}), (1, 2, {0: Fraction(1)}), (2, 0, {0: Fraction(1)})])
    report = jacobi_defect(fa)
    assert not report and "cyclic sum" in report.witness


def test_frame_action_compatibility():
    assert frame_action_defect(subject("hopf", n=2).fa)
    assert frame_action_defect(subject("inoue", mu=1, y=1).fa)
    # constant brackets read as sphere-ring vector fields contradict e_i(x_j) = d_ij - x_i x_j
    fa = algebra(4, [(0, 1, {1: Fraction(1)})], ring=SPHERE)
    report = frame_action_defect(fa)
    assert not report and "[e1,e2](x1)" in report.witness


def test_antisymmetry_failure():
    f = _table(2)
    f[0, 1, 0] = Fraction(1)
    report = check_antisymmetry(FrameAlgebra(2, CONSTANTS, f))
    assert not report and "f[1,2]" in report.witness


def test_nonintegrable_J_detected():
    # [e1,e2] = e3 with J e1 = e3, J e2 = e4: N(e1,e2) = -e3
    fa = algebra(4, [(0, 1, {2: Fraction(1)})])
    H = HermitianStructure(_identity(4), _complex_structure(4, [(0, 2), (1, 3)]))
    report = nijenhuis(fa, H.J)
    assert not report
    assert report.worst == (0, 1, 2, -1)


def test_non_unimodular():
    assert not is_unimodular(algebra(2, [(0, 1, {1: Fraction(1)})]))


def test_hermitian_checks():
    H = HermitianStructure(np.array([[1, 0], [0, 2]]), np.array([[0, -1], [1, 0]]))
    checks = H.checks()
    assert checks["J^2 = -I"] and checks["g positive definite"]
    assert not checks["g(J.,J.) = g"]
    with pytest.raises(RingMismatchError):
        HermitianStructure(np.array([[SpherePolynomial.variable(2, 1), 0], [0, 1]], dtype=object),
                           np.array([[0, -1], [1, 0]]))


# -- Lee forms ---------------------------------------------------------------------------------


@pytest.mark.parametrize("mu,y", [(1, 1), (2, 3), (Fraction(-1, 2), 0), (Fraction(5, 3), Fraction(-2, 7))])
def test_inoue_lee_form_solved(mu, y):
    s = subject("inoue", mu=mu, y=y)
    lee = solve_lee_form(s.fa, s.H)
    assert lee.theta == KForm.coframe(4, 0) * Fraction(mu)


@pytest.mark.parametrize("n,a", [(2, [0]), (2, [1]), (3, [1, 2]), (4, [0, "1/2", 2])])
def test_heisenberg_lee_form(n, a):
    s = subject("heisenberg", n=n, a=a)
    lee = solve_lee_form(s.fa, s.H)
    assert lee.theta == KForm.coframe(2 * n, 0)
    assert lee.theta(lee.A) == 1 and lee.norm_squared == 1
    assert list(lee.JA) == [0, 1] + [0] * (2 * n - 2)


@pytest.mark.parametrize("s_", [1, 2, 3, 4])
def test_ot_lee_vector_length(s_):
    s = subject("ot", s=s_, r=list(range(1, s_ + 1)))
    lee = solve_lee_form(s.fa, s.H)
    assert lee.theta == s.entry.lee.theta
    # Gram oracle: |theta|^2 = theta^T g^{-1} theta computed by sympy
    g = sympy.Matrix(s.H.g.tolist())
    th = sympy.Matrix([sympy.Rational(int(t)) for t in lee.theta.arr])
    assert lee.norm_squared == Fraction(str((th.T * g.inv() * th)[0, 0]))
    assert lee.norm_squared == Fraction(s_, s_ + 1)
    for i in range(s_):
        assert lee.theta.arr[i] == 1  # theta(A_i) = 1
    expected_A = [Fraction(1, s_ + 1)] * s_ + [0] * (s_ + 2)
    assert list(lee.A) == expected_A
    assert list(lee.JA) == [0] * s_ + [Fraction(1, s_ + 1)] * s_ + [0, 0]


def test_hopf_lee_data():
    s = subject("hopf", n=2)
    entry = make_hopf(2)
    Hfield = hopf_H(2)
    alpha = KForm(4, 1, s.H.lower(Hfield))
    assert alpha(Hfield) == 1
    assert entry.lee.theta == alpha * -2
    assert entry.lee.norm_squared == 4
    with pytest.raises(RingMismatchError):
        solve_lee_form(s.fa, s.H)


def test_not_lck():
    fa = algebra(6, [(3, 1, {4: Fraction(-1)})])
    with pytest.raises(NotLCKError):
        solve_lee_form(fa, standard(6))


def test_not_closed():
    fa = algebra(4, [(3, 2, {0: Fraction(1)}), (1, 2, {1: Fraction(1)})])
    assert jacobi_defect(fa)
    with pytest.raises(NotClosedError):
        solve_lee_form(fa, standard(4))


def test_abelian_is_kahler():
    s = subject("abelian", m=4)
    lee = solve_lee_form(s.fa, s.H)
    assert lee.is_kahler
    assert exterior_derivative(s.fa, fundamental_form(s.H)).is_zero()


@pytest.mark.parametrize("name,params", [("heisenberg", {"n": 3, "a": [1, 2]}), ("ot", {"s": 3, "r": [1, 2, 3]})])
def test_distribution_basis_is_orthogonal_complement(name, params):
    s = subject(name, **params)
    lee = s.entry.lee
    basis = distribution_basis(s.H, lee)
    assert len(basis) == s.fa.m - 2
    for i, u in enumerate(basis):
        assert s.H.inner(u, lee.A) == 0 and s.H.inner(u, lee.JA) == 0
        for v in basis[i + 1:]:
            assert s.H.inner(u, v) == 0
