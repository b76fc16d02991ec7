from fractions import Fraction

import numpy as np
import pytest

from lckholonomy.catalog import (
    EXAMPLES,
    CatalogError,
    make_entry,
    make_heisenberg,
    make_inoue,
    make_ot,
    normalized,
    oracle_tables,
    ot_operators,
)
from lckholonomy.frames import arrays_equal
from support import CATALOG, catalog_ids, subject


def table_mismatches(computed, table):
    return [key for key, vec in table.items() if not arrays_equal(computed[key], vec)]


@pytest.mark.parametrize("name,params", CATALOG, ids=catalog_ids())
def test_entry_invariants(name, params):
    s = subject(name, **params)
    entry = s.entry
    assert entry.m == s.fa.m == entry.H.m
    assert entry.ident.startswith(name)
    assert s.vaisman == entry.vaisman
    assert entry.kahler == (name == "abelian")
    assert len(entry.labels) == entry.m


def test_idents():
    assert make_entry("inoue", mu=1, y=1).ident == "inoue(mu=1, y=1)"
    assert make_entry("heisenberg", n=3, a=[1, 2]).ident == "heisenberg(n=3, a=1,2)"
    assert make_entry("ot", s=2, r=["1/2", -1]).ident == "ot(s=2, r=1/2,-1)"
    assert make_entry("hopf").ident == "hopf(n=2)"


@pytest.mark.parametrize("r", [0, 1, Fraction(-3, 2)])
def test_ot_one_has_inoue_brackets(r):
    ot, inoue = make_ot(1, [r]), make_inoue(1, r)
    assert arrays_equal(ot.fa.brackets, inoue.fa.brackets)
    assert not arrays_equal(ot.H.g, inoue.H.g)


def test_normalized_hopf():
    entry = normalized(make_entry("hopf", n=3))
    assert entry.lee.norm_squared == 1
    assert entry.params["normalized"] is True
    heis = make_entry("heisenberg", n=2)
    assert normalized(heis) is heis
    with pytest.raises(CatalogError):
        normalized(make_entry("abelian"))


@pytest.mark.parametrize("call", [
    lambda: make_inoue(0, 1),
    lambda: make_heisenberg(1, []),
    lambda: make_heisenberg(3, [1]),
    lambda: make_ot(0, []),
    lambda: make_entry("hopf", n=1),
    lambda: make_entry("abelian", m=3),
    lambda: make_entry("klein"),
    lambda: make_entry("inoue", mu=0.5),
    lambda: oracle_tables(make_entry("abelian")),
    lambda: ot_operators(make_entry("inoue"), None),
])
def test_constructor_errors(call):
    with pytest.raises(CatalogError):
        call()


def test_examples_listed():
    assert set(EXAMPLES) == {"heisenberg", "inoue", "ot", "hopf", "abelian"}


# -- transcribed tables against the computation ----------------------------------------------------


@pytest.mark.parametrize("name,params", [p for p in CATALOG if p[0] != "abelian"], ids=catalog_ids()[:-1])
def test_oracle_tables_match(name, params):
    s = subject(name, **params)
    tables = oracle_tables(s.entry)
    conns = {"levi-civita": s.levi_civita, "bismut": s.bismut}
    for label, table in tables.connections.items():
        assert not table_mismatches(conns[label].gamma, table), label
    for label, table in tables.curvature.items():
        assert label == "bismut"
        assert not table_mismatches(s.Rb.arr, table)
    rics = {"levi-civita": s.ric_g, "bismut": s.ric_b}
    for label, expected in tables.ricci.items():
        assert arrays_equal(rics[label], expected), label


def test_ot_tables_are_complete():
    s = subject("ot", s=2, r=[1, "1/2"])
    tables = oracle_tables(s.entry)
    m = s.fa.m
    assert len(tables.connections["levi-civita"]) == m * m
    assert len(tables.connections["bismut"]) == m * m
    assert len(tables.curvature["bismut"]) == m * (m - 1) // 2 * m


def test_oracle_detects_a_wrong_table():
    s = subject("inoue", mu=1, y=1)
    tables = oracle_tables(make_inoue(1, 2))  # different y
    assert table_mismatches(s.bismut.gamma, tables.connections["bismut"])


@pytest.mark.parametrize("s_", [1, 2, 3])
def test_ot_operators(s_):
    s = subject("ot", s=s_, r=list(range(1, s_ + 1)))
    ops = ot_operators(s.entry, s.Rb)
    assert all(arrays_equal(a, b) for a, b in zip(ops.S, ops.S_defined))
    assert all(arrays_equal(ops.T[key], ops.T_defined[key]) for key in ops.T)
    assert len(ops.T) == s_ * (s_ - 1)
    assert len(ops.U) == 2 * s_ + s_ * (s_ - 1) // 2
    assert len(ops.V) == s_ + 1 + s_ * (s_ - 1) // 2
    assert all(isinstance(x, Fraction) for x in np.asarray(ops.S[0]).flat)
