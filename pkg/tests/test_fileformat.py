import textwrap

import pytest

from lckholonomy import fileformat
from lckholonomy.catalog import make_entry
from lckholonomy.fileformat import DescriptionError
from lckholonomy.frames import arrays_equal
from lckholonomy.rings import SpherePolynomial
from lckholonomy.suites import run_custom, run_suite
from support import CATALOG, catalog_ids

GOOD = textwrap.dedent("""\
    dimension: 4
    ring: constants
    brackets:
      - {i: 1, j: 2, k: 2, coeff: "1"}
      - {i: 1, j: 3, k: 3, coeff: "-1/2"}
      - {i: 1, j: 3, k: 4, coeff: "1"}
      - {i: 1, j: 4, k: 3, coeff: "-1"}
      - {i: 1, j: 4, k: 4, coeff: "-1/2"}
    metric:
      - [1, 0, 0, 0]
      - [0, 1, 0, 0]
      - [0, 0, 1, 0]
      - [0, 0, 0, 1]
    J:
      - [0, -1, 0, 0]
      - [1, 0, 0, 0]
      - [0, 0, 0, -1]
      - [0, 0, 1, 0]
    """)


def export(name, params):
    entry = make_entry(name, **params)
    return entry, fileformat.dumps(entry.fa, entry.H, name=entry.ident, theta=entry.lee.theta,
                                   vaisman=entry.vaisman)


def test_handwritten_inoue_matches_catalog():
    desc = fileformat.loads(GOOD)
    entry = make_entry("inoue", mu=1, y=1)
    assert arrays_equal(desc.fa.brackets, entry.fa.brackets)
    assert arrays_equal(desc.H.J, entry.H.J)
    assert desc.name is None and desc.theta is None and desc.vaisman is None


@pytest.mark.parametrize("name,params", CATALOG, ids=catalog_ids())
def test_round_trip(name, params):
    entry, text = export(name, params)
    desc = fileformat.loads(text)
    assert desc.fa.ring == entry.fa.ring
    assert arrays_equal(desc.fa.brackets, entry.fa.brackets)
    assert arrays_equal(desc.H.g, entry.H.g) and arrays_equal(desc.H.J, entry.H.J)
    assert desc.theta == entry.lee.theta
    assert desc.name == entry.ident and desc.vaisman == entry.vaisman
    assert fileformat.dumps(desc.fa, desc.H, name=desc.name, theta=desc.theta, vaisman=desc.vaisman) == text


def test_file_round_trip(tmp_path):
    entry, text = export("hopf", {"n": 2})
    path = tmp_path / "hopf.yaml"
    fileformat.dump(path, entry.fa, entry.H, name=entry.ident, theta=entry.lee.theta)
    desc = fileformat.load(path)
    assert isinstance(desc.fa.brackets[0, 1, 1], SpherePolynomial)
    assert arrays_equal(desc.fa.brackets, entry.fa.brackets)


@pytest.mark.parametrize("name,params,suite", [
    ("inoue", {"mu": 1, "y": 1}, "all"),
    ("heisenberg", {"n": 2, "a": [1]}, "holonomy"),
    ("ot", {"s": 2, "r": [1, "1/2"]}, "bismut-tables"),
    ("hopf", {"n": 2}, "all"),
])
def test_imported_reports_identical(name, params, suite):
    _, text = export(name, params)
    direct = run_suite(name, suite, **params)
    imported = run_custom(fileformat.loads(text), suite)
    assert imported.to_json() == direct.to_json()
    assert imported.to_text() == direct.to_text()


def test_sphere_ring_with_rational_table_is_accepted():
    text = GOOD.replace("ring: constants", "ring: sphere")
    desc = fileformat.loads(text)
    assert desc.fa.ring == "sphere"
    assert desc.fa.brackets[0, 1, 1] == 1
    report = run_custom(desc, "structure")
    assert report.status == "pass"
    action = [c for c in report.checks if c.name == "brackets agree with the frame action"]
    assert action and action[0].status == "skip"


def test_sphere_ring_with_bad_function_table_fails_structure():
    # constant bracket plus one function coefficient: inconsistent with e_i(x_j) = d_ij - x_i x_j
    text = GOOD.replace("ring: constants", "ring: sphere").replace('coeff: "1"}', 'coeff: "x1"}', 1)
    report = run_custom(fileformat.loads(text), "structure")
    assert report.status == "fail"
    assert any(c.status == "fail" and c.name == "brackets agree with the frame action" for c in report.checks)


def test_explicit_mirror_kept_verbatim():
    text = GOOD.replace('  - {i: 1, j: 2, k: 2, coeff: "1"}\n',
                        '  - {i: 1, j: 2, k: 2, coeff: "1"}\n  - {i: 2, j: 1, k: 2, coeff: "1"}\n')
    desc = fileformat.loads(text)
    assert desc.fa.brackets[0, 1, 1] == 1 and desc.fa.brackets[1, 0, 1] == 1
    report = run_custom(desc, "lck")
    assert report.status == "fail" and report.exit_code == 1
    assert any(c.status == "fail" and "antisymm" in c.name.lower() for c in report.checks)


def test_jacobi_failure_is_a_structure_failure():
    text = GOOD.replace('  - {i: 1, j: 2, k: 2, coeff: "1"}\n',
                        '  - {i: 1, j: 2, k: 2, coeff: "1"}\n  - {i: 2, j: 3, k: 1, coeff: "1"}\n')
    report = run_custom(fileformat.loads(text), "structure")
    assert report.status == "fail"
    assert any(c.status == "fail" and "jacobi" in c.name.lower() for c in report.checks)


@pytest.mark.parametrize("text,line,column,fragment", [
    (GOOD.replace('coeff: "-1/2"}', 'coeff: "-1/ 2 +"}', 1), 5, 39, "coeff"),
    (GOOD.replace("k: 4, coeff", "k: 9, coeff", 1), 6, 21, "1..4"),
    (GOOD.replace("dimension: 4", "dimension: 5"), 1, 12, "even"),
    (GOOD.replace("ring: constants", "ring: reals"), 2, 7, "ring"),
    (GOOD.replace("  - [0, 0, 0, 1]\nJ", "  - [0, 0, 1]\nJ"), 13, 5, "4 entries"),
    (GOOD + "colour: red\n", 19, 1, "unknown field"),
    (GOOD.replace("dimension: 4\n", ""), 1, 1, "dimension"),
    (GOOD.replace('{i: 1, j: 2, k: 2, coeff: "1"}', '{i: 1, j: 2, k: 2}'), 4, 5, "coeff"),
    (GOOD.replace('  - {i: 1, j: 3, k: 3', '  - {i: 1, j: 2, k: 2, coeff: "3"}\n  - {i: 1, j: 3, k: 3'), 5, 5,
     "duplicate"),
    ("dimension: [4\n", 2, 1, "YAML"),
    (GOOD.replace("metric:", "lee: [1, 0]\nmetric:"), 9, 6, "4 entries"),
    (GOOD + "vaisman: maybe\n", 19, 10, "true or false"),
    (GOOD.replace('coeff: "1"}', 'coeff: "x1"}', 1), 4, 32, "variable"),
])
def test_errors_carry_line_and_column(text, line, column, fragment):
    with pytest.raises(DescriptionError) as info:
        fileformat.loads(text)
    err = info.value
    assert (err.line, err.column) == (line, column), str(err)
    assert fragment.lower() in str(err).lower()
    assert str(err).startswith(f"line {line}, column {column}: ")


def test_empty_document():
    with pytest.raises(DescriptionError):
        fileformat.loads("")
