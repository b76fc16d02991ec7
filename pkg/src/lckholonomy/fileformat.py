"""Frame-algebra description files (YAML).

Grammar, with 1-based indices throughout::

    dimension: 4                 # required, even integer >= 2
    ring: constants              # required, "constants" or "sphere"
    brackets:                    # required, possibly empty list
      - {i: 1, j: 2, k: 2, coeff: "1"}
      - {i: 1, j: 3, k: 3, coeff: "-1/2"}
    metric:                      # required, m x m rationals
      - [1, 0, 0, 0]
      ...
    J:                           # required, m x m rationals; column i is J e_i
      - [0, -1, 0, 0]
      ...
    name: inoue                  # optional label used in reports
    lee: ["1", "0", "0", "0"]    # optional Lee form components
    vaisman: false               # optional declared flag

Each bracket record sets ``[e_i, e_j]`` to have ``e_k``-coefficient
``coeff``. The mirrored coefficient of ``[e_j, e_i]`` is filled in by
antisymmetry unless the file lists it explicitly, in which case both
entries are kept verbatim and the structure suite judges them.

Coefficients and matrix entries are expression strings in the variables
``x1..xm`` (sphere ring only), integers, and ``p/q`` rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import yaml

from .frames import CONSTANTS, SPHERE, FrameAlgebra, HermitianStructure, KForm, zeros
from .rings import ExpressionError, SpherePolynomial, parse_expression

REQUIRED = ("dimension", "ring", "brackets", "metric", "J")
OPTIONAL = ("name", "lee", "vaisman")


class DescriptionError(ValueError):
    """Malformed description; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.reason = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass
class FrameDescription:
    fa: FrameAlgebra
    H: HermitianStructure
    name: str | None = None
    theta: KForm | None = None
    vaisman: bool | None = None


def _fail(node, message: str):
    mark = node.start_mark
    raise DescriptionError(message, mark.line + 1, mark.column + 1)


def _scalar(node, what: str) -> str:
    if not isinstance(node, yaml.ScalarNode):
        _fail(node, f"{what} must be a scalar")
    return node.value


def _integer(node, what: str) -> int:
    text = _scalar(node, what)
    try:
        return int(text)
    except ValueError:
        _fail(node, f"{what} must be an integer, got {text!r}")


def _expression(node, m: int | None, what: str):
    text = _scalar(node, what)
    try:
        return parse_expression(text, m)
    except ExpressionError as exc:
        quoted = 1 if node.style in ("'", '"') else 0
        mark = node.start_mark
        raise DescriptionError(f"{what}: {exc.reason}", mark.line + 1,
                               mark.column + quoted + exc.column) from None


def _sequence(node, what: str, length: int | None = None) -> list:
    if not isinstance(node, yaml.SequenceNode):
        _fail(node, f"{what} must be a list")
    if length is not None and len(node.value) != length:
        _fail(node, f"{what} must have {length} entries, got {len(node.value)}")
    return node.value


def _mapping(node, what: str) -> dict:
    if not isinstance(node, yaml.MappingNode):
        _fail(node, f"{what} must be a mapping")
    out = {}
    for key, value in node.value:
        name = _scalar(key, "key")
        if name in out:
            _fail(key, f"duplicate key {name!r}")
        out[name] = (key, value)
    return out


def _matrix(node, m: int, what: str) -> np.ndarray:
    out = zeros(m, m)
    for r, row in enumerate(_sequence(node, what, m)):
        for c, cell in enumerate(_sequence(row, f"{what} row {r + 1}", m)):
            out[r, c] = _expression(cell, None, f"{what}[{r + 1}][{c + 1}]")
    return out


def _index(node, m: int, what: str) -> int:
    value = _integer(node, what)
    if not 1 <= value <= m:
        _fail(node, f"{what} must lie in 1..{m}, got {value}")
    return value - 1


def loads(text: str) -> FrameDescription:
    try:
        root = yaml.compose(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        line, col = (mark.line + 1, mark.column + 1) if mark else (None, None)
        raise DescriptionError(f"YAML syntax error: {exc.problem or exc}", line, col) from None
    if root is None:
        raise DescriptionError("empty document", 1, 1)
    fields = _mapping(root, "document")
    for name, (key, _) in fields.items():
        if name not in REQUIRED + OPTIONAL:
            _fail(key, f"unknown field {name!r}")
    for name in REQUIRED:
        if name not in fields:
            _fail(root, f"missing required field {name!r}")

    m_node = fields["dimension"][1]
    m = _integer(m_node, "dimension")
    if m < 2 or m % 2:
        _fail(m_node, "dimension must be an even integer >= 2")
    ring_node = fields["ring"][1]
    ring = _scalar(ring_node, "ring")
    if ring not in (CONSTANTS, SPHERE):
        _fail(ring_node, f"ring must be 'constants' or 'sphere', got {ring!r}")
    var_count = m if ring == SPHERE else None

    f = zeros(m, m, m)
    given: dict[tuple[int, int, int], object] = {}
    for rec in _sequence(fields["brackets"][1], "brackets"):
        entry = _mapping(rec, "bracket record")
        for name in ("i", "j", "k", "coeff"):
            if name not in entry:
                _fail(rec, f"bracket record needs field {name!r}")
        for name, (key, _) in entry.items():
            if name not in ("i", "j", "k", "coeff"):
                _fail(key, f"unknown bracket field {name!r}")
        i = _index(entry["i"][1], m, "i")
        j = _index(entry["j"][1], m, "j")
        k = _index(entry["k"][1], m, "k")
        if (i, j, k) in given:
            _fail(rec, f"duplicate bracket record ({i + 1}, {j + 1}, {k + 1})")
        coeff = _expression(entry["coeff"][1], var_count, "coeff")
        given[i, j, k] = coeff
    for (i, j, k), coeff in given.items():
        f[i, j, k] = coeff
        if (j, i, k) not in given and i != j:
            f[j, i, k] = -coeff
    fa = FrameAlgebra(m, ring, f)

    H = HermitianStructure(_matrix(fields["metric"][1], m, "metric"), _matrix(fields["J"][1], m, "J"))
    desc = FrameDescription(fa, H)
    if "name" in fields:
        desc.name = _scalar(fields["name"][1], "name")
    if "lee" in fields:
        cells = _sequence(fields["lee"][1], "lee", m)
        desc.theta = KForm(m, 1, np.array(
            [fa.coerce(_expression(c, var_count, f"lee[{n + 1}]")) for n, c in enumerate(cells)],
            dtype=object))
    if "vaisman" in fields:
        node = fields["vaisman"][1]
        text = _scalar(node, "vaisman").lower()
        if text not in ("true", "false"):
            _fail(node, "vaisman must be true or false")
        desc.vaisman = text == "true"
    return desc


def load(path) -> FrameDescription:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def _format(value) -> str:
    if isinstance(value, SpherePolynomial):
        return str(value)
    return str(Fraction(value))


def dumps(fa: FrameAlgebra, H: HermitianStructure, *, name: str | None = None,
          theta: KForm | None = None, vaisman: bool | None = None) -> str:
    """Serialize with only the ``i < j`` bracket records (the rest follow by antisymmetry)."""
    m = fa.m
    records = []
    f = fa.brackets
    for i in range(m):
        for j in range(i, m):
            for k in range(m):
                value, back = f[i, j, k], f[j, i, k]
                if value != 0:
                    records.append({"i": i + 1, "j": j + 1, "k": k + 1, "coeff": _format(value)})
                if i != j and back != -value:
                    records.append({"i": j + 1, "j": i + 1, "k": k + 1, "coeff": _format(back)})
    doc = {"dimension": m, "ring": fa.ring, "brackets": records,
           "metric": [[_format(x) for x in row] for row in H.g],
           "J": [[_format(x) for x in row] for row in H.J]}
    if name is not None:
        doc["name"] = name
    if theta is not None:
        doc["lee"] = [_format(x) for x in theta.arr]
    if vaisman is not None:
        doc["vaisman"] = vaisman
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None, width=100)


def dump(path, *args, **kwargs) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(*args, **kwargs))
