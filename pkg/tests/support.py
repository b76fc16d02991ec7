"""Cached catalog subjects and small helpers shared by the test modules."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from lckholonomy.catalog import make_entry
from lckholonomy.suites import Subject

ACCEPTANCE_LINES: list[str] = []


def _freeze(params: dict) -> tuple:
    out = []
    for key, value in sorted(params.items()):
        if isinstance(value, (list, tuple)):
            value = tuple(Fraction(v) for v in value)
        out.append((key, value))
    return tuple(out)


@lru_cache(maxsize=None)
def _subject(name: str, frozen: tuple) -> Subject:
    params = {k: list(v) if isinstance(v, tuple) else v for k, v in frozen}
    return Subject.from_entry(make_entry(name, **params))


def subject(name: str, **params) -> Subject:
    return _subject(name, _freeze(params))


def F(text) -> Fraction:
    return Fraction(text)


def matrix(rows) -> np.ndarray:
    return np.array([[Fraction(x) for x in row] for row in rows], dtype=object)


def record(criterion: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)


# small catalog used by several modules
CATALOG = [
    ("heisenberg", {"n": 2, "a": [0]}),
    ("heisenberg", {"n": 3, "a": [1, 2]}),
    ("inoue", {"mu": 1, "y": 1}),
    ("inoue", {"mu": 2, "y": 0}),
    ("ot", {"s": 1, "r": [1]}),
    ("ot", {"s": 2, "r": [1, "1/2"]}),
    ("hopf", {"n": 2}),
    ("hopf", {"n": 3}),
    ("abelian", {"m": 4}),
]


def catalog_ids():
    return [f"{name}-{'-'.join(str(v) for v in params.values())}" for name, params in CATALOG]
