"""Exact Gaussian elimination over fields (``Fraction`` or ``QuadraticNumber`` entries)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


def _is_zero(x) -> bool:
    return x == 0


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; pivots are the first nonzero entry in column order."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    if not mat:
        return mat, pivots
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(mat)) if not _is_zero(mat[i][c])), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        p = mat[r][c]
        mat[r] = [x / p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not _is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of ``{v : rows @ v = 0}``, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0])
    reduced, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list | None:
    """One solution of ``rows @ v = rhs`` (free variables set to zero), or None."""
    ncols = len(rows[0])
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        return None
    v = [Fraction(0)] * ncols
    for row, pc in zip(reduced, pivots):
        v[pc] = row[ncols]
    return v


def inverse(matrix) -> np.ndarray:
    """Exact inverse of a square matrix; raises ``ZeroDivisionError`` if singular."""
    mat = np.asarray(matrix, dtype=object)
    n = mat.shape[0]
    aug = [list(mat[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return np.array([row[n:] for row in reduced], dtype=object)


def determinant(matrix) -> Fraction:
    mat = [list(r) for r in np.asarray(matrix, dtype=object)]
    n = len(mat)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if not _is_zero(mat[i][c])), None)
        if p is None:
            return Fraction(0)
        if p != c:
            mat[c], mat[p] = mat[p], mat[c]
            det = -det
        det *= mat[c][c]
        for i in range(c + 1, n):
            if not _is_zero(mat[i][c]):
                f = mat[i][c] / mat[c][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[c])]
    return det


def is_positive_definite(matrix) -> bool:
    """Sylvester's criterion on leading principal minors (exact)."""
    mat = np.asarray(matrix, dtype=object)
    n = mat.shape[0]
    return all(determinant(mat[:k, :k]) > 0 for k in range(1, n + 1))


class EchelonBasis:
    """Incrementally maintained reduced echelon basis of a subspace of ``F^n``."""

    def __init__(self, n: int):
        self.n = n
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: Sequence) -> list:
        v = list(vec)
        for row, pc in zip(self.rows, self.pivots):
            f = v[pc]
            if not _is_zero(f):
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vec: Sequence) -> bool:
        return all(_is_zero(x) for x in self.reduce(vec))

    def add(self, vec: Sequence) -> bool:
        """Insert ``vec``; return True if it enlarged the span."""
        if len(vec) != self.n:
            raise ValueError(f"expected length {self.n}, got {len(vec)}")
        v = self.reduce(vec)
        pc = next((i for i, x in enumerate(v) if not _is_zero(x)), None)
        if pc is None:
            return False
        p = v[pc]
        v = [x / p for x in v]
        for k, row in enumerate(self.rows):
            f = row[pc]
            if not _is_zero(f):
                self.rows[k] = [a - f * b for a, b in zip(row, v)]
        at = next((k for k, q in enumerate(self.pivots) if q > pc), len(self.pivots))
        self.rows.insert(at, v)
        self.pivots.insert(at, pc)
        return True
