"""Dense Gaussian elimination over F_p on lists of integer rows."""

from __future__ import annotations

from typing import Sequence


def rref(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [[x % p for x in row] for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][c], -1, p)
        row = [x * inv % p for x in mat[r]]
        mat[r] = row
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                other = mat[i]
                mat[i] = [(a - f * b) % p for a, b in zip(other, row)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref(rows, p)[1])


def nullspace(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {v : M v = 0}, in reduced form (one free column set to 1 per vector)."""
    reduced, pivots = rref(rows, p) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f] % p
        basis.append(v)
    return basis


class EchelonSpace:
    """Incrementally maintained row space, for span-membership queries."""

    def __init__(self, p: int):
        self.p = p
        self.rows: dict[int, list[int]] = {}  # pivot column -> row with 1 at pivot

    def reduce(self, v: Sequence[int]) -> list[int]:
        p = self.p
        v = [x % p for x in v]
        for c, row in self.rows.items():
            if v[c]:
                f = v[c]
                v = [(a - f * b) % p for a, b in zip(v, row)]
        return v

    def add(self, v: Sequence[int]) -> bool:
        """Insert ``v``; returns False if it was already in the span."""
        v = self.reduce(v)
        c = next((i for i, x in enumerate(v) if x), None)
        if c is None:
            return False
        inv = pow(v[c], -1, self.p)
        v = [x * inv % self.p for x in v]
        for k, row in self.rows.items():
            if row[c]:
                f = row[c]
                self.rows[k] = [(a - f * b) % self.p for a, b in zip(row, v)]
        self.rows[c] = v
        return True

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def __len__(self):
        return len(self.rows)
