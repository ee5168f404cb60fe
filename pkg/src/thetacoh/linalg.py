"""Exact linear algebra over Q.

Two layers:

* ``RationalMatrix`` with ``rref`` / ``nullspace`` / ``in_span`` -- plain dense
  Gauss-Jordan, used for reported matrices and small certificates.
* ``Echelon`` -- an incrementally maintained echelon form of sparse vectors
  (``dict`` from orderable column keys to rationals).  All graded-piece
  computations go through it.

Pivoting is deterministic everywhere: the pivot of a row is its smallest
nonzero column.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from gmpy2 import mpq

from .algebra import format_rational, parse_rational

__all__ = [
    "RationalMatrix",
    "rref",
    "rank",
    "nullspace",
    "in_span",
    "Echelon",
]


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the stated dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RationalMatrix:
        data = tuple(tuple(mpq(v) for v in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> RationalMatrix:
        data = tuple(tuple(mpq(col[i]) for col in columns) for i in range(rows))
        return cls(rows, len(columns), data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls(rows, cols, tuple((mpq(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, size: int) -> RationalMatrix:
        return cls.from_rows([[1 if i == j else 0 for j in range(size)] for i in range(size)], size)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.entries]

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(self.cols, self.rows,
                              tuple(tuple(self.entries[i][j] for i in range(self.rows))
                                    for j in range(self.cols)))

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((a * b for a, b in zip(r, vec)), mpq(0)) for r in self.entries]

    def to_json(self) -> list[list[str]]:
        return [[format_rational(v) for v in r] for r in self.entries]

    @classmethod
    def from_json(cls, data: list[list[str]], cols: int | None = None) -> RationalMatrix:
        return cls.from_rows([[parse_rational(v) for v in r] for r in data], cols)


def rref(M: RationalMatrix) -> tuple[RationalMatrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns."""
    a = [list(r) for r in M.entries]
    pivots = []
    r = 0
    for c in range(M.cols):
        if r == M.rows:
            break
        p = next((i for i in range(r, M.rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        row = a[r]
        for i in range(M.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [u - f * v for u, v in zip(a[i], row)]
        pivots.append(c)
        r += 1
    return RationalMatrix(M.rows, M.cols, tuple(tuple(x) for x in a)), len(pivots), pivots


def rank(M: RationalMatrix) -> int:
    return rref(M)[1]


def nullspace(M: RationalMatrix) -> list[list]:
    """Basis of {v : Mv = 0}, one vector per free column."""
    R, rk, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivset:
            continue
        v = [mpq(0)] * M.cols
        v[f] = mpq(1)
        for i, p in enumerate(pivots):
            v[p] = -R.entries[i][f]
        basis.append(v)
    return basis


def in_span(vec: Sequence, columns: RationalMatrix) -> tuple[bool, list | None]:
    """Is ``vec`` in the column span?  Returns coefficients when it is."""
    if len(vec) != columns.rows:
        raise ValueError("dimension mismatch")
    aug = RationalMatrix.from_rows(
        [list(columns.entries[i]) + [vec[i]] for i in range(columns.rows)], columns.cols + 1)
    R, _, pivots = rref(aug)
    if pivots and pivots[-1] == columns.cols:
        return False, None
    coeffs = [mpq(0)] * columns.cols
    for i, p in enumerate(pivots):
        coeffs[p] = R.entries[i][columns.cols]
    return True, coeffs


def _axpy(target: dict, f, src: dict) -> None:
    """target -= f * src, dropping zeros."""
    for k, v in src.items():
        nv = target.get(k)
        if nv is None:
            target[k] = -f * v
        else:
            nv -= f * v
            if nv:
                target[k] = nv
            else:
                del target[k]


class Echelon:
    """Echelon form of a growing set of sparse vectors.

    Row ``k`` (in insertion order) has no entries in the pivot columns of
    rows ``0..k-1``, so reduction processes pivots in insertion order.
    With ``track=True`` each row also remembers which inserted vectors (by
    tag) it combines, giving span-membership certificates.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self._rows: dict = {}
        self._combo: dict = {}
        self._order: dict = {}
        self._pivots: list = []

    def __len__(self) -> int:
        return len(self._pivots)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def pivots(self) -> list:
        return list(self._pivots)

    def _reduce(self, vec: dict, combo: dict | None):
        order = self._order
        rows = self._rows
        heap = [order[k] for k in vec if k in order]
        heapq.heapify(heap)
        pivots = self._pivots
        last = -1
        while heap:
            idx = heapq.heappop(heap)
            if idx == last:
                continue
            last = idx
            p = pivots[idx]
            f = vec.get(p)
            if not f:
                continue
            row = rows[p]
            _axpy(vec, f, row)
            if combo is not None:
                _axpy(combo, f, self._combo[p])
            for k in row:
                j = order.get(k)
                if j is not None and j > idx and k in vec:
                    heapq.heappush(heap, j)
        return vec, combo

    def reduce(self, vec: dict) -> dict:
        """Residual of ``vec`` modulo the span (a new dict)."""
        return self._reduce(dict(vec), None)[0]

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def express(self, vec: dict) -> dict | None:
        """Combination of inserted tags equal to ``vec``, or None."""
        if not self.track:
            raise ValueError("express needs track=True")
        res, combo = self._reduce(dict(vec), {})
        if res:
            return None
        return {k: -v for k, v in combo.items()}

    def add(self, vec: dict, tag: Hashable = None) -> bool:
        """Insert a vector; True when it enlarged the span."""
        combo = {tag: mpq(1)} if self.track else None
        res, combo = self._reduce(dict(vec), combo)
        if not res:
            return False
        p = min(res)
        inv = 1 / res[p]
        self._rows[p] = {k: v * inv for k, v in res.items()}
        if self.track:
            self._combo[p] = {k: v * inv for k, v in combo.items()}
        self._order[p] = len(self._pivots)
        self._pivots.append(p)
        return True

    def extend(self, vecs: Iterable[dict]) -> int:
        return sum(1 for v in vecs if self.add(v))

    def reduced_rows(self) -> dict:
        """Fully reduced rows {pivot: row}; each pivot appears in one row only."""
        rows = {p: dict(self._rows[p]) for p in self._pivots}
        order = self._order
        for idx in range(len(self._pivots) - 1, -1, -1):
            p = self._pivots[idx]
            row = rows[p]
            later = sorted((order[k] for k in row if k in order and order[k] > idx))
            for j in later:
                q = self._pivots[j]
                f = row.get(q)
                if f:
                    _axpy(row, f, rows[q])
        return rows

    def basis(self) -> list[dict]:
        return [dict(self._rows[p]) for p in self._pivots]

    def nullspace(self, columns: Sequence) -> list[dict]:
        """Kernel basis of the inserted rows viewed as linear forms on ``columns``."""
        rows = self.reduced_rows()
        out = []
        for f in columns:
            if f in rows:
                continue
            v = {f: mpq(1)}
            for p, row in rows.items():
                c = row.get(f)
                if c:
                    v[p] = -c
            out.append(v)
        return out
