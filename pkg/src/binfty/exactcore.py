"""Exact rational scalars and sparse linear algebra over Q.

Scalars are :class:`fractions.Fraction` throughout; nothing in this package
touches floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction. Floats are rejected."""
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m is None:
            raise ValueError(f"not an exact rational: {value!r}")
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator: {value!r}")
        return Fraction(int(m.group(1)), den)
    raise ValueError(f"not an exact rational: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


class SparseMatrix:
    """A rows x cols matrix over Q stored as ``{(row, col): value}``."""

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative shape")
        self.rows = rows
        self.cols = cols
        data = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry {(i, j)} outside {rows}x{cols}")
            v = Fraction(v)
            if v:
                data[i, j] = v
        self.entries = data

    @classmethod
    def from_rows(cls, rows, cols=None) -> "SparseMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = {}
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(r):
                if v:
                    entries[i, j] = v
        return cls(len(rows), cols, entries)

    @classmethod
    def from_row_dicts(cls, row_dicts, cols: int) -> "SparseMatrix":
        entries = {}
        for i, r in enumerate(row_dicts):
            for j, v in r.items():
                entries[i, j] = v
        return cls(len(row_dicts), cols, entries)

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def apply(self, vec) -> list[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        out = [Fraction(0)] * self.rows
        for (i, j), v in self.entries.items():
            out[i] += v * vec[j]
        return out

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self):
        return f"SparseMatrix({self.rows}, {self.cols}, nnz={len(self.entries)})"


def _rref(row_dicts, cols):
    """Reduced row echelon form of sparse rows.

    Pivot search: first column holding a nonzero among the unreduced rows;
    the pivot row is the lowest-index such row. Returns (pivot rows, pivot cols).
    """
    pending = [dict(r) for r in row_dicts if r]
    done = []
    pivots = []
    while pending:
        col = min(min(r) for r in pending)
        k = next(idx for idx, r in enumerate(pending) if col in r)
        prow = pending.pop(k)
        inv = 1 / prow[col]
        prow = {j: v * inv for j, v in prow.items()}
        for r in pending + done:
            f = r.get(col)
            if f:
                for j, v in prow.items():
                    nv = r.get(j, 0) - f * v
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
        pending = [r for r in pending if r]
        done.append(prow)
        pivots.append(col)
    return done, pivots


def rank(m: SparseMatrix) -> int:
    _, pivots = _rref(m.row_dicts(), m.cols)
    return len(pivots)


def kernel_basis(m: SparseMatrix) -> list[list[Fraction]]:
    """Basis of {v : m v = 0}, returned in reduced row echelon form.

    Every vector has leading entry 1 and the list is ordered by the
    position of that leading entry, so the basis is canonical.
    """
    rows, pivots = _rref(m.row_dicts(), m.cols)
    pivot_set = set(pivots)
    raw = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = {free: Fraction(1)}
        for r, p in zip(rows, pivots):
            c = r.get(free)
            if c:
                v[p] = -c
        raw.append(v)
    canon, _ = _rref(raw, m.cols)
    canon.sort(key=min)
    return [[r.get(j, Fraction(0)) for j in range(m.cols)] for r in canon]


def row_space_basis(vectors: list[dict[int, Fraction]], cols: int) -> list[dict[int, Fraction]]:
    """Canonical (RREF) basis of the span of sparse vectors."""
    rows, _ = _rref(vectors, cols)
    rows.sort(key=min)
    return rows


def solve_in_span(basis_rref: list[dict[int, Fraction]], vec: dict[int, Fraction]):
    """Coordinates of ``vec`` in an RREF basis, or None if outside the span."""
    coords = []
    rest = dict(vec)
    for r in basis_rref:
        p = min(r)
        c = rest.get(p, 0)
        coords.append(Fraction(c))
        if c:
            for j, v in r.items():
                nv = rest.get(j, 0) - c * v
                if nv:
                    rest[j] = nv
                else:
                    rest.pop(j, None)
    if rest:
        return None
    return coords
