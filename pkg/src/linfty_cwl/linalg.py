"""Exact sparse linear algebra over the rationals.

Matrices are stored as sparse rows.  Elimination processes columns left to
right with deterministic pivots, so reduced row echelon forms, kernel bases
and complements are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .graded import add_into, normalize


def _div(a, b):
    q = Fraction(a) / b
    return q.numerator if q.denominator == 1 else q


@dataclass
class RationalMatrix:
    nrows: int
    ncols: int
    rows: dict[int, dict[int, object]] = field(default_factory=dict)

    @classmethod
    def from_rows(cls, nrows: int, ncols: int, rows: Mapping[int, Mapping[int, object]]):
        m = cls(nrows, ncols)
        for i, row in rows.items():
            row = {j: normalize(c) for j, c in row.items() if c}
            if row:
                m.rows[i] = row
        return m

    @classmethod
    def from_columns(cls, nrows: int, ncols: int, cols: Mapping[int, Mapping[int, object]]):
        rows: dict[int, dict] = {}
        for j, col in cols.items():
            for i, c in col.items():
                if c:
                    rows.setdefault(i, {})[j] = c
        return cls.from_rows(nrows, ncols, rows)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]]):
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        return cls.from_rows(nrows, ncols, {i: {j: c for j, c in enumerate(r)} for i, r in enumerate(data)})

    @classmethod
    def identity(cls, n: int):
        return cls.from_rows(n, n, {i: {i: 1} for i in range(n)})

    def to_dense(self) -> list[list[object]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, row in self.rows.items():
            for j, c in row.items():
                out[i][j] = c
        return out

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix.from_columns(self.ncols, self.nrows, self.rows)

    def columns(self) -> dict[int, dict[int, object]]:
        return self.transpose().rows

    def apply(self, x: Mapping[int, object]) -> dict[int, object]:
        out = {}
        for i, row in self.rows.items():
            s = 0
            for j, c in row.items():
                v = x.get(j)
                if v:
                    s += c * v
            if s:
                out[i] = normalize(s)
        return out

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        rows = {}
        for i, row in self.rows.items():
            acc: dict = {}
            for k, c in row.items():
                orow = other.rows.get(k)
                if orow:
                    add_into(acc, orow, c)
            if acc:
                rows[i] = acc
        return RationalMatrix.from_rows(self.nrows, other.ncols, rows)

    def is_zero(self) -> bool:
        return not self.rows

    def rank(self) -> int:
        return len(rref(self.rows.values(), self.ncols)[1])


def _reduce(row: dict, pivots: dict[int, dict]) -> dict:
    """Forward-reduce ``row`` against echelon rows keyed by leftmost column."""
    row = dict(row)
    while row:
        c = min(row)
        prow = pivots.get(c)
        if prow is None:
            return row
        add_into(row, prow, -row[c])
    return row


def _full_reduce(row: dict, pivots: dict[int, dict]) -> dict:
    """Eliminate every pivot column from ``row`` (pivot rows must be fully reduced)."""
    row = dict(row)
    for c in [c for c in row if c in pivots]:
        v = row.get(c)
        if v:
            add_into(row, pivots[c], -v)
    return row


def echelon(rows: Iterable[Mapping[int, object]]) -> dict[int, dict]:
    """Row echelon form keyed by leftmost column, each pivot normalized to 1."""
    pivots: dict[int, dict] = {}
    for r in rows:
        r = _reduce({k: v for k, v in r.items() if v}, pivots)
        if r:
            c = min(r)
            inv = r[c]
            pivots[c] = {k: _div(v, inv) for k, v in r.items()}
    return pivots


def rref(rows: Iterable[Mapping[int, object]], ncols: int | None = None) -> tuple[dict[int, dict], list[int]]:
    """Reduced row echelon form: (pivot column -> row, sorted pivot columns)."""
    pivots = echelon(rows)
    order = sorted(pivots)
    for c in reversed(order):
        prow = pivots[c]
        for c2 in order:
            if c2 >= c:
                break
            r2 = pivots[c2]
            v = r2.get(c)
            if v:
                add_into(r2, prow, -v)
    return pivots, order


def kernel(m: RationalMatrix) -> list[dict[int, object]]:
    """Basis of {x : m x = 0}; one vector per free column, in column order."""
    pivots, order = rref(m.rows.values(), m.ncols)
    pivset = set(order)
    out = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        vec = {f: 1}
        for c in order:
            v = pivots[c].get(f)
            if v:
                vec[c] = -v
        out.append(vec)
    return out


def image(m: RationalMatrix) -> list[dict[int, object]]:
    """Reduced echelon basis of the column space."""
    pivots, order = rref(m.columns().values(), m.nrows)
    return [pivots[c] for c in order]


def rank(m: RationalMatrix) -> int:
    return m.rank()


@dataclass
class SolveResult:
    solution: dict[int, object] | None
    certificate: dict[int, object] | None = None

    @property
    def ok(self) -> bool:
        return self.solution is not None


def solve(m: RationalMatrix, b: Mapping[int, object]) -> SolveResult:
    """Find x with m x = b, or a left null vector y with y m = 0 and y.b != 0."""
    aug = m.ncols
    rows = []
    keys = set(m.rows) | set(k for k, v in b.items() if v)
    for i in sorted(keys):
        row = dict(m.rows.get(i, {}))
        if b.get(i):
            row[aug] = b[i]
        rows.append(row)
    pivots, order = rref(rows, aug + 1)
    if aug in pivots:
        ker = kernel(m.transpose())
        for y in ker:
            if sum(c * b.get(i, 0) for i, c in y.items()):
                return SolveResult(None, y)
        raise AssertionError("inconsistent system without a left-null certificate")
    x = {}
    for c in order:
        v = pivots[c].get(aug)
        if v:
            x[c] = v
    if m.apply(x) != {k: normalize(v) for k, v in b.items() if v}:
        raise AssertionError("solution failed recheck")
    return SolveResult(x)


class Subspace:
    """A subspace given by a fully reduced echelon basis; supports membership and coordinates."""

    def __init__(self, vectors: Iterable[Mapping[int, object]]):
        pivots, order = rref(vectors)
        self.pivots = pivots
        self.order = order

    @property
    def dim(self) -> int:
        return len(self.order)

    def basis(self) -> list[dict]:
        return [self.pivots[c] for c in self.order]

    def reduce(self, vec: Mapping[int, object]) -> dict:
        return _full_reduce({k: v for k, v in vec.items() if v}, self.pivots)

    def contains(self, vec: Mapping[int, object]) -> bool:
        return not self.reduce(vec)

    def coordinates(self, vec: Mapping[int, object]) -> list | None:
        """Coefficients on :meth:`basis`, or None if ``vec`` is outside the span."""
        if self.reduce(vec):
            return None
        return [normalize(vec.get(c, 0)) for c in self.order]


def left_inverse(columns: Sequence[Mapping[int, object]]) -> dict[int, dict[int, object]]:
    """For injective columns c_0..c_{k-1}, rows L with L c_j = e_j, as a column dict.

    Returns ``cols`` such that ``sum_i v[i] * cols[i]`` gives the coordinates of
    any v in the span.
    """
    k = len(columns)
    # augment each column with its own unit vector tag beyond the ambient indices
    tagged = []
    for j, col in enumerate(columns):
        row = {("v", i): c for i, c in col.items()}
        row[("t", j)] = 1
        tagged.append(row)
    # work with integer column keys: ambient first, then tags
    amb = sorted({i for col in columns for i in col})
    pos = {("v", i): n for n, i in enumerate(amb)}
    for j in range(k):
        pos[("t", j)] = len(amb) + j
    rows = [{pos[key]: c for key, c in r.items()} for r in tagged]
    pivots, order = rref(rows)
    if len([c for c in order if c < len(amb)]) != k:
        raise ValueError("columns are linearly dependent")
    out: dict[int, dict] = {}
    for c in order:
        row = pivots[c]
        i = amb[c]
        coords = {key - len(amb): v for key, v in row.items() if key >= len(amb)}
        out[i] = coords
    return out


def apply_left_inverse(inverse: Mapping[int, Mapping[int, object]], vec: Mapping[int, object]) -> dict:
    """Coordinates of ``vec`` from :func:`left_inverse`; only valid for vectors in the span."""
    out: dict = {}
    for i, c in vec.items():
        row = inverse.get(i)
        if row and c:
            add_into(out, row, c)
    return out
