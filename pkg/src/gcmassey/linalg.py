"""Sparse exact linear algebra over the rationals.

Vectors are plain dicts ``{index: Fraction}`` with no stored zeros.  A
:class:`RationalMatrix` is a dict of ``(row, col) -> Fraction`` plus its shape.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Vector = Dict[int, Fraction]


class DimensionError(ValueError):
    pass


class BoundaryError(ArithmeticError):
    """Raised when consecutive boundary maps do not compose to zero."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def add_into(acc: dict, vec: Mapping, scale=1) -> dict:
    """``acc += scale * vec`` in place, dropping zeros."""
    for k, v in vec.items():
        s = acc.get(k, 0) + scale * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


@dataclass
class RationalMatrix:
    rows: int
    cols: int
    entries: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise DimensionError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            v = _frac(v)
            if v:
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Fraction]]) -> "RationalMatrix":
        entries = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                entries[(r, c)] = v
        return cls(rows, len(columns), entries)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "RationalMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {(i, j): x for i, row in enumerate(data) for j, x in enumerate(row) if x}
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def row_vectors(self) -> List[Vector]:
        out: List[Vector] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def column_vectors(self) -> List[Vector]:
        out: List[Vector] = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def apply(self, vec: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        cols = self.column_vectors()
        for c, x in vec.items():
            if not 0 <= c < self.cols:
                raise DimensionError(f"index {c} outside {self.cols} columns")
            add_into(out, cols[c], x)
        return out

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        rows = self.row_vectors()
        out: Dict[Tuple[int, int], Fraction] = {}
        ocols = other.column_vectors()
        for c, col in enumerate(ocols):
            if not col:
                continue
            for r, row in enumerate(rows):
                s = sum((row[k] * v for k, v in col.items() if k in row), Fraction(0))
                if s:
                    out[(r, c)] = s
        return RationalMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not self.entries

    def to_coo_text(self) -> str:
        """Coordinate-list export: one ``row col num/den`` line per entry, sorted."""
        lines = []
        for (r, c) in sorted(self.entries):
            v = self.entries[(r, c)]
            lines.append(f"{r} {c} {v.numerator}/{v.denominator}")
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_coo_text(cls, text: str, rows: int, cols: int) -> "RationalMatrix":
        entries = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            r, c, v = line.split()
            entries[(int(r), int(c))] = Fraction(v)
        return cls(rows, cols, entries)


class Echelon:
    """Incrementally built row-echelon basis of a subspace.

    Rows are stored by leading column with leading coefficient 1, so
    :meth:`reduce` yields a canonical remainder modulo the span.
    """

    def __init__(self, vectors: Iterable[Mapping[int, Fraction]] = ()):
        self.rows: Dict[int, Vector] = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def reduce(self, vec: Mapping[int, Fraction]) -> Vector:
        v: Vector = {k: _frac(x) for k, x in vec.items() if x}
        heap = [k for k in v if k in self.rows]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            x = v.get(c)
            if not x:
                continue
            for k, y in self.rows[c].items():
                s = v.get(k, 0) - x * y
                if s:
                    if k not in v and k in self.rows:
                        heapq.heappush(heap, k)
                    v[k] = s
                else:
                    v.pop(k, None)
        return v

    def add(self, vec: Mapping[int, Fraction]) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        c = min(r)
        lead = r[c]
        self.rows[c] = {k: x / lead for k, x in r.items()}
        return True

    def contains(self, vec: Mapping[int, Fraction]) -> bool:
        return not self.reduce(vec)

    def fully_reduced(self) -> Dict[int, Vector]:
        """Reduced row echelon form: each pivot column is zero in all other rows."""
        out: Dict[int, Vector] = {}
        for c in sorted(self.rows, reverse=True):
            row = dict(self.rows[c])
            for p in [k for k in row if k != c and k in out]:
                add_into(row, out[p], -row[p])
            out[c] = row
        return out


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def _integer_rows(m: RationalMatrix) -> List[Dict[int, int]]:
    out = []
    for row in m.row_vectors():
        if not row:
            continue
        den = 1
        for v in row.values():
            den = den * v.denominator // gcd(den, v.denominator)
        out.append(_primitive({k: int(v * den) for k, v in row.items()}))
    return out


def rank(m: RationalMatrix) -> int:
    """Exact rank by fraction-free sparse elimination.

    Pivots are chosen Markowitz-style: the shortest live row, and within it
    the column with the fewest live entries.  Rows are kept primitive (content
    divided out) so entries stay small on {-1, 0, 1}-dominated inputs.
    """
    rows = dict(enumerate(_integer_rows(m)))
    colidx: Dict[int, set] = {}
    for i, row in rows.items():
        for c in row:
            colidx.setdefault(c, set()).add(i)
    r = 0
    while rows:
        i = min(rows, key=lambda k: (len(rows[k]), k))
        prow = rows.pop(i)
        for c in prow:
            colidx[c].discard(i)
        c = min(prow, key=lambda k: (len(colidx[k]), k))
        p = prow[c]
        for k in list(colidx[c]):
            row = rows[k]
            a = row[c]
            new: Dict[int, int] = {}
            for col in set(row) | set(prow):
                v = p * row.get(col, 0) - a * prow.get(col, 0)
                if v:
                    new[col] = v
            for col in row:
                if col not in new:
                    colidx[col].discard(k)
            for col in new:
                colidx.setdefault(col, set()).add(k)
            if new:
                rows[k] = _primitive(new)
            else:
                del rows[k]
        r += 1
    return r


def dense_rank(data: Sequence[Sequence]) -> int:
    """Textbook dense Gaussian elimination over Fraction; used as an oracle."""
    a = [[Fraction(x) for x in row] for row in data]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == nrows:
            break
    return r


def kernel_basis(m: RationalMatrix) -> List[Vector]:
    """Basis of the right null space, one vector per free column."""
    ech = Echelon(m.row_vectors())
    rref = ech.fully_reduced()
    basis = []
    for f in range(m.cols):
        if f in rref:
            continue
        v: Vector = {f: Fraction(1)}
        for c, row in rref.items():
            x = row.get(f)
            if x:
                v[c] = -x
        basis.append(v)
    return basis


def in_span(vec: Mapping[int, Fraction], m: RationalMatrix) -> bool:
    """True iff ``vec`` lies in the column space of ``m``."""
    for k in vec:
        if not 0 <= k < m.rows:
            raise DimensionError(f"vector index {k} outside {m.rows} rows")
    return Echelon(m.column_vectors()).contains(vec)


@dataclass
class ChainComplexSlice:
    """A finite window of a chain complex.

    ``dims[d]`` is the dimension in degree ``d``; ``boundaries[d]`` is the
    matrix of the map from degree ``d`` to degree ``d - step`` (rows index the
    target).  Missing maps are zero.
    """

    dims: Dict[int, int]
    boundaries: Dict[int, RationalMatrix]
    step: int = 1

    def boundary(self, d: int) -> RationalMatrix:
        if d in self.boundaries:
            return self.boundaries[d]
        return RationalMatrix(self.dims.get(d - self.step, 0), self.dims.get(d, 0))

    def check_square_zero(self) -> None:
        for d, mat in self.boundaries.items():
            nxt = self.boundaries.get(d - self.step)
            if nxt is None or mat.is_zero() or nxt.is_zero():
                continue
            prod = nxt @ mat
            if not prod.is_zero():
                (r, c), v = next(iter(sorted(prod.entries.items())))
                raise BoundaryError(f"d^2 != 0 from degree {d}: entry ({r}, {c}) = {v}")


def homology_rank(c: ChainComplexSlice, degree: int) -> int:
    c.check_square_zero()
    dim = c.dims.get(degree, 0)
    out_rank = rank(c.boundary(degree)) if dim else 0
    in_rank = rank(c.boundary(degree + c.step)) if c.dims.get(degree + c.step, 0) and dim else 0
    return dim - out_rank - in_rank


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation given as a list of images of 0..n-1."""
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def sort_sign(seq: Sequence) -> Tuple[int, tuple]:
    """Sort distinct items; return (sign of the sorting permutation, sorted tuple).

    Returns sign 0 when an item repeats (the wedge vanishes).
    """
    s = sorted(seq)
    for a, b in zip(s, s[1:]):
        if a == b:
            return 0, tuple(s)
    pos = {x: i for i, x in enumerate(s)}
    return permutation_sign([pos[x] for x in seq]), tuple(s)
