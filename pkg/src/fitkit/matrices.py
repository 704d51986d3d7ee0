"""Matrices over (quotient) polynomial rings, determinants, ideals of minors.

Conventions fixed here once and inherited by every Fitting-ideal formula:

* a matrix represents the map sending the j-th basis vector of the source
  to its j-th *column*;
* ``minors_ideal(M, k)`` is the unit ideal for k <= 0 and the zero ideal
  for k > min(rows, cols) (no k x k submatrices exist);
* over a quotient ring, entries are stored in normal form and every ideal
  of minors is returned as its full ambient preimage.

Determinants use cofactor expansion memoized on (row-set, column-set); for
the small symbolic matrices this package targets that beats fraction-free
elimination and never divides.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import itertools

from .errors import PointError, RingMismatchError, ShapeError
from .groebner import Budget, Ideal, SubmoduleBasis, syzygy_generators
from .rings import (
    Carrier,
    Polynomial,
    QuotientSpec,
    RingSpec,
    ambient_ring,
    carrier_relations,
    reduce_in,
)


class PolyMatrix:
    """A dense rows x cols matrix of exact polynomials, immutable by use."""

    __slots__ = ("rows", "cols", "entries", "carrier")

    def __init__(self, carrier: Carrier, rows: int, cols: int, entries: Sequence[Polynomial]):
        if rows < 0 or cols < 0:
            raise ShapeError("matrix dimensions must be nonnegative")
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries, got {len(entries)}")
        ring = ambient_ring(carrier)
        for e in entries:
            if not isinstance(e, Polynomial) or e.ring != ring:
                raise RingMismatchError("matrix entries must lie in the carrier's ambient ring")
        if isinstance(carrier, QuotientSpec):
            entries = tuple(carrier.normal_form(e) for e in entries)
        self.carrier = carrier
        self.rows = rows
        self.cols = cols
        self.entries = entries

    # ---- construction helpers -------------------------------------------
    @classmethod
    def zero(cls, carrier: Carrier, rows: int, cols: int) -> "PolyMatrix":
        z = Polynomial.zero(ambient_ring(carrier))
        return cls(carrier, rows, cols, [z] * (rows * cols))

    @classmethod
    def identity(cls, carrier: Carrier, n: int) -> "PolyMatrix":
        ring = ambient_ring(carrier)
        one = Polynomial.one(ring)
        zero = Polynomial.zero(ring)
        return cls(carrier, n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def from_rows(cls, carrier: Carrier, rows: Sequence[Sequence[Polynomial]]) -> "PolyMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise ShapeError("ragged rows")
            flat.extend(row)
        return cls(carrier, r, c, flat)

    # ---- access -----------------------------------------------------------
    @property
    def ring(self) -> RingSpec:
        return ambient_ring(self.carrier)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            self.carrier,
            self.cols,
            self.rows,
            [self.entry(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    def is_zero(self) -> bool:
        return all(e.is_zero for e in self.entries)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (
            self.carrier == other.carrier
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.carrier, self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"<{self.rows}x{self.cols} matrix over {self.ring}>"

    def render(self) -> list:
        """Row-major list of entry strings (the CLI wire form)."""
        return [str(e) for e in self.entries]

    # ---- arithmetic ---------------------------------------------------------
    def _check(self, other: "PolyMatrix"):
        if self.carrier != other.carrier:
            raise RingMismatchError("matrix carriers differ")

    def __add__(self, other):
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("matrix shapes differ")
        return PolyMatrix(
            self.carrier, self.rows, self.cols,
            [a + b for a, b in zip(self.entries, other.entries)],
        )

    def __neg__(self):
        return PolyMatrix(self.carrier, self.rows, self.cols, [-e for e in self.entries])

    def __mul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ring = self.ring
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = Polynomial.zero(ring)
                for k in range(self.cols):
                    a = self.entry(i, k)
                    b = other.entry(k, j)
                    if not (a.is_zero or b.is_zero):
                        acc = acc + a * b
                out.append(acc)
        return PolyMatrix(self.carrier, self.rows, other.cols, out)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(
            self.carrier,
            len(row_idx),
            len(col_idx),
            [self.entry(i, j) for i in row_idx for j in col_idx],
        )

    def map_entries(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.carrier, self.rows, self.cols, [fn(e) for e in self.entries])


def hstack(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.rows != b.rows:
        raise ShapeError("hstack needs equal row counts")
    rows = [list(a.row(i)) + list(b.row(i)) for i in range(a.rows)]
    return PolyMatrix.from_rows(a.carrier, rows) if a.rows else PolyMatrix(a.carrier, 0, a.cols + b.cols, [])


def vstack(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.cols != b.cols:
        raise ShapeError("vstack needs equal column counts")
    return PolyMatrix(a.carrier, a.rows + b.rows, a.cols, list(a.entries) + list(b.entries))


def block_diag(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    z_tr = PolyMatrix.zero(a.carrier, a.rows, b.cols)
    z_bl = PolyMatrix.zero(a.carrier, b.rows, a.cols)
    return vstack(hstack(a, z_tr), hstack(z_bl, b))


# ---------------------------------------------------------------------------
# determinants and minors
# ---------------------------------------------------------------------------


def _det_memo(M: PolyMatrix, rows: tuple, cols: tuple, memo: dict) -> Polynomial:
    ring = M.ring
    if not rows:
        return Polynomial.one(ring)
    key = (rows, cols)
    got = memo.get(key)
    if got is not None:
        return got
    r = rows[-1]
    total = Polynomial.zero(ring)
    sign_flip = len(cols) - 1  # parity of column position within the submatrix
    for idx, c in enumerate(cols):
        e = M.entry(r, c)
        if e.is_zero:
            continue
        rest = cols[:idx] + cols[idx + 1 :]
        sub = _det_memo(M, rows[:-1], rest, memo)
        if sub.is_zero:
            continue
        term = e * sub
        # expanding along the last row: sign = (-1)^(last_row_pos + col_pos)
        if (sign_flip + idx) % 2 == 1:
            term = -term
        total = total + term
    memo[key] = total
    return total


def determinant(M: PolyMatrix) -> Polynomial:
    """Exact determinant; the empty 0x0 matrix has determinant 1."""
    if M.rows != M.cols:
        raise ShapeError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    memo: dict = {}
    d = _det_memo(M, tuple(range(M.rows)), tuple(range(M.cols)), memo)
    return reduce_in(M.carrier, d)


def minors_ideal(M: PolyMatrix, k: int, budget: Optional[Budget] = None) -> Ideal:
    """Ideal generated by all k x k minors of M, with the boundary conventions.

    Minors are enumerated over lexicographically increasing row and column
    subsets; if a minor reduces to a nonzero constant the unit ideal is
    returned immediately.
    """
    ring = M.ring
    if k <= 0:
        return Ideal(M.carrier, (Polynomial.one(ring),))
    if k > min(M.rows, M.cols):
        return Ideal(M.carrier, ())
    memo: dict = {}
    gens = []
    seen = set()
    for rows in itertools.combinations(range(M.rows), k):
        for cols in itertools.combinations(range(M.cols), k):
            d = _det_memo(M, rows, cols, memo)
            d = reduce_in(M.carrier, d)
            if d.is_zero:
                continue
            if d.is_constant:
                return Ideal(M.carrier, (Polynomial.one(ring),))
            if d not in seen:
                seen.add(d)
                gens.append(d)
    return Ideal(M.carrier, tuple(gens))


# ---------------------------------------------------------------------------
# ring maps and fibers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RingMap:
    """A field-preserving ring map, one target image per source variable."""

    source: RingSpec
    target: Carrier
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.source.nvars:
            raise ShapeError("a ring map needs one image per source variable")
        tring = ambient_ring(self.target)
        for g in self.images:
            if not isinstance(g, Polynomial) or g.ring != tring:
                raise RingMismatchError("ring map images must lie in the target ring")
        if self.source.field != tring.field:
            raise RingMismatchError("ring maps must preserve the coefficient field")

    def apply(self, f: Polynomial) -> Polynomial:
        if f.ring != self.source:
            raise RingMismatchError("polynomial is not in the map's source ring")
        out = f.substitute(self.images, ambient_ring(self.target))
        return reduce_in(self.target, out)


def apply_ring_map(M: PolyMatrix, f: RingMap) -> PolyMatrix:
    """Entrywise substitution of M along f."""
    if isinstance(M.carrier, QuotientSpec):
        raise RingMismatchError("apply_ring_map expects a matrix over the plain source ring")
    if M.ring != f.source:
        raise RingMismatchError("matrix ring does not match the map's source")
    return PolyMatrix(f.target, M.rows, M.cols, [f.apply(e) for e in M.entries])


def fiber_rank(M: PolyMatrix, point: Sequence) -> int:
    """Rank of M evaluated at a point, by exact Gaussian elimination.

    The point is given as one field element per ambient variable and must
    satisfy the quotient relations when M lives over a quotient ring.
    """
    ring = M.ring
    fld = ring.field
    if len(point) != ring.nvars:
        raise PointError(f"point length {len(point)} != {ring.nvars} variables")
    point = tuple(point)
    for rel in carrier_relations(M.carrier):
        if rel.evaluate(point):
            raise PointError(f"point {point} does not satisfy the relation {rel}")
    grid = [[e.evaluate(point) for e in M.row(i)] for i in range(M.rows)]
    rank = 0
    col = 0
    while rank < M.rows and col < M.cols:
        pivot = next((r for r in range(rank, M.rows) if grid[r][col]), None)
        if pivot is None:
            col += 1
            continue
        grid[rank], grid[pivot] = grid[pivot], grid[rank]
        inv = fld.inv(grid[rank][col])
        grid[rank] = [fld.mul(inv, v) for v in grid[rank]]
        for r in range(M.rows):
            if r != rank and grid[r][col]:
                factor = grid[r][col]
                grid[r] = [fld.sub(a, fld.mul(factor, b)) for a, b in zip(grid[r], grid[rank])]
        rank += 1
        col += 1
    return rank


def syzygies(M: PolyMatrix, budget: Optional[Budget] = None) -> PolyMatrix:
    """Matrix whose columns generate {v : M v = 0} over M's carrier."""
    gens = syzygy_generators(M.columns(), M.rows, M.carrier, budget)
    ring = M.ring
    entries = []
    for i in range(M.cols):
        for g in gens:
            entries.append(g[i])
    return PolyMatrix(M.carrier, M.cols, len(gens), entries)


def column_submodule(M: PolyMatrix) -> SubmoduleBasis:
    """The submodule of R^rows spanned by M's columns."""
    return SubmoduleBasis(M.carrier, M.rows, M.columns())
