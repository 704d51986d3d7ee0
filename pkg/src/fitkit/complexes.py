"""Bounded complexes of free modules and their higher Fitting ideals.

A complex stores its lowest degree N, the ranks of its terms from degree N
upward, and one differential per adjacent pair of degrees.  Chain complexes
have d_i : F_i -> F_(i-1); cochain complexes have d^i : F^i -> F^(i+1).
Composition of consecutive differentials must be zero (checked at
construction, in the quotient when there is one).  Degrees outside the
stored range are zero modules and missing differentials are zero maps, so
expected ranks and Fitting ideals are total functions.

The expected rank chi_i of a differential is the alternating sum of the
ranks on its target side: for a chain complex

    chi_i = r_(i-1) - r_(i-2) + ... +- r_N

and the i-th Fitting ideal at index k is the ideal of
(chi_i - k) x (chi_i - k) minors of d_i.  These ideals are invariant under
quasi-isomorphism, which the padding helpers below let a test suite verify
by construction.  For bounded cochain complexes there is also the variant
underline-chi_i = r_i - r_(i-1) + ... +- r_N counted from below, with
underline-Fitt^i_k = I_(underline-chi_i - k)(d^i).
"""

from __future__ import annotations

from typing import Mapping, Optional, Sequence

from .errors import ShapeError
from .groebner import Budget, Ideal, SubmoduleBasis, syzygy_generators
from .matrices import PolyMatrix, block_diag, hstack, minors_ideal, vstack
from .rings import Carrier, ambient_ring

CHAIN = "chain"
COCHAIN = "cochain"


class FreeComplex:
    """A bounded complex of finite free modules over a (quotient) ring."""

    __slots__ = ("orientation", "lowest_index", "ranks", "differentials", "carrier")

    def __init__(
        self,
        carrier: Carrier,
        orientation: str,
        lowest_index: int,
        ranks: Sequence[int],
        differentials: Sequence[PolyMatrix],
    ):
        if orientation not in (CHAIN, COCHAIN):
            raise ShapeError(f"orientation must be chain or cochain: {orientation!r}")
        ranks = tuple(int(r) for r in ranks)
        if not ranks:
            raise ShapeError("a complex needs at least one term")
        if any(r < 0 for r in ranks):
            raise ShapeError("ranks must be nonnegative")
        differentials = tuple(differentials)
        if len(differentials) != len(ranks) - 1:
            raise ShapeError(
                f"expected {len(ranks) - 1} differentials for {len(ranks)} terms, "
                f"got {len(differentials)}"
            )
        for j, d in enumerate(differentials):
            if d.carrier != carrier:
                raise ShapeError("differential carrier does not match the complex")
            if orientation == CHAIN:
                want = (ranks[j], ranks[j + 1])
            else:
                want = (ranks[j + 1], ranks[j])
            if (d.rows, d.cols) != want:
                raise ShapeError(
                    f"differential {j} has shape {d.rows}x{d.cols}, expected {want[0]}x{want[1]}"
                )
        for j in range(len(differentials) - 1):
            if orientation == CHAIN:
                prod = differentials[j] * differentials[j + 1]
            else:
                prod = differentials[j + 1] * differentials[j]
            if not prod.is_zero():
                raise ShapeError(f"differentials {j} and {j + 1} do not compose to zero")
        self.carrier = carrier
        self.orientation = orientation
        self.lowest_index = lowest_index
        self.ranks = ranks
        self.differentials = differentials

    # ---- indexing ---------------------------------------------------------
    @property
    def top_index(self) -> int:
        return self.lowest_index + len(self.ranks) - 1

    def rank_at(self, i: int) -> int:
        if self.lowest_index <= i <= self.top_index:
            return self.ranks[i - self.lowest_index]
        return 0

    def diff_at(self, i: int) -> PolyMatrix:
        """The differential leaving degree i (zero map when not stored).

        Chain: d_i : F_i -> F_(i-1).  Cochain: d^i : F^i -> F^(i+1).
        """
        if self.orientation == CHAIN:
            j = i - self.lowest_index - 1
            if 0 <= j < len(self.differentials):
                return self.differentials[j]
            return PolyMatrix.zero(self.carrier, self.rank_at(i - 1), self.rank_at(i))
        j = i - self.lowest_index
        if 0 <= j < len(self.differentials):
            return self.differentials[j]
        return PolyMatrix.zero(self.carrier, self.rank_at(i + 1), self.rank_at(i))

    def degrees(self) -> range:
        return range(self.lowest_index, self.top_index + 1)

    # ---- conversions -------------------------------------------------------
    def to_chain(self) -> "FreeComplex":
        """Reindex degree i -> -i; a cochain complex becomes a chain complex."""
        if self.orientation == CHAIN:
            return self
        return FreeComplex(
            self.carrier,
            CHAIN,
            -self.top_index,
            tuple(reversed(self.ranks)),
            tuple(reversed(self.differentials)),
        )

    def to_cochain(self) -> "FreeComplex":
        if self.orientation == COCHAIN:
            return self
        return FreeComplex(
            self.carrier,
            COCHAIN,
            -self.top_index,
            tuple(reversed(self.ranks)),
            tuple(reversed(self.differentials)),
        )

    def total_euler(self) -> int:
        """chi(F) = sum of (-1)^j r_j over the stored degrees."""
        return sum((-1) ** i * self.rank_at(i) for i in self.degrees())

    def __eq__(self, other):
        if not isinstance(other, FreeComplex):
            return NotImplemented
        return (
            self.carrier == other.carrier
            and self.orientation == other.orientation
            and self.lowest_index == other.lowest_index
            and self.ranks == other.ranks
            and self.differentials == other.differentials
        )

    def __repr__(self):
        return (
            f"<{self.orientation} complex, degrees {self.lowest_index}..{self.top_index}, "
            f"ranks {list(self.ranks)}>"
        )


def _chi_total(C: FreeComplex, i: int) -> int:
    """Expected rank of the differential leaving degree i (total function)."""
    if C.orientation == CHAIN:
        return sum(
            (-1) ** (i - 1 - j) * C.rank_at(j) for j in range(C.lowest_index, i)
        )
    return sum(
        (-1) ** (j - i - 1) * C.rank_at(j) for j in range(i + 1, C.top_index + 1)
    )


def chi(C: FreeComplex, i: int) -> int:
    """Alternating sum of ranks on the target side of d_i.

    Indices below the complex give the empty sum 0; indices beyond one past
    the top are rejected.
    """
    if C.orientation == CHAIN and i > C.top_index + 1:
        raise ShapeError(f"chi index {i} beyond top+1 = {C.top_index + 1}")
    if C.orientation == COCHAIN and i < C.lowest_index - 1:
        raise ShapeError(f"chi index {i} below lowest-1 = {C.lowest_index - 1}")
    return _chi_total(C, i)


def fitting_ideal(C: FreeComplex, i: int, k: int, budget: Optional[Budget] = None) -> Ideal:
    """Fitt^i_k(C) = ideal of (chi_i - k)-minors of the differential at i."""
    return minors_ideal(C.diff_at(i), _chi_total(C, i) - k, budget)


def underline_chi(C: FreeComplex, i: int) -> int:
    """Alternating rank sum from the bottom of a bounded cochain complex."""
    if C.orientation != COCHAIN:
        raise ShapeError("underline-chi is defined for cochain complexes")
    return sum((-1) ** (i - j) * C.rank_at(j) for j in range(C.lowest_index, i + 1))


def underline_fitting_ideal(
    C: FreeComplex, i: int, k: int, budget: Optional[Budget] = None
) -> Ideal:
    """underline-Fitt^i_k(C) = I_(underline-chi_i - k)(d^i)."""
    return minors_ideal(C.diff_at(i), underline_chi(C, i) - k, budget)


def pad_trivial(C: FreeComplex, position: int, rank: int) -> FreeComplex:
    """Direct sum with an acyclic two-term identity complex of the given rank.

    For a chain complex the identity summand sits between degrees
    ``position`` and ``position - 1``; for a cochain complex it feeds the
    differential d^position, i.e. sits between degrees ``position`` and
    ``position + 1``.  The result is quasi-isomorphic to C by construction.
    """
    if rank < 0:
        raise ShapeError("pad rank must be nonnegative")
    if rank == 0:
        return C
    if C.orientation == COCHAIN:
        return pad_trivial(C.to_chain(), -position, rank).to_cochain()
    if not (C.lowest_index <= position <= C.top_index + 1):
        raise ShapeError(
            f"pad position {position} not within or adjacent to degrees "
            f"{C.lowest_index}..{C.top_index}"
        )
    lo = min(C.lowest_index, position - 1)
    hi = max(C.top_index, position)
    ranks = []
    for i in range(lo, hi + 1):
        r = C.rank_at(i)
        if i in (position, position - 1):
            r += rank
        ranks.append(r)
    eye = PolyMatrix.identity(C.carrier, rank)
    diffs = []
    for i in range(lo + 1, hi + 1):
        d = C.diff_at(i)
        if i == position:
            d = block_diag(d, eye)
        elif i == position + 1:
            d = vstack(d, PolyMatrix.zero(C.carrier, rank, d.cols))
        elif i == position - 1:
            d = hstack(d, PolyMatrix.zero(C.carrier, d.rows, rank))
        diffs.append(d)
    return FreeComplex(C.carrier, CHAIN, lo, ranks, diffs)


class ChainMap:
    """A degreewise map of complexes commuting with the differentials."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source: FreeComplex, target: FreeComplex, components: Mapping[int, PolyMatrix]):
        if source.orientation != target.orientation:
            raise ShapeError("chain map endpoints must share an orientation")
        if source.carrier != target.carrier:
            raise ShapeError("chain map endpoints must share a carrier ring")
        comps = {}
        for i, m in components.items():
            want = (target.rank_at(i), source.rank_at(i))
            if (m.rows, m.cols) != want:
                raise ShapeError(
                    f"component at degree {i} has shape {m.rows}x{m.cols}, expected {want}"
                )
            comps[int(i)] = m
        self.source = source
        self.target = target
        self.components = comps
        lo = min(source.lowest_index, target.lowest_index)
        hi = max(source.top_index, target.top_index) + 1
        for i in range(lo, hi + 1):
            if source.orientation == CHAIN:
                left = self.component(i - 1) * source.diff_at(i)
                right = target.diff_at(i) * self.component(i)
            else:
                left = self.component(i + 1) * source.diff_at(i)
                right = target.diff_at(i) * self.component(i)
            if not (left + (-right)).is_zero():
                raise ShapeError(f"chain map square at degree {i} does not commute")

    def component(self, i: int) -> PolyMatrix:
        got = self.components.get(i)
        if got is not None:
            return got
        return PolyMatrix.zero(self.source.carrier, self.target.rank_at(i), self.source.rank_at(i))

    @classmethod
    def identity(cls, C: FreeComplex) -> "ChainMap":
        comps = {i: PolyMatrix.identity(C.carrier, C.rank_at(i)) for i in C.degrees()}
        return cls(C, C, comps)

    @classmethod
    def zero(cls, source: FreeComplex, target: FreeComplex) -> "ChainMap":
        return cls(source, target, {})


def mapping_cone(f: ChainMap) -> FreeComplex:
    """Cone of a chain map: Cone_n = C_(n-1) (+) D_n with the usual blocks.

    The differential is [[-d_C, 0], [f, d_D]]; the cone is exact in every
    degree exactly when f is a quasi-isomorphism.
    """
    if f.source.orientation != CHAIN:
        raise ShapeError("mapping cones are formed from chain-oriented maps")
    src, tgt = f.source, f.target
    carrier = src.carrier
    lo = min(src.lowest_index + 1, tgt.lowest_index)
    hi = max(src.top_index + 1, tgt.top_index)
    ranks = [src.rank_at(n - 1) + tgt.rank_at(n) for n in range(lo, hi + 1)]
    diffs = []
    for n in range(lo + 1, hi + 1):
        top = hstack(
            -src.diff_at(n - 1),
            PolyMatrix.zero(carrier, src.rank_at(n - 2), tgt.rank_at(n)),
        )
        bottom = hstack(f.component(n - 1), tgt.diff_at(n))
        diffs.append(vstack(top, bottom))
    return FreeComplex(carrier, CHAIN, lo, ranks, diffs)


def is_exact_at(C: FreeComplex, i: int, budget: Optional[Budget] = None) -> bool:
    """Exactness at degree i: every syzygy of the outgoing differential lies
    in the column span of the incoming one (computed over the carrier)."""
    if C.rank_at(i) == 0:
        return True
    out = C.diff_at(i)
    if C.orientation == CHAIN:
        inc = C.diff_at(i + 1)
    else:
        inc = C.diff_at(i - 1)
    kernel_gens = syzygy_generators(out.columns(), out.rows, C.carrier, budget)
    if not kernel_gens:
        return True
    image = SubmoduleBasis(C.carrier, C.rank_at(i), inc.columns())
    return all(image.contains_vector(v, budget) for v in kernel_gens)


def is_quasi_iso(f: ChainMap, budget: Optional[Budget] = None) -> bool:
    """True iff the mapping cone of f is exact in every degree."""
    cone = mapping_cone(f)
    return all(is_exact_at(cone, n, budget) for n in cone.degrees())
