"""Finitely presented modules, free resolutions, classical Fitting ideals.

A module is the cokernel of its presentation matrix: rows index generators,
columns index relations.  Resolutions are built by iterated syzygy
computation and always take an explicit length cap, because over a quotient
ring a resolution may well be infinite; ``truncated`` records whether the
cap cut anything off.  Minimalization cancels unit entries of the
differentials by row and column operations, producing a second, generally
smaller, resolution of the same module together with an explicit inclusion
chain map back into the original (useful for quasi-isomorphism checks).

The classical k-th Fitting ideal of a module with r generators is the ideal
of (r - k)-minors of its presentation; it does not depend on the chosen
presentation.  Higher Fitting ideals of a resolution cut out the loci where
the projective dimension of the module jumps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .complexes import CHAIN, ChainMap, FreeComplex, fitting_ideal
from .errors import ShapeError, TruncationError
from .groebner import Budget, Ideal, is_zero_ideal
from .matrices import PolyMatrix, minors_ideal, syzygies
from .rings import Carrier, Polynomial, ambient_ring


@dataclass(frozen=True)
class FpModule:
    """A finitely presented module: the cokernel of ``presentation``."""

    carrier: Carrier
    presentation: PolyMatrix

    def __post_init__(self):
        if self.presentation.carrier != self.carrier:
            raise ShapeError("presentation matrix carrier does not match the module")

    @property
    def generator_count(self) -> int:
        return self.presentation.rows

    @classmethod
    def free(cls, carrier: Carrier, rank: int) -> "FpModule":
        return cls(carrier, PolyMatrix.zero(carrier, rank, 0))


@dataclass(frozen=True)
class Resolution:
    """A chain complex of free modules resolving ``target`` from degree 0."""

    complex: FreeComplex
    target: FpModule
    length: int
    truncated: bool


def free_resolution(M: FpModule, length: int, budget: Optional[Budget] = None) -> Resolution:
    """F_length -> ... -> F_1 -> F_0 with F_0 free on the module's generators.

    d_1 is the presentation and each deeper differential is the syzygy
    matrix of the previous one.  Stops early, with ``truncated`` False, as
    soon as a syzygy module is zero.
    """
    if length < 1:
        raise ShapeError("resolution length must be at least 1")
    ranks = [M.generator_count]
    diffs: list = []
    truncated = False
    if M.presentation.cols > 0:
        diffs.append(M.presentation)
        ranks.append(M.presentation.cols)
        while len(diffs) < length:
            s = syzygies(diffs[-1], budget)
            if s.cols == 0:
                break
            diffs.append(s)
            ranks.append(s.cols)
        else:
            probe = syzygies(diffs[-1], budget)
            truncated = probe.cols > 0
    cpx = FreeComplex(M.carrier, CHAIN, 0, ranks, diffs)
    return Resolution(cpx, M, len(diffs), truncated)


def _cancel_unit(ranks: list, diffs: list, i: int, a: int, b: int, inclusion: list):
    """Cancel the unit entry d_i[a][b]; update diffs and the inclusion maps.

    ``diffs[j]`` is d_(j+1) as a mutable list of rows, ``ranks[j]`` the rank
    in degree j.  ``inclusion[j]`` accumulates the chain map from the
    minimalized complex back into the original one.
    """
    carrier = inclusion[0].carrier
    ring = ambient_ring(carrier)
    zero = Polynomial.zero(ring)
    one = Polynomial.one(ring)
    d = diffs[i - 1]
    u = d[a][b]
    uinv = ring.field.inv(u.constant_value())
    rows_keep = [r for r in range(ranks[i - 1]) if r != a]
    cols_keep = [c for c in range(ranks[i]) if c != b]

    # step inclusions: degree i is [[I], [-row_a/u]], degree i-1 is [[I], [0]]
    iota_i = PolyMatrix(
        carrier,
        ranks[i],
        len(cols_keep),
        [
            d[a][c].scale(ring.field.neg(uinv)) if r == b else (one if r == c else zero)
            for r in range(ranks[i])
            for c in cols_keep
        ],
    )
    iota_im1 = PolyMatrix(
        carrier,
        ranks[i - 1],
        len(rows_keep),
        [
            zero if r == a else (one if r == c else zero)
            for r in range(ranks[i - 1])
            for c in rows_keep
        ],
    )
    inclusion[i] = inclusion[i] * iota_i
    inclusion[i - 1] = inclusion[i - 1] * iota_im1

    # d'_i = D - (col_b)(row_a)/u
    new_d = []
    for r in rows_keep:
        row = []
        for c in cols_keep:
            val = d[r][c] - d[r][b] * d[a][c].scale(uinv)
            row.append(val)
        new_d.append(row)
    diffs[i - 1] = new_d
    # d_(i+1): drop row b
    if i < len(diffs):
        diffs[i] = [row for r, row in enumerate(diffs[i]) if r != b]
    # d_(i-1): drop column a
    if i - 2 >= 0:
        diffs[i - 2] = [[row[c] for c in rows_keep] for row in diffs[i - 2]]
    ranks[i] -= 1
    ranks[i - 1] -= 1


def minimalize_with_inclusion(res: Resolution, budget: Optional[Budget] = None):
    """Minimalize a resolution; also return the inclusion into the original.

    Returns ``(minimal_resolution, inclusion)`` where ``inclusion`` is a
    quasi-isomorphism from the minimalized complex to ``res.complex``.
    """
    carrier = res.complex.carrier
    ring = ambient_ring(carrier)
    ranks = list(res.complex.ranks)
    diffs = [
        [list(d.row(r)) for r in range(d.rows)] for d in res.complex.differentials
    ]
    inclusion = [PolyMatrix.identity(carrier, r) for r in ranks]

    def find_unit():
        for j, d in enumerate(diffs):
            for r, row in enumerate(d):
                for c, e in enumerate(row):
                    if not e.is_zero and e.is_constant:
                        return j + 1, r, c
        return None

    while True:
        hit = find_unit()
        if hit is None:
            break
        i, a, b = hit
        _cancel_unit(ranks, diffs, i, a, b, inclusion)

    # drop empty top degrees
    while len(ranks) > 1 and ranks[-1] == 0:
        ranks.pop()
        diffs.pop()
        inclusion.pop()
    new_diffs = [
        PolyMatrix(carrier, ranks[j], ranks[j + 1], [e for row in d for e in row])
        for j, d in enumerate(diffs)
    ]
    cpx = FreeComplex(carrier, CHAIN, 0, ranks, new_diffs)
    d1 = new_diffs[0] if new_diffs else PolyMatrix.zero(carrier, ranks[0], 0)
    new_res = Resolution(cpx, FpModule(carrier, d1), len(new_diffs), res.truncated)
    comp = {j: inclusion[j] for j in range(len(ranks))}
    themap = ChainMap(cpx, res.complex, comp)
    return new_res, themap


def minimalize(res: Resolution, budget: Optional[Budget] = None) -> Resolution:
    """Cancel unit entries until no differential entry is a nonzero constant."""
    new_res, _ = minimalize_with_inclusion(res, budget)
    return new_res


def classical_fitting(M: FpModule, k: int, budget: Optional[Budget] = None) -> Ideal:
    """Fitt_k(M) = ideal of (r - k)-minors of the presentation, r = #generators."""
    return minors_ideal(M.presentation, M.generator_count - k, budget)


def generic_rank(M: FpModule, budget: Optional[Budget] = None) -> int:
    """Generator count minus the largest j with I_j(presentation) nonzero.

    Meaningful when the carrier's relation ideal is prime (the module then
    has a well-defined rank at the generic point); the caller asserts that.
    """
    pres = M.presentation
    for j in range(min(pres.rows, pres.cols), -1, -1):
        if not is_zero_ideal(minors_ideal(pres, j, budget), budget):
            return M.generator_count - j
    return M.generator_count


def pd_locus(
    M: FpModule,
    d: int,
    rank_override: Optional[int] = None,
    resolution_length: Optional[int] = None,
    budget: Optional[Budget] = None,
) -> Ideal:
    """Ideal cutting out the points where the projective dimension is >= d.

    Computed as the Fitting ideal I_(chi_d - (-1)^(d-1) k)(d_d) of a free
    resolution of M, where k is the module's rank (supplied or computed).
    The convention is calibrated so that d = 1 recovers the classical
    Fitting ideal Fitt_k(M).
    """
    if d < 1:
        raise ShapeError("projective-dimension bound must be at least 1")
    k = generic_rank(M, budget) if rank_override is None else rank_override
    length = max(d, resolution_length or d)
    res = free_resolution(M, length, budget)
    if res.truncated and res.complex.top_index < d:
        raise TruncationError(f"resolution truncated before degree {d}")
    sign = -1 if (d - 1) % 2 else 1
    return fitting_ideal(res.complex, d, sign * k, budget)
