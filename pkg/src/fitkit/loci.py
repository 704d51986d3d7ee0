"""Geometric applications: singular loci, determinantal schemes, Brill-Noether.

All loci are returned as ideals in the ambient polynomial ring, joined with
the defining equations of the scheme (the preimage convention), which is
how they are usually written down.  Supports are read through rational
points: over a field that is not algebraically closed, a locus can be
nonempty as a scheme while having no rational points, so support
comparisons in the test suite stick to rational sample grids.

The scheme-theoretic singular locus of a pure d-dimensional affine scheme
is cut out by the d-th Fitting ideal of its Kaehler differentials, which
are presented by the (transposed) Jacobian of the defining equations.  The
higher singular loci Sing^i are the jump loci where the differentials have
projective dimension >= i + 1; for a local complete intersection every
Sing^i with i >= 1 is empty, which is reported as the zero ideal read off
the positive-size minors of the differential past the end of the finite
resolution.

Brill-Noether ideals of a bounded cochain complex E (a stand-in for a
derived pushforward, with E^0 in degree 0) are the underline Fitting ideals
of the first differential: BN^k = I_(r_0 - k)(d^0).  Their vanishing locus
is exactly where the fiberwise kernel of d^0 has dimension >= k + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .complexes import COCHAIN, FreeComplex, fitting_ideal, underline_fitting_ideal
from .errors import ShapeError, TruncationError
from .groebner import Budget, Ideal, is_unit_ideal, is_zero_ideal, krull_dimension
from .matrices import PolyMatrix, minors_ideal
from .resolutions import FpModule, classical_fitting, free_resolution
from .rings import Polynomial, QuotientSpec, RingSpec


@dataclass(frozen=True)
class AffineScheme:
    """A closed subscheme of affine space, given by its defining ideal."""

    ambient: RingSpec
    ideal: Ideal
    _quotient: QuotientSpec = field(default=None, compare=False, repr=False)
    _dimension: int = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.ideal, Ideal) or self.ideal.ring != self.ambient:
            raise ShapeError("the defining ideal must live in the ambient ring")
        if isinstance(self.ideal.carrier, QuotientSpec):
            raise ShapeError("define a scheme by an ideal of the plain ambient ring")
        if self.ideal.is_unit():
            raise ShapeError("the unit ideal defines the empty scheme; rejected")

    @classmethod
    def from_equations(cls, ambient: RingSpec, equations) -> "AffineScheme":
        return cls(ambient, Ideal(ambient, tuple(equations)))

    @property
    def quotient(self) -> QuotientSpec:
        if self._quotient is None:
            object.__setattr__(self, "_quotient", QuotientSpec(self.ambient, self.ideal.generators))
        return self._quotient

    @property
    def dimension(self) -> int:
        if self._dimension is None:
            object.__setattr__(self, "_dimension", krull_dimension(self.ideal))
        return self._dimension


def kaehler_presentation(X: AffineScheme) -> FpModule:
    """Kaehler differentials of X, presented over the coordinate ring.

    One generator per ambient variable; one relation per defining equation,
    namely the column of its formal partial derivatives reduced modulo the
    defining ideal.  Valid in any characteristic.
    """
    ring = X.ambient
    eqs = X.ideal.generators
    entries = []
    for i in range(ring.nvars):
        for g in eqs:
            entries.append(g.derivative(i))
    jac = PolyMatrix(X.quotient, ring.nvars, len(eqs), entries)
    return FpModule(X.quotient, jac)


def singular_locus(
    X: AffineScheme, dim_override: Optional[int] = None, budget: Optional[Budget] = None
) -> Ideal:
    """Scheme-theoretic singular locus: Fitt_d of the Kaehler differentials.

    d is the Krull dimension unless overridden (the caller asserts purity
    when overriding).  The result carries the ambient preimage convention.
    """
    d = X.dimension if dim_override is None else dim_override
    return classical_fitting(kaehler_presentation(X), d, budget)


def higher_singular_locus(
    X: AffineScheme,
    i: int,
    resolution_length: int,
    budget: Optional[Budget] = None,
) -> Ideal:
    """The i-th higher singular locus Sing^i(X), for reduced pure-dimensional X.

    Sing^i is the jump locus where the Kaehler differentials have projective
    dimension >= i + 1, cut out by the Fitting ideal
    I_(chi_(i+1) - (-1)^i d)(d_(i+1)) of a free resolution; Sing^0 coincides
    with the singular locus.  ``resolution_length`` must be at least i + 2:
    resolutions over the coordinate ring can be infinite and the caller
    decides how deep to dig.  When the resolution provably terminates below
    degree i + 1 (for i >= 1), the jump locus is empty and the minors of the
    absent differential at positive size generate the zero ideal, which is
    what is returned (a local complete intersection is the standard case).
    """
    if i < 0:
        raise ShapeError("the singular-locus index must be nonnegative")
    if resolution_length < i + 2:
        raise ShapeError(f"resolution_length must be at least i + 2 = {i + 2}")
    d = X.dimension
    M = kaehler_presentation(X)
    res = free_resolution(M, resolution_length, budget)
    if res.complex.top_index < i + 1:
        if res.truncated:
            raise TruncationError(f"resolution truncated before degree {i + 1}")
        if i >= 1:
            return Ideal(X.quotient, ())
    sign = -1 if i % 2 else 1
    return fitting_ideal(res.complex, i + 1, sign * d, budget)


def determinantal_scheme(M: PolyMatrix, k: int, budget: Optional[Budget] = None) -> Ideal:
    """Defining ideal of the locus where the matrix has rank <= k."""
    return minors_ideal(M, k + 1, budget)


@dataclass(frozen=True)
class PushforwardComplex:
    """A bounded cochain complex standing in for a derived pushforward.

    Degree 0 must be present (lowest index 0); the degree-0 term plays the
    role of the sections bundle.
    """

    complex: FreeComplex

    def __post_init__(self):
        if self.complex.orientation != COCHAIN:
            raise ShapeError("a pushforward complex must be cochain-oriented")
        if self.complex.lowest_index != 0:
            raise ShapeError("a pushforward complex must start in degree 0")

    @property
    def sections_rank(self) -> int:
        return self.complex.rank_at(0)


def brill_noether_ideal(E: PushforwardComplex, k: int, budget: Optional[Budget] = None) -> Ideal:
    """BN^k(E) = underline-Fitt^0_k(E) = I_(r_0 - k) of the first differential.

    Its vanishing locus is where the fiberwise kernel of d^0 (the space of
    sections of the fiber) has dimension at least k + 1.
    """
    return underline_fitting_ideal(E.complex, 0, k, budget)


def liftable_sections_rank(E: PushforwardComplex, budget: Optional[Budget] = None) -> Optional[int]:
    """The unique k with BN^k = 0 and BN^(k+1) = (1), if one exists.

    When present, every fiberwise section lifts locally over the base and
    the pushforward of the sheaf is locally free of rank k + 1.  Searches
    k in [-1, r_0]; returns None when the section rank jumps.
    """
    r0 = E.sections_rank
    for k in range(-1, r0 + 1):
        if is_zero_ideal(brill_noether_ideal(E, k, budget), budget) and is_unit_ideal(
            brill_noether_ideal(E, k + 1, budget), budget
        ):
            return k
    return None
