"""fitkit: exact Fitting ideals of complexes over polynomial rings.

An exact computer-algebra library (and batch CLI) for:

* multivariate polynomials over Q or a prime field, with Groebner bases,
  normal forms, ideal membership/equality, syzygies and Krull dimension;
* matrices over (quotient) polynomial rings, determinants and ideals of
  minors, transport along ring maps, fiberwise ranks;
* bounded complexes of free modules, their expected ranks and higher
  Fitting ideals (invariant under quasi-isomorphism), mapping cones and
  exactness checking;
* free resolutions of finitely presented modules, classical Fitting
  ideals, projective-dimension jump loci;
* geometric applications: scheme-theoretic singular loci (and the higher
  ladder), determinantal schemes, and Brill-Noether ideals of complexes
  standing in for derived pushforwards.

Everything is immutable after construction and every operation is pure, so
values are safe to share between threads.  All arithmetic is exact.
"""

__version__ = "0.1.0"

from .errors import (
    BudgetExceededError,
    CoefficientError,
    FitkitError,
    InputError,
    ParseError,
    PointError,
    RingMismatchError,
    ShapeError,
    TruncationError,
)
from .fields import FieldSpec, PrimeField, Rationals, prime_field, rationals
from .rings import (
    Monomial,
    Polynomial,
    QuotientSpec,
    RingSpec,
    ambient_ring,
    normal_form_mod,
    poly_arith,
)
from .parsing import parse_polynomial, render_polynomial
from .groebner import (
    Budget,
    Ideal,
    SubmoduleBasis,
    get_default_budget,
    groebner,
    ideal_contains,
    ideal_equal,
    ideal_membership,
    is_unit_ideal,
    is_zero_ideal,
    krull_dimension,
    normal_form,
    reduced_groebner_basis,
    set_default_budget,
)
from .matrices import (
    PolyMatrix,
    RingMap,
    apply_ring_map,
    column_submodule,
    determinant,
    fiber_rank,
    minors_ideal,
    syzygies,
)
from .complexes import (
    CHAIN,
    COCHAIN,
    ChainMap,
    FreeComplex,
    chi,
    fitting_ideal,
    is_exact_at,
    is_quasi_iso,
    mapping_cone,
    pad_trivial,
    underline_chi,
    underline_fitting_ideal,
)
from .resolutions import (
    FpModule,
    Resolution,
    classical_fitting,
    free_resolution,
    generic_rank,
    minimalize,
    minimalize_with_inclusion,
    pd_locus,
)
from .loci import (
    AffineScheme,
    PushforwardComplex,
    brill_noether_ideal,
    determinantal_scheme,
    higher_singular_locus,
    kaehler_presentation,
    liftable_sections_rank,
    singular_locus,
)
from .cli import run_job
