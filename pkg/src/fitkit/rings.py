"""Polynomial rings: variables, monomial orders, exact polynomials, quotients.

A monomial is a tuple of nonnegative exponents, one per ring variable.  A
polynomial is an immutable map from monomials to nonzero field elements.
Everything is exact; there is no floating point anywhere in the package.

Monomial orders
---------------
Two global orders are supported, selected per ring:

* ``grevlex`` (the default): graded, ties broken reverse-lexicographically
  with the *last* listed variable most significant.  In ``Q[x, y, z]`` this
  gives ``z > y > x`` on degree-one monomials and ``z^2 > x*y``, so the
  quadric-cone relation ``z^2 - x*y`` is led by ``z^2``.
* ``lex``: plain lexicographic order with the *first* listed variable most
  significant (``x > y > z`` in ``Q[x, y, z]``).

Elements of a quotient ring R/I are represented by their normal forms in the
ambient ring R; all quotient arithmetic is "compute in R, then reduce".
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import RingMismatchError, ShapeError
from .fields import FieldSpec, QQ

GREVLEX = "grevlex"
LEX = "lex"

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

Monomial = tuple  # tuple[int, ...], length == number of ring variables


@dataclass(frozen=True)
class RingSpec:
    """A multivariate polynomial ring over an exact field, with a fixed order."""

    variables: tuple
    field: FieldSpec = QQ
    order: str = GREVLEX

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise ShapeError("a ring needs at least one variable")
        for name in self.variables:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise ShapeError(f"bad variable name: {name!r}")
        if len(set(self.variables)) != len(self.variables):
            raise ShapeError(f"duplicate variable names: {self.variables}")
        if self.order not in (GREVLEX, LEX):
            raise ShapeError(f"unknown monomial order: {self.order!r}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def var_index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise RingMismatchError(f"unknown variable {name!r} in {self}") from None

    def monomial_key(self, m: Monomial):
        """Sort key: key(a) > key(b) iff a > b in this ring's order."""
        if self.order == LEX:
            return m
        return (sum(m), tuple(-e for e in m))

    def one_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def __str__(self) -> str:
        return f"{self.field}[{', '.join(self.variables)}]/{self.order}"


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_quotient(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """An immutable exact polynomial: nonzero terms keyed by monomial.

    Instances must never be mutated after construction; every operation
    returns a fresh value, which makes polynomials safe to share across
    threads and to use as dictionary keys.
    """

    __slots__ = ("ring", "terms", "_hash", "_sorted")

    def __init__(self, ring: RingSpec, terms: Mapping):
        self.ring = ring
        n = ring.nvars
        clean = {}
        for m, c in terms.items():
            if len(m) != n or any(e < 0 or not isinstance(e, int) for e in m):
                raise ShapeError(f"bad monomial {m!r} for {ring}")
            if c:
                clean[tuple(m)] = c
        self.terms = clean
        self._hash = None
        self._sorted = None

    # ---- constructors -------------------------------------------------
    @classmethod
    def zero(cls, ring: RingSpec) -> "Polynomial":
        return cls(ring, {})

    @classmethod
    def constant(cls, ring: RingSpec, c) -> "Polynomial":
        return cls(ring, {ring.one_monomial(): c})

    @classmethod
    def one(cls, ring: RingSpec) -> "Polynomial":
        return cls.constant(ring, ring.field.one)

    @classmethod
    def variable(cls, ring: RingSpec, name: str) -> "Polynomial":
        i = ring.var_index(name)
        m = tuple(1 if j == i else 0 for j in range(ring.nvars))
        return cls(ring, {m: ring.field.one})

    # ---- basic queries -------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.one_monomial() in self.terms)

    def constant_value(self):
        if not self.is_constant:
            raise ShapeError(f"not a constant: {self}")
        return self.terms.get(self.ring.one_monomial(), self.ring.field.zero)

    def total_degree(self) -> int:
        # degree of 0 is reported as -1
        return max((sum(m) for m in self.terms), default=-1)

    def sorted_terms(self):
        """Terms as ((monomial, coefficient), ...) in descending order."""
        if self._sorted is None:
            key = self.ring.monomial_key
            self._sorted = tuple(sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True))
        return self._sorted

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ShapeError("zero polynomial has no leading term")
        return self.sorted_terms()[0][0]

    def leading_coefficient(self):
        return self.sorted_terms()[0][1]

    # ---- arithmetic ------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if self.ring != other.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check(other)
        fld = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = fld.add(out.get(m, fld.zero), c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    def __sub__(self, other):
        self._check(other)
        fld = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = fld.sub(out.get(m, fld.zero), c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, {m: neg(c) for m, c in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        fld = self.ring.field
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = fld.add(out.get(m, fld.zero), fld.mul(c1, c2))
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ShapeError(f"exponent must be a nonnegative integer: {n!r}")
        result = Polynomial.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        if not c:
            return Polynomial.zero(self.ring)
        mul = self.ring.field.mul
        return Polynomial(self.ring, {m: mul(c, coeff) for m, coeff in self.terms.items()})

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    # ---- calculus / evaluation -----------------------------------------
    def derivative(self, var) -> "Polynomial":
        """Formal partial derivative (valid in any characteristic)."""
        i = self.ring.var_index(var) if isinstance(var, str) else var
        fld = self.ring.field
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            factor = fld.from_int(e)
            if not factor:
                continue
            dm = tuple(x - 1 if j == i else x for j, x in enumerate(m))
            s = fld.add(out.get(dm, fld.zero), fld.mul(c, factor))
            if s:
                out[dm] = s
            else:
                out.pop(dm, None)
        return Polynomial(self.ring, out)

    def evaluate(self, point):
        """Evaluate at a point given as one field element per variable."""
        if len(point) != self.ring.nvars:
            raise ShapeError(f"point length {len(point)} != {self.ring.nvars} variables")
        fld = self.ring.field
        total = fld.zero
        powers = [{0: fld.one} for _ in range(self.ring.nvars)]
        for m, c in self.terms.items():
            val = c
            for i, e in enumerate(m):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        p = cache[max(cache)]
                        for _ in range(max(cache), e):
                            p = fld.mul(p, point[i])
                        cache[e] = p
                    val = fld.mul(val, cache[e])
            total = fld.add(total, val)
        return total

    def substitute(self, images, target: RingSpec) -> "Polynomial":
        """Map each variable to the given target polynomial and expand."""
        if len(images) != self.ring.nvars:
            raise ShapeError("one image polynomial per source variable is required")
        for g in images:
            if g.ring != target:
                raise RingMismatchError("substitution images must live in the target ring")
        if self.ring.field != target.field:
            raise RingMismatchError("substitution requires matching coefficient fields")
        out = Polynomial.zero(target)
        pow_cache = [{} for _ in images]
        for m, c in self.terms.items():
            piece = Polynomial.constant(target, c)
            for i, e in enumerate(m):
                if e:
                    cache = pow_cache[i]
                    if e not in cache:
                        cache[e] = images[i] ** e
                    piece = piece * cache[e]
            out = out + piece
        return out

    # ---- comparisons ------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        from .parsing import render_polynomial

        return render_polynomial(self)

    def __repr__(self):
        return f"<poly {self} over {self.ring}>"


@dataclass(frozen=True)
class QuotientSpec:
    """A quotient ring R/I presented by generators of I.

    The reduced Groebner basis of the relations is computed once and cached;
    elements of the quotient are ambient polynomials in normal form against
    that basis.
    """

    ambient: RingSpec
    relations: tuple
    _gb: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        for r in self.relations:
            if not isinstance(r, Polynomial) or r.ring != self.ambient:
                raise RingMismatchError("every relation must lie in the ambient ring")

    @property
    def groebner_cache(self):
        """Reduced monic Groebner basis of the relation ideal (cached)."""
        if self._gb is None:
            from .groebner import reduced_groebner_basis

            basis = reduced_groebner_basis(list(self.relations), self.ambient)
            object.__setattr__(self, "_gb", basis)
        return self._gb

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ambient:
            raise RingMismatchError(f"{f!r} is not in the ambient ring {self.ambient}")
        from .groebner import normal_form

        return normal_form(f, self.groebner_cache)

    def __str__(self):
        rels = ", ".join(str(r) for r in self.relations)
        return f"{self.ambient} / ({rels})"


Carrier = RingSpec | QuotientSpec


def ambient_ring(rq: Carrier) -> RingSpec:
    return rq.ambient if isinstance(rq, QuotientSpec) else rq


def carrier_relations(rq: Carrier) -> tuple:
    return rq.relations if isinstance(rq, QuotientSpec) else ()


def reduce_in(rq: Carrier, f: Polynomial) -> Polynomial:
    """Normal form of f in the carrier (identity for a plain ring)."""
    return rq.normal_form(f) if isinstance(rq, QuotientSpec) else f


def normal_form_mod(f: Polynomial, q: QuotientSpec) -> Polynomial:
    """Unique remainder of f against the reduced basis of q's relations."""
    return q.normal_form(f)


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Dispatch add/sub/mul by name; used by the job runner."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ShapeError(f"unknown operation {op!r}")


def integers_to_field(ring: RingSpec, data: Iterable) -> list:
    """Convenience: lift ints / Fractions into the ring's field."""
    out = []
    for x in data:
        if isinstance(x, Fraction):
            out.append(ring.field.from_fraction(x))
        else:
            out.append(ring.field.from_int(x))
    return out
