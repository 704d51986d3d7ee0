"""Groebner engine for ideals and submodules of free modules.

The same Buchberger loop serves both ideals (rank-1 free modules) and
submodules of R^n.  Vectors are sparse dicts keyed by *terms* ``(position,
monomial)`` under a position-over-term order: a term in a lower position
beats every term in a higher position, ties are broken by the ring's
monomial order.  That choice makes syzygy extraction by elimination direct:
to compute the relations among columns m_1..m_c, augment each column to
``m_j (+) e_j`` inside R^(r+c), take a Groebner basis, and read off the
basis elements whose first r coordinates vanish.

Pair management follows Gebauer-Moeller.  The product ("coprime") criterion
is only valid over the ring itself and is applied only at rank 1; the chain
criterion is applied at every rank.  Computations spend from a step budget
(one unit per leading-term cancellation) and abort with
``BudgetExceededError`` instead of hanging: Buchberger's algorithm always
terminates, but not always in this lifetime.

Quotient rings are handled by the preimage convention: an ideal of R/I is
stored and canonicalized as its full preimage in R (generators plus
relations), and submodule computations append the columns ``g * e_j`` for
every relation g before eliminating.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

from .errors import BudgetExceededError, RingMismatchError, ShapeError
from .rings import (
    Carrier,
    Polynomial,
    QuotientSpec,
    RingSpec,
    ambient_ring,
    carrier_relations,
    mono_divides,
    mono_lcm,
    mono_mul,
    mono_quotient,
)

DEFAULT_BUDGET_STEPS = 10_000_000

_default_steps = DEFAULT_BUDGET_STEPS


def set_default_budget(steps: int) -> None:
    """Set the step budget used when an operation is not given one."""
    global _default_steps
    _default_steps = int(steps)


def get_default_budget() -> int:
    return _default_steps


class Budget:
    """A mutable pool of reduction steps shared by one computation."""

    __slots__ = ("remaining",)

    def __init__(self, steps: Optional[int] = None):
        self.remaining = _default_steps if steps is None else int(steps)

    def spend(self, n: int = 1) -> None:
        self.remaining -= n
        if self.remaining < 0:
            raise BudgetExceededError(
                "Groebner step budget exhausted; raise the budget to continue"
            )


# ---------------------------------------------------------------------------
# raw sparse-vector layer: dict[(position, monomial)] -> coefficient
# ---------------------------------------------------------------------------


def _term_key(ring: RingSpec):
    mkey = ring.monomial_key
    return lambda t: (-t[0], mkey(t[1]))


def _lead(vec: dict, tkey):
    t = max(vec, key=tkey)
    return t, vec[t]


def _prepare(vecs: Sequence[dict], ring: RingSpec):
    """Index reducers by leading position for the division loop."""
    tkey = _term_key(ring)
    by_pos: dict = {}
    for v in vecs:
        (pos, mono), lc = _lead(v, tkey)
        tail = tuple((t, c) for t, c in v.items() if t != (pos, mono))
        by_pos.setdefault(pos, []).append((mono, lc, tail))
    return by_pos


def _vec_normal_form(vec: dict, by_pos: dict, ring: RingSpec, budget: Budget) -> dict:
    """Full normal form: every term of the result is irreducible."""
    fld = ring.field
    tkey = _term_key(ring)
    work = dict(vec)
    out: dict = {}
    zero = fld.zero
    while work:
        t = max(work, key=tkey)
        c = work.pop(t)
        pos, mono = t
        hit = None
        for lmono, lc, tail in by_pos.get(pos, ()):
            if mono_divides(lmono, mono):
                hit = (lmono, lc, tail)
                break
        if hit is None:
            out[t] = c
            continue
        budget.spend()
        lmono, lc, tail = hit
        shift = mono_quotient(mono, lmono)
        factor = fld.div(c, lc)
        for (p2, m2), c2 in tail:
            key = (p2, mono_mul(m2, shift))
            s = fld.sub(work.get(key, zero), fld.mul(factor, c2))
            if s:
                work[key] = s
            else:
                work.pop(key, None)
    return out


def _monic_vec(vec: dict, ring: RingSpec) -> dict:
    fld = ring.field
    _, lc = _lead(vec, _term_key(ring))
    if lc == fld.one:
        return vec
    inv = fld.inv(lc)
    return {t: fld.mul(inv, c) for t, c in vec.items()}


def _s_vector(f: dict, g: dict, ring: RingSpec, tkey) -> dict:
    fld = ring.field
    (pf, mf), cf = _lead(f, tkey)
    (pg, mg), cg = _lead(g, tkey)
    assert pf == pg, "s-vectors only exist for equal leading positions"
    l = mono_lcm(mf, mg)
    sf = mono_quotient(l, mf)
    sg = mono_quotient(l, mg)
    inv_cf = fld.inv(cf)
    inv_cg = fld.inv(cg)
    out: dict = {}
    zero = fld.zero
    for (p, m), c in f.items():
        key = (p, mono_mul(m, sf))
        s = fld.add(out.get(key, zero), fld.mul(inv_cf, c))
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    for (p, m), c in g.items():
        key = (p, mono_mul(m, sg))
        s = fld.sub(out.get(key, zero), fld.mul(inv_cg, c))
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


def _update_pairs(G, leads, pairs, h_idx, ring, rank1):
    """Gebauer-Moeller pair update after appending element h_idx to G."""
    ph, mh = leads[h_idx][0]
    # candidate new pairs, restricted to equal leading positions
    C = []
    for g_idx in range(h_idx):
        pg, mg = leads[g_idx][0]
        if pg == ph:
            C.append([mono_lcm(mh, mg), g_idx])
    D = []
    while C:
        l1, g1 = C.pop(0)
        mg1 = leads[g1][0][1]
        coprime = rank1 and l1 == mono_mul(mh, mg1)
        if coprime or not (
            any(mono_divides(l2, l1) for l2, _ in C)
            or any(mono_divides(l2, l1) for l2, _ in D)
        ):
            D.append((l1, g1))
    if rank1:
        new_pairs = [
            (l, g) for l, g in D if l != mono_mul(mh, leads[g][0][1])
        ]
    else:
        new_pairs = D
    # chain criterion applied to the surviving old pairs
    kept = []
    for l_old, i, j in pairs:
        pi = leads[i][0][0]
        if pi == ph and mono_divides(mh, l_old):
            li_h = mono_lcm(leads[i][0][1], mh)
            lh_j = mono_lcm(mh, leads[j][0][1])
            if li_h != l_old and lh_j != l_old:
                continue
        kept.append((l_old, i, j))
    kept.extend((l, g, h_idx) for l, g in new_pairs)
    return kept


def _buchberger(inputs: Sequence[dict], ring: RingSpec, budget: Budget, rank1: bool):
    tkey = _term_key(ring)
    # deterministic seeding order: ascending leading term
    seed = [v for v in inputs if v]
    seed.sort(key=lambda v: tkey(_lead(v, tkey)[0]))
    G: list = []
    leads: list = []
    pairs: list = []
    for v in seed:
        h = _vec_normal_form(v, _prepare(G, ring), ring, budget)
        if not h:
            continue
        h = _monic_vec(h, ring)
        G.append(h)
        leads.append(_lead(h, tkey))
        pairs = _update_pairs(G, leads, pairs, len(G) - 1, ring, rank1)
    while pairs:
        # normal selection strategy: smallest lcm term in the module order
        best = min(
            range(len(pairs)),
            key=lambda idx: (
                tkey((leads[pairs[idx][1]][0][0], pairs[idx][0])),
                pairs[idx][1],
                pairs[idx][2],
            ),
        )
        l, i, j = pairs.pop(best)
        budget.spend()
        s = _s_vector(G[i], G[j], ring, tkey)
        if not s:
            continue
        h = _vec_normal_form(s, _prepare(G, ring), ring, budget)
        if not h:
            continue
        h = _monic_vec(h, ring)
        G.append(h)
        leads.append(_lead(h, tkey))
        pairs = _update_pairs(G, leads, pairs, len(G) - 1, ring, rank1)
    return _autoreduce(G, ring, budget)


def _autoreduce(G: list, ring: RingSpec, budget: Budget) -> list:
    """Canonicalize: minimal leading terms, fully interreduced, monic, sorted."""
    tkey = _term_key(ring)
    if not G:
        return []
    items = sorted(G, key=lambda v: tkey(_lead(v, tkey)[0]))
    kept: list = []
    kept_leads: list = []
    for v in items:
        (p, m), _ = _lead(v, tkey)
        redundant = any(
            p == kp and mono_divides(km, m) for kp, km in kept_leads
        )
        if not redundant:
            kept.append(v)
            kept_leads.append((p, m))
    changed = True
    while changed:
        changed = False
        for idx in range(len(kept)):
            others = kept[:idx] + kept[idx + 1 :]
            nf = _vec_normal_form(kept[idx], _prepare(others, ring), ring, budget)
            nf = _monic_vec(nf, ring)
            if nf != kept[idx]:
                kept[idx] = nf
                changed = True
    kept.sort(key=lambda v: tkey(_lead(v, tkey)[0]), reverse=True)
    return kept


# ---------------------------------------------------------------------------
# polynomial-level API
# ---------------------------------------------------------------------------


def _poly_to_vec(f: Polynomial, pos: int = 0) -> dict:
    return {(pos, m): c for m, c in f.terms.items()}


def _vec_to_poly(vec: dict, ring: RingSpec) -> Polynomial:
    return Polynomial(ring, {m: c for (_, m), c in vec.items()})


def _vec_to_row(vec: dict, rank: int, ring: RingSpec) -> tuple:
    comps = [dict() for _ in range(rank)]
    for (p, m), c in vec.items():
        comps[p][m] = c
    return tuple(Polynomial(ring, comp) for comp in comps)


def normal_form(f: Polynomial, basis: Sequence[Polynomial], budget: Optional[Budget] = None) -> Polynomial:
    """Full remainder of f on division by ``basis`` (any generating list)."""
    ring = f.ring
    reducers = [_poly_to_vec(g) for g in basis if not g.is_zero]
    nf = _vec_normal_form(_poly_to_vec(f), _prepare(reducers, ring), ring, budget or Budget())
    return _vec_to_poly(nf, ring)


def reduced_groebner_basis(
    gens: Iterable[Polynomial], ring: RingSpec, budget: Optional[Budget] = None
) -> tuple:
    """The unique reduced monic Groebner basis, sorted by descending lead."""
    vecs = []
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError("generator does not live in the stated ring")
        if not g.is_zero:
            vecs.append(_poly_to_vec(g))
    out = _buchberger(vecs, ring, budget or Budget(), rank1=True)
    return tuple(_vec_to_poly(v, ring) for v in out)


def module_groebner_basis(
    columns: Sequence[tuple], rank: int, ring: RingSpec, budget: Optional[Budget] = None
) -> tuple:
    """Reduced basis for the submodule of R^rank spanned by ``columns``."""
    vecs = []
    for col in columns:
        if len(col) != rank:
            raise ShapeError(f"column has length {len(col)}, expected {rank}")
        vec = {}
        for pos, entry in enumerate(col):
            for m, c in entry.terms.items():
                vec[(pos, m)] = c
        if vec:
            vecs.append(vec)
    out = _buchberger(vecs, ring, budget or Budget(), rank1=(rank == 1))
    return tuple(_vec_to_row(v, rank, ring) for v in out)


def syzygy_generators(
    columns: Sequence[tuple],
    rank: int,
    carrier: Carrier,
    budget: Optional[Budget] = None,
) -> list:
    """Generators of {v : sum_j v_j * columns[j] = 0} over the carrier.

    Over a quotient R/I the computation is lifted to R by appending the
    column ``g * e_i`` for each basis vector e_i and relation g of I; the
    returned coordinates are projected back onto the original columns and
    reduced to normal form.
    """
    ring = ambient_ring(carrier)
    relations = carrier_relations(carrier)
    budget = budget or Budget()
    c = len(columns)
    aug_cols = list(columns) + [
        tuple(
            g if i == pos else Polynomial.zero(ring)
            for i in range(rank)
        )
        for pos in range(rank)
        for g in relations
    ]
    vecs = []
    for j, col in enumerate(aug_cols):
        if len(col) != rank:
            raise ShapeError(f"column has length {len(col)}, expected {rank}")
        vec = {}
        for pos, entry in enumerate(col):
            if entry.ring != ring:
                raise RingMismatchError("column entries must live in the ambient ring")
            for m, coef in entry.terms.items():
                vec[(pos, m)] = coef
        vec[(rank + j, ring.one_monomial())] = ring.field.one
        vecs.append(vec)
    basis = _buchberger(vecs, ring, budget, rank1=False)
    out = []
    for v in basis:
        if any(t[0] < rank for t in v):
            continue
        row = _vec_to_row({(p - rank, m): c for (p, m), c in v.items()}, len(aug_cols), ring)
        head = row[:c]
        if relations:
            head = tuple(carrier.normal_form(p) for p in head)
        if any(not p.is_zero for p in head):
            out.append(head)
    return out


# ---------------------------------------------------------------------------
# Ideal and SubmoduleBasis
# ---------------------------------------------------------------------------


class Ideal:
    """A finitely generated ideal with a cached reduced Groebner basis.

    Over a quotient ring the ideal always denotes its full preimage in the
    ambient ring: the effective generating set is the stored generators
    together with the quotient relations.  The cached basis is immutable and
    computing it twice yields the identical value, so concurrent readers
    always observe one consistent basis.
    """

    __slots__ = ("carrier", "generators", "_gb")

    def __init__(self, carrier: Carrier, generators: Iterable[Polynomial]):
        self.carrier = carrier
        ring = ambient_ring(carrier)
        gens = tuple(generators)
        for g in gens:
            if not isinstance(g, Polynomial) or g.ring != ring:
                raise RingMismatchError("ideal generators must lie in the ambient ring")
        self.generators = gens
        self._gb = None

    @property
    def ring(self) -> RingSpec:
        return ambient_ring(self.carrier)

    def effective_generators(self) -> tuple:
        return self.generators + carrier_relations(self.carrier)

    def groebner(self, budget: Optional[Budget] = None) -> tuple:
        if self._gb is None:
            self._gb = reduced_groebner_basis(self.effective_generators(), self.ring, budget)
        return self._gb

    def normal_form(self, f: Polynomial, budget: Optional[Budget] = None) -> Polynomial:
        return normal_form(f, self.groebner(budget), budget)

    def contains_poly(self, f: Polynomial, budget: Optional[Budget] = None) -> bool:
        if f.ring != self.ring:
            raise RingMismatchError("membership across different rings")
        return self.normal_form(f, budget).is_zero

    __contains__ = contains_poly

    def is_zero(self, budget: Optional[Budget] = None) -> bool:
        # zero *in the carrier*: every generator collapses into the relations
        if isinstance(self.carrier, QuotientSpec):
            return all(self.carrier.normal_form(g).is_zero for g in self.generators)
        return len(self.groebner(budget)) == 0

    def is_unit(self, budget: Optional[Budget] = None) -> bool:
        gb = self.groebner(budget)
        return len(gb) == 1 and gb[0] == Polynomial.one(self.ring)

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators) or "0"
        return f"Ideal({gens})"


class SubmoduleBasis:
    """A finitely generated submodule of a free module R^rank.

    Generators are column vectors (tuples of polynomials).  Over a quotient
    the canonical basis is the preimage basis (relation multiples of the
    free-module basis vectors are adjoined), mirroring the ideal convention.
    """

    __slots__ = ("carrier", "ambient_rank", "generators", "_gb")

    def __init__(self, carrier: Carrier, ambient_rank: int, generators: Iterable[tuple]):
        if ambient_rank < 0:
            raise ShapeError("ambient rank must be nonnegative")
        self.carrier = carrier
        self.ambient_rank = ambient_rank
        ring = ambient_ring(carrier)
        gens = []
        for col in generators:
            col = tuple(col)
            if len(col) != ambient_rank:
                raise ShapeError("generator vector has the wrong length")
            for p in col:
                if not isinstance(p, Polynomial) or p.ring != ring:
                    raise RingMismatchError("vector entries must lie in the ambient ring")
            gens.append(col)
        self.generators = tuple(gens)
        self._gb = None

    @property
    def ring(self) -> RingSpec:
        return ambient_ring(self.carrier)

    def effective_generators(self) -> tuple:
        ring = self.ring
        rels = carrier_relations(self.carrier)
        extra = tuple(
            tuple(g if i == pos else Polynomial.zero(ring) for i in range(self.ambient_rank))
            for pos in range(self.ambient_rank)
            for g in rels
        )
        return self.generators + extra

    def groebner(self, budget: Optional[Budget] = None) -> tuple:
        if self._gb is None:
            self._gb = module_groebner_basis(
                self.effective_generators(), self.ambient_rank, self.ring, budget
            )
        return self._gb

    def contains_vector(self, col, budget: Optional[Budget] = None) -> bool:
        col = tuple(col)
        if len(col) != self.ambient_rank:
            raise ShapeError("vector has the wrong length")
        ring = self.ring
        vec = {}
        for pos, entry in enumerate(col):
            for m, c in entry.terms.items():
                vec[(pos, m)] = c
        reducers = []
        for g in self.groebner(budget):
            gv = {}
            for pos, entry in enumerate(g):
                for m, c in entry.terms.items():
                    gv[(pos, m)] = c
            if gv:
                reducers.append(gv)
        nf = _vec_normal_form(vec, _prepare(reducers, ring), ring, budget or Budget())
        return not nf

    def module_equal(self, other: "SubmoduleBasis", budget: Optional[Budget] = None) -> bool:
        if self.carrier != other.carrier or self.ambient_rank != other.ambient_rank:
            return False
        return self.groebner(budget) == other.groebner(budget)

    def __repr__(self):
        return f"SubmoduleBasis(rank={self.ambient_rank}, gens={len(self.generators)})"


def groebner(obj, budget: Optional[Budget] = None):
    """Reduced canonical basis of an Ideal or a SubmoduleBasis."""
    if isinstance(obj, (Ideal, SubmoduleBasis)):
        return obj.groebner(budget)
    raise ShapeError(f"cannot take a Groebner basis of {type(obj).__name__}")


def ideal_membership(f: Polynomial, ideal: Ideal, budget: Optional[Budget] = None) -> bool:
    return ideal.contains_poly(f, budget)


def ideal_equal(a: Ideal, b: Ideal, budget: Optional[Budget] = None) -> bool:
    if a.carrier != b.carrier:
        raise RingMismatchError("ideal comparison across different rings")
    return a.groebner(budget) == b.groebner(budget)


def ideal_contains(a: Ideal, b: Ideal, budget: Optional[Budget] = None) -> bool:
    """True iff a contains b, i.e. every generator of b is a member of a."""
    if a.carrier != b.carrier:
        raise RingMismatchError("ideal comparison across different rings")
    return all(a.contains_poly(g, budget) for g in b.effective_generators())


def is_zero_ideal(ideal: Ideal, budget: Optional[Budget] = None) -> bool:
    return ideal.is_zero(budget)


def is_unit_ideal(ideal: Ideal, budget: Optional[Budget] = None) -> bool:
    return ideal.is_unit(budget)


def krull_dimension(ideal: Ideal, budget: Optional[Budget] = None) -> int:
    """Krull dimension of R/I, combinatorially from the initial ideal.

    The dimension equals the size of the largest set S of variables such
    that no leading monomial of the reduced basis involves only variables
    of S.  The unit ideal (empty scheme) is reported as -1.
    """
    gb = ideal.groebner(budget)
    ring = ideal.ring
    if ideal.is_unit(budget):
        return -1
    supports = []
    for g in gb:
        lm = g.leading_monomial()
        supports.append(frozenset(i for i, e in enumerate(lm) if e))
    n = ring.nvars
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = set(subset)
            if all(not sup <= s for sup in supports):
                return size
    return 0
