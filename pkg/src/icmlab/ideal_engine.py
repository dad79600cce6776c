"""Buchberger completion and the ideal calculus built on top of it.

The completion uses the normal selection strategy (pairs with the smallest
lcm degree first, ties broken by the term order), discards pairs with
coprime leading terms at creation, and applies the chain criterion at pop
time: a pair (i, j) is dropped when some third leading term divides its lcm
and both companion pairs have already been settled.  Output is always the
reduced monic basis, which is unique for a given ideal and term order, so
everything downstream is deterministic.

Completion is budgeted: the number of S-polynomial reductions is capped by
``DEFAULT_STEP_LIMIT`` (overridable per call or via
``set_default_step_limit``) and the engine fails loudly when the cap is hit
rather than spinning.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, replace
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .errors import (
    IncompatibleRingError,
    StepLimitExceededError,
    ZeroElementError,
)
from .ring_core import (
    ELIMINATION,
    GREVLEX,
    LEX,
    Monomial,
    Polynomial,
    RingDescriptor,
    TermOrder,
    _from_dict,
    monomial_degree,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    remap_variables,
)

DEFAULT_STEP_LIMIT = 100_000


def set_default_step_limit(n: int) -> None:
    """Set the global S-pair reduction budget used when no explicit limit is given."""
    global DEFAULT_STEP_LIMIT
    if not isinstance(n, int) or n < 1:
        raise ValueError("step limit must be a positive integer")
    DEFAULT_STEP_LIMIT = n


def get_default_step_limit() -> int:
    return DEFAULT_STEP_LIMIT


def _same_ring(a, b) -> None:
    if a.ring != b.ring:
        raise IncompatibleRingError(
            "operands live in different rings: %s vs %s" % (a.ring, b.ring)
        )


def divide(f: Polynomial, divisors: Sequence[Polynomial]):
    """Multivariate division: f = sum(q_i * d_i) + r with no term of r
    divisible by any divisor's leading term.

    Returns ``(quotients, remainder)``.  Divisors are tried in the order
    given; the result depends on that order except for the remainder against
    a Groebner basis, which is canonical.
    """
    ring = f.ring
    field = ring.field
    key = ring.key
    for d in divisors:
        _same_ring(f, d)
        if d.is_zero:
            raise ZeroElementError("cannot divide by the zero polynomial")
    div_data = [(d.leading_monomial(), d.leading_coefficient(), d) for d in divisors]
    work = dict(f.terms)
    remainder: dict = {}
    quotients: List[dict] = [{} for _ in divisors]
    while work:
        mono = max(work, key=key)
        c = work.pop(mono)
        for idx, (ltm, ltc, d) in enumerate(div_data):
            if monomial_divides(ltm, mono):
                shift = monomial_div(mono, ltm)
                factor = field.div(c, ltc)
                q = quotients[idx]
                q[shift] = field.add(q.get(shift, field.zero), factor)
                # the leading term cancels exactly; only the tail feeds back
                for m2, c2 in d.terms[1:]:
                    m = monomial_mul(shift, m2)
                    nc = field.sub(work.get(m, field.zero), field.mul(factor, c2))
                    if nc == 0:
                        work.pop(m, None)
                    else:
                        work[m] = nc
                break
        else:
            remainder[mono] = c
    quots = [_from_dict(ring, q) for q in quotients]
    return quots, _from_dict(ring, remainder)


class ReducedGB:
    """The reduced monic Groebner basis of an ideal, sorted by increasing
    leading monomial.  Unique per (ideal, term order)."""

    __slots__ = ("ring", "basis")

    def __init__(self, ring: RingDescriptor, basis: Tuple[Polynomial, ...]):
        self.ring = ring
        self.basis = basis

    @property
    def order(self) -> TermOrder:
        return self.ring.order

    @property
    def is_unit_ideal(self) -> bool:
        return bool(self.basis) and monomial_degree(self.basis[0].leading_monomial()) == 0

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, i):
        return self.basis[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReducedGB):
            return NotImplemented
        return self.ring == other.ring and self.basis == other.basis

    def __hash__(self):
        return hash((self.ring, self.basis))

    def __repr__(self) -> str:
        return "ReducedGB[%s]" % ", ".join(str(p) for p in self.basis)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """The S-polynomial: both leading terms scaled onto their lcm and cancelled."""
    _same_ring(f, g)
    field = f.ring.field
    lf, cf = f.leading_term()
    lg, cg = g.leading_term()
    lcm = monomial_lcm(lf, lg)
    a = f.shift(monomial_div(lcm, lf), field.invert(cf))
    b = g.shift(monomial_div(lcm, lg), field.invert(cg))
    return a - b


def buchberger(
    generators: Iterable[Polynomial],
    *,
    ring: Optional[RingDescriptor] = None,
    order: Optional[TermOrder] = None,
    step_limit: Optional[int] = None,
) -> ReducedGB:
    """Complete ``generators`` to the reduced Groebner basis.

    ``order`` overrides the ring's own term order (generators are re-sorted
    into a twin ring).  ``step_limit`` bounds the number of S-polynomial
    reductions; exceeding it raises StepLimitExceededError.
    """
    gens = list(generators)
    if ring is None:
        if not gens:
            raise ValueError("cannot infer the ring from an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise IncompatibleRingError("generator outside the target ring")
    if order is not None and order != ring.order:
        ring = replace(ring, order=order)
        gens = [ring.polynomial(dict(g.terms)) for g in gens]
    limit = step_limit if step_limit is not None else DEFAULT_STEP_LIMIT

    key = ring.key
    G: List[Polynomial] = []
    lts: List[Monomial] = []
    pending: set = set()
    heap: list = []

    def add_poly(p: Polynomial) -> None:
        j = len(G)
        G.append(p)
        lts.append(p.leading_monomial())
        for i in range(j):
            lcm = monomial_lcm(lts[i], lts[j])
            if lcm == monomial_mul(lts[i], lts[j]):
                # coprime leading terms: the S-polynomial reduces to zero
                continue
            pending.add((i, j))
            heapq.heappush(heap, (monomial_degree(lcm), key(lcm), i, j))

    for g in gens:
        if g.is_zero:
            continue
        r = divide(g, G)[1] if G else g
        if r.terms:
            add_poly(r.monic())

    steps = 0
    while heap:
        _, _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        lcm = monomial_lcm(lts[i], lts[j])
        chained = False
        for t in range(len(G)):
            if t == i or t == j:
                continue
            if monomial_divides(lts[t], lcm):
                a = (i, t) if i < t else (t, i)
                b = (j, t) if j < t else (t, j)
                if a not in pending and b not in pending:
                    chained = True
                    break
        if chained:
            continue
        steps += 1
        if steps > limit:
            raise StepLimitExceededError(
                "Buchberger completion exceeded %d S-pair reductions; raise the "
                "step limit if the input really is this hard" % limit
            )
        r = divide(s_polynomial(G[i], G[j]), G)[1]
        if r.terms:
            add_poly(r.monic())

    # minimal basis: scan by increasing leading monomial, drop dominated ones
    minimal: List[Polynomial] = []
    for p in sorted(G, key=lambda q: key(q.leading_monomial())):
        lm = p.leading_monomial()
        if any(monomial_divides(q.leading_monomial(), lm) for q in minimal):
            continue
        minimal.append(p)

    # full autoreduction; leading terms are pairwise non-dividing so they survive
    for idx in range(len(minimal)):
        others = minimal[:idx] + minimal[idx + 1 :]
        if others:
            minimal[idx] = divide(minimal[idx], others)[1].monic()

    basis = tuple(sorted(minimal, key=lambda q: key(q.leading_monomial())))
    return ReducedGB(ring, basis)


def normal_form(f: Polynomial, basis: Union[ReducedGB, Sequence[Polynomial]]) -> Polynomial:
    """Remainder of f on division by the basis; canonical when the basis is
    a Groebner basis for f's ring and order."""
    if isinstance(basis, ReducedGB):
        if f.ring != basis.ring:
            raise IncompatibleRingError(
                "polynomial and basis live in different rings"
            )
        divisors: Sequence[Polynomial] = basis.basis
    else:
        divisors = tuple(basis)
    if not divisors:
        return f
    return divide(f, divisors)[1]


class Ideal:
    """An ideal of an affine polynomial ring, held by generators.

    The reduced Groebner basis is computed on first use and cached.  All
    other state is immutable, so sharing an Ideal across threads is safe;
    at worst two threads compute the same canonical basis and one wins the
    (atomic) attribute write.
    """

    __slots__ = ("ring", "generators", "_gb")

    def __init__(self, ring: RingDescriptor, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                raise TypeError("ideal generators must be Polynomials, got %r" % (g,))
            if g.ring != ring:
                raise IncompatibleRingError("generator outside the ideal's ring")
            if g.terms:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb = None

    @property
    def is_zero_ideal(self) -> bool:
        return not self.generators

    def groebner_basis(self, step_limit: Optional[int] = None) -> ReducedGB:
        gb = self._gb
        if gb is None:
            gb = buchberger(self.generators, ring=self.ring, step_limit=step_limit)
            self._gb = gb
        return gb

    def contains(self, f: Polynomial) -> bool:
        return membership(f, self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return ideal_equal(self, other)

    __hash__ = None  # semantic equality is GB equality; hashing would lie

    def __repr__(self) -> str:
        if not self.generators:
            return "Ideal<0>"
        return "Ideal<%s>" % ", ".join(str(g) for g in self.generators)


@dataclass(frozen=True)
class SaturationResult:
    """Outcome of saturating J by I: the stable ideal (J : I^infinity) and
    the least exponent k with (J : I^k) already equal to it."""

    ideal: Ideal
    exponent: int


def membership(f: Polynomial, J: Ideal) -> bool:
    if f.ring != J.ring:
        raise IncompatibleRingError("polynomial outside the ideal's ring")
    if f.is_zero:
        return True
    return normal_form(f, J.groebner_basis()).is_zero


def ideal_equal(a: Ideal, b: Ideal) -> bool:
    """Equality as ideals, decided by comparing reduced Groebner bases."""
    _same_ring(a, b)
    return a.groebner_basis().basis == b.groebner_basis().basis


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    _same_ring(a, b)
    return Ideal(a.ring, a.generators + b.generators)


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    _same_ring(a, b)
    gens = [g * h for g in a.generators for h in b.generators]
    return Ideal(a.ring, gens)


def _fresh_name(existing: Sequence[str], base: str) -> str:
    if base not in existing:
        return base
    k = 0
    while "%s%d" % (base, k) in existing:
        k += 1
    return "%s%d" % (base, k)


def ideal_intersect(a: Ideal, b: Ideal, step_limit: Optional[int] = None) -> Ideal:
    """Intersection via a tag variable: (t*J1 + (1-t)*J2) with t eliminated."""
    _same_ring(a, b)
    ring = a.ring
    if a.is_zero_ideal or b.is_zero_ideal:
        return Ideal(ring, ())
    t = _fresh_name(ring.variables, "t")
    aug = RingDescriptor(ring.field, (t,) + ring.variables, TermOrder(ELIMINATION, 1))
    lift = list(range(1, ring.nvars + 1))
    tv = aug.variable(0)
    one = aug.one()
    gens = [tv * remap_variables(g, aug, lift) for g in a.generators]
    gens += [(one - tv) * remap_variables(g, aug, lift) for g in b.generators]
    G = buchberger(gens, ring=aug, step_limit=step_limit)
    drop = [None] + list(range(ring.nvars))
    out = []
    for p in G.basis:
        if all(m[0] == 0 for m, _ in p.terms):
            out.append(remap_variables(p, ring, drop))
    return Ideal(ring, out)


def ideal_quotient(J: Ideal, f: Polynomial, step_limit: Optional[int] = None) -> Ideal:
    """The colon ideal (J : f), computed as (1/f) * (J intersect <f>)."""
    if f.ring != J.ring:
        raise IncompatibleRingError("polynomial outside the ideal's ring")
    if f.is_zero:
        raise ZeroElementError("colon by the zero polynomial is undefined")
    if J.is_zero_ideal:
        return Ideal(J.ring, ())
    K = ideal_intersect(J, Ideal(J.ring, (f,)), step_limit=step_limit)
    gens = []
    for g in K.generators:
        quots, r = divide(g, [f])
        assert r.is_zero, "element of J intersect <f> must be divisible by f"
        gens.append(quots[0])
    return Ideal(J.ring, gens)


def ideal_quotient_ideal(J: Ideal, I: Ideal, step_limit: Optional[int] = None) -> Ideal:
    """The colon ideal (J : I) = intersection over generators g of (J : g)."""
    _same_ring(J, I)
    if not I.generators:
        raise ZeroElementError("colon by the zero ideal is undefined")
    parts = [ideal_quotient(J, g, step_limit=step_limit) for g in I.generators]
    out = parts[0]
    for part in parts[1:]:
        out = ideal_intersect(out, part, step_limit=step_limit)
    return out


def saturate(J: Ideal, I: Ideal, step_limit: Optional[int] = None) -> SaturationResult:
    """Saturation (J : I^infinity) plus the least stabilizing exponent.

    Each generator is saturated by iterated colon until its chain stops, the
    partial results are intersected, and the exponent is then read off the
    chain K -> (K : I) starting at J.
    """
    _same_ring(J, I)
    if not I.generators:
        raise ZeroElementError("saturation by the zero ideal is undefined")
    parts = []
    for g in I.generators:
        K = J
        while True:
            K2 = ideal_quotient(K, g, step_limit=step_limit)
            if ideal_equal(K2, K):
                break
            K = K2
        parts.append(K)
    sat = parts[0]
    for part in parts[1:]:
        sat = ideal_intersect(sat, part, step_limit=step_limit)
    exponent = 0
    K = J
    while not ideal_equal(K, sat):
        K = ideal_quotient_ideal(K, I, step_limit=step_limit)
        exponent += 1
    return SaturationResult(sat, exponent)


def eliminate(J: Ideal, keep: Iterable[str], step_limit: Optional[int] = None) -> Ideal:
    """The elimination ideal J intersect k[keep], as an ideal of k[keep].

    Keeping every variable returns J itself.  Internally the dropped
    variables are moved to the front of a twin ring carrying a block
    elimination order; basis elements free of them survive.
    """
    ring = J.ring
    keepset = set(keep)
    unknown = keepset - set(ring.variables)
    if unknown:
        raise KeyError("unknown variables in keep list: %s" % sorted(unknown))
    kept = [v for v in ring.variables if v in keepset]
    dropped = [v for v in ring.variables if v not in keepset]
    if not dropped:
        return J
    if not kept:
        raise ValueError("cannot eliminate every variable")
    helper = RingDescriptor(
        ring.field,
        tuple(dropped + kept),
        TermOrder(ELIMINATION, len(dropped)),
    )
    hpos = {name: i for i, name in enumerate(helper.variables)}
    lift = [hpos[name] for name in ring.variables]
    H = [remap_variables(g, helper, lift) for g in J.generators]
    G = buchberger(H, ring=helper, step_limit=step_limit)
    torder = ring.order if ring.order.kind in (LEX, GREVLEX) else TermOrder(GREVLEX)
    target = RingDescriptor(ring.field, tuple(kept), torder)
    nd = len(dropped)
    drop = [None] * nd + list(range(len(kept)))
    out = []
    for p in G.basis:
        if all(all(e == 0 for e in m[:nd]) for m, _ in p.terms):
            out.append(remap_variables(p, target, drop))
    return Ideal(target, out)


def extend_ring(J: Ideal, new_names: Sequence[str]) -> Ideal:
    """The extension of J to the polynomial ring with extra variables
    appended; generators are carried over verbatim."""
    ring = J.ring
    new_names = tuple(new_names)
    if not new_names:
        return J
    for name in new_names:
        if not name or not isinstance(name, str):
            raise ValueError("variable names must be nonempty strings")
        if name in ring.variables:
            raise ValueError("variable %r already present" % name)
    if len(set(new_names)) != len(new_names):
        raise ValueError("duplicate names in the extension")
    ext = RingDescriptor(ring.field, ring.variables + new_names, ring.order)
    lift = list(range(ring.nvars))
    return Ideal(ext, [remap_variables(g, ext, lift) for g in J.generators])
