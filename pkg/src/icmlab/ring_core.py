"""Exact coefficient fields, term orders, and sparse multivariate polynomials.

Everything in this module is a plain immutable value.  Coefficients are
`fractions.Fraction` in characteristic zero and canonical residues (ints in
``[0, p)``) over a prime field.  A monomial is a tuple of nonnegative
exponents, one per ring variable.  A polynomial keeps its terms sorted in
decreasing term order, so the leading term is always the first entry and
never needs a search.

No floating point appears anywhere; equality of polynomials is exact.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from .errors import (
    DimensionMismatchError,
    IncompatibleRingError,
    ZeroLeadingTermError,
)

Monomial = Tuple[int, ...]
Coeff = Union[Fraction, int]

LEX = "lex"
GREVLEX = "grevlex"
ELIMINATION = "elimination-block"

_MAX_PRIME = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """An exact coefficient field: the rationals, or GF(p) for a word-sized prime.

    Characteristic 0 elements are Fractions (always in lowest terms with a
    positive denominator, which Fraction guarantees).  Characteristic p
    elements are ints reduced to the canonical residue in [0, p).
    """

    characteristic: int = 0

    def __post_init__(self) -> None:
        c = self.characteristic
        if c == 0:
            return
        if c < 2 or c >= _MAX_PRIME or not _is_prime(c):
            raise ValueError(
                "field characteristic must be 0 or a prime below 2^31, got %r" % (c,)
            )

    @property
    def kind(self) -> str:
        return "exact-rationals" if self.characteristic == 0 else "prime-field"

    def coerce(self, value: Union[int, Fraction]) -> Coeff:
        p = self.characteristic
        if p == 0:
            if isinstance(value, Fraction):
                return value
            if isinstance(value, int):
                return Fraction(value)
        else:
            if isinstance(value, Fraction):
                if value.denominator % p == 0:
                    raise ZeroDivisionError(
                        "denominator vanishes in GF(%d)" % p
                    )
                return (value.numerator * pow(value.denominator, -1, p)) % p
            if isinstance(value, int):
                return value % p
        raise TypeError("cannot coerce %r into %s" % (value, self))

    @property
    def zero(self) -> Coeff:
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self) -> Coeff:
        return Fraction(1) if self.characteristic == 0 else 1

    def add(self, a: Coeff, b: Coeff) -> Coeff:
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a: Coeff, b: Coeff) -> Coeff:
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def mul(self, a: Coeff, b: Coeff) -> Coeff:
        p = self.characteristic
        return a * b if p == 0 else (a * b) % p

    def neg(self, a: Coeff) -> Coeff:
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def invert(self, a: Coeff) -> Coeff:
        p = self.characteristic
        if p == 0:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return Fraction(1) / a
        try:
            return pow(a, -1, p)
        except ValueError:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % p) from None

    def div(self, a: Coeff, b: Coeff) -> Coeff:
        return self.mul(a, self.invert(b))

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else "GF(%d)" % self.characteristic


def _grevlex_key(mono: Monomial) -> tuple:
    # Higher total degree wins; ties broken by the SMALLEST last exponent,
    # which the negated reversed tuple encodes as the larger key.
    return (sum(mono), tuple(-e for e in reversed(mono)))


@dataclass(frozen=True)
class TermOrder:
    """A monomial well-order: lex, graded reverse lex, or a two-block
    elimination order (grevlex inside each block, first block dominant).

    ``key`` maps a monomial to a tuple that sorts consistently with the
    order, so Python's built-in comparisons and ``sorted`` do the rest.
    """

    kind: str = GREVLEX
    block: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in (LEX, GREVLEX, ELIMINATION):
            raise ValueError("unknown term order kind %r" % (self.kind,))
        if self.kind == ELIMINATION:
            if self.block is None or self.block < 1:
                raise ValueError("elimination-block order needs a positive block size")
        elif self.block is not None:
            raise ValueError("block size only applies to elimination-block orders")

    def key(self, mono: Monomial) -> tuple:
        if self.kind == LEX:
            return mono
        if self.kind == GREVLEX:
            return _grevlex_key(mono)
        b = self.block
        return (_grevlex_key(mono[:b]), _grevlex_key(mono[b:]))

    def __str__(self) -> str:
        if self.kind == ELIMINATION:
            return "%s(%d)" % (self.kind, self.block)
        return self.kind


def monomial_compare(order: TermOrder, a: Monomial, b: Monomial) -> int:
    """Total comparison under ``order``: -1, 0, or +1."""
    if len(a) != len(b):
        raise DimensionMismatchError(
            "cannot compare exponent vectors of lengths %d and %d" % (len(a), len(b))
        )
    ka, kb = order.key(a), order.key(b)
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True when a | b, i.e. every exponent of a is at most that of b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    """Exact quotient a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def monomial_degree(a: Monomial) -> int:
    return sum(a)


def monomial_support(a: Monomial) -> frozenset:
    return frozenset(i for i, e in enumerate(a) if e)


@dataclass(frozen=True)
class RingDescriptor:
    """An affine polynomial ring k[x_1, ..., x_n] with a fixed term order."""

    field: FieldSpec
    variables: Tuple[str, ...]
    order: TermOrder = TermOrder()

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise ValueError("a ring needs at least one variable")
        seen = set()
        for name in self.variables:
            if not name or not isinstance(name, str):
                raise ValueError("variable names must be nonempty strings")
            if name in seen:
                raise ValueError("duplicate variable name %r" % name)
            seen.add(name)
        if self.order.kind == ELIMINATION and self.order.block >= len(self.variables):
            raise ValueError("elimination block must leave at least one variable")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def key(self, mono: Monomial) -> tuple:
        return self.order.key(mono)

    def var_index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError("no variable named %r in %s" % (name, self)) from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: Union[int, Fraction]) -> "Polynomial":
        cc = self.field.coerce(c)
        if cc == 0:
            return Polynomial(self, ())
        return Polynomial(self, (((0,) * self.nvars, cc),))

    def variable(self, which: Union[int, str]) -> "Polynomial":
        i = which if isinstance(which, int) else self.var_index(which)
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, ((tuple(exps), self.field.one),))

    def monomial(self, exps: Sequence[int], coeff: Union[int, Fraction] = 1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise DimensionMismatchError(
                "expected %d exponents, got %d" % (self.nvars, len(exps))
            )
        if any(e < 0 for e in exps):
            raise ValueError("exponents must be nonnegative")
        c = self.field.coerce(coeff)
        if c == 0:
            return Polynomial(self, ())
        return Polynomial(self, ((exps, c),))

    def polynomial(self, terms: Mapping[Monomial, Union[int, Fraction]]) -> "Polynomial":
        """Build a polynomial from a monomial -> coefficient mapping."""
        acc = {}
        for mono, c in terms.items():
            mono = tuple(mono)
            if len(mono) != self.nvars:
                raise DimensionMismatchError(
                    "expected %d exponents, got %d" % (self.nvars, len(mono))
                )
            cc = self.field.coerce(c)
            if mono in acc:
                cc = self.field.add(acc[mono], cc)
            acc[mono] = cc
        return _from_dict(self, acc)

    def __str__(self) -> str:
        return "%s[%s] %s" % (self.field, ", ".join(self.variables), self.order)


def _from_dict(ring: RingDescriptor, acc: dict) -> "Polynomial":
    items = [(m, c) for m, c in acc.items() if c != 0]
    items.sort(key=lambda t: ring.key(t[0]), reverse=True)
    return Polynomial(ring, tuple(items))


class Polynomial:
    """A sparse polynomial over a RingDescriptor.

    ``terms`` is a tuple of (monomial, coefficient) pairs sorted strictly
    decreasing in the ring's term order with no zero coefficients, so
    ``terms[0]`` is the leading term.  Instances are immutable by
    convention; all arithmetic returns fresh objects.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingDescriptor, terms: Tuple[Tuple[Monomial, Coeff], ...]):
        self.ring = ring
        self.terms = terms

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def leading_term(self) -> Tuple[Monomial, Coeff]:
        if not self.terms:
            raise ZeroLeadingTermError("the zero polynomial has no leading term")
        return self.terms[0]

    def leading_monomial(self) -> Monomial:
        return self.leading_term()[0]

    def leading_coefficient(self) -> Coeff:
        return self.leading_term()[1]

    def total_degree(self) -> int:
        if not self.terms:
            raise ZeroLeadingTermError("the zero polynomial has no degree")
        return max(monomial_degree(m) for m, _ in self.terms)

    @property
    def is_monomial(self) -> bool:
        """Exactly one term (any coefficient)."""
        return len(self.terms) == 1

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        degs = {monomial_degree(m) for m, _ in self.terms}
        return len(degs) == 1

    def support(self) -> frozenset:
        out = set()
        for m, _ in self.terms:
            out |= monomial_support(m)
        return frozenset(out)

    def monic(self) -> "Polynomial":
        if not self.terms:
            raise ZeroLeadingTermError("cannot normalize the zero polynomial")
        lc = self.terms[0][1]
        if lc == self.ring.field.one:
            return self
        inv = self.ring.field.invert(lc)
        f = self.ring.field
        return Polynomial(self.ring, tuple((m, f.mul(inv, c)) for m, c in self.terms))

    def _check_ring(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise IncompatibleRingError(
                "operands live in different rings: %s vs %s" % (self.ring, other.ring)
            )

    def __add__(self, other: Union["Polynomial", int, Fraction]) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_ring(other)
        f = self.ring.field
        acc = dict(self.terms)
        for m, c in other.terms:
            if m in acc:
                s = f.add(acc[m], c)
                if s == 0:
                    del acc[m]
                else:
                    acc[m] = s
            else:
                acc[m] = c
        return _from_dict(self.ring, acc)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        f = self.ring.field
        return Polynomial(self.ring, tuple((m, f.neg(c)) for m, c in self.terms))

    def __sub__(self, other: Union["Polynomial", int, Fraction]) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.__add__(other.__neg__())

    def __rsub__(self, other: Union[int, Fraction]) -> "Polynomial":
        return self.ring.constant(other).__sub__(self)

    def __mul__(self, other: Union["Polynomial", int, Fraction]) -> "Polynomial":
        f = self.ring.field
        if isinstance(other, (int, Fraction)):
            c = f.coerce(other)
            if c == 0:
                return self.ring.zero()
            return Polynomial(self.ring, tuple((m, f.mul(c, cf)) for m, cf in self.terms))
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_ring(other)
        acc: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = monomial_mul(m1, m2)
                c = f.mul(c1, c2)
                if m in acc:
                    c = f.add(acc[m], c)
                acc[m] = c
        return _from_dict(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def shift(self, mono: Monomial, coeff: Coeff) -> "Polynomial":
        """Multiply by a single term without dict churn; keeps sortedness.

        Multiplying every monomial by the same factor preserves the relative
        order for any monomial order compatible with multiplication.
        """
        f = self.ring.field
        return Polynomial(
            self.ring,
            tuple((monomial_mul(mono, m), f.mul(coeff, c)) for m, c in self.terms),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                return self == self.ring.constant(other)
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, self.terms))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _term_str(self, mono: Monomial, coeff: Coeff) -> Tuple[bool, str]:
        """Render one term; returns (negative?, unsigned text)."""
        negative = coeff < 0
        mag = -coeff if negative else coeff
        factors = []
        for name, e in zip(self.ring.variables, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append("%s^%d" % (name, e))
        if not factors:
            return negative, str(mag)
        body = "*".join(factors)
        if mag == 1:
            return negative, body
        return negative, "%s*%s" % (mag, body)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for i, (m, c) in enumerate(self.terms):
            neg, text = self._term_str(m, c)
            if i == 0:
                pieces.append("-" + text if neg else text)
            else:
                pieces.append((" - " if neg else " + ") + text)
        return "".join(pieces)

    def __repr__(self) -> str:
        return "Polynomial(%s)" % self

    def __iter__(self) -> Iterator[Tuple[Monomial, Coeff]]:
        return iter(self.terms)


def remap_variables(
    poly: Polynomial, target: RingDescriptor, position: Sequence[Optional[int]]
) -> Polynomial:
    """Transport ``poly`` into ``target``, sending source variable i to
    ``position[i]`` (None means the variable must not occur).

    Used for ring extensions and elimination scaffolding; coefficients are
    re-coerced so the target may not change characteristic.
    """
    if poly.ring.field != target.field:
        raise IncompatibleRingError("cannot remap across different coefficient fields")
    acc: dict = {}
    for mono, c in poly.terms:
        exps = [0] * target.nvars
        for i, e in enumerate(mono):
            if e == 0:
                continue
            j = position[i]
            if j is None:
                raise IncompatibleRingError(
                    "variable %r occurs but has no image in the target ring"
                    % (poly.ring.variables[i],)
                )
            exps[j] = e
        acc[tuple(exps)] = c
    return _from_dict(target, acc)


def into_ring(poly: Polynomial, target: RingDescriptor) -> Polynomial:
    """Reinterpret ``poly`` in a ring with the same variable names (matched
    by name, any positions/order)."""
    position = []
    tnames = {name: j for j, name in enumerate(target.variables)}
    for name in poly.ring.variables:
        position.append(tnames.get(name))
    return remap_variables(poly, target, position)


def all_monomials_up_to(nvars: int, max_degree: int) -> Iterable[Monomial]:
    """All exponent vectors with total degree at most ``max_degree``."""
    for degree in range(max_degree + 1):
        for bars in itertools.combinations(range(degree + nvars - 1), nvars - 1):
            exps = []
            prev = -1
            for b in bars:
                exps.append(b - prev - 1)
                prev = b
            exps.append(degree + nvars - 1 - prev - 1)
            yield tuple(exps)
