"""Multivariate polynomials over exact fields.

Monomials are exponent tuples; a polynomial is a dict ``{exponents: coeff}``
with raw field values and no zero coefficients.  Monomial orders are realised
as sort keys: a flat integer tuple per monomial, larger tuple = larger
monomial, so keys can be negated for heap-based reduction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .errors import ArityMismatch, ParseError, RingMismatch
from .exactnum import QQ, FieldElement, FieldSpec

ORDER_KINDS = ("grevlex", "lex", "weighted_grevlex")


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}")

    @property
    def degree_compatible(self) -> bool:
        return self.kind != "lex"

    def __str__(self):
        return self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


@lru_cache(maxsize=None)
def order_key(order: MonomialOrder, weights: tuple):
    """Return ``key(exp) -> tuple`` realising ``order``.

    grevlex compares weighted degree first, then the reversed exponent vector
    negated (the last variable is the cheapest).
    """
    if order.kind == "lex":
        return lambda e: e
    if all(w == 1 for w in weights):
        return lambda e: (sum(e),) + tuple(-a for a in reversed(e))
    return lambda e: (sum(w * a for w, a in zip(weights, e)),) + tuple(-a for a in reversed(e))


@dataclass(frozen=True)
class Monomial:
    exponents: tuple
    degree: int

    @classmethod
    def of(cls, exponents, weights=None):
        exponents = tuple(exponents)
        weights = weights or (1,) * len(exponents)
        return cls(exponents, sum(w * a for w, a in zip(weights, exponents)))


def compare(u, v, order: MonomialOrder = GREVLEX, weights=None) -> int:
    """Three-way comparison of two monomials: 1 if u > v, -1 if u < v, 0 if equal."""
    u = u.exponents if isinstance(u, Monomial) else tuple(u)
    v = v.exponents if isinstance(v, Monomial) else tuple(v)
    if len(u) != len(v):
        raise ArityMismatch(f"monomials with {len(u)} and {len(v)} variables")
    key = order_key(order, tuple(weights) if weights else (1,) * len(u))
    ku, kv = key(u), key(v)
    return (ku > kv) - (ku < kv)


@dataclass(frozen=True)
class RingSpec:
    field: FieldSpec
    variables: tuple
    order: MonomialOrder = GREVLEX
    weights: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise ValueError("a ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be unique")
        w = tuple(self.weights) or (1,) * len(self.variables)
        if len(w) != len(self.variables) or any(int(a) < 1 for a in w):
            raise ValueError("weights must be positive, one per variable")
        object.__setattr__(self, "weights", tuple(int(a) for a in w))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def key(self):
        return order_key(self.order, self.weights)

    def degree(self, exp) -> int:
        return sum(w * a for w, a in zip(self.weights, exp))

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        c = self.field.coerce(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> Polynomial:
        i = self.variables.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one()})

    def gens(self) -> list:
        return [self.var(v) for v in self.variables]

    def monomial(self, exp, coeff=1) -> Polynomial:
        c = self.field.coerce(coeff)
        return Polynomial(self, {tuple(exp): c} if c else {})

    def parse(self, text: str) -> Polynomial:
        return Polynomial(self, parse_poly(text, self))

    def with_field(self, field: FieldSpec) -> RingSpec:
        return RingSpec(field, self.variables, self.order, self.weights)

    def with_order(self, order: MonomialOrder) -> RingSpec:
        return RingSpec(self.field, self.variables, order, self.weights)

    def __str__(self):
        return f"{self.field}[{','.join(self.variables)}] {self.order}"


def polynomial_ring(variables, field: FieldSpec = QQ, order="grevlex", weights=()) -> RingSpec:
    if isinstance(variables, str):
        variables = [v.strip() for v in variables.split(",") if v.strip()]
    if isinstance(order, str):
        order = MonomialOrder(order)
    return RingSpec(field, tuple(variables), order, tuple(weights))


# -- raw dict arithmetic -------------------------------------------------------


def padd(F: FieldSpec, a: dict, b: dict, scale=None) -> dict:
    """a + scale*b on raw dicts."""
    out = dict(a)
    for e, c in b.items():
        if scale is not None:
            c = F.mul(c, scale)
        v = F.add(out.get(e, 0), c) if e in out else c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def pmul(F: FieldSpec, a: dict, b: dict) -> dict:
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = F.add(out[e], F.mul(c1, c2)) if e in out else F.mul(c1, c2)
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def pmul_term(F: FieldSpec, a: dict, mono: tuple, coeff) -> dict:
    if not coeff:
        return {}
    return {tuple(x + y for x, y in zip(e, mono)): F.mul(c, coeff) for e, c in a.items()}


def pscale(F: FieldSpec, a: dict, c) -> dict:
    if not c:
        return {}
    return {e: F.mul(v, c) for e, v in a.items()}


class Polynomial:
    """Immutable polynomial bound to a :class:`RingSpec`."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingSpec, terms: dict):
        self.ring = ring
        self._terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    @property
    def raw(self) -> dict:
        return self._terms

    def terms(self) -> list:
        """(Monomial, FieldElement) pairs, strictly descending in the ring order."""
        key = self.ring.key
        F = self.ring.field
        return [(Monomial.of(e, self.ring.weights), FieldElement(F, self._terms[e]))
                for e in sorted(self._terms, key=key, reverse=True)]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def _coerce(self, other) -> dict:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            return other._terms
        return self.ring.constant(other)._terms

    def __add__(self, other):
        return Polynomial(self.ring, padd(self.ring.field, self._terms, self._coerce(other)))

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        F = self.ring.field
        return Polynomial(self.ring, padd(F, self._terms, self._coerce(other), F.neg(F.one())))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return Polynomial(self.ring, pmul(self.ring.field, self._terms, self._coerce(other)))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        try:
            return self._terms == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def leading_exponent(self):
        if not self._terms:
            return None
        return max(self._terms, key=self.ring.key)

    def leading_coefficient(self):
        e = self.leading_exponent()
        return None if e is None else FieldElement(self.ring.field, self._terms[e])

    def degree(self) -> int:
        """Maximal weighted degree; -1 for zero."""
        if not self._terms:
            return -1
        return max(self.ring.degree(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({self.ring.degree(e) for e in self._terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def coefficient(self, exp):
        return FieldElement(self.ring.field, self._terms.get(tuple(exp), self.ring.field.zero()))

    def __str__(self):
        return format_poly(self._terms, self.ring)

    def __repr__(self):
        return f"Polynomial({self})"


def format_poly(terms: dict, ring: RingSpec) -> str:
    if not terms:
        return "0"
    out = []
    for e in sorted(terms, key=ring.key, reverse=True):
        c = terms[e]
        neg = ring.field.is_rational and c < 0
        mag = -c if neg else c
        factors = []
        for name, a in zip(ring.variables, e):
            if a == 1:
                factors.append(name)
            elif a > 1:
                factors.append(f"{name}^{a}")
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# -- parsing ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} in polynomial", 1, pos + 1)
        num, name, op = m.groups()
        col = m.start(m.lastindex) + 1
        if num is not None:
            tokens.append(("num", int(num), col))
        elif name is not None:
            tokens.append(("name", name, col))
        else:
            tokens.append(("op", "^" if op == "**" else op, col))
        pos = m.end()
    tokens.append(("end", None, len(text) + 1))
    return tokens


def parse_poly(text: str, ring: RingSpec) -> dict:
    """Parse ``3*x^2*y - 1/2*z`` into a raw dict over ``ring``.

    Grammar: sums of products of atoms; atoms are integers, variables or
    parenthesised expressions, optionally raised to a nonnegative integer.
    A factor may carry a leading sign, as in ``x + -2*y``.
    A ``/`` is only allowed with an integer divisor.
    """
    tokens = _tokenize(text)
    F = ring.field
    pos = 0

    def peek():
        return tokens[pos]

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def fail(msg, tok):
        raise ParseError(msg, 1, tok[2])

    def expr():
        sign = 1
        if peek()[0] == "op" and peek()[1] in "+-":
            sign = -1 if take()[1] == "-" else 1
        acc = term()
        if sign < 0:
            acc = pscale(F, acc, F.neg(F.one()))
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            rhs = term()
            acc = padd(F, acc, rhs, None if op == "+" else F.neg(F.one()))
        return acc

    def term():
        acc = power()
        while peek()[0] == "op" and peek()[1] in "*/":
            op = take()[1]
            if op == "*":
                acc = pmul(F, acc, power())
            else:
                tok = take()
                if tok[0] != "num":
                    fail("division only by integer literals", tok)
                acc = pscale(F, acc, F.canonical(1, tok[1]))
        return acc

    def power():
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            tok = take()
            if tok[0] != "num":
                fail("exponent must be a nonnegative integer", tok)
            result = {(0,) * ring.nvars: F.one()}
            for _ in range(tok[1]):
                result = pmul(F, result, base)
            return result
        return base

    def atom():
        tok = take()
        if tok[0] == "op" and tok[1] in "+-":
            inner = power()
            return inner if tok[1] == "+" else pscale(F, inner, F.neg(F.one()))
        if tok[0] == "num":
            c = F.coerce(tok[1])
            return {(0,) * ring.nvars: c} if c else {}
        if tok[0] == "name":
            if tok[1] not in ring.variables:
                fail(f"unknown variable {tok[1]!r}", tok)
            return dict(ring.var(tok[1]).raw)
        if tok[0] == "op" and tok[1] == "(":
            inner = expr()
            close = take()
            if close[1] != ")":
                fail("expected ')'", close)
            return inner
        fail(f"unexpected token {tok[1]!r}", tok)

    if peek()[0] == "end":
        fail("empty polynomial", peek())
    result = expr()
    if peek()[0] != "end":
        fail(f"unexpected token {peek()[1]!r}", peek())
    return result


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


# -- quotient rings ---------------------------------------------------------------


@dataclass(frozen=True)
class QuotientRing:
    """S/I with I given by its reduced Groebner basis (possibly empty)."""

    base: RingSpec
    relations: tuple = ()
    homogeneous: bool = True
    _leads: tuple = dc_field(default=(), compare=False, repr=False)

    @property
    def field(self) -> FieldSpec:
        return self.base.field

    @property
    def nvars(self) -> int:
        return self.base.nvars

    @property
    def is_polynomial_ring(self) -> bool:
        return not self.relations

    @property
    def relation_dicts(self) -> list:
        return [r.raw for r in self.relations]

    def reduce(self, f) -> Polynomial:
        if isinstance(f, Polynomial):
            if f.ring != self.base:
                raise RingMismatch(f"{f.ring} vs {self.base}")
            return Polynomial(self.base, self.reduce_raw(f.raw))
        return Polynomial(self.base, self.reduce_raw(f))

    def reduce_raw(self, f: dict) -> dict:
        if not self.relations or not f:
            return dict(f)
        from .groebner import reduce_poly
        return reduce_poly(f, self.relation_dicts, self.base)

    def parse(self, text: str) -> Polynomial:
        return self.reduce(self.base.parse(text))

    def __str__(self):
        if not self.relations:
            return str(self.base)
        return f"{self.base} / ({', '.join(str(r) for r in self.relations)})"


def quotient_ring(base: RingSpec, relations=()) -> QuotientRing:
    """Build S/I; the relations are replaced by the reduced Groebner basis of I."""
    rels = []
    for r in relations:
        if isinstance(r, str):
            r = base.parse(r)
        if r.ring != base:
            raise RingMismatch(f"{r.ring} vs {base}")
        if r:
            rels.append(r)
    if not rels:
        return QuotientRing(base, (), True)
    from .groebner import ideal_basis
    gb = ideal_basis([r.raw for r in rels], base)
    polys = tuple(Polynomial(base, g) for g in gb)
    return QuotientRing(base, polys, all(p.is_homogeneous() for p in polys))


def reduce_mod(f: Polynomial, Q: QuotientRing) -> Polynomial:
    return Q.reduce(f)


def as_quotient(ring) -> QuotientRing:
    if isinstance(ring, QuotientRing):
        return ring
    return QuotientRing(ring, (), True)

