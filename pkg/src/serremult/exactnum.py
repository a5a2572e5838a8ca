"""Exact coefficient fields: the rationals and prime fields GF(p).

The engine works on raw values (``Fraction`` for QQ, ``int`` in [0, p) for
GF(p)) through the methods of :class:`FieldSpec`; :class:`FieldElement` is
the immutable public wrapper with operator overloads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import DivisionByZero, NonInvertibleDenominator

DEFAULT_PRIME = 32003


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "rationals" | "prime_field"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ValueError("QQ has characteristic 0")
        elif self.kind == "prime_field":
            p = self.characteristic
            if not (is_prime(p) and p < 2**31):
                raise ValueError(f"characteristic must be a prime < 2^31, got {p}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def is_rational(self) -> bool:
        return self.kind == "rationals"

    def __str__(self):
        return "QQ" if self.is_rational else f"GF({self.characteristic})"

    # raw-value arithmetic; hot loops in the Groebner engine call these

    def zero(self):
        return Fraction(0) if self.is_rational else 0

    def one(self):
        return Fraction(1) if self.is_rational else 1

    def coerce(self, value):
        """Map an int, Fraction or FieldElement to a raw value of this field."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("field mismatch")
            return value.value
        if self.is_rational:
            return Fraction(value)
        if isinstance(value, Fraction):
            return self.canonical(value.numerator, value.denominator)
        return int(value) % self.characteristic

    def canonical(self, numerator: int, denominator: int = 1):
        if denominator == 0:
            raise DivisionByZero("zero denominator")
        if self.is_rational:
            return Fraction(numerator, denominator)
        p = self.characteristic
        if denominator % p == 0:
            raise NonInvertibleDenominator(f"{denominator} is not invertible mod {p}")
        return numerator * pow(denominator, -1, p) % p

    def add(self, a, b):
        if self.is_rational:
            return a + b
        return (a + b) % self.characteristic

    def sub(self, a, b):
        if self.is_rational:
            return a - b
        return (a - b) % self.characteristic

    def mul(self, a, b):
        if self.is_rational:
            return a * b
        return a * b % self.characteristic

    def neg(self, a):
        if self.is_rational:
            return -a
        return -a % self.characteristic

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        if self.is_rational:
            return 1 / a
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def element(self, value) -> FieldElement:
        return FieldElement(self, self.coerce(value))

    def format(self, a) -> str:
        return str(a)


QQ = FieldSpec("rationals", 0)


def GF(p: int = DEFAULT_PRIME) -> FieldSpec:
    return FieldSpec("prime_field", p)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: object

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def inverse(self) -> FieldElement:
        return field_inverse(self)

    def is_zero(self) -> bool:
        return not self.value

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"{self.value} in {self.field}"


def field_inverse(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, a.field.inv(a.value))


def canonicalize(numerator: int, denominator: int, spec: FieldSpec) -> FieldElement:
    return FieldElement(spec, spec.canonical(numerator, denominator))


def rank_and_solve(field: FieldSpec, rows, rhs=None):
    """Row-reduce ``rows`` (list of lists of raw values) over ``field``.

    Returns ``(rank, solution)``.  With ``rhs`` given (one raw value per row)
    the solution is one vector x with rows @ x = rhs, or None if the system
    is inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + ([rhs[i]] if rhs is not None else []) for i, r in enumerate(rows)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = field.inv(aug[r][c])
        aug[r] = [field.mul(v, inv) for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == len(aug):
            break
    if rhs is None:
        return r, None
    if any(row[-1] for row in aug[r:]):
        return r, None
    sol = [field.zero()] * ncols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][-1]
    return r, sol
