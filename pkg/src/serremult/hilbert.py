"""Hilbert series of graded modules from their leading-term modules.

A series is kept as a Laurent numerator over the fixed denominator
prod_i (1 - t^{w_i}); numerators are dicts ``{degree: int}``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb


def lp_add(a: dict, b: dict, scale: int = 1, shift: int = 0) -> dict:
    out = dict(a)
    for d, c in b.items():
        d += shift
        v = out.get(d, 0) + scale * c
        if v:
            out[d] = v
        else:
            out.pop(d, None)
    return out


def lp_div_one_minus(a: dict, w: int = 1):
    """a / (1 - t^w) if the division is exact, else None."""
    if not a:
        return {}
    lo, hi = min(a), max(a)
    q = {}
    for d in range(lo, hi - w + 1):
        v = a.get(d, 0) + q.get(d - w, 0)
        if v:
            q[d] = v
    # the remainder must vanish: a = q - t^w q
    check = lp_add(q, q, -1, w)
    return q if check == {k: v for k, v in a.items() if v} else None


def ord_at_one(a: dict) -> int:
    """Multiplicity of t = 1 as a root of a nonzero Laurent polynomial."""
    k = 0
    while True:
        q = lp_div_one_minus(a)
        if q is None or not a:
            return k
        a = q
        k += 1


def _minimal(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _wdeg(e, weights):
    return sum(a * w for a, w in zip(e, weights))


def monomial_numerator(gens, weights, _cache=None) -> dict:
    """Numerator N with HS(S/I) = N / prod(1 - t^{w_i}) for the monomial ideal I.

    Pivots on a power of the most frequent variable:
    N(I) = N(I + p) + t^deg(p) N(I : p).
    """
    if _cache is None:
        _cache = {}
    gens = _minimal(gens)
    key = frozenset(gens)
    if key in _cache:
        return _cache[key]
    if not gens:
        result = {0: 1}
    elif _pairwise_coprime(gens):
        result = {0: 1}
        for g in gens:
            result = lp_add(result, result, -1, _wdeg(g, weights))
    else:
        n = len(weights)
        mixed = [g for g in gens if sum(1 for a in g if a) > 1]
        counts = [sum(1 for g in mixed if g[i]) for i in range(n)]
        i = max(range(n), key=lambda j: (counts[j], -j))
        exps = sorted(g[i] for g in mixed if g[i])
        e = exps[len(exps) // 2]
        p = tuple(e if j == i else 0 for j in range(n))
        plus = monomial_numerator(gens + [p], weights, _cache)
        colon = [tuple(max(0, a - b) for a, b in zip(g, p)) for g in gens]
        result = lp_add(plus, monomial_numerator(colon, weights, _cache), 1, _wdeg(p, weights))
    _cache[key] = result
    return result


def _pairwise_coprime(gens) -> bool:
    seen = set()
    for g in gens:
        supp = {i for i, a in enumerate(g) if a}
        if seen & supp:
            return False
        seen |= supp
    return True


class HilbertSeries:
    """HS(t) = numerator(t) / prod_i (1 - t^{w_i})."""

    def __init__(self, numerator: dict, weights):
        self.numerator = {d: c for d, c in numerator.items() if c}
        self.weights = tuple(weights)

    @classmethod
    def from_leading_terms(cls, leads, degrees, weights) -> HilbertSeries:
        """``leads``: iterable of (component, exponents) leading terms."""
        per = {k: [] for k in range(len(degrees))}
        for c, e in leads:
            per[c].append(e)
        cache = {}
        num = {}
        for k, gens in per.items():
            num = lp_add(num, monomial_numerator(gens, weights, cache), 1, degrees[k])
        return cls(num, weights)

    def __sub__(self, other):
        return HilbertSeries(lp_add(self.numerator, other.numerator, -1), self.weights)

    def __add__(self, other):
        return HilbertSeries(lp_add(self.numerator, other.numerator, 1), self.weights)

    def scale(self, k: int) -> HilbertSeries:
        return HilbertSeries({d: k * c for d, c in self.numerator.items()}, self.weights)

    def shift(self, s: int) -> HilbertSeries:
        return HilbertSeries({d + s: c for d, c in self.numerator.items()}, self.weights)

    def is_zero(self) -> bool:
        return not self.numerator

    def __eq__(self, other):
        return isinstance(other, HilbertSeries) and self.numerator == other.numerator \
            and self.weights == other.weights

    @property
    def nvars(self) -> int:
        return len(self.weights)

    def dimension(self) -> int:
        """Krull dimension: order of the pole at t = 1; -1 for the zero module."""
        if not self.numerator:
            return -1
        return self.nvars - ord_at_one(self.numerator)

    def as_polynomial(self):
        """The series as a Laurent polynomial when it has finite length, else None."""
        q = self.numerator
        for w in self.weights:
            q = lp_div_one_minus(q, w)
            if q is None:
                return None
        return q

    def length(self):
        q = self.as_polynomial()
        return None if q is None else sum(q.values())

    def coefficients(self, upto: int) -> dict:
        """Hilbert function values for every degree <= upto."""
        if not self.numerator:
            return {}
        lo = min(self.numerator)
        span = upto - lo
        if span < 0:
            return {}
        inv = [1] + [0] * span
        for w in self.weights:
            for d in range(w, span + 1):
                inv[d] += inv[d - w]
        out = {}
        for d in range(lo, upto + 1):
            out[d] = sum(c * inv[d - k] for k, c in self.numerator.items() if 0 <= d - k <= span)
        return out

    def coefficient(self, d: int) -> int:
        return self.coefficients(d).get(d, 0)

    def reduced(self):
        """(Q, D) with HS = Q(t) / (1 - t)^D and Q(1) != 0 (standard grading only)."""
        if any(w != 1 for w in self.weights):
            raise ValueError("reduced form needs the standard grading")
        if not self.numerator:
            return {}, 0
        q = self.numerator
        k = 0
        while k < self.nvars:
            nxt = lp_div_one_minus(q)
            if nxt is None:
                break
            q = nxt
            k += 1
        return q, self.nvars - k

    def hilbert_polynomial(self):
        """(coefficients ascending as Fractions, stabilization degree).

        HF(d) = sum_j q_j C(d - j + D - 1, D - 1) for d >= stabilization.
        """
        q, D = self.reduced()
        if not q:
            return [], 0
        stab = max(q) - D + 1
        if D == 0:
            return [], stab

        def value(d):
            return sum(c * comb(d - j + D - 1, D - 1) for j, c in q.items())

        points = [stab + max(q) + k for k in range(D)]
        return interpolate(points, [value(p) for p in points]), stab


def interpolate(xs, ys):
    """Coefficients (ascending, Fractions) of the polynomial through the points."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def eval_poly(coeffs, x):
    return sum(c * x**k for k, c in enumerate(coeffs))


def stabilized_polynomial(values, degree_bound: int, start: int = 0, limit: int = 60):
    """Fit a polynomial of degree <= degree_bound to n -> values(n) for large n.

    Scans windows start, start+1, ...: the window is accepted once
    degree_bound + 3 consecutive values agree with one polynomial and two
    further values confirm it.  Returns (coefficients ascending, window start).
    """
    cache = {}

    def val(n):
        if n not in cache:
            cache[n] = values(n)
        return cache[n]

    need = degree_bound + 1
    for s in range(start, start + limit):
        xs = list(range(s, s + need))
        coeffs = interpolate(xs, [val(x) for x in xs])
        checks = range(s + need, s + need + 4)
        if all(eval_poly(coeffs, x) == val(x) for x in checks):
            return coeffs, s
    raise ValueError(f"no stabilization within {limit} windows")
