"""Buchberger's algorithm for submodules of graded free modules.

Internally a module vector is a dict ``{(component, exponents): coeff}``.
Submodules of A^m with A = S/I are handled over S by adjoining ``r * e_k``
for every relation r of I and every component k.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from itertools import count

from .errors import RingMismatch, ResourceLimitExceeded
from .polyring import Polynomial, QuotientRing, RingSpec, as_quotient


@dataclass
class Limits:
    max_steps: int = 10**6


LIMITS = Limits()


class ModuleOrder:
    """Term-over-position order on S^m refined by the ring order.

    Terms compare by (block, degree + generator degree, ring order, -component)
    for degree-compatible ring orders and by (block, exponents, -component)
    under lex.  With ``elim`` set, components ``< elim`` form a block that
    dominates every other term (used to read syzygies off an augmented GB).
    """

    def __init__(self, ring: RingSpec, degrees, elim=None):
        self.ring = ring
        self.degrees = tuple(degrees)
        self.elim = elim
        self._key = {}
        self._neg = {}
        ring_key = ring.key
        w = ring.weights
        graded = ring.order.degree_compatible
        degs = self.degrees

        def key(t):
            c, e = t
            k = ring_key(e)
            if graded:
                k = (k[0] + degs[c],) + k[1:]
            k = k + (-c,)
            if elim is not None:
                k = (1 if c < elim else 0,) + k
            return k

        self._raw_key = key
        self._w = w

    def key(self, t):
        k = self._key.get(t)
        if k is None:
            k = self._key[t] = self._raw_key(t)
        return k

    def negkey(self, t):
        k = self._neg.get(t)
        if k is None:
            k = self._neg[t] = tuple(-a for a in self.key(t))
        return k

    def degree(self, t) -> int:
        c, e = t
        return sum(a * b for a, b in zip(self._w, e)) + self.degrees[c]

    def lead(self, vec: dict):
        return max(vec, key=self.key)


class _Elem:
    __slots__ = ("vec", "lead", "lc", "sugar")

    def __init__(self, vec, lead, lc, sugar):
        self.vec = vec
        self.lead = lead
        self.lc = lc
        self.sugar = sugar


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def vec_degree(vec: dict, order: ModuleOrder) -> int:
    return max(order.degree(t) for t in vec)


def is_homogeneous_vec(vec: dict, order: ModuleOrder) -> bool:
    return len({order.degree(t) for t in vec}) <= 1


class Engine:
    """Incremental Buchberger run over a fixed :class:`ModuleOrder`.

    Generators and S-pairs share one queue ordered by sugar degree with a
    FIFO tie-break.  ``run(upto=d)`` stops before any item of sugar > d, which
    for homogeneous input yields a Groebner basis truncated at degree d.
    """

    def __init__(self, ring: RingSpec, order: ModuleOrder, *, ideal_case=False, limits=None):
        self.ring = ring
        self.F = ring.field
        self.order = order
        self.ideal_case = ideal_case
        self.limits = limits or LIMITS
        self.elems = []
        self.by_comp = {}
        self.queue = []
        self.pending = set()
        self.serial = count()
        self.steps = 0

    # -- bookkeeping ---------------------------------------------------------------

    def _tick(self):
        self.steps += 1
        if self.steps > self.limits.max_steps:
            raise ResourceLimitExceeded(f"more than {self.limits.max_steps} reduction steps")

    def add(self, vec: dict, sugar=None):
        if not vec:
            return
        if sugar is None:
            sugar = vec_degree(vec, self.order)
        heapq.heappush(self.queue, (sugar, next(self.serial), None, vec))

    def _insert(self, vec: dict, sugar):
        F = self.F
        lead = self.order.lead(vec)
        inv = F.inv(vec[lead])
        if vec[lead] != F.one():
            vec = {t: F.mul(c, inv) for t, c in vec.items()}
        n = len(self.elems)
        elem = _Elem(vec, lead, F.one(), sugar)
        self.elems.append(elem)
        comp, exp = lead
        w = self.ring.weights
        for i in self.by_comp.get(comp, ()):
            other = self.elems[i]
            oexp = other.lead[1]
            lcm = tuple(a if a > b else b for a, b in zip(exp, oexp))
            if self.ideal_case and all(not (a and b) for a, b in zip(exp, oexp)):
                continue
            s = max(
                other.sugar + sum(x * (a - b) for x, a, b in zip(w, lcm, oexp)),
                sugar + sum(x * (a - b) for x, a, b in zip(w, lcm, exp)),
            )
            self.pending.add((i, n))
            heapq.heappush(self.queue, (s, next(self.serial), (i, n), lcm))
        self.by_comp.setdefault(comp, []).append(n)
        return n

    def _chain_skip(self, i, j, lcm) -> bool:
        comp = self.elems[i].lead[0]
        for k in self.by_comp.get(comp, ()):
            if k == i or k == j:
                continue
            if not _divides(self.elems[k].lead[1], lcm):
                continue
            a = (i, k) if i < k else (k, i)
            b = (j, k) if j < k else (k, j)
            if a not in self.pending and b not in self.pending:
                return True
        return False

    def _spoly(self, i, j, lcm) -> dict:
        F = self.F
        gi, gj = self.elems[i], self.elems[j]
        mi = tuple(a - b for a, b in zip(lcm, gi.lead[1]))
        mj = tuple(a - b for a, b in zip(lcm, gj.lead[1]))
        out = {}
        for (c, e), v in gi.vec.items():
            out[(c, tuple(a + b for a, b in zip(e, mi)))] = v
        minus = F.neg(F.one())
        for (c, e), v in gj.vec.items():
            t = (c, tuple(a + b for a, b in zip(e, mj)))
            val = F.add(out[t], F.mul(v, minus)) if t in out else F.mul(v, minus)
            if val:
                out[t] = val
            else:
                out.pop(t, None)
        return out

    # -- reduction -------------------------------------------------------------------

    def find_reducer(self, t):
        comp, exp = t
        for i in self.by_comp.get(comp, ()):
            g = self.elems[i]
            if _divides(g.lead[1], exp):
                return g
        return None

    def reduce(self, vec: dict, full=True) -> dict:
        return reduce_vector(vec, self.find_reducer, self.order, self.F, full, self._tick)

    def run(self, upto=None):
        while self.queue and (upto is None or self.queue[0][0] <= upto):
            sugar, _, pair, payload = heapq.heappop(self.queue)
            if pair is None:
                vec = payload
            else:
                self.pending.discard(pair)
                if self._chain_skip(pair[0], pair[1], payload):
                    continue
                vec = self._spoly(pair[0], pair[1], payload)
            h = self.reduce(vec)
            if h:
                self._insert(h, sugar)
        return self

    # -- output ----------------------------------------------------------------------

    def minimal_elems(self) -> list:
        """Elements whose leading terms form a minimal generating set."""
        keep = []
        for idx, g in enumerate(self.elems):
            comp, exp = g.lead
            redundant = False
            for jdx in self.by_comp.get(comp, ()):
                if jdx == idx:
                    continue
                h = self.elems[jdx]
                if _divides(h.lead[1], exp) and (h.lead[1] != exp or jdx < idx):
                    redundant = True
                    break
            if not redundant:
                keep.append(g)
        return keep

    def reduced_basis(self) -> list:
        """Reduced Groebner basis as monic dicts sorted by leading term."""
        mins = self.minimal_elems()
        by_comp = {}
        for g in mins:
            by_comp.setdefault(g.lead[0], []).append(g)

        def finder(t):
            for g in by_comp.get(t[0], ()):
                if _divides(g.lead[1], t[1]):
                    return g
            return None

        out = []
        F = self.F
        for g in mins:
            lead_c = g.vec[g.lead]
            tail = {t: c for t, c in g.vec.items() if t != g.lead}
            tail = reduce_vector(tail, finder, self.order, F, True, self._tick)
            tail[g.lead] = lead_c
            out.append(tail)
        out.sort(key=lambda v: self.order.key(self.order.lead(v)))
        return out


def reduce_vector(vec, find_reducer, order: ModuleOrder, F, full=True, tick=None) -> dict:
    """Normal form of ``vec``: no remaining term is divisible by a leading term.

    Terms are processed from the top through a heap; each term is visited at
    most once because reductions only create smaller terms.
    """
    p = dict(vec)
    negkey = order.negkey
    heap = [(negkey(t), t) for t in p]
    heapq.heapify(heap)
    queued = set(p)
    out = {}
    while heap:
        _, t = heapq.heappop(heap)
        c = p.pop(t, None)
        if c is None:
            continue
        g = find_reducer(t)
        if g is None:
            out[t] = c
            if not full:
                out.update(p)
                return out
            continue
        if tick is not None:
            tick()
        factor = F.neg(F.div(c, g.lc))
        mono = tuple(a - b for a, b in zip(t[1], g.lead[1]))
        glead = g.lead
        for (gc, ge), gv in g.vec.items():
            if (gc, ge) == glead:
                continue
            nt = (gc, tuple(a + b for a, b in zip(ge, mono)))
            val = F.mul(factor, gv)
            old = p.get(nt)
            if old is None:
                p[nt] = val
                if nt not in queued:
                    queued.add(nt)
                    heapq.heappush(heap, (negkey(nt), nt))
            else:
                s = F.add(old, val)
                if s:
                    p[nt] = s
                else:
                    del p[nt]
    return out


# -- conversions -----------------------------------------------------------------------


def poly_to_vec(f: dict, comp=0) -> dict:
    return {(comp, e): c for e, c in f.items()}


def vec_to_poly(v: dict) -> dict:
    return {e: c for (_, e), c in v.items()}


def relation_vectors(Q: QuotientRing, components) -> list:
    rels = Q.relation_dicts
    return [poly_to_vec(r, k) for k in components for r in rels]


def columns_to_vectors(columns) -> list:
    """List of columns (each a list of raw poly dicts) to module vectors."""
    out = []
    for col in columns:
        v = {}
        for k, f in enumerate(col):
            for e, c in f.items():
                v[(k, e)] = c
        out.append(v)
    return out


def vector_to_column(v: dict, rank: int) -> list:
    col = [dict() for _ in range(rank)]
    for (k, e), c in v.items():
        col[k][e] = c
    return col


# -- ideal level helpers ----------------------------------------------------------------


def ideal_basis(gens, ring: RingSpec, limits=None) -> list:
    """Reduced Groebner basis (raw dicts) of the ideal generated by ``gens``."""
    order = ModuleOrder(ring, (0,))
    eng = Engine(ring, order, ideal_case=True, limits=limits)
    for g in gens:
        eng.add(poly_to_vec(g))
    eng.run()
    return [vec_to_poly(v) for v in eng.reduced_basis()]


def reduce_poly(f: dict, gb, ring: RingSpec) -> dict:
    order = ModuleOrder(ring, (0,))
    elems = []
    for g in gb:
        v = poly_to_vec(g)
        lead = order.lead(v)
        elems.append(_Elem(v, lead, v[lead], 0))

    def finder(t):
        for g in elems:
            if _divides(g.lead[1], t[1]):
                return g
        return None

    return vec_to_poly(reduce_vector(poly_to_vec(f), finder, order, ring.field))


# -- module level --------------------------------------------------------------------------


def submodule_basis(vectors, Q: QuotientRing, degrees, limits=None) -> list:
    """Reduced GB (dicts over S) of span(vectors) + I*S^m inside S^m."""
    Q = as_quotient(Q)
    order = ModuleOrder(Q.base, degrees)
    eng = Engine(Q.base, order, ideal_case=len(degrees) == 1, limits=limits)
    for v in vectors:
        eng.add(v)
    for v in relation_vectors(Q, range(len(degrees))):
        eng.add(v)
    eng.run()
    return eng.reduced_basis()


def syzygy_vectors(vectors, Q: QuotientRing, degrees, source_degrees, limits=None) -> list:
    """Generators of {a in A^r : sum a_j v_j = 0 in A^m}, as dicts over S.

    Computed from a GB of the vectors (v_j | e_j) in S^(m+r) under an order
    eliminating the first m components; relation multiples that vanish in
    A^r are dropped.
    """
    Q = as_quotient(Q)
    m = len(degrees)
    r = len(vectors)
    aug_degrees = tuple(degrees) + tuple(source_degrees)
    order = ModuleOrder(Q.base, aug_degrees, elim=m)
    eng = Engine(Q.base, order, limits=limits)
    zero = (0,) * Q.nvars
    one = Q.field.one()
    for j, v in enumerate(vectors):
        aug = dict(v)
        aug[(m + j, zero)] = one
        eng.add(aug)
    for v in relation_vectors(Q, range(m + r)):
        eng.add(v)
    eng.run()
    out = []
    for v in eng.reduced_basis():
        lead = order.lead(v)
        if lead[0] < m:
            continue
        syz = {(c - m, e): val for (c, e), val in v.items()}
        if Q.relations and _in_relations(syz, Q):
            continue
        out.append(syz)
    return out


def _in_relations(v: dict, Q: QuotientRing) -> bool:
    comps = {}
    for (c, e), val in v.items():
        comps.setdefault(c, {})[e] = val
    return all(not Q.reduce_raw(f) for f in comps.values())


def reduce_vec_mod_relations(v: dict, Q: QuotientRing) -> dict:
    if not Q.relations:
        return dict(v)
    comps = {}
    for (c, e), val in v.items():
        comps.setdefault(c, {})[e] = val
    out = {}
    for c, f in comps.items():
        for e, val in Q.reduce_raw(f).items():
            out[(c, e)] = val
    return out


def minimal_generator_indices(vectors, Q: QuotientRing, degrees, vec_degrees=None, limits=None) -> list:
    """Indices of a minimal generating subset of homogeneous ``vectors`` modulo I.

    Greedy in degree order: a candidate is kept iff it is not in the span of
    the kept ones (plus the relations), tested against a GB truncated at the
    candidate's degree.
    """
    Q = as_quotient(Q)
    order = ModuleOrder(Q.base, degrees)
    eng = Engine(Q.base, order, ideal_case=len(degrees) == 1, limits=limits)
    for v in relation_vectors(Q, range(len(degrees))):
        eng.add(v)
    if vec_degrees is None:
        vec_degrees = [vec_degree(v, order) if v else 0 for v in vectors]
    cands = sorted(range(len(vectors)), key=lambda j: (vec_degrees[j], j))
    kept = []
    for j in cands:
        v = vectors[j]
        if not v:
            continue
        d = vec_degrees[j]
        eng.run(upto=d)
        if eng.reduce(v):
            kept.append(j)
            eng.add(v, d)
    return kept


# -- public wrappers ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModuleVector:
    components: tuple
    shifts: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "shifts", tuple(self.shifts) or (0,) * len(self.components))
        if len(self.shifts) != len(self.components):
            raise ValueError("one shift per component")
        rings = {p.ring for p in self.components}
        if len(rings) > 1:
            raise RingMismatch("components live in different rings")

    @property
    def ring(self) -> RingSpec:
        return self.components[0].ring

    @property
    def rank(self) -> int:
        return len(self.components)

    def to_dict(self) -> dict:
        return columns_to_vectors([[p.raw for p in self.components]])[0]

    @classmethod
    def from_dict(cls, v: dict, ring: RingSpec, shifts) -> ModuleVector:
        col = vector_to_column(v, len(shifts))
        return cls(tuple(Polynomial(ring, f) for f in col), tuple(shifts))

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.components)

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.components) + ")"


def _common(generators, ring):
    Q = as_quotient(ring)
    for g in generators:
        if g.ring != Q.base:
            raise RingMismatch(f"{g.ring} vs {Q.base}")
    return Q


@dataclass
class GroebnerBasis:
    generators: list
    ring: QuotientRing
    shifts: tuple
    reduced: bool = True
    _order: ModuleOrder = dc_field(default=None, repr=False)
    _elems: list = dc_field(default=None, repr=False)

    @property
    def order(self) -> ModuleOrder:
        if self._order is None:
            self._order = ModuleOrder(self.ring.base, self.shifts)
        return self._order

    def _finder(self):
        if self._elems is None:
            elems = []
            for g in self.generators:
                v = g.to_dict()
                lead = self.order.lead(v)
                elems.append(_Elem(v, lead, v[lead], 0))
            self._elems = elems
        elems = self._elems

        def finder(t):
            for g in elems:
                if g.lead[0] == t[0] and _divides(g.lead[1], t[1]):
                    return g
            return None

        return finder

    def leading_terms(self) -> list:
        return [self.order.lead(g.to_dict()) for g in self.generators]

    def normal_form(self, v: ModuleVector) -> ModuleVector:
        d = reduce_vector(v.to_dict(), self._finder(), self.order, self.ring.field)
        return ModuleVector.from_dict(d, self.ring.base, self.shifts)

    def contains(self, v: ModuleVector) -> bool:
        return self.normal_form(v).is_zero()

    def __len__(self):
        return len(self.generators)


def buchberger(generators, ring, limits=None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule spanned by ``generators``.

    Over a quotient ring the relations are adjoined per component, so the
    result is a basis of span + I*S^m over the base polynomial ring.
    """
    generators = list(generators)
    Q = _common(generators, ring)
    if not generators:
        raise ValueError("need at least one generator to fix the ambient module")
    shifts = generators[0].shifts
    if any(g.shifts != shifts for g in generators):
        raise ValueError("generators live in different free modules")
    basis = submodule_basis([g.to_dict() for g in generators if not g.is_zero()], Q, shifts, limits)
    gens = [ModuleVector.from_dict(v, Q.base, shifts) for v in basis]
    return GroebnerBasis(gens, Q, shifts, True)


def normal_form(v: ModuleVector, G: GroebnerBasis) -> ModuleVector:
    return G.normal_form(v)


def syzygies(vectors, ring, limits=None) -> list:
    """Kernel generators of e_j -> vectors[j], as ModuleVectors of rank len(vectors)."""
    vectors = list(vectors)
    Q = _common(vectors, ring)
    if not vectors:
        return []
    shifts = vectors[0].shifts
    order = ModuleOrder(Q.base, shifts)
    src = []
    for v in vectors:
        d = v.to_dict()
        src.append(vec_degree(d, order) if d else 0)
    syz = syzygy_vectors([v.to_dict() for v in vectors], Q, shifts, src, limits)
    return [ModuleVector.from_dict(s, Q.base, src) for s in syz]


def s_vector(a: dict, b: dict, order: ModuleOrder, F):
    """S-vector of two module vectors, or None when leading components differ."""
    la, lb = order.lead(a), order.lead(b)
    if la[0] != lb[0]:
        return None
    lcm = tuple(max(x, y) for x, y in zip(la[1], lb[1]))
    ma = tuple(x - y for x, y in zip(lcm, la[1]))
    mb = tuple(x - y for x, y in zip(lcm, lb[1]))
    out = {}
    ca, cb = F.inv(a[la]), F.neg(F.inv(b[lb]))
    for (c, e), v in a.items():
        out[(c, tuple(x + y for x, y in zip(e, ma)))] = F.mul(v, ca)
    for (c, e), v in b.items():
        t = (c, tuple(x + y for x, y in zip(e, mb)))
        val = F.add(out.get(t, F.zero()), F.mul(v, cb))
        if val:
            out[t] = val
        else:
            out.pop(t, None)
    return out
