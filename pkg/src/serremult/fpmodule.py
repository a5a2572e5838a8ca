"""Finitely presented graded modules over a quotient of a polynomial ring.

A module is the cokernel of a degree-0 map of graded free modules.  Free
modules are described by their generator degrees: ``FreeModule(A, (0, 1))``
is A (+) A(-1).  Maps store their columns as module vectors (dicts keyed by
``(component, exponents)``) already reduced modulo the ring relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import InfiniteLength, RingMismatch
from .groebner import (
    LIMITS, ModuleOrder, columns_to_vectors, minimal_generator_indices,
    reduce_vec_mod_relations, submodule_basis, syzygy_vectors, vec_degree,
    vector_to_column,
)
from .hilbert import HilbertSeries, eval_poly, stabilized_polynomial
from .polyring import Polynomial, QuotientRing, as_quotient


@dataclass(frozen=True)
class FreeModule:
    ring: QuotientRing
    degrees: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ring", as_quotient(self.ring))
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def shifted(self, s: int) -> FreeModule:
        return FreeModule(self.ring, tuple(d + s for d in self.degrees))

    def hilbert_series(self) -> HilbertSeries:
        return self.ring_series().__class__(
            _shifted_sum(self.ring_series().numerator, self.degrees), self.ring.base.weights)

    def ring_series(self) -> HilbertSeries:
        return ring_hilbert_series(self.ring)

    def __str__(self):
        return f"A^{self.rank}{list(self.degrees)}"


def _shifted_sum(num: dict, degrees) -> dict:
    out = {}
    for s in degrees:
        for d, c in num.items():
            out[d + s] = out.get(d + s, 0) + c
    return {d: c for d, c in out.items() if c}


_RING_SERIES = {}


def ring_hilbert_series(Q: QuotientRing) -> HilbertSeries:
    Q = as_quotient(Q)
    hs = _RING_SERIES.get(Q)
    if hs is None:
        leads = [(0, r.leading_exponent()) for r in Q.relations]
        hs = _RING_SERIES[Q] = HilbertSeries.from_leading_terms(leads, (0,), Q.base.weights)
    return hs


class ModuleMap:
    """Degree-0 map of free modules; ``columns[j]`` is the image of generator j."""

    def __init__(self, source: FreeModule, target: FreeModule, columns, check=True):
        if source.ring != target.ring:
            raise RingMismatch("source and target over different rings")
        self.source = source
        self.target = target
        Q = source.ring
        self.columns = [reduce_vec_mod_relations(c, Q) for c in columns]
        if len(self.columns) != source.rank:
            raise ValueError(f"{len(self.columns)} columns for a source of rank {source.rank}")
        if check:
            self._check_graded()

    @property
    def ring(self) -> QuotientRing:
        return self.source.ring

    def _check_graded(self):
        order = ModuleOrder(self.ring.base, self.target.degrees)
        for j, col in enumerate(self.columns):
            for t in col:
                if t[0] >= self.target.rank:
                    raise ValueError("column entry outside the target")
                if order.degree(t) != self.source.degrees[j]:
                    raise ValueError(f"column {j} is not homogeneous of degree {self.source.degrees[j]}")

    @classmethod
    def from_rows(cls, ring, rows, target_degrees=None, source_degrees=None) -> ModuleMap:
        """Build from a row-major matrix of Polynomials or strings.

        Missing degrees are inferred: the target defaults to all zeros and
        each source degree is read off the nonzero entries of its column.
        """
        Q = as_quotient(ring)
        R = Q.base
        rows = [[R.parse(e) if isinstance(e, str) else (e if isinstance(e, Polynomial) else R.constant(e))
                 for e in row] for row in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else len(source_degrees or ())
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        rows = [[Q.reduce(e) for e in row] for row in rows]
        tdeg = tuple(target_degrees) if target_degrees is not None else (0,) * nrows
        if source_degrees is None:
            source_degrees = infer_source_degrees(rows, tdeg)
        columns = columns_to_vectors([[rows[i][j].raw for i in range(nrows)] for j in range(ncols)])
        return cls(FreeModule(Q, source_degrees), FreeModule(Q, tdeg), columns)

    def entry(self, i: int, j: int) -> Polynomial:
        return Polynomial(self.ring.base, {e: c for (k, e), c in self.columns[j].items() if k == i})

    @property
    def matrix(self) -> list:
        return [[self.entry(i, j) for j in range(self.source.rank)] for i in range(self.target.rank)]

    def column_polys(self, j: int) -> list:
        return vector_to_column(self.columns[j], self.target.rank)

    def is_zero(self) -> bool:
        return not any(self.columns)

    def compose(self, other: ModuleMap) -> ModuleMap:
        """self o other."""
        if other.target.degrees != self.source.degrees:
            raise ValueError("maps do not compose")
        F = self.ring.field
        cols = []
        for col in other.columns:
            out = {}
            for (k, e), c in col.items():
                for (i, e2), c2 in self.columns[k].items():
                    t = (i, tuple(a + b for a, b in zip(e, e2)))
                    v = F.add(out.get(t, F.zero()), F.mul(c, c2))
                    if v:
                        out[t] = v
                    else:
                        out.pop(t, None)
            cols.append(out)
        return ModuleMap(other.source, self.target, cols, check=False)

    def rows_str(self) -> list:
        return [[str(e) for e in row] for row in self.matrix]

    def __eq__(self, other):
        return isinstance(other, ModuleMap) and self.source == other.source \
            and self.target == other.target and self.columns == other.columns

    def __repr__(self):
        return f"ModuleMap({self.rows_str()})"


def infer_source_degrees(rows, target_degrees) -> tuple:
    out = []
    ncols = len(rows[0]) if rows else 0
    for j in range(ncols):
        degs = set()
        for i, row in enumerate(rows):
            e = row[j]
            if e.is_zero():
                continue
            if not e.is_homogeneous():
                raise ValueError(f"entry ({i},{j}) is not homogeneous")
            degs.add(e.degree() + target_degrees[i])
        if len(degs) != 1:
            raise ValueError(f"cannot infer a degree for column {j}: candidates {sorted(degs)}")
        out.append(degs.pop())
    return tuple(out)


class FPModule:
    """coker(presentation) with a cached Groebner basis of the relation module."""

    def __init__(self, presentation: ModuleMap, name=None):
        self.presentation = presentation
        self.name = name

    # constructors --------------------------------------------------------------

    @classmethod
    def free(cls, ring, degrees=(0,)) -> FPModule:
        F = FreeModule(ring, degrees)
        return cls(ModuleMap(FreeModule(F.ring, ()), F, []))

    @classmethod
    def cyclic(cls, ring, generators, degree=0) -> FPModule:
        """A/(generators), shifted so that the generator sits in ``degree``."""
        Q = as_quotient(ring)
        gens = [Q.base.parse(g) if isinstance(g, str) else g for g in generators]
        return cls(ModuleMap.from_rows(Q, [gens], target_degrees=(degree,)))

    @classmethod
    def from_rows(cls, ring, rows, target_degrees=None, source_degrees=None) -> FPModule:
        return cls(ModuleMap.from_rows(ring, rows, target_degrees, source_degrees))

    @classmethod
    def from_vectors(cls, ring, degrees, vectors, vec_degrees=None) -> FPModule:
        Q = as_quotient(ring)
        order = ModuleOrder(Q.base, degrees)
        if vec_degrees is None:
            vec_degrees = [vec_degree(v, order) for v in vectors]
        vecs = [v for v in vectors if v]
        vd = [d for v, d in zip(vectors, vec_degrees) if v]
        return cls(ModuleMap(FreeModule(Q, vd), FreeModule(Q, degrees), vecs))

    # structure -----------------------------------------------------------------

    @property
    def ring(self) -> QuotientRing:
        return self.presentation.ring

    @property
    def degrees(self) -> tuple:
        return self.presentation.target.degrees

    @property
    def relations(self) -> list:
        return self.presentation.columns

    @cached_property
    def groebner_basis(self) -> list:
        return submodule_basis(self.relations, self.ring, self.degrees, LIMITS)

    @cached_property
    def hilbert_series(self) -> HilbertSeries:
        order = ModuleOrder(self.ring.base, self.degrees)
        leads = [order.lead(v) for v in self.groebner_basis]
        return HilbertSeries.from_leading_terms(leads, self.degrees, self.ring.base.weights)

    def quotient(self, vectors) -> FPModule:
        """M / span(vectors), vectors given in the generator module of M."""
        order = ModuleOrder(self.ring.base, self.degrees)
        vecs = list(self.relations) + [v for v in vectors if v]
        degs = list(self.presentation.source.degrees) + [vec_degree(v, order) for v in vectors if v]
        return FPModule(ModuleMap(FreeModule(self.ring, degs), FreeModule(self.ring, self.degrees), vecs))

    def is_zero(self) -> bool:
        return self.hilbert_series.is_zero()

    def __repr__(self):
        label = self.name or "coker"
        return f"FPModule({label}, gens={list(self.degrees)}, rels={len(self.relations)})"


def hilbert_function(M: FPModule, d: int) -> int:
    return M.hilbert_series.coefficient(d)


def krull_dim(M: FPModule) -> int:
    return M.hilbert_series.dimension()


def length(M: FPModule) -> int:
    hs = M.hilbert_series
    dim = hs.dimension()
    if dim > 0:
        raise InfiniteLength(f"module of Krull dimension {dim}")
    return hs.length() if dim == 0 else 0


@dataclass
class HilbertData:
    values: dict
    polynomial: list
    stabilization: int


def hilbert_data(M: FPModule, upto: int = 10) -> HilbertData:
    """Hilbert function values and the Hilbert polynomial found by interpolation."""
    hs = M.hilbert_series
    if hs.is_zero():
        return HilbertData({}, [], 0)
    start = min(hs.numerator)
    poly, stab = stabilized_polynomial(hs.coefficient, max(M.ring.nvars - 1, 0), start)
    while stab > start and eval_poly(poly, stab - 1) == hs.coefficient(stab - 1):
        stab -= 1
    return HilbertData(hs.coefficients(max(upto, stab)), poly, stab)


def _check_same_ring(M, N):
    if M.ring != N.ring:
        raise RingMismatch(f"{M.ring} vs {N.ring}")


def tensor(M: FPModule, N: FPModule) -> FPModule:
    """M (x) N: generators are pairs, relations are rel(M) (x) gens(N) and gens(M) (x) rel(N)."""
    _check_same_ring(M, N)
    m, n = len(M.degrees), len(N.degrees)
    degrees = tuple(a + b for a in M.degrees for b in N.degrees)
    vecs, vdeg = [], []
    for col, d in zip(M.relations, M.presentation.source.degrees):
        for j in range(n):
            vecs.append({(k * n + j, e): c for (k, e), c in col.items()})
            vdeg.append(d + N.degrees[j])
    for col, d in zip(N.relations, N.presentation.source.degrees):
        for i in range(m):
            vecs.append({(i * n + k, e): c for (k, e), c in col.items()})
            vdeg.append(d + M.degrees[i])
    Q = M.ring
    return FPModule(ModuleMap(FreeModule(Q, vdeg), FreeModule(Q, degrees), vecs))


def direct_sum(M: FPModule, N: FPModule) -> FPModule:
    _check_same_ring(M, N)
    m = len(M.degrees)
    vecs = list(M.relations) + [{(k + m, e): c for (k, e), c in col.items()} for col in N.relations]
    vdeg = list(M.presentation.source.degrees) + list(N.presentation.source.degrees)
    Q = M.ring
    return FPModule(ModuleMap(FreeModule(Q, vdeg), FreeModule(Q, M.degrees + N.degrees), vecs))


def cokernel(f: ModuleMap) -> FPModule:
    return FPModule(f)


def minimal_columns(vectors, Q, degrees, vec_degrees):
    keep = minimal_generator_indices(vectors, Q, degrees, vec_degrees, LIMITS)
    keep.sort(key=lambda j: (vec_degrees[j], j))
    return [vectors[j] for j in keep], [vec_degrees[j] for j in keep]


def submodule_as_module(vectors, Q, degrees, vec_degrees) -> FPModule:
    """The submodule of A^degrees spanned by ``vectors``, presented by its syzygies."""
    gens, gdeg = minimal_columns(vectors, Q, degrees, vec_degrees)
    syz = syzygy_vectors(gens, Q, degrees, gdeg, LIMITS)
    return FPModule.from_vectors(Q, gdeg, syz)


def kernel(f: ModuleMap) -> FPModule:
    """ker f as a module: minimal generators of the syzygies of the columns, presented by their syzygies."""
    Q = f.ring
    syz = syzygy_vectors(f.columns, Q, f.target.degrees, f.source.degrees, LIMITS)
    order = ModuleOrder(Q.base, f.source.degrees)
    return submodule_as_module(syz, Q, f.source.degrees, [vec_degree(v, order) for v in syz])


def preimage(D: ModuleMap, target_relations, target_relation_degrees):
    """Generators of {v : D v in span(target_relations)} in the source of D."""
    Q = D.ring
    r = D.source.rank
    vecs = list(D.columns) + list(target_relations)
    src = list(D.source.degrees) + list(target_relation_degrees)
    syz = syzygy_vectors(vecs, Q, D.target.degrees, src, LIMITS)
    out = []
    for s in syz:
        v = {(k, e): c for (k, e), c in s.items() if k < r}
        if v:
            out.append(v)
    return out


def subquotient(K, U, Q, degrees) -> FPModule:
    """span(K) / span(U) for U inside span(K), both inside A^degrees."""
    order = ModuleOrder(Q.base, degrees)
    kdeg = [vec_degree(v, order) for v in K]
    gens, gdeg = minimal_columns(K, Q, degrees, kdeg) if K else ([], [])
    if not gens:
        return FPModule.free(Q, ())
    U = [u for u in U if u]
    udeg = [vec_degree(u, order) for u in U]
    syz = syzygy_vectors(gens + U, Q, degrees, gdeg + udeg, LIMITS)
    rels = []
    g = len(gens)
    for s in syz:
        v = {(k, e): c for (k, e), c in s.items() if k < g}
        if v:
            rels.append(v)
    return FPModule.from_vectors(Q, gdeg, rels)
