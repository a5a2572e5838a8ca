"""Graded free resolutions, Koszul complexes and period-2 detection."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .errors import Inconclusive, NotAResolution
from .exactnum import rank_and_solve
from .fpmodule import FPModule, FreeModule, ModuleMap, minimal_columns, ring_hilbert_series
from .groebner import (
    LIMITS, ModuleOrder, columns_to_vectors, minimal_generator_indices,
    submodule_basis, syzygy_vectors,
)
from .hilbert import HilbertSeries
from .polyring import QuotientRing, as_quotient

INFINITE = math.inf
SETTINGS = {"max_len": None}


# -- vector helpers -----------------------------------------------------------------------


def vec_scale_poly(F, vec: dict, poly: dict) -> dict:
    """poly * vec."""
    out = {}
    for (k, e), c in vec.items():
        for e2, c2 in poly.items():
            t = (k, tuple(a + b for a, b in zip(e, e2)))
            v = F.add(out.get(t, F.zero()), F.mul(c, c2))
            if v:
                out[t] = v
            else:
                out.pop(t, None)
    return out


def vec_add(F, a: dict, b: dict, scale=None) -> dict:
    out = dict(a)
    for t, c in b.items():
        if scale is not None:
            c = F.mul(c, scale)
        v = F.add(out.get(t, F.zero()), c)
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def component(vec: dict, k: int) -> dict:
    return {e: c for (i, e), c in vec.items() if i == k}


def drop_component(vec: dict, k: int) -> dict:
    return {(i - (i > k), e): c for (i, e), c in vec.items() if i != k}


def shifted_map(d: ModuleMap, s: int) -> ModuleMap:
    return ModuleMap(d.source.shifted(s), d.target.shifted(s), d.columns, check=False)


# -- complexes ------------------------------------------------------------------------------


@dataclass
class PeriodicityCertificate:
    onset: int
    period: int = 2
    shift: int = 0
    witness: tuple = ()

    def to_json(self):
        return {"onset": self.onset, "period": self.period, "shift": self.shift}


@dataclass
class BettiTable:
    shifts: list

    @property
    def ranks(self) -> list:
        return [len(s) for s in self.shifts]

    def to_json(self):
        return {"betti": [list(s) for s in self.shifts]}

    def graded(self) -> dict:
        """{(i, degree): count}"""
        out = {}
        for i, s in enumerate(self.shifts):
            for d in s:
                out[(i, d)] = out.get((i, d), 0) + 1
        return out

    def __str__(self):
        g = self.graded()
        if not g:
            return "(zero)"
        rows = sorted({d - i for i, d in g})
        width = len(self.shifts)
        lines = ["     " + " ".join(f"{i:>3}" for i in range(width))]
        for r in rows:
            cells = [g.get((i, i + r), 0) for i in range(width)]
            lines.append(f"{r:>3}: " + " ".join(f"{c if c else '.':>3}" for c in cells))
        lines.append("tot: " + " ".join(f"{n:>3}" for n in self.ranks))
        return "\n".join(lines)


@dataclass
class FreeComplex:
    """F_0 <- F_1 <- ... <- F_len with ``differentials[i-1] = d_i``."""

    modules: list
    differentials: list
    complete: bool = False
    certificate: PeriodicityCertificate | None = None
    presented: FPModule | None = field(default=None, repr=False)

    @property
    def ring(self) -> QuotientRing:
        return self.modules[0].ring

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    @property
    def truncated(self) -> bool:
        return not self.complete

    def d(self, i: int) -> ModuleMap:
        """d_i : F_i -> F_{i-1}; zero maps outside the computed range."""
        if 1 <= i <= self.length:
            return self.differentials[i - 1]
        src = self.modules[i] if 0 <= i <= self.length else FreeModule(self.ring, ())
        tgt = self.modules[i - 1] if 0 <= i - 1 <= self.length else FreeModule(self.ring, ())
        return ModuleMap(src, tgt, [{} for _ in range(src.rank)], check=False)

    def module(self, i: int) -> FreeModule:
        if 0 <= i <= self.length:
            return self.modules[i]
        return FreeModule(self.ring, ())

    def betti(self) -> BettiTable:
        shifts = [list(F.degrees) for F in self.modules]
        while len(shifts) > 1 and not shifts[-1]:
            shifts.pop()
        return BettiTable(shifts)

    def direct_sum(self, other: FreeComplex) -> FreeComplex:
        n = max(self.length, other.length)
        mods = [FreeModule(self.ring, self.module(i).degrees + other.module(i).degrees) for i in range(n + 1)]
        diffs = []
        for i in range(1, n + 1):
            a, b = self.d(i), other.d(i)
            off = self.module(i - 1).rank
            cols = [dict(c) for c in a.columns] + [{(k + off, e): v for (k, e), v in c.items()} for c in b.columns]
            diffs.append(ModuleMap(mods[i], mods[i - 1], cols, check=False))
        return FreeComplex(mods, diffs, self.complete and other.complete)

    def __repr__(self):
        return f"FreeComplex(ranks={[F.rank for F in self.modules]}, complete={self.complete})"


def trivial_complex(ring, index: int, degree: int = 0) -> FreeComplex:
    """0 -> A(-degree) --id--> A(-degree) -> 0 sitting in spots index, index-1."""
    Q = as_quotient(ring)
    zero = (0,) * Q.nvars
    mods = [FreeModule(Q, ()) for _ in range(index + 1)]
    mods[index] = FreeModule(Q, (degree,))
    mods[index - 1] = FreeModule(Q, (degree,))
    diffs = [ModuleMap(mods[i], mods[i - 1], [{} for _ in range(mods[i].rank)], check=False)
             for i in range(1, index + 1)]
    diffs[index - 1] = ModuleMap(mods[index], mods[index - 1], [{(0, zero): Q.field.one()}])
    return FreeComplex(mods, diffs, True)


def check_d_squared(C: FreeComplex) -> bool:
    for i in range(2, C.length + 1):
        if not C.d(i - 1).compose(C.d(i)).is_zero():
            return False
    return True


# -- Hilbert series of cokernels and homology ---------------------------------------------


def cokernel_series(Q: QuotientRing, degrees, vectors) -> HilbertSeries:
    """HS of A^degrees / span(vectors)."""
    if not degrees:
        return HilbertSeries({}, Q.base.weights)
    order = ModuleOrder(Q.base, degrees)
    gb = submodule_basis([v for v in vectors if v], Q, degrees, LIMITS)
    return HilbertSeries.from_leading_terms([order.lead(v) for v in gb], degrees, Q.base.weights)


def free_series(Q: QuotientRing, degrees) -> HilbertSeries:
    hs = ring_hilbert_series(Q)
    num = {}
    for s in degrees:
        for d, c in hs.numerator.items():
            num[d + s] = num.get(d + s, 0) + c
    return HilbertSeries(num, hs.weights)


def homology_series_free(C: FreeComplex, i: int) -> HilbertSeries:
    """HS(ker d_i / im d_{i+1}) via cokernel series only."""
    Q = C.ring
    here = cokernel_series(Q, C.module(i).degrees, C.d(i + 1).columns)
    if i == 0:
        return here
    return here - free_series(Q, C.module(i - 1).degrees) \
        + cokernel_series(Q, C.module(i - 1).degrees, C.d(i).columns)


def exactness_audit(C: FreeComplex, upto=None) -> dict:
    """{i: homology is zero} for 1 <= i < upto (default: every index below the top)."""
    top = C.length if upto is None else min(upto, C.length)
    if C.complete:
        top = C.length + 1
    return {i: homology_series_free(C, i).is_zero() for i in range(1, top)}


# -- minimalization ------------------------------------------------------------------------


def _find_unit(d: ModuleMap):
    zero = (0,) * d.ring.nvars
    for c, col in enumerate(d.columns):
        for (r, e), v in col.items():
            if e == zero and d.source.degrees[c] == d.target.degrees[r]:
                return r, c, v
    return None


def _cancel(mods, diffs, i, r, c, a):
    """Cancel the unit a at entry (r, c) of d_i (list indices: diffs[i-1])."""
    Q = mods[0].ring
    F = Q.field
    d = diffs[i - 1]
    inv = F.inv(a)
    pivot = d.columns[c]
    cols = []
    for j, col in enumerate(d.columns):
        if j == c:
            continue
        coef = component(col, r)
        if coef:
            col = vec_add(F, col, vec_scale_poly(F, pivot, coef), F.neg(inv))
        cols.append(drop_component(col, r))
    new_src = FreeModule(Q, tuple(x for j, x in enumerate(mods[i].degrees) if j != c))
    new_tgt = FreeModule(Q, tuple(x for j, x in enumerate(mods[i - 1].degrees) if j != r))
    mods[i], mods[i - 1] = new_src, new_tgt
    diffs[i - 1] = ModuleMap(new_src, new_tgt, cols, check=False)
    if i < len(diffs):
        up = diffs[i]
        diffs[i] = ModuleMap(up.source, new_src, [drop_component(v, c) for v in up.columns], check=False)
    if i >= 2:
        down = diffs[i - 2]
        diffs[i - 2] = ModuleMap(new_tgt, down.target,
                                 [v for j, v in enumerate(down.columns) if j != r], check=False)


def _cancel_all(mods, diffs, indices):
    changed = True
    while changed:
        changed = False
        for i in indices:
            if i > len(diffs):
                continue
            hit = _find_unit(diffs[i - 1])
            if hit:
                _cancel(mods, diffs, i, *hit)
                changed = True


def minimalize(C: FreeComplex, check=True) -> FreeComplex:
    """Remove unit entries by Gaussian cancellation until none remain."""
    if check:
        bad = [i for i, ok in exactness_audit(C).items() if not ok]
        if bad:
            raise NotAResolution(f"nonzero homology at {bad}")
    mods = list(C.modules)
    diffs = list(C.differentials)
    _cancel_all(mods, diffs, range(1, len(diffs) + 1))
    while len(mods) > 1 and mods[-1].rank == 0:
        mods.pop()
        diffs.pop()
    return FreeComplex(mods, diffs, C.complete, C.certificate, C.presented)


def is_minimal(C: FreeComplex) -> bool:
    return all(_find_unit(d) is None for d in C.differentials)


# -- resolutions ---------------------------------------------------------------------------


def minimal_presentation(M: FPModule):
    """(F_0, d_1) with no unit entries and minimal relation columns."""
    Q = M.ring
    F0 = FreeModule(Q, M.degrees)
    rel = [c for c in M.relations if c]
    rdeg = [d for c, d in zip(M.relations, M.presentation.source.degrees) if c]
    while True:
        if rel:
            rel, rdeg = minimal_columns(rel, Q, F0.degrees, rdeg)
        F1 = FreeModule(Q, rdeg)
        d1 = ModuleMap(F1, F0, rel, check=False)
        hit = _find_unit(d1)
        if not hit:
            return F0, d1
        mods, diffs = [F0, F1], [d1]
        _cancel(mods, diffs, 1, *hit)
        F0, F1 = mods
        rel = [c for c in diffs[0].columns if c]
        rdeg = [d for c, d in zip(diffs[0].columns, F1.degrees) if c]


def default_max_len(Q: QuotientRing) -> int:
    if SETTINGS["max_len"] is not None:
        return SETTINGS["max_len"]
    return Q.nvars if Q.is_polynomial_ring else Q.nvars + 8


def _try_reuse(Q, prev: ModuleMap, cand: ModuleMap, syz, syz_count):
    """Return cand shifted if it is a minimal generating set of ker(prev)."""
    src, tgt = prev.source.degrees, cand.target.degrees
    if len(src) != len(tgt) or not src:
        return None
    shifts = {a - b for a, b in zip(src, tgt)}
    if len(shifts) != 1:
        return None
    e = shifts.pop()
    if cand.source.rank != syz_count:
        return None
    new = ModuleMap(cand.source.shifted(e), prev.source, cand.columns, check=False)
    if not prev.compose(new).is_zero():
        return None
    order = ModuleOrder(Q.base, prev.source.degrees)
    from .groebner import Engine, relation_vectors
    eng = Engine(Q.base, order, ideal_case=len(src) == 1, limits=LIMITS)
    for v in list(new.columns) + relation_vectors(Q, range(len(src))):
        if v:
            eng.add(v)
    eng.run()
    if any(eng.reduce(v) for v in syz):
        return None
    return new, e


def free_resolution(M: FPModule, max_len: int | None = None) -> FreeComplex:
    """Minimal graded free resolution F_0 <- ... <- F_max_len.

    Over a quotient ring each new differential first tries the one two steps
    back; two consecutive successful reuses certify periodicity, after
    which the tail is extended by repetition.
    """
    Q = M.ring
    if max_len is None:
        max_len = default_max_len(Q)
    F0, d1 = minimal_presentation(M)
    mods, diffs = [F0], []
    complete = False
    cert = None
    reuse = {}
    if max_len >= 1 and d1.source.rank:
        mods.append(d1.source)
        diffs.append(d1)
    elif not d1.source.rank:
        complete = True
    j = 2
    while not complete and cert is None and j <= max_len + 1:
        prev = diffs[-1]
        syz = syzygy_vectors(prev.columns, Q, prev.target.degrees, prev.source.degrees, LIMITS)
        if not syz:
            complete = True
            break
        if j > max_len:
            break
        order = ModuleOrder(Q.base, prev.source.degrees)
        from .groebner import vec_degree
        sdeg = [vec_degree(v, order) for v in syz]
        keep = minimal_generator_indices(syz, Q, prev.source.degrees, sdeg, LIMITS)
        reused = None
        if not Q.is_polynomial_ring and j >= 3:
            reused = _try_reuse(Q, prev, diffs[-2], syz, len(keep))
        if reused:
            d, e = reused
            reuse[j] = e
            if reuse.get(j - 1) == e:
                cert = PeriodicityCertificate(onset=j - 3, period=2, shift=e, witness=(j - 2, j - 1))
        else:
            keep.sort(key=lambda k: (sdeg[k], k))
            src = FreeModule(Q, [sdeg[k] for k in keep])
            d = ModuleMap(src, prev.source, [syz[k] for k in keep], check=False)
        mods.append(d.source)
        diffs.append(d)
        j += 1
    if cert is not None:
        while len(diffs) < max_len:
            back = diffs[-2]
            d = ModuleMap(back.source.shifted(cert.shift), diffs[-1].source, back.columns, check=False)
            mods.append(d.source)
            diffs.append(d)
    return FreeComplex(mods, diffs, complete, cert, M)


def resolution_betti(M: FPModule, max_len=None) -> BettiTable:
    return free_resolution(M, max_len).betti()


def projective_dimension(M: FPModule, max_len=None):
    C = free_resolution(M, max_len)
    if C.complete:
        return C.betti().ranks.__len__() - 1 if C.modules[0].rank else -1
    if C.certificate is not None:
        return INFINITE
    raise Inconclusive(f"no certificate within length {C.length}")


def detect_periodicity(C: FreeComplex, check_exact=True):
    """First i with d_{i+2} = d_i and d_{i+3} = d_{i+1} after a uniform degree shift."""
    if C.ring.is_polynomial_ring:
        return None
    for i in range(1, C.length - 2):
        a, b, a2, b2 = C.d(i), C.d(i + 1), C.d(i + 2), C.d(i + 3)
        if a.columns != a2.columns or b.columns != b2.columns:
            continue
        shifts = {x - y for x, y in zip(a2.source.degrees + a2.target.degrees + b2.source.degrees,
                                        a.source.degrees + a.target.degrees + b.source.degrees)}
        if len(shifts) != 1 or a.source.rank != a2.source.rank or a.target.rank != a2.target.rank \
                or b.source.rank != b2.source.rank:
            continue
        if check_exact:
            if not (homology_series_free(C, i + 1).is_zero() and homology_series_free(C, i + 2).is_zero()):
                continue
        return PeriodicityCertificate(onset=i, period=2, shift=shifts.pop(), witness=(i + 2, i + 3))
    return None


# -- Koszul complexes ------------------------------------------------------------------------


def koszul_complex(seq, ring) -> FreeComplex:
    """Exterior complex on seq, d(e_I) = sum_j (-1)^(j+1) f_{i_j} e_{I minus i_j}."""
    Q = as_quotient(ring)
    polys = [Q.base.parse(f) if isinstance(f, str) else f for f in seq]
    if not polys:
        raise ValueError("empty sequence")
    raw = [Q.reduce_raw(f.raw) for f in polys]
    degs = [f.degree() for f in polys]
    k = len(polys)
    subsets = [list(combinations(range(k), p)) for p in range(k + 1)]
    mods = [FreeModule(Q, [sum(degs[t] for t in S) for S in subsets[p]]) for p in range(k + 1)]
    diffs = []
    for p in range(1, k + 1):
        index = {S: n for n, S in enumerate(subsets[p - 1])}
        cols = []
        for S in subsets[p]:
            col = {}
            for j, t in enumerate(S):
                rest = S[:j] + S[j + 1:]
                sign = 1 if j % 2 == 0 else -1
                for e, c in raw[t].items():
                    col[(index[rest], e)] = c if sign > 0 else Q.field.neg(c)
            cols.append(col)
        diffs.append(ModuleMap(mods[p], mods[p - 1], cols, check=False))
    return FreeComplex(mods, diffs, True)


# -- comparison of resolutions ---------------------------------------------------------------


def _monomials(n, deg, weights):
    if deg < 0:
        return []
    out = []

    def rec(i, left, acc):
        if i == n:
            if left == 0:
                out.append(tuple(acc))
            return
        for a in range(left // weights[i] + 1):
            rec(i + 1, left - a * weights[i], acc + [a])
    rec(0, deg, [])
    return out


def lift_map(d_src: ModuleMap, d_tgt: ModuleMap, P_prev):
    """Solve d_tgt * P = P_prev * d_src for a degree-0 map P.

    ``P_prev`` maps the target of d_src to the target of d_tgt and is given
    as a list of column vectors.  Returns the columns of P or None.
    """
    Q = d_src.ring
    F = Q.field
    R = Q.base
    src, tgt_src = d_src.source, d_tgt.source
    unknowns = []
    for c, dc in enumerate(src.degrees):
        for b, db in enumerate(tgt_src.degrees):
            for mono in _monomials(R.nvars, dc - db, R.weights):
                unknowns.append((b, c, mono))
    rhs_cols = []
    for col in d_src.columns:
        out = {}
        for (k, e), v in col.items():
            out = vec_add(F, out, vec_scale_poly(F, P_prev[k], {e: v}))
        rhs_cols.append(_reduce_vec(out, Q))
    eq_index = {}
    rows = []
    rhs = []

    def row_for(key):
        if key not in eq_index:
            eq_index[key] = len(rows)
            rows.append([F.zero()] * len(unknowns))
            rhs.append(F.zero())
        return eq_index[key]

    for u, (b, c, mono) in enumerate(unknowns):
        img = _reduce_vec(vec_scale_poly(F, d_tgt.columns[b], {mono: F.one()}), Q)
        for (a, e), v in img.items():
            rows[row_for((c, a, e))][u] = v
    for c, col in enumerate(rhs_cols):
        for (a, e), v in col.items():
            rhs[row_for((c, a, e))] = v
    if not unknowns:
        return [{} for _ in src.degrees] if not any(rhs_cols) else None
    if not rows:
        return [{} for _ in src.degrees]
    _, sol = rank_and_solve(F, rows, rhs)
    if sol is None:
        return None
    cols = [{} for _ in src.degrees]
    for u, (b, c, mono) in enumerate(unknowns):
        if sol[u]:
            cols[c][(b, mono)] = sol[u]
    return cols


def _reduce_vec(v, Q):
    from .groebner import reduce_vec_mod_relations
    return reduce_vec_mod_relations(v, Q)


def _degree_zero_invertible(cols, src_degrees, tgt_degrees, F) -> bool:
    if len(src_degrees) != len(tgt_degrees):
        return False
    n = len(src_degrees)
    zero_blocks = {}
    for c, col in enumerate(cols):
        for (b, e), v in col.items():
            if not any(e):
                zero_blocks[(b, c)] = v
    mat = [[zero_blocks.get((b, c), F.zero()) for c in range(n)] for b in range(n)]
    rank, _ = rank_and_solve(F, mat)
    return rank == n


def comparison_maps(C: FreeComplex, D: FreeComplex, upto: int):
    """Chain maps P_i: C_i -> D_i lifting the identity on F_0 (ranks must agree there).

    Returns the list of P_i (column lists) or None when some lift fails.
    """
    F = C.ring.field
    zero = (0,) * C.ring.nvars
    if C.module(0).degrees != D.module(0).degrees:
        return None
    P = [[{(k, zero): F.one()} for k in range(C.module(0).rank)]]
    for i in range(1, upto + 1):
        cols = lift_map(C.d(i), D.d(i), P[-1])
        if cols is None:
            return None
        P.append(cols)
    return P


def equivalent_resolutions(C: FreeComplex, D: FreeComplex, upto: int) -> bool:
    """True iff lifted comparison maps are isomorphisms through index upto."""
    P = comparison_maps(C, D, upto)
    if P is None:
        return False
    F = C.ring.field
    return all(_degree_zero_invertible(P[i], C.module(i).degrees, D.module(i).degrees, F)
               and sorted(C.module(i).degrees) == sorted(D.module(i).degrees)
               for i in range(upto + 1))


def complex_from_matrices(ring, matrices, base_degrees=(0,)) -> FreeComplex:
    """d_1, d_2, ... given as row-major matrices; degrees inferred from F_0 upward."""
    from .fpmodule import infer_source_degrees
    Q = as_quotient(ring)
    mods = [FreeModule(Q, base_degrees)]
    diffs = []
    for rows in matrices:
        polys = [[Q.reduce(Q.base.parse(e) if isinstance(e, str) else e) for e in row] for row in rows]
        sdeg = infer_source_degrees(polys, mods[-1].degrees)
        cols = columns_to_vectors([[polys[i][j].raw for i in range(len(polys))] for j in range(len(sdeg))])
        src = FreeModule(Q, sdeg)
        diffs.append(ModuleMap(src, mods[-1], cols))
        mods.append(src)
    return FreeComplex(mods, diffs, False)
