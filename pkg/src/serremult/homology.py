"""Tensor and Hom complexes of a free complex with a module, their homology, Tor and Ext."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Inconclusive, InfiniteLength, RingMismatch, SerreConditionViolated
from .fpmodule import FPModule, FreeModule, ModuleMap, preimage, subquotient, tensor
from .groebner import LIMITS, ModuleOrder, submodule_basis
from .hilbert import HilbertSeries
from .resolution import FreeComplex, default_max_len, free_resolution

COMPLETE = "complete"
CERTIFIED = "truncated_with_certificate"
TRUNCATED = "truncated"


@dataclass
class FPComplex:
    """Presented modules X_i = Y_i / W_i with generator-level maps.

    ``chain``: maps[i] goes X_i -> X_{i-1} (i >= 1).  Otherwise the complex
    is cohomological and maps[i] goes X^i -> X^{i+1}.
    """

    ring: object
    objects: list
    maps: dict
    chain: bool = True
    _coker: dict = field(default_factory=dict, repr=False)

    @property
    def length(self) -> int:
        return len(self.objects) - 1

    def obj(self, i) -> FPModule | None:
        return self.objects[i] if 0 <= i < len(self.objects) else None

    def incoming(self, i) -> ModuleMap | None:
        return self.maps.get(i + 1) if self.chain else self.maps.get(i - 1)

    def outgoing(self, i) -> ModuleMap | None:
        return self.maps.get(i) if self.chain else self.maps.get(i)

    def next_index(self, i) -> int:
        return i - 1 if self.chain else i + 1

    def coker_in(self, i) -> HilbertSeries:
        """HS of X_i modulo the image of the incoming map."""
        if i not in self._coker:
            X = self.obj(i)
            f = self.incoming(i)
            vecs = list(X.relations) + (list(f.columns) if f is not None else [])
            order = ModuleOrder(self.ring.base, X.degrees)
            if X.degrees:
                gb = submodule_basis([v for v in vecs if v], self.ring, X.degrees, LIMITS)
                hs = HilbertSeries.from_leading_terms([order.lead(v) for v in gb], X.degrees,
                                                      self.ring.base.weights)
            else:
                hs = HilbertSeries({}, self.ring.base.weights)
            self._coker[i] = hs
        return self._coker[i]

    def homology_series(self, i) -> HilbertSeries:
        here = self.coker_in(i)
        t = self.next_index(i)
        if self.obj(t) is None or self.outgoing(i) is None:
            return here
        return here - self.obj(t).hilbert_series + self.coker_in(t)

    def homology_length(self, i) -> int:
        hs = self.homology_series(i)
        if hs.is_zero():
            return 0
        n = hs.length()
        if n is None:
            raise InfiniteLength(f"homology at {i} has dimension {hs.dimension()}")
        return n

    def composition_vanishes(self) -> bool:
        """d o d lands in the relations of the target, at every spot."""
        for i, f in self.maps.items():
            g = self.maps.get(i - 1) if self.chain else self.maps.get(i + 1)
            if g is None:
                continue
            target = self.obj(self.next_index(self.next_index(i)))
            comp = g.compose(f)
            gb_mod = target.quotient([c for c in comp.columns])
            if not (gb_mod.hilbert_series == target.hilbert_series):
                return False
        return True


def _block_relations(N: FPModule, blocks: int, sign: int, shifts):
    n = len(N.degrees)
    vecs, degs = [], []
    for a in range(blocks):
        for col, d in zip(N.relations, N.presentation.source.degrees):
            vecs.append({(a * n + k, e): c for (k, e), c in col.items()})
            degs.append(d + sign * shifts[a])
    return vecs, degs


def _object(Q, N: FPModule, shifts, sign) -> FPModule:
    n = len(N.degrees)
    degrees = tuple(g + sign * s for s in shifts for g in N.degrees)
    vecs, degs = _block_relations(N, len(shifts), sign, shifts)
    return FPModule(ModuleMap(FreeModule(Q, degs), FreeModule(Q, degrees), vecs, check=False))


def tensor_with_module(C: FreeComplex, N: FPModule) -> FPComplex:
    """C (x) N with generators (a, b) indexed a*n + b."""
    Q = C.ring
    if N.ring != Q:
        raise RingMismatch(f"{Q} vs {N.ring}")
    n = len(N.degrees)
    objs = [_object(Q, N, C.module(i).degrees, 1) for i in range(C.length + 1)]
    maps = {}
    for i in range(1, C.length + 1):
        d = C.d(i)
        cols = []
        for a in range(d.source.rank):
            for b in range(n):
                cols.append({(r * n + b, e): c for (r, e), c in d.columns[a].items()})
        maps[i] = ModuleMap(objs[i].presentation.target, objs[i - 1].presentation.target, cols, check=False)
    return FPComplex(Q, objs, maps, chain=True)


def hom_into_module(C: FreeComplex, N: FPModule) -> FPComplex:
    """Hom(C, N): transposed differentials, generator shifts negated."""
    Q = C.ring
    if N.ring != Q:
        raise RingMismatch(f"{Q} vs {N.ring}")
    n = len(N.degrees)
    objs = [_object(Q, N, C.module(i).degrees, -1) for i in range(C.length + 1)]
    maps = {}
    for i in range(C.length):
        d = C.d(i + 1)
        cols = [dict() for _ in range(d.target.rank * n)]
        for c_idx, col in enumerate(d.columns):
            for (a, e), v in col.items():
                for b in range(n):
                    cols[a * n + b][(c_idx * n + b, e)] = v
        maps[i] = ModuleMap(objs[i].presentation.target, objs[i + 1].presentation.target, cols, check=False)
    return FPComplex(Q, objs, maps, chain=False)


def homology_at(C: FPComplex, i: int) -> FPModule:
    """ker / im at spot i as a presented module."""
    X = C.obj(i)
    Q = C.ring
    out = C.outgoing(i)
    t = C.next_index(i)
    if out is not None and C.obj(t) is not None:
        T = C.obj(t)
        K = preimage(out, T.relations, T.presentation.source.degrees)
    else:
        zero = (0,) * Q.nvars
        K = [{(k, zero): Q.field.one()} for k in range(len(X.degrees))]
    K = K + [v for v in X.relations if v]
    f = C.incoming(i)
    U = list(X.relations) + (list(f.columns) if f is not None else [])
    return subquotient(K, U, Q, X.degrees)


@dataclass
class TorProfile:
    ring: object
    labels: tuple
    lengths: list
    completeness: str
    certificate: object = None

    @property
    def complete(self) -> bool:
        return self.completeness == COMPLETE

    def to_json(self):
        out = {"tor_lengths": list(self.lengths), "complete": self.complete}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def _default_upto(Q) -> int:
    return Q.nvars if Q.is_polynomial_ring else default_max_len(Q) - 1


def check_serre(M: FPModule, N: FPModule) -> int:
    """l(M (x) N), raising SerreConditionViolated if infinite."""
    if M.ring != N.ring:
        raise RingMismatch(f"{M.ring} vs {N.ring}")
    hs = tensor(M, N).hilbert_series
    n = hs.length() if not hs.is_zero() else 0
    if n is None:
        raise SerreConditionViolated(f"M (x) N has Krull dimension {hs.dimension()}")
    return n


def _completeness(C: FreeComplex) -> str:
    if C.complete:
        return COMPLETE
    return CERTIFIED if C.certificate is not None else TRUNCATED


def tor(M: FPModule, N: FPModule, upto: int | None = None, strict: bool = False,
        resolution: FreeComplex | None = None) -> TorProfile:
    """Lengths of Tor_i(M, N) for i <= upto, resolving M."""
    check_serre(M, N)
    Q = M.ring
    if upto is None:
        upto = _default_upto(Q)
    C = resolution or free_resolution(M, upto + 1)
    T = tensor_with_module(C, N)
    lengths = [T.homology_length(i) if i <= C.length else 0 for i in range(upto + 1)]
    status = _completeness(C)
    if strict and status == TRUNCATED:
        raise Inconclusive(f"resolution truncated at {C.length} without a periodicity certificate")
    return TorProfile(Q, (M.name, N.name), lengths, status, C.certificate)


def ext(M: FPModule, N: FPModule, upto: int | None = None, strict: bool = False) -> list:
    """Lengths of Ext^i(M, N) for i <= upto via Hom(resolution of M, N)."""
    check_serre(M, N)
    Q = M.ring
    if upto is None:
        upto = _default_upto(Q)
    C = free_resolution(M, upto + 1)
    if strict and not C.complete:
        raise Inconclusive("resolution truncated")
    H = hom_into_module(C, N)
    return [H.homology_length(i) if i <= C.length else 0 for i in range(upto + 1)]


def ext_profile(M: FPModule, N: FPModule, upto=None):
    """(lengths, complete) like ``ext`` but reporting completeness."""
    Q = M.ring
    if upto is None:
        upto = _default_upto(Q)
    C = free_resolution(M, upto + 1)
    check_serre(M, N)
    H = hom_into_module(C, N)
    return [H.homology_length(i) if i <= C.length else 0 for i in range(upto + 1)], C.complete


def image_length(T: FPComplex, i: int) -> int:
    """l(im(d_i (x) N)) inside X_{i-1}, for finite-length objects."""
    return T.obj(i - 1).hilbert_series.length() - T.coker_in(i - 1).length()


def truncated_euler(C: FreeComplex, N: FPModule, k: int) -> int:
    """sum_{j<=k} (-1)^j l(F_j (x) N) - (-1)^k l(im(d_{k+1} (x) N)).

    Equals sum_{j<=k} (-1)^j l(Tor_j) for finite-length N, by telescoping.
    """
    T = tensor_with_module(C, N)
    total = sum((-1) ** j * T.obj(j).hilbert_series.length() for j in range(k + 1))
    return total - (-1) ** k * image_length(T, k + 1)
