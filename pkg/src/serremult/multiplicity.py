"""Intersection multiplicities and the classical checks around them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import (
    Inconclusive, InfiniteLength, NotPrimary, RingMismatch, SerreMultError, UnsupportedRing,
)
from .fpmodule import FPModule, FreeModule, ModuleMap, krull_dim, length, tensor
from .groebner import ideal_basis, poly_to_vec
from .hilbert import stabilized_polynomial
from .homology import TorProfile, check_serre, ext_profile, tensor_with_module, tor
from .polyring import Polynomial, as_quotient, pmul, polynomial_ring, quotient_ring
from .resolution import free_resolution, koszul_complex, projective_dimension

PASS, FAIL, NA = "pass", "fail", "n/a"


def alternating_sum(lengths, start=0) -> int:
    return sum((-1) ** (j - start) * n for j, n in enumerate(lengths) if j >= start)


def complete_tor(M: FPModule, N: FPModule, upto=None) -> TorProfile:
    """A complete Tor profile, resolving N instead when M has no finite resolution in range."""
    prof = tor(M, N, upto)
    if prof.complete:
        return prof
    swapped = tor(N, M, upto)
    if swapped.complete:
        return swapped
    raise Inconclusive("neither argument has a finite resolution within range")


def chi(M: FPModule, N: FPModule) -> int:
    return alternating_sum(complete_tor(M, N).lengths)


def xi(M: FPModule, N: FPModule) -> int:
    lengths, complete = ext_profile(M, N)
    if not complete:
        raise Inconclusive("first argument has no finite resolution within range")
    return alternating_sum(lengths)


def higher_euler(lengths) -> list:
    """chi_i = sum over j >= i of (-1)^(j-i) l(Tor_j), for each i."""
    return [alternating_sum(lengths, i) for i in range(len(lengths))]


def higher_euler_holds(lengths) -> bool:
    """chi_i >= 0, and chi_i > 0 where Tor_i != 0, for every i >= 1."""
    highers = higher_euler(lengths)
    return all(h >= 0 and (h > 0 or not t) for h, t in zip(highers[1:], lengths[1:]))


def chi_higher(M: FPModule, N: FPModule, i: int) -> int:
    lengths = complete_tor(M, N).lengths
    return alternating_sum(lengths, i) if i < len(lengths) else 0


# -- Hilbert-Samuel -------------------------------------------------------------------------


@dataclass
class SamuelData:
    ideal: list
    module: FPModule
    polynomial: list
    k: int
    multiplicity: int
    stabilization: int
    koszul: int | None = None

    def to_json(self):
        return {"polynomial": [str(c) for c in self.polynomial], "k": self.k,
                "e": self.multiplicity, "stabilization": self.stabilization}


def _parse_all(ring, gens):
    Q = as_quotient(ring)
    return [Q.base.parse(g) if isinstance(g, str) else g for g in gens]


def ideal_power_generators(gens, Q, n: int) -> list:
    """Interreduced generators of (gens)^n as raw dicts."""
    F = Q.field
    raw = [Q.reduce_raw(g.raw) for g in gens]
    power = [{(0,) * Q.nvars: F.one()}]
    for _ in range(n):
        prod = [pmul(F, p, g) for p in power for g in raw]
        prod = [Q.reduce_raw(p) for p in prod]
        prod = [p for p in prod if p]
        power = ideal_basis(prod, Q.base) if prod else []
        if not power:
            break
    return power


def quotient_by_ideal_power(M: FPModule, gens, n: int) -> FPModule:
    power = ideal_power_generators(gens, M.ring, n)
    vecs = []
    for k in range(len(M.degrees)):
        for p in power:
            vecs.append(poly_to_vec(p, k))
    return M.quotient(vecs)


def samuel_function(M: FPModule, gens, n: int) -> int:
    """l(M / a^n M)."""
    return length(quotient_by_ideal_power(M, gens, n))


def hilbert_samuel(M: FPModule, ideal_gens, k: int | None = None, cross_check=False) -> SamuelData:
    """Samuel polynomial of M for the ideal and e_k = k! * (coefficient of n^k)."""
    gens = _parse_all(M.ring, ideal_gens)
    try:
        samuel_function(M, gens, 1)
    except InfiniteLength as exc:
        raise NotPrimary("M / aM has infinite length") from exc
    dim = krull_dim(M)
    if k is None:
        k = max(dim, 0)
    poly, stab = stabilized_polynomial(lambda n: samuel_function(M, gens, n), max(dim, 0), 1)
    deg = len(poly) - 1
    if deg > k:
        raise ValueError(f"Samuel polynomial has degree {deg} > k = {k}")
    lead = poly[k] if deg == k else Fraction(0)
    e = lead * factorial(k)
    if e.denominator != 1:
        raise SerreMultError(f"non-integral multiplicity {e}")
    data = SamuelData(gens, M, poly, k, int(e), stab)
    if cross_check:
        data.koszul = koszul_euler(gens, M)
        if len(gens) == k and data.koszul != data.multiplicity:
            raise SerreMultError(f"Koszul Euler characteristic {data.koszul} != e_{k} = {data.multiplicity}")
    return data


def koszul_euler(seq, M: FPModule) -> int:
    """Alternating sum of homology lengths of K(seq) (x) M."""
    gens = _parse_all(M.ring, seq)
    try:
        samuel_function(M, gens, 1)
    except InfiniteLength as exc:
        raise NotPrimary("M / (seq) M has infinite length") from exc
    K = koszul_complex(gens, M.ring)
    T = tensor_with_module(K, M)
    return sum((-1) ** i * T.homology_length(i) for i in range(K.length + 1))


# -- theta ---------------------------------------------------------------------------------


def theta(M: FPModule, N: FPModule, max_len: int | None = None) -> int:
    """l(Tor_2i) - l(Tor_2i+1) on the certified periodic tail.

    Only the tail Tor modules need finite length, so M (x) N itself may not.
    """
    Q = M.ring
    if len(Q.relations) > 1:
        raise UnsupportedRing("theta needs a hypersurface ring")
    C = free_resolution(M, max_len)
    if C.complete:
        return 0
    if C.certificate is None:
        raise Inconclusive("no periodicity certificate")
    first = C.certificate.onset + (C.certificate.onset % 2)
    need = first + 4
    if C.length < need + 1:
        C = free_resolution(M, need + 1)
    if M.ring != N.ring:
        raise RingMismatch(f"{M.ring} vs {N.ring}")
    T = tensor_with_module(C, N)
    a, b, a2, b2 = (T.homology_length(i) for i in range(first, first + 4))
    if (a, b) != (a2, b2):
        raise SerreMultError("Tor lengths not periodic on the certified tail")
    return a - b


# -- Cohen-Macaulay and reports ------------------------------------------------------------


def ring_dimension(Q) -> int:
    return krull_dim(FPModule.free(Q))


def is_cohen_macaulay(M: FPModule) -> bool:
    """depth = n - pd over a polynomial ring, compared with the Krull dimension."""
    Q = M.ring
    if not Q.is_polynomial_ring:
        raise UnsupportedRing("Cohen-Macaulay test needs a polynomial ring")
    if M.is_zero():
        return False
    return Q.nvars - projective_dimension(M) == krull_dim(M)


@dataclass
class MultiplicityReport:
    dims: dict
    tor_lengths: list
    chi: int | None
    xi: int | None
    chi_higher: list
    case: str
    verdicts: list = field(default_factory=list)
    flags: list = field(default_factory=list)
    tensor_length: int = 0

    def verdict(self, name) -> str:
        return next(s for n, s in self.verdicts if n == name)

    @property
    def passed(self) -> bool:
        return all(s != FAIL for _, s in self.verdicts)

    def to_json(self):
        return {
            "dims": dict(self.dims),
            "tor_lengths": list(self.tor_lengths),
            "chi": self.chi,
            "xi": self.xi,
            "chi_higher": list(self.chi_higher),
            "case": self.case,
            "verdicts": [{"name": n, "status": s} for n, s in self.verdicts],
            "flags": list(self.flags),
            "higher_euler_convention": "sum over j >= i of (-1)^(j-i) l(Tor_j)",
        }


def _status(ok) -> str:
    return PASS if ok else FAIL


def verify_serre_pair(M: FPModule, N: FPModule) -> MultiplicityReport:
    Q = M.ring
    ell = check_serre(M, N)
    dims = {"M": krull_dim(M), "N": krull_dim(N), "A": ring_dimension(Q)}
    proper = dims["M"] + dims["N"] == dims["A"]
    case = "proper" if proper else "deficient"
    verdicts = [("serre_condition", PASS),
                ("dimension_inequality", _status(dims["M"] + dims["N"] <= dims["A"]))]
    flags = []
    try:
        prof = complete_tor(M, N)
    except Inconclusive:
        prof = None
    poly = Q.is_polynomial_ring
    if prof is None:
        lengths, chi_val, highers = tor(M, N).lengths, None, []
        flags.append("tor_profile_truncated")
    else:
        lengths = prof.lengths
        chi_val = alternating_sum(lengths)
        highers = higher_euler(lengths)
    xi_val = None
    ext_lengths, ext_complete = ext_profile(M, N)
    if ext_complete:
        xi_val = alternating_sum(ext_lengths)
    if any(lengths[1:]):
        flags.append("higher_tor_nonzero")

    if poly and chi_val is not None and not proper:
        verdicts.append(("vanishing", _status(chi_val == 0)))
    else:
        verdicts.append(("vanishing", NA))
    if poly and chi_val is not None and proper:
        verdicts.append(("positivity", _status(chi_val > 0)))
    else:
        verdicts.append(("positivity", NA))
    if poly and proper and chi_val is not None and is_cohen_macaulay(M) and is_cohen_macaulay(N):
        ok = not any(lengths[1:]) and chi_val == ell > 0
        verdicts.append(("cohen_macaulay_fast_path", _status(ok)))
    else:
        verdicts.append(("cohen_macaulay_fast_path", NA))
    if chi_val is not None and xi_val is not None:
        verdicts.append(("euler_form_identity", _status(chi_val == (-1) ** dims["N"] * xi_val)))
    else:
        verdicts.append(("euler_form_identity", NA))
    if poly and chi_val is not None:
        ok = higher_euler_holds(lengths)
        verdicts.append(("higher_euler", _status(ok)))
    else:
        verdicts.append(("higher_euler", NA))
    return MultiplicityReport(dims, lengths, chi_val, xi_val, highers, case, verdicts, flags, ell)


# -- reduction to the diagonal ---------------------------------------------------------------


def _rename(vec_dict, offset, total):
    """Embed exponents of n variables at position offset among total variables."""
    out = {}
    for (k, e), c in vec_dict.items():
        full = [0] * total
        full[offset:offset + len(e)] = e
        out[(k, tuple(full))] = c
    return out


def external_tensor(M: FPModule, N: FPModule, B) -> FPModule:
    """M boxtimes N over B = k[x..., y...]: coker(P (x) I | I (x) Q)."""
    n = M.ring.nvars
    m, r = len(M.degrees), len(N.degrees)
    degrees = tuple(a + b for a in M.degrees for b in N.degrees)
    vecs, vdeg = [], []
    for col, d in zip(M.relations, M.presentation.source.degrees):
        for j in range(r):
            vecs.append(_rename({(k * r + j, e): c for (k, e), c in col.items()}, 0, 2 * n))
            vdeg.append(d + N.degrees[j])
    for col, d in zip(N.relations, N.presentation.source.degrees):
        for i in range(m):
            vecs.append(_rename({(i * r + k, e): c for (k, e), c in col.items()}, n, 2 * n))
            vdeg.append(d + M.degrees[i])
    return FPModule(ModuleMap(FreeModule(B, vdeg), FreeModule(B, degrees), vecs, check=False))


@dataclass
class DiagonalCheck:
    agree: bool
    a_side: list
    b_side: list


def diagonal_reduction_check(M: FPModule, N: FPModule) -> DiagonalCheck:
    """Compare Tor^A(M, N) with Tor^B(M boxtimes N, B/diagonal)."""
    Q = M.ring
    if not Q.is_polynomial_ring:
        raise UnsupportedRing("diagonal reduction needs a polynomial ring")
    check_serre(M, N)
    R = Q.base
    names = list(R.variables)
    used = set(names)
    primed = []
    for v in names:
        w = v + "_2"
        while w in used:
            w += "_"
        used.add(w)
        primed.append(w)
    big = polynomial_ring(names + primed, R.field, str(R.order), tuple(R.weights) * 2 if R.weights else ())
    B = quotient_ring(big, [])
    box = external_tensor(M, N, B)
    diag = FPModule.cyclic(B, [big.var(a) - big.var(b) for a, b in zip(names, primed)])
    n = R.nvars
    a_side = tor(M, N, n).lengths
    b_side = tor(diag, box, 2 * n).lengths
    agree = b_side[:n + 1] == a_side and not any(b_side[n + 1:])
    return DiagonalCheck(agree, a_side, b_side[:n + 1])
