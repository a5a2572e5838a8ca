"""Independent brute-force oracles built on sympy.

Nothing here imports serremult.  Graded pieces of S/I are enumerated as
standard monomials of a sympy Groebner basis and complexes are cut into
finite-dimensional degree slices whose homology is measured with exact
matrix ranks.  Tests freeze values produced here and also re-run the cheap
cases live.
"""

from itertools import combinations, combinations_with_replacement

import sympy as sp


def monomials_of_degree(gens, d):
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(gens, d):
        out.append(sp.Mul(*combo))
    return out


class Quotient:
    """Degree slices of S/I, where I is homogeneous."""

    def __init__(self, ideal, gens):
        self.gens = gens
        ideal = [sp.sympify(f) for f in ideal if sp.sympify(f) != 0]
        self.G = sp.groebner(ideal, *gens, order="grevlex") if ideal else None
        if self.G is not None:
            self.leads = [sp.Poly(g, *gens).monoms(order="grevlex")[0] for g in self.G.exprs]
        else:
            self.leads = []
        self._basis = {}

    def _standard(self, mono):
        e = sp.Poly(mono, *self.gens).monoms()[0]
        return not any(all(a >= b for a, b in zip(e, lt)) for lt in self.leads)

    def basis(self, d):
        if d not in self._basis:
            self._basis[d] = [m for m in monomials_of_degree(self.gens, d) if self._standard(m)]
        return self._basis[d]

    def reduce(self, f):
        f = sp.expand(f)
        if self.G is None or f == 0:
            return f
        return self.G.reduce(f)[1]

    def coords(self, f, d):
        """Coordinates of the normal form of f in basis(d)."""
        r = sp.Poly(self.reduce(f), *self.gens) if f != 0 else None
        basis = self.basis(d)
        vec = [0] * len(basis)
        if r is None or r.is_zero:
            return vec
        index = {sp.Poly(m, *self.gens).monoms()[0]: i for i, m in enumerate(basis)}
        for mono, c in zip(r.monoms(), r.coeffs()):
            vec[index[mono]] = c
        return vec


def _rank(rows, ncols):
    if not rows or ncols == 0:
        return 0
    return sp.Matrix(rows).rank()


def complex_homology(Q, ranks_degrees, maps, maxdeg):
    """Total homology dimensions of F (x) S/I for a free complex F.

    ranks_degrees[i] lists generator degrees of F_i; maps[i] is the matrix of
    d_i : F_i -> F_{i-1} (list of rows, sympy expressions), maps[0] unused.
    Sums dim H_i over degrees 0..maxdeg.
    """
    n = len(ranks_degrees)
    totals = [0] * n
    for d in range(maxdeg + 1):
        dims = []
        for i in range(n):
            dims.append(sum(len(Q.basis(d - a)) for a in ranks_degrees[i]))
        ranks = [0] * (n + 1)
        for i in range(1, n):
            src, tgt = ranks_degrees[i], ranks_degrees[i - 1]
            cols = []
            for j, a in enumerate(src):
                for m in Q.basis(d - a):
                    col = []
                    for r, b in enumerate(tgt):
                        col.extend(Q.coords(sp.expand(maps[i][r][j] * m), d - b))
                    cols.append(col)
            # rows of a transposed matrix: rank is the same
            ranks[i] = _rank(cols, dims[i - 1]) if cols else 0
        for i in range(n):
            totals[i] += dims[i] - ranks[i] - ranks[i + 1]
    return totals


def koszul_matrices(seq, gens):
    """Koszul complex on seq with d(e_J) = sum (-1)^(j) f_{J_j} e_{J - J_j}."""
    k = len(seq)
    seq = [sp.sympify(f) for f in seq]
    degs = [sp.Poly(f, *gens).total_degree() for f in seq]
    bases = [list(combinations(range(k), p)) for p in range(k + 1)]
    ranks_degrees = [[sum(degs[t] for t in J) for J in B] for B in bases]
    maps = [None]
    for p in range(1, k + 1):
        src, tgt = bases[p], bases[p - 1]
        pos = {J: r for r, J in enumerate(tgt)}
        mat = [[0] * len(src) for _ in tgt]
        for c, J in enumerate(src):
            for j, t in enumerate(J):
                rest = J[:j] + J[j + 1:]
                mat[pos[rest]][c] = (-1) ** j * seq[t]
        maps.append(mat)
    return ranks_degrees, maps


def koszul_tor(ideal, seq, gens, maxdeg):
    """dim H_i(K(seq) (x) S/I) summed over degrees <= maxdeg.

    When seq is a regular sequence this is l(Tor_i(S/(seq), S/I)).
    """
    Q = Quotient(ideal, gens)
    rd, maps = koszul_matrices(seq, gens)
    return complex_homology(Q, rd, maps, maxdeg)


def quotient_length(ideal, gens, maxdeg):
    Q = Quotient(ideal, gens)
    return sum(len(Q.basis(d)) for d in range(maxdeg + 1))


def hilbert_function(ideal, gens, d):
    return len(Quotient(ideal, gens).basis(d))


if __name__ == "__main__":
    x, y, z, w = sp.symbols("x y z w")
    two_planes = [x * z, x * w, y * z, y * w]
    print("two planes Tor:", koszul_tor(two_planes, [x - z, y - w], [x, y, z, w], 8))
    print("two planes + diagonal length:",
          quotient_length(two_planes + [x - z, y - w], [x, y, z, w], 8))
