"""Finite-dimensional so(1,3) representations used as contraction inputs.

Generators are stored as the six independent S_{mu nu} (mu < nu) over Q(i).
The four-vector rep acts on column(X1, X2, X3, X0) with

    S_ab = eps_abc diag(s_c, 0),   S_0a = [[0, -k_a^H], [k_a, 0]]

where k_a = i e_a (row) and ^H is the conjugate transpose.  The commutation
relations [S_mn, S_rs] = i(g_mr S_ns + g_ns S_mr - g_ms S_nr - g_nr S_ms)
hold exactly with metric g = diag(-1, 1, 1, 1).
"""

from ..errors import DimensionMismatch
from ..exact.matrix import Matrix, QI, commutator, mat_mul
from ..exact.scalars import GaussianRational
from .catalog import eps3, spin1

METRIC = (-1, 1, 1, 1)

_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def _k_row(a):
    return Matrix(QI, [[GaussianRational(0, 1 if c == a else 0) for c in range(3)]])


class LorentzRep:
    """Named so(1,3) rep: generators indexed by antisymmetric pairs."""

    def __init__(self, name, gens):
        self.name = name
        self.gens = dict(gens)  # {(mu, nu): Matrix over QI}, mu < nu
        self.dim = self.gens[(0, 1)].rows

    def S(self, mu, nu):
        if mu == nu:
            return Matrix.zeros(QI, self.dim)
        if mu < nu:
            return self.gens[(mu, nu)]
        return -self.gens[(nu, mu)]

    def rotations(self):
        """S_a = (1/2) eps_abc S_bc."""
        out = []
        for a in range(3):
            m = Matrix.zeros(QI, self.dim)
            for b in range(1, 4):
                for c in range(1, 4):
                    sgn = eps3(a, b - 1, c - 1)
                    if sgn:
                        m = m + self.S(b, c) * GaussianRational(sgn) * GaussianRational("1/2")
            out.append(m)
        return out

    def boosts(self):
        return [self.S(0, a) for a in (1, 2, 3)]

    def __repr__(self):
        return "LorentzRep(%s, dim=%d)" % (self.name, self.dim)


def vector_rep():
    """Four-vector rep on column(X, X0)."""
    gens = {}
    for a in range(3):
        for b in range(a + 1, 3):
            m = Matrix.zeros(QI, 4)
            blk = Matrix.zeros(QI, 3)
            for c in range(3):
                if eps3(a, b, c):
                    blk = blk + spin1(c) * GaussianRational(eps3(a, b, c))
            rows = [list(r) + [GaussianRational(0)] for r in blk.entries]
            rows.append([GaussianRational(0)] * 4)
            gens[(a + 1, b + 1)] = Matrix(QI, rows)
    for a in range(3):
        k = _k_row(a)
        kH = k.conj_transpose()
        rows = []
        for i in range(3):
            rows.append([GaussianRational(0)] * 3 + [-kH.entries[i][0]])
        rows.append(list(k.entries[0]) + [GaussianRational(0)])
        gens[(0, a + 1)] = Matrix(QI, rows)
    return LorentzRep("D(1/2,1/2)", gens)


def scalar_rep():
    gens = {(mu, nu): Matrix.zeros(QI, 1) for mu, nu in _PAIRS}
    return LorentzRep("D(0,0)", gens)


def tensor_rep():
    """D(1,0) + D(0,1) on column(X, Y): S_ab = eps_abc diag(s_c, s_c),
    S_0a = [[0, -s_a], [s_a, 0]]."""
    gens = {}
    for a in range(3):
        for b in range(a + 1, 3):
            blk = Matrix.zeros(QI, 3)
            for c in range(3):
                if eps3(a, b, c):
                    blk = blk + spin1(c) * GaussianRational(eps3(a, b, c))
            gens[(a + 1, b + 1)] = Matrix.block_diag(QI, [blk, blk])
    zero3 = Matrix.zeros(QI, 3)
    for a in range(3):
        s = spin1(a)
        rows = []
        for i in range(3):
            rows.append(list(zero3.entries[i]) + [-x for x in s.entries[i]])
        for i in range(3):
            rows.append(list(s.entries[i]) + list(zero3.entries[i]))
        gens[(0, a + 1)] = Matrix(QI, rows)
    return LorentzRep("D(1,0)+D(0,1)", gens)


def direct_sum(a, b):
    if not (isinstance(a, LorentzRep) and isinstance(b, LorentzRep)):
        raise DimensionMismatch("direct_sum needs two Lorentz reps")
    gens = {
        pair: Matrix.block_diag(QI, [a.gens[pair], b.gens[pair]]) for pair in _PAIRS
    }
    return LorentzRep("%s + %s" % (a.name, b.name), gens)


def vector_plus_scalar_rep():
    """Five-dimensional D(1/2,1/2) + D(0,0) on column(X, X0, X4)."""
    r = direct_sum(vector_rep(), scalar_rep())
    r.name = "D(1/2,1/2)+D(0,0)"
    return r


def medium_rep():
    """Twelve-dimensional rep on column(B, E, D, H): two tensor blocks."""
    r = direct_sum(tensor_rep(), tensor_rep())
    r.name = "2(D(1,0)+D(0,1))"
    return r


STANDARD_LORENTZ = {
    "D12": vector_rep,
    "D12+D00": vector_plus_scalar_rep,
    "D10+D01": tensor_rep,
    "BI12": medium_rep,
}


def standard_lorentz_rep(name):
    key = name.replace(" ", "").replace("(", "").replace(")", "").replace("/", "").replace(",", "")
    aliases = {
        "D12": "D12",
        "D1212": "D12",
        "D12+D00": "D12+D00",
        "D1212+D00": "D12+D00",
        "D10+D01": "D10+D01",
        "BI12": "BI12",
    }
    if name in STANDARD_LORENTZ:
        return STANDARD_LORENTZ[name]()
    if key in aliases:
        return STANDARD_LORENTZ[aliases[key]]()
    raise KeyError("unknown Lorentz rep %r (choose from %s)" % (name, sorted(STANDARD_LORENTZ)))


def so13_check(rep):
    """Exact so(1,3) commutator verification; returns failures (empty = pass)."""
    bad = []
    g = METRIC
    idx = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

    def S(mu, nu):
        return rep.S(mu, nu)

    for m, n in idx:
        for r, s in idx:
            lhs = commutator(S(m, n), S(r, s))
            rhs = Matrix.zeros(QI, rep.dim)
            i = GaussianRational(0, 1)
            if g[m] and m == r:
                rhs = rhs + S(n, s) * (i * GaussianRational(g[m]))
            if g[n] and n == s:
                rhs = rhs + S(m, r) * (i * GaussianRational(g[n]))
            if g[m] and m == s:
                rhs = rhs - S(n, r) * (i * GaussianRational(g[m]))
            if g[n] and n == r:
                rhs = rhs - S(m, s) * (i * GaussianRational(g[n]))
            if lhs != rhs:
                bad.append(((m, n), (r, s)))
    return bad
