"""Catalog of the ten indecomposable boost/rotation multiplets of hg(1,3).

Each multiplet is an ordered list of named slots (scalars A, B, C and vectors
R, U, W, K, N) with the boost action

    A' = A                      R' = R
    B' = B + v.R                U' = U + v A
    C' = C + v.U + v^2/2 A      W' = W + v x R
                                K' = K + v x R + v A
                                N' = N + v x W + v B + v (v.R) - v^2/2 R

stored verbatim as an exact polynomial matrix Lambda(v).  Rotation generators
use spin-one blocks (s_a)_{bc} = -i eps_{abc} on vector slots; boost
generators are derived from Lambda, so exp(i v.eta) == Lambda(v) is a theorem
checked by the test suite rather than a construction input.
"""

from collections import namedtuple

from gmpy2 import mpq

from ..errors import DimensionMismatch, NotOrthogonal, UnknownLabel
from ..exact.matrix import Matrix, PolyRing, QI, QQ, commutator, mat_mul
from ..exact.multipoly import MultiPoly
from ..exact.scalars import GaussianRational

Slot = namedtuple("Slot", ["name", "kind"])

BOOST_VARS = ("v1", "v2", "v3")
VRING = PolyRing(BOOST_VARS)

EPS3 = {}
for _i, _j, _k, _s in [
    (0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1),
    (0, 2, 1, -1), (2, 1, 0, -1), (1, 0, 2, -1),
]:
    EPS3[(_i, _j, _k)] = _s


def eps3(i, j, k):
    return EPS3.get((i, j, k), 0)


def spin1(a):
    """Spin-one rotation generator, (s_a)_{bc} = -i eps_{abc}."""
    rows = [[GaussianRational(0, -eps3(a, b, c)) for c in range(3)] for b in range(3)]
    return Matrix(QI, rows)


class SlotLayout:
    """Ordered slot list; exposes index ranges for each named slot."""

    def __init__(self, slots):
        self.slots = tuple(Slot(n, k) for n, k in slots)
        names = [s.name for s in self.slots]
        if len(set(names)) != len(names):
            raise ValueError("slot names must be unique in a layout")
        self.offsets = {}
        pos = 0
        for s in self.slots:
            width = 3 if s.kind == "vector" else 1
            self.offsets[s.name] = (pos, width)
            pos += width
        self.dimension = pos

    def kind(self, name):
        for s in self.slots:
            if s.name == name:
                return s.kind
        raise KeyError(name)

    def names(self):
        return [s.name for s in self.slots]

    def vector_slots(self):
        return [s.name for s in self.slots if s.kind == "vector"]

    def scalar_slots(self):
        return [s.name for s in self.slots if s.kind == "scalar"]

    def __eq__(self, other):
        return isinstance(other, SlotLayout) and self.slots == other.slots

    def __repr__(self):
        return "SlotLayout(%s)" % ", ".join("%s:%s" % (s.name, s.kind) for s in self.slots)


# The ten admissible labels, with slot order fixed once and for all.
CATALOG_LAYOUTS = {
    (0, 1, 0): [("A", "scalar")],
    (1, 0, 0): [("R", "vector")],
    (1, 1, 0): [("R", "vector"), ("B", "scalar")],
    (1, 1, 1): [("U", "vector"), ("A", "scalar")],
    (1, 2, 1): [("U", "vector"), ("A", "scalar"), ("C", "scalar")],
    (2, 0, 0): [("W", "vector"), ("R", "vector")],
    (2, 1, 0): [("R", "vector"), ("W", "vector"), ("B", "scalar")],
    (2, 1, 1): [("A", "scalar"), ("K", "vector"), ("R", "vector")],
    (2, 2, 1): [("A", "scalar"), ("B", "scalar"), ("K", "vector"), ("R", "vector")],
    (3, 1, 1): [("B", "scalar"), ("N", "vector"), ("W", "vector"), ("R", "vector")],
}

# boost action of each slot name: list of (source slot, shape) contributions
# added to the slot itself.  Shapes: "dot" = v.X (scalar <- vector),
# "vecscale" = v X (vector <- scalar), "cross" = v x X, "vdotv" = v(v.X),
# "half_v2" = +v^2/2 X, "neg_half_v2" = -v^2/2 X.
BOOST_RULES = {
    "A": [],
    "R": [],
    "B": [("R", "dot")],
    "U": [("A", "vecscale")],
    "C": [("U", "dot"), ("A", "half_v2")],
    "W": [("R", "cross")],
    "K": [("R", "cross"), ("A", "vecscale")],
    "N": [("W", "cross"), ("B", "vecscale"), ("R", "vdotv"), ("R", "neg_half_v2")],
}


def _v(i):
    return MultiPoly.var(BOOST_VARS, BOOST_VARS[i])


def _v2():
    return _v(0) * _v(0) + _v(1) * _v(1) + _v(2) * _v(2)


def _shape_block(shape, src_kind, dst_kind):
    """Polynomial block (dst x src) for one boost contribution."""
    zero = MultiPoly.zero(BOOST_VARS)
    if shape == "dot":
        return [[_v(0), _v(1), _v(2)]]
    if shape == "vecscale":
        return [[_v(0)], [_v(1)], [_v(2)]]
    if shape == "cross":
        # (v x X)_b = eps_bjc v_j X_c
        return [
            [sum((_v(j) * eps3(b, j, c) for j in range(3)), zero) for c in range(3)]
            for b in range(3)
        ]
    if shape == "vdotv":
        return [[_v(b) * _v(c) for c in range(3)] for b in range(3)]
    if shape == "half_v2":
        h = _v2() * mpq(1, 2)
        if dst_kind == "scalar" and src_kind == "scalar":
            return [[h]]
        return [[h if b == c else zero for c in range(3)] for b in range(3)]
    if shape == "neg_half_v2":
        h = _v2() * mpq(-1, 2)
        return [[h if b == c else zero for c in range(3)] for b in range(3)]
    raise ValueError(shape)


def _boost_poly(layout):
    dim = layout.dimension
    zero = MultiPoly.zero(BOOST_VARS)
    one = MultiPoly.const(BOOST_VARS, 1)
    rows = [[one if i == j else zero for j in range(dim)] for i in range(dim)]
    for slot in layout.slots:
        dpos, dw = layout.offsets[slot.name]
        for src, shape in BOOST_RULES[slot.name]:
            spos, sw = layout.offsets[src]
            block = _shape_block(shape, layout.kind(src), slot.kind)
            for i in range(dw):
                for j in range(sw):
                    rows[dpos + i][spos + j] = rows[dpos + i][spos + j] + block[i][j]
    return Matrix(VRING, rows)


class GalileiRep:
    """One catalog entry: label, layout, exact boost map, generators."""

    def __init__(self, label, layout):
        self.label = tuple(label)
        self.layout = layout
        self.boost_poly = _boost_poly(layout)
        self.rotation_generators = [self._rot_gen(a) for a in range(3)]
        self.boost_generators = [self._eta(a) for a in range(3)]

    @property
    def dimension(self):
        return self.layout.dimension

    @property
    def name(self):
        return "D(%d,%d,%d)" % self.label

    def _rot_gen(self, a):
        blocks = []
        for s in self.layout.slots:
            if s.kind == "vector":
                blocks.append(spin1(a))
            else:
                blocks.append(Matrix.zeros(QI, 1))
        return Matrix.block_diag(QI, blocks)

    def _eta(self, a):
        # eta_a = -i * d Lambda / d v_a at v = 0
        name = BOOST_VARS[a]
        rows = []
        for row in self.boost_poly.entries:
            out = []
            for p in row:
                lin = p.diff(name).eval({"v1": 0, "v2": 0, "v3": 0})
                out.append(GaussianRational(0, -lin))
            rows.append(out)
        return Matrix(QI, rows)

    def boost_matrix(self, v):
        """Lambda(v) at an exact rational 3-vector v."""
        vals = {"v1": mpq(v[0]), "v2": mpq(v[1]), "v3": mpq(v[2])}
        return Matrix(QQ, [[p.eval(vals) for p in row] for row in self.boost_poly.entries])

    def rotation_block(self, rot):
        """Block matrix acting as rot on vector slots, identity on scalars."""
        check_rotation(rot)
        blocks = []
        for s in self.layout.slots:
            if s.kind == "vector":
                blocks.append(rot)
            else:
                blocks.append(Matrix.identity(QQ, 1))
        return Matrix.block_diag(QQ, blocks)

    def __repr__(self):
        return "GalileiRep(%s, dim=%d)" % (self.name, self.dimension)


def check_rotation(rot):
    """Exact orthogonality and det = +1 for a rational 3x3 matrix."""
    if not (isinstance(rot, Matrix) and rot.rows == 3 and rot.cols == 3):
        raise NotOrthogonal("rotation must be a 3x3 rational matrix")
    if mat_mul(rot.transpose(), rot) != Matrix.identity(QQ, 3):
        raise NotOrthogonal("matrix is not exactly orthogonal")
    e = rot.entries
    det = (
        e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1])
        - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0])
        + e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0])
    )
    if det != 1:
        raise NotOrthogonal("determinant is %s, not 1" % det)


_CACHE = {}


def build_galilei_rep(label):
    """Catalog lookup; UnknownLabel for any triplet outside the ten."""
    label = tuple(int(x) for x in label)
    if label not in CATALOG_LAYOUTS:
        raise UnknownLabel("no indecomposable multiplet D(%d,%d,%d)" % label)
    if label not in _CACHE:
        _CACHE[label] = GalileiRep(label, SlotLayout(CATALOG_LAYOUTS[label]))
    return _CACHE[label]


def all_labels():
    return sorted(CATALOG_LAYOUTS)


def rotation_matrix(rep, rot):
    """Rotation action on a catalog rep (rot exact orthogonal, det 1)."""
    return rep.rotation_block(rot)


def direct_sum_galilei(a, b):
    """Block-diagonal boost/rotation action on concatenated layouts.

    The result is a plain carrier (layout + generator blocks), not a catalog
    entry: direct sums are decomposable by construction.
    """
    names_a = set(a.layout.names())
    slots = list(a.layout.slots)
    rename = {}
    for s in b.layout.slots:
        n = s.name
        while n in names_a:
            n += "'"
        rename[s.name] = n
        names_a.add(n)
        slots.append(Slot(n, s.kind))
    layout = SlotLayout([(s.name, s.kind) for s in slots])
    S = [Matrix.block_diag(QI, [a.rotation_generators[i], b.rotation_generators[i]]) for i in range(3)]
    eta = [Matrix.block_diag(QI, [a.boost_generators[i], b.boost_generators[i]]) for i in range(3)]
    return layout, S, eta


# -- structural verification -------------------------------------------------

WVARS = ("v1", "v2", "v3", "w1", "w2", "w3")
WRING = PolyRing(WVARS)


def _lift_vw(m, names):
    """Lift a Lambda(v) polynomial matrix into the (v, w) ring."""
    sub = {BOOST_VARS[i]: MultiPoly.var(WVARS, names[i]) for i in range(3)}
    return Matrix(WRING, [[p.substitute(sub) for p in row] for row in m.entries])


STANDARD_ROTATIONS = {
    # exact rational rotations used in symbolic checks
    "z_3_4_5": [["3/5", "-4/5", 0], ["4/5", "3/5", 0], [0, 0, 1]],
    "x_3_4_5": [[1, 0, 0], [0, "3/5", "-4/5"], [0, "4/5", "3/5"]],
    "perm_xyz": [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
    "flip_xy": [[0, 1, 0], [1, 0, 0], [0, 0, -1]],
}


def check_rep(rep):
    """Verify every structural invariant of a catalog rep, exactly.

    Returns a list of (check_name, passed, detail) records; failures carry a
    counterexample description instead of raising.
    """
    checks = []

    def record(name, ok, detail=""):
        checks.append({"name": name, "pass": bool(ok), "detail": detail})

    lam = rep.boost_poly
    dim = rep.dimension
    record("dimension", lam.rows == dim and lam.cols == dim,
           "Lambda is %dx%d for layout dimension %d" % (lam.rows, lam.cols, dim))

    ident = Matrix.identity(QQ, dim)
    record("boost_at_zero", rep.boost_matrix((0, 0, 0)) == ident, "Lambda(0) == I")

    lv = _lift_vw(lam, ("v1", "v2", "v3"))
    lw = _lift_vw(lam, ("w1", "w2", "w3"))
    sub_sum = {
        BOOST_VARS[i]: MultiPoly.var(WVARS, WVARS[i]) + MultiPoly.var(WVARS, WVARS[3 + i])
        for i in range(3)
    }
    lvw = Matrix(WRING, [[p.substitute(sub_sum) for p in row] for row in lam.entries])
    ok = mat_mul(lv, lw) == lvw
    record("group_law", ok, "Lambda(v) Lambda(w) == Lambda(v+w), symbolic in v, w")

    s = rep.rotation_generators
    eta = rep.boost_generators
    ok = True
    bad = ""
    for a in range(3):
        for b in range(3):
            target = Matrix.zeros(QI, dim)
            for c in range(3):
                if eps3(a, b, c):
                    target = target + s[c] * GaussianRational(0, eps3(a, b, c))
            if commutator(s[a], s[b]) != target:
                ok, bad = False, "[S_%d, S_%d]" % (a + 1, b + 1)
    record("rotation_commutators", ok, bad or "[S_a, S_b] == i eps_abc S_c")

    ok = True
    bad = ""
    for a in range(3):
        for b in range(3):
            target = Matrix.zeros(QI, dim)
            for c in range(3):
                if eps3(a, b, c):
                    target = target + eta[c] * GaussianRational(0, eps3(a, b, c))
            if commutator(eta[a], s[b]) != target:
                ok, bad = False, "[eta_%d, S_%d]" % (a + 1, b + 1)
            if not commutator(eta[a], eta[b]).is_zero():
                ok, bad = False, "[eta_%d, eta_%d] != 0" % (a + 1, b + 1)
    record("boost_commutators", ok, bad or "[eta_a, S_b] == i eps_abc eta_c, [eta_a, eta_b] == 0")

    ok = True
    for a in range(3):
        p = eta[a]
        nil = False
        for _ in range(3):
            p = mat_mul(p, eta[a])
            if p.is_zero():
                nil = True
                break
        ok = ok and nil
    record("eta_nilpotent", ok, "eta_a^k == 0 with k <= 3")

    # exp(i v.eta) == Lambda(v), symbolically: i*eta_a is the real linear part
    lin = Matrix.zeros(VRING, dim)
    for a in range(3):
        va = MultiPoly.var(BOOST_VARS, BOOST_VARS[a])
        block = Matrix(
            VRING,
            [[va * (GaussianRational(0, 1) * x).re for x in row] for row in eta[a].entries],
        )
        lin = lin + block
    from ..exact.matrix import nilpotent_exp

    record("exp_eta_is_boost", nilpotent_exp(lin, max_order=4) == lam,
           "exp(i v.eta) reproduces Lambda(v) including quadratic terms")

    ok = True
    for rname, rows in STANDARD_ROTATIONS.items():
        rot = Matrix(QQ, rows)
        rotm = rep.rotation_block(rot)
        rv = [
            sum(
                (MultiPoly.var(BOOST_VARS, BOOST_VARS[j]) * rot.entries[i][j] for j in range(3)),
                MultiPoly.zero(BOOST_VARS),
            )
            for i in range(3)
        ]
        lam_rv = Matrix(
            VRING,
            [[p.substitute({BOOST_VARS[i]: rv[i] for i in range(3)}) for p in row] for row in lam.entries],
        )
        rot_poly = rotm.map(lambda q: MultiPoly.const(BOOST_VARS, q), ring=VRING)
        # rot is orthogonal so the block inverse is the block transpose
        lhs = mat_mul(mat_mul(rot_poly, lam), rot_poly.transpose())
        if lam_rv != lhs:
            ok = False
    record("rotation_covariance", ok, "Lambda(R v) == Rot Lambda(v) Rot^T for exact rotations")

    return checks
