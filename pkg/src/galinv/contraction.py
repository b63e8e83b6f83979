"""Contraction engine: scale boosts by eps, conjugate, take the exact limit.

The standard contraction matrices V1..V7 carry stored, verified inverses in
the Laurent ring; contract() computes S'_ab = V S_ab V^-1 and the limit of
eps V S_0a V^-1, then identifies the resulting multiplet.  contract_fields()
is the separate solution-space operation: it rescales field components by
eps powers (read off a slot-diagonal V) together with d/dx0 -> eps d/dt.
"""

from collections import namedtuple

from .errors import DimensionMismatch, GalinvError, NotARep, SingularLimit
from .exact.laurent import LaurentPoly
from .exact.matrix import LAURENT, Matrix, QI, mat_mul
from .exact.scalars import GaussianRational
from .reps.catalog import eps3
from .reps.identify import identify_rep


class ContractionMatrix:
    """Named eps-dependent similarity transform with stored exact inverse."""

    def __init__(self, name, matrix, inverse):
        if matrix.ring is not LAURENT or inverse.ring is not LAURENT:
            raise GalinvError("contraction matrices live in the Laurent ring")
        if mat_mul(matrix, inverse) != Matrix.identity(LAURENT, matrix.rows):
            raise GalinvError("stored inverse fails V * V^-1 == I for %s" % name)
        self.name = name
        self.matrix = matrix
        self.inverse = inverse
        self.dim = matrix.rows

    def __repr__(self):
        return "ContractionMatrix(%s, %dx%d)" % (self.name, self.dim, self.dim)


def _eps(p=1):
    return LaurentPoly.eps(p)


def _lc(x):
    return LaurentPoly.const(x)


def _diag(name, powers):
    m = Matrix.diag(LAURENT, [_eps(p) if p else _lc(1) for p in powers])
    minv = Matrix.diag(LAURENT, [_eps(-p) if p else _lc(1) for p in powers])
    return ContractionMatrix(name, m, minv)


def _block(name, a, b):
    m = Matrix.block_diag(LAURENT, [a.matrix, b.matrix])
    minv = Matrix.block_diag(LAURENT, [a.inverse, b.inverse])
    return ContractionMatrix(name, m, minv)


def _v3():
    half = GaussianRational("1/2")
    one = GaussianRational(1)
    z = LaurentPoly({})
    rows = [
        [_lc(one), z, z, z, z],
        [z, _lc(one), z, z, z],
        [z, z, _lc(one), z, z],
        [z, z, z, LaurentPoly({1: -half}), LaurentPoly({1: half})],
        [z, z, z, LaurentPoly({-1: one}), LaurentPoly({-1: one})],
    ]
    inv = [
        [_lc(one), z, z, z, z],
        [z, _lc(one), z, z, z],
        [z, z, _lc(one), z, z],
        [z, z, z, LaurentPoly({-1: -one}), LaurentPoly({1: half})],
        [z, z, z, LaurentPoly({-1: one}), LaurentPoly({1: half})],
    ]
    return ContractionMatrix("V3", Matrix(LAURENT, rows), Matrix(LAURENT, inv))


def standard_matrix(name):
    name = name.upper()
    if name == "V1":
        return _diag("V1", [1, 1, 1, 0])
    if name == "V2":
        return _diag("V2", [0, 0, 0, 1])
    if name == "V3":
        return _v3()
    if name == "V4":
        return _diag("V4", [1, 1, 1, 0, 0, 0])
    if name == "V5":
        return _diag("V5", [0, 0, 0, 1, 1, 1])
    if name == "V6":
        return _block("V6", standard_matrix("V4"), standard_matrix("V5"))
    if name == "V7":
        return _block("V7", standard_matrix("V5"), standard_matrix("V4"))
    raise KeyError("unknown contraction matrix %r (V1..V7)" % name)


ContractionResult = namedtuple(
    "ContractionResult",
    ["input", "V", "rotations", "boosts", "identified_label", "basis_map"],
)


def contract(rep, V):
    """Contract a Lorentz rep with V; exact limit + identification.

    Raises SingularLimit (with the offending generator and entry) when the
    eps -> 0 limit does not exist, and NotARep if the limit were to violate
    the bracket table (an implementation bug, surfaced loudly).
    """
    if rep.dim != V.dim:
        raise DimensionMismatch("rep dim %d vs V dim %d" % (rep.dim, V.dim))

    def lift(m):
        return m.map(lambda x: LaurentPoly.const(x), ring=LAURENT)

    from .exact.matrix import laurent_limit

    conj = {}
    for pair, gen in rep.gens.items():
        conj[pair] = mat_mul(mat_mul(V.matrix, lift(gen)), V.inverse)

    rot = []
    for a in range(3):
        m = Matrix.zeros(LAURENT, rep.dim)
        for b in range(1, 4):
            for c in range(b + 1, 4):
                sgn = eps3(a, b - 1, c - 1)
                if sgn:
                    m = m + conj[(b, c)] * _lc(GaussianRational(sgn))
        rot.append(laurent_limit(m, context="rotation S_%d" % (a + 1)))

    boosts = []
    for a in range(3):
        scaled = conj[(0, a + 1)] * _eps(1)
        boosts.append(laurent_limit(scaled, context="boost eta_%d" % (a + 1)))

    ident = identify_rep(rot, boosts)  # raises NotARep on bracket failure
    if isinstance(ident, tuple):
        label, P = ident
    else:
        label, P = ident, None
    return ContractionResult(rep.name, V.name, rot, boosts, label, P)


SubstitutionTable = namedtuple("SubstitutionTable", ["field_powers", "time_power"])


def contract_fields(components, V, time_power=1):
    """eps-scaling table for solution components under a slot-diagonal V.

    components: list of (name, kind) with kind "scalar" (width 1) or
    "vector" (width 3).  Old fields satisfy old = V * new, so a diagonal
    entry eps^k means old = eps^k new; d/dx0 picks up eps^time_power.
    """
    widths = [3 if kind == "vector" else 1 for _, kind in components]
    if sum(widths) != V.dim:
        raise DimensionMismatch(
            "components span %d, V is %dx%d" % (sum(widths), V.dim, V.dim)
        )
    zero = LaurentPoly({})
    powers = {}
    pos = 0
    for (name, kind), w in zip(components, widths):
        ks = set()
        for i in range(pos, pos + w):
            for j in range(V.dim):
                entry = V.matrix.entries[i][j]
                if i == j:
                    if len(entry.coeffs) != 1:
                        raise GalinvError(
                            "V is not monomial-diagonal on component %r" % name
                        )
                    (k, c), = entry.coeffs.items()
                    if c != GaussianRational(1):
                        raise GalinvError(
                            "V has a non-unit diagonal on component %r" % name
                        )
                    ks.add(k)
                elif entry != zero:
                    raise GalinvError("V mixes component %r with others" % name)
        if len(ks) != 1:
            raise GalinvError("component %r spans mixed eps powers" % name)
        powers[name] = ks.pop()
        pos += w
    return SubstitutionTable(powers, time_power)
