"""Dense exact matrices over one of the toolkit's scalar rings.

Rings are small singleton helpers (rationals, Gaussian rationals, Laurent
polynomials in eps, multivariate polynomials).  All values are immutable and
all operations are pure; inverses are computed exactly over the ring's
fraction field and verified by M * M^-1 == I before being returned.
"""

from gmpy2 import mpq

from ..errors import DimensionMismatch, NotNilpotent, RingMismatch, SingularLimit
from .laurent import LaurentPoly
from .multipoly import MultiPoly
from .scalars import GaussianRational, rat_str


class _QRing:
    name = "Q"
    is_field = True

    def coerce(self, x):
        return mpq(x)

    zero = property(lambda self: mpq(0))
    one = property(lambda self: mpq(1))

    def div_int(self, x, n):
        return x / n

    def entry_str(self, x):
        return rat_str(x)


class _QIRing:
    name = "Q(i)"
    is_field = True

    def coerce(self, x):
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(x)

    zero = property(lambda self: GaussianRational(0))
    one = property(lambda self: GaussianRational(1))

    def div_int(self, x, n):
        return self.coerce(x) / GaussianRational(n)

    def entry_str(self, x):
        return str(self.coerce(x))


class _LaurentRing:
    name = "Q(i)[eps,1/eps]"
    is_field = False

    def coerce(self, x):
        if isinstance(x, LaurentPoly):
            return x
        return LaurentPoly.const(x)

    zero = property(lambda self: LaurentPoly({}))
    one = property(lambda self: LaurentPoly({0: 1}))

    def div_int(self, x, n):
        inv = GaussianRational(mpq(1, n))
        return self.coerce(x) * LaurentPoly.const(inv)

    def entry_str(self, x):
        return str(self.coerce(x))


class PolyRing:
    """Polynomials over Q in a fixed variable tuple."""

    is_field = False

    def __init__(self, variables):
        self.vars = tuple(variables)
        self.name = "Q[%s]" % ",".join(self.vars)

    def coerce(self, x):
        if isinstance(x, MultiPoly):
            if x.vars != self.vars:
                raise RingMismatch("polynomial over %r, ring over %r" % (x.vars, self.vars))
            return x
        return MultiPoly.const(self.vars, x)

    @property
    def zero(self):
        return MultiPoly.zero(self.vars)

    @property
    def one(self):
        return MultiPoly.const(self.vars, 1)

    def div_int(self, x, n):
        return self.coerce(x) * mpq(1, n)

    def entry_str(self, x):
        return str(self.coerce(x))

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.vars == other.vars

    def __hash__(self):
        return hash(self.vars)


QQ = _QRing()
QI = _QIRing()
LAURENT = _LaurentRing()


class Matrix:
    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, entries):
        entries = tuple(tuple(ring.coerce(x) for x in row) for row in entries)
        if not entries or not entries[0]:
            raise DimensionMismatch("empty matrix")
        ncols = len(entries[0])
        if any(len(r) != ncols for r in entries):
            raise DimensionMismatch("ragged rows")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring, rows, cols=None):
        cols = rows if cols is None else cols
        return cls(ring, [[ring.zero] * cols for _ in range(rows)])

    @classmethod
    def diag(cls, ring, values):
        values = [ring.coerce(v) for v in values]
        n = len(values)
        return cls(ring, [[values[i] if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, ring, blocks):
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        rows = [[ring.zero] * m for _ in range(n)]
        r = c = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    rows[r + i][c + j] = ring.coerce(b.entries[i][j])
            r += b.rows
            c += b.cols
        return cls(ring, rows)

    # -- basics -----------------------------------------------------------
    def _check_ring(self, other):
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatch("%s vs %s" % (self.ring.name, other.ring.name))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash(self.entries)

    def is_zero(self):
        z = self.ring.zero
        return all(x == z for row in self.entries for x in row)

    def is_square(self):
        return self.rows == self.cols

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        self._check_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("add: %dx%d vs %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        return Matrix(
            self.ring,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Matrix(self.ring, [[-x for x in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return mat_mul(self, other)
        c = self.ring.coerce(other)
        return Matrix(self.ring, [[x * c for x in row] for row in self.entries])

    def __rmul__(self, other):
        c = self.ring.coerce(other)
        return Matrix(self.ring, [[c * x for x in row] for row in self.entries])

    def transpose(self):
        return Matrix(self.ring, list(zip(*self.entries)))

    def conj_transpose(self):
        if self.ring is QI:
            return Matrix(QI, [[x.conjugate() for x in row] for row in zip(*self.entries)])
        return self.transpose()

    # -- solving ------------------------------------------------------------
    def inverse(self):
        """Exact inverse over a field ring, verified by M * M^-1 == I."""
        if not self.ring.is_field:
            raise RingMismatch("inverse only over field rings, not %s" % self.ring.name)
        if not self.is_square():
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        a = [list(row) for row in self.entries]
        inv = [[self.ring.one if i == j else self.ring.zero for j in range(n)] for i in range(n)]
        zero = self.ring.zero
        for col in range(n):
            piv = None
            for r in range(col, n):
                if a[r][col] != zero:
                    piv = r
                    break
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            p = a[col][col]
            a[col] = [x / p for x in a[col]]
            inv[col] = [x / p for x in inv[col]]
            for r in range(n):
                if r == col:
                    continue
                f = a[r][col]
                if f == zero:
                    continue
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        out = Matrix(self.ring, inv)
        if mat_mul(self, out) != Matrix.identity(self.ring, n):
            raise ArithmeticError("inverse verification failed")
        return out

    # -- misc ---------------------------------------------------------------
    def map(self, fn, ring=None):
        ring = ring or self.ring
        return Matrix(ring, [[fn(x) for x in row] for row in self.entries])

    def to_strings(self):
        return [[self.ring.entry_str(x) for x in row] for row in self.entries]

    def __repr__(self):
        body = "; ".join(
            ", ".join(self.ring.entry_str(x) for x in row) for row in self.entries
        )
        return "Matrix[%s](%s)" % (self.ring.name, body)


def mat_mul(a, b):
    """Exact matrix product; dimension and ring checked."""
    a._check_ring(b)
    if a.cols != b.rows:
        raise DimensionMismatch("mul: %dx%d by %dx%d" % (a.rows, a.cols, b.rows, b.cols))
    bt = list(zip(*b.entries))
    zero = a.ring.zero
    out = []
    for row in a.entries:
        out_row = []
        for col in bt:
            s = zero
            for x, y in zip(row, col):
                s = s + x * y
            out_row.append(s)
        out.append(out_row)
    return Matrix(a.ring, out)


def commutator(a, b):
    """a*b - b*a for square matrices of equal size over one ring."""
    if not (a.is_square() and b.is_square() and a.rows == b.rows):
        raise DimensionMismatch("commutator needs equal square matrices")
    return mat_mul(a, b) - mat_mul(b, a)


def laurent_limit(m, context=""):
    """eps -> 0 limit of a Laurent matrix (Gaussian-rational result).

    Raises SingularLimit naming the first offending entry and its pole order.
    """
    if m.ring is not LAURENT:
        raise RingMismatch("laurent_limit needs a Laurent matrix")
    out = []
    for i, row in enumerate(m.entries):
        out_row = []
        for j, x in enumerate(row):
            po = x.pole_order()
            if po > 0:
                raise SingularLimit(i, j, po, entry=str(x), context=context)
            out_row.append(x.limit_at_zero())
        out.append(out_row)
    return Matrix(QI, out)


def nilpotent_exp(m, max_order=8):
    """Exact exp(m) = sum m^n / n! for nilpotent m.

    Nilpotency is established by computing powers; NotNilpotent if m^max_order
    is still nonzero.  No truncation: the series terminates.
    """
    if not m.is_square():
        raise DimensionMismatch("exp of a non-square matrix")
    ring = m.ring
    total = Matrix.identity(ring, m.rows)
    power = Matrix.identity(ring, m.rows)
    fact = 1
    for n in range(1, max_order + 1):
        power = mat_mul(power, m)
        if power.is_zero():
            return total
        fact *= n
        total = total + power.map(lambda x: ring.div_int(x, fact))
    raise NotNilpotent("matrix power %d is still nonzero" % max_order)
