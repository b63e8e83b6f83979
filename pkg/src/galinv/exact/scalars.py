"""Exact scalar types: rationals and Gaussian rationals.

Rational numbers are gmpy2.mpq values: arbitrary precision, always in lowest
terms with a positive denominator, hashable and immutable.  GaussianRational
adjoins the imaginary unit structurally (a pair of rationals), which is all
the generator algebra needs; no floating point anywhere.
"""

from gmpy2 import mpq

Rational = mpq


def rat(num, den=1):
    """Exact rational from ints, strings ("3/5") or other rationals."""
    if isinstance(num, str):
        q = mpq(num)
        return q if den == 1 else q / mpq(den)
    return mpq(num, den)


def rat_str(q):
    """Canonical "num/den" string (plain "num" when den == 1)."""
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%s/%s" % (q.numerator, q.denominator)


class GaussianRational:
    """Element a + b*i of Q(i) with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", mpq(re))
        object.__setattr__(self, "im", mpq(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __truediv__(self, other):
        other = _coerce(other)
        n2 = other.re * other.re + other.im * other.im
        if n2 == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * GaussianRational(other.re / n2, -other.im / n2)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    # -- structure -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, type(mpq(0)))):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self):
        return self.im == 0

    def __repr__(self):
        return "GaussianRational(%s, %s)" % (self.re, self.im)

    def __str__(self):
        if self.im == 0:
            return rat_str(self.re)
        if self.re == 0:
            return "%s i" % rat_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return "%s%s%s i" % (rat_str(self.re), sign, rat_str(abs(self.im)))


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(x)


GI_ZERO = GaussianRational(0, 0)
GI_ONE = GaussianRational(1, 0)
I_UNIT = GaussianRational(0, 1)


def gauss(re, im=0):
    return GaussianRational(re, im)
