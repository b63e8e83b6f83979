"""Laurent polynomials in the contraction parameter eps.

Coefficients live in Q(i) (GaussianRational): the similarity transforms mix
eps powers with the i-valued boost generators.  Zero coefficients are never
stored, so equality is structural.  The eps -> 0 limit exists iff the minimal
exponent is >= 0.
"""

from .scalars import GaussianRational, GI_ONE, GI_ZERO


def _g(x):
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(x)


class LaurentPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for k, c in coeffs.items():
                c = _g(c)
                if c:
                    clean[int(k)] = c
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def eps(cls, power=1):
        return cls({power: GI_ONE})

    # -- ring --------------------------------------------------------------
    def __add__(self, other):
        other = _lift(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, GI_ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                s = out.get(k, GI_ZERO) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return self.coeffs == _lift(other).coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    # -- structure ---------------------------------------------------------
    def min_exp(self):
        return min(self.coeffs) if self.coeffs else None

    def max_exp(self):
        return max(self.coeffs) if self.coeffs else None

    def pole_order(self):
        """Order of the pole at eps = 0 (0 when regular)."""
        m = self.min_exp()
        return max(0, -m) if m is not None else 0

    def limit_at_zero(self):
        """Constant coefficient; defined iff min exponent >= 0."""
        if self.pole_order() > 0:
            raise ValueError("limit at eps=0 does not exist: %s" % self)
        return self.coeffs.get(0, GI_ZERO)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            if k == 0:
                parts.append("(%s)" % c)
            elif k == 1:
                parts.append("(%s) eps" % c)
            else:
                parts.append("(%s) eps^%d" % (c, k))
        return " + ".join(parts)

    __repr__ = __str__


def _lift(x):
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly.const(x)
