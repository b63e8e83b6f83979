"""Sparse multivariate polynomials with exact rational coefficients.

A MultiPoly is tied to an immutable variable tuple; terms map exponent
tuples to nonzero mpq coefficients (zero terms are always pruned, so equality
is plain structural equality).  Supports the calculus the toolkit needs:
ring arithmetic, partial derivatives, affine/linear substitution, and exact
evaluation.
"""

from gmpy2 import mpq

from ..errors import RingMismatch


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        object.__setattr__(self, "vars", tuple(variables))
        clean = {}
        if terms:
            for exp, c in terms.items():
                c = mpq(c)
                if c != 0:
                    clean[tuple(exp)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def const(cls, variables, c):
        c = mpq(c)
        if c == 0:
            return cls(variables, {})
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        exp = [0] * len(variables)
        exp[i] = 1
        return cls(variables, {tuple(exp): mpq(1)})

    # -- ring operations ---------------------------------------------------
    def _check(self, other):
        if self.vars != other.vars:
            raise RingMismatch(
                "variable lists differ: %r vs %r" % (self.vars, other.vars)
            )

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.vars, other)
        self._check(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, 0) + c
            if s == 0:
                terms.pop(exp, None)
            else:
                terms[exp] = s
        return MultiPoly(self.vars, terms)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = mpq(other)
            if c == 0:
                return MultiPoly(self.vars, {})
            return MultiPoly(self.vars, {e: k * c for e, k in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        return self.terms == MultiPoly.const(self.vars, other).terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- calculus ----------------------------------------------------------
    def diff(self, name):
        i = self.vars.index(name)
        out = {}
        for exp, c in self.terms.items():
            k = exp[i]
            if k == 0:
                continue
            e = list(exp)
            e[i] = k - 1
            e = tuple(e)
            s = out.get(e, 0) + c * k
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(self.vars, out)

    def substitute(self, mapping):
        """Substitute variables by polynomials (over a target variable set).

        mapping: {var_name: MultiPoly}; unmapped variables must exist in the
        target variable set and map to themselves.
        """
        target = None
        for p in mapping.values():
            target = p.vars
            break
        if target is None:
            return self
        images = []
        for name in self.vars:
            if name in mapping:
                images.append(mapping[name])
            else:
                images.append(MultiPoly.var(target, name))
        out = MultiPoly.zero(target)
        for exp, c in self.terms.items():
            term = MultiPoly.const(target, c)
            for img, k in zip(images, exp):
                if k:
                    term = term * img**k
            out = out + term
        return out

    def eval(self, values):
        """Exact evaluation; values maps every variable to a rational."""
        total = mpq(0)
        vals = [mpq(values[name]) for name in self.vars]
        for exp, c in self.terms.items():
            term = c
            for v, k in zip(vals, exp):
                if k:
                    term = term * v**k
            total += term
        return total

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def coefficient(self, name, power):
        """Polynomial coefficient of name**power (in the remaining variables)."""
        i = self.vars.index(name)
        out = {}
        for exp, c in self.terms.items():
            if exp[i] == power:
                e = list(exp)
                e[i] = 0
                out[tuple(e)] = c
        return MultiPoly(self.vars, out)

    def map_coeffs(self, fn):
        return MultiPoly(self.vars, {e: fn(c) for e, c in self.terms.items()})

    def __repr__(self):
        return "MultiPoly(%s)" % self

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[exp]
            mon = "*".join(
                "%s^%d" % (v, k) if k > 1 else v
                for v, k in zip(self.vars, exp)
                if k
            )
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append("%s*%s" % (c, mon))
        s = " + ".join(parts)
        return s.replace("+ -", "- ")
