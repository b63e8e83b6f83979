"""Galilei motions and the exact pullback action on polynomial multiplets.

A motion g maps (t, x) -> (t + a, R x + v t + b).  Multiplets transform by

    mult'(t, x) = Lambda(g) mult(g^-1 (t, x)),

with Lambda(g) = Lambda_boost(v) * rotation_block(R), so pullback is a right
action: pulling back by g1 then g2 equals pulling back by g2 o g1.
"""

from gmpy2 import mpq

from ..errors import LayoutMismatch
from ..exact.matrix import Matrix, QQ, mat_mul
from ..exact.multipoly import MultiPoly
from ..reps.catalog import build_galilei_rep, check_rotation
from .calculus import SPACETIME


class GalileiMotion:
    """Boost v, rotation R (exact rational, det 1), shifts a (time), b (space)."""

    def __init__(self, v=(0, 0, 0), rot=None, a=0, b=(0, 0, 0)):
        self.v = tuple(mpq(x) for x in v)
        self.rot = rot if rot is not None else Matrix.identity(QQ, 3)
        check_rotation(self.rot)
        self.a = mpq(a)
        self.b = tuple(mpq(x) for x in b)

    def compose(self, first):
        """self o first (apply `first`, then `self`)."""
        R2, v2, a2, b2 = self.rot, self.v, self.a, self.b
        R1, v1, a1, b1 = first.rot, first.v, first.a, first.b
        rot = mat_mul(R2, R1)
        v = tuple(
            sum(R2.entries[i][j] * v1[j] for j in range(3)) + v2[i] for i in range(3)
        )
        b = tuple(
            sum(R2.entries[i][j] * b1[j] for j in range(3)) + v2[i] * a1 + b2[i]
            for i in range(3)
        )
        return GalileiMotion(v=v, rot=rot, a=a1 + a2, b=b)

    def inverse(self):
        Rt = self.rot.transpose()
        vi = tuple(-sum(Rt.entries[i][j] * self.v[j] for j in range(3)) for i in range(3))
        bi = tuple(
            -sum(Rt.entries[i][j] * (self.b[j] - self.v[j] * self.a) for j in range(3))
            for i in range(3)
        )
        return GalileiMotion(v=vi, rot=Rt, a=-self.a, b=bi)

    def apply(self, t, x):
        """g(t, x) for exact rationals; x is a 3-tuple."""
        t2 = mpq(t) + self.a
        x2 = tuple(
            sum(self.rot.entries[i][j] * mpq(x[j]) for j in range(3))
            + self.v[i] * mpq(t) + self.b[i]
            for i in range(3)
        )
        return t2, x2

    def inverse_substitution(self):
        """Polynomial images of (t, x, y, z) under g^-1, for composition."""
        inv = self.inverse()
        tvar = MultiPoly.var(SPACETIME, "t")
        xs = [MultiPoly.var(SPACETIME, n) for n in ("x", "y", "z")]
        t_img = tvar + inv.a
        x_img = []
        for i in range(3):
            p = MultiPoly.const(SPACETIME, inv.b[i]) + tvar * inv.v[i]
            for j in range(3):
                p = p + xs[j] * inv.rot.entries[i][j]
            x_img.append(p)
        return {"t": t_img, "x": x_img[0], "y": x_img[1], "z": x_img[2]}

    def is_identity(self):
        return (
            all(c == 0 for c in self.v)
            and all(c == 0 for c in self.b)
            and self.a == 0
            and self.rot == Matrix.identity(QQ, 3)
        )

    def __repr__(self):
        return "GalileiMotion(v=%s, a=%s, b=%s, rot=%s)" % (
            tuple(str(c) for c in self.v),
            self.a,
            tuple(str(c) for c in self.b),
            self.rot.to_strings(),
        )


class FieldMultiplet:
    """Components of one catalog multiplet as exact polynomials."""

    def __init__(self, rep_label, components):
        self.rep = build_galilei_rep(rep_label)
        components = list(components)
        if len(components) != self.rep.dimension:
            raise LayoutMismatch(
                "%s needs %d components, got %d"
                % (self.rep.name, self.rep.dimension, len(components))
            )
        self.components = components

    def slot(self, name):
        pos, width = self.rep.layout.offsets[name]
        if width == 1:
            return self.components[pos]
        return tuple(self.components[pos : pos + width])

    def __eq__(self, other):
        return (
            isinstance(other, FieldMultiplet)
            and self.rep.label == other.rep.label
            and self.components == other.components
        )

    def __repr__(self):
        return "FieldMultiplet(%s)" % self.rep.name


def substitute_motion(p, sub):
    return p.substitute(sub)


def pullback(mult, g):
    """mult'(t,x) = Lambda(g) mult(g^-1 (t,x)), computed exactly."""
    lam = mat_mul(mult.rep.boost_matrix(g.v), mult.rep.rotation_block(g.rot))
    sub = g.inverse_substitution()
    moved = [p.substitute(sub) for p in mult.components]
    out = []
    for i in range(mult.rep.dimension):
        acc = MultiPoly.zero(SPACETIME)
        for j in range(mult.rep.dimension):
            c = lam.entries[i][j]
            if c != 0:
                acc = acc + moved[j] * c
        out.append(acc)
    return FieldMultiplet(mult.rep.label, out)
