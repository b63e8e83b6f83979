"""Exact differential operators on polynomial fields over (t, x, y, z)."""

from gmpy2 import mpq

from ..errors import DimensionMismatch
from ..exact.multipoly import MultiPoly

SPACETIME = ("t", "x", "y", "z")


def poly(terms=None):
    return MultiPoly(SPACETIME, terms or {})


def const(c):
    return MultiPoly.const(SPACETIME, c)


def var(name):
    return MultiPoly.var(SPACETIME, name)


def zero_vec():
    return (poly(), poly(), poly())


def dt(f):
    if isinstance(f, (tuple, list)):
        return tuple(dt(c) for c in f)
    return f.diff("t")


def grad(f):
    return (f.diff("x"), f.diff("y"), f.diff("z"))


def div(F):
    if len(F) != 3:
        raise DimensionMismatch("div takes a 3-component field")
    return F[0].diff("x") + F[1].diff("y") + F[2].diff("z")


def curl(F):
    if len(F) != 3:
        raise DimensionMismatch("curl takes a 3-component field")
    return (
        F[2].diff("y") - F[1].diff("z"),
        F[0].diff("z") - F[2].diff("x"),
        F[1].diff("x") - F[0].diff("y"),
    )


def dot(A, B):
    if len(A) != 3 or len(B) != 3:
        raise DimensionMismatch("dot takes two 3-component fields")
    return A[0] * B[0] + A[1] * B[1] + A[2] * B[2]


def cross(A, B):
    return (
        A[1] * B[2] - A[2] * B[1],
        A[2] * B[0] - A[0] * B[2],
        A[0] * B[1] - A[1] * B[0],
    )


def scale(c, F):
    if isinstance(F, (tuple, list)):
        return tuple(x * c for x in F)
    return F * c


def vec_add(A, B):
    return tuple(a + b for a, b in zip(A, B))


def vec_sub(A, B):
    return tuple(a - b for a, b in zip(A, B))


def laplacian(f):
    return div(grad(f))


def random_poly(rng, max_degree=3, coeff_range=5):
    """Seeded random polynomial, coefficients uniform in {-c..c}."""
    terms = {}
    for et in range(max_degree + 1):
        for ex in range(max_degree + 1 - et):
            for ey in range(max_degree + 1 - et - ex):
                for ez in range(max_degree + 1 - et - ex - ey):
                    c = int(rng.integers(-coeff_range, coeff_range + 1))
                    if c:
                        terms[(et, ex, ey, ez)] = mpq(c)
    return poly(terms)


def eval_float(f, t, x, y, z):
    """Float evaluation (for finite-difference cross checks in tests)."""
    total = 0.0
    for (et, ex, ey, ez), c in f.terms.items():
        total += float(c) * (t**et) * (x**ex) * (y**ey) * (z**ez)
    return total
