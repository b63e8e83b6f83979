"""Exact Lagrangian density for the single-coupling quasilinear system.

    L = (B^2 - W.W)/2 - N.R
        + nu (A4 W.N + A0 R.W - A.(W B + R x N))
        - e  (A4 j0 + A0 j4 - A.j)

The potential map is the consistent one used everywhere in this toolkit:
B = dt A4, N = dt A - grad A0, W = -curl A, R = grad A4; it is checked as a
precondition.  The density is evaluated, not varied.
"""

from gmpy2 import mpq

from ..errors import LayoutMismatch
from .calculus import cross, curl, div, dot, dt, grad, scale, vec_sub


def potential_fields(A, A0, A4):
    """(B, N, W, R) from potentials (A vector, A0 scalar, A4 scalar)."""
    B = dt(A4)
    N = vec_sub(dt(A), grad(A0))
    W = scale(-1, curl(A))
    R = grad(A4)
    return B, N, W, R


def check_potential_relation(fields, A, A0, A4):
    """Exact check that fields == potential_fields(A, A0, A4)."""
    B, N, W, R = potential_fields(A, A0, A4)
    fB, fN, fW, fR = fields
    ok = (fB - B).is_zero()
    for a, b in zip(fN, N):
        ok = ok and (a - b).is_zero()
    for a, b in zip(fW, W):
        ok = ok and (a - b).is_zero()
    for a, b in zip(fR, R):
        ok = ok and (a - b).is_zero()
    return ok


def lagrangian_density(fields, potentials, sources, e=0, nu=0):
    """Exact L; fields = (B, N, W, R), potentials = (A, A0, A4),
    sources = (j0, j, j4).  Raises if the potential relation fails."""
    A, A0, A4 = potentials
    if not check_potential_relation(fields, A, A0, A4):
        raise LayoutMismatch("fields are not derived from the given potentials")
    B, N, W, R = fields
    j0, j, j4 = sources
    e = mpq(e)
    nu = mpq(nu)
    L = (B * B - dot(W, W)) * mpq(1, 2) - dot(N, R)
    if nu:
        interaction = (
            A4 * dot(W, N)
            + A0 * dot(R, W)
            - dot(A, tuple(w * B + c for w, c in zip(W, cross(R, N))))
        )
        L = L + interaction * nu
    if e:
        coupling = A4 * j0 + A0 * j4 - dot(A, j)
        L = L - coupling * e
    return L
