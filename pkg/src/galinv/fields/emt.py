"""Energy-momentum components and their continuity certificates.

The density/flux components are stored exactly as the ten-component system's
table gives them.  Continuity is proven as an off-shell polynomial identity:
each continuity expression equals an explicit bilinear combination of the
source-free quasilinear residuals, namely

    cont_energy = B resC + W.resN - N.resU + N.resW
    cont_mom_b  = resC R_b + 2 B resW_b + (resW x W)_b + (R x resN)_b
                  + (N x resR)_b - N_b resA - B resU_b + nu Q_b

with the momentum flux Sigma_ab = -(N_a R_b + N_b R_a) + B eps_abd W_d
- delta_ab (B^2 - R.N) and the irreducible remainder
Q = B^2 W + B (R x N) + (R.W) N - (W.N) R.  The remainder vanishes at
nu = 0, so at the linear point continuity is literally a residual
combination; the energy law is nu-free outright.  The identity is verified
over first-derivative symbols, so it holds for every field configuration.
"""

from gmpy2 import mpq

from ..errors import LayoutMismatch
from ..exact.multipoly import MultiPoly
from .calculus import (
    SPACETIME,
    cross,
    curl,
    div,
    dot,
    dt,
    grad,
    scale,
    vec_add,
    vec_sub,
)

COMPS = ["B"] + ["N%d" % i for i in (1, 2, 3)] + ["W%d" % i for i in (1, 2, 3)] + [
    "R%d" % i for i in (1, 2, 3)
]
DERIVS = ("_", "t", "x", "y", "z")
JET_VARS = ("nu",) + tuple("%s|%s" % (c, d) for c in COMPS for d in DERIVS)


class _JetAlgebra:
    """Fields as first-derivative symbols; products are plain polynomials."""

    def var(self, comp, d="_"):
        return MultiPoly.var(JET_VARS, "%s|%s" % (comp, d))

    def nu(self):
        return MultiPoly.var(JET_VARS, "nu")

    def field(self, comp):
        return self.var(comp, "_")

    def d(self, comp, axis):
        return self.var(comp, axis)


class _PolyAlgebra:
    """Fields as concrete spacetime polynomials; derivatives are real."""

    def __init__(self, fields, nu):
        self.fields = fields
        self._nu = mpq(nu)

    def nu(self):
        return MultiPoly.const(SPACETIME, self._nu)

    def field(self, comp):
        return self.fields[comp]

    def d(self, comp, axis):
        return self.fields[comp].diff(axis)


def _fields(alg):
    B = alg.field("B")
    N = tuple(alg.field("N%d" % i) for i in (1, 2, 3))
    W = tuple(alg.field("W%d" % i) for i in (1, 2, 3))
    R = tuple(alg.field("R%d" % i) for i in (1, 2, 3))
    return B, N, W, R


def _derivs(alg, name, axis):
    return tuple(alg.d("%s%d" % (name, i), axis) for i in (1, 2, 3))


def _vdot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _vcross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


EPS = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}


def tensor_components(B, N, W, R):
    """Mixed-component table for a concrete (B, N, W, R) multiplet.

    T00 = (B^2 + W.W)/2
    T0[a] = (N x W)_a - B N_a
    Ta0[a] = B R_a + (R x W)_a
    Tab[a][b] = N_a R_b + N_b R_a - W_a W_b + delta_ab ((B^2 + W.W)/2 - R.W)
    """
    half = mpq(1, 2)
    T00 = (B * B + _vdot(W, W)) * half
    T0 = tuple(x - B * n for x, n in zip(_vcross(N, W), N))
    Ta0 = tuple(B * r + x for r, x in zip(R, _vcross(R, W)))
    trace = (B * B + _vdot(W, W)) * half - _vdot(R, W)
    Tab = [
        [
            N[a] * R[b] + N[b] * R[a] - W[a] * W[b] + (trace if a == b else 0)
            for b in range(3)
        ]
        for a in range(3)
    ]
    return T00, T0, Ta0, Tab


def momentum_stress(B, N, W, R):
    """Derived stress closing the momentum law:
    Sigma_ab = -(N_a R_b + N_b R_a) + B eps_abd W_d - delta_ab (B^2 - R.N)."""
    out = []
    for a in range(3):
        row = []
        for b in range(3):
            s = -(N[a] * R[b] + N[b] * R[a])
            for d in range(3):
                e = EPS.get((a, b, d), 0)
                if e:
                    s = s + B * W[d] * e
            if a == b:
                s = s - (B * B - _vdot(R, N))
            row.append(s)
        out.append(row)
    return out


def _residuals(alg):
    """Source-free quasilinear residuals on the (B, N, W, R) multiplet."""
    B, N, W, R = _fields(alg)
    nu = alg.nu()
    dtB = alg.d("B", "t")
    dtN = None  # never needed: the system has no N evolution equation
    dtW = _derivs(alg, "W", "t")
    dtR = _derivs(alg, "R", "t")
    gradB = tuple(alg.d("B", ax) for ax in ("x", "y", "z"))

    def vec_curl(name):
        d = lambda i, ax: alg.d("%s%d" % (name, i), ax)
        return (
            d(3, "y") - d(2, "z"),
            d(1, "z") - d(3, "x"),
            d(2, "x") - d(1, "y"),
        )

    def vec_div(name):
        return alg.d("%s1" % name, "x") + alg.d("%s2" % name, "y") + alg.d("%s3" % name, "z")

    resC = dtB - vec_div("N") + nu * _vdot(W, N)
    curlW = vec_curl("W")
    resU = tuple(
        dtR[i] + curlW[i] + nu * (B * W[i] + _vcross(R, N)[i]) for i in range(3)
    )
    resA = vec_div("R") + nu * _vdot(R, W)
    curlN = vec_curl("N")
    resN = tuple(dtW[i] + curlN[i] for i in range(3))
    resW = tuple(dtR[i] - gradB[i] for i in range(3))
    resR = vec_curl("R")
    resB = vec_div("W")
    return {
        "C": resC, "U": resU, "A": resA, "N": resN,
        "W": resW, "R": resR, "B": resB,
    }


def _continuity(alg):
    """(cont_energy, cont_momentum[3]) built with explicit product rules."""
    B, N, W, R = _fields(alg)
    dtB = alg.d("B", "t")
    dtW = _derivs(alg, "W", "t")
    dtR = _derivs(alg, "R", "t")
    axes = ("x", "y", "z")

    dN = [[alg.d("N%d" % (b + 1), axes[a]) for b in range(3)] for a in range(3)]
    dW = [[alg.d("W%d" % (b + 1), axes[a]) for b in range(3)] for a in range(3)]
    dR = [[alg.d("R%d" % (b + 1), axes[a]) for b in range(3)] for a in range(3)]
    dB = [alg.d("B", ax) for ax in axes]

    # energy: d_t[(B^2 + W.W)/2] + div(N x W - B N)
    cont0 = B * dtB
    for i in range(3):
        cont0 = cont0 + W[i] * dtW[i]
    for a in range(3):
        for b in range(3):
            for c in range(3):
                e = EPS.get((a, b, c), 0)
                if e:
                    cont0 = cont0 + (dN[a][b] * W[c] + N[b] * dW[a][c]) * e
    for a in range(3):
        cont0 = cont0 - dB[a] * N[a] - B * dN[a][a]

    # momentum: d_t[B R + R x W]_b + d_a Sigma_ab
    cont = []
    for b in range(3):
        s = dtB * R[b] + B * dtR[b]
        for c in range(3):
            for d in range(3):
                e = EPS.get((b, c, d), 0)
                if e:
                    s = s + (dtR[c] * W[d] + R[c] * dtW[d]) * e
        # d_a Sigma_ab
        divN = dN[0][0] + dN[1][1] + dN[2][2]
        divR = dR[0][0] + dR[1][1] + dR[2][2]
        s = s - divN * R[b] - N[b] * divR
        for a in range(3):
            s = s - N[a] * dR[a][b] - R[a] * dN[a][b]
        for a in range(3):
            for d in range(3):
                e = EPS.get((a, b, d), 0)
                if e:
                    s = s + (dB[a] * W[d] + B * dW[a][d]) * e
        s = s - 2 * B * dB[b]
        for c in range(3):
            s = s + dR[b][c] * N[c] + R[c] * dN[b][c]
        cont.append(s)
    return cont0, cont


def nu_remainder(alg):
    """Q = B^2 W + B (R x N) + (R.W) N - (W.N) R (the nu-coefficient left in
    the momentum law; trilinear with no derivatives, hence irreducible)."""
    B, N, W, R = _fields(alg)
    rxn = _vcross(R, N)
    rw = _vdot(R, W)
    wn = _vdot(W, N)
    return tuple(B * B * W[b] + B * rxn[b] + rw * N[b] - wn * R[b] for b in range(3))


def certificate_residual_combination(alg):
    """The claimed residual combinations for (energy, momentum)."""
    B, N, W, R = _fields(alg)
    res = _residuals(alg)
    nu = alg.nu()
    energy = B * res["C"] + _vdot(W, res["N"]) - _vdot(N, res["U"]) + _vdot(N, res["W"])
    Q = nu_remainder(alg)
    mom = []
    rxw = _vcross(res["W"], W)
    rxn = _vcross(R, res["N"])
    nxr = _vcross(N, res["R"])
    for b in range(3):
        s = (
            res["C"] * R[b]
            + 2 * B * res["W"][b]
            + rxw[b]
            + rxn[b]
            + nxr[b]
            - N[b] * res["A"]
            - B * res["U"][b]
            + nu * Q[b]
        )
        mom.append(s)
    return energy, mom


def verify_certificate():
    """Exact off-shell identity over first-derivative symbols; True iff the
    continuity expressions equal the residual combinations identically."""
    alg = _JetAlgebra()
    cont0, cont = _continuity(alg)
    energy, mom = certificate_residual_combination(alg)
    ok = (cont0 - energy).is_zero()
    for a, b in zip(cont, mom):
        ok = ok and (a - b).is_zero()
    return ok


def continuity_residuals(fields, nu=0):
    """Concrete continuity expressions for a (B, N, W, R) polynomial
    multiplet given as {"B": poly, "N1": poly, ...}."""
    for c in COMPS:
        if c not in fields:
            raise LayoutMismatch("missing component %r" % c)
    alg = _PolyAlgebra(fields, nu)
    return _continuity(alg)


def residuals_source_free(fields, nu=0):
    alg = _PolyAlgebra(fields, nu)
    return _residuals(alg)


def tensor_of(fields):
    B = fields["B"]
    N = tuple(fields["N%d" % i] for i in (1, 2, 3))
    W = tuple(fields["W%d" % i] for i in (1, 2, 3))
    R = tuple(fields["R%d" % i] for i in (1, 2, 3))
    return tensor_components(B, N, W, R)


def harmonic_solution(a4=None, a0=None, avec=None):
    """Exact polynomial solution of the source-free system from harmonic
    potentials: fields (B, N, W, R) = (div A, -grad A0, -curl A, grad A4(t)),
    with A static harmonic, A0 harmonic, A4(t) = A4_0 + t div A."""
    from .calculus import poly, var

    x, y, z, t = var("x"), var("y"), var("z"), var("t")
    if avec is None:
        avec = (x * x - y * y, y * z * 2, x * z)  # componentwise harmonic
    if a0 is None:
        a0 = x * y + z
    if a4 is None:
        a4 = x * x - z * z + y
    divA = div(avec)
    a4_t = a4 + t * divA
    B = divA  # equals dt(a4_t) since avec is static
    N = scale(-1, grad(a0))
    W = scale(-1, curl(avec))
    R = grad(a4_t)
    out = {"B": B}
    for i, val in enumerate(N, 1):
        out["N%d" % i] = val
    for i, val in enumerate(W, 1):
        out["W%d" % i] = val
    for i, val in enumerate(R, 1):
        out["R%d" % i] = val
    return out
