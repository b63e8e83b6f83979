"""Bilinear boost invariants, constitutive laws, and the saturating
(Born-Infeld-type) constitutive maps with their Galilean limits.

Symbolic checks treat each square root as a single symbol s with s^2 equal
to its radicand; identities are verified after clearing s-denominators, so
everything stays polynomial and exact.  Numeric evaluation uses floats with
an explicit domain guard.
"""

import math

from gmpy2 import mpq

from ..errors import DomainError, GalinvError
from ..exact.multipoly import MultiPoly

# symbolic field components + boost parameters
MEDIA_VARS = tuple(
    "%s%d" % (f, i) for f in ("E", "B", "D", "H") for i in (1, 2, 3)
) + ("v1", "v2", "v3")


def _vec(name):
    return tuple(MultiPoly.var(MEDIA_VARS, "%s%d" % (name, i)) for i in (1, 2, 3))


def _vvec():
    return tuple(MultiPoly.var(MEDIA_VARS, "v%d" % i) for i in (1, 2, 3))


def vdot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def vcross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def bilinear_invariants(E, B, D, H):
    """The six independent bilinear invariants: E.B, H.D, D^2, B^2,
    E.D - H.B, B.D."""
    return [
        vdot(E, B),
        vdot(H, D),
        vdot(D, D),
        vdot(B, B),
        vdot(E, D) - vdot(H, B),
        vdot(B, D),
    ]


INVARIANT_NAMES = ["E.B", "H.D", "D.D", "B.B", "E.D - H.B", "B.D"]


def medium_boost(E, B, D, H, v):
    """Induction-pair boost law: E -> E + v x B, H -> H - v x D."""
    return (vadd(E, vcross(v, B)), B, D, vsub(H, vcross(v, D)))


def check_bilinear_invariants():
    """Symbolic-in-v invariance of all six quantities; plus the E.D
    counterexample.  Returns a list of check records."""
    E, B, D, H = _vec("E"), _vec("B"), _vec("D"), _vec("H")
    v = _vvec()
    base = bilinear_invariants(E, B, D, H)
    Eb, Bb, Db, Hb = medium_boost(E, B, D, H, v)
    boosted = bilinear_invariants(Eb, Bb, Db, Hb)
    out = []
    for name, p, q in zip(INVARIANT_NAMES, base, boosted):
        out.append({"name": name, "pass": (q - p).is_zero(), "detail": ""})
    # E.D alone is not invariant: the defect is v.(B x D)
    defect = vdot(Eb, Db) - vdot(E, D)
    expected = vdot(v, vcross(B, D))
    out.append(
        {
            "name": "E.D alone is NOT invariant",
            "pass": (not defect.is_zero()) and (defect - expected).is_zero(),
            "detail": "defect equals v.(B x D)",
        }
    )
    return out


# -- constitutive relations for media ------------------------------------------

INVAR_SYMS = ("I1", "I2", "I3", "I4", "I5", "I6")


class MediaConstitutive:
    """B = mu H + nu E, D = kappa E + lambda H with invariant coefficients.

    Coefficients are polynomials in the six bilinear invariants.  When a
    sigma is supplied, the printed compatibility relations sigma*kappa == nu
    and mu == sigma*lambda are enforced at construction.  The sharper
    sufficient condition for boost invariance of the constitutive pair is
    lambda == nu together with mu*kappa == nu^2; invariance_condition()
    reports both residuals.
    """

    def __init__(self, mu, nu, kappa, lam, sigma=None):
        conv = lambda x: x if isinstance(x, MultiPoly) else MultiPoly.const(INVAR_SYMS, x)
        self.mu = conv(mu)
        self.nu = conv(nu)
        self.kappa = conv(kappa)
        self.lam = conv(lam)
        self.sigma = conv(sigma) if sigma is not None else None
        if self.sigma is not None:
            if not (self.sigma * self.kappa - self.nu).is_zero():
                raise GalinvError("constitutive relation sigma*kappa == nu fails")
            if not (self.mu - self.sigma * self.lam).is_zero():
                raise GalinvError("constitutive relation mu == sigma*lambda fails")

    def invariance_condition(self):
        """(lambda - nu, mu*kappa - nu^2): both zero iff the constitutive
        pair is boost-invariant for generic fields."""
        return (self.lam - self.nu, self.mu * self.kappa - self.nu * self.nu)

    def is_boost_invariant(self):
        a, b = self.invariance_condition()
        return a.is_zero() and b.is_zero()


def default_media():
    """A boost-invariant instance: sigma = B.D, kappa = 1, nu = lambda = sigma,
    mu = sigma^2."""
    sigma = MultiPoly.var(INVAR_SYMS, "I6")
    one = MultiPoly.const(INVAR_SYMS, 1)
    return MediaConstitutive(sigma * sigma, sigma, one, sigma, sigma=sigma)


# -- saturating constitutive maps ----------------------------------------------


def _as_floats(vec):
    return tuple(float(mpq(c)) for c in vec)


def born_infeld_constitutive(variant, B, E):
    """Numeric constitutive map (D, H) from (B, E) floats/rationals.

    variant "electric-limit":  D = E/s, H = B/s - (B.E) E / s,  s = sqrt(1 - E^2)
    variant "magnetic-limit":  D = E/s + (B.E) B / s, H = B/s,  s = sqrt(1 + B^2)
    variant "relativistic":    D = (E + (B.E) B)/L, H = (B - (B.E) E)/L,
                               L = sqrt(1 + B^2 - E^2 - (B.E)^2)
    """
    B = _as_floats(B)
    E = _as_floats(E)
    be = sum(b * e for b, e in zip(B, E))
    e2 = sum(e * e for e in E)
    b2 = sum(b * b for b in B)
    if variant == "electric-limit":
        rad = 1.0 - e2
        if rad <= 0:
            raise DomainError("1 - E^2 must stay positive (got %g)" % rad)
        s = math.sqrt(rad)
        D = tuple(e / s for e in E)
        H = tuple(b / s - be * e / s for b, e in zip(B, E))
        return D, H
    if variant == "magnetic-limit":
        s = math.sqrt(1.0 + b2)
        D = tuple(e / s + be * b / s for e, b in zip(E, B))
        H = tuple(b / s for b in B)
        return D, H
    if variant == "relativistic":
        rad = 1.0 + b2 - e2 - be * be
        if rad <= 0:
            raise DomainError("radicand must stay positive (got %g)" % rad)
        L = math.sqrt(rad)
        D = tuple((e + be * b) / L for e, b in zip(E, B))
        H = tuple((b - be * e) / L for b, e in zip(B, E))
        return D, H
    raise GalinvError("unknown variant %r" % variant)


def check_bi_electric_symbolic():
    """Boost behaviour of the electric-limit map, with the root as a symbol.

    Under B -> B + v x E, E -> E the radicand 1 - E^2 is unchanged, so both
    sides share one root symbol s; after multiplying through by s the claims
        D(B', E') == D(B, E)        and
        H(B', E') == H(B, E) + v x D(B, E)
    are polynomial identities (the H one uses (v x E).E == 0).
    """
    E, B = _vec("E"), _vec("B")
    v = _vvec()
    Bb = vadd(B, vcross(v, E))
    # D * s = E: invariant because E is
    d_claim = [x - y for x, y in zip(E, E)]
    # H * s = B - (B.E) E
    h = vsub(B, tuple(vdot(B, E) * e for e in E))
    h_b = vsub(Bb, tuple(vdot(Bb, E) * e for e in E))
    # (v x D) * s = v x E
    rhs = vadd(h, vcross(v, E))
    h_claim = [x - y for x, y in zip(h_b, rhs)]
    return all(p.is_zero() for p in d_claim + h_claim)


def check_bi_magnetic_symbolic():
    """Boost behaviour of the magnetic-limit map (root radicand 1 + B^2):
        H(B', E') == H(B, E)        and
        D(B', E') == D(B, E) - v x H(B, E)
    with B' = B, E' = E - v x B; uses B.(v x B) == 0."""
    E, B = _vec("E"), _vec("B")
    v = _vvec()
    Eb = vsub(E, vcross(v, B))
    # H * s = B: invariant
    # D * s = E + (B.E) B
    d = vadd(E, tuple(vdot(B, E) * b for b in B))
    d_b = vadd(Eb, tuple(vdot(B, Eb) * b for b in B))
    rhs = vsub(d, vcross(v, B))  # (v x H) * s = v x B
    return all((x - y).is_zero() for x, y in zip(d_b, rhs))


def bi_numeric_spot_checks(n=100, seed=0, tol=1e-12):
    """Numeric evaluation at random in-domain rational points matches the
    symbolic identities to tol.  Returns the worst deviation observed."""
    import numpy as np

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        E = tuple(mpq(int(rng.integers(-6, 7)), 10) for _ in range(3))
        B = tuple(mpq(int(rng.integers(-9, 10)), 4) for _ in range(3))
        v = tuple(float(mpq(int(rng.integers(-4, 5)), 3)) for _ in range(3))
        e2 = sum(float(c) ** 2 for c in E)
        if e2 >= 0.9:
            continue
        # electric limit
        D, H = born_infeld_constitutive("electric-limit", B, E)
        Bb = tuple(float(b) + c for b, c in zip(B, _xprod(v, E)))
        D2, H2 = born_infeld_constitutive("electric-limit", Bb, E)
        for p, q in zip(D2, D):
            worst = max(worst, abs(p - q))
        pred = tuple(h + c for h, c in zip(H, _xprod(v, D)))
        for p, q in zip(H2, pred):
            worst = max(worst, abs(p - q))
        # magnetic limit
        D, H = born_infeld_constitutive("magnetic-limit", B, E)
        Eb = tuple(float(e) - c for e, c in zip(E, _xprod(v, B)))
        D2, H2 = born_infeld_constitutive("magnetic-limit", B, Eb)
        for p, q in zip(H2, H):
            worst = max(worst, abs(p - q))
        pred = tuple(d - c for d, c in zip(D, _xprod(v, H)))
        for p, q in zip(D2, pred):
            worst = max(worst, abs(p - q))
    if worst > tol:
        raise GalinvError("numeric constitutive check drifted to %g" % worst)
    return worst


def _xprod(a, b):
    a = tuple(float(x) for x in a)
    b = tuple(float(x) for x in b)
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
