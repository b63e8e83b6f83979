"""Built-in catalog of first-order field systems.

Every entry is defined in the .gal language and parsed at first use, so the
shipped texts, the DSL and the covariance engine all exercise one code path.
Rep clauses pin each system's boost behaviour: slot signs encode the passive
orientation of the printed transformation tables (see each entry's notes).
"""

from gmpy2 import mpq

from ..errors import GalinvError
from ..exact.multipoly import MultiPoly
from .dsl import parse, print_system
from .model import Equation, FieldSystem

_TEXTS = {}
_NOTES = {}


def _define(name, text, **notes):
    _TEXTS[name] = text
    _NOTES[name] = notes


_define(
    "mag",
    """
system mag {
  fields { E: vector  H: vector }
  sources { j0: scalar  j: vector }
  params { e }
  rep fields D(2,0,0) on (E, H)
  rep sources D(1,1,0) on (-j, j0)
  eq F:  curl(E) - dt(H) = 0
  eq GE: div(E) = e * j0
  eq AM: curl(H) = e * j
  eq GH: div(H) = 0
  rep resid D(1,1,1) on (F, GH)
  rep resid D(1,1,0) on (-AM, GE)
}
""",
    description="magnetic limit: pre-Maxwellian electromagnetism",
)

_define(
    "el",
    """
system el {
  fields { E: vector  H: vector }
  sources { j4: scalar  j: vector }
  params { e }
  rep fields D(2,0,0) on (-H, E)
  rep sources D(1,1,1) on (-j, j4)
  eq AM: curl(H) + dt(E) = e * j
  eq GE: div(E) = e * j4
  eq CE: curl(E) = 0
  eq GH: div(H) = 0
  rep resid D(1,1,1) on (AM, -GE)
  rep resid D(1,1,0) on (CE, GH)
}
""",
    description="electric limit of the Maxwell system",
)

_define(
    "coupl",
    """
system coupl {
  fields { B: scalar  N: vector  W: vector  R: vector }
  sources { j0: scalar  j: vector  j4: scalar }
  params { e }
  rep fields D(3,1,1) on (-B, N, -W, R)
  rep sources D(1,2,1) on (-j, j4, j0)
  eq C: dt(B) - div(N) = e * j0
  eq U: dt(R) + curl(W) = e * j
  eq A: div(R) = e * j4
  eq N: dt(W) + curl(N) = 0
  eq W: dt(R) - grad(B) = 0
  eq R: -curl(R) = 0
  eq B: div(W) = 0
  rep resid D(1,2,1) on (-U, A, C)
  rep resid D(3,1,1) on (-B, N, -W, R)
}
""",
    description="extended ten-component system on the (B, N, W, R) multiplet",
    notes="first equation stored in the orientation of the nonlinear master "
    "(dt B - div N = e j0); the earlier printing with the opposite sign does "
    "not close under boosts and contradicts the nonlinear specialization",
)

_define(
    "coupl1",
    """
system coupl1 {
  fields { H: vector  E: vector  S: scalar }
  sources { j0: scalar  j: vector }
  params { e }
  rep fields D(2,1,1) on (-S, E, -H)
  rep sources D(1,1,0) on (j, j0)
  eq F:  dt(H) + curl(E) = 0
  eq AM: curl(H) = e * j
  eq GH: div(H) = 0
  eq GE: div(E) - dt(S) = e * j0
  eq GS: grad(S) = 0
  rep resid D(2,1,1) on (-GH, F, GS)
  rep resid D(1,1,0) on (AM, GE)
}
""",
    description="reduction of the extended system by R = 0, j4 = 0",
)

_define(
    "coupl2",
    """
system coupl2 {
  fields { W: vector  R: vector  B: scalar }
  sources { j: vector  j4: scalar }
  params { e }
  rep fields D(2,1,0) on (R, -W, -B)
  rep sources D(1,1,1) on (-j, j4)
  eq U: curl(W) + dt(R) = e * j
  eq A: div(R) = e * j4
  eq W: dt(R) - grad(B) = 0
  eq R: curl(R) = 0
  eq B: div(W) = 0
  rep resid D(1,1,1) on (U, -A)
  rep resid D(2,1,0) on (R, W, B)
}
""",
    description="extended system with the self-invariant pair (N-equation, charge equation) removed",
)

_define(
    "coupl4",
    """
system coupl4 {
  fields { R: vector  B: scalar }
  sources { j4: scalar }
  params { e }
  rep fields D(1,1,0) on (R, -B)
  rep sources D(0,1,0) on (j4)
  eq A: div(R) = e * j4
  eq W: dt(R) - grad(B) = 0
  eq R: curl(R) = 0
  rep resid D(0,1,0) on (A)
  rep resid D(2,0,0) on (W, R)
}
""",
    description="two-vector/two-scalar reduction; the potential collapses to one scalar",
)

_define(
    "mag1",
    """
system mag1 {
  fields { E: vector }
  sources { rho: scalar }
  params { e }
  rep fields D(1,0,0) on (E)
  rep sources D(0,1,0) on (rho)
  eq CE: curl(E) = 0
  eq GE: div(E) = e * rho
  rep resid D(1,0,0) on (CE)
  rep resid D(0,1,0) on (GE)
}
""",
    description="electrostatics: boost-invariant field and charge",
)

_define(
    "111",
    """
system 111 {
  fields { H: vector }
  sources { j: vector }
  params { e }
  rep fields D(1,0,0) on (H)
  rep sources D(1,0,0) on (j)
  eq AM: curl(H) = e * j
  eq GH: div(H) = 0
  rep resid D(1,0,0) on (AM)
  rep resid D(0,1,0) on (GH)
}
""",
    description="magnetostatics: boost-invariant field and current",
)

_define(
    "coupl3",
    """
system coupl3 {
  fields { H: vector  S: scalar }
  sources { j: vector }
  params { e }
  rep fields D(1,0,0) on (H)
  rep fields D(0,1,0) on (S)
  rep sources D(1,0,0) on (j)
  eq AM: curl(H) = e * j
  eq GH: div(H) = 0
  eq GS: grad(S) = 0
  rep resid D(1,0,0) on (AM)
  rep resid D(0,1,0) on (GH)
  rep resid D(1,0,0) on (GS)
}
""",
    description="decoupled reduction with a constrained scalar",
)

_define(
    "NL",
    """
system NL {
  fields { B: scalar  N: vector  W: vector  R: vector }
  sources { j0: scalar  j: vector  j4: scalar }
  params { e nu lam sig om mu rho }
  rep fields D(3,1,1) on (-B, N, -W, R)
  rep sources D(1,2,1) on (-j, j4, j0)
  eq C: dt(B) - div(N) + nu * dot(W, N) + lam * dot(R, W) + sig * (B * B - dot(R, N)) + om * dot(R, R) + mu * B = e * j0
  eq U: dt(R) + curl(W) + nu * (B * W + cross(R, N)) + sig * (cross(R, W) + B * R) + mu * R = e * j
  eq A: div(R) + nu * dot(R, W) + sig * dot(R, R) = e * j4
  eq N: dt(W) + curl(N) + rho * N = 0
  eq W: dt(R) - grad(B) + rho * W = 0
  eq R: -curl(R) + rho * R = 0
  eq B: div(W) + rho * B = 0
  rep resid D(1,2,1) on (-U, A, C)
  rep resid D(3,1,1) on (-B, N, -W, R)
}
""",
    description="general quasilinear extension of the ten-component system",
)

_define(
    "LastLast",
    """
system LastLast {
  fields { E: vector  H: vector }
  sources { j0: scalar  j: vector }
  params { e nu }
  rep fields D(2,0,0) on (E, H)
  rep sources D(1,1,0) on (-j, j0)
  eq GE: div(E) + nu * dot(H, E) = e * j0
  eq AM: curl(H) = e * j
  eq F:  dt(H) - curl(E) = 0
  eq GH: div(H) = 0
  rep resid D(1,1,1) on (F, -GH)
  rep resid D(1,1,0) on (-AM, GE)
}
""",
    description="magnetic limit of the quasilinear system",
)

_define(
    "LLL",
    """
system LLL {
  fields { E: vector  H: vector }
  sources { j4: scalar  j: vector }
  params { e mu }
  rep fields D(2,0,0) on (-H, E)
  rep sources D(1,1,1) on (-j, j4)
  eq AM: dt(E) + curl(H) + mu * E = e * j
  eq CE: curl(E) = 0
  eq GE: div(E) = e * j4
  eq GH: div(H) = 0
  rep resid D(1,1,1) on (AM, -GE)
  rep resid D(1,1,0) on (CE, GH)
}
""",
    description="electric limit of the quasilinear system (linear damping term)",
    notes="a printed variant adds a bilinear E.H term to the divergence "
    "equation; with B and N absent no compensating term exists and boost "
    "covariance fails, so the catalog keeps the consistent mu-only form",
)

_define(
    "media",
    """
system media {
  fields { B: vector  E: vector  D: vector  H: vector }
  sources { }
  params { }
  rep fields D(2,0,0) on (-E, B)
  rep fields D(2,0,0) on (H, D)
  eq DD: dt(D) - curl(H) = 0
  eq GD: div(D) = 0
  eq FB: dt(B) + curl(E) = 0
  eq GB: div(B) = 0
  rep resid D(1,1,1) on (DD, -GD)
  rep resid D(1,1,1) on (FB, -GB)
}
""",
    description="induction pair for a medium; constitutive closure lives in the constitutive module",
)

_define(
    "BI_electric",
    """
system BI_electric {
  fields { B: vector  E: vector  D: vector  H: vector }
  sources { }
  params { }
  rep fields D(2,0,0) on (B, E)
  rep fields D(2,0,0) on (H, D)
  eq DD: dt(D) - curl(H) = 0
  eq GD: div(D) = 0
  eq CE: curl(E) = 0
  eq GB: div(B) = 0
  rep resid D(1,1,1) on (DD, -GD)
  rep resid D(1,1,0) on (-CE, GB)
}
""",
    description="electric-limit induction system paired with the saturating constitutive map",
)

_define(
    "BI_magnetic",
    """
system BI_magnetic {
  fields { B: vector  E: vector  D: vector  H: vector }
  sources { }
  params { }
  rep fields D(2,0,0) on (-E, B)
  rep fields D(2,0,0) on (-D, H)
  eq AM: curl(H) = 0
  eq GD: div(D) = 0
  eq FB: dt(B) + curl(E) = 0
  eq GB: div(B) = 0
  rep resid D(1,1,1) on (FB, -GB)
  rep resid D(1,1,0) on (AM, GD)
}
""",
    description="magnetic-limit induction system paired with the saturating constitutive map",
)

_define(
    "maxwell_FF",
    """
system maxwell_FF {
  fields { E: vector  H: vector  F: vector  F0: scalar }
  sources { j0: scalar  j: vector  j4: scalar }
  params { e }
  eq FAR: curl(E) - dt(H) = 0
  eq GH:  div(H) = 0
  eq AM:  curl(H) + dt(E) = e * j
  eq GE:  div(E) = e * j0
  eq SC:  dt(F0) - div(F) = e * j4
  eq CF:  curl(F) = 0
  eq GF:  dt(F) - grad(F0) = 0
}
""",
    description="relativistic precursor (t plays the light-cone time x0); no boost spec",
    relativistic=True,
)

ALIASES = {
    "e-static": "mag1",
    "m-static": "111",
    "BI-electric": "BI_electric",
    "BI-magnetic": "BI_magnetic",
    "maxwell-FF": "maxwell_FF",
}

# systems whose boost covariance is part of the acceptance gate
COVARIANT_SYSTEMS = [
    "mag", "el", "coupl", "coupl1", "coupl2", "coupl4",
    "mag1", "111", "coupl3", "last", "NL", "LastLast", "LLL",
]

_CACHE = {}


def _specialize_last():
    """"last" is NL at om = sig = lam = mu = rho = 0 (term-by-term)."""
    nl = catalog("NL")
    zeroed = {"om", "sig", "lam", "mu", "rho"}
    keep = [p for p in nl.params if p not in zeroed]
    sub_sys = FieldSystem("last", nl.fields, nl.sources, keep, [])
    npar_old = len(nl.params)
    old_to_new = {}
    for i, p in enumerate(nl.params):
        if p in keep:
            old_to_new[i] = keep.index(p)

    def convert(p):
        out = MultiPoly.zero(sub_sys.jet_vars)
        for exp, coef in p.terms.items():
            if any(exp[i] and nl.params[i] in zeroed for i in range(npar_old)):
                continue
            new_exp = [0] * len(sub_sys.jet_vars)
            for i, e in enumerate(exp):
                if not e:
                    continue
                if i < npar_old:
                    new_exp[old_to_new[i]] = e
                else:
                    new_exp[len(keep) + (i - npar_old)] = e
            out = out + MultiPoly(sub_sys.jet_vars, {tuple(new_exp): coef})
        return out

    def prune_ast(node):
        kind = node[0]
        if kind in ("num", "sym"):
            if kind == "sym" and node[2] in zeroed:
                return None
            return node
        if kind == "neg":
            inner = prune_ast(node[2])
            return None if inner is None else (kind, node[1], inner)
        if kind in ("add", "sub"):
            a = prune_ast(node[2])
            b = prune_ast(node[3])
            if a is None and b is None:
                return None
            if b is None:
                return a
            if a is None:
                return b if kind == "add" else ("neg", node[1], b)
            return (kind, node[1], a, b)
        if kind == "mul":
            a = prune_ast(node[2])
            b = prune_ast(node[3])
            if a is None or b is None:
                return None
            return (kind, node[1], a, b)
        if kind == "call":
            args = [prune_ast(a) for a in node[3]]
            if any(a is None for a in args):
                return None
            return (kind, node[1], node[2], args)
        raise ValueError(kind)

    for eq in nl.equations:
        polys = tuple(convert(p) for p in eq.polys)
        lhs = prune_ast(eq.lhs_ast)
        rhs = prune_ast(eq.rhs_ast)
        zero_ast = ("num", (0, 0), mpq(0))
        sub_sys.equations.append(
            Equation(eq.name, eq.kind, polys, lhs or zero_ast, rhs or zero_ast)
        )
    sub_sys.rep_specs = {k: list(v) for k, v in nl.rep_specs.items()}
    sub_sys.metadata = dict(nl.metadata)
    sub_sys.metadata["description"] = "quasilinear system at the single-coupling point"
    return sub_sys


def catalog(name):
    """Exact catalog system by name; unknown names list the registry."""
    name = ALIASES.get(name, name)
    if name == "last":
        if "last" not in _CACHE:
            _CACHE["last"] = _specialize_last()
        return _CACHE["last"]
    if name not in _TEXTS:
        raise GalinvError(
            "unknown system %r; available: %s" % (name, ", ".join(catalog_names()))
        )
    if name not in _CACHE:
        sys = parse(_TEXTS[name])
        sys.metadata.update(_NOTES[name])
        _CACHE[name] = sys
    return _CACHE[name]


def catalog_names():
    return sorted(set(list(_TEXTS) + ["last"]))


def catalog_text(name):
    name = ALIASES.get(name, name)
    if name == "last":
        return print_system(catalog("last"))
    return _TEXTS[name].strip() + "\n"
