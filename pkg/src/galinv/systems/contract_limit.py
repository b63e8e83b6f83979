"""Leading-order limit of a field system under an eps-scaling of solutions.

Given a substitution table (component -> eps power, time derivative -> one
extra power of eps), each equation term acquires an eps exponent; the limit
system keeps, per equation, exactly the terms of minimal exponent.  This is
how the induction pair plus a scaling derived from a contraction matrix
yields the two saturated limit systems.
"""

from ..errors import GalinvError
from ..exact.multipoly import MultiPoly
from .model import DERIVS, Equation, FieldSystem, comp_names


def contract_system(system, table, name=None):
    """Limit system under the substitution table (from contract_fields)."""
    powers = {}
    for fname, kind in system.fields + system.sources:
        if fname in table.field_powers:
            k = table.field_powers[fname]
        else:
            k = 0
        for c in comp_names(fname, kind):
            powers[c] = k
    nparams = len(system.params)
    njet = len(DERIVS)

    def eps_power(exp):
        total = None
        p = 0
        for i in range(nparams, len(exp)):
            e = exp[i]
            if not e:
                continue
            rel = i - nparams
            comp = system.all_comps[rel // njet]
            d = DERIVS[rel % njet]
            p += e * (powers[comp] + (table.time_power if d == "t" else 0))
        return p

    out = FieldSystem(
        name or (system.name + "_limit"),
        system.fields,
        system.sources,
        system.params,
        [],
        metadata={"limit_of": system.name},
    )
    for eq in system.equations:
        polys = []
        for p in eq.polys:
            if not p.terms:
                polys.append(MultiPoly.zero(out.jet_vars))
                continue
            pmin = min(eps_power(exp) for exp in p.terms)
            kept = {
                exp: coef for exp, coef in p.terms.items() if eps_power(exp) == pmin
            }
            polys.append(MultiPoly(out.jet_vars, kept))
        zero_ast = ("num", (0, 0), 0)
        out.equations.append(Equation(eq.name, eq.kind, polys, zero_ast, zero_ast))
    return out


def specialize(system, zero_params, name=None):
    """System with the named parameters set to zero (terms dropped)."""
    zeroed = set(zero_params)
    unknown = zeroed - set(system.params)
    if unknown:
        raise GalinvError("unknown parameters %s" % sorted(unknown))
    keep = [p for p in system.params if p not in zeroed]
    out = FieldSystem(
        name or system.name, system.fields, system.sources, keep, [],
        metadata=dict(system.metadata),
    )
    nold = len(system.params)
    remap = {i: keep.index(p) for i, p in enumerate(system.params) if p in keep}

    def convert(p):
        terms = {}
        for exp, coef in p.terms.items():
            if any(exp[i] and system.params[i] in zeroed for i in range(nold)):
                continue
            new_exp = [0] * len(out.jet_vars)
            for i, e in enumerate(exp):
                if not e:
                    continue
                if i < nold:
                    new_exp[remap[i]] = e
                else:
                    new_exp[len(keep) + (i - nold)] = e
            terms[tuple(new_exp)] = coef
        return MultiPoly(out.jet_vars, terms)

    zero_ast = ("num", (0, 0), 0)
    for eq in system.equations:
        out.equations.append(
            Equation(eq.name, eq.kind, tuple(convert(p) for p in eq.polys),
                     zero_ast, zero_ast)
        )
    out.rep_specs = {k: list(v) for k, v in system.rep_specs.items()}
    return out
