"""Classification of first-order systems against the covariant-form library.

For linear systems each equation's homogeneous part is matched syntactically
(up to one exact rational scale) against the form library evaluated on the
system's declared field multiplets; the matched names are then organized
into closed bracketed sets, which names the residual representation.  Every
verdict is cross-validated by the exact covariance engine: with a declared
residual spec the engine checks equivariance directly, and without one the
classifier tests that transformed residuals lie in the exact rational span
of substituted residuals (one mixing matrix for all sampled multiplets).
"""

import numpy as np
from gmpy2 import mpq

from ..errors import GalinvError
from ..exact.multipoly import MultiPoly
from ..fields import covariance as cov
from ..fields.dense import NB, NB3
from ..fields.forms import DIF_SETS, FORM_DEFS
from .model import DERIVS, comp_names


# boost-filtration level parity per slot name: conjugating by these signs
# turns the stored (pullback-convention) slot values into the printed
# passive-orientation values the form library is written in
SLOT_PARITY = {"A": 1, "R": 1, "B": -1, "U": -1, "W": -1, "K": -1, "C": 1, "N": 1}


def _slot_fields(system, spec):
    """Passive-orientation rep slot values as jet symbols."""
    out = {}
    for (sign, target), slot in zip(spec.entries, spec.rep.layout.slots):
        s = sign * SLOT_PARITY[slot.name]
        if slot.kind == "scalar":
            out[slot.name] = system.jet_var(target) * s
        else:
            out[slot.name] = tuple(
                system.jet_var(c) * s for c in comp_names(target, "vector")
            )
    return out


class _JetCalculus:
    """grad/div/curl/dt on degree-1 jet polynomials of one system."""

    def __init__(self, system):
        self.system = system

    def _d(self, p, axis):
        s = self.system
        nparams = len(s.params)
        out = MultiPoly.zero(s.jet_vars)
        ai = DERIVS.index(axis)
        for exp, coef in p.terms.items():
            e2 = list(exp)
            moved = False
            for i in range(nparams, len(exp)):
                if exp[i] and (i - nparams) % len(DERIVS) == 0:
                    if exp[i] != 1 or moved:
                        raise GalinvError("form matching needs linear fields")
                    e2[i] = 0
                    e2[i + ai] = 1
                    moved = True
                elif exp[i]:
                    raise GalinvError("form matching needs underived fields")
            if moved:
                out = out + MultiPoly(s.jet_vars, {tuple(e2): coef})
        return out

    def diff(self, val, axis):
        if isinstance(val, tuple):
            return tuple(self._d(c, axis) for c in val)
        return self._d(val, axis)


class _JetFormCalculus:
    """Calculus adapter over jet symbols, for the form library."""

    def __init__(self, system):
        self._c = _JetCalculus(system)

    def dt(self, x):
        return self._c.diff(x, "t")

    def grad(self, x):
        return tuple(self._c.diff(x, a) for a in "xyz")

    def div(self, v):
        return self._c.diff(v[0], "x") + self._c.diff(v[1], "y") + self._c.diff(v[2], "z")

    def curl(self, v):
        d = self._c.diff
        return (
            d(v[2], "y") - d(v[1], "z"),
            d(v[0], "z") - d(v[2], "x"),
            d(v[1], "x") - d(v[0], "y"),
        )


def _eval_form(system, spec, form_name):
    kind, needs, fn = FORM_DEFS[form_name]
    slots = _slot_fields(system, spec)
    if not set(needs) <= set(slots):
        return None
    return kind, fn(slots, _JetFormCalculus(system))


def _field_part(system, poly):
    """Terms with no source symbols and no parameters."""
    nparams = len(system.params)
    nf = len(system.field_comps) * len(DERIVS)
    out = {}
    for exp, coef in poly.terms.items():
        if any(exp[:nparams]):
            continue
        if any(exp[nparams + nf :]):
            continue
        out[exp] = coef
    return MultiPoly(system.jet_vars, out)


def _match_scale(target, form):
    """target == c * form for an exact rational c, or None."""
    if isinstance(target, tuple) != isinstance(form, tuple):
        return None
    ts = target if isinstance(target, tuple) else (target,)
    fs = form if isinstance(form, tuple) else (form,)
    c = None
    for t, f in zip(ts, fs):
        for exp, coef in f.terms.items():
            tc = t.terms.get(exp, mpq(0))
            cc = tc / coef
            if c is None:
                c = cc
            elif cc != c:
                return None
    if c is None or c == 0:
        return None
    for t, f in zip(ts, fs):
        if not (t - f * c).is_zero():
            return None
    return c


def match_forms(system):
    """Per-equation form matches for a linear system."""
    matches = {}
    for eq in system.equations:
        if eq.kind == "scalar":
            target = _field_part(system, eq.polys[0])
        else:
            target = tuple(_field_part(system, p) for p in eq.polys)
        found = None
        for si, spec in enumerate(system.rep_specs["fields"]):
            candidates = []
            for fset in DIF_SETS.get(spec.label, []):
                for n in fset.names:
                    if n not in candidates:
                        candidates.append(n)
            candidates += [n for n in FORM_DEFS if n not in candidates]
            for fname in candidates:
                kind = FORM_DEFS[fname][0]
                if kind != eq.kind:
                    continue
                got = _eval_form(system, spec, fname)
                if got is None:
                    continue
                c = _match_scale(target, got[1])
                if c is not None:
                    found = {"form": fname, "scale": str(c), "spec": si}
                    break
            if found:
                break
        matches[eq.name] = found
    return matches


def closed_set_decomposition(system, matches):
    """Organize matched forms into catalog bracketed sets; returns the list
    of (set names, pattern rep) consumed, or None if not fully covered."""
    by_spec = {}
    for eq, m in matches.items():
        if m is None:
            return None
        by_spec.setdefault(m["spec"], []).append(m["form"])
    # closed bracketed sets are carrier-independent combinations, so accept
    # any catalog set whose members are all matched
    all_sets = {}
    for sets in DIF_SETS.values():
        for fset in sets:
            all_sets[tuple(sorted(fset.names))] = fset
    sets = sorted(all_sets.values(), key=lambda s: -len(s.names))
    decomposition = []
    for si, forms in by_spec.items():
        remaining = sorted(forms)
        for fset in sets:
            names = sorted(fset.names)
            while names and all(n in remaining for n in names):
                for n in names:
                    remaining.remove(n)
                decomposition.append(
                    {"set": list(fset.names), "rep": "D(%d,%d,%d)" % fset.pattern_label}
                )
                if not remaining:
                    break
        if remaining:
            return None
    return decomposition


def _span_covariance(system, motions=4, multiplets=3, seed=0):
    """Covariance without a declared residual spec: transformed residuals
    must be one fixed rational combination of substituted residuals."""
    compiled = cov.CompiledSystem(system)
    rng = np.random.default_rng(seed)
    for mi in range(motions):
        motion = cov.random_motion(rng)
        data = cov._motion_data_no_resid(system, motion)
        lhs_rows = None
        rhs_rows = None
        pv = {p: int(rng.integers(1, 4)) for p in system.params}
        tables = compiled.instantiate(pv)
        for _ in range(multiplets):
            fvecs = cov.random_multiplet_vectors(rng, compiled.nf)
            svecs = cov.random_multiplet_vectors(rng, compiled.ns)
            side1, side2 = cov.raw_sides(compiled, tables, data, fvecs, svecs)
            if lhs_rows is None:
                nrows = len(compiled.rows)
                lhs_rows = [[] for _ in range(nrows)]
                rhs_rows = [[] for _ in range(nrows)]
            for r in range(len(compiled.rows)):
                lhs_rows[r].extend(side1[r])
                rhs_rows[r].extend(side2[r])
        for i in range(len(lhs_rows)):
            if not _exact_solvable(rhs_rows, lhs_rows[i]):
                return False, {"motion": repr(motion), "equation_row": compiled.rows[i][0]}
    return True, None


def _exact_solvable(basis_rows, target):
    ncols = len(basis_rows)
    nrows = len(target)
    aug = [[basis_rows[j][r] for j in range(ncols)] + [target[r]] for r in range(nrows)]
    r = 0
    for c in range(ncols):
        piv = None
        for rr in range(r, nrows):
            if aug[rr][c] != 0:
                piv = rr
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for rr in range(nrows):
            if rr != r and aug[rr][c] != 0:
                f = aug[rr][c]
                aug[rr] = [x - f * y for x, y in zip(aug[rr], aug[r])]
        r += 1
    for rr in range(nrows):
        if aug[rr][ncols] != 0 and all(aug[rr][c] == 0 for c in range(ncols)):
            return False
    return True


def classify(system, trials=8, motions=5, seed=0):
    """Classification report: form matches, closed-set structure, covariance."""
    report = {"system": system.name, "linear": system.is_linear()}
    if system.metadata.get("relativistic"):
        report["covariant"] = None
        report["detail"] = "relativistic precursor: no boost action declared"
        return report
    if report["linear"] and system.rep_specs["fields"]:
        matches = match_forms(system)
        report["matched_forms"] = matches
        decomp = closed_set_decomposition(system, matches)
        if decomp is not None:
            report["residual_rep"] = decomp
        else:
            report["residual_rep"] = None
    if system.rep_specs["resid"]:
        r = cov.check_system_covariance(system, trials=trials, motions=motions, seed=seed)
        report["covariant"] = r.passed
        if not r.passed:
            report["counterexample"] = r.counterexample
    elif system.rep_specs["fields"]:
        ok, ce = _span_covariance(system, motions=motions, multiplets=3, seed=seed)
        report["covariant"] = ok
        if not ok:
            report["counterexample"] = ce
    else:
        report["covariant"] = None
        report["detail"] = "no field rep declared; covariance not checkable"
    return report
