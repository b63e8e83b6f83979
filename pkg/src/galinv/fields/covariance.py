"""Exact symbolic covariance verification of catalog systems.

For a motion g and a polynomial multiplet (F, S) the check asserts, as a
polynomial identity with integer arithmetic throughout,

    Res(M_f(g) F o sigma, M_s(g) S o sigma) == M_res(g) [Res(F, S) o sigma]

where sigma = g^-1 acting on arguments.  The right side never needs a
degree-6 substitution: composing a residual with an affine map equals the
residual with chain-ruled derivative operators applied to the composed
fields, so both sides are evaluations of compiled equation forms on the
degree-3 vectors G = F o sigma.

Every quantity is an int64 dense vector with one exact mpq scale per
homogeneity class (field-linear, field-bilinear, source-linear), so mixed
rational motions stay exact; comparisons cross-multiply the scales.
"""

from math import lcm

import numpy as np
from gmpy2 import mpq

from ..errors import GalinvError
from ..exact.matrix import Matrix, QQ
from ..exact.multipoly import MultiPoly
from ..reps.catalog import STANDARD_ROTATIONS
from .calculus import SPACETIME
from .dense import (
    NB,
    NB3,
    SAFE_LIMIT,
    clear_denominators,
    dense_to_poly,
    deriv,
    mul_acc,
    mul_acc_object,
    product_bound,
    substitution_matrix,
)
from .motion import GalileiMotion

PARTS = ("lin_field", "bilinear", "lin_source")


class CompiledSystem:
    """System equations flattened to scalar rows of term lists."""

    def __init__(self, system):
        self.system = system
        self.nf = len(system.field_comps)
        self.ns = len(system.source_comps)
        self.rows = []  # (eq_name, comp_index_in_eq)
        nparams = len(system.params)
        nder = 5
        self.terms = []  # per row: dict part -> list of term tuples
        for eq in system.equations:
            for ci, _ in enumerate(eq.polys):
                self.rows.append((eq.name, ci))
                parts = {"lin_field": [], "bilinear": [], "lin_source": []}
                for exp, coef in eq.polys[ci].terms.items():
                    pexp = exp[:nparams]
                    jet = [
                        (i // nder, i % nder, e)
                        for i, e in enumerate(exp[nparams:])
                        if e
                    ]
                    atoms = []
                    for comp, d, e in jet:
                        atoms.extend([(comp, d)] * e)
                    if len(atoms) == 1:
                        comp, d = atoms[0]
                        if comp < self.nf:
                            parts["lin_field"].append((coef, pexp, comp, d))
                        else:
                            parts["lin_source"].append((coef, pexp, comp - self.nf, d))
                    elif len(atoms) == 2:
                        (c1, d1), (c2, d2) = atoms
                        if c1 >= self.nf or c2 >= self.nf:
                            raise GalinvError("bilinear source term unsupported")
                        parts["bilinear"].append((coef, pexp, c1, d1, c2, d2))
                    else:
                        raise GalinvError("term of field degree %d" % len(atoms))
                self.terms.append(parts)

    def instantiate(self, param_values):
        """Integer coefficient tables for concrete integer parameter values.

        Returns {part: (scale mpq, rows)} with rows[i] a list of integer-
        coefficient terms; scale * sum(...) is the exact value.
        """
        pv = [int(param_values[p]) for p in self.system.params]
        out = {}
        for part in PARTS:
            den = 1
            numers = []
            for parts in self.terms:
                row = []
                for term in parts[part]:
                    coef, pexp = term[0], term[1]
                    val = mpq(coef)
                    for v, e in zip(pv, pexp):
                        val *= mpq(v) ** e
                    if val == 0:
                        continue
                    row.append((val,) + term[2:])
                    den = lcm(den, int(val.denominator))
                numers.append(row)
            rows = [
                [(int(val * den),) + tuple(rest) for (val, *rest) in row]
                for row in numers
            ]
            out[part] = (mpq(1, den), rows)
        return out


def _apply_ops(vec, d, ops):
    """Derivative d applied with op table ops ("plain" or chain-ruled)."""
    if d == 0:
        return vec * ops["value_factor"]
    return ops["d"][d - 1](vec)


def _make_plain_ops():
    return {
        "value_factor": 1,
        "scale": mpq(1),
        "d": [
            lambda v: deriv(v, 0),
            lambda v: deriv(v, 1),
            lambda v: deriv(v, 2),
            lambda v: deriv(v, 3),
        ],
    }


def _make_chain_ops(motion):
    """Chain-ruled operators so that (d F) o sigma = D_chain (F o sigma).

    d_t -> d_t + v . grad,   d_i -> sum_j R[j][i] d_j,
    cleared to integers with one common scale.
    """
    den = 1
    for c in motion.v:
        den = lcm(den, int(mpq(c).denominator))
    for i in range(3):
        for j in range(3):
            den = lcm(den, int(mpq(motion.rot.entries[i][j]).denominator))
    vi = [int(mpq(c) * den) for c in motion.v]
    R = [[int(mpq(motion.rot.entries[i][j]) * den) for j in range(3)] for i in range(3)]

    def dt_op(v):
        out = deriv(v, 0) * den
        for j in range(3):
            if vi[j]:
                out = out + deriv(v, j + 1) * vi[j]
        return out

    def dx_op(i):
        def op(v):
            out = np.zeros(NB, dtype=np.int64)
            for j in range(3):
                if R[j][i]:
                    out = out + deriv(v, j + 1) * R[j][i]
            return out

        return op

    return {
        "value_factor": den,
        "scale": mpq(1, den),
        "d": [dt_op, dx_op(0), dx_op(1), dx_op(2)],
    }


def _eval_rows(compiled, tables, fvecs, svecs, ops):
    """Evaluate all equation rows; returns {part: (scale, ndarray rows x NB)}.

    Uses Python-int accumulation automatically if int64 bounds could overflow.
    """
    nrows = len(compiled.rows)
    out = {}
    fder = {}
    sder = {}

    def get_deriv(bank, vecs, c, d):
        key = (c, d)
        if key not in bank:
            bank[key] = _apply_ops(vecs[c], d, ops)
        return bank[key]

    for part in PARTS:
        scale_coefs, rows = tables[part]
        acc = np.zeros((nrows, NB), dtype=np.int64)
        acc_obj = None
        for r, terms in enumerate(rows):
            for term in terms:
                if part == "lin_field":
                    coef, c, d = term
                    vec = get_deriv(fder, fvecs, c, d)
                    contrib_bound = int(np.abs(vec).max(initial=0)) * abs(coef)
                    if acc_obj is None and contrib_bound < SAFE_LIMIT:
                        acc[r] += vec * coef
                    else:
                        if acc_obj is None:
                            acc_obj = acc.astype(object)
                        acc_obj[r] += vec.astype(object) * coef
                elif part == "lin_source":
                    coef, c, d = term
                    vec = get_deriv(sder, svecs, c, d)
                    contrib_bound = int(np.abs(vec).max(initial=0)) * abs(coef)
                    if acc_obj is None and contrib_bound < SAFE_LIMIT:
                        acc[r] += vec * coef
                    else:
                        if acc_obj is None:
                            acc_obj = acc.astype(object)
                        acc_obj[r] += vec.astype(object) * coef
                else:
                    coef, c1, d1, c2, d2 = term
                    a = get_deriv(fder, fvecs, c1, d1)
                    b = get_deriv(fder, fvecs, c2, d2)
                    if acc_obj is None and product_bound(a, b, coef) < SAFE_LIMIT:
                        mul_acc(acc[r], a, b, coef)
                    else:
                        if acc_obj is None:
                            acc_obj = acc.astype(object)
                        row_obj = acc_obj[r]
                        mul_acc_object(row_obj, a, b, coef)
        final = acc if acc_obj is None else acc_obj
        if part == "bilinear":
            scale = scale_coefs * ops["scale"] ** 2
        else:
            scale = scale_coefs * ops["scale"]
        out[part] = (scale, final)
    return out


def _stack35(vecs):
    arr = np.zeros((len(vecs), NB), dtype=np.int64)
    for i, v in enumerate(vecs):
        arr[i] = v
    return arr


def _apply_matrix(mat_int, arr):
    """Exact int matrix application, with object fallback on overflow risk."""
    bound = int(np.abs(mat_int).max(initial=0)) * int(np.abs(arr).max(initial=0)) * mat_int.shape[1]
    if bound < SAFE_LIMIT and arr.dtype == np.int64:
        return mat_int @ arr
    return mat_int.astype(object) @ arr.astype(object)


def _compare(scale1, arr1, scale2, arr2):
    """Exact equality of scale1*arr1 and scale2*arr2; returns mismatch rows."""
    ratio = scale1 / scale2
    p, q = int(ratio.numerator), int(ratio.denominator)
    b1 = int(np.abs(arr1).max(initial=0)) * abs(p)
    b2 = int(np.abs(arr2).max(initial=0)) * abs(q)
    if b1 < SAFE_LIMIT and b2 < SAFE_LIMIT and arr1.dtype == np.int64 and arr2.dtype == np.int64:
        diff = arr1 * p - arr2 * q
    else:
        diff = arr1.astype(object) * p - arr2.astype(object) * q
    bad = np.flatnonzero(np.any(diff != 0, axis=1))
    return [(int(r), diff[r], scale2 / q) for r in bad]


class CovarianceReport:
    def __init__(self, system_name, trials, motions, seed):
        self.system = system_name
        self.trials = trials
        self.motions = motions
        self.seed = seed
        self.passed = True
        self.counterexample = None

    def fail(self, detail):
        self.passed = False
        if self.counterexample is None:
            self.counterexample = detail

    def as_dict(self):
        out = {
            "system": self.system,
            "trials": self.trials,
            "motions": self.motions,
            "seed": self.seed,
            "pass": self.passed,
        }
        if self.counterexample:
            out["counterexample"] = self.counterexample
        return out


ROTATION_POOL = [
    Matrix.identity(QQ, 3),
    Matrix(QQ, STANDARD_ROTATIONS["perm_xyz"]),
    Matrix(QQ, STANDARD_ROTATIONS["flip_xy"]),
    Matrix(QQ, STANDARD_ROTATIONS["z_3_4_5"]),
    Matrix(QQ, STANDARD_ROTATIONS["x_3_4_5"]),
]


def random_motion(rng):
    """Random rational motion: integer boosts/shifts, exact rational rotation."""
    rot = ROTATION_POOL[int(rng.integers(0, len(ROTATION_POOL)))]
    v = tuple(int(rng.integers(-2, 3)) for _ in range(3))
    b = tuple(int(rng.integers(-2, 3)) for _ in range(3))
    a = int(rng.integers(-2, 3))
    return GalileiMotion(v=v, rot=rot, a=a, b=b)


def random_multiplet_vectors(rng, count, max_degree=3, coeff_range=5):
    vecs = []
    for _ in range(count):
        v = np.zeros(NB, dtype=np.int64)
        for i in range(NB3):
            from .dense import EXPS

            if sum(EXPS[i]) <= max_degree:
                v[i] = int(rng.integers(-coeff_range, coeff_range + 1))
        vecs.append(v)
    return vecs


def _motion_data(system, motion):
    """Per-(system, motion) precomputation."""
    inv = motion.inverse()
    rows = []
    for target in range(4):
        if target == 0:
            row = [mpq(1), 0, 0, 0, inv.a]
        else:
            i = target - 1
            row = [inv.v[i]] + [inv.rot.entries[i][j] for j in range(3)] + [inv.b[i]]
        rows.append(row)
    S, s_sub = substitution_matrix(rows)

    data = {"sub": S, "s_sub": s_sub, "chain": _make_chain_ops(motion)}
    for which in ("fields", "sources", "resid"):
        M = system.transform_matrix(which, motion)
        if M is None:
            data[which] = None
        else:
            data[which] = clear_denominators(M.entries)
    return data


def _motion_data_no_resid(system, motion):
    """Like _motion_data but without requiring a residual spec."""
    inv = motion.inverse()
    rows = []
    for target in range(4):
        if target == 0:
            row = [mpq(1), 0, 0, 0, inv.a]
        else:
            i = target - 1
            row = [inv.v[i]] + [inv.rot.entries[i][j] for j in range(3)] + [inv.b[i]]
        rows.append(row)
    S, s_sub = substitution_matrix(rows)
    data = {"sub": S, "s_sub": s_sub, "chain": _make_chain_ops(motion)}
    for which in ("fields", "sources"):
        M = system.transform_matrix(which, motion)
        data[which] = None if M is None else clear_denominators(M.entries)
    return data


def raw_sides(compiled, tables, data, fvecs, svecs):
    """Both sides of the equivariance identity as exact mpq row lists,
    before any residual mixing: side1 = Res(transformed), side2 = Res o sigma.
    Used by the classifier to test span membership when no residual spec is
    declared."""
    S, s_sub = data["sub"], data["s_sub"]
    Gf = [_apply_matrix(S, v[:NB3]) for v in fvecs]
    Gs = [_apply_matrix(S, v[:NB3]) for v in svecs]

    def pad(vs):
        out = []
        for v in vs:
            w = np.zeros(NB, dtype=v.dtype if isinstance(v, np.ndarray) else object)
            w[:NB3] = v
            out.append(w)
        return out

    Gf, Gs = pad(Gf), pad(Gs)
    Mf_int, s_Mf = data["fields"]
    F1 = list(_apply_matrix(Mf_int, np.array(Gf)))
    if Gs:
        Ms_int, s_Ms = data["sources"]
        S1 = list(_apply_matrix(Ms_int, np.array(Gs)))
    else:
        s_Ms = mpq(1)
        S1 = []
    plain = _make_plain_ops()
    side1 = _eval_rows(compiled, tables, F1, S1, plain)
    side2 = _eval_rows(compiled, tables, Gf, Gs, data["chain"])

    def collapse(sides, scales):
        nrows = len(compiled.rows)
        rows = [[mpq(0)] * NB for _ in range(nrows)]
        for part in PARTS:
            sc, arr = sides[part]
            sc = sc * scales[part]
            for r in range(nrows):
                vec = arr[r]
                for k in np.flatnonzero(vec):
                    rows[r][int(k)] += mpq(int(vec[k])) * sc
        return rows

    scales1 = {
        "lin_field": s_sub * s_Mf,
        "bilinear": (s_sub * s_Mf) ** 2,
        "lin_source": s_sub * s_Ms,
    }
    scales2 = {"lin_field": s_sub, "bilinear": s_sub**2, "lin_source": s_sub}
    return collapse(side1, scales1), collapse(side2, scales2)


def check_once(compiled, tables, data, fvecs, svecs):
    """One exact equivariance check; returns [] or mismatch descriptions."""
    S, s_sub = data["sub"], data["s_sub"]
    Gf = [_apply_matrix(S, v[:NB3]) for v in fvecs]
    Gs = [_apply_matrix(S, v[:NB3]) for v in svecs]

    def pad(vs):
        out = []
        for v in vs:
            w = np.zeros(NB, dtype=v.dtype if isinstance(v, np.ndarray) else object)
            w[:NB3] = v
            out.append(w)
        return out

    Gf, Gs = pad(Gf), pad(Gs)

    Mf_int, s_Mf = data["fields"]
    F1 = list(_apply_matrix(Mf_int, np.array(Gf)))
    if Gs:
        Ms_int, s_Ms = data["sources"]
        S1 = list(_apply_matrix(Ms_int, np.array(Gs)))
    else:
        s_Ms = mpq(1)
        S1 = []

    plain = _make_plain_ops()
    side1 = _eval_rows(compiled, tables, F1, S1, plain)
    side2_raw = _eval_rows(compiled, tables, Gf, Gs, data["chain"])

    Mres_int, s_Mres = data["resid"]
    mismatches = []
    for part in PARTS:
        sc1, arr1 = side1[part]
        if part == "bilinear":
            sc1 = sc1 * (s_sub * s_Mf) ** 2
        elif part == "lin_field":
            sc1 = sc1 * s_sub * s_Mf
        else:
            sc1 = sc1 * s_sub * s_Ms
        sc2, arr2 = side2_raw[part]
        arr2 = _apply_matrix(Mres_int, arr2)
        if part == "bilinear":
            sc2 = sc2 * s_sub**2 * s_Mres
        else:
            sc2 = sc2 * s_sub * s_Mres
        for row, diffvec, dscale in _compare(sc1, arr1, sc2, arr2):
            eq_name, ci = compiled.rows[row]
            poly = dense_to_poly(np.asarray(diffvec, dtype=object), dscale, SPACETIME)
            mismatches.append(
                {
                    "equation": eq_name,
                    "component": ci,
                    "part": part,
                    "difference": str(poly),
                }
            )
    return mismatches


def check_system_covariance(
    system, trials=50, motions=10, seed=0, motion_list=None, param_values=None
):
    """Exact covariance over random multiplets x random rational motions."""
    if system.metadata.get("relativistic"):
        raise GalinvError("system %r declares no boost action" % system.name)
    compiled = CompiledSystem(system)
    rng = np.random.default_rng(seed)
    if param_values is None:
        param_values = {}
    report = CovarianceReport(system.name, trials, motions, seed)
    mlist = motion_list or [random_motion(rng) for _ in range(motions)]
    report.motions = len(mlist)
    for mi, motion in enumerate(mlist):
        data = _motion_data(system, motion)
        for ti in range(trials):
            pv = {
                p: param_values.get(p, int(rng.integers(1, 4)) * (1 if rng.integers(0, 2) else -1))
                for p in system.params
            }
            tables = compiled.instantiate(pv)
            fvecs = random_multiplet_vectors(rng, compiled.nf)
            svecs = random_multiplet_vectors(rng, compiled.ns)
            bad = check_once(compiled, tables, data, fvecs, svecs)
            if bad:
                report.fail(
                    {
                        "motion_index": mi,
                        "trial": ti,
                        "motion": repr(motion),
                        "params": {k: str(v) for k, v in pv.items()},
                        "mismatches": bad[:3],
                    }
                )
                return report
    return report
