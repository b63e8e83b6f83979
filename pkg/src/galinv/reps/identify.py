"""Identify a (S_a, eta_a) generator set with a catalog multiplet.

The search space is slot permutations (among slots of equal kind) combined
with per-slot signs: enough for every contraction output, since similarity
by the contraction matrices never mixes slot bases beyond that.
"""

from itertools import permutations, product

from ..errors import NotARep
from ..exact.matrix import Matrix, QI, commutator, mat_mul
from ..exact.scalars import GaussianRational
from .catalog import all_labels, build_galilei_rep, eps3, spin1


def _check_e3(S, eta, dim):
    for a in range(3):
        for b in range(3):
            target = Matrix.zeros(QI, dim)
            for c in range(3):
                if eps3(a, b, c):
                    target = target + S[c] * GaussianRational(0, eps3(a, b, c))
            if commutator(S[a], S[b]) != target:
                raise NotARep("[S_%d, S_%d] violates the bracket table" % (a + 1, b + 1))
            target_eta = Matrix.zeros(QI, dim)
            for c in range(3):
                if eps3(a, b, c):
                    target_eta = target_eta + eta[c] * GaussianRational(0, eps3(a, b, c))
            if commutator(eta[a], S[b]) != target_eta:
                raise NotARep("[eta_%d, S_%d] violates the bracket table" % (a + 1, b + 1))
            if not commutator(eta[a], eta[b]).is_zero():
                raise NotARep("[eta_%d, eta_%d] != 0" % (a + 1, b + 1))


def _detect_slots(S, dim):
    """Slot structure (list of ("vector"|"scalar", offset)) from S_a, or None."""
    spin = [spin1(a) for a in range(3)]
    zero = GaussianRational(0)
    slots = []
    p = 0
    while p < dim:
        scalar = all(
            S[a].entries[p][j] == zero and S[a].entries[j][p] == zero
            for a in range(3)
            for j in range(dim)
        )
        if scalar:
            slots.append(("scalar", p))
            p += 1
            continue
        if p + 3 > dim:
            return None
        good = True
        for a in range(3):
            for i in range(3):
                for j in range(dim):
                    want = spin[a].entries[i][j - p] if p <= j < p + 3 else zero
                    if S[a].entries[p + i][j] != want or (
                        j < p or j >= p + 3
                    ) and S[a].entries[j][p + i] != zero:
                        good = False
        if not good:
            return None
        slots.append(("vector", p))
        p += 3
    return slots


def _signed_perm_matrix(dim, mapping):
    """mapping: list of (cat_offset, cand_offset, width, sign)."""
    rows = [[GaussianRational(0)] * dim for _ in range(dim)]
    for cat_off, cand_off, width, sign in mapping:
        for i in range(width):
            rows[cat_off + i][cand_off + i] = GaussianRational(sign)
    return Matrix(QI, rows)


def identify_rep(S, eta):
    """Return (label, basis map P) with P X P^-1 matching the catalog
    generators exactly, or the string "decomposable/unknown"."""
    dim = S[0].rows
    _check_e3(S, eta, dim)
    slots = _detect_slots(S, dim)
    if slots is None:
        return "decomposable/unknown"
    cand_vec = [off for kind, off in slots if kind == "vector"]
    cand_scal = [off for kind, off in slots if kind == "scalar"]

    for label in all_labels():
        rep = build_galilei_rep(label)
        if rep.dimension != dim:
            continue
        cat_vec = [rep.layout.offsets[n][0] for n in rep.layout.vector_slots()]
        cat_scal = [rep.layout.offsets[n][0] for n in rep.layout.scalar_slots()]
        if len(cat_vec) != len(cand_vec) or len(cat_scal) != len(cand_scal):
            continue
        nslots = len(cand_vec) + len(cand_scal)
        for vperm in permutations(range(len(cand_vec))):
            for sperm in permutations(range(len(cand_scal))):
                for signs in product((1, -1), repeat=nslots - 1):
                    signs = (1,) + signs
                    mapping = []
                    k = 0
                    for ci, off in enumerate(cand_vec):
                        mapping.append((cat_vec[vperm[ci]], off, 3, signs[k]))
                        k += 1
                    for ci, off in enumerate(cand_scal):
                        mapping.append((cat_scal[sperm[ci]], off, 1, signs[k]))
                        k += 1
                    P = _signed_perm_matrix(dim, mapping)
                    Pinv = P.transpose()  # signed permutation
                    ok = True
                    for a in range(3):
                        if mat_mul(mat_mul(P, eta[a]), Pinv) != rep.boost_generators[a]:
                            ok = False
                            break
                        if mat_mul(mat_mul(P, S[a]), Pinv) != rep.rotation_generators[a]:
                            ok = False
                            break
                    if ok:
                        return rep.label, P
    return "decomposable/unknown"
