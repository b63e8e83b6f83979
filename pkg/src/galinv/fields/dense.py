"""Dense integer polynomial kernels for the covariance engine.

Polynomials in (t, x, y, z) up to total degree 6 are int64 coefficient
vectors over a fixed monomial basis (ordered by degree, so the first 35
entries are the degree <= 3 subspace).  Every datum is an integer vector
plus a single exact rational scale, so the arithmetic stays exact; the hot
product kernel is numba-compiled with a pure-numpy fallback selected by the
GALINV_DISABLE_NUMBA environment variable.  Overflow is prevented by a
worst-case bound check that reroutes to an unbounded Python-int path.
"""

import os

import numpy as np
from gmpy2 import mpq

MAX_DEG = 6
FIELD_DEG = 3

_exps = []
for d in range(MAX_DEG + 1):
    for et in range(d + 1):
        for ex in range(d - et + 1):
            for ey in range(d - et - ex + 1):
                ez = d - et - ex - ey
                _exps.append((et, ex, ey, ez))
EXPS = tuple(_exps)
NB = len(EXPS)  # 210
EXP_INDEX = {e: i for i, e in enumerate(EXPS)}
NB3 = sum(1 for e in EXPS if sum(e) <= FIELD_DEG)  # 35

_mul = np.full((NB, NB), -1, dtype=np.int32)
for i, ei in enumerate(EXPS):
    for j, ej in enumerate(EXPS):
        s = tuple(a + b for a, b in zip(ei, ej))
        if sum(s) <= MAX_DEG:
            _mul[i, j] = EXP_INDEX[s]
MUL_TABLE = _mul

# derivative tables: dst, src, coef arrays per variable
_DERIV = []
for axis in range(4):
    dst, src, coef = [], [], []
    for i, e in enumerate(EXPS):
        if e[axis] == 0:
            continue
        e2 = list(e)
        e2[axis] -= 1
        dst.append(EXP_INDEX[tuple(e2)])
        src.append(i)
        coef.append(e[axis])
    _DERIV.append(
        (np.array(dst, dtype=np.int64), np.array(src, dtype=np.int64), np.array(coef, dtype=np.int64))
    )


def deriv(vec, axis):
    """d/d{t,x,y,z}[axis] of a dense vector (exact, degree drops by one)."""
    dst, src, coef = _DERIV[axis]
    out = np.zeros(NB, dtype=vec.dtype)
    np.add.at(out, dst, coef * vec[src])
    return out


USE_NUMBA = os.environ.get("GALINV_DISABLE_NUMBA", "").strip() not in ("1", "true", "yes")
if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is an install dependency
        USE_NUMBA = False

if USE_NUMBA:

    @njit(cache=True)
    def _mul_acc_kernel(out, ia, va, ib, vb, table, coef):
        for p in range(ia.shape[0]):
            i = ia[p]
            avc = coef * va[p]
            for q in range(ib.shape[0]):
                out[table[i, ib[q]]] += avc * vb[q]

    def mul_acc(out, a, b, coef=1):
        ia = np.flatnonzero(a)
        ib = np.flatnonzero(b)
        if ia.size and ib.size:
            _mul_acc_kernel(out, ia, a[ia], ib, b[ib], MUL_TABLE, np.int64(coef))

else:

    def mul_acc(out, a, b, coef=1):
        ia = np.flatnonzero(a)
        ib = np.flatnonzero(b)
        if not (ia.size and ib.size):
            return
        prod = np.outer(a[ia], b[ib]).ravel() * coef
        idx = MUL_TABLE[np.ix_(ia, ib)].ravel()
        np.add.at(out, idx, prod)


def mul_acc_object(out, a, b, coef=1):
    """Unbounded-precision product accumulation (overflow fallback)."""
    ia = np.flatnonzero(a)
    ib = np.flatnonzero(b)
    for i in ia:
        ai = int(a[i]) * coef
        for j in ib:
            out[MUL_TABLE[i, j]] += ai * int(b[j])


def product_bound(a, b, coef=1):
    """Worst-case |entry| bound of the accumulated product."""
    ia = np.flatnonzero(a)
    ib = np.flatnonzero(b)
    if not (ia.size and ib.size):
        return 0
    return int(np.abs(a[ia]).max()) * int(np.abs(b[ib]).max()) * abs(int(coef)) * min(
        ia.size, ib.size
    )


SAFE_LIMIT = 1 << 61


def poly_to_dense(p):
    """(int64 vector, mpq scale) with value == scale * vector, exact."""
    from math import lcm

    den = 1
    for c in p.terms.values():
        den = lcm(den, int(c.denominator))
    vec = np.zeros(NB, dtype=np.int64)
    for e, c in p.terms.items():
        vec[EXP_INDEX[e]] = int(c * den)
    return vec, mpq(1, den)


def dense_to_poly(vec, scale, variables=("t", "x", "y", "z")):
    from ..exact.multipoly import MultiPoly

    terms = {}
    for i in np.flatnonzero(vec):
        terms[EXPS[i]] = mpq(int(vec[i])) * scale
    return MultiPoly(variables, terms)


def affine_images(affine_rows):
    """Integer degree-1 dense images + scale for rows (t', x', y', z').

    affine_rows: 4 rows of 5 rationals (coefficients of t, x, y, z, 1).
    """
    from math import lcm

    den = 1
    for row in affine_rows:
        for c in row:
            den = lcm(den, int(mpq(c).denominator))
    imgs = []
    for row in affine_rows:
        vec = np.zeros(NB, dtype=np.int64)
        names = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (0, 0, 0, 0)]
        for c, e in zip(row, names):
            v = mpq(c) * den
            if v:
                vec[EXP_INDEX[e]] = int(v)
        imgs.append(vec)
    return imgs, den


def substitution_matrix(affine_rows):
    """(S, scale): columns are deg<=3 monomial images, homogenized so that
    (F o sigma) == scale * (S @ F_dense) for every degree <= 3 polynomial."""
    imgs, den = affine_images(affine_rows)
    cols = np.zeros((NB3, NB3), dtype=np.int64)
    for col in range(NB3):
        e = EXPS[col]
        degree = sum(e)
        acc = np.zeros(NB, dtype=np.int64)
        acc[0] = den ** (FIELD_DEG - degree)
        for axis in range(4):
            for _ in range(e[axis]):
                nxt = np.zeros(NB, dtype=np.int64)
                mul_acc(nxt, acc, imgs[axis])
                acc = nxt
        cols[:, col] = acc[:NB3]
    return cols, mpq(1, den**FIELD_DEG)


def clear_denominators(mat_rows):
    """Rational matrix rows -> (int64 ndarray, mpq scale)."""
    from math import lcm

    den = 1
    for row in mat_rows:
        for c in row:
            den = lcm(den, int(mpq(c).denominator))
    arr = np.array([[int(mpq(c) * den) for c in row] for row in mat_rows], dtype=np.int64)
    return arr, mpq(1, den)
