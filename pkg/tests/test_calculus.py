"""Polynomial field calculus, motions/pullbacks, and the dense engine."""

import numpy as np
import pytest
from gmpy2 import mpq

from galinv.exact import Matrix, MultiPoly, QQ
from galinv.fields.calculus import (
    SPACETIME,
    curl,
    div,
    dt,
    eval_float,
    grad,
    laplacian,
    poly,
    random_poly,
    var,
)
from galinv.fields.motion import FieldMultiplet, GalileiMotion, pullback
from galinv.fields import dense

ROT_345 = Matrix(QQ, [["3/5", "-4/5", 0], ["4/5", "3/5", 0], [0, 0, 1]])


def test_vector_identities_random():
    rng = np.random.default_rng(0)
    for _ in range(4):
        F = tuple(random_poly(rng, 3) for _ in range(3))
        f = random_poly(rng, 3)
        assert div(curl(F)).is_zero()
        assert all(c.is_zero() for c in curl(grad(f)))


def test_curl_hand_case_with_finite_difference_oracle():
    x, y, z = var("x"), var("y"), var("z")
    F = (y * z, poly(), poly())
    got = curl(F)
    assert got == (poly(), y, -z)
    # independent numeric oracle: centered finite differences at random points
    rng = np.random.default_rng(1)
    h = 1e-6
    for _ in range(5):
        p = rng.uniform(-2, 2, 4)

        def ev(f, dx=0, dy=0, dz=0):
            return eval_float(f, p[0], p[1] + dx, p[2] + dy, p[3] + dz)

        curl_x = (ev(F[2], dy=h) - ev(F[2], dy=-h)) / (2 * h) - (
            ev(F[1], dz=h) - ev(F[1], dz=-h)
        ) / (2 * h)
        assert abs(curl_x - eval_float(got[0], *p)) < 1e-6


def test_pullback_identity_and_pure_boost():
    rng = np.random.default_rng(2)
    comps = [random_poly(rng, 2) for _ in range(4)]
    mult = FieldMultiplet((1, 1, 0), comps)
    ident = GalileiMotion()
    assert pullback(mult, ident) == mult

    v = (mpq(2), mpq(0), mpq(-1))
    moved = pullback(mult, GalileiMotion(v=v))
    sub = {
        "t": var("t"),
        "x": var("x") - var("t") * v[0],
        "y": var("y") - var("t") * v[1],
        "z": var("z") - var("t") * v[2],
    }
    # R components just move; B picks up v.R at the moved point
    for i in range(3):
        assert moved.components[i] == comps[i].substitute(sub)
    expected_B = comps[3].substitute(sub) + sum(
        (comps[i].substitute(sub) * v[i] for i in range(3)), poly()
    )
    assert moved.components[3] == expected_B


def test_pullback_is_right_action():
    rng = np.random.default_rng(3)
    comps = [random_poly(rng, 2, coeff_range=2) for _ in range(4)]
    mult = FieldMultiplet((1, 1, 1), comps)
    g1 = GalileiMotion(v=(1, -2, 0), rot=ROT_345, a=mpq(1, 2), b=(0, 1, -1))
    g2 = GalileiMotion(v=(mpq(1, 3), 0, 1), a=-1, b=(2, 0, 0))
    seq = pullback(pullback(mult, g1), g2)
    combined = pullback(mult, g2.compose(g1))
    assert seq == combined


def test_motion_inverse_and_apply():
    g = GalileiMotion(v=(1, 2, -1), rot=ROT_345, a=3, b=(mpq(1, 2), 0, 1))
    gi = g.inverse()
    pt = (mpq(2), (mpq(1), mpq(-1), mpq(4)))
    t2, x2 = g.apply(*pt)
    t3, x3 = gi.apply(t2, x2)
    assert (t3, x3) == pt


# -- dense engine ----------------------------------------------------------------


def test_dense_round_trip_and_derivatives():
    rng = np.random.default_rng(4)
    p = random_poly(rng, 3)
    vec, scale = dense.poly_to_dense(p)
    assert dense.dense_to_poly(vec, scale) == p
    for axis, name in enumerate(SPACETIME):
        dv = dense.deriv(vec, axis)
        assert dense.dense_to_poly(dv, scale) == p.diff(name)


def test_dense_product_matches_dict_engine():
    rng = np.random.default_rng(5)
    for _ in range(5):
        p = random_poly(rng, 3)
        q = random_poly(rng, 3)
        pv, ps = dense.poly_to_dense(p)
        qv, qs = dense.poly_to_dense(q)
        out = np.zeros(dense.NB, dtype=np.int64)
        dense.mul_acc(out, pv, qv)
        assert dense.dense_to_poly(out, ps * qs) == p * q
        # object fallback gives identical results
        out2 = np.zeros(dense.NB, dtype=object)
        dense.mul_acc_object(out2, pv, qv)
        assert np.array_equal(out, out2.astype(np.int64))


def test_substitution_matrix_matches_substitute():
    rng = np.random.default_rng(6)
    g = GalileiMotion(v=(2, -1, 0), rot=ROT_345, a=1, b=(0, mpq(1, 2), -1))
    sub = g.inverse_substitution()
    inv = g.inverse()
    rows = [[mpq(1), 0, 0, 0, inv.a]]
    for i in range(3):
        rows.append([inv.v[i]] + [inv.rot.entries[i][j] for j in range(3)] + [inv.b[i]])
    S, scale = dense.substitution_matrix(rows)
    for _ in range(3):
        p = random_poly(rng, 3, coeff_range=3)
        vec, ps = dense.poly_to_dense(p)
        moved = S @ vec[: dense.NB3]
        full = np.zeros(dense.NB, dtype=np.int64)
        full[: dense.NB3] = moved
        assert dense.dense_to_poly(full, ps * scale) == p.substitute(sub)


def test_laplacian_of_harmonic():
    x, y = var("x"), var("y")
    assert laplacian(x * x - y * y).is_zero()
    assert laplacian(dt(x * x * var("t"))) == poly({(0, 0, 0, 0): 2})
