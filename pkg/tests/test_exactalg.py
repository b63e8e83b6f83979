"""Exact scalar rings and matrices: ring axioms, canonical forms, limits."""

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from galinv.errors import DimensionMismatch, NotNilpotent, RingMismatch, SingularLimit
from galinv.exact import (
    GaussianRational,
    LAURENT,
    LaurentPoly,
    Matrix,
    MultiPoly,
    PolyRing,
    QI,
    QQ,
    commutator,
    gauss,
    laurent_limit,
    mat_mul,
    nilpotent_exp,
    rat,
    rat_str,
)
from galinv.reps.catalog import spin1

rationals = st.fractions(max_denominator=50).map(lambda f: mpq(f.numerator, f.denominator))


def test_rational_canonical_form():
    q = rat(6, -4)
    assert q.numerator == -3 and q.denominator == 2
    assert rat("3/5") + rat("2/5") == 1
    assert rat_str(rat(-7, 21)) == "-1/3"
    assert rat_str(rat(4, 2)) == "2"


@given(rationals, rationals, rationals)
def test_rational_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    # canonical form after every operation
    s = a * b + c
    from math import gcd

    assert gcd(abs(int(s.numerator)), int(s.denominator)) == 1
    assert s.denominator > 0


@given(rationals, rationals, rationals, rationals)
def test_gaussian_ring_axioms(a, b, c, d):
    x = gauss(a, b)
    y = gauss(c, d)
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    if y:
        assert (x / y) * y == x


def test_gaussian_display():
    assert str(gauss(1, -2)) == "1-2 i"
    assert str(gauss(0, mpq(1, 3))) == "1/3 i"


# -- matrices -------------------------------------------------------------------


def test_mat_mul_identity_and_k_row():
    m = Matrix(QQ, [[1, 2], [3, 4]])
    assert mat_mul(Matrix.identity(QQ, 2), m) == m
    # k_a row vectors: k1 k1^H = [1] because i * (-i) = 1
    k1 = Matrix(QI, [[gauss(0, 1), 0, 0]])
    prod = mat_mul(k1, k1.conj_transpose())
    assert prod == Matrix(QI, [[1]])


def test_mat_mul_associative_random():
    import numpy as np

    rng = np.random.default_rng(0)
    for _ in range(5):
        mats = [
            Matrix(QQ, [[mpq(int(rng.integers(-9, 10)), int(rng.integers(1, 7)))
                         for _ in range(3)] for _ in range(3)])
            for _ in range(3)
        ]
        a, b, c = mats
        assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))


def test_mat_mul_errors():
    a = Matrix(QQ, [[1, 2]])
    with pytest.raises(DimensionMismatch):
        mat_mul(a, a)
    with pytest.raises(RingMismatch):
        mat_mul(a.transpose(), Matrix(QI, [[1], [2]]).transpose())


def test_commutator_self_and_spin():
    m = Matrix(QQ, [[1, 2], [3, 4]])
    assert commutator(m, m).is_zero()
    # spin-one matrices: [s1, s2] == i s3
    s1, s2, s3 = spin1(0), spin1(1), spin1(2)
    assert commutator(s1, s2) == s3 * gauss(0, 1)


def test_commutator_eta_block():
    # lower-triangular boost generators commute
    def eta(a):
        rows = [[gauss(0)] * 4 for _ in range(4)]
        rows[3][a] = gauss(0, 1)
        return Matrix(QI, rows)

    assert commutator(eta(0), eta(1)).is_zero()


def test_matrix_inverse_verified():
    import numpy as np

    rng = np.random.default_rng(1)
    for _ in range(5):
        m = Matrix(QQ, [[int(rng.integers(-4, 5)) for _ in range(3)] for _ in range(3)])
        try:
            inv = m.inverse()
        except ZeroDivisionError:
            continue
        assert mat_mul(m, inv) == Matrix.identity(QQ, 3)


# -- Laurent ----------------------------------------------------------------------


def test_laurent_limit_basic():
    eps2 = Matrix(LAURENT, [[LaurentPoly.eps(2)]])
    assert laurent_limit(eps2) == Matrix(QI, [[0]])
    pole = Matrix(LAURENT, [[LaurentPoly.eps(-1)]])
    with pytest.raises(SingularLimit) as exc:
        laurent_limit(pole)
    assert exc.value.pole_order == 1
    assert exc.value.row == 0 and exc.value.col == 0


def test_laurent_limit_contraction_case():
    """eps V1 S_01 V1^-1 tends exactly to the lower-triangular boost block."""
    from galinv.contraction import standard_matrix
    from galinv.reps.lorentz import vector_rep

    V1 = standard_matrix("V1")
    rep = vector_rep()
    lift = rep.S(0, 1).map(lambda x: LaurentPoly.const(x), ring=LAURENT)
    conj = mat_mul(mat_mul(V1.matrix, lift), V1.inverse) * LaurentPoly.eps(1)
    eta1 = laurent_limit(conj)
    expected = [[gauss(0)] * 4 for _ in range(4)]
    expected[3][0] = gauss(0, 1)  # k_1 in the scalar row
    assert eta1 == Matrix(QI, expected)


@given(st.lists(st.tuples(st.integers(-3, 4), rationals), max_size=4),
       st.lists(st.tuples(st.integers(-3, 4), rationals), max_size=4))
@settings(max_examples=60)
def test_laurent_limit_multiplicative(ta, tb):
    p = LaurentPoly({k: v for k, v in ta})
    q = LaurentPoly({k: v for k, v in tb})
    if p.pole_order() == 0 and q.pole_order() == 0:
        assert (p * q).limit_at_zero() == p.limit_at_zero() * q.limit_at_zero()


# -- nilpotent exponentials ---------------------------------------------------------


def test_nilpotent_exp_zero():
    z = Matrix.zeros(QQ, 3)
    assert nilpotent_exp(z) == Matrix.identity(QQ, 3)


def test_nilpotent_exp_shear_block():
    """exp(i v.eta) for the scalar-shift generators sends (U, A) to
    (U - v A, A); conjugating the scalar slot by -1 gives the boost table's
    U + v A row, which is what the identification map records."""
    rows = [[gauss(0)] * 4 for _ in range(4)]
    for a in range(3):
        pass
    v = (mpq(2), mpq(-1), mpq(3))
    m = [[gauss(0)] * 4 for _ in range(4)]
    for a in range(3):
        m[a][3] = gauss(0, 1) * gauss(v[a])  # (-k_a^H) entries are +i
    M = Matrix(QI, m) * gauss(0, 1)  # i v.eta
    e = nilpotent_exp(M)
    expected = [[gauss(1) if i == j else gauss(0) for j in range(4)] for i in range(4)]
    for a in range(3):
        expected[a][3] = gauss(-v[a])
    assert e == Matrix(QI, expected)


def test_nilpotent_exp_quadratic_matches_power_series():
    """Ten-component boost generators: direct power summation terminates at
    order two and reproduces the quadratic terms of the boost table."""
    from galinv.reps import build_galilei_rep

    rep = build_galilei_rep((3, 1, 1))
    v = (mpq(1, 2), mpq(-2), mpq(1))
    m = Matrix.zeros(QI, rep.dimension)
    for a in range(3):
        m = m + rep.boost_generators[a] * gauss(v[a])
    m = m * gauss(0, 1)  # i v.eta
    # independent oracle: explicit power summation until the power vanishes
    total = Matrix.identity(QI, rep.dimension)
    power = Matrix.identity(QI, rep.dimension)
    fact = 1
    order = 0
    while True:
        power = mat_mul(power, m)
        if power.is_zero():
            break
        order += 1
        fact *= order
        total = total + power.map(lambda x: QI.div_int(x, fact))
    assert order == 2  # series terminates exactly at the quadratic order
    assert nilpotent_exp(m) == total
    lam = rep.boost_matrix(v).map(lambda q: gauss(q), ring=QI)
    assert total == lam


def test_nilpotent_exp_inverse_property():
    from galinv.reps import build_galilei_rep

    rep = build_galilei_rep((1, 2, 1))
    v = (mpq(3), mpq(1, 3), mpq(-1))
    m = Matrix.zeros(QI, rep.dimension)
    for a in range(3):
        m = m + rep.boost_generators[a] * gauss(v[a])
    m = m * gauss(0, 1)
    assert mat_mul(nilpotent_exp(m), nilpotent_exp(-m)) == Matrix.identity(QI, rep.dimension)


def test_nilpotent_exp_rejects_non_nilpotent():
    with pytest.raises(NotNilpotent):
        nilpotent_exp(Matrix(QQ, [[1, 0], [0, 1]]), max_order=5)


# -- multivariate polynomials --------------------------------------------------------


@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_multipoly_ring_axioms(a, b, c):
    ring = ("x", "y")
    x = MultiPoly.var(ring, "x")
    y = MultiPoly.var(ring, "y")
    p = x * a + y * b + c
    q = y * a - x * c + b
    r = x * x * b + y
    assert p + q == q + p
    assert p * (q + r) == p * q + p * r
    assert (p * q).diff("x") == p.diff("x") * q + p * q.diff("x")


def test_multipoly_substitution_and_eval():
    ring = ("x", "y")
    x = MultiPoly.var(ring, "x")
    y = MultiPoly.var(ring, "y")
    p = x * x + y * 3
    sub = p.substitute({"x": y + 1, "y": x})
    assert sub == (y + 1) * (y + 1) + x * 3
    assert p.eval({"x": mpq(2), "y": mpq(1, 3)}) == 5
