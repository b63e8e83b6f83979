"""Multiplet catalog: layouts, boost maps, structural checks, identification."""

import pytest
from gmpy2 import mpq

from galinv.errors import NotARep, NotOrthogonal, UnknownLabel
from galinv.exact import Matrix, QI, QQ, gauss, mat_mul
from galinv.reps import (
    all_labels,
    build_galilei_rep,
    check_rep,
    check_rotation,
    identify_rep,
    rotation_matrix,
    so13_check,
)
from galinv.reps.catalog import GalileiRep, SlotLayout
from galinv.reps.lorentz import (
    direct_sum,
    medium_rep,
    scalar_rep,
    tensor_rep,
    vector_plus_scalar_rep,
    vector_rep,
)

TEN = [
    (0, 1, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 2, 1),
    (2, 0, 0), (2, 1, 0), (2, 1, 1), (2, 2, 1), (3, 1, 1),
]


def test_exactly_ten_labels():
    assert all_labels() == sorted(TEN)
    rejected = 0
    for m in range(4):
        for n in range(4):
            for lam in (0, 1):
                if (m, n, lam) in TEN:
                    build_galilei_rep((m, n, lam))
                else:
                    with pytest.raises(UnknownLabel):
                        build_galilei_rep((m, n, lam))
                    rejected += 1
    assert rejected == 22


def test_trivial_scalar_rep():
    rep = build_galilei_rep((0, 1, 0))
    assert rep.dimension == 1
    assert rep.boost_matrix((2, -1, 5)) == Matrix.identity(QQ, 1)
    assert all(m.is_zero() for m in rep.boost_generators)


def test_four_dim_layout_and_boost():
    rep = build_galilei_rep((1, 1, 0))
    assert [s.name for s in rep.layout.slots] == ["R", "B"]
    lam = rep.boost_matrix((mpq(1, 2), 0, -3))
    # R row unchanged, B row picks up v.R
    assert lam.entries[0][:3] == (mpq(1), mpq(0), mpq(0))
    assert lam.entries[3] == (mpq(1, 2), mpq(0), mpq(-3), mpq(1))


def test_ten_dim_layout_and_quadratic_row():
    rep = build_galilei_rep((3, 1, 1))
    assert rep.dimension == 10
    assert [s.name for s in rep.layout.slots] == ["B", "N", "W", "R"]
    v = (mpq(1), mpq(0), mpq(0))
    lam = rep.boost_matrix(v)
    # N1 row: v x W contribution puts -v1 on W row-cycling, and the
    # quadratic v (v.R) - v^2/2 R terms sit in the R block
    n1 = lam.entries[1]
    r_off = rep.layout.offsets["R"][0]
    assert n1[r_off] == mpq(1, 2)  # v1*v1 - v^2/2 = 1 - 1/2
    assert n1[r_off + 1] == mpq(0)
    b_off = rep.layout.offsets["B"][0]
    assert n1[b_off] == mpq(1)


def test_all_catalog_checks_pass():
    for label in TEN:
        checks = check_rep(build_galilei_rep(label))
        assert all(c["pass"] for c in checks), (label, checks)


def test_corrupted_boost_fails_group_law():
    rep = build_galilei_rep((1, 1, 0))
    bad = GalileiRep((1, 1, 0), SlotLayout([("R", "vector"), ("B", "scalar")]))
    # B' = B + 2 v.R breaks nothing linear but the N-free group law survives;
    # corrupt with a genuinely non-additive entry instead: B' = B + v1^2 R1
    from galinv.exact.multipoly import MultiPoly
    from galinv.reps.catalog import BOOST_VARS

    rows = [list(r) for r in bad.boost_poly.entries]
    v1 = MultiPoly.var(BOOST_VARS, "v1")
    rows[3][0] = rows[3][0] + v1 * v1
    bad.boost_poly = Matrix(bad.boost_poly.ring, rows)
    checks = {c["name"]: c["pass"] for c in check_rep(bad)}
    assert not checks["group_law"]


def test_rotation_matrix_identity_and_blocks():
    rep1 = build_galilei_rep((1, 0, 0))
    ident = Matrix.identity(QQ, 3)
    assert rotation_matrix(rep1, ident) == ident
    rot = Matrix(QQ, [["3/5", "-4/5", 0], ["4/5", "3/5", 0], [0, 0, 1]])
    assert rotation_matrix(rep1, rot) == rot
    # two vector slots: block-diagonal action, oracle = componentwise transform
    rep2 = build_galilei_rep((2, 0, 0))
    block = rotation_matrix(rep2, rot)
    for i in range(3):
        for j in range(3):
            assert block.entries[i][j] == rot.entries[i][j]
            assert block.entries[3 + i][3 + j] == rot.entries[i][j]
            assert block.entries[i][3 + j] == 0


def test_rotation_rejects_non_orthogonal():
    with pytest.raises(NotOrthogonal):
        check_rotation(Matrix(QQ, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]))
    with pytest.raises(NotOrthogonal):
        # orthogonal but det = -1
        check_rotation(Matrix(QQ, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]))


def test_identify_round_trip_all_labels():
    for label in TEN:
        rep = build_galilei_rep(label)
        got = identify_rep(rep.rotation_generators, rep.boost_generators)
        assert isinstance(got, tuple) and got[0] == label


def test_identify_decomposable_unknown():
    va = build_galilei_rep((1, 0, 0))
    sa = build_galilei_rep((0, 1, 0))
    S = [Matrix.block_diag(QI, [va.rotation_generators[i], sa.rotation_generators[i]])
         for i in range(3)]
    eta = [Matrix.block_diag(QI, [va.boost_generators[i], sa.boost_generators[i]])
           for i in range(3)]
    assert identify_rep(S, eta) == "decomposable/unknown"


def test_identify_rejects_non_rep():
    rep = build_galilei_rep((1, 1, 0))
    bad = [m * gauss(2) for m in rep.rotation_generators]
    with pytest.raises(NotARep):
        identify_rep(bad, rep.boost_generators)


# -- Lorentz inputs ------------------------------------------------------------------


def test_so13_relations_hold():
    for rep in (vector_rep(), vector_plus_scalar_rep(), tensor_rep(), medium_rep()):
        assert so13_check(rep) == []


def test_direct_sum_structure():
    five = direct_sum(vector_rep(), scalar_rep())
    assert five.dim == 5
    for pair, gen in five.gens.items():
        # the extra scalar row/column is identically zero
        assert all(gen.entries[4][j] == 0 for j in range(5))
        assert all(gen.entries[i][4] == 0 for i in range(5))
    six = tensor_rep()
    assert six.dim == 6
    # boost block structure: S_0a = [[0, -s_a], [s_a, 0]]
    from galinv.reps.catalog import spin1

    for a in range(3):
        gen = six.S(0, a + 1)
        s = spin1(a)
        for i in range(3):
            for j in range(3):
                assert gen.entries[i][3 + j] == -s.entries[i][j]
                assert gen.entries[3 + i][j] == s.entries[i][j]
