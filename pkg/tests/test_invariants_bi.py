"""Bilinear invariants, constitutive relations, saturating maps."""

import math

import pytest
from gmpy2 import mpq

from galinv.errors import DomainError, GalinvError
from galinv.exact import MultiPoly
from galinv.fields.invariants import (
    INVAR_SYMS,
    MediaConstitutive,
    bi_numeric_spot_checks,
    bilinear_invariants,
    born_infeld_constitutive,
    check_bi_electric_symbolic,
    check_bi_magnetic_symbolic,
    check_bilinear_invariants,
    default_media,
)


def test_six_invariants_and_counterexample():
    records = check_bilinear_invariants()
    assert len(records) == 7
    assert all(r["pass"] for r in records)


def test_invariants_vanish_on_zero_fields():
    zero = (0, 0, 0)
    vals = bilinear_invariants(zero, zero, zero, zero)
    assert all(v == 0 for v in vals)


def test_bi_symbolic_transformations():
    assert check_bi_electric_symbolic()
    assert check_bi_magnetic_symbolic()


def test_bi_numeric_spots():
    assert bi_numeric_spot_checks(100, seed=0) <= 1e-12


def test_bi_electric_values():
    # zero field point
    D, H = born_infeld_constitutive("electric-limit", (0, 1, 0), (0, 0, 0))
    assert D == (0.0, 0.0, 0.0)
    assert H == (0.0, 1.0, 0.0)
    # rational spot: sqrt(1 - 9/25) = 4/5 exactly
    D, H = born_infeld_constitutive("electric-limit", (0, 1, 0), (mpq(3, 5), 0, 0))
    assert abs(D[0] - 0.75) < 1e-12 and D[1] == D[2] == 0.0
    assert abs(H[1] - 1.25) < 1e-12 and H[0] == H[2] == 0.0


def test_bi_magnetic_values():
    D, H = born_infeld_constitutive("magnetic-limit", (0, 0, 0), (2, -1, 3))
    assert D == (2.0, -1.0, 3.0)
    assert H == (0.0, 0.0, 0.0)


def test_bi_relativistic_consistent_with_limits():
    """Rescaling (B, E) -> (eps B, E) drives the full map to the
    electric-limit map as eps -> 0 (numeric)."""
    B = (0.3, 1.0, -0.2)
    E = (0.5, 0.1, 0.2)
    D0, H0 = born_infeld_constitutive("electric-limit", B, E)
    eps = 1e-6
    Bs = tuple(eps * b for b in B)
    D, H = born_infeld_constitutive("relativistic", Bs, E)
    for a, b in zip(D, D0):
        assert abs(a - b) < 1e-5
    for a, b in zip(H, tuple(eps * h for h in H0)):
        assert abs(a - b) < 1e-5


def test_bi_domain_error():
    with pytest.raises(DomainError):
        born_infeld_constitutive("electric-limit", (0, 0, 0), (1, 0, 0))
    with pytest.raises(DomainError):
        born_infeld_constitutive("electric-limit", (0, 0, 0), (2, 0, 0))


def test_media_constitutive_relations():
    sig = MultiPoly.var(INVAR_SYMS, "I6")
    one = MultiPoly.const(INVAR_SYMS, 1)
    good = MediaConstitutive(sig * sig, sig, one, sig, sigma=sig)
    assert good.is_boost_invariant()
    with pytest.raises(GalinvError):
        MediaConstitutive(sig, sig, one, sig, sigma=one)  # mu != sigma*lambda
    # the printed compatibility relations alone do not force invariance
    half = MultiPoly.const(INVAR_SYMS, mpq(1, 2))
    two = MultiPoly.const(INVAR_SYMS, 2)
    weird = MediaConstitutive(one, two, one, half, sigma=two)
    a, b = weird.invariance_condition()
    assert not (a.is_zero() and b.is_zero())
    assert not weird.is_boost_invariant()


def test_default_media():
    assert default_media().is_boost_invariant()
