"""DSL parse/print round trips, catalog structure, classification."""

import os

import pytest
from gmpy2 import mpq

from galinv.errors import ParseError
from galinv.systems.catalog import ALIASES, catalog, catalog_names, catalog_text
from galinv.systems.classify import classify
from galinv.systems.contract_limit import specialize
from galinv.systems.dsl import parse, print_system

DATA = os.path.join(os.path.dirname(__file__), "..", "data")


@pytest.mark.parametrize("name", catalog_names())
def test_round_trip(name):
    s = catalog(name)
    assert parse(print_system(s)) == s


def test_shipped_file_matches_builtin():
    with open(os.path.join(DATA, "mag.gal")) as fh:
        assert parse(fh.read()) == catalog("mag")


def test_aliases():
    assert catalog("e-static") is catalog("mag1")
    assert catalog("m-static") is catalog("111")
    assert catalog("BI-electric") is catalog("BI_electric")


def test_unknown_name_lists_catalog():
    with pytest.raises(Exception) as exc:
        catalog("foo")
    assert "mag" in str(exc.value)


def test_type_error_curl_of_scalar():
    text = """
system t1 {
  fields { B: scalar }
  eq X: curl(B) = 0
}
"""
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert "vector" in str(exc.value)


def test_empty_file():
    with pytest.raises(ParseError) as exc:
        parse("")
    assert "no system block" in str(exc.value)


def test_undeclared_symbol():
    with pytest.raises(ParseError) as exc:
        parse("system t2 { fields { A: scalar } eq X: dt(A) = Q }")
    assert "undeclared" in str(exc.value)


def test_second_order_rejected():
    with pytest.raises(ParseError):
        parse("system t3 { fields { A: scalar } eq X: div(grad(A)) = 0 }")


def test_beyond_bilinear_rejected():
    with pytest.raises(ParseError):
        parse("system t4 { fields { A: scalar } eq X: A * A * A = 0 }")


def test_rational_coefficients_round_trip():
    text = """
system t5 {
  fields { A: scalar  U: vector }
  eq X: 1/2 * dt(A) + 1/2 * div(U) = 0
}
"""
    s = parse(text)
    assert parse(print_system(s)) == s


def test_quasilinear_specializes_to_linear_master():
    nl0 = specialize(catalog("NL"), ["nu", "lam", "sig", "om", "mu", "rho"])
    coupl = catalog("coupl")
    assert nl0.fields == coupl.fields
    assert nl0.sources == coupl.sources
    assert nl0.params == coupl.params
    for a, b in zip(nl0.equations, coupl.equations):
        assert (a.name, a.kind, a.polys) == (b.name, b.kind, b.polys)
    assert nl0.rep_specs == coupl.rep_specs


def test_single_coupling_point_is_cached_catalog_entry():
    last = catalog("last")
    assert last.params == ["e", "nu"]
    nl_red = specialize(catalog("NL"), ["lam", "sig", "om", "mu", "rho"], name="last")
    for a, b in zip(last.equations, nl_red.equations):
        assert a.polys == b.polys


# -- classification ----------------------------------------------------------------


def test_classify_coupl4():
    r = classify(catalog("coupl4"), trials=3, motions=3, seed=0)
    matched = {k: v["form"] for k, v in r["matched_forms"].items()}
    assert matched == {"A": "A1", "W": "W2", "R": "R2"}
    assert r["covariant"] is True
    assert r["residual_rep"]


def test_classify_gradient_system():
    text = """
system grad1 {
  fields { A: scalar }
  sources { J: vector }
  rep fields D(0,1,0) on (A)
  rep sources D(1,0,0) on (J)
  eq G: grad(A) = J
  rep resid D(1,0,0) on (G)
}
"""
    s = parse(text)
    r = classify(s, trials=4, motions=4, seed=0)
    assert r["covariant"] is True
    assert r["matched_forms"]["G"]["form"] == "R1"


def test_classify_flipped_system_not_covariant():
    text = print_system(catalog("mag")).replace("curl(E) - dt(H)", "curl(E) + dt(H)")
    lines = [l for l in text.splitlines() if "rep resid" not in l]
    r = classify(parse("\n".join(lines)), motions=5, seed=2)
    assert r["covariant"] is False
    assert r["counterexample"]["motion"]


def test_classify_nonlinear_skips_forms():
    r = classify(catalog("NL"), trials=3, motions=3, seed=0)
    assert not r["linear"]
    assert "matched_forms" not in r
    assert r["covariant"] is True


def test_classify_relativistic_skipped():
    r = classify(catalog("maxwell_FF"))
    assert r["covariant"] is None


def test_transform_matrix_requires_spec():
    from galinv.errors import GalinvError
    from galinv.fields.motion import GalileiMotion

    with pytest.raises(GalinvError):
        catalog("maxwell_FF").transform_matrix("fields", GalileiMotion(v=(1, 0, 0)))
