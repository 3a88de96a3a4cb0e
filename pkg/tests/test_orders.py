import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import law, seeds
from stochlattice import Relation, StepQuantile, check_order, negate, sup_order, translate
from stochlattice.oracles import disp_increment_form, disp_qplus_form, grid_order_oracle

RELS = ["st", "icx", "cx", "icv", "disp"]


def test_examples(d01, dm12):
    zero = StepQuantile.constant(0.0)
    assert check_order("st", zero, d01).holds
    v = check_order("st", d01, dm12)
    assert not v.holds and 0 < v.witness[0] <= 0.5 and v.margin == -1.0
    assert check_order("icx", d01, dm12).holds
    assert check_order("cx", d01, dm12).holds
    assert check_order("disp", StepQuantile.constant(5.0), d01).holds


def test_examples_agree_with_grid_oracle(d01, dm12):
    assert grid_order_oracle("st", StepQuantile.constant(0.0), d01)
    assert not grid_order_oracle("st", d01, dm12)
    assert grid_order_oracle("icx", d01, dm12)
    assert grid_order_oracle("disp", StepQuantile.constant(3.0), dm12, lattice=10)


def test_unknown_relation(d01):
    with pytest.raises(ValueError, match="unknown relation"):
        check_order("fsd", d01, d01)


def test_verdict_json(d01, dm12):
    assert check_order("icx", d01, dm12).to_json() == {"relation": "icx", "holds": True, "margin": 0.0}
    out = check_order("disp", dm12, d01).to_json()
    assert out["holds"] is False and set(out["witness"]) == {"u", "v"}
    assert 0 < out["witness"]["u"] < out["witness"]["v"] < 1


def test_cx_needs_equal_means(d01):
    assert check_order("icx", d01, translate(d01, 1)).holds
    v = check_order("cx", d01, translate(d01, 1))
    assert not v.holds and v.witness is not None


@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from(RELS))
def test_reflexive(seed, rel):
    a = law(seed)
    v = check_order(rel, a, a)
    assert v.holds and v.witness is None


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_st_implies_icx_and_icv(seed):
    a = law(seed)
    b = sup_order("st", [a, law(seed + 1)])
    assert check_order("st", a, b).holds
    assert check_order("icx", a, b).holds and check_order("icv", a, b).holds


@settings(max_examples=60, deadline=None)
@given(seeds, seeds)
def test_icv_is_mirrored_icx(s1, s2):
    a, b = law(s1), law(s2)
    na, nb = negate(a.values, a.masses()), negate(b.values, b.masses())
    assert check_order("icv", a, b).holds == check_order("icx", nb, na).holds


@settings(max_examples=40, deadline=None)
@given(seeds, seeds, st.sampled_from(RELS))
def test_agrees_with_grid_oracle(s1, s2, rel):
    a, b = law(s1, lattice=100, max_support=5), law(s2, lattice=100, max_support=5)
    if rel == "cx":
        a, b = translate(a, -a.values[0]), translate(b, -b.values[0])
    assert check_order(rel, a, b).holds == grid_order_oracle(rel, a, b, lattice=100)


@settings(max_examples=60, deadline=None)
@given(seeds, seeds, st.floats(-3, 3), st.floats(-3, 3))
def test_disp_shift_invariant_and_characterised(s1, s2, c, d):
    a, b = law(s1, lattice=50), law(s2, lattice=50)
    b = sup_order("disp", [a, b]) if s2 % 2 else b
    got = check_order("disp", a, b).holds
    assert got == check_order("disp", translate(a, c), translate(b, d)).holds
    assert got == disp_increment_form(a, b, 50) == disp_qplus_form(a, b, 50)


def test_disp_not_antisymmetric(d01):
    shifted = translate(d01, 7.0)
    assert check_order("disp", d01, shifted).holds and check_order("disp", shifted, d01).holds


def test_margin_sign(d01, dm12):
    assert check_order("st", d01, translate(d01, 0.25)).margin == pytest.approx(0.25)
    assert check_order("icv", dm12, d01).holds
    assert check_order("icv", dm12, d01).margin >= 0
    assert Relation.parse("icx") is Relation.ICX
