import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import law, seeds
from stochlattice import (
    FunctionalSpec,
    PenaltyCurve,
    PenaltyFamily,
    StepQuantile,
    alpha_min_from_set,
    build_distribution,
    check_maxitivity,
    es,
    es_bar,
    eval_penalty,
    evaluate,
    g_transform_eval,
    mean,
    negate,
    sup_order,
    translate,
    var,
)
from stochlattice.penalty import LINEAR, STEP

ZERO = PenaltyCurve.constant(0.0)


def test_var_es_examples(d01, dm12):
    assert var(d01, 0.75) == 1
    assert var(StepQuantile.constant(4.0), 0.3) == 4.0
    assert var(translate(d01, 2), 0.75) == 3
    assert es(d01, 0.5) == 1 and es(dm12, 0.5) == 2
    assert es(StepQuantile.constant(-1.5), 0.8) == pytest.approx(-1.5)
    assert es_bar(d01, 0.5) == 0
    assert es_bar(StepQuantile.constant(2.0), 0.1) == pytest.approx(2.0)
    for bad in (0.0, 1.0, -1.0):
        with pytest.raises(ValueError):
            es(d01, bad)


def test_tail_averages_match_sorted_samples():
    rng = np.random.default_rng(4)
    xs = np.round(rng.uniform(-5, 5, 20), 3)
    q = build_distribution(list(xs))
    srt = np.sort(xs)
    assert es(q, 0.75) == pytest.approx(srt[15:].mean(), abs=1e-12)
    assert es_bar(q, 0.75) == pytest.approx(srt[:5].mean(), abs=1e-12)


def test_penalty_examples(d01):
    spec = FunctionalSpec("penalty_st", curve=ZERO)
    assert eval_penalty(spec, d01) == 1
    assert eval_penalty(spec, StepQuantile.constant(-2.0)) == -2.0
    minus_inf = FunctionalSpec("penalty_st", curve=PenaltyCurve(STEP, (0.3,), (0.0, "-inf")))
    assert eval_penalty(minus_inf, d01) == math.inf
    assert eval_penalty(FunctionalSpec("penalty_icx", curve=ZERO), d01) == 1
    scan = max(es(d01, u) for u in np.linspace(1e-6, 1 - 1e-6, 1001))
    assert scan == pytest.approx(1.0)


def test_penalty_tail_limits(d01):
    neg = PenaltyCurve(LINEAR, (0.0, 1.0), (0.0, -0.1))
    assert eval_penalty(FunctionalSpec("penalty_icx", curve=neg), d01) == math.inf
    pos = PenaltyCurve(LINEAR, (0.0, 1.0), (0.2, 0.1))
    got = eval_penalty(FunctionalSpec("penalty_icx", curve=pos), d01)
    us = np.linspace(1e-6, 1 - 1e-6, 20001)
    scan = max((integ - pos(u)) / (1 - u) for u, integ in ((u, es(d01, u) * (1 - u)) for u in us))
    assert got == pytest.approx(scan, abs=1e-4) and got >= scan - 1e-12


def test_spec_validation_and_json():
    with pytest.raises(ValueError):
        FunctionalSpec("var", u=1.0)
    with pytest.raises(ValueError):
        FunctionalSpec("penalty_icx", curve=PenaltyCurve(LINEAR, (0.0, 0.5, 1.0), (0.0, -1.0, 0.0)))
    with pytest.raises(ValueError):
        FunctionalSpec("g_family", family=PenaltyFamily((0.0,), (ZERO,)), relation="disp")
    with pytest.raises(ValueError):
        FunctionalSpec.from_json({"tag": "cvar", "u": 0.5})
    fam = PenaltyFamily((0.0, 1.0), (ZERO, PenaltyCurve.constant(1.0)))
    for spec in (FunctionalSpec("es", u=0.9), FunctionalSpec("penalty_st", curve=ZERO),
                 FunctionalSpec("g_family", family=fam, relation="st")):
        assert FunctionalSpec.from_json(spec.to_json()) == spec


def test_g_transform_examples(d01):
    fam = PenaltyFamily((0.0, 1.0), (ZERO, PenaltyCurve.constant(1.0)))
    assert g_transform_eval(fam, d01, "st") == 1
    assert g_transform_eval(fam, StepQuantile.constant(2.0), "st") == math.inf
    assert g_transform_eval(fam, StepQuantile.constant(-5.0), "st") == 0


def test_alpha_min_examples(d01, dm12):
    assert alpha_min_from_set("st", [d01, dm12]) == PenaltyCurve(STEP, (0.5,), (0.0, 2.0))
    single = alpha_min_from_set("st", [dm12])
    assert single(0.3) == -1 and single(0.7) == 2
    beta = alpha_min_from_set("disp", [d01, dm12])
    assert beta(0.5) == 0 and beta(0.5000001) == 3
    env = alpha_min_from_set("icx", [d01, dm12])
    assert env.is_concave()
    with pytest.raises(ValueError):
        alpha_min_from_set("st", [])


def test_alpha_min_leveled(d01, dm12):
    fam = alpha_min_from_set("st", [[d01], [d01, dm12]], s_levels=[0.0, 1.0])
    assert isinstance(fam, PenaltyFamily) and fam.levels == (0.0, 1.0)
    with pytest.raises(ValueError, match="nested"):
        alpha_min_from_set("st", [[d01, dm12], [d01]], s_levels=[0.0, 1.0])
    with pytest.raises(ValueError, match="nested"):
        alpha_min_from_set("disp", [[dm12], [d01]], s_levels=[0.0, 1.0])


def test_maxitivity_examples(d01, dm12, wpair):
    v = FunctionalSpec("var", u=0.7)
    assert evaluate(v, sup_order("st", [d01, dm12])) == max(evaluate(v, d01), evaluate(v, dm12)) == 2
    rep = check_maxitivity("st", FunctionalSpec("penalty_st", curve=ZERO), trials=50, seed=3)
    assert rep.max_deviation == 0 and rep.violations == 0
    rep = check_maxitivity("icx", FunctionalSpec("es", u=0.5), trials=200, seed=0)
    assert rep.violations > 0 and rep.counterexample is not None
    with pytest.raises(ValueError):
        check_maxitivity("icx", FunctionalSpec("penalty_st", curve=ZERO), trials=1)
    with pytest.raises(ValueError):
        check_maxitivity("disp", FunctionalSpec("var", u=0.5), trials=1)


def test_maxitivity_is_deterministic():
    spec = FunctionalSpec("es", u=0.3)
    a = check_maxitivity("icx", spec, trials=30, seed=9).to_json()
    b = check_maxitivity("icx", spec, trials=30, seed=9).to_json()
    assert a == b


@settings(max_examples=100, deadline=None)
@given(seeds, st.floats(0.01, 0.99), st.floats(-4, 4))
def test_translation(seed, u, c):
    q = law(seed)
    moved = translate(q, c)
    for f in (var, es, es_bar):
        assert f(moved, u) == pytest.approx(f(q, u) + c, abs=1e-12)
    n = negate(q.values, q.masses())
    assert es_bar(q, u) == pytest.approx(-es(n, u), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_es_bounds_and_monotone_in_level(seed):
    q = law(seed)
    vals = [es(q, u) for u in np.linspace(0.01, 0.99, 50)]
    assert all(mean(q) - 1e-12 <= v <= q.values[-1] + 1e-12 for v in vals)
    assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))
