import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import law, seeds
from stochlattice import (
    DistributionError,
    PiecewiseLinearFn,
    QuantileFamily,
    StepQuantile,
    check_order,
    concave_envelope,
    eval_q_plus,
    integrated_quantile,
    mean,
    sup_order,
    total_variation,
    translate,
)
from stochlattice.lattice import pointwise_max, upper_hull
from stochlattice.oracles import GridSpec, envelope_oracle, tv_partition_oracle

RELS = ["st", "icx", "cx", "icv", "disp"]


def test_sup_examples(d01, dm12, wpair):
    s = sup_order("st", [d01, dm12])
    assert s.breakpoints == (0.5, 1.0) and s.values == (0.0, 2.0)
    s = sup_order("icx", [d01, wpair])
    assert s.breakpoints == (0.5, 1.0)
    assert s.values == pytest.approx((-0.2, 1.2), abs=1e-12)
    s = sup_order("disp", [d01, dm12])
    assert s.breakpoints == (0.5, 1.0) and s.values == (0.0, 3.0)


@pytest.mark.parametrize("rel", RELS)
def test_singleton_is_idempotent(rel, dm12):
    s = sup_order(rel, [dm12])
    if rel == "disp":
        assert s == translate(dm12, -dm12.values[0])
    else:
        assert s == dm12


def test_errors(d01, dm12):
    with pytest.raises(ValueError):
        QuantileFamily(())
    with pytest.raises(DistributionError):
        sup_order("cx", [d01, translate(dm12, 1)])
    with pytest.raises(ValueError):
        sup_order("nope", [d01])
    with pytest.raises(ValueError):
        concave_envelope([])
    for u, v in ((0.5, 0.5), (-0.1, 0.5), (0.2, 1.1)):
        with pytest.raises(ValueError):
            total_variation([d01], u, v)


def test_envelope_examples(d01, dm12, wpair):
    qd = integrated_quantile(d01)
    assert concave_envelope([qd]) == PiecewiseLinearFn(qd.knots, qd.knot_values)
    assert concave_envelope([qd, integrated_quantile(dm12)]) == integrated_quantile(dm12)
    env = concave_envelope([qd, integrated_quantile(wpair)])
    for u, want in ((0, 0.5), (0.5, 0.6), (1, 0)):
        assert env(u) == pytest.approx(want, abs=1e-12)
    ref = envelope_oracle([qd, integrated_quantile(wpair)], GridSpec(401))
    assert max(abs(env(float(u)) - r) for u, r in zip(GridSpec(401).nodes, ref)) <= 1e-9


def test_upper_hull_drops_collinear():
    pts = [(0, 0), (1, 1), (2, 2), (3, 1), (1, 0)]
    assert upper_hull(pts) == [(0, 0), (2, 2), (3, 1)]


def test_pointwise_max_adds_crossings():
    f = PiecewiseLinearFn((0, 1), (1, 0))
    g = PiecewiseLinearFn((0, 1), (0, 1))
    m = pointwise_max([f, g])
    assert m(0.5) == pytest.approx(0.5) and m(0.25) == pytest.approx(0.75)


def test_tv_examples(d01, dm12):
    q = law(11)
    assert total_variation([q], 0, 1) == pytest.approx(q.values[-1] - q.values[0], abs=1e-12)
    assert total_variation([d01, dm12], 0, 1) == 3
    assert total_variation([d01, dm12], 0, 0.5) == 0
    assert tv_partition_oracle([d01, dm12], 0, 1) == 3
    assert tv_partition_oracle([StepQuantile.constant(1), StepQuantile.constant(-2)], 0, 1) == 0


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(RELS), st.integers(1, 5))
def test_upper_bound_and_permutation(seed, rel, size):
    fam = [law(seed + k) for k in range(size)]
    if rel == "cx":
        fam = [translate(q, -mean(q)) for q in fam]
        fam = [q for q in fam if abs(mean(q)) <= 1e-12] or [StepQuantile.constant(0.0)]
    top = sup_order(rel, fam)
    assert all(check_order(rel, y, top).holds for y in fam)
    assert sup_order(rel, fam[::-1]) == top


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 4))
def test_disp_sup_matches_partition_oracle(seed, size):
    fam = [law(seed + k, max_support=4) for k in range(size)]
    top = sup_order("disp", fam)
    assert eval_q_plus(top, 0.0) == 0
    for w in sorted({b for q in fam for b in q.breakpoints}):
        assert total_variation(fam, 0, w) == pytest.approx(tv_partition_oracle(fam, 0, w), abs=1e-12)
        assert top(w) == pytest.approx(tv_partition_oracle(fam, 0, w), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(seeds, st.floats(0.001, 0.998), st.floats(0.001, 0.998))
def test_tv_additive(seed, x, y):
    fam = [law(seed), law(seed + 1), law(seed + 2)]
    u, v = min(x, y), max(x, y)
    if u == v:
        return
    total = total_variation(fam, 0, v)
    assert total == pytest.approx(total_variation(fam, 0, u) + total_variation(fam, u, v), abs=1e-12)
