"""Seeded property suites comparing production code with the oracles.

Each check draws ``trials`` independent generators from the master seed and
a per-check salt, so adding or reordering checks never changes the streams
of the others.  A trial returns a deviation; it is a violation when the
deviation exceeds the check's threshold.
"""

from __future__ import annotations

import json
import math
import zlib
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import oracles
from .functionals import (
    FunctionalSpec,
    alpha_min_from_set,
    check_maxitivity,
    es,
    es_bar,
    eval_penalty,
    evaluate,
    g_transform_eval,
    var,
)
from .jsonio import distribution_from_json, distribution_to_json
from .lattice import sup_order, total_variation
from .orders import Relation, check_order
from .penalty import PenaltyCurve, PenaltyFamily
from .quantile import (
    DEFAULT_TOL,
    StepQuantile,
    cdf,
    cdf_left,
    eval_q,
    eval_q_plus,
    exact_mean,
    integrated_quantile,
    mean,
    negate,
    quantile_from_integrated,
    translate,
)
from .sampling import (
    random_family,
    random_linear_curve,
    random_penalty_family,
    random_quantile,
    random_step_curve,
    trial_rngs,
)

SUITES = ("quantile", "orders", "lattice", "maxitive")
EPS = 1e-7
Trial = Callable[[np.random.Generator, float], tuple[float, Optional[dict]]]


@dataclass
class CheckResult:
    name: str
    trials: int
    threshold: float
    violations: int = 0
    max_deviation: float = 0.0
    counterexample: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "violations": self.violations,
            "max_deviation": self.max_deviation,
            "counterexample": self.counterexample,
        }


@dataclass(frozen=True)
class Check:
    name: str
    suite: str
    trial: Trial
    threshold: float = 0.0
    # search checks succeed when some trial reaches the threshold
    search: bool = False


def run_check(check: Check, trials: int, seed: int, tol: float = DEFAULT_TOL) -> CheckResult:
    res = CheckResult(check.name, trials, check.threshold)
    salt = zlib.crc32(check.name.encode())
    for rng in trial_rngs([seed, salt], trials):
        dev, example = check.trial(rng, tol)
        res.max_deviation = max(res.max_deviation, dev)
        if check.search:
            if dev >= check.threshold and res.counterexample is None:
                res.counterexample = example
        elif dev > check.threshold:
            res.violations += 1
            if res.counterexample is None:
                res.counterexample = example
    if check.search and res.counterexample is None:
        res.violations = 1
    return res


@dataclass
class Report:
    suite: str
    trials: int
    seed: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(c.violations for c in self.checks)

    def to_json(self) -> dict:
        first = next((c for c in self.checks if c.violations), None)
        return {
            "suite": self.suite,
            "trials": self.trials,
            "max_deviation": max((c.max_deviation for c in self.checks if not _is_search(c.name)), default=0.0),
            "violations": self.violations,
            "counterexample": None if first is None else {"check": first.name, **(first.counterexample or {})},
            "seed": self.seed,
            "checks": [c.to_json() for c in self.checks],
        }


def run_suite(suite: str, trials: int, seed: int, tol: float = DEFAULT_TOL) -> Report:
    names = SUITES if suite == "all" else (suite,)
    if any(n not in SUITES for n in names):
        raise ValueError(f"unknown suite {suite!r}")
    report = Report(suite, trials, seed)
    for check in CHECKS:
        if check.suite in names:
            report.checks.append(run_check(check, trials, seed, tol))
    return report


def get_check(name: str) -> Check:
    for c in CHECKS:
        if c.name == name:
            return c
    raise KeyError(name)


def _is_search(name: str) -> bool:
    return get_check(name).search


# ---------------------------------------------------------------- helpers


def _dist(q: StepQuantile) -> dict:
    return distribution_to_json(q)


def _fam_json(fam) -> dict:
    return {"family": [_dist(q) for q in fam]}


def _family(rng: np.random.Generator, max_size: int = 5, **kw) -> list[StepQuantile]:
    return random_family(rng, int(rng.integers(1, max_size + 1)), **kw)


def _neg(q: StepQuantile) -> StepQuantile:
    return negate(q.values, q.masses())


def _centred(q: StepQuantile) -> StepQuantile:
    return translate(q, -mean(q))


def _probe_points(q: StepQuantile, rng: np.random.Generator, extra: int = 8) -> list[float]:
    inner = list(q.breakpoints[:-1])
    pts = inner + [b - EPS for b in inner] + [b + EPS for b in inner]
    pts += [float(u) for u in rng.uniform(0, 1, extra)]
    return sorted(p for p in pts if 0.0 < p < 1.0)


def _distance(p: StepQuantile, q: StepQuantile) -> float:
    """Sup distance away from breakpoints, blind to breakpoints that differ by rounding."""
    pts = [0.0] + sorted(set(p.breakpoints) | set(q.breakpoints))
    mids = [(a + b) / 2 for a, b in zip(pts, pts[1:]) if b - a > 1e-9]
    return max(abs(eval_q(p, u) - eval_q(q, u)) for u in mids)


def _bad(ok: bool, example: dict) -> tuple[float, Optional[dict]]:
    return (0.0, None) if ok else (1.0, example)


# ---------------------------------------------------------------- quantile


def _quantile_identities(rng, tol):
    """Lower and upper quantile identities at breakpoints, one-sided offsets and random points."""
    q = random_quantile(rng)
    bad = 0
    pts = _probe_points(q, rng)
    gq, gp = oracles.grid_q(q, pts), oracles.grid_q_plus(q, pts)
    inner = q.breakpoints[:-1]
    base = set(inner) | {p for p in pts if min((abs(p - b) for b in inner), default=1.0) > 2 * EPS}
    for k, t in enumerate(pts):
        qt, pt = eval_q(q, t), eval_q_plus(q, t)
        bad += qt != gq[k] or pt != gp[k]
        bad += qt > pt
        # one-sided limits: sup over s<t and inf over s>t
        if t in base:
            if t - EPS > 0:
                bad += eval_q(q, t - EPS) != qt or eval_q_plus(q, t - EPS) > qt
            if t + EPS < 1:
                bad += eval_q(q, t + EPS) != pt or eval_q_plus(q, t + EPS) != pt
        for x in q.values + tuple(v + s for v in q.values for s in (-1e-3, 1e-3)):
            bad += (qt <= x) != (t <= cdf(q, x))
            bad += (pt >= x) != (t >= cdf_left(q, x))
        bad += cdf(q, qt) < t
    for x in q.values:
        f = cdf(q, x)
        bad += f > 0 and eval_q(q, f) > x
    # lower semicontinuity of (s, r) -> q(r) - q+(s) at breakpoint pairs
    for s in inner:
        for r in inner:
            ref = eval_q(q, r) - eval_q_plus(q, s)
            for ds in (-EPS, 0.0, EPS):
                for dr in (-EPS, 0.0, EPS):
                    bad += eval_q(q, r + dr) - eval_q_plus(q, s + ds) < ref - tol
    return float(bad), {"q": _dist(q)} if bad else None


def _roundtrip_integrated(rng, tol):
    q = random_quantile(rng)
    back = quantile_from_integrated(integrated_quantile(q), tol)
    return _bad(back == q, {"q": _dist(q), "back": _dist(back)})


def _roundtrip_json(rng, tol):
    q = random_quantile(rng)
    back = distribution_from_json(json.loads(json.dumps(_dist(q))))
    samples = {"kind": "samples", "values": list(q.values), "weights": [float(m) for m in q.masses()]}
    again = distribution_from_json(json.loads(json.dumps(samples)))
    # the samples form re-accumulates float weights, so breakpoints agree to rounding only
    close = len(again.breakpoints) == len(q.breakpoints) and again.values == q.values
    close = close and max(abs(x - y) for x, y in zip(again.breakpoints, q.breakpoints)) <= 1e-12
    return _bad(back == q and close, {"q": _dist(q)})


def _negate_relation(rng, tol):
    q = random_quantile(rng)
    n = _neg(q)
    grid = set(q.breakpoints) | {1.0 - b for b in q.breakpoints}
    us = [u for u in rng.uniform(0, 1, 32) if all(abs(u - g) > 1e-9 for g in grid)]
    ok = all(eval_q(n, u) == -eval_q_plus(q, 1.0 - u) for u in us)
    # negating twice reproduces q up to rounding of the reflected breakpoints
    twice = _neg(n)
    ok = ok and twice.values == q.values
    ok = ok and max(abs(x - y) for x, y in zip(twice.breakpoints, q.breakpoints)) <= 1e-12
    return _bad(ok, {"q": _dist(q)})


def _translate_mean(rng, tol):
    q = random_quantile(rng)
    c = float(np.round(rng.uniform(-5, 5), 3))
    return abs(mean(translate(q, c)) - mean(q) - c), {"q": _dist(q), "c": c}


def _integrated_vs_riemann(rng, tol):
    q = random_quantile(rng, lattice=100)
    Q = integrated_quantile(q)
    grid = oracles.riemann_Q(q, 1000)
    us = np.arange(1001) / 1000
    dev = max(abs(Q(float(u)) - g) for u, g in zip(us, grid))
    return dev, {"q": _dist(q)}


# ---------------------------------------------------------------- orders

_RELS = (Relation.ST, Relation.ICX, Relation.CX, Relation.ICV, Relation.DISP)


def _pair(rng, rel: Relation, lattice: int = 1000, max_support: int = 8, on_lattice: bool = False):
    """A pair that holds for ``rel`` half of the time, a random pair otherwise.

    With ``on_lattice`` the dominating member keeps its breakpoints on the
    lattice: the icv join adds crossing points, so the st join stands in.
    """
    a = random_quantile(rng, max_support=max_support, lattice=lattice)
    c = random_quantile(rng, max_support=max_support, lattice=lattice)
    if rel is Relation.CX:
        a, c = _centred(a), _centred(c)
    if rng.random() < 0.5:
        join = Relation.ST if on_lattice and rel is Relation.ICV else rel
        return a, sup_order(join, [a, c])
    return a, c


def _oracle_agreement(rel: Relation):
    def trial(rng, tol):
        a, b = _pair(rng, rel, lattice=100, max_support=6, on_lattice=True)
        got = check_order(rel, a, b, tol).holds
        want = oracles.grid_order_oracle(rel, a, b, lattice=100, refine=10, tol=tol)
        return _bad(got == want, {"a": _dist(a), "b": _dist(b), "production": got})

    return trial


def _reflexive(rng, tol):
    a = random_quantile(rng)
    return _bad(all(check_order(r, a, a, tol).holds for r in _RELS), {"a": _dist(a)})


def _transitive(rng, tol):
    bad = 0
    for rel in _RELS:
        fam = [random_quantile(rng) for _ in range(3)]
        if rel is Relation.CX:
            fam = [_centred(q) for q in fam]
        a = fam[0]
        b = sup_order(rel, fam[:2]) if rng.random() < 0.7 else fam[1]
        c = sup_order(rel, [b, fam[2]]) if rng.random() < 0.7 else fam[2]
        if check_order(rel, a, b, tol).holds and check_order(rel, b, c, tol).holds:
            bad += not check_order(rel, a, c, tol).holds
    return float(bad), None


def _st_implies(rng, tol):
    a, b = _pair(rng, Relation.ST)
    if not check_order(Relation.ST, a, b, tol).holds:
        return 0.0, None
    ok = check_order(Relation.ICX, a, b, tol).holds and check_order(Relation.ICV, a, b, tol).holds
    return _bad(ok, {"a": _dist(a), "b": _dist(b)})


def _icv_mirror(rng, tol):
    a, b = _pair(rng, Relation.ICV)
    got = check_order(Relation.ICV, a, b, tol).holds
    return _bad(got == check_order(Relation.ICX, _neg(b), _neg(a), tol).holds, {"a": _dist(a), "b": _dist(b)})


def _cx_definition(rng, tol):
    a, b = _pair(rng, Relation.CX)
    if rng.random() < 0.3:
        b = translate(b, float(np.round(rng.uniform(-1, 1), 3)))
    got = check_order(Relation.CX, a, b, tol).holds
    want = check_order(Relation.ICX, a, b, tol).holds and abs(mean(a) - mean(b)) <= tol
    return _bad(got == want, {"a": _dist(a), "b": _dist(b)})


def _disp_characterisations(rng, tol):
    a, b = _pair(rng, Relation.DISP, lattice=100, max_support=6)
    inc = oracles.disp_increment_form(a, b, 100, tol)
    plus = oracles.disp_qplus_form(a, b, 100, tol)
    prod = check_order(Relation.DISP, a, b, tol).holds
    return _bad(inc == plus == prod, {"a": _dist(a), "b": _dist(b), "increment": inc, "qplus": plus})


def _disp_shift(rng, tol):
    a, b = _pair(rng, Relation.DISP)
    c, d = (float(x) for x in np.round(rng.uniform(-5, 5, 2), 3))
    same = check_order(Relation.DISP, a, b, tol).holds == check_order(Relation.DISP, translate(a, c), translate(b, d), tol).holds
    return _bad(same, {"a": _dist(a), "b": _dist(b), "c": c, "d": d})


# ---------------------------------------------------------------- lattice


def _members_for(rel: Relation, fam):
    return [_centred(q) for q in fam] if rel is Relation.CX else fam


def _upper_bound(rng, tol):
    bad = 0
    for rel in _RELS:
        fam = _members_for(rel, _family(rng))
        top = sup_order(rel, fam, tol)
        bad += sum(not check_order(rel, y, top, tol).holds for y in fam)
    return float(bad), None


def _least(rng, tol):
    """The supremum lies below upper bounds built independently of it."""
    bad = 0
    for rel in _RELS:
        fam = _members_for(rel, _family(rng))
        top = sup_order(rel, fam, tol)
        extra = _members_for(rel, [random_quantile(rng)])[0]
        zeta = sup_order(rel, fam + [extra], tol)
        shift = float(np.round(rng.uniform(0, 2), 3))
        if rel in (Relation.ST, Relation.ICX, Relation.ICV):
            zeta = translate(zeta, shift)
        elif rel is Relation.DISP:
            zeta = translate(zeta, shift - 1.0)
        bad += not all(check_order(rel, y, zeta, tol).holds for y in fam) or not check_order(rel, top, zeta, tol).holds
        if rel is Relation.ST:
            # another upper bound: every member pushed up and joined pointwise by the grid oracle
            pts = (np.arange(10000) + 0.5) / 10000
            hi = np.max([oracles.grid_q(y, pts) for y in fam], axis=0)
            bad += bool(np.any(oracles.grid_q(top, pts) > hi + tol))
    return float(bad), None


def _order_free(rng, tol):
    bad = 0
    for rel in _RELS:
        fam = _members_for(rel, _family(rng))
        perm = [fam[i] for i in rng.permutation(len(fam))]
        top = sup_order(rel, fam, tol)
        bad += sup_order(rel, perm, tol) != top
        if len(fam) > 2:
            # rebracketing: the join of a join, equal up to float rounding of the inner join
            inner = sup_order(rel, [sup_order(rel, fam[:2], tol)] + fam[2:], tol)
            bad += _distance(inner, top) > 1e-9
    return float(bad), None


def _envelope(rng, tol):
    a = random_quantile(rng, lattice=400)
    b = random_quantile(rng, lattice=400)
    env = integrated_quantile(sup_order(Relation.ICX, [a, b], tol))
    grid = oracles.GridSpec(401)
    ref = oracles.envelope_oracle([integrated_quantile(a), integrated_quantile(b)], grid)
    dev = float(np.max(np.abs(np.array([env(float(u)) for u in grid.nodes]) - ref)))
    return dev, {"a": _dist(a), "b": _dist(b)}


def _small_family(rng, max_points: int = 12):
    while True:
        fam = random_family(rng, int(rng.integers(1, 4)), max_support=5)
        if len({b for q in fam for b in q.breakpoints[:-1]}) <= max_points:
            return fam


def _disp_sup_vs_partitions(rng, tol):
    fam = _small_family(rng)
    top = sup_order(Relation.DISP, fam, tol)
    grid = sorted({b for q in fam for b in q.breakpoints})
    pts = sorted(set(grid) | {(x + y) / 2 for x, y in zip([0.0] + grid, grid)})
    dev = max(abs(eval_q(top, t) - oracles.tv_partition_oracle(fam, 0.0, t)) for t in pts)
    u, v = sorted(float(x) for x in rng.choice(np.array(sorted({0.0, 1.0} | set(pts))), 2, replace=False))
    dev = max(dev, abs(total_variation(fam, u, v) - oracles.tv_partition_oracle(fam, u, v)))
    return dev, _fam_json(fam)


def _tv_additive(rng, tol):
    fam = _family(rng)
    u, v = sorted(float(x) for x in rng.uniform(0, 1, 2))
    if u == v:
        return 0.0, None
    if rng.random() < 0.5:
        grid = sorted({b for q in fam for b in q.breakpoints[:-1]} | {u})
        u = float(grid[int(rng.integers(len(grid)))])
        v = max(v, u + 1e-3) if u + 1e-3 < 1 else 1.0
    dev = abs(total_variation(fam, 0, v) - total_variation(fam, 0, u) - total_variation(fam, u, v))
    return dev, {**_fam_json(fam), "u": u, "v": v}


def _tv_left_continuous(rng, tol):
    fam = _family(rng)
    dev = 0.0
    prev = 0.0
    for w in sorted({b for q in fam for b in q.breakpoints}):
        at = total_variation(fam, 0, w)
        dev = max(dev, abs(at - total_variation(fam, 0, w - EPS)), max(prev - at, 0.0))
        prev = at
    return dev, _fam_json(fam)


def _tv_lower_sums(rng, tol):
    fam = _small_family(rng)
    grid = sorted({b for q in fam for b in q.breakpoints[:-1]})
    v = float(rng.choice(np.array(grid + [1.0])))
    # q+(u) drops the jump at u itself, so u is 0 or off the grid
    u = 0.0 if rng.random() < 0.5 or v <= 0.01 else float(np.round(rng.uniform(0, v), 4))
    if u in grid or u >= v:
        u = 0.0
    dev = abs(total_variation(fam, u, v) - oracles.tv_partition_oracle(fam, u, v, lower=True))
    return dev, {**_fam_json(fam), "u": u, "v": v}


def _disp_anchor(rng, tol):
    fam = _family(rng)
    return abs(eval_q_plus(sup_order(Relation.DISP, fam, tol), 0.0)), _fam_json(fam)


def _cx_mean(rng, tol):
    r = float(np.round(rng.uniform(-3, 3), 3))
    fam = [translate(_centred(q), r) for q in _family(rng)]
    fam = [q for q in fam if abs(mean(q) - r) <= 1e-12] or [StepQuantile.constant(r)]
    return abs(mean(sup_order(Relation.CX, fam, tol)) - float(exact_mean(fam[0]))), _fam_json(fam)


# ---------------------------------------------------------------- maxitive


def _lift(rng: np.random.Generator, curve: PenaltyCurve, p: float = 0.7) -> PenaltyCurve:
    """With probability ``p`` shift the curve so that its value near 1 is non-negative.

    Tail penalties with a negative limit at 1 give ``+inf`` for every law,
    so unlifted draws alone would exercise little of the finite range.
    """
    if rng.random() >= p or curve.values[-1] == -math.inf:
        return curve
    c = max(0.0, -curve.values[-1]) + float(np.round(rng.uniform(0, 2), 3))
    return PenaltyCurve(curve.kind, curve.grid, tuple(v + c for v in curve.values))


def _spec_factory(kind: str) -> Callable[[np.random.Generator], FunctionalSpec]:
    def make(rng: np.random.Generator) -> FunctionalSpec:
        if kind == "penalty_st":
            curve = random_step_curve(rng, p_neg_inf=0.05) if rng.random() < 0.5 else random_linear_curve(rng)
            return FunctionalSpec("penalty_st", curve=curve)
        if kind == "penalty_icx":
            return FunctionalSpec("penalty_icx", curve=_lift(rng, random_linear_curve(rng, concave=True)))
        if kind == "penalty_icv":
            curve = random_step_curve(rng, p_neg_inf=0.05) if rng.random() < 0.5 else random_linear_curve(rng)
            return FunctionalSpec("penalty_icv", curve=_lift(rng, curve))
        rel = Relation.parse(kind.split(":")[1])
        if rel is Relation.ST:
            base = random_step_curve(rng) if rng.random() < 0.5 else random_linear_curve(rng)
            base = _lift(rng, base, 0.5)
        elif rel is Relation.ICX:
            base = _lift(rng, random_linear_curve(rng, concave=True))
        else:
            base = _lift(rng, random_linear_curve(rng))
        return FunctionalSpec("g_family", family=random_penalty_family(rng, base), relation=rel)

    return make


def _maxitivity(rel: Relation, kind: str, family_size: int = 5):
    factory = _spec_factory(kind)

    def trial(rng, tol):
        seed = int(rng.integers(2**32))
        rep = check_maxitivity(rel, factory, trials=1, family_size=family_size, seed=seed, tol=tol)
        return rep.max_deviation, rep.counterexample

    return trial


def _var_maxitive(rng, tol):
    u = float(np.round(rng.uniform(0.001, 0.999), 3))
    seed = int(rng.integers(2**32))
    rep = check_maxitivity(Relation.ST, FunctionalSpec("var", u=u), trials=1, seed=seed, tol=tol)
    return rep.max_deviation, rep.counterexample


def _es_search(rng, tol):
    u = float(np.round(rng.uniform(0.05, 0.95), 2))
    seed = int(rng.integers(2**32))
    rep = check_maxitivity(Relation.ICX, FunctionalSpec("es", u=u), trials=1, seed=seed, tol=tol)
    return rep.max_deviation, rep.counterexample


def _translation(rng, tol):
    q = random_quantile(rng)
    c = float(np.round(rng.uniform(-5, 5), 3))
    u = float(np.round(rng.uniform(0.001, 0.999), 3))
    specs = [FunctionalSpec(t, u=u) for t in ("var", "es", "es_bar")]
    specs += [_spec_factory(k)(rng) for k in ("penalty_st", "penalty_icx", "penalty_icv")]
    moved = translate(q, c)
    dev = 0.0
    for sp in specs:
        x, y = evaluate(sp, q, tol), evaluate(sp, moved, tol)
        dev = max(dev, 0.0 if x == y == math.inf else abs(y - x - c))
    return dev, {"q": _dist(q), "c": c}


def _monotone(rng, tol):
    bad = 0
    for rel, kinds in (
        (Relation.ST, ("penalty_st", "penalty_icx", "penalty_icv", "g_family:st")),
        (Relation.ICX, ("penalty_icx", "g_family:icx")),
        (Relation.ICV, ("penalty_icv", "g_family:icv")),
    ):
        a = random_quantile(rng)
        b = sup_order(rel, [a, random_quantile(rng)], tol)
        u = float(np.round(rng.uniform(0.01, 0.99), 2))
        specs = [_spec_factory(k)(rng) for k in kinds]
        specs += {Relation.ST: [FunctionalSpec("var", u=u), FunctionalSpec("es", u=u), FunctionalSpec("es_bar", u=u)],
                  Relation.ICX: [FunctionalSpec("es", u=u)],
                  Relation.ICV: [FunctionalSpec("es_bar", u=u)]}[rel]
        for sp in specs:
            x, y = evaluate(sp, a, tol), evaluate(sp, b, tol)
            bad += x > y + 1e-12
    return float(bad), None


def _alpha_min_level_set(rng, tol):
    fam = _family(rng)
    spec = FunctionalSpec("penalty_st", curve=alpha_min_from_set(Relation.ST, fam))
    dev = max(max(eval_penalty(spec, y) for y in fam), 0.0)
    dev = max(dev, abs(eval_penalty(spec, sup_order(Relation.ST, fam))))
    return dev, _fam_json(fam)


def _es_bounds(rng, tol):
    q = random_quantile(rng)
    us = np.round(np.sort(rng.uniform(0.001, 0.999, 16)), 4)
    vals = [es(q, float(u)) for u in us]
    bad = sum(not (mean(q) - 1e-12 <= v <= q.values[-1] + 1e-12) for v in vals)
    bad += sum(x > y + 1e-12 for x, y in zip(vals, vals[1:]))
    return float(bad), {"q": _dist(q)} if bad else None


def _es_bar_identity(rng, tol):
    q = random_quantile(rng)
    u = float(np.round(rng.uniform(0.001, 0.999), 3))
    return abs(es_bar(q, u) + es(_neg(q), u)), {"q": _dist(q), "u": u}


def _g_single_level(rng, tol):
    q = random_quantile(rng)
    curve = random_step_curve(rng) if rng.random() < 0.5 else random_linear_curve(rng)
    if rng.random() < 0.5:
        # lift the curve above q somewhere in the middle so both outcomes occur
        curve = PenaltyCurve(curve.kind, curve.grid, tuple(v + 5.0 for v in curve.values))
    g = g_transform_eval(PenaltyFamily((0.0,), (curve,)), q, Relation.ST, tol)
    p = eval_penalty(FunctionalSpec("penalty_st", curve=curve), q)
    ok = (g == 0.0) if p <= 0 else (g == math.inf or p <= tol)
    return _bad(ok, {"q": _dist(q), "curve": curve.to_json(), "g": g, "penalty": p})


def _var_vs_oracle(rng, tol):
    q = random_quantile(rng)
    us = rng.uniform(0.001, 0.999, 16)
    ref = oracles.grid_q(q, us)
    return max(abs(var(q, float(u)) - r) for u, r in zip(us, ref)), {"q": _dist(q)}


CHECKS: tuple[Check, ...] = (
    Check("quantile_identities", "quantile", _quantile_identities),
    Check("integrated_roundtrip", "quantile", _roundtrip_integrated),
    Check("json_roundtrip", "quantile", _roundtrip_json),
    Check("negate_reflection", "quantile", _negate_relation),
    Check("translate_mean", "quantile", _translate_mean, 1e-12),
    Check("integrated_vs_riemann", "quantile", _integrated_vs_riemann, 1e-9),
    *(Check(f"oracle_agreement_{r.value}", "orders", _oracle_agreement(r)) for r in _RELS),
    Check("reflexivity", "orders", _reflexive),
    Check("transitivity", "orders", _transitive),
    Check("st_implies_icx_icv", "orders", _st_implies),
    Check("icv_mirror", "orders", _icv_mirror),
    Check("cx_definition", "orders", _cx_definition),
    Check("disp_characterisations", "orders", _disp_characterisations),
    Check("disp_translation", "orders", _disp_shift),
    Check("sup_upper_bound", "lattice", _upper_bound),
    Check("sup_least", "lattice", _least),
    Check("sup_order_free", "lattice", _order_free),
    Check("envelope_oracle", "lattice", _envelope, 1e-9),
    Check("disp_sup_partitions", "lattice", _disp_sup_vs_partitions, 1e-12),
    Check("tv_additivity", "lattice", _tv_additive, 1e-12),
    Check("tv_left_continuity", "lattice", _tv_left_continuous, 1e-12),
    Check("tv_lower_sums", "lattice", _tv_lower_sums, 1e-12),
    Check("disp_anchor", "lattice", _disp_anchor),
    Check("cx_mean_preserved", "lattice", _cx_mean, 1e-12),
    Check("maxitive_penalty_st", "maxitive", _maxitivity(Relation.ST, "penalty_st"), 1e-9),
    Check("maxitive_penalty_icx", "maxitive", _maxitivity(Relation.ICX, "penalty_icx"), 1e-9),
    Check("maxitive_penalty_icx_cx", "maxitive", _maxitivity(Relation.CX, "penalty_icx"), 1e-9),
    Check("maxitive_penalty_icv", "maxitive", _maxitivity(Relation.ICV, "penalty_icv"), 1e-9),
    Check("maxitive_g_st", "maxitive", _maxitivity(Relation.ST, "g_family:st"), 1e-9),
    Check("maxitive_g_icx", "maxitive", _maxitivity(Relation.ICX, "g_family:icx"), 1e-9),
    Check("maxitive_g_icv", "maxitive", _maxitivity(Relation.ICV, "g_family:icv"), 1e-9),
    Check("maxitive_var", "maxitive", _var_maxitive, 1e-12),
    Check("es_not_maxitive_icx", "maxitive", _es_search, 0.01, search=True),
    Check("translation", "maxitive", _translation, 1e-12),
    Check("monotonicity", "maxitive", _monotone),
    Check("alpha_min_level_set", "maxitive", _alpha_min_level_set, 1e-12),
    Check("es_bounds", "maxitive", _es_bounds),
    Check("es_bar_identity", "maxitive", _es_bar_identity, 1e-12),
    Check("g_single_level", "maxitive", _g_single_level),
    Check("var_vs_oracle", "maxitive", _var_vs_oracle),
)
