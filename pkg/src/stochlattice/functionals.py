"""Maxitive functionals: VaR, ES, penalty representations and the G-transform.

Suprema over the open interval (0, 1) are taken piece by piece on the merged
grid of the law and the penalty.  On each piece every ingredient is linear,
so the objective is monotone there and its supremum is one of the two
one-sided endpoint limits.  The value returned is the supremum, which need
not be attained.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .lattice import FamilyLike, as_family, concave_envelope, max_jumps, pointwise_max, sup_order
from .orders import Relation
from .penalty import LINEAR, STEP, PenaltyCurve, PenaltyFamily, intervals
from .quantile import (
    DEFAULT_TOL,
    ZERO,
    StepQuantile,
    eval_q,
    integrated_quantile,
    mean,
    reflected_integrated,
    translate,
)
from .sampling import random_family, trial_rngs

INF = math.inf
TAGS = ("var", "es", "es_bar", "penalty_st", "penalty_icx", "penalty_icv", "g_family")


class _StepView:
    """``q`` seen piecewise: constant on each ``(a, b]``."""

    def __init__(self, q: StepQuantile):
        self.q = q

    def breaks(self):
        return self.q.breakpoints[:-1]

    def limits(self, a: Fraction, b: Fraction):
        v = Fraction(eval_q(self.q, b if b < 1 else 1.0))
        return v, v


class _LinearView:
    def __init__(self, f):
        self.f = f

    def breaks(self):
        return self.f.knots[1:-1]

    def limits(self, a: Fraction, b: Fraction):
        return self.f.exact(a), self.f.exact(b)


def statistic_view(q: StepQuantile, relation: Relation | str):
    """The statistic inducing ``relation``: q for st, Q for icx/cx, Qbar for icv."""
    rel = Relation.parse(relation)
    if rel is Relation.ST:
        return _StepView(q)
    if rel in (Relation.ICX, Relation.CX):
        return _LinearView(integrated_quantile(q))
    if rel is Relation.ICV:
        return _LinearView(reflected_integrated(q))
    raise ValueError(f"no scalar statistic for relation {rel.value!r}")


def _check_level(u: float) -> Fraction:
    if not 0.0 < u < 1.0:
        raise ValueError(f"level u must lie in (0, 1), got {u!r}")
    return Fraction(u)


def var(q: StepQuantile, u: float) -> float:
    """Value at risk, the lower quantile at level ``u``."""
    _check_level(u)
    return eval_q(q, u)


def es(q: StepQuantile, u: float) -> float:
    """Expected shortfall ``Q(u) / (1 - u)``: the average of the upper tail."""
    fu = _check_level(u)
    return float(integrated_quantile(q).exact(fu) / (1 - fu))


def es_bar(q: StepQuantile, u: float) -> float:
    """Lower-tail counterpart ``-ES_u(-xi) = Qbar(u) / (1 - u)``."""
    fu = _check_level(u)
    return float(reflected_integrated(q).exact(fu) / (1 - fu))


@dataclass(frozen=True)
class FunctionalSpec:
    """Declarative description of a functional on laws.

    ``var``/``es``/``es_bar`` take a level ``u``; the ``penalty_*`` tags take a
    ``curve``; ``g_family`` takes a ``family`` and the ``relation`` fixing its
    statistic.
    """

    tag: str
    u: Optional[float] = None
    curve: Optional[PenaltyCurve] = None
    family: Optional[PenaltyFamily] = None
    relation: Optional[Relation] = None

    def __post_init__(self) -> None:
        if self.tag not in TAGS:
            raise ValueError(f"unknown functional tag {self.tag!r}")
        if self.tag in ("var", "es", "es_bar"):
            if self.u is None:
                raise ValueError(f"{self.tag} needs a level u")
            _check_level(float(self.u))
        elif self.tag.startswith("penalty_"):
            if self.curve is None:
                raise ValueError(f"{self.tag} needs a curve")
            if self.tag == "penalty_icx" and not self.curve.is_concave():
                raise ValueError("penalty_icx needs a concave curve")
        else:
            if self.family is None or self.relation is None:
                raise ValueError("g_family needs a family and a relation")
            rel = Relation.parse(self.relation)
            if rel not in (Relation.ST, Relation.ICX, Relation.ICV):
                raise ValueError("g_family relation must be st, icx or icv")
            object.__setattr__(self, "relation", rel)

    def to_json(self) -> dict:
        if self.tag in ("var", "es", "es_bar"):
            return {"tag": self.tag, "u": self.u}
        if self.curve is not None:
            return {"tag": self.tag, "curve": self.curve.to_json()}
        return {"tag": self.tag, **self.family.to_json(), "relation": self.relation.value}

    @classmethod
    def from_json(cls, obj: dict) -> FunctionalSpec:
        if not isinstance(obj, dict) or "tag" not in obj:
            raise ValueError("functional spec must be an object with a 'tag'")
        tag = obj["tag"]
        if tag in ("var", "es", "es_bar"):
            return cls(tag, u=float(obj.get("u", float("nan"))))
        if isinstance(tag, str) and tag.startswith("penalty_"):
            if "curve" not in obj:
                raise ValueError(f"{tag} needs a curve")
            return cls(tag, curve=PenaltyCurve.from_json(obj["curve"]))
        if tag == "g_family":
            return cls(tag, family=PenaltyFamily.from_json(obj), relation=Relation.parse(obj.get("relation", "")))
        raise ValueError(f"unknown functional tag {tag!r}")


def _penalty_st(q: StepQuantile, curve: PenaltyCurve) -> float:
    view = _StepView(q)
    best = -INF
    for a, b in intervals(view, curve):
        t, _ = view.limits(a, b)
        la, lb = curve.limits(a, b)
        if la == -INF or lb == -INF:
            return INF
        best = max(best, t - min(la, lb))
    return float(best)


def _penalty_tail(view, curve: PenaltyCurve) -> float:
    """``sup_u (S(u) - alpha(u)) / (1 - u)`` for a statistic ``S`` vanishing at 1."""
    best = -INF
    for a, b in intervals(view, curve):
        sa, sb = view.limits(a, b)
        la, lb = curve.limits(a, b)
        if la == -INF or lb == -INF:
            return INF
        cand = (sa - la) / (1 - a)
        if b < 1:
            cand = max(cand, (sb - lb) / (1 - b))
        elif lb < 0:
            return INF
        # lb >= 0: the ratio is constant or decreasing towards 1, so a+ is the sup
        best = max(best, cand)
    return float(best)


def eval_penalty(spec: FunctionalSpec, q: StepQuantile) -> float:
    """Evaluate a ``penalty_*`` functional; may return ``inf``."""
    if spec.tag == "penalty_st":
        return _penalty_st(q, spec.curve)
    if spec.tag == "penalty_icx":
        return _penalty_tail(_LinearView(integrated_quantile(q)), spec.curve)
    if spec.tag == "penalty_icv":
        return _penalty_tail(_LinearView(reflected_integrated(q)), spec.curve)
    raise ValueError(f"{spec.tag!r} is not a penalty functional")


def g_transform_eval(
    fam: PenaltyFamily,
    q: StepQuantile,
    relation: Relation | str,
    tol: float = DEFAULT_TOL,
) -> float:
    """``sup_u G(t(u), u)`` with ``G(t, u) = min{s_j : t <= alpha(s_j, u)}``.

    Inputs dominated by the lowest curve get ``s_1``; inputs escaping the top
    curve somewhere get ``inf``.
    """
    view = statistic_view(q, relation)
    curves = fam.curves
    best = -INF
    for a, b in intervals(view, *curves):
        sa, sb = view.limits(a, b)
        failing = -1
        for j in range(len(curves) - 1, -1, -1):
            ca, cb = curves[j].limits(a, b)
            # the gap is linear on the piece, so it dips below -tol iff an end does
            if min(ca - sa, cb - sb) < -tol:
                failing = j
                break
        if failing == len(curves) - 1:
            return INF
        best = max(best, fam.levels[failing + 1])
    return best


def evaluate(spec: FunctionalSpec, q: StepQuantile, tol: float = DEFAULT_TOL) -> float:
    if spec.tag == "var":
        return var(q, spec.u)
    if spec.tag == "es":
        return es(q, spec.u)
    if spec.tag == "es_bar":
        return es_bar(q, spec.u)
    if spec.tag == "g_family":
        return g_transform_eval(spec.family, q, spec.relation, tol)
    return eval_penalty(spec, q)


def _curve_from_linear(f) -> PenaltyCurve:
    grid: list[float] = []
    vals: list[float] = []
    for k, v in zip(f.knots, f.knot_values):
        fk = float(k)
        if grid and fk == grid[-1]:
            continue
        grid.append(fk)
        vals.append(float(v))
    grid[-1] = 1.0
    return PenaltyCurve(LINEAR, tuple(grid), tuple(vals))


def _alpha_curve(rel: Relation, members: Sequence[StepQuantile], tol: float) -> PenaltyCurve:
    if rel is Relation.ST:
        grid = sorted({b for q in members for b in q.breakpoints[:-1]})
        ends = grid + [1.0]
        return PenaltyCurve(STEP, tuple(grid), tuple(max(eval_q(q, w) for q in members) for w in ends))
    if rel in (Relation.ICX, Relation.CX):
        return _curve_from_linear(concave_envelope([integrated_quantile(q) for q in members], tol))
    if rel is Relation.ICV:
        return _curve_from_linear(pointwise_max([reflected_integrated(q) for q in members]))
    jumps = max_jumps(members)
    level = ZERO
    vals = [0.0]
    for _, j in jumps:
        level += j
        vals.append(float(level))
    return PenaltyCurve(STEP, tuple(w for w, _ in jumps), tuple(vals))


def alpha_min_from_set(
    relation: Relation | str,
    acceptance: Union[FamilyLike, Sequence[FamilyLike]],
    s_levels: Optional[Sequence[float]] = None,
    tol: float = DEFAULT_TOL,
) -> Union[PenaltyCurve, PenaltyFamily]:
    """Minimal penalty ``sup over the acceptance set`` of the order's statistic.

    Without ``s_levels`` the acceptance set is one family and a curve is
    returned.  With ``s_levels`` it is a list of nested families, one per
    level, and a :class:`PenaltyFamily` is returned.  For the dispersive
    order the curve is ``beta(t) = TV_[0,t]`` of the set, so that
    ``alpha(u, v) = beta(v) - beta(u)``.
    """
    rel = Relation.parse(relation)
    if s_levels is None:
        return _alpha_curve(rel, as_family(acceptance).members, tol)
    fams = [as_family(f).members for f in acceptance]
    if len(fams) != len(s_levels):
        raise ValueError("need one acceptance family per level")
    if rel is Relation.DISP:
        tables = [dict(max_jumps(m)) for m in fams]
        for lo, hi in zip(tables, tables[1:]):
            if any(j > hi.get(w, ZERO) for w, j in lo.items()):
                raise ValueError("acceptance families are not nested")
    curves = tuple(_alpha_curve(rel, m, tol) for m in fams)
    try:
        return PenaltyFamily(tuple(s_levels), curves)
    except ValueError as exc:
        raise ValueError(f"acceptance families are not nested: {exc}") from None


_ALLOWED = {
    Relation.ST: {"var", "es", "es_bar", "penalty_st", "penalty_icx", "penalty_icv", "g_family"},
    Relation.ICX: {"es", "penalty_icx", "g_family"},
    Relation.CX: {"es", "penalty_icx", "g_family"},
    Relation.ICV: {"es_bar", "penalty_icv", "g_family"},
}
_G_RELATIONS = {
    Relation.ST: {Relation.ST, Relation.ICX, Relation.ICV},
    Relation.ICX: {Relation.ICX},
    Relation.CX: {Relation.ICX},
    Relation.ICV: {Relation.ICV},
}


def check_compatible(relation: Relation | str, spec: FunctionalSpec) -> Relation:
    """Raise unless ``spec`` is monotone for ``relation``."""
    rel = Relation.parse(relation)
    if spec.tag not in _ALLOWED.get(rel, ()):
        raise ValueError(f"functional {spec.tag!r} is not monotone for relation {rel.value!r}")
    if spec.tag == "g_family" and spec.relation not in _G_RELATIONS[rel]:
        raise ValueError(f"g_family over {spec.relation.value!r} is not monotone for {rel.value!r}")
    return rel


def _deviation(x: float, y: float) -> float:
    if x == INF and y == INF:
        return 0.0
    return abs(x - y)


@dataclass
class MaxitivityReport:
    relation: str
    trials: int
    seed: int
    max_deviation: float = 0.0
    violations: int = 0
    monotonicity_violations: int = 0
    counterexample: Optional[dict] = None
    deviations: list[float] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "max_deviation": self.max_deviation,
            "violations": self.violations,
            "monotonicity_violations": self.monotonicity_violations,
            "counterexample": self.counterexample,
            "seed": self.seed,
        }


SpecSource = Union[FunctionalSpec, Callable[[np.random.Generator], FunctionalSpec]]


def check_maxitivity(
    relation: Relation | str,
    spec: SpecSource,
    trials: int = 100,
    family_size: int = 5,
    seed: int = 0,
    max_support: int = 8,
    lattice: int = 1000,
    tol: float = DEFAULT_TOL,
) -> MaxitivityReport:
    """Compare ``psi(sup Y)`` with ``max psi(y)`` over random finite families.

    ``spec`` may be a fixed spec or a callable drawing one per trial from the
    trial's generator.  Also counts monotonicity failures ``psi(y) > psi(sup Y)``.
    Deterministic given ``seed``.
    """
    rel = Relation.parse(relation)
    if isinstance(spec, FunctionalSpec):
        check_compatible(rel, spec)
    report = MaxitivityReport(rel.value, trials, seed)
    for rng in trial_rngs(seed, trials):
        sp = spec if isinstance(spec, FunctionalSpec) else spec(rng)
        check_compatible(rel, sp)
        size = int(rng.integers(min(2, family_size), family_size + 1))
        fam = random_family(rng, size, max_support=max_support, lattice=lattice)
        if rel is Relation.CX:
            fam = [translate(y, -mean(y)) for y in fam]
        psis = [evaluate(sp, y, tol) for y in fam]
        top = sup_order(rel, fam, tol)
        psi_top = evaluate(sp, top, tol)
        dev = _deviation(psi_top, max(psis))
        report.deviations.append(dev)
        report.max_deviation = max(report.max_deviation, dev)
        report.monotonicity_violations += sum(p > psi_top + tol for p in psis)
        if dev > tol:
            report.violations += 1
            if report.counterexample is None:
                from .jsonio import distribution_to_json

                report.counterexample = {
                    "family": [distribution_to_json(y) for y in fam],
                    "spec": sp.to_json(),
                    "psi_sup": psi_top,
                    "psi_max": max(psis),
                }
    return report
