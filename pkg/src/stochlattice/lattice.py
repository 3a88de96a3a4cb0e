"""Suprema of finite families of laws in each order's lattice.

The dispersive supremum is built from the total variation of the family,
``q*(t) = TV_[0,t]``, and is returned as the representative with
``q*(0+) = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .orders import Relation
from .quantile import (
    DEFAULT_TOL,
    ZERO,
    DistributionError,
    PiecewiseLinearFn,
    StepQuantile,
    eval_q,
    exact_mean,
    integrated_quantile,
    quantile_from_integrated,
    quantile_from_reflected,
    reflected_integrated,
)


@dataclass(frozen=True)
class QuantileFamily:
    """Non-empty finite family of quantile functions."""

    members: tuple[StepQuantile, ...]

    def __post_init__(self) -> None:
        members = tuple(self.members)
        if not members:
            raise ValueError("family must be non-empty")
        object.__setattr__(self, "members", members)

    @property
    def merged_grid(self) -> list[float]:
        """Sorted union of interior breakpoints."""
        return sorted({b for q in self.members for b in q.breakpoints[:-1]})

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


FamilyLike = Union[QuantileFamily, Sequence[StepQuantile]]


def as_family(fam: FamilyLike) -> QuantileFamily:
    return fam if isinstance(fam, QuantileFamily) else QuantileFamily(tuple(fam))


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def upper_hull(points: Iterable[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """Upper hull of a planar point set by the monotone chain, collinear points dropped."""
    top: dict[Fraction, Fraction] = {}
    for x, y in points:
        top[x] = max(y, top.get(x, y))
    pts = sorted(top.items())
    hull: list[tuple[Fraction, Fraction]] = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) >= 0:
            hull.pop()
        hull.append(p)
    return hull


def pointwise_max(fns: Sequence[PiecewiseLinearFn]) -> PiecewiseLinearFn:
    """Exact pointwise maximum, with kinks added where members cross."""
    if not fns:
        raise ValueError("need at least one function")
    knots = sorted({k for f in fns for k in f.knots})
    out_k: list[Fraction] = []
    out_v: list[Fraction] = []
    for a, b in zip(knots, knots[1:]):
        lines = [(f.exact(a), f.exact(b)) for f in fns]
        cuts = {a, b}
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                da = lines[i][0] - lines[j][0]
                db = lines[i][1] - lines[j][1]
                if (da < 0 < db) or (db < 0 < da):
                    cuts.add(a + (b - a) * da / (da - db))
        for c in sorted(cuts):
            if out_k and out_k[-1] == c:
                continue
            t = (c - a) / (b - a)
            out_k.append(c)
            out_v.append(max(fa + (fb - fa) * t for fa, fb in lines))
    return PiecewiseLinearFn(tuple(out_k), tuple(out_v))


def concave_envelope(fns: Sequence[PiecewiseLinearFn], tol: float = DEFAULT_TOL) -> PiecewiseLinearFn:
    """Smallest concave majorant of a family of concave functions vanishing at 1."""
    if not fns:
        raise ValueError("need at least one function")
    for f in fns:
        if abs(float(f.knot_values[-1])) > tol or not f.is_concave(tol):
            raise ValueError("envelope members must be concave and vanish at 1")
    knots = sorted({k for f in fns for k in f.knots})
    # crossings of the members sit below chords, so knots suffice for the hull
    pts = [(k, max(f.exact(k) for f in fns)) for k in knots]
    hull = upper_hull(pts)
    return PiecewiseLinearFn(tuple(x for x, _ in hull), tuple(y for _, y in hull))


def _st_sup(members: Sequence[StepQuantile]) -> StepQuantile:
    grid = sorted({b for q in members for b in q.breakpoints})
    return StepQuantile(tuple(grid), tuple(max(eval_q(q, w) for q in members) for w in grid))


def max_jumps(members: Sequence[StepQuantile]) -> list[tuple[float, Fraction]]:
    """Per merged interior breakpoint, the largest jump over the family."""
    table: dict[float, Fraction] = {}
    for q in members:
        for w, j in q.jumps().items():
            if j > table.get(w, ZERO):
                table[w] = j
    return sorted(table.items())


def _disp_sup(members: Sequence[StepQuantile]) -> StepQuantile:
    bps: list[float] = []
    vals: list[float] = []
    level = ZERO
    for w, j in max_jumps(members):
        bps.append(w)
        vals.append(float(level))
        level += j
    bps.append(1.0)
    vals.append(float(level))
    return StepQuantile(tuple(bps), tuple(vals))


def sup_order(rel: Relation | str, fam: FamilyLike, tol: float = DEFAULT_TOL) -> StepQuantile:
    """Least upper bound of a finite family in the lattice of ``rel``."""
    rel = Relation.parse(rel)
    members = as_family(fam).members
    if rel is Relation.ST:
        return _st_sup(members)
    if rel is Relation.CX:
        means = [exact_mean(q) for q in members]
        if float(max(means) - min(means)) > tol:
            raise DistributionError("convex-order supremum needs equal means")
    if rel in (Relation.ICX, Relation.CX):
        env = concave_envelope([integrated_quantile(q) for q in members], tol)
        return quantile_from_integrated(env, tol)
    if rel is Relation.ICV:
        return quantile_from_reflected(pointwise_max([reflected_integrated(q) for q in members]), tol)
    return _disp_sup(members)


def total_variation(fam: FamilyLike, u: float, v: float) -> float:
    """``TV_[u,v]`` of the family: the sum of the largest jumps inside ``[u, v)``."""
    if not (0.0 <= u < v <= 1.0):
        raise ValueError(f"need 0 <= u < v <= 1, got u={u!r}, v={v!r}")
    members = as_family(fam).members
    return float(sum((j for w, j in max_jumps(members) if u <= w < v), ZERO))
