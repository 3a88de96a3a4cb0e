"""Exact decision procedures for the five stochastic orders.

Every "for all u in (0, 1)" quantifier is discharged on the merged breakpoint
grid of the two inputs: differences of step functions are constant between
breakpoints, and differences of piecewise-linear functions are extremal at
knots.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .quantile import (
    DEFAULT_TOL,
    PiecewiseLinearFn,
    StepQuantile,
    eval_q,
    integrated_quantile,
    reflected_integrated,
)


class Relation(str, Enum):
    ST = "st"
    ICX = "icx"
    CX = "cx"
    ICV = "icv"
    DISP = "disp"

    @classmethod
    def parse(cls, tag: "Relation | str") -> "Relation":
        try:
            return cls(tag)
        except ValueError:
            raise ValueError(f"unknown relation {tag!r}; expected one of {[r.value for r in cls]}") from None


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of a dominance check.

    ``margin`` is the signed extremal gap: the smallest slack when the order
    holds, the largest violation (negative) when it does not.  ``witness`` is
    ``(u,)`` or, for the dispersive order, ``(u, v)`` with ``u < v``.
    """

    relation: Relation
    holds: bool
    margin: float
    witness: Optional[tuple[float, ...]] = None

    def __post_init__(self) -> None:
        if self.holds != (self.witness is None):
            raise ValueError("witness must be present exactly when the order fails")

    def to_json(self) -> dict:
        out: dict = {"relation": self.relation.value, "holds": self.holds}
        if self.witness is not None:
            if len(self.witness) == 2:
                out["witness"] = {"u": self.witness[0], "v": self.witness[1]}
            else:
                out["witness"] = {"u": self.witness[0]}
        out["margin"] = self.margin
        return out


def _pointwise_gap(points, fa, fb) -> tuple[Fraction, float]:
    """min over points of fb - fa, and the point attaining it."""
    best, at = None, None
    for w in points:
        gap = fb(w) - fa(w)
        if best is None or gap < best:
            best, at = gap, w
    return best, float(at)


def _check_st(a: StepQuantile, b: StepQuantile) -> tuple[Fraction, float]:
    grid = sorted(set(a.breakpoints) | set(b.breakpoints))
    return _pointwise_gap(grid, lambda w: Fraction(eval_q(a, w)), lambda w: Fraction(eval_q(b, w)))


def _check_linear(fa: PiecewiseLinearFn, fb: PiecewiseLinearFn) -> tuple[Fraction, float]:
    knots = sorted(set(fa.knots) | set(fb.knots))
    return _pointwise_gap(knots, fa.exact, fb.exact)


def _check_disp(a: StepQuantile, b: StepQuantile) -> tuple[Fraction, Optional[tuple[float, float]]]:
    ja, jb = a.jumps(), b.jumps()
    grid = sorted(set(ja) | set(jb))
    if not grid:
        return Fraction(0), None
    diffs = [ja.get(w, 0) - jb.get(w, 0) for w in grid]
    # maximum-sum contiguous window of (jump_a - jump_b)
    best, best_p, best_r = diffs[0], 0, 0
    run, run_p = diffs[0], 0
    for r in range(1, len(diffs)):
        if run < 0:
            run, run_p = diffs[r], r
        else:
            run += diffs[r]
        if run > best:
            best, best_p, best_r = run, run_p, r
    nxt = grid[best_r + 1] if best_r + 1 < len(grid) else 1.0
    return -best, (grid[best_p], (grid[best_r] + nxt) / 2)


def check_order(rel: Relation | str, a: StepQuantile, b: StepQuantile, tol: float = DEFAULT_TOL) -> OrderVerdict:
    """Decide ``a <= b`` in the order ``rel`` up to an additive tolerance."""
    rel = Relation.parse(rel)
    if rel is Relation.ST:
        gap, at = _check_st(a, b)
        witness = (at,)
    elif rel in (Relation.ICX, Relation.CX):
        Qa, Qb = integrated_quantile(a), integrated_quantile(b)
        gap, at = _check_linear(Qa, Qb)
        witness = (at,)
        if rel is Relation.CX:
            mean_gap = -abs(Qb.knot_values[0] - Qa.knot_values[0])
            if mean_gap < gap:
                # unequal means bind; report the limit point 0+
                gap, witness = mean_gap, (0.0,)
    elif rel is Relation.ICV:
        gap, at = _check_linear(reflected_integrated(a), reflected_integrated(b))
        witness = (at,)
    else:
        gap, pair = _check_disp(a, b)
        witness = pair
    holds = gap >= -tol
    return OrderVerdict(rel, holds, float(gap), None if holds else witness)


def dominates(rel: Relation | str, a: StepQuantile, b: StepQuantile, tol: float = DEFAULT_TOL) -> bool:
    return check_order(rel, a, b, tol).holds
