"""Penalty curves ``alpha(u)`` and level-indexed penalty families ``alpha(s, u)``."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

from .quantile import DEFAULT_TOL, PiecewiseLinearFn

STEP = "step-left"
LINEAR = "piecewise-linear"

Limit = Union[Fraction, float]  # a Fraction, or -inf


def _parse_value(x) -> float:
    if isinstance(x, str):
        if x.strip().lower() in ("-inf", "-infinity"):
            return -math.inf
        raise ValueError(f"unsupported penalty value {x!r}")
    return float(x)


@dataclass(frozen=True)
class PenaltyCurve:
    """A penalty ``alpha: (0, 1) -> [-inf, inf)``.

    ``step-left``: ``grid`` holds the interior jump points and ``values`` one
    entry per interval ``(0, g1], (g1, g2], ..., (gk, 1)``; ``-inf`` allowed.

    ``piecewise-linear``: ``grid`` runs from 0 to 1 inclusive and ``values``
    gives one finite value per node; the end values are the one-sided limits.
    """

    kind: str
    grid: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        grid = tuple(float(g) for g in self.grid)
        values = tuple(_parse_value(v) for v in self.values)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        if any(not a < b for a, b in zip(grid, grid[1:])):
            raise ValueError("penalty grid must be strictly increasing")
        if any(math.isnan(v) or v == math.inf for v in values):
            raise ValueError("penalty values must lie in [-inf, inf)")
        if self.kind == STEP:
            if grid and not (0.0 < grid[0] and grid[-1] < 1.0):
                raise ValueError("step-left grid must lie inside (0, 1)")
            if len(values) != len(grid) + 1:
                raise ValueError("step-left curve needs one value per interval")
        elif self.kind == LINEAR:
            if len(grid) < 2 or grid[0] != 0.0 or grid[-1] != 1.0:
                raise ValueError("piecewise-linear grid must run from 0 to 1")
            if len(values) != len(grid):
                raise ValueError("piecewise-linear curve needs one value per node")
            if any(not math.isfinite(v) for v in values):
                raise ValueError("piecewise-linear values must be finite")
        else:
            raise ValueError(f"unknown curve kind {self.kind!r}")

    @classmethod
    def constant(cls, c: float) -> PenaltyCurve:
        return cls(STEP, (), (c,))

    @cached_property
    def linear(self) -> PiecewiseLinearFn:
        if self.kind != LINEAR:
            raise AttributeError("only piecewise-linear curves have a linear form")
        return PiecewiseLinearFn(self.grid, self.values)

    def breaks(self) -> Sequence[float]:
        return self.grid if self.kind == STEP else self.grid[1:-1]

    def limits(self, a: Fraction, b: Fraction) -> tuple[Limit, Limit]:
        """Values at ``a+`` and at ``b`` for an interval with no break inside."""
        if self.kind == STEP:
            v = self.values[bisect.bisect_left(self.grid, b)]
            v = v if v == -math.inf else Fraction(v)
            return v, v
        return self.linear.exact(a), self.linear.exact(b)

    def __call__(self, u: float) -> float:
        if self.kind == STEP:
            return self.values[bisect.bisect_left(self.grid, u)]
        return self.linear(u)

    def is_concave(self, tol: float = DEFAULT_TOL) -> bool:
        if self.kind == STEP:
            return all(v == self.values[0] for v in self.values)
        return self.linear.is_concave(tol)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "grid": list(self.grid),
            "values": [("-inf" if v == -math.inf else v) for v in self.values],
        }

    @classmethod
    def from_json(cls, obj: dict) -> PenaltyCurve:
        try:
            return cls(obj["kind"], tuple(obj.get("grid", ())), tuple(obj["values"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed penalty curve: {exc}") from None


def merged_points(*objs) -> list[Fraction]:
    """{0, 1} together with every break point of the given views, sorted."""
    pts = {Fraction(0), Fraction(1)}
    for o in objs:
        pts.update(Fraction(x) for x in o.breaks())
    return sorted(pts)


def intervals(*objs):
    pts = merged_points(*objs)
    return list(zip(pts, pts[1:]))


@dataclass(frozen=True)
class PenaltyFamily:
    """Curves ``alpha(s, .)`` at levels ``s_1 < ... < s_m``, non-decreasing in ``s``.

    Between stored levels the family is read as right-continuous:
    ``alpha(s, .) = curves[j]`` for ``s`` in ``[s_j, s_{j+1})``.
    """

    levels: tuple[float, ...]
    curves: tuple[PenaltyCurve, ...]

    def __post_init__(self) -> None:
        levels = tuple(float(s) for s in self.levels)
        curves = tuple(self.curves)
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "curves", curves)
        if not levels or len(levels) != len(curves):
            raise ValueError("need one curve per level, at least one level")
        if any(not math.isfinite(s) for s in levels) or any(not a < b for a, b in zip(levels, levels[1:])):
            raise ValueError("levels must be finite and strictly increasing")
        for lo, hi in zip(curves, curves[1:]):
            for a, b in intervals(lo, hi):
                for x, y in zip(lo.limits(a, b), hi.limits(a, b)):
                    if x != -math.inf and (y == -math.inf or x - y > DEFAULT_TOL):
                        raise ValueError("family monotonicity violated: curves must be non-decreasing in the level")

    def to_json(self) -> dict:
        return {"levels": list(self.levels), "curves": [c.to_json() for c in self.curves]}

    @classmethod
    def from_json(cls, obj: dict) -> PenaltyFamily:
        try:
            return cls(tuple(obj["levels"]), tuple(PenaltyCurve.from_json(c) for c in obj["curves"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed penalty family: {exc}") from None
