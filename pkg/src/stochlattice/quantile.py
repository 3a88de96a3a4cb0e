"""Quantile functions of finitely supported laws.

A law is identified with its left-continuous quantile function, stored as a
step function on (0, 1).  The upper quantile, the distribution function and
the (reflected) integrated quantile functions are derived views.

Integrated quantiles are kept in exact rational arithmetic so that slopes can
be read back without rounding; the step quantile itself is plain floats.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Iterable, Sequence

DEFAULT_TOL = 1e-9

ZERO = Fraction(0)
ONE = Fraction(1)


class DistributionError(ValueError):
    """Input data violates an invariant of a distribution or quantile function."""


def as_fraction(x: Real | Fraction) -> Fraction:
    """Exact rational value of a finite real number."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or not isinstance(x, Real):
        raise DistributionError(f"expected a real number, got {x!r}")
    if not math.isfinite(x):
        raise DistributionError(f"expected a finite number, got {x!r}")
    return Fraction(x)


@dataclass(frozen=True)
class StepQuantile:
    """Canonical left-continuous non-decreasing step function on (0, 1).

    ``q(u) = values[i]`` for ``u`` in ``(breakpoints[i-1], breakpoints[i]]``
    with ``breakpoints[-1] == 1``.  Adjacent intervals carrying the same value
    are merged on construction, so equal laws compare equal.
    """

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        bps = tuple(float(b) for b in self.breakpoints)
        vals = tuple(float(v) for v in self.values)
        if not bps or len(bps) != len(vals):
            raise DistributionError("breakpoints and values must be non-empty and of equal length")
        if bps[-1] != 1.0:
            raise DistributionError("last breakpoint must equal 1")
        if not bps[0] > 0.0:
            raise DistributionError("breakpoints must lie in (0, 1]")
        for prev, nxt in zip(bps, bps[1:]):
            if not prev < nxt:
                raise DistributionError("breakpoints must be strictly increasing")
        for v in vals:
            if not math.isfinite(v):
                raise DistributionError("quantile values must be finite")
        for prev, nxt in zip(vals, vals[1:]):
            if not prev <= nxt:
                raise DistributionError("quantile values must be non-decreasing")

        merged_b: list[float] = []
        merged_v: list[float] = []
        for b, v in zip(bps, vals):
            if merged_v and merged_v[-1] == v:
                merged_b[-1] = b
            else:
                merged_b.append(b)
                merged_v.append(v)
        object.__setattr__(self, "breakpoints", tuple(merged_b))
        object.__setattr__(self, "values", tuple(merged_v))

    def __len__(self) -> int:
        return len(self.values)

    @classmethod
    def constant(cls, c: float) -> StepQuantile:
        return cls((1.0,), (float(c),))

    def masses(self) -> list[Fraction]:
        """Probability of each atom, exactly."""
        out = []
        prev = ZERO
        for b in self.breakpoints:
            fb = Fraction(b)
            out.append(fb - prev)
            prev = fb
        return out

    def jumps(self) -> dict[float, Fraction]:
        """Increment of q across each interior breakpoint, keyed by breakpoint."""
        return {
            b: Fraction(nxt) - Fraction(cur)
            for b, cur, nxt in zip(self.breakpoints, self.values, self.values[1:])
        }

    def __call__(self, u: float) -> float:
        return eval_q(self, u)


def build_distribution(
    values: Sequence[Real],
    weights: Sequence[Real] | None = None,
    tol: float = DEFAULT_TOL,
) -> StepQuantile:
    """Quantile function of the discrete law putting ``weights[i]`` on ``values[i]``.

    Weights default to uniform.  They must be positive and sum to one within
    ``tol``; accepted weights are renormalised exactly.
    """
    values = list(values)
    if not values:
        raise DistributionError("a distribution needs at least one atom")
    if weights is None:
        ws = [Fraction(1, len(values))] * len(values)
    else:
        weights = list(weights)
        if len(weights) != len(values):
            raise DistributionError("values and weights must have the same length")
        ws = [as_fraction(w) for w in weights]
    if any(w <= 0 for w in ws):
        raise DistributionError("weights must be positive")
    total = sum(ws, ZERO)
    if abs(float(total - 1)) > tol:
        raise DistributionError(f"weights sum to {float(total)!r}, expected 1")

    atoms: dict[float, Fraction] = {}
    for v, w in zip(values, ws):
        as_fraction(v)
        atoms[float(v)] = atoms.get(float(v), ZERO) + w

    bps: list[float] = []
    vals: list[float] = []
    cum = ZERO
    for v in sorted(atoms):
        cum += atoms[v]
        b = float(cum / total)
        if bps and b == bps[-1]:
            # interval of zero float width; it carries no mass
            continue
        bps.append(b)
        vals.append(v)
    bps[-1] = 1.0
    return StepQuantile(tuple(bps), tuple(vals))


def negate(values: Sequence[Real], weights: Sequence[Real] | None = None, tol: float = DEFAULT_TOL) -> StepQuantile:
    """Quantile function of the law of ``-xi`` given the atoms of ``xi``."""
    return build_distribution([-float(v) for v in values], weights, tol)


def eval_q(q: StepQuantile, u: float) -> float:
    """Lower quantile ``q(u)``; ``u == 1`` returns the limit ``q(1-)``."""
    if not 0.0 < u <= 1.0:
        raise ValueError(f"u must lie in (0, 1], got {u!r}")
    return q.values[bisect.bisect_left(q.breakpoints, u)]


def eval_q_plus(q: StepQuantile, u: float) -> float:
    """Upper quantile ``q+(u) = inf{x : u < F(x)}``; ``u == 0`` returns ``q(0+)``."""
    if not 0.0 <= u < 1.0:
        raise ValueError(f"u must lie in [0, 1), got {u!r}")
    return q.values[bisect.bisect_right(q.breakpoints, u)]


def cdf(q: StepQuantile, x: float) -> float:
    """Right-continuous distribution function ``F(x) = P(xi <= x)``."""
    i = bisect.bisect_right(q.values, x) - 1
    return 0.0 if i < 0 else q.breakpoints[i]


def cdf_left(q: StepQuantile, x: float) -> float:
    """Left limit ``F(x-) = P(xi < x)``."""
    i = bisect.bisect_left(q.values, x) - 1
    return 0.0 if i < 0 else q.breakpoints[i]


def exact_mean(q: StepQuantile) -> Fraction:
    return sum((Fraction(v) * m for v, m in zip(q.values, q.masses())), ZERO)


def mean(q: StepQuantile) -> float:
    return float(exact_mean(q))


def translate(q: StepQuantile, c: float) -> StepQuantile:
    """Quantile function of ``xi + c``."""
    return StepQuantile(q.breakpoints, tuple(v + c for v in q.values))


@dataclass(frozen=True)
class PiecewiseLinearFn:
    """Continuous piecewise-linear function on [0, 1] with exact rational knots.

    The values at 0 and 1 stand for the one-sided limits at the boundary.
    """

    knots: tuple[Fraction, ...]
    knot_values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        ks = tuple(as_fraction(k) for k in self.knots)
        vs = tuple(as_fraction(v) for v in self.knot_values)
        if len(ks) < 2 or len(ks) != len(vs):
            raise ValueError("need at least two knots, one value per knot")
        if ks[0] != 0 or ks[-1] != 1:
            raise ValueError("knots must start at 0 and end at 1")
        if any(not a < b for a, b in zip(ks, ks[1:])):
            raise ValueError("knots must be strictly increasing")
        object.__setattr__(self, "knots", ks)
        object.__setattr__(self, "knot_values", vs)

    def exact(self, u: Real | Fraction) -> Fraction:
        u = as_fraction(u)
        if not 0 <= u <= 1:
            raise ValueError(f"u must lie in [0, 1], got {u!r}")
        i = bisect.bisect_left(self.knots, u)
        if self.knots[i] == u:
            return self.knot_values[i]
        a, b = self.knots[i - 1], self.knots[i]
        fa, fb = self.knot_values[i - 1], self.knot_values[i]
        return fa + (fb - fa) * (u - a) / (b - a)

    def __call__(self, u: float) -> float:
        return float(self.exact(u))

    def slopes(self) -> list[Fraction]:
        return [
            (fb - fa) / (b - a)
            for a, b, fa, fb in zip(self.knots, self.knots[1:], self.knot_values, self.knot_values[1:])
        ]

    def is_concave(self, tol: float = 0.0) -> bool:
        s = self.slopes()
        return all(nxt - prev <= tol for prev, nxt in zip(s, s[1:]))

    def is_convex(self, tol: float = 0.0) -> bool:
        s = self.slopes()
        return all(prev - nxt <= tol for prev, nxt in zip(s, s[1:]))

    def negated(self) -> PiecewiseLinearFn:
        return PiecewiseLinearFn(self.knots, tuple(-v for v in self.knot_values))


def integrated_quantile(q: StepQuantile) -> PiecewiseLinearFn:
    """``Q(u) = int_u^1 q(v) dv``; concave, ``Q(0) = E[xi]``, ``Q(1) = 0``."""
    knots = [ZERO] + [Fraction(b) for b in q.breakpoints]
    acc = ZERO
    vals = [ZERO]
    for v, m in zip(reversed(q.values), reversed(q.masses())):
        acc += Fraction(v) * m
        vals.append(acc)
    vals.reverse()
    return PiecewiseLinearFn(tuple(knots), tuple(vals))


def reflected_integrated(q: StepQuantile) -> PiecewiseLinearFn:
    """``Qbar(u) = -Q_{-xi}(u) = int_0^{1-u} q(v) dv``; convex, ``Qbar(1) = 0``."""
    knots = [ZERO]
    partial = [ZERO]
    for v, m in zip(q.values, q.masses()):
        partial.append(partial[-1] + Fraction(v) * m)
    # knot 1 - u_i carries the partial integral up to u_i
    for b in reversed(q.breakpoints[:-1]):
        knots.append(ONE - Fraction(b))
    vals = [partial[-1]] + list(reversed(partial[1:-1])) + [ZERO]
    knots.append(ONE)
    return PiecewiseLinearFn(tuple(knots), tuple(vals))


def _step_from_slopes(knots: Sequence[Fraction], levels: Iterable[Fraction]) -> StepQuantile:
    out: list[float] = []
    running = -math.inf
    for lev in levels:
        # slack admitted by the tolerance check is absorbed here
        running = max(running, float(lev))
        out.append(running)
    bps = [float(k) for k in knots[1:]]
    dedup_b: list[float] = []
    dedup_v: list[float] = []
    for b, v in zip(bps, out):
        if dedup_b and b == dedup_b[-1]:
            continue
        dedup_b.append(b)
        dedup_v.append(v)
    dedup_b[-1] = 1.0
    return StepQuantile(tuple(dedup_b), tuple(dedup_v))


def quantile_from_integrated(Q: PiecewiseLinearFn, tol: float = DEFAULT_TOL) -> StepQuantile:
    """Recover ``q`` from a concave ``Q`` with ``Q(1) = 0`` as minus its slopes."""
    if abs(float(Q.knot_values[-1])) > tol:
        raise DistributionError("integrated quantile must vanish at 1")
    if not Q.is_concave(tol):
        raise DistributionError("integrated quantile must be concave")
    return _step_from_slopes(Q.knots, (-s for s in Q.slopes()))


def quantile_from_reflected(V: PiecewiseLinearFn, tol: float = DEFAULT_TOL) -> StepQuantile:
    """Recover ``q`` from a convex ``Qbar`` with ``Qbar(1) = 0``.

    ``Qbar(u) = int_0^{1-u} q``, so on the piece ``(a, b)`` the slope of
    ``Qbar`` is ``-q`` on ``(1-b, 1-a)``.
    """
    if abs(float(V.knot_values[-1])) > tol:
        raise DistributionError("reflected integrated quantile must vanish at 1")
    if not V.is_convex(tol):
        raise DistributionError("reflected integrated quantile must be convex")
    knots = [ONE - k for k in reversed(V.knots)]
    return _step_from_slopes(knots, (-s for s in reversed(V.slopes())))
