"""Seeded random laws, families and penalty curves for property checks.

All randomness flows from ``numpy.random.SeedSequence`` so a master seed
splits into independent per-trial streams regardless of evaluation order.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .penalty import LINEAR, STEP, PenaltyCurve, PenaltyFamily
from .quantile import StepQuantile, build_distribution

VALUE_RANGE = 5.0


def trial_rngs(seed, trials: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(trials)]


def lattice_weights(rng: np.random.Generator, k: int, lattice: int) -> list[Fraction]:
    """Uniform draw of ``k`` positive weights on the grid ``1/lattice``."""
    k = min(k, lattice)
    cuts = np.sort(rng.choice(np.arange(1, lattice), size=k - 1, replace=False))
    parts = np.diff(np.concatenate(([0], cuts, [lattice])))
    return [Fraction(int(p), lattice) for p in parts]


def random_quantile(
    rng: np.random.Generator,
    max_support: int = 8,
    lattice: int = 1000,
    min_support: int = 2,
) -> StepQuantile:
    """Law with 2..max_support atoms, values on a 1e-3 grid in [-5, 5]."""
    k = int(rng.integers(min_support, max_support + 1))
    values = np.round(rng.uniform(-VALUE_RANGE, VALUE_RANGE, size=k), 3)
    return build_distribution([float(v) for v in values], lattice_weights(rng, k, lattice))


def random_family(rng: np.random.Generator, size: int, **kw) -> list[StepQuantile]:
    return [random_quantile(rng, **kw) for _ in range(size)]


def random_interior_grid(rng: np.random.Generator, k: int, lattice: int = 1000) -> list[float]:
    pts = rng.choice(np.arange(1, lattice), size=min(k, lattice - 1), replace=False)
    return sorted(float(Fraction(int(p), lattice)) for p in pts)


def _rounded(rng: np.random.Generator, lo: float, hi: float, size=None):
    return np.round(rng.uniform(lo, hi, size=size), 3)


def random_step_curve(rng: np.random.Generator, max_breaks: int = 4, p_neg_inf: float = 0.0, lattice: int = 1000):
    """Arbitrary step-left curve; each piece is ``-inf`` with probability ``p_neg_inf``."""
    grid = random_interior_grid(rng, int(rng.integers(0, max_breaks + 1)), lattice)
    vals = [float(v) for v in _rounded(rng, -VALUE_RANGE, VALUE_RANGE, len(grid) + 1)]
    vals = [-np.inf if rng.random() < p_neg_inf else v for v in vals]
    return PenaltyCurve(STEP, tuple(grid), tuple(vals))


def random_linear_curve(rng: np.random.Generator, max_breaks: int = 4, concave: bool = False, lattice: int = 1000):
    """Piecewise-linear curve on a lattice grid; concave slopes when asked."""
    inner = random_interior_grid(rng, int(rng.integers(0, max_breaks + 1)), lattice)
    knots = [Fraction(0)] + [Fraction(g).limit_denominator(lattice) for g in inner] + [Fraction(1)]
    if not concave:
        vals = [float(v) for v in _rounded(rng, -VALUE_RANGE, VALUE_RANGE, len(knots))]
        return PenaltyCurve(LINEAR, tuple(float(k) for k in knots), tuple(vals))
    slopes = sorted((Fraction(float(s)).limit_denominator(1000) for s in _rounded(rng, -10, 10, len(knots) - 1)), reverse=True)
    level = Fraction(float(_rounded(rng, -VALUE_RANGE, VALUE_RANGE))).limit_denominator(1000)
    vals = [level]
    for a, b, s in zip(knots, knots[1:], slopes):
        vals.append(vals[-1] + s * (b - a))
    return PenaltyCurve(LINEAR, tuple(float(k) for k in knots), tuple(float(v) for v in vals))


def random_penalty_family(rng: np.random.Generator, base, max_levels: int = 4):
    """Levels ``s_1 < ... < s_m`` with curves ``base + c_j`` for increasing offsets ``c_j >= 0``."""
    m = int(rng.integers(1, max_levels + 1))
    levels = sorted({float(s) for s in _rounded(rng, -VALUE_RANGE, VALUE_RANGE, m)})
    offsets = np.cumsum(np.concatenate(([0.0], _rounded(rng, 0.0, 3.0, len(levels) - 1))))
    curves = tuple(
        PenaltyCurve(base.kind, base.grid, tuple(v + float(c) for v in base.values)) for c in offsets
    )
    return PenaltyFamily(tuple(levels), curves)
