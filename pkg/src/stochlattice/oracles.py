"""Slow brute-force references for tests and the ``verify`` command.

Nothing here reuses the merged-breakpoint machinery of the production
modules.  Quantiles are read off the distribution function by a masked
minimum, integrals are Riemann sums on a lattice, envelopes come from chords
and total variation from a search over partitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .orders import Relation
from .quantile import DEFAULT_TOL, StepQuantile


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid ``k / (points - 1)`` on ``[0, 1]`` and an offset for one-sided limits."""

    points: int = 401
    epsilon: float = 1e-7

    def __post_init__(self) -> None:
        if self.points < 3:
            raise ValueError("grid needs at least 3 points")
        if not 0.0 < self.epsilon < 1.0 / (self.points - 1):
            raise ValueError("epsilon must be positive and below the grid spacing")

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.points) / (self.points - 1)


def _support(q: StepQuantile) -> tuple[np.ndarray, np.ndarray]:
    """Atoms and the distribution function at each atom."""
    return np.asarray(q.values, dtype=float), np.asarray(q.breakpoints, dtype=float)


def grid_q(q: StepQuantile, us) -> np.ndarray:
    """``q(u) = min{x : u <= F(x)}`` by masking the atoms."""
    x, f = _support(q)
    us = np.atleast_1d(np.asarray(us, dtype=float))
    mask = us[:, None] <= f[None, :]
    mask[:, -1] = True  # q(1) := q(1-)
    return np.where(mask, x[None, :], np.inf).min(axis=1)


def grid_q_plus(q: StepQuantile, us) -> np.ndarray:
    """``q+(u) = min{x : u < F(x)}``, with ``q+(1) := q(1-)``."""
    x, f = _support(q)
    us = np.atleast_1d(np.asarray(us, dtype=float))
    mask = us[:, None] < f[None, :]
    mask[:, -1] = True
    return np.where(mask, x[None, :], np.inf).min(axis=1)


def grid_cdf(q: StepQuantile, xs) -> np.ndarray:
    x, f = _support(q)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    return np.where(x[None, :] <= xs[:, None], f[None, :], 0.0).max(axis=1)


def riemann_Q(q: StepQuantile, cells: int) -> np.ndarray:
    """``Q(k / cells) = int_{k/cells}^1 q`` by midpoint sums, ``k = 0..cells``."""
    mids = (np.arange(cells) + 0.5) / cells
    tail = np.cumsum(grid_q(q, mids)[::-1])[::-1] / cells
    return np.concatenate((tail, [0.0]))


def riemann_Qbar(q: StepQuantile, cells: int) -> np.ndarray:
    """``Qbar(k / cells) = int_0^{1 - k/cells} q`` by midpoint sums."""
    mids = (np.arange(cells) + 0.5) / cells
    head = np.concatenate(([0.0], np.cumsum(grid_q(q, mids)) / cells))
    return head[::-1]


def disp_increment_form(a: StepQuantile, b: StepQuantile, lattice: int, tol: float = DEFAULT_TOL) -> bool:
    """``q_a(v) - q_a(u) <= q_b(v) - q_b(u)`` for all grid pairs ``u <= v``.

    The grid holds lattice points and cell midpoints, so every window of
    breakpoints lying on the lattice is realised by some pair.
    """
    pts = np.union1d(np.arange(1, lattice) / lattice, (np.arange(lattice) + 0.5) / lattice)
    qa, qb = grid_q(a, pts), grid_q(b, pts)
    da = qa[None, :] - qa[:, None]
    db = qb[None, :] - qb[:, None]
    upper = np.triu(np.ones((len(pts), len(pts)), dtype=bool))
    return bool(np.all((da <= db + tol) | ~upper))


def disp_qplus_form(a: StepQuantile, b: StepQuantile, lattice: int, tol: float = DEFAULT_TOL) -> bool:
    """``q_a(v) - q+_a(u) <= q_b(v) - q+_b(u)`` for all grid pairs ``u < v``."""
    pts = np.union1d(np.arange(1, lattice) / lattice, (np.arange(lattice) + 0.5) / lattice)
    da = grid_q(a, pts)[None, :] - grid_q_plus(a, pts)[:, None]
    db = grid_q(b, pts)[None, :] - grid_q_plus(b, pts)[:, None]
    strict = np.triu(np.ones((len(pts), len(pts)), dtype=bool), k=1)
    return bool(np.all((da <= db + tol) | ~strict))


def grid_order_oracle(
    rel: Relation | str,
    a: StepQuantile,
    b: StepQuantile,
    lattice: int = 1000,
    refine: int = 10,
    tol: float = DEFAULT_TOL,
) -> bool:
    """Check the defining inequality of ``rel`` on a grid of ``lattice * refine`` cells.

    Exact when all breakpoints lie on ``1 / lattice``.  The dispersive case
    uses both characterisations and requires them to agree.
    """
    rel = Relation.parse(rel)
    cells = lattice * refine
    if rel is Relation.ST:
        mids = (np.arange(cells) + 0.5) / cells
        return bool(np.all(grid_q(a, mids) <= grid_q(b, mids) + tol))
    if rel in (Relation.ICX, Relation.CX):
        qa, qb = riemann_Q(a, cells), riemann_Q(b, cells)
        ok = bool(np.all(qa <= qb + tol))
        return ok and (rel is Relation.ICX or abs(qa[0] - qb[0]) <= tol)
    if rel is Relation.ICV:
        return bool(np.all(riemann_Qbar(a, cells) <= riemann_Qbar(b, cells) + tol))
    inc = disp_increment_form(a, b, lattice, tol)
    plus = disp_qplus_form(a, b, lattice, tol)
    if inc != plus:
        raise AssertionError("dispersive characterisations disagree on the grid")
    return inc


def envelope_oracle(fns: Sequence, grid: GridSpec = GridSpec()) -> np.ndarray:
    """Least concave majorant of ``max_k f_k`` sampled on ``grid`` by chords.

    At node ``u`` this is the largest ``lam * m(a) + (1 - lam) * m(b)`` over
    grid pairs ``a <= u <= b`` with ``lam * a + (1 - lam) * b = u``.
    """
    if not fns:
        raise ValueError("need at least one function")
    x = grid.nodes
    m = np.max([[f(float(u)) for u in x] for f in fns], axis=0)
    out = m.copy()
    for k, u in enumerate(x):
        a, b = x[: k + 1, None], x[None, k:]
        ma, mb = m[: k + 1, None], m[None, k:]
        width = b - a
        with np.errstate(divide="ignore", invalid="ignore"):
            lam = np.where(width > 0, (b - u) / width, 1.0)
        out[k] = max(out[k], float(np.max(lam * ma + (1 - lam) * mb)))
    return out


def _q_bounded(q: StepQuantile, t: float) -> float:
    # q(0) := q(0+) and q(1) := q(1-)
    return float(grid_q(q, [max(t, 1e-300)])[0])


def _q_plus_bounded(q: StepQuantile, t: float) -> float:
    return float(grid_q_plus(q, [min(t, 1.0)])[0])


def tv_partition_oracle(
    members: Sequence[StepQuantile],
    u: float,
    v: float,
    max_points: int = 12,
    lower: bool = False,
) -> float:
    """``TV_[u,v]`` as the best partition sum over breakpoints and midpoints.

    The search runs over every chain ``u = t_0 < ... < t_n = v`` drawn from
    the candidate set (the maximum over all subsets, found by dynamic
    programming over the last point).  ``lower=True`` uses ``q(t_i) - q+(t_{i-1})``.
    """
    if not (0.0 <= u < v <= 1.0):
        raise ValueError("need 0 <= u < v <= 1")
    inner = sorted({b for q in members for b in q.breakpoints[:-1] if u < b < v})
    if len(inner) > max_points:
        raise ValueError(f"merged grid has {len(inner)} points, more than {max_points}")
    nodes = [u] + inner + [v]
    cand = sorted(set(nodes) | {(x + y) / 2 for x, y in zip(nodes, nodes[1:])})
    start = _q_plus_bounded if lower else _q_bounded

    def step(s: float, t: float) -> float:
        return max(_q_bounded(q, t) - start(q, s) for q in members)

    best = [0.0] * len(cand)
    for i in range(1, len(cand)):
        best[i] = max(best[j] + step(cand[j], cand[i]) for j in range(i))
    return best[-1]
