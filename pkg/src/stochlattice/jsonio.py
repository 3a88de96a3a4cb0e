"""JSON wire formats for distributions, curves, specs, verdicts and reports."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .quantile import DEFAULT_TOL, DistributionError, StepQuantile, build_distribution


def distribution_to_json(q: StepQuantile) -> dict:
    return {"kind": "quantile", "breakpoints": list(q.breakpoints), "values": list(q.values)}


def distribution_from_json(obj: Any, tol: float = DEFAULT_TOL) -> StepQuantile:
    """Ingest either the ``samples`` or the ``quantile`` form."""
    if not isinstance(obj, dict):
        raise DistributionError("distribution must be a JSON object")
    kind = obj.get("kind")
    try:
        if kind == "samples":
            return build_distribution(_reals(obj["values"]), _reals(obj["weights"]) if "weights" in obj else None, tol)
        if kind == "quantile":
            return StepQuantile(tuple(_reals(obj["breakpoints"])), tuple(_reals(obj["values"])))
    except KeyError as exc:
        raise DistributionError(f"distribution is missing field {exc}") from None
    raise DistributionError(f"unknown distribution kind {kind!r}")


def _reals(xs: Any) -> list[float]:
    if not isinstance(xs, list) or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in xs):
        raise DistributionError("expected a list of numbers")
    return [float(x) for x in xs]


def load_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_distribution(path: str | Path, tol: float = DEFAULT_TOL) -> StepQuantile:
    return distribution_from_json(load_json(path), tol)


def encode_inf(obj: Any) -> Any:
    """Replace infinities by the strings ``"inf"`` / ``"-inf"``."""
    if isinstance(obj, float) and math.isinf(obj):
        return "inf" if obj > 0 else "-inf"
    if isinstance(obj, dict):
        return {k: encode_inf(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode_inf(v) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    """Compact, deterministic JSON with infinities spelled as strings."""
    return json.dumps(encode_inf(obj), separators=(",", ":"), allow_nan=False)
