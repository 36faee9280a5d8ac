"""Numerical tolerance bundle shared by every module."""

from __future__ import annotations

import contextlib
import dataclasses
import json
import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    algebraic: float = 1e-12       # determinant / trace identities
    length: float = 1e-9           # lengths, distances, on-geodesic checks
    angle: float = 1e-8            # equal-angle comparisons
    classify: float = 1e-10        # |trace| vs 2
    boundary: float = 1e-12        # projective separation of ideal points
    min_height: float = 1e-14      # smallest admissible imaginary part
    param_merge: float = 1e-9      # same crossing along the x axis
    triple_point: float = 1e-7     # distinct crossings closer than this are rejected
    tangent: float = 1e-12         # |det| of unit tangents at a crossing
    monotone: float = 1e-10        # per-step strict decrease floor
    renorm_every: int = 16         # unused: word products are exact, rounded once


_current = Tolerances()


def tolerances() -> Tolerances:
    return _current


def set_tolerances(tol: Tolerances) -> None:
    global _current
    _current = tol


@contextlib.contextmanager
def use_tolerances(**overrides):
    """Temporarily replace fields of the active tolerance bundle."""
    global _current
    saved = _current
    _current = dataclasses.replace(saved, **overrides)
    try:
        yield _current
    finally:
        _current = saved


def from_env(var: str = "GOLDMAN_TOL") -> Tolerances:
    """Read overrides from a JSON object such as ``{"angle": 1e-7}``.

    A bare number is accepted as shorthand for ``{"angle": value}``.
    Unknown keys raise ``ValueError``.
    """
    raw = os.environ.get(var)
    if not raw:
        return Tolerances()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{var} is not valid JSON: {raw!r}") from exc
    if isinstance(data, (int, float)):
        data = {"angle": float(data)}
    if not isinstance(data, dict):
        raise ValueError(f"{var} must be a JSON object or number")
    known = {f.name for f in dataclasses.fields(Tolerances)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown tolerance keys in {var}: {sorted(unknown)}")
    return dataclasses.replace(Tolerances(), **data)
