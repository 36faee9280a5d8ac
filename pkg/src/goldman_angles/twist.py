"""Twist sweeps along the distinguished simple curve.

Records are matched across twist times by their conjugator word: on X_s the
crossing carried by g is the one between the axis of x and the axis of
rho_s(g y g^-1). The axis of x itself never moves under the twist.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass

import numpy as np

from .angles import phi as phi_at, theta as theta_at
from .config import tolerances
from .errors import InvalidInput, TrackingLost
from .goldman import geodesic_pair, goldman_bracket, track_record
from .hypgeom import BoundaryPoint, frame
from .surface import SurfaceRep, class_length, twist_rep

DEFAULT_GRID = (-2.0, 2.0, 0.05)
CSV_COLUMNS = ["s", "record_id", "phi", "theta", "term_length", "sign"]


def parse_grid(text: str) -> np.ndarray:
    """``a:b:step`` to the grid a, a + step, ..., b."""
    try:
        a, b, step = (float(t) for t in text.split(":"))
    except ValueError as exc:
        raise InvalidInput(f"grid must look like a:b:step, got {text!r}") from exc
    return make_grid(a, b, step)


def make_grid(a: float, b: float, step: float) -> np.ndarray:
    if not (step > 0 and math.isfinite(a) and math.isfinite(b)):
        raise InvalidInput(f"bad grid {a}:{b}:{step}")
    n = round((b - a) / step)
    if n < 2 or abs(a + n * step - b) > 1e-9 * max(1.0, abs(b)):
        raise InvalidInput(f"grid {a}:{b}:{step} needs at least 3 points and a whole number of steps")
    return np.linspace(a, b, n + 1)


@dataclass
class TwistSweep:
    rep: SurfaceRep
    x: str
    y: str
    grid: np.ndarray
    record_ids: list[str]
    signs: np.ndarray        # (records, s)
    phi: np.ndarray          # (records, s)
    theta: np.ndarray
    term_length: np.ndarray
    x_length: np.ndarray     # (s,)
    y_length: np.ndarray

    def __post_init__(self):
        if len(self.grid) and np.any(np.diff(self.grid) <= 0):
            raise InvalidInput("twist grid must be strictly increasing")

    def reversed(self) -> "TwistSweep":
        """The same data with s relabelled as -s."""
        flip = lambda a: a[..., ::-1].copy()
        return TwistSweep(
            self.rep, self.x, self.y, -self.grid[::-1], list(self.record_ids), flip(self.signs),
            flip(self.phi), flip(self.theta), flip(self.term_length),
            flip(self.x_length), flip(self.y_length),
        )

    def rows(self):
        for j, s in enumerate(self.grid):
            for i, g in enumerate(self.record_ids):
                yield (float(s), g, float(self.phi[i, j]), float(self.theta[i, j]),
                       float(self.term_length[i, j]), int(self.signs[i, j]))


def sweep(rep: SurfaceRep, y: str, grid=None, records=None, split_triple: bool = False) -> TwistSweep:
    """Track every crossing of the distinguished curve with y over the twist grid."""
    x = rep.simple_word()
    grid = make_grid(*DEFAULT_GRID) if grid is None else np.asarray(grid, dtype=float)
    if records is None:
        records = goldman_bracket(rep, x, y, split_triple=split_triple).records
    ids = [r.conjugator for r in records]
    n, m = len(ids), len(grid)
    signs = np.zeros((n, m), dtype=int)
    ph, th, tl = np.zeros((n, m)), np.zeros((n, m)), np.zeros((n, m))
    xl, yl = np.zeros(m), np.zeros(m)
    for j, s in enumerate(grid):
        rep_s = twist_rep(rep, float(s))
        xl[j] = class_length(rep_s, x)
        yl[j] = class_length(rep_s, y)
        for i, g in enumerate(ids):
            rec = track_record(rep_s, x, y, g)
            if rec is None:
                raise TrackingLost(f"crossing carried by {g!r} vanished at s = {s!r}")
            signs[i, j] = rec.sign
            ph[i, j] = phi_at(rep_s, x, y, rec)
            th[i, j] = theta_at(rep_s, x, y, rec)
            tl[i, j] = class_length(rep_s, rec.term_word)
    return TwistSweep(rep, x, y, grid, ids, signs, ph, th, tl, xl, yl)


def strictly_decreasing(values, threshold: float | None = None) -> bool:
    threshold = tolerances().monotone if threshold is None else threshold
    d = np.diff(np.asarray(values, dtype=float))
    return len(d) > 0 and bool(np.all(d <= -threshold))


def monotonicity_check(sw: TwistSweep, threshold: float | None = None) -> dict[str, bool]:
    """Per record: does phi fall by at least ``threshold`` at every step?"""
    if len(sw.grid) < 3:
        raise InvalidInput("monotonicity needs at least 3 grid points")
    return {g: strictly_decreasing(sw.phi[i], threshold) for i, g in enumerate(sw.record_ids)}


def theta_direction_check(sw: TwistSweep, threshold: float | None = None) -> dict[str, bool]:
    """theta rises at positive crossings and falls at negative ones."""
    out = {}
    for i, g in enumerate(sw.record_ids):
        sign = sw.signs[i]
        if np.any(sign != sign[0]):
            out[g] = False
        elif sign[0] > 0:
            out[g] = strictly_decreasing(-sw.theta[i], threshold)
        else:
            out[g] = strictly_decreasing(sw.theta[i], threshold)
    return out


# --------------------------------------------------------------------------
# endpoint drift


def _visual_angle(p: BoundaryPoint, m) -> float:
    """Direction of a boundary point as seen from i after applying m."""
    q = m.apply_boundary(p)
    # phase of (z - i) / (z + i) for z = u / v, valid at infinity too
    return cmath.phase(complex(q.u, -q.v) ** 2)


def _wrap(d: float) -> float:
    return (d + math.pi) % (2 * math.pi) - math.pi


@dataclass(frozen=True)
class Drift:
    s1: float
    s2: float
    start: float   # signed visual angle moved by the repelling endpoint
    end: float

    @property
    def direction(self) -> int:
        """+1 if both endpoints turn anticlockwise, -1 clockwise, 0 otherwise."""
        tol = tolerances().monotone
        if self.start > tol and self.end > tol:
            return 1
        if self.start < -tol and self.end < -tol:
            return -1
        return 0


@dataclass(frozen=True)
class DriftVerdict:
    drifts: tuple[Drift, ...]

    @property
    def direction(self) -> int:
        dirs = {d.direction for d in self.drifts}
        return dirs.pop() if len(dirs) == 1 else 0

    @property
    def passed(self) -> bool:
        return bool(self.drifts) and self.direction != 0


def _normalized_ends(rep: SurfaceRep, x: str, y: str, g: str, s: float):
    rep_s = twist_rep(rep, s)
    rec = track_record(rep_s, x, y, g)
    if rec is None:
        raise TrackingLost(f"crossing carried by {g!r} vanished at s = {s!r}")
    # axis of x to 0 -> inf with the crossing at i: "viewed from P"
    m = frame(geodesic_pair(rep_s, x, y).x_axis, rec.point)
    ax = rec.conjugate_axis
    return _visual_angle(ax.start, m), _visual_angle(ax.end, m)


def endpoint_drift(rep: SurfaceRep, y: str, g: str, s_pairs) -> DriftVerdict:
    """How the endpoints of the twisted conjugate axis by g move, seen from its crossing with x."""
    x = rep.simple_word()
    drifts = []
    for s1, s2 in s_pairs:
        if s1 > s2:
            raise InvalidInput(f"drift pair must satisfy s1 <= s2, got {(s1, s2)}")
        a1, b1 = _normalized_ends(rep, x, y, g, float(s1))
        a2, b2 = _normalized_ends(rep, x, y, g, float(s2))
        drifts.append(Drift(float(s1), float(s2), _wrap(a2 - a1), _wrap(b2 - b1)))
    return DriftVerdict(tuple(drifts))


def spanning_pairs(grid) -> list[tuple[float, float]]:
    """Consecutive pairs plus first/last and a few long jumps across the grid."""
    g = [float(v) for v in grid]
    pairs = list(zip(g, g[1:]))
    n = len(g)
    for k in (n // 4, n // 2, n - 1):
        if 0 < k < n:
            pairs.append((g[0], g[k]))
    return pairs


# --------------------------------------------------------------------------
# length derivative cross-check


@dataclass(frozen=True)
class CrosscheckRow:
    s: float
    derivative: float
    cosine_sum: float

    @property
    def residual(self) -> float:
        return abs(self.derivative - self.cosine_sum)


def wolpert_crosscheck(sw: TwistSweep) -> list[CrosscheckRow]:
    """Central differences of the length of y against the sum of cos(phi) over the crossings."""
    s = sw.grid
    if len(s) < 3:
        raise InvalidInput("crosscheck needs at least 3 grid points")
    h = np.diff(s)
    if np.ptp(h) > 1e-9 * max(1.0, float(np.abs(h).max())):
        raise InvalidInput("crosscheck needs a uniform grid")
    cos_sum = np.cos(sw.phi).sum(axis=0)
    rows = []
    for j in range(1, len(s) - 1):
        d = (sw.y_length[j + 1] - sw.y_length[j - 1]) / (s[j + 1] - s[j - 1])
        rows.append(CrosscheckRow(float(s[j]), float(d), float(cos_sum[j])))
    return rows


def write_csv(sw: TwistSweep, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for s, g, ph, th, tl, sign in sw.rows():
        w.writerow([repr(s), g, repr(ph), repr(th), repr(tl), sign])
