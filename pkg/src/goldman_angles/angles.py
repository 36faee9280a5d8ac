"""Intersection angles at the crossings of two closed geodesics.

theta is measured between the forward directions of x and y; phi turns the
line of y anticlockwise onto the line of x. Both are recomputed from lengths
alone through the hyperbolic cosine rule as a cross-check.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

from .config import tolerances
from .goldman import IntersectionRecord, geodesic_pair, goldman_bracket
from .group import ConjClass
from .hypgeom import ANTICLOCKWISE, POSITIVE, angle_between, cosine_rule_angle
from .surface import SurfaceRep, class_length


def theta(rep: SurfaceRep, x: str, y: str, record: IntersectionRecord) -> float:
    pair = geodesic_pair(rep, x, y)
    return angle_between(pair.x_axis, record.conjugate_axis, record.point, POSITIVE)


def phi(rep: SurfaceRep, x: str, y: str, record: IntersectionRecord) -> float:
    pair = geodesic_pair(rep, x, y)
    return angle_between(pair.x_axis, record.conjugate_axis, record.point, ANTICLOCKWISE)


def angle_from_lengths(rep: SurfaceRep, x: str, y: str, record: IntersectionRecord) -> float:
    """theta from tau_x / 2, tau_y / 2 and half the length of the term.

    The triangle P, Q, R (Q ahead on the axis of x, R behind on the axis of
    y^g) has angle pi - theta at P, and QR is half the term's axis.
    """
    pair = geodesic_pair(rep, x, y)
    half_term = class_length(rep, record.term_word) / 2.0
    return math.pi - cosine_rule_angle(pair.tau_x / 2.0, pair.tau_y / 2.0, half_term)


def case_relation_residual(sign: int, th: float, ph: float) -> float:
    """|theta + phi - pi| for positive crossings, |theta - phi| for negative ones."""
    return abs(th + ph - math.pi) if sign > 0 else abs(th - ph)


@dataclass(frozen=True)
class RecordAngles:
    record: IntersectionRecord
    theta: float
    phi: float
    theta_from_lengths: float

    @property
    def case_residual(self) -> float:
        return case_relation_residual(self.record.sign, self.theta, self.phi)

    @property
    def coherence_residual(self) -> float:
        return abs(self.theta - self.theta_from_lengths)


@dataclass
class AngleReport:
    metric_id: str
    rows: list[RecordAngles]
    groups: dict[ConjClass, float] = field(default_factory=dict)
    tol: float = 1e-8

    @property
    def max_deviation(self) -> float:
        return max(self.groups.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return all(dev <= self.tol for dev in self.groups.values())

    def case_relations_hold(self, tol: float | None = None) -> bool:
        tol = tolerances().length if tol is None else tol
        return all(r.case_residual <= tol for r in self.rows)


def record_angles(rep: SurfaceRep, x: str, y: str, records) -> list[RecordAngles]:
    return [
        RecordAngles(r, theta(rep, x, y, r), phi(rep, x, y, r), angle_from_lengths(rep, x, y, r))
        for r in records
    ]


def angle_report(rep: SurfaceRep, x: str, y: str, metric_id: str = "0",
                 tol: float | None = None, records=None) -> AngleReport:
    tol = tolerances().angle if tol is None else tol
    if records is None:
        records = goldman_bracket(rep, x, y).records
    rows = record_angles(rep, x, y, records)
    by_class: dict[ConjClass, list[float]] = {}
    for row in rows:
        by_class.setdefault(row.record.term_class, []).append(row.theta)
    groups = {k: max(v) - min(v) for k, v in by_class.items()}
    return AngleReport(metric_id, rows, groups, tol)


def equal_term_report(reps, x: str, y: str, tol: float | None = None, metric_ids=None) -> list[AngleReport]:
    """Per metric, the largest theta spread inside each group of equal term classes."""
    reps = list(reps)
    if not reps:
        raise ValueError("need at least one metric")
    ids = metric_ids or [str(i) for i in range(len(reps))]
    return [angle_report(rep, x, y, mid, tol) for rep, mid in zip(reps, ids)]


def contrapositive_probe(reports, threshold: float = 1e-6) -> list[tuple[str, ConjClass, float]]:
    """Equal-class groups whose theta spread exceeds ``threshold`` (expected: none)."""
    return [
        (rep.metric_id, cls, dev)
        for rep in reports
        for cls, dev in rep.groups.items()
        if dev > threshold
    ]


CSV_COLUMNS = ["metric_id", "param", "sign", "term_class", "theta", "phi", "theta_from_lengths"]


def write_csv(reports, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rep in reports:
        for row in rep.rows:
            r = row.record
            w.writerow([
                rep.metric_id, repr(r.param), r.sign, str(r.term_class),
                repr(row.theta), repr(row.phi), repr(row.theta_from_lengths),
            ])
