"""Upper half-plane geometry: Moebius maps, geodesics, distances and angles.

Ideal points are stored projectively so that geodesics ending at infinity
need no special casing. Every object here is immutable.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .config import tolerances
from .errors import (
    AmbiguousClass,
    AxesDisjoint,
    CoincidentGeodesics,
    CoincidentPoints,
    DegeneratePoint,
    NotATriangle,
    NotHyperbolic,
    PointNotOnGeodesic,
)


def _split(x: float) -> tuple[float, float]:
    t = 134217729.0 * x  # 2**27 + 1
    hi = t - (t - x)
    return hi, x - hi


def _two_product(x: float, y: float) -> tuple[float, float]:
    p = x * y
    xh, xl = _split(x)
    yh, yl = _split(y)
    err = ((xh * yh - p) + xh * yl + xl * yh) + xl * yl
    return p, err


def det2(a: float, b: float, c: float, d: float) -> float:
    """ad - bc without cancellation: error-free products, exact summation."""
    p, e = _two_product(a, d)
    q, f = _two_product(b, c)
    return math.fsum((p, e, -q, -f))


class IsometryClass(enum.Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True, eq=False)
class MoebiusMap:
    """z -> (az + b) / (cz + d) with ad - bc = 1, identified with its negative."""

    a: float
    b: float
    c: float
    d: float

    @classmethod
    def from_matrix(cls, m) -> "MoebiusMap":
        (a, b), (c, d) = m
        return cls(float(a), float(b), float(c), float(d))

    @classmethod
    def normalized(cls, a, b, c, d) -> "MoebiusMap":
        det = det2(a, b, c, d)
        if det <= 0:
            raise ValueError(f"matrix must have positive determinant, got {det}")
        s = 1.0 / math.sqrt(det)
        return cls(a * s, b * s, c * s, d * s)

    @property
    def det(self) -> float:
        return det2(self.a, self.b, self.c, self.d)

    @property
    def trace(self) -> float:
        return self.a + self.d

    def matrix(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return ((self.a, self.b), (self.c, self.d))

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def renormalized(self) -> "MoebiusMap":
        det = self.det
        if det == 1.0:
            return self
        return MoebiusMap.normalized(self.a, self.b, self.c, self.d)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return compose(self, other)

    def __call__(self, p: "HPoint") -> "HPoint":
        return HPoint.from_complex(self.apply_complex(p.z))

    def apply_complex(self, z: complex) -> complex:
        return (self.a * z + self.b) / (self.c * z + self.d)

    def apply_boundary(self, e: "BoundaryPoint") -> "BoundaryPoint":
        return BoundaryPoint(self.a * e.u + self.b * e.v, self.c * e.u + self.d * e.v)

    def _canonical(self) -> tuple[float, float, float, float]:
        for entry in (self.a, self.b, self.c, self.d):
            if entry != 0.0:
                s = 1.0 if entry > 0 else -1.0
                return (s * self.a, s * self.b, s * self.c, s * self.d)
        return (0.0, 0.0, 0.0, 0.0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MoebiusMap):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self) -> int:
        return hash(self._canonical())

    def isclose(self, other: "MoebiusMap", tol: float = 1e-9) -> bool:
        """Entrywise comparison up to global sign."""
        mine = (self.a, self.b, self.c, self.d)
        theirs = (other.a, other.b, other.c, other.d)
        plus = max(abs(p - q) for p, q in zip(mine, theirs))
        minus = max(abs(p + q) for p, q in zip(mine, theirs))
        return min(plus, minus) <= tol


IDENTITY = MoebiusMap(1.0, 0.0, 0.0, 1.0)


def diag(lam: float) -> MoebiusMap:
    """z -> lam**2 z."""
    return MoebiusMap(lam, 0.0, 0.0, 1.0 / lam)


def compose(m: MoebiusMap, n: MoebiusMap) -> MoebiusMap:
    """Matrix product m n (apply n first), renormalized to unit determinant."""
    prod = MoebiusMap(
        m.a * n.a + m.b * n.c,
        m.a * n.b + m.b * n.d,
        m.c * n.a + m.d * n.c,
        m.c * n.b + m.d * n.d,
    )
    return prod.renormalized()


def classify(m: MoebiusMap) -> IsometryClass:
    tol = tolerances().classify
    t = abs(m.trace)
    if t > 2.0 + tol:
        return IsometryClass.HYPERBOLIC
    if t < 2.0 - tol:
        return IsometryClass.ELLIPTIC
    s = 1.0 if m.trace >= 0 else -1.0
    n = (m.a - s, m.b, m.c, m.d - s)
    size = max(abs(e) for e in n)
    if size <= tol:
        return IsometryClass.IDENTITY
    # (m - sI)^2 = (tr - 2s) m vanishes for a genuine parabolic; compare to |m - sI|^2
    n2 = (
        n[0] * n[0] + n[1] * n[2],
        n[0] * n[1] + n[1] * n[3],
        n[2] * n[0] + n[3] * n[2],
        n[2] * n[1] + n[3] * n[3],
    )
    if max(abs(e) for e in n2) > 1e-6 * size * size:
        raise AmbiguousClass(f"trace {m.trace!r} is within {tol} of 2 but the map is not unipotent")
    return IsometryClass.PARABOLIC


def _require_hyperbolic(m: MoebiusMap) -> None:
    if classify(m) is not IsometryClass.HYPERBOLIC:
        raise NotHyperbolic(f"map with trace {m.trace!r} is not hyperbolic")


def translation_length(m: MoebiusMap) -> float:
    _require_hyperbolic(m)
    return 2.0 * math.acosh(abs(m.trace) / 2.0)


# --------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class HPoint:
    x: float
    y: float

    def __post_init__(self):
        if not self.y > tolerances().min_height:
            raise DegeneratePoint(f"point ({self.x}, {self.y}) is not in the upper half-plane")

    @classmethod
    def from_complex(cls, z: complex) -> "HPoint":
        return cls(z.real, z.imag)

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class BoundaryPoint:
    """The ideal point u/v; scaled so the larger entry is exactly +1."""

    u: float
    v: float

    def __post_init__(self):
        u, v = float(self.u), float(self.v)
        big = u if abs(u) > abs(v) else v
        if big == 0.0 or not math.isfinite(big):
            raise ValueError(f"invalid projective pair ({self.u}, {self.v})")
        object.__setattr__(self, "u", u / big)
        object.__setattr__(self, "v", v / big)

    @classmethod
    def from_real(cls, t: float) -> "BoundaryPoint":
        if math.isinf(t):
            return cls(1.0, 0.0)
        return cls(t, 1.0)

    @property
    def is_infinite(self) -> bool:
        return self.v == 0.0

    @property
    def value(self) -> float:
        return math.inf if self.v == 0.0 else self.u / self.v

    def separation(self, other: "BoundaryPoint") -> float:
        """Sine of the angle between the two projective lines."""
        n1 = math.hypot(self.u, self.v)
        n2 = math.hypot(other.u, other.v)
        return abs(self.u * other.v - self.v * other.u) / (n1 * n2)


INFINITY = BoundaryPoint(1.0, 0.0)
ZERO = BoundaryPoint(0.0, 1.0)


@dataclass(frozen=True)
class Geodesic:
    """Oriented complete geodesic from ``start`` to ``end``."""

    start: BoundaryPoint
    end: BoundaryPoint

    def __post_init__(self):
        if self.start.separation(self.end) <= tolerances().boundary:
            raise CoincidentPoints("geodesic endpoints coincide")

    @classmethod
    def from_reals(cls, s: float, e: float) -> "Geodesic":
        return cls(BoundaryPoint.from_real(s), BoundaryPoint.from_real(e))

    def reversed(self) -> "Geodesic":
        return Geodesic(self.end, self.start)

    def image(self, m: MoebiusMap) -> "Geodesic":
        return Geodesic(m.apply_boundary(self.start), m.apply_boundary(self.end))

    def same_endpoints(self, other: "Geodesic", tol: float | None = None) -> bool:
        """Equal as unoriented geodesics."""
        tol = tolerances().boundary if tol is None else tol
        s, e = self.start, self.end
        return (s.separation(other.start) <= tol and e.separation(other.end) <= tol) or (
            s.separation(other.end) <= tol and e.separation(other.start) <= tol
        )

    def isclose(self, other: "Geodesic", tol: float = 1e-9) -> bool:
        return (
            self.start.separation(other.start) <= tol and self.end.separation(other.end) <= tol
        )

    def euclidean(self) -> tuple[float, float] | tuple[float, None]:
        """(center, radius) of the semicircle, or (foot, None) for a vertical line."""
        s, e = self.start, self.end
        if s.is_infinite:
            return e.value, None
        if e.is_infinite:
            return s.value, None
        p, q = s.value, e.value
        return (p + q) / 2.0, abs(q - p) / 2.0


def _frame_entries(g: Geodesic) -> tuple[float, float, float, float]:
    # z -> (v1 z - u1) / (v2 z - u2) sends start to 0 and end to infinity
    s, e = g.start, g.end
    a, b, c, d = s.v, -s.u, e.v, -e.u
    det = a * d - b * c
    if det < 0:
        a, b = -a, -b
        det = -det
    k = 1.0 / math.sqrt(det)
    return a * k, b * k, c * k, d * k


def frame(g: Geodesic, anchor: HPoint | None = None) -> MoebiusMap:
    """Isometry taking g to the imaginary axis (0 -> inf) and the foot of ``anchor`` to i.

    Without an anchor the foot of the perpendicular from i is used, which makes
    the normalization canonical for a given geodesic.
    """
    f = MoebiusMap(*_frame_entries(g))
    w = f.apply_complex(1j if anchor is None else anchor.z)
    lam = math.sqrt(abs(w))
    return compose(diag(1.0 / lam), f)


def coordinate(g: Geodesic, p: HPoint, anchor: HPoint | None = None) -> float:
    """Signed arclength along g from the anchor's foot to the foot of p."""
    w = frame(g, anchor).apply_complex(p.z)
    return math.log(abs(w))


def dist(p: HPoint, q: HPoint) -> float:
    chord = math.hypot(p.x - q.x, p.y - q.y)
    return 2.0 * math.asinh(chord / (2.0 * math.sqrt(p.y * q.y)))


def dist_to_geodesic(p: HPoint, g: Geodesic) -> float:
    w = MoebiusMap(*_frame_entries(g)).apply_complex(p.z)
    return math.asinh(abs(w.real) / abs(w.imag))


def _check_on(g: Geodesic, p: HPoint) -> None:
    d = dist_to_geodesic(p, g)
    if d > tolerances().length:
        raise PointNotOnGeodesic(f"point {p} lies {d:.3e} off the geodesic")


def geodesic_through(p: HPoint, q: HPoint) -> Geodesic:
    """Geodesic through p and q, oriented from p to q."""
    if dist(p, q) <= tolerances().algebraic:
        raise CoincidentPoints(f"{p} and {q} coincide")
    # the carrier is alpha |z|^2 - 2 beta x + gamma = 0; solve for (alpha, beta, gamma)
    r1 = (p.x * p.x + p.y * p.y, -2.0 * p.x, 1.0)
    r2 = (q.x * q.x + q.y * q.y, -2.0 * q.x, 1.0)
    alpha = r1[1] * r2[2] - r1[2] * r2[1]
    beta = r1[2] * r2[0] - r1[0] * r2[2]
    gamma = r1[0] * r2[1] - r1[1] * r2[0]
    # endpoints are roots of alpha t^2 - 2 beta t + gamma = 0, written projectively
    disc = math.sqrt(max(beta * beta - alpha * gamma, 0.0))
    sgn = 1.0 if beta >= 0 else -1.0
    big = beta + sgn * disc
    e1 = BoundaryPoint(big, alpha)
    e2 = BoundaryPoint(gamma, big)
    g = Geodesic(e1, e2)
    if coordinate(g, q, anchor=p) < 0:
        g = g.reversed()
    return g


def intersect(g1: Geodesic, g2: Geodesic) -> HPoint | None:
    """Transverse intersection point, or None when the geodesics do not cross."""
    if g1.same_endpoints(g2):
        raise CoincidentGeodesics("geodesics have the same endpoints")
    f = frame(g1)
    p = f.apply_boundary(g2.start)
    q = f.apply_boundary(g2.end)
    tol = tolerances().boundary
    for e in (p, q):
        if e.separation(ZERO) <= tol or e.separation(INFINITY) <= tol:
            return None
    if p.u * p.v * q.u * q.v >= 0:
        return None
    h = math.sqrt(-(p.u * q.u) / (p.v * q.v))
    return f.inverse()(HPoint(0.0, h))


def tangent(g: Geodesic, p: HPoint) -> tuple[float, float]:
    """Unit forward tangent of g at p (p assumed on g)."""
    (u1, v1), (u2, v2) = (g.start.u, g.start.v), (g.end.u, g.end.v)
    z = p.z
    t = (v1 * z - u1) * (v2 * z - u2) / (u1 * v2 - u2 * v1)
    n = abs(t)
    return (t.real / n, t.imag / n)


POSITIVE = "positive-directions"
ANTICLOCKWISE = "anticlockwise"


def angle_between(g1: Geodesic, g2: Geodesic, p: HPoint, mode: str = POSITIVE) -> float:
    """Angle at p between g1 and g2.

    ``positive-directions``: angle in (0, pi) between the forward tangents.
    ``anticlockwise``: angle in [0, pi) turning g2's tangent line anticlockwise onto g1's.
    """
    _check_on(g1, p)
    _check_on(g2, p)
    t1 = tangent(g1, p)
    t2 = tangent(g2, p)
    cross = t1[0] * t2[1] - t1[1] * t2[0]
    dot = t1[0] * t2[0] + t1[1] * t2[1]
    if mode in (POSITIVE, "positive"):
        if g1.same_endpoints(g2):
            raise CoincidentGeodesics("angle between coincident geodesics")
        return math.atan2(abs(cross), dot)
    if mode == ANTICLOCKWISE:
        phi = math.atan2(-cross, dot) % math.pi
        if math.pi - phi < 1e-15:
            phi = 0.0
        return phi
    raise ValueError(f"unknown angle mode {mode!r}")


def point_along(g: Geodesic, p: HPoint, d: float) -> HPoint:
    """Point at signed distance d from p along g (positive towards ``g.end``)."""
    _check_on(g, p)
    f = frame(g, anchor=p)
    return f.inverse()(HPoint(0.0, math.exp(d)))


def translation_along(g: Geodesic, s: float) -> MoebiusMap:
    """Hyperbolic map with axis g translating by s (identity for s == 0)."""
    if s == 0:
        return IDENTITY
    f = frame(g)
    return compose(f.inverse(), compose(diag(math.exp(s / 2.0)), f))


def axis(m: MoebiusMap) -> Geodesic:
    """Oriented axis, repelling fixed point to attracting fixed point."""
    _require_hyperbolic(m)
    t = m.trace
    root = math.sqrt(t * t - 4.0)
    big = (t + math.copysign(root, t)) / 2.0
    return Geodesic(_eigenvector(m, 1.0 / big), _eigenvector(m, big))


def _eigenvector(m: MoebiusMap, lam: float) -> BoundaryPoint:
    # |lambda| > 1 is attracting: the derivative at the fixed point is 1 / lambda^2
    c1 = (m.b, lam - m.a)
    c2 = (lam - m.d, m.c)
    best = c1 if math.hypot(*c1) >= math.hypot(*c2) else c2
    return BoundaryPoint(*best)


def cosine_rule_angle(a: float, b: float, c: float) -> float:
    """Angle opposite side c in a hyperbolic triangle with sides a, b, c.

    Evaluated through the half-angle form of the hyperbolic law of cosines,
    which stays accurate for angles near 0 and pi.
    """
    if not (a > 0 and b > 0 and c >= 0):
        raise NotATriangle(f"sides must be positive: {(a, b, c)}")
    slack = tolerances().algebraic * max(1.0, a + b + c)
    lo = c - abs(a - b)
    hi = a + b - c
    if lo < -slack or hi < -slack:
        raise NotATriangle(f"sides {(a, b, c)} violate the triangle inequality")
    sin_half2 = math.sinh((c + a - b) / 2.0) * math.sinh((c - a + b) / 2.0)
    cos_half2 = math.sinh((a + b + c) / 2.0) * math.sinh(max(hi, 0.0) / 2.0)
    return 2.0 * math.atan2(math.sqrt(max(sin_half2, 0.0)), math.sqrt(max(cos_half2, 0.0)))


def axis_of_product(x: MoebiusMap, y: MoebiusMap) -> tuple[Geodesic, HPoint, HPoint]:
    """Axis of xy built from the crossing P of the two axes.

    Q lies tau_x / 2 ahead of P on A_x, R lies tau_y / 2 behind P on A_y;
    the axis of xy runs from R to Q.
    """
    ax, ay = axis(x), axis(y)
    try:
        p = intersect(ax, ay)
    except CoincidentGeodesics as exc:
        raise AxesDisjoint("axes coincide") from exc
    if p is None:
        raise AxesDisjoint("axes do not cross")
    q = point_along(ax, p, translation_length(x) / 2.0)
    r = point_along(ay, p, -translation_length(y) / 2.0)
    return geodesic_through(r, q), q, r
