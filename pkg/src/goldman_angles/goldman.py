"""Intersection points of two closed geodesics and the Goldman bracket.

A surface intersection point p of x and y is represented by a conjugate
g y g^-1 whose axis crosses the axis of x inside a fixed fundamental segment
of length tau_x. Conjugators are searched breadth-first by word length; the
geometric test for all words of one length is vectorized with numpy.

Convention: y^g means g y g^-1 throughout, and the bracket term at the
crossing is the class of x * y^g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import group
from .config import tolerances
from .errors import InvalidInput, NonPrimitiveCollision, NoStabilization, TangentDegenerate, TriplePoint
from .group import ConjClass, conj_class, free_reduce, inverse, word_to_map
from .hypgeom import (
    Geodesic,
    INFINITY,
    ZERO,
    HPoint,
    MoebiusMap,
    axis,
    compose,
    coordinate,
    diag,
    dist,
    dist_to_geodesic,
    frame,
    intersect,
    point_along,
    tangent,
    translation_length,
)
from .surface import SurfaceRep

DEFAULT_RADIUS_CAP = 14


@dataclass(frozen=True)
class IntersectionRecord:
    conjugator: str
    point: HPoint
    param: float
    sign: int
    term_word: str
    term_class: ConjClass
    conjugate_axis: Geodesic
    conjugate_word: str


@dataclass
class BracketSum:
    """Formal sum of classes; ``records`` keeps the terms before cancellation."""

    terms: dict[ConjClass, int]
    records: list[IntersectionRecord]
    radius_used: int = 0
    shortcut: bool = False
    collision: bool = False

    def sorted_terms(self) -> list[tuple[ConjClass, int]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BracketSum):
            return NotImplemented
        return self.terms == other.terms


@dataclass(frozen=True)
class GeodesicPair:
    rep: SurfaceRep
    x: str
    y: str
    x_map: MoebiusMap
    y_map: MoebiusMap
    x_axis: Geodesic
    y_axis: Geodesic
    tau_x: float
    tau_y: float


def _core(w: str, rank: int) -> str:
    group.validate(w, rank)
    core, _ = group.cyclic_reduce(w)
    if not core:
        raise InvalidInput(f"word {w!r} is trivial")
    return core


def geodesic_pair(rep: SurfaceRep, x: str, y: str) -> GeodesicPair:
    x, y = _core(x, rep.rank), _core(y, rep.rank)
    xm, ym = word_to_map(rep, x), word_to_map(rep, y)
    return GeodesicPair(rep, x, y, xm, ym, axis(xm), axis(ym), translation_length(xm), translation_length(ym))


def shares_root(x: str, y: str) -> bool:
    """True when x and y are (up to conjugacy) powers of a common element."""
    rx, _ = group.primitive_root(group.cyclic_reduce(x)[0])
    ry, _ = group.primitive_root(group.cyclic_reduce(y)[0])
    cx = conj_class(rx)
    return cx == conj_class(ry) or cx == conj_class(inverse(ry))


def conjugate_axis(rep: SurfaceRep, y: str, g: str) -> Geodesic:
    """Axis of g y g^-1, computed as the image of the axis of y under g."""
    return axis(word_to_map(rep, y)).image(word_to_map(rep, g))


def crossing_sign(x_axis: Geodesic, other: Geodesic, p: HPoint) -> int:
    tx = tangent(x_axis, p)
    ty = tangent(other, p)
    det = tx[0] * ty[1] - tx[1] * ty[0]
    if abs(det) < tolerances().tangent:
        raise TangentDegenerate(f"crossing at {p} is nearly tangential (det {det:.3e})")
    return 1 if det > 0 else -1


def _record(pair: GeodesicPair, g: str) -> IntersectionRecord | None:
    conj = pair.y_axis.image(word_to_map(pair.rep, g))
    p = intersect(pair.x_axis, conj)
    if p is None:
        return None
    param = coordinate(pair.x_axis, p)
    conj_word = free_reduce(g + pair.y + inverse(g))
    term = free_reduce(pair.x + conj_word)
    return IntersectionRecord(
        conjugator=g,
        point=p,
        param=param,
        sign=crossing_sign(pair.x_axis, conj, p),
        term_word=term,
        term_class=conj_class(term),
        conjugate_axis=conj,
        conjugate_word=conj_word,
    )


def track_record(rep: SurfaceRep, x: str, y: str, g: str) -> IntersectionRecord | None:
    """Recompute the crossing carried by conjugator g on a (possibly different) metric."""
    return _record(geodesic_pair(rep, x, y), g)


def coset_reduce(g: str, root: str) -> str:
    """Shortest representative of g<root> found by peeling powers of root off the right.

    Long tails of root^k lose precision fast: the repelling endpoint of the
    axis is pushed through root^k, amplifying rounding by |lambda|^2 per power.
    """
    g = free_reduce(g)
    inv = inverse(root)
    while True:
        for tail in (root, inv):
            h = free_reduce(g + tail)
            if group.shortlex_key(h) < group.shortlex_key(g):
                g = h
                break
        else:
            return g


def _normalized_record(pair: GeodesicPair, g: str) -> IntersectionRecord | None:
    """Shift g by powers of x so the crossing lies in [0, tau_x)."""
    root, _ = group.primitive_root(pair.y)
    g = coset_reduce(g, root)
    rec = _record(pair, g)
    if rec is None:
        return None
    tau, eps = pair.tau_x, tolerances().param_merge
    k = math.floor((rec.param + eps) / tau)
    if k:
        g = coset_reduce(group.power(pair.x, -k) + g, root)
        rec = _record(pair, g)
        if rec is None:
            return None
    if rec.param >= tau - eps:
        g = coset_reduce(inverse(pair.x) + g, root)
        rec = _record(pair, g)
    if rec is None:
        return None
    if rec.param < eps:
        rec = _replace_param(rec, 0.0)
    return rec


def _replace_param(rec: IntersectionRecord, param: float) -> IntersectionRecord:
    return IntersectionRecord(
        rec.conjugator, rec.point, param, rec.sign, rec.term_word, rec.term_class,
        rec.conjugate_axis, rec.conjugate_word,
    )


class _ConjugatorSearch:
    """Breadth-first walk over freely reduced conjugators, one word length per step."""

    def __init__(self, pair: GeodesicPair):
        self.pair = pair
        rank = pair.rep.rank
        mats = []
        for gen in pair.rep.generators:
            mats.append(np.array(gen.matrix()))
            mats.append(np.array(gen.inverse().matrix()))
        self.gens = np.array(mats)
        self.letters = [group.letter(i // 2, 1 if i % 2 == 0 else -1) for i in range(2 * rank)]
        f = frame(pair.x_axis)
        self.frame = np.array(f.matrix())
        ys, ye = pair.y_axis.start, pair.y_axis.end
        self.y_ends = np.array([[ys.u, ye.u], [ys.v, ye.v]])
        self.level = -1
        self.mats = np.eye(2)[None, :, :]
        self.last = np.array([-1])
        self.words = np.zeros((1, 0), dtype=np.int8)

    def advance(self) -> list[tuple[str, float]]:
        """Move to the next word length and return (conjugator, raw param) hits."""
        if self.level >= 0:
            new_m, new_l, new_w = [], [], []
            for code in range(len(self.gens)):
                keep = self.last != (code ^ 1)
                if not keep.any():
                    continue
                new_m.append(self.mats[keep] @ self.gens[code])
                new_l.append(np.full(int(keep.sum()), code))
                w = self.words[keep]
                new_w.append(np.concatenate([w, np.full((len(w), 1), code, dtype=np.int8)], axis=1))
            self.mats = np.concatenate(new_m)
            self.last = np.concatenate(new_l)
            self.words = np.concatenate(new_w)
        self.level += 1
        return self._hits()

    def _hits(self) -> list[tuple[str, float]]:
        e = self.frame @ self.mats @ self.y_ends
        e = e / np.abs(e).max(axis=1, keepdims=True)
        u1, v1, u2, v2 = e[:, 0, 0], e[:, 1, 0], e[:, 0, 1], e[:, 1, 1]
        tol = tolerances().boundary
        near = lambda u, v: np.minimum(np.abs(u), np.abs(v)) <= tol
        at_zero = lambda u: np.abs(u) <= tol
        degenerate = (at_zero(u1) & at_zero(v2)) | (at_zero(v1) & at_zero(u2))
        if degenerate.any():
            # both endpoints at 0 / inf: the conjugate axis is the axis of x
            idx = int(np.flatnonzero(degenerate)[0])
            raise NonPrimitiveCollision(
                f"axis of conjugate by {self._word(idx)!r} coincides with the axis of x"
            )
        ok = ~(near(u1, v1) | near(u2, v2)) & (u1 * v1 * u2 * v2 < 0)
        idx = np.flatnonzero(ok)
        if not len(idx):
            return []
        with np.errstate(divide="ignore"):
            param = 0.5 * (np.log(np.abs(u1[idx] / v1[idx])) + np.log(np.abs(u2[idx] / v2[idx])))
        return [(self._word(i), float(t)) for i, t in zip(idx, param)]

    def _word(self, i: int) -> str:
        return "".join(self.letters[c] for c in self.words[i])


class _Collector:
    def __init__(self, pair: GeodesicPair, split_triple: bool = False):
        self.pair = pair
        self.split_triple = split_triple
        self.by_conj: dict[str, IntersectionRecord] = {}
        self.seen: set[str] = set()

    def add(self, hits) -> None:
        pair = self.pair
        for g, _ in hits:
            raw = free_reduce(g + pair.y + inverse(g))
            if raw in self.seen:
                continue
            self.seen.add(raw)
            rec = _normalized_record(pair, g)
            if rec is None:
                continue
            old = self.by_conj.get(rec.conjugate_word)
            if old is None or group.shortlex_key(rec.conjugator) < group.shortlex_key(old.conjugator):
                self.by_conj[rec.conjugate_word] = rec

    def keys(self) -> frozenset:
        return frozenset(self.by_conj)

    def records(self) -> list[IntersectionRecord]:
        recs = sorted(self.by_conj.values(), key=lambda r: (r.param, group.shortlex_key(r.conjugator)))
        if not self.split_triple:
            _check_triple_points(recs, self.pair.tau_x)
        return _expand_powers(recs, self.pair.y)


def _check_triple_points(recs: list[IntersectionRecord], tau: float) -> None:
    tol = tolerances().triple_point
    n = len(recs)
    for i in range(n):
        a, b = recs[i], recs[(i + 1) % n]
        if a is b:
            continue
        gap = b.param - a.param if i + 1 < n else b.param + tau - a.param
        if abs(gap) < tol and a.conjugate_word != b.conjugate_word:
            raise TriplePoint(
                f"conjugates by {a.conjugator!r} and {b.conjugator!r} cross the axis of x "
                f"{abs(gap):.2e} apart; perturb the metric"
            )


def _expand_powers(recs: list[IntersectionRecord], y: str) -> list[IntersectionRecord]:
    # y = w^m meets each crossing m times as a map from the circle
    root, m = group.primitive_root(y)
    if m == 1:
        return recs
    out = []
    for r in recs:
        for j in range(m):
            g = free_reduce(r.conjugator + root * j)
            out.append(
                IntersectionRecord(g, r.point, r.param, r.sign, r.term_word, r.term_class,
                                   r.conjugate_axis, r.conjugate_word)
            )
    return out


def _check_distinct(x: str, y: str) -> None:
    if shares_root(x, y):
        raise NonPrimitiveCollision(f"{x!r} and {y!r} are powers of a common class")


def enumerate_intersections(rep: SurfaceRep, x: str, y: str, radius: int,
                            split_triple: bool = False) -> list[IntersectionRecord]:
    """Crossings found with conjugators of word length at most ``radius``.

    With ``split_triple`` two branches of y crossing x at one point are kept
    as separate records (x pushed slightly off the point) instead of raising.
    """
    if radius < 1:
        raise InvalidInput("radius must be at least 1")
    pair = geodesic_pair(rep, x, y)
    _check_distinct(pair.x, pair.y)
    search, coll = _ConjugatorSearch(pair), _Collector(pair, split_triple)
    for _ in range(radius + 1):
        coll.add(search.advance())
    return coll.records()


def stabilize(rep: SurfaceRep, x: str, y: str, cap: int = DEFAULT_RADIUS_CAP,
              split_triple: bool = False):
    """Grow the search radius until two consecutive radii find the same crossings.

    Returns (records, radius_used). Starts at |x| + |y| + 2.
    """
    pair = geodesic_pair(rep, x, y)
    _check_distinct(pair.x, pair.y)
    r0 = len(pair.x) + len(pair.y) + 2
    if r0 + 1 > cap:
        raise NoStabilization(f"starting radius {r0} already reaches the cap {cap}")
    search, coll = _ConjugatorSearch(pair), _Collector(pair, split_triple)
    for _ in range(r0 + 1):
        coll.add(search.advance())
    prev = coll.keys()
    for r in range(r0 + 1, cap + 1):
        coll.add(search.advance())
        cur = coll.keys()
        if cur == prev:
            return coll.records(), r
        prev = cur
    raise NoStabilization(f"crossings of {x!r} and {y!r} still changing at radius cap {cap}")


def sign_of(record: IntersectionRecord, rep: SurfaceRep, x: str, y: str) -> int:
    """Orientation sign of (x', y') at the crossing, from the half-plane coordinates."""
    pair = geodesic_pair(rep, x, y)
    return crossing_sign(pair.x_axis, record.conjugate_axis, record.point)


def goldman_bracket(rep: SurfaceRep, x: str, y: str, cap: int = DEFAULT_RADIUS_CAP,
                    split_triple: bool = False) -> BracketSum:
    xc, yc = _core(x, rep.rank), _core(y, rep.rank)
    if conj_class(xc) == conj_class(yc):
        return BracketSum({}, [], 0, shortcut=True)
    try:
        records, radius = stabilize(rep, xc, yc, cap, split_triple)
    except NonPrimitiveCollision:
        return BracketSum({}, [], 0, collision=True)
    terms: dict[ConjClass, int] = {}
    for r in records:
        terms[r.term_class] = terms.get(r.term_class, 0) + r.sign
    terms = {k: v for k, v in terms.items() if v}
    return BracketSum(terms, records, radius)


def term_count(bs: BracketSum) -> int:
    return sum(abs(c) for c in bs.terms.values())


def geometric_intersection_number(rep: SurfaceRep, x: str, y: str, cap: int = DEFAULT_RADIUS_CAP,
                                  split_triple: bool = False) -> int:
    try:
        records, _ = stabilize(rep, _core(x, rep.rank), _core(y, rep.rank), cap, split_triple)
    except NonPrimitiveCollision:
        return 0
    return len(records)


@dataclass(frozen=True)
class Arc:
    carrier: Geodesic
    start: HPoint
    end: HPoint

    def midpoint(self, length: float) -> HPoint:
        # rescale about 0 first: scalings are exact, and far arcs of a lift
        # are scalings of near ones in the lift chart
        lam = abs(self.start.z) ** 0.5
        down, up = diag(1.0 / lam), diag(lam)
        m = point_along(self.carrier.image(down), down(self.start), length / 2.0)
        return up(m)


def term_map(rep: SurfaceRep, x: str, record: IntersectionRecord) -> MoebiusMap:
    """The element x * y^g whose axis carries the lift of the term."""
    return compose(word_to_map(rep, _core(x, rep.rank)), word_to_map(rep, record.conjugate_word))


def lift_chart(rep: SurfaceRep, x: str, record: IntersectionRecord) -> MoebiusMap:
    """Chart taking the axis of x * y^g to 0 -> inf with the foot of the crossing at i."""
    return frame(axis(term_map(rep, x, record)), record.point)


def lift_path(rep: SurfaceRep, x: str, y: str, record: IntersectionRecord, n: int) -> list[Arc]:
    """Arcs gamma_-n .. gamma_n of the polygonal lift of the term through the crossing.

    Even arcs have length tau_x and lie on translates of the axis of x, odd
    arcs have length tau_y on translates of the conjugate axis. Coordinates
    are those of ``lift_chart``: there the term map is an exact scaling, so
    arcs far along the lift keep full relative precision. Arcs that land
    within 1e-14 of the boundary still raise DegeneratePoint.
    """
    if n < 0:
        raise InvalidInput("n must be non-negative")
    pair = geodesic_pair(rep, x, y)
    h = term_map(rep, x, record)
    chart = lift_chart(rep, x, record)
    p = record.point
    xp = pair.x_map(p)
    gamma0 = Arc(pair.x_axis.image(chart), chart(p), chart(xp))
    gamma1 = Arc(record.conjugate_axis.image(compose(chart, pair.x_map)), chart(xp), chart(h(p)))
    tau_h = translation_length(h)
    arcs = []
    for i in range(-n, n + 1):
        k, odd = divmod(i, 2)
        hk = diag(math.exp(k * tau_h / 2.0))
        base = gamma1 if odd else gamma0
        arcs.append(Arc(base.carrier.image(hk), hk(base.start), hk(base.end)))
    return arcs


def midpoint_offsets(rep: SurfaceRep, x: str, y: str, record: IntersectionRecord, n: int) -> list[float]:
    """Hyperbolic distance from the midpoint of each lift arc to the axis of x * y^g.

    The lift chart sends that axis to 0 -> inf by construction, so distances
    are taken to the exact imaginary axis rather than to a re-imaged copy
    whose rounding would dominate near 0 and inf.
    """
    term_axis = Geodesic(ZERO, INFINITY)
    return [dist_to_geodesic(a.midpoint(dist(a.start, a.end)), term_axis)
            for a in lift_path(rep, x, y, record, n)]
