"""Explicit marked hyperbolic structures on the pair of pants and the one-holed torus.

A structure is a pair of generator matrices; the marking is the order of the
generators, so "the same word on a new surface" is the marking-preserving
identification between metrics.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import group
from .config import tolerances
from .errors import DegenerateParams, NoDistinguishedCurve, NotDiscrete, NotHyperbolic
from .hypgeom import (
    Geodesic,
    IsometryClass,
    MoebiusMap,
    axis,
    classify,
    compose,
    diag,
    translation_along,
    translation_length,
)

PANTS = "pants"
HOLED_TORUS = "holed_torus"

# Direction of the twist deformation relative to translation along the axis of
# ``a``. Fixed once so that the anticlockwise angle at the a/b crossing of
# holed_torus(2, 0) decreases as the twist grows (see tests/test_twist.py).
TWIST_SIGN = 1


@dataclass(frozen=True)
class SurfaceRep:
    kind: str
    params: dict
    generators: tuple[MoebiusMap, ...]
    distinguished_simple: int | None = None

    @property
    def rank(self) -> int:
        return len(self.generators)

    def simple_word(self) -> str:
        if self.distinguished_simple is None:
            raise NoDistinguishedCurve(f"{self.kind} surface has no distinguished curve")
        return group.letter(self.distinguished_simple)


def _kind(kind: str) -> str:
    k = kind.replace("-", "_").lower()
    if k not in (PANTS, HOLED_TORUS):
        raise DegenerateParams(f"unknown surface kind {kind!r}")
    return k


def pants(l1: float, l2: float, l3: float) -> SurfaceRep:
    """Pair of pants with boundary lengths l1, l2, l3 on the classes a, b and (ab)^-1."""
    for l in (l1, l2, l3):
        if not (l > 0 and math.isfinite(l)):
            raise DegenerateParams(f"boundary lengths must be positive, got {(l1, l2, l3)}")
    lam = math.exp(l1 / 2.0)
    t2 = 2.0 * math.cosh(l2 / 2.0)
    t3 = -2.0 * math.cosh(l3 / 2.0)
    # B = [[p, q], [r, s]] with tr B = t2 and tr(AB) = t3 for A = diag(lam, 1/lam)
    p = (t3 - t2 / lam) / (lam - 1.0 / lam)
    s = t2 - p
    qr = p * s - 1.0
    if not qr < -1e-12:
        raise DegenerateParams(f"pants construction degenerate for {(l1, l2, l3)}")
    q = math.sqrt(-qr)
    a = diag(lam)
    b = MoebiusMap.normalized(p, q, -q, s)
    rep = SurfaceRep(PANTS, {"l1": l1, "l2": l2, "l3": l3}, (a, b), None)
    validate(rep)
    return rep


def default_b_length(length: float) -> float:
    # perpendicular axes give a one-holed torus iff cosh(m/2) > coth(l/2)
    return max(length, 2.0 * math.acosh(1.1 / math.tanh(length / 2.0)))


def holed_torus(length: float, twist: float = 0.0, b_length: float | None = None) -> SurfaceRep:
    """One-holed torus with a the translation of ``length`` along 0 -> inf.

    At zero twist b translates along the geodesic -1 -> 1, perpendicular to
    the axis of a at i; the twist then acts as b -> T(twist) b with T the
    translation along the axis of a.
    """
    if not (length > 0 and math.isfinite(length)) or not math.isfinite(twist):
        raise DegenerateParams(f"invalid holed torus parameters {(length, twist)}")
    if b_length is None:
        b_length = default_b_length(length)
    if not (b_length > 0 and math.isfinite(b_length)):
        raise DegenerateParams(f"b_length must be positive, got {b_length}")
    a = diag(math.exp(length / 2.0))
    b0 = translation_along(Geodesic.from_reals(-1.0, 1.0), b_length)
    rep = SurfaceRep(
        HOLED_TORUS,
        {"length": length, "twist": 0.0, "b_length": b_length},
        (a, b0),
        0,
    )
    rep = twist_rep(rep, twist)
    validate(rep)
    return rep


def commutator_trace(rep: SurfaceRep) -> float:
    return group.word_to_map(rep, "abAB").trace


def validate(rep: SurfaceRep) -> None:
    """Check the invariants of the surface kind; raise on violation."""
    tol = tolerances()
    for g in rep.generators:
        if abs(g.det - 1.0) > tol.algebraic * 10:
            raise DegenerateParams(f"generator determinant {g.det!r} is not 1")
        if classify(g) is not IsometryClass.HYPERBOLIC:
            raise NotDiscrete("generator is not hyperbolic")
    if rep.rank != 2:
        raise DegenerateParams("surfaces carry exactly two generators")
    if rep.kind == PANTS:
        expected = [rep.params["l1"], rep.params["l2"], rep.params["l3"]]
        words = ["a", "b", "BA"]
        for w, l in zip(words, expected):
            tr = abs(group.word_to_map(rep, w).trace)
            if abs(tr - 2.0 * math.cosh(l / 2.0)) > tol.length * max(1.0, tr):
                raise NotDiscrete(f"|tr {w}| = {tr} does not match boundary length {l}")
        if commutator_trace(rep) <= 2.0:
            raise NotDiscrete("pants commutator must be hyperbolic with positive trace")
    elif rep.kind == HOLED_TORUS:
        if rep.distinguished_simple != 0:
            raise DegenerateParams("holed torus twists along generator a")
        if abs(translation_length(rep.generators[0]) - rep.params["length"]) > tol.length:
            raise NotDiscrete("length of a does not match the length parameter")
        if not commutator_trace(rep) < -2.0 - tol.length:
            raise NotDiscrete(f"tr[a,b] = {commutator_trace(rep)} is not below -2")
    else:
        raise DegenerateParams(f"unknown surface kind {rep.kind!r}")


def class_length(rep: SurfaceRep, w: str) -> float:
    return translation_length(group.word_to_map(rep, w))


def geodesic_rep(rep: SurfaceRep, w: str) -> Geodesic:
    return axis(group.word_to_map(rep, w))


def twist_rep(rep: SurfaceRep, s: float) -> SurfaceRep:
    """Twist by s along the distinguished simple curve: a -> a, b -> T(sign * s) b."""
    if rep.distinguished_simple is None:
        raise NoDistinguishedCurve(f"{rep.kind} surface has no distinguished curve")
    if s == 0:
        return rep
    i = rep.distinguished_simple
    gens = list(rep.generators)
    shift = translation_along(axis(gens[i]), TWIST_SIGN * s)
    j = 1 - i
    gens[j] = compose(shift, gens[j])
    params = dict(rep.params)
    params["twist"] = params.get("twist", 0.0) + s
    return SurfaceRep(rep.kind, params, tuple(gens), rep.distinguished_simple)


@dataclass(frozen=True)
class MetricSampler:
    seed: int = 0
    kind: str = HOLED_TORUS
    length_range: tuple[float, float] = (0.5, 4.0)
    twist_range: tuple[float, float] = (-2.0, 2.0)


def sample_metric(sampler: MetricSampler, i: int) -> SurfaceRep:
    """The i-th structure of the sampler; independent of any other index."""
    rng = np.random.default_rng([sampler.seed, i])
    lo, hi = sampler.length_range
    kind = _kind(sampler.kind)
    if kind == PANTS:
        l1, l2, l3 = (float(v) for v in rng.uniform(lo, hi, size=3))
        return pants(l1, l2, l3)
    length = float(rng.uniform(lo, hi))
    twist = float(rng.uniform(*sampler.twist_range))
    return holed_torus(length, twist)


def build(kind: str, **params) -> SurfaceRep:
    kind = _kind(kind)
    if kind == PANTS:
        return pants(params["l1"], params["l2"], params["l3"])
    return holed_torus(params["length"], params.get("twist", 0.0), params.get("b_length"))


# --------------------------------------------------------------------------
# surface files


def _fmt(v: float) -> str:
    return format(v, ".17g")


def dumps(rep: SurfaceRep) -> str:
    gens = ", ".join(
        "[" + ", ".join(_fmt(e) for e in (g.a, g.b, g.c, g.d)) + "]" for g in rep.generators
    )
    params = ", ".join(f"{json.dumps(k)}: {_fmt(v)}" for k, v in sorted(rep.params.items()))
    return (
        "{\n"
        f'  "kind": {json.dumps(rep.kind)},\n'
        f'  "params": {{{params}}},\n'
        f'  "generators": [{gens}],\n'
        f'  "distinguished_simple": {json.dumps(rep.distinguished_simple)}\n'
        "}\n"
    )


def loads(text: str) -> SurfaceRep:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DegenerateParams(f"surface file is not valid JSON: {exc}") from exc
    expected = {"kind", "params", "generators", "distinguished_simple"}
    if not isinstance(doc, dict) or set(doc) != expected:
        raise DegenerateParams(f"surface file must have exactly the keys {sorted(expected)}")
    try:
        gens = tuple(MoebiusMap(*(float(e) for e in g)) for g in doc["generators"])
    except (TypeError, ValueError) as exc:
        raise DegenerateParams(f"malformed generators: {exc}") from exc
    rep = SurfaceRep(
        _kind(doc["kind"]),
        {k: float(v) for k, v in doc["params"].items()},
        gens,
        doc["distinguished_simple"],
    )
    try:
        validate(rep)
    except NotHyperbolic as exc:
        raise NotDiscrete(str(exc)) from exc
    return rep


def save(rep: SurfaceRep, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(rep))


def load(path) -> SurfaceRep:
    with open(path) as fh:
        return loads(fh.read())
