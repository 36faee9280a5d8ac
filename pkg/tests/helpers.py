"""Shared strategies and small builders for the tests."""

import math

from hypothesis import strategies as st

from goldman_angles.hypgeom import MoebiusMap, compose, diag, intersect, axis


def iwasawa(theta: float, log_lam: float, shift: float) -> MoebiusMap:
    """rotation(theta) . diag(e^log_lam) . (z -> z + shift): covers PSL2R."""
    c, s = math.cos(theta), math.sin(theta)
    rot = MoebiusMap(c, -s, s, c)
    return compose(rot, compose(diag(math.exp(log_lam)), MoebiusMap(1.0, shift, 0.0, 1.0)))


isometries = st.builds(
    iwasawa,
    st.floats(0.0, 2 * math.pi),
    st.floats(-1.5, 1.5),
    st.floats(-2.0, 2.0),
)


def hyperbolic_with(length: float, g: MoebiusMap) -> MoebiusMap:
    """Conjugate of the translation by ``length`` along 0 -> inf."""
    return compose(g, compose(diag(math.exp(length / 2.0)), g.inverse()))


hyperbolics = st.builds(hyperbolic_with, st.floats(0.2, 5.0), isometries)


def crossing_pair(x: MoebiusMap, y: MoebiusMap) -> bool:
    try:
        return intersect(axis(x), axis(y)) is not None
    except Exception:
        return False
