"""Static upper half-plane pictures of a bracket term's lift.

Drawn in the chart where the term axis is vertical. Shows the axis of x,
the conjugate axis through the crossing, the polygonal
lift gamma_-n .. gamma_n, the axis of x * y^g and the arc midpoints. Output
depends only on the inputs; numbers are printed with fixed precision.
"""

from __future__ import annotations

from .goldman import IntersectionRecord, geodesic_pair, lift_chart, lift_path
from .hypgeom import INFINITY, ZERO, Geodesic, HPoint, dist, point_along
from .surface import SurfaceRep

WIDTH, HEIGHT, PAD = 1000, 600, 20
COLORS = {"x": "#000000", "conj": "#1f5fbf", "even": "#c0392b", "odd": "#27864a",
          "term": "#7d3c98", "mid": "#e67e22"}


def _num(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


class _View:
    """Uniform scaling of a half-plane window onto the canvas, real axis at the bottom."""

    def __init__(self, points: list[HPoint]):
        xs = [p.x for p in points]
        ys = [p.y for p in points]
        x0, x1, y1 = min(xs), max(xs), max(ys)
        span = max(x1 - x0, y1, 1e-9)
        x0, x1, y1 = x0 - 0.1 * span, x1 + 0.1 * span, y1 * 1.1
        self.scale = min((WIDTH - 2 * PAD) / (x1 - x0), (HEIGHT - 2 * PAD) / y1)
        # centre the window horizontally
        self.x0 = (x0 + x1) / 2.0 - (WIDTH - 2 * PAD) / (2.0 * self.scale)

    def X(self, x: float) -> float:
        return PAD + (x - self.x0) * self.scale

    def Y(self, y: float) -> float:
        return HEIGHT - PAD - y * self.scale

    def pt(self, p: HPoint) -> str:
        return f"{_num(self.X(p.x))} {_num(self.Y(p.y))}"


def _full(view: _View, g: Geodesic, color: str, extra: str = "") -> str:
    c, r = g.euclidean()
    y0 = _num(view.Y(0.0))
    if r is None:
        x = _num(view.X(c))
        d = f"M {x} {y0} L {x} {_num(-HEIGHT)}"
    else:
        R = _num(r * view.scale)
        d = f"M {_num(view.X(c - r))} {y0} A {R} {R} 0 0 1 {_num(view.X(c + r))} {y0}"
    return f'<path d="{d}" fill="none" stroke="{color}" stroke-width="1"{extra}/>'


def _segment(view: _View, g: Geodesic, p: HPoint, q: HPoint, color: str) -> str:
    _, r = g.euclidean()
    if r is None:
        d = f"M {view.pt(p)} L {view.pt(q)}"
    else:
        R = _num(r * view.scale)
        sweep = 1 if p.x < q.x else 0
        d = f"M {view.pt(p)} A {R} {R} 0 0 {sweep} {view.pt(q)}"
    return f'<path d="{d}" fill="none" stroke="{color}" stroke-width="2.5"/>'


def _marker(view: _View, p: HPoint, color: str, r: int = 4) -> str:
    return f'<circle cx="{_num(view.X(p.x))}" cy="{_num(view.Y(p.y))}" r="{r}" fill="{color}"/>'


def render(rep: SurfaceRep, x: str, y: str, record: IntersectionRecord, n: int = 2) -> str:
    pair = geodesic_pair(rep, x, y)
    arcs = lift_path(rep, x, y, record, n)
    chart = lift_chart(rep, x, record)
    term_axis = Geodesic(ZERO, INFINITY)  # the chart's defining property
    p = chart(record.point)
    mids = []
    samples = [p]
    for a in arcs:
        length = dist(a.start, a.end)
        mids.append(a.midpoint(length))
        samples += [point_along(a.carrier, a.start, length * t / 8.0) for t in range(9)]
    view = _View(samples)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<line x1="0" y1="{_num(view.Y(0.0))}" x2="{WIDTH}" y2="{_num(view.Y(0.0))}" '
        f'stroke="#888888" stroke-width="1"/>',
        _full(view, pair.x_axis.image(chart), COLORS["x"]),
        _full(view, record.conjugate_axis.image(chart), COLORS["conj"]),
        _full(view, term_axis, COLORS["term"], ' stroke-dasharray="6 4"'),
    ]
    for i, a in zip(range(-n, n + 1), arcs):
        color = COLORS["odd"] if i % 2 else COLORS["even"]
        out.append(_segment(view, a.carrier, a.start, a.end, color))
    out += [_marker(view, m, COLORS["mid"]) for m in mids]
    out.append(_marker(view, p, COLORS["x"], 5))
    out.append(
        f'<text x="{PAD}" y="{PAD + 12}" font-family="monospace" font-size="14">'
        f'x = {pair.x}, y = {pair.y}, g = {record.conjugator or "1"}, term {record.term_class}</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"

