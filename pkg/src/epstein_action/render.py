"""SVG rendering of horocycle families and curves; CSV export of curve frames.

The unit disk maps to the viewBox ``0 0 1000 1000`` with the y-axis flipped,
so ``z = x + iy`` lands at ``(500 + 500 x, 500 - 500 y)``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .boundary import TWO_PI, BoundaryMetric, as_grid
from .epstein import EpsteinCurve, epstein_curve
from .hyperbolic import Horocycle, geodesic_circle

VIEW = 1000.0
CSV_COLUMNS = ("theta", "x", "y", "nx", "ny", "dl", "kdl", "kstar")


def to_view(z) -> tuple[np.ndarray, np.ndarray]:
    z = np.asarray(z, dtype=complex)
    half = VIEW / 2
    return half + half * z.real, half - half * z.imag


def _fmt(v: float) -> str:
    return f"{v:.3f}".rstrip("0").rstrip(".")


@dataclass
class SvgCanvas:
    """Accumulates SVG elements; ``paths`` counts ``<path>`` elements only."""

    stroke: float = 1.0
    horocycle_stroke: float = 0.5
    elements: list = field(default_factory=list)
    paths: int = 0
    markers: int = 0

    def disk(self) -> None:
        self.elements.append('<circle cx="500" cy="500" r="500" fill="none" stroke="#000" stroke-width="1"/>')

    def polyline(self, points, closed: bool = True, color: str = "#c03", width: float | None = None) -> None:
        x, y = to_view(points)
        cmd = "M" + " L".join(f"{_fmt(a)} {_fmt(b)}" for a, b in zip(x, y)) + (" Z" if closed else "")
        self.elements.append(f'<path d="{cmd}" fill="none" stroke="{color}" '
                             f'stroke-width="{_fmt(width or self.stroke)}"/>')
        self.paths += 1

    def horocycle(self, hc: Horocycle, color: str = "#36c") -> None:
        # two half-circle arcs through diametrically opposite points
        c, r = hc.center, hc.radius
        (x0, x1), (y0, y1) = to_view(np.array([c + r, c - r]))
        rv = _fmt(r * VIEW / 2)
        d = (f"M{_fmt(x0)} {_fmt(y0)} A{rv} {rv} 0 1 0 {_fmt(x1)} {_fmt(y1)} "
             f"A{rv} {rv} 0 1 0 {_fmt(x0)} {_fmt(y0)} Z")
        self.elements.append(f'<path d="{d}" fill="none" stroke="{color}" '
                             f'stroke-width="{_fmt(self.horocycle_stroke)}"/>')
        self.paths += 1

    def marker(self, z: complex, radius: float = 4.0, color: str = "#c03") -> None:
        (x,), (y,) = to_view(np.array([z]))
        self.elements.append(f'<circle class="marker" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}" fill="{color}"/>')
        self.markers += 1

    def to_string(self) -> str:
        body = "\n".join(self.elements)
        return (f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {VIEW:g} {VIEW:g}" '
                f'width="{VIEW:g}" height="{VIEW:g}">\n{body}\n</svg>\n')

    def save(self, path) -> None:
        Path(path).write_text(self.to_string())


def horocycle_family(h: BoundaryMetric, count: int = 80) -> list[Horocycle]:
    """Horocycles at ``count`` equally spaced base points, sized by ``exp(sigma)``."""
    th = TWO_PI * np.arange(count) / count
    return [Horocycle(np.exp(1j * t), float(d)) for t, d in zip(th, h.density(th))]


def is_degenerate(curve: EpsteinCurve, tol: float = 1e-9) -> bool:
    """True when all frame points coincide (the round metric gives a single point)."""
    return float(np.ptp(curve.point.real) + np.ptp(curve.point.imag)) < tol


def draw_curve(canvas: SvgCanvas, curve: EpsteinCurve, color: str = "#c03") -> None:
    if is_degenerate(curve):
        canvas.marker(complex(np.mean(curve.point)), color=color)
    else:
        canvas.polyline(curve.point, closed=True, color=color)


def render_epstein(h: BoundaryMetric, grid=None, horocycles: int = 80, stroke: float = 1.0) -> SvgCanvas:
    """Horocycle family of ``h`` together with its envelope."""
    canvas = SvgCanvas(stroke=stroke)
    canvas.disk()
    for hc in horocycle_family(h, horocycles):
        canvas.horocycle(hc)
    draw_curve(canvas, epstein_curve(h, grid))
    return canvas


def render_foliation(h: BoundaryMetric, ts, grid=None, stroke: float = 0.6) -> SvgCanvas:
    """Equidistant curves of ``exp(t) h``, one closed path per ``t``."""
    canvas = SvgCanvas(stroke=stroke)
    canvas.disk()
    ts = np.asarray(ts, dtype=float)
    span = max(float(np.ptp(ts)), 1e-12)
    for t in ts:
        shade = int(200 * (t - ts.min()) / span)
        draw_curve(canvas, epstein_curve(h.shifted(t), grid), color=f"#{shade:02x}20{255 - shade:02x}")
    return canvas


def render_completed(completed, horocycles=(), per_arc: int = 96, stroke: float = 1.0) -> SvgCanvas:
    """Completed piecewise curve, optionally with the horocycles carrying its arcs."""
    canvas = SvgCanvas(stroke=stroke)
    canvas.disk()
    for hc in horocycles:
        canvas.horocycle(hc)
    canvas.polyline(completed.polyline(per_arc), closed=True)
    for z in completed.corners:
        canvas.marker(complex(z), radius=3.0, color="#000")
    return canvas


def geodesic_points(p: complex, q: complex, count: int = 64) -> np.ndarray:
    """Points along the geodesic joining the ideal points ``p`` and ``q``."""
    c, r = geodesic_circle(p, q)
    if c is None:
        return np.linspace(p, q, count)
    a0, a1 = np.angle(p - c), np.angle(q - c)
    sweep = np.angle(np.exp(1j * (a1 - a0)))  # the arc inside the disk is the short one
    return c + r * np.exp(1j * (a0 + sweep * np.linspace(0.0, 1.0, count)))


def render_triangulation(tri, stroke: float = 0.8) -> SvgCanvas:
    """Edges of an ideal triangulation as open geodesic paths."""
    canvas = SvgCanvas(stroke=stroke)
    canvas.disk()
    for a, b in tri.edges:
        canvas.polyline(geodesic_points(tri.point(a), tri.point(b)), closed=False, color="#333")
    return canvas


# CSV --------------------------------------------------------------------------------

def write_csv(curve: EpsteinCurve, path) -> None:
    """One row per node, header mandatory.

    ``dl`` and ``kdl`` are densities per unit of the uniform grid parameter, so
    totals are ``2 pi / n`` times the column sums for any curve, including
    covers sampled at non-uniform angles.
    """
    n = len(curve)
    scale = curve.weights * n / TWO_PI
    cols = (curve.theta, curve.point.real, curve.point.imag, curve.normal.real, curve.normal.imag,
            curve.dl * scale, curve.kdl * scale, curve.kstar)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for row in zip(*cols):
            w.writerow([repr(float(v)) for v in row])


def read_csv(path) -> dict[str, np.ndarray]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != CSV_COLUMNS:
        raise ValueError(f"expected header {','.join(CSV_COLUMNS)}")
    data = np.array(rows[1:], dtype=float).reshape(-1, len(CSV_COLUMNS))
    return {name: data[:, i] for i, name in enumerate(CSV_COLUMNS)}


def totals_from_csv(path) -> tuple[float, float]:
    """Length and total curvature recomputed from an exported CSV."""
    d = read_csv(path)
    step = TWO_PI / d["dl"].size
    return float(np.sum(d["dl"]) * step), float(np.sum(d["kdl"]) * step)
