"""A degenerate metric of length 2 pi and the family that repairs it.

h = 6 sin^2(theta) / (5 + 3 cos 2 theta) d(theta) is |phi'| d(theta) for the
circle map phi(z) = (1 + 3 z^2)/(3 z + z^3), which is x -> x^3 conjugated by
the Cayley transform.  It vanishes at +-1, so the envelope runs out to the
boundary there and has infinite length.  The mixtures
h^a = (1 - a) h + a d(theta) all have length 2 pi and are nondegenerate for
a > 0.  The last picture shows h^{1/2} pushed forward by z^2, a double cover,
with a fan of horocycles over a quarter of the source circle.
"""

import numpy as np

from _common import output_dir, saved
from epstein_action import BoundaryMetric, diffeo_from_metric
from epstein_action.epstein import cover_frame_arrays, epstein_curve, epstein_curve_of_cover, frame_arrays
from epstein_action.hyperbolic import Horocycle
from epstein_action.render import SvgCanvas, horocycle_family, render_epstein


def cubic_density(theta):
    """Density, first and second derivative of 6 sin^2 / (5 + 3 cos 2 theta)."""
    c, s = np.cos(2 * theta), np.sin(2 * theta)
    q = 5 + 3 * c
    return 3 * (1 - c) / q, 48 * s / q**2, 96 * c / q**2 + 576 * s**2 / q**3


def mixture(a: float) -> BoundaryMetric:
    def jet(theta):
        g, g1, g2 = cubic_density(theta)
        d, d1, d2 = (1 - a) * g + a, (1 - a) * g1, (1 - a) * g2
        s1 = d1 / d
        return np.log(d), s1, d2 / d - s1**2

    return BoundaryMetric(jet, label=f"mixture a={a}")


out = output_dir(__doc__.splitlines()[0])

# a = 0: sample off the zeros of the density
n = 2048
th = (np.arange(n) + 0.5) * 2 * np.pi / n
g, g1, g2 = cubic_density(th)
points = frame_arrays(th, np.log(g), g1 / g, g2 / g - (g1 / g) ** 2)[0]
print(f"a = 0: total length {2 * np.pi * np.mean(g):.12f}, closest approach to the boundary "
      f"{1 - np.abs(points).max():.2e}")
canvas = SvgCanvas()
canvas.disk()
for t, d in zip(th[::n // 40], g[::n // 40]):
    canvas.horocycle(Horocycle(np.exp(1j * t), float(d)))
canvas.polyline(points, color="#e07000", width=1.5)
saved(canvas, out / "cubic_degenerate.svg")

for a in (0.1, 0.3, 0.5, 0.7):
    h = mixture(a)
    curve = epstein_curve(h, 2048)
    print(f"a = {a}: length of h^a {h.total_length(2048):.12f}, envelope length {curve.total_length():.9f}")
    saved(render_epstein(h, 1024, 80), out / f"cubic_mixture_{a}.svg")

# h^{1/2} pushed forward by z^2
phi = diffeo_from_metric(mixture(0.5)).nfold(2)
curve = epstein_curve_of_cover(phi, 2048)
print(f"double cover: length {curve.total_length():.9f}, signed area {curve.signed_area():.9f}")
canvas = SvgCanvas()
canvas.disk()
x = np.linspace(0, 2 * np.pi, 80, endpoint=False)
image, d1, _ = cover_frame_arrays(phi, x)
for t, d in zip(image, d1):
    canvas.horocycle(Horocycle(np.exp(1j * t), float(1 / d)))
canvas.polyline(curve.point, color="#e07000", width=1.5)
saved(canvas, out / "cubic_double_cover.svg")

canvas = SvgCanvas()
canvas.disk()
x = np.linspace(0, np.pi / 2, 25)
image, d1, frames = cover_frame_arrays(phi, x)
for t, d, p in zip(image, d1, frames[0]):
    canvas.horocycle(Horocycle(np.exp(1j * t), float(1 / d)))
    canvas.marker(complex(p), 3)
canvas.polyline(curve.point, color="#e07000", width=1.0)
saved(canvas, out / "cubic_double_cover_fan.svg")
