"""Horocycle envelopes for a metric and its double, plus a renormalized length.

Every point of the circle carries a horocycle whose Euclidean size is set by
the metric density there.  The envelope of the family is the Epstein curve.
Doubling the metric pushes every horocycle towards the boundary, and the
envelope moves with it.  The geodesic segment drawn between two horocycles has
hyperbolic length equal to the renormalized length of that pair of points.
"""

import numpy as np

from _common import output_dir, saved
from epstein_action import CircleDiffeo, epstein_curve, pushforward_metric
from epstein_action.hyperbolic import MoebiusDisk, hyperbolic_distance
from epstein_action.observables import DecoratedPoint, decorate, renormalized_length_decorated, truncation_points
from epstein_action.render import SvgCanvas, horocycle_family

out = output_dir(__doc__.splitlines()[0])
phi = CircleDiffeo.lift_sine(0.5)
h = pushforward_metric(phi)

canvas = SvgCanvas()
canvas.disk()
for hc in horocycle_family(h, 48):
    canvas.horocycle(hc, color="#f0a040")
for hc in horocycle_family(h.shifted(np.log(2)), 48):
    canvas.horocycle(hc, color="#3060c0")
canvas.polyline(epstein_curve(h, 1024).point, color="#e07000", width=2)
canvas.polyline(epstein_curve(h.shifted(np.log(2)), 1024).point, color="#2040a0", width=2)

# For the doubled metric the two horocycles below are disjoint, so the
# renormalized length is positive: it is the length of the red segment.
u, v = 0.4, 2.6
# decorations are 1/density, so doubling the metric halves them
a, b = (DecoratedPoint(d.position, d.decoration / 2) for d in (decorate(phi, u), decorate(phi, v)))
fa, fb = truncation_points(a, b)
move = MoebiusDisk.translation(fa)
segment = move(np.linspace(0.0, 1.0, 64) * move.inverse()(fb))
canvas.polyline(segment, closed=False, color="#d00000", width=2)
canvas.marker(fa, 3)
canvas.marker(fb, 3)
saved(canvas, out / "horocycle_envelope.svg")

print(f"renormalized length for 2h between phi({u}) and phi({v}): {renormalized_length_decorated(a, b):.12f}")
print(f"  distance between the truncation points:           {hyperbolic_distance(fa, fb):.12f}")
