"""Equidistant family of a Moebius pushforward: concentric hyperbolic circles.

For alpha(z) = (z + a)/(1 + conj(a) z) with a = exp(i pi/3)/3 the envelope of
alpha_* dtheta collapses to the single point a.  Scaling the metric by exp(t)
turns it into the hyperbolic circle of radius t about a; the script checks
this for t = 0, 0.2, ..., 1.4 and draws the family.
"""

import numpy as np

from _common import output_dir, saved
from epstein_action import CircleDiffeo, MoebiusDisk, epstein_curve, hyperbolic_distance, pushforward_metric
from epstein_action.descriptors import parse_t_range
from epstein_action.render import SvgCanvas, draw_curve, horocycle_family

out = output_dir(__doc__.splitlines()[0])
a = np.exp(1j * np.pi / 3) / 3
h = pushforward_metric(CircleDiffeo.moebius(MoebiusDisk.translation(a)))

canvas = SvgCanvas()
canvas.disk()
for t in parse_t_range("0:1.4:0.2"):
    ht = h.shifted(t)
    for hc in horocycle_family(ht, 40):
        canvas.horocycle(hc)
    curve = epstein_curve(ht, 512)
    draw_curve(canvas, curve)
    radii = hyperbolic_distance(a, curve.point)
    print(f"t = {t:.1f}: distance to a in [{radii.min():.12f}, {radii.max():.12f}]")
saved(canvas, out / "moebius_foliation.svg")
