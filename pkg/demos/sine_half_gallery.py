"""Epstein curves of the lift theta + sin(theta)/2 and of its inverse.

For each map the script draws three pictures: the horocycles with their
envelope, the same for the metric scaled by exp(1/2), and the equidistant
family exp(t) h for t in [0, 5].  Both envelopes have cusps: their curvature
at infinity k* reaches -1, so neither curve is immersed everywhere.
"""

import numpy as np

from _common import output_dir, saved
from epstein_action import CircleDiffeo, action_direct, epstein_curve, find_non_immersed, pushforward_metric
from epstein_action.descriptors import parse_t_range
from epstein_action.epstein import embedding_threshold
from epstein_action.render import render_epstein, render_foliation

out = output_dir(__doc__.splitlines()[0])
maps = {"sine_half": CircleDiffeo.lift_sine(0.5), "sine_half_inverse": CircleDiffeo.lift_sine(0.5).inverse()}
for name, phi in maps.items():
    h = pushforward_metric(phi)
    curve = epstein_curve(h, 2048)
    print(f"{name}: action {action_direct(phi, 2048):.12f}, length {curve.total_length():.12f}, "
          f"area {curve.signed_area():.12f}")
    roots = find_non_immersed(h, 2048)
    print(f"  non-immersed at theta = {np.round(roots.angles, 6).tolist()}")
    print(f"  leaves are embedded for t > {embedding_threshold(h, 2048):.6f}")
    saved(render_epstein(h, 1024, 80), out / f"{name}.svg")
    saved(render_epstein(h.shifted(0.5), 1024, 80), out / f"{name}_scaled.svg")
    saved(render_foliation(h, parse_t_range("0:5:0.1"), 1024), out / f"{name}_foliation.svg")
