"""A metric longer than the circle: sigma = cos(theta)^2 / 2.

Its total length is about 8.19, larger than 2 pi, so it is not the pushforward
of d(theta) by any diffeomorphism.  The envelope is still defined.  After
rescaling to length 2 pi, the metric integrates back to a diffeomorphism.
"""

import numpy as np

from _common import output_dir, saved
from epstein_action import BoundaryMetric, diffeo_from_metric, epstein_curve
from epstein_action.render import render_epstein

out = output_dir(__doc__.splitlines()[0])
h = BoundaryMetric.from_functions(lambda t: 0.5 * np.cos(t) ** 2, lambda t: -np.sin(t) * np.cos(t),
                                  lambda t: -np.cos(2 * t), label="half cosine squared")
print(f"total length {h.total_length(2048):.12f} (2 pi = {2 * np.pi:.12f})")
curve = epstein_curve(h, 2048)
print(f"envelope length {curve.total_length():.9f}, signed area {curve.signed_area():.9f}")
saved(render_epstein(h, 1024, 80), out / "long_metric.svg")

unit = h.normalized(2048)
phi = diffeo_from_metric(unit)
th = np.linspace(0, 2 * np.pi, 5)
print("diffeomorphism of the rescaled metric, lift at 0, pi/2, ..., 2 pi:")
print("  " + ", ".join(f"{v:.6f}" for v in phi.lift(th)))
saved(render_epstein(unit, 1024, 80), out / "long_metric_normalized.svg")
