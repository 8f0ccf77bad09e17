"""Envelopes of n-fold covers z -> phi(z)^n for n = 1..8.

Here phi is the inverse of theta + sin(theta)/2.  The n-fold action is
I(phi) + (1 - n^2)/2 * int phi'^2; it matches the envelope length, and
-A - 2 pi (n - 1), for every n.
"""

import numpy as np

from _common import output_dir, saved
from epstein_action import CircleDiffeo, action_nfold
from epstein_action.epstein import cover_frame_arrays, epstein_curve_of_cover
from epstein_action.hyperbolic import Horocycle
from epstein_action.render import SvgCanvas

out = output_dir(__doc__.splitlines()[0])
phi = CircleDiffeo.lift_sine(0.5).inverse()
print(f"{'n':>2} {'action':>20} {'length':>20} {'-area - 2pi(n-1)':>20}")
for n in range(1, 9):
    cover = phi.nfold(n)
    curve = epstein_curve_of_cover(cover, 4096)
    area = -curve.signed_area("eta-spectral") - 2 * np.pi * (n - 1)
    print(f"{n:2d} {action_nfold(phi, n, 4096):20.12f} {curve.total_length():20.12f} {area:20.12f}")
    canvas = SvgCanvas()
    canvas.disk()
    image, d1, _ = cover_frame_arrays(cover, np.linspace(0, 2 * np.pi, 60 * n, endpoint=False))
    for t, d in zip(image, d1):
        canvas.horocycle(Horocycle(np.exp(1j * t), float(1 / d)))
    canvas.polyline(curve.point, color="#e07000", width=1.2)
    saved(canvas, out / f"nfold_{n}.svg")
