"""Completed Epstein curve of a piecewise-Moebius map with four breakpoints.

The map is Moebius between the breakpoints 1, i, -1, -i.  The envelope
collapses to the four points a_j = alpha_j(0).  Joining them along the
horocycles based at the breakpoints gives a closed curve whose signed length
is the sum of the Schwarzian point masses, and whose signed area is minus that
sum.  The normals turn by beta_j = pi/2 at each corner.  Flowing by
t = 3/5 replaces each corner by a round arc of radius t and smooths the
curve: it then has 2n arcs meeting tangentially.
"""

from pathlib import Path

import numpy as np

from _common import output_dir, saved
from epstein_action import distributional_action, load_descriptor
from epstein_action.hyperbolic import Horocycle
from epstein_action.piecewise import carrier_horocycles, completed_epstein, scaled_completed_epstein
from epstein_action.render import SvgCanvas

out = output_dir(__doc__.splitlines()[0])
pm = load_descriptor(str(Path(__file__).resolve().parents[1] / "fixtures" / "piecewise4.json")).diffeo
total, jumps = distributional_action(pm)
comp = completed_epstein(pm)
print(f"jumps {np.round(jumps, 12).tolist()}, sum {total:.12f}")
print(f"completed curve: length {comp.length():.12f}, area {comp.signed_area():.12f} "
      f"(area primitive {comp.signed_area('eta'):.12f})")
print(f"corner angles {np.round(comp.betas, 12).tolist()}, sum - 2 pi {comp.betas.sum() - 2 * np.pi:.1e}")

x = np.arange(50) * np.pi / 25
j = pm.jet(x)
canvas = SvgCanvas()
canvas.disk()
for t, d in zip(j.value, j.d1):
    canvas.horocycle(Horocycle(np.exp(1j * t), float(1 / d)))
canvas.polyline(comp.polyline(), color="#e07000", width=2)
saved(canvas, out / "piecewise_completed.svg")

canvas = SvgCanvas()
canvas.disk()
for hc in carrier_horocycles(pm):
    canvas.horocycle(hc)
for a in comp.corners:
    canvas.marker(complex(a), 4, "#000")
saved(canvas, out / "piecewise_corners.svg")

t = 0.6
flowed = scaled_completed_epstein(pm, t)
print(f"t = {t}: {len(flowed.arcs)} arcs, largest turn at a junction {np.max(np.abs(flowed.corner_angles())):.1e}")
print(f"  length {flowed.length():.12f}, area {flowed.signed_area():.12f} "
      f"(area primitive {flowed.signed_area('eta'):.12f})")
canvas = SvgCanvas()
canvas.disk()
for hc in carrier_horocycles(pm):
    canvas.horocycle(hc, color="#1040a0")
for hc in carrier_horocycles(pm, t):
    canvas.horocycle(hc, color="#80a8e0")
canvas.polyline(flowed.polyline(), color="#e07000", width=2)
for arc in flowed.horo_arcs:
    for s in arc.span():
        canvas.marker(complex(arc.z(np.array([s]))[0]), 4, "#e07000")
saved(canvas, out / "piecewise_flowed.svg")
