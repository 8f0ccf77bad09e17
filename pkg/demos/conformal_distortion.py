"""Curvature distortion of round circles under analytic circle maps.

Pull the hyperbolic metric back by f and compare the total geodesic curvature
of the circle of radius r in both metrics.  The difference D(r) tends to
-(2/3) times the Schwarzian action of the boundary map.  The table shows
D(1 - 2^-k) and the extrapolated limit for several maps.
"""

import numpy as np

from epstein_action import AnalyticCircleMap, MoebiusDisk, action_direct, distortion_integral, distortion_limit
from epstein_action.distortion import area_distortion, area_distortion_rate

maps = {
    "z^2": AnalyticCircleMap.power(2),
    "z^3": AnalyticCircleMap.power(3),
    "Moebius": AnalyticCircleMap.moebius(MoebiusDisk.translation(np.exp(1j * np.pi / 3) / 3)),
    "Blaschke, two zeros": AnalyticCircleMap.blaschke([0.3, -0.4 + 0.2j]),
    "z exp((z - 1/z)/4)": AnalyticCircleMap.exp_odd(0.5),
}
for name, f in maps.items():
    target = -2 / 3 * action_direct(f.to_diffeo(), 2048)
    rep = distortion_limit(f)
    print(f"{name}: -(2/3) I = {target:.10f}")
    for k in (3, 6, 9, 12):
        print(f"   r = 1 - 2^-{k:<2d} D = {distortion_integral(f, 1 - 2.0**-k):.10f}")
    print(f"   extrapolated {rep.limit:.10f} (error estimate {rep.error:.1e}, observed order {rep.order:.2f})")

f = maps["z exp((z - 1/z)/4)"]
print("area differences for the last map:")
print(f"   unscaled A(f(S_r)) - A(S_r) tends to {area_distortion(f).limit:.2e}")
print(f"   2/(1 - r^2) times it tends to       {area_distortion_rate(f).limit:.10f}")
