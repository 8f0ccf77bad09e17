"""Recover a circle map from bi-local observables on a Farey triangulation.

The observables sqrt(phi'(u) phi'(v)) / |phi(u) - phi(v)| on the edges of an
ideal triangulation determine phi up to a Moebius map.  Starting from the root
triangle, each new vertex is placed from the three observables of the triangle
it completes; flip diagonals serve as redundant checks.  A corrupted
observable is caught by those checks.
"""

import numpy as np

from _common import output_dir, saved
from epstein_action import CircleDiffeo
from epstein_action.errors import InconsistentObservablesError
from epstein_action.observables import (farey_triangulation, observables_from_diffeo,
                                        reconstruct_from_observables, round_trip_error)
from epstein_action.render import render_triangulation

out = output_dir(__doc__.splitlines()[0])
saved(render_triangulation(farey_triangulation(4)), out / "farey_depth4.svg")

phi = CircleDiffeo.lift_sine(0.5)
for depth in (2, 4, 6, 8):
    tri = farey_triangulation(depth)
    obs = observables_from_diffeo(phi, tri)
    rec = reconstruct_from_observables(tri, obs)
    print(f"depth {depth}: {len(tri.vertices):4d} vertices, {len(obs):4d} observables, "
          f"round-trip error {round_trip_error(phi, tri, rec):.1e}, worst check {rec.max_residual:.1e}")

tri = farey_triangulation(4)
obs = observables_from_diffeo(phi, tri)
key = sorted(obs, key=str)[len(obs) // 2]
obs[key] *= 1.01
try:
    reconstruct_from_observables(tri, obs)
    print("a 1% error on one edge went unnoticed")
except InconsistentObservablesError as exc:
    print(f"a 1% error on one edge is rejected: {exc}")
