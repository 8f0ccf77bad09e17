"""Acceptance suite: one PASS/FAIL line per criterion.

Run ``pytest tests/test_acceptance.py`` (the lines are repeated in the
terminal summary) or ``python tests/test_acceptance.py``.
"""

import sys
import time
from pathlib import Path

import numpy as np
from scipy.integrate import quad

sys.path.insert(0, str(Path(__file__).resolve().parent))

from _fixtures import A0, GRID, fixture_diffeos, sine_half  # noqa: E402
from epstein_action.boundary import TWO_PI, CircleDiffeo, pushforward_metric  # noqa: E402
from epstein_action.descriptors import load_descriptor  # noqa: E402
from epstein_action.distortion import (AnalyticCircleMap, area_distortion, area_distortion_rate,  # noqa: E402
                                       distortion_limit)
from epstein_action.epstein import (dual_quantities, epstein_curve, epstein_curve_of_cover,  # noqa: E402
                                    excess_limit, find_non_immersed, isoperimetric_excess,
                                    scaling_laws_check)
from epstein_action.errors import InconsistentObservablesError  # noqa: E402
from epstein_action.hyperbolic import MoebiusDisk  # noqa: E402
from epstein_action.observables import (farey_triangulation, observables_from_diffeo,  # noqa: E402
                                        reconstruct_from_observables, renormalized_length,
                                        renormalized_length_formula, round_trip_error)
from epstein_action.piecewise import completed_epstein, distributional_action  # noqa: E402
from epstein_action.schwarzian import all_routes, action_direct, action_nfold  # noqa: E402

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"
LINES: list[str] = []


def report(number: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {detail}"
    LINES.append(line)
    print(line)
    assert ok, line


def fixture_metrics():
    return [(name, phi, pushforward_metric(phi)) for name, phi in fixture_diffeos()]


def test_criterion_01_cross_route_identity():
    start = time.perf_counter()
    worst, worst_eta = 0.0, 0.0
    for _, phi, h in fixture_metrics():
        routes = list(all_routes(phi, GRID).values())
        curve = epstein_curve(h, GRID)
        routes.append(curve.total_length())
        routes.append(-curve.signed_area("gauss-bonnet"))
        routes.append(-curve.signed_area("eta-spectral"))
        worst = max(worst, max(routes) - min(routes))
        worst_eta = max(worst_eta, max(abs(-curve.signed_area("eta-spectral") - r) for r in routes))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-7 and worst_eta < 1e-5 and elapsed < 5.0
    report(1, ok, f"routes spread {worst:.2e} (< 1e-7), eta area {worst_eta:.2e} (< 1e-5), "
                  f"{elapsed:.2f} s (< 5 s)")


def test_criterion_02_nonnegativity_and_rigidity():
    values = {name: action_direct(phi, GRID) for name, phi in fixture_diffeos()}
    low = min(values.values())
    moebius = max(abs(v) for k, v in values.items() if k.startswith("moebius"))
    report(2, low >= -1e-8 and moebius < 1e-9, f"min action {low:.3e} (>= -1e-8), max |Moebius| {moebius:.2e} (< 1e-9)")


def test_criterion_03_scaling_laws():
    worst = 0.0
    for _, _, h in fixture_metrics():
        for t in (0.5, 1.0, 2.0, 4.0):
            worst = max(worst, max(scaling_laws_check(h, t, GRID).residuals))
    report(3, worst < 1e-7, f"max residual {worst:.2e} (< 1e-7)")


def test_criterion_04_isoperimetric_excess():
    worst, lowest = 0.0, np.inf
    for _, phi, h in fixture_metrics():
        lowest = min(lowest, min(isoperimetric_excess(h, t, GRID) for t in (3, 4, 5, 6)))
        lim = excess_limit(h, (3.0, 4.0, 5.0, 6.0), GRID)
        worst = max(worst, abs(lim.limit - 2 * action_direct(phi, GRID)))
    report(4, worst < 1e-5 and lowest >= -1e-8,
           f"|limit - 2 I| max {worst:.2e} (< 1e-5), smallest term {lowest:.2e} (>= -1e-8)")


def test_criterion_05_bilocal_identity():
    rng = np.random.default_rng(20240607)
    diffeos = [phi for _, phi in fixture_diffeos()]
    worst = 0.0
    for _ in range(200):
        phi = diffeos[rng.integers(len(diffeos))]
        u, v = rng.uniform(0, TWO_PI, 2)
        worst = max(worst, abs(renormalized_length(phi, u, v) - renormalized_length_formula(phi, u, v)))
    ident = CircleDiffeo.identity()
    exact = 0.0
    for u, v in rng.uniform(0, TWO_PI, (200, 2)):
        target = -np.log(4 / abs(np.exp(1j * u) - np.exp(1j * v)) ** 2)
        exact = max(exact, abs(renormalized_length(ident, u, v) - target))
    report(5, worst < 1e-9 and exact < 1e-11,
           f"geometric vs closed form {worst:.2e} (< 1e-9), identity vs -log(4/|u-v|^2) {exact:.2e}")


def test_criterion_06_reconstruction():
    tri = farey_triangulation(5)
    worst = 0.0
    for _, phi in fixture_diffeos():
        rec = reconstruct_from_observables(tri, observables_from_diffeo(phi, tri))
        worst = max(worst, round_trip_error(phi, tri, rec))
    phi = sine_half()
    rng = np.random.default_rng(6)
    missed = 0
    trials = 0
    for depth, sample in ((3, None), (5, 40)):
        t = farey_triangulation(depth)
        obs = observables_from_diffeo(phi, t)
        keys = list(obs)
        if sample is not None:
            keys = [keys[i] for i in rng.choice(len(keys), sample, replace=False)]
        for key in keys:
            bad = dict(obs)
            bad[key] *= 1.5
            trials += 1
            try:
                reconstruct_from_observables(t, bad)
                missed += 1
            except InconsistentObservablesError:
                pass
    report(6, worst < 1e-7 and missed == 0,
           f"depth-5 round trip {worst:.2e} (< 1e-7), faults rejected {trials - missed}/{trials}")


def _geometric_length(arc) -> float:
    s0, s1 = arc.span()

    def speed(s):
        z, dz = arc.z(np.array([s]))[0], arc.dz(np.array([s]))[0]
        return 2 * abs(dz) / (1 - abs(z) ** 2)

    return -quad(speed, s0, s1, epsabs=1e-13, epsrel=1e-13)[0]


def test_criterion_07_piecewise_moebius():
    pm = load_descriptor(str(FIXTURES / "piecewise4.json")).diffeo
    total, _ = distributional_action(pm)
    comp = completed_epstein(pm)
    gb = abs(total - comp.length()) + abs(total + comp.signed_area())
    eta = abs(total + comp.signed_area("eta"))
    beta = abs(np.sum(comp.betas) - TWO_PI)
    arc = max(abs(_geometric_length(a) - a.length) for a in comp.horo_arcs)
    ok = gb < 1e-9 and eta < 1e-5 and beta < 1e-12 and arc < 1e-9
    report(7, ok, f"sum lambda = L = -A {gb:.2e} (< 1e-9), eta area {eta:.2e} (< 1e-5), "
                  f"sum beta - 2 pi {beta:.2e} (< 1e-12), arc lengths {arc:.2e} (< 1e-9)")


def test_criterion_08_nfold_covers():
    worst = 0.0
    for phi in (sine_half(), dict(fixture_diffeos())["random0"]):
        for n in (2, 3, 5):
            value = action_nfold(phi, n, GRID)
            curve = epstein_curve_of_cover(phi.nfold(n), GRID)
            shift = TWO_PI * (n - 1)
            others = [curve.total_length(), -curve.signed_area() - shift, -curve.signed_area("eta-spectral") - shift]
            worst = max(worst, max(abs(o - value) for o in others))
    ident = max(abs(action_nfold(CircleDiffeo.identity(), n, GRID) - np.pi * (1 - n * n)) for n in (2, 3, 5))
    report(8, worst < 1e-6 and ident < 1e-10, f"cover residual {worst:.2e} (< 1e-6), identity {ident:.2e} (< 1e-10)")


def test_criterion_09_de_sitter_dual():
    totals, density = 0.0, 0.0
    for _, phi, h in fixture_metrics():
        curve = epstein_curve(h, GRID)
        rep = dual_quantities(curve)
        action = action_direct(phi, GRID)
        totals = max(totals, abs(rep.curvature - action), abs(TWO_PI - rep.length - action))
        density = max(density, float(np.max(np.abs(rep.dl_dual_fd - curve.kdl))))
    report(9, totals < 1e-7 and density < 1e-5,
           f"I = K_dual = 2 pi - L_dual {totals:.2e} (< 1e-7), finite-difference density {density:.2e} (< 1e-5)")


def test_criterion_10_distortion_limit():
    square = abs(distortion_limit(AnalyticCircleMap.power(2)).limit - 2 * np.pi)
    cube = abs(distortion_limit(AnalyticCircleMap.power(3)).limit - 16 * np.pi / 3)
    mob = abs(distortion_limit(AnalyticCircleMap.moebius(MoebiusDisk.translation(A0))).limit)
    smooth = area = 0.0
    for eps in (0.05, 0.5):
        f = AnalyticCircleMap.exp_odd(eps)
        target = -2 / 3 * action_direct(f.to_diffeo(), GRID)
        smooth = max(smooth, abs(distortion_limit(f).limit - target))
        area = max(area, abs(area_distortion_rate(f).limit - target))
    raw = area_distortion(f).limit
    print(f"info criterion 10: unscaled area difference tends to {raw:.2e}; "
          f"the rescaled difference tends to {target:.6f}")
    ok = square < 1e-4 and cube < 1e-4 and mob < 1e-6 and smooth < 1e-3 and area < 1e-3
    report(10, ok, f"z^2 {square:.1e}, z^3 {cube:.1e} (< 1e-4), Moebius {mob:.1e} (< 1e-6), "
                   f"non-Moebius {smooth:.1e}, area version {area:.1e} (< 1e-3)")


def test_criterion_11_non_immersion():
    worst, fewest = 0.0, np.inf
    for _, _, h in fixture_metrics():
        res = find_non_immersed(h, GRID)
        fewest = min(fewest, len(res))
        if len(res):
            worst = max(worst, float(np.max(np.abs(1 + h.kstar(res.angles)))))
    report(11, fewest >= 1 and worst < 1e-10, f"every fixture has >= {fewest} roots, max |1 + k*| {worst:.1e} (< 1e-10)")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
