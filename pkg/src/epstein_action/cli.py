"""Command-line front end.

Every subcommand reads a descriptor (``--input``), computes, prints a short
report and optionally writes ``--svg``, ``--csv`` and ``--json`` artifacts.
Exit status: 0 on success, 2 for an unusable descriptor or scenario, 3 when a
cross-check exceeds ``--tol``.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations
from pathlib import Path

import numpy as np

from . import observables as bl
from . import distortion as dist
from . import epstein as ep
from . import piecewise as pw
from . import render
from . import schwarzian as sch
from .boundary import TWO_PI, as_grid, diffeo_from_metric, pushforward_metric
from .descriptors import OPERATIONS, SCHEMA, Scenario, Subject, load_scenario, parse_t_range, read_json
from .errors import DescriptorError, EpsteinError

EXIT_OK, EXIT_BAD_INPUT, EXIT_TOLERANCE = 0, 2, 3

DEFAULT_TOL = {
    "action": 1e-7, "excess": 1e-5, "bilocal": 1e-9, "reconstruct": 1e-7, "piecewise": 1e-5,
    "nfold": 1e-6, "dual": 1e-7, "distort": 1e-3, "epstein": None, "foliate": None,
}


class Outcome:
    """Report lines, a JSON payload and the largest checked discrepancy."""

    def __init__(self):
        self.lines: list[str] = []
        self.data: dict = {}
        self.discrepancy: float | None = None

    def say(self, label: str, value) -> None:
        if isinstance(value, float):
            self.lines.append(f"{label:<28} {value: .15g}")
        else:
            self.lines.append(f"{label:<28} {value}")
        self.data[label] = value

    def check(self, value: float) -> None:
        self.discrepancy = value if self.discrepancy is None else max(self.discrepancy, value)


def _max_gap(values) -> float:
    vals = list(values)
    return max((abs(a - b) for a, b in combinations(vals, 2)), default=0.0)


# subject helpers -----------------------------------------------------------------

def _metric(s: Subject):
    if s.metric is None:
        raise DescriptorError(f"descriptor kind {s.kind!r} does not define a smooth metric")
    return s.metric


def _diffeo(s: Subject, degree_one: bool = True):
    if s.diffeo is None:
        h = _metric(s)
        try:
            s.diffeo = diffeo_from_metric(h)
        except EpsteinError as exc:
            raise DescriptorError(f"metric does not come from a diffeomorphism: {exc}") from exc
    if degree_one and s.diffeo.degree != 1:
        raise DescriptorError(f"operation needs a degree-one diffeomorphism, got degree {s.diffeo.degree}")
    return s.diffeo


# operations -------------------------------------------------------------------------

def op_action(sc: Scenario, s: Subject, out: Outcome) -> None:
    if s.piecewise is not None:
        pm = s.piecewise
        total, lam = pw.distributional_action(pm)
        comp = pw.completed_epstein(pm)
        routes = {"distributional": total, "completed_length": comp.length(),
                  "-area_gauss_bonnet": -comp.signed_area()}
        for k, v in routes.items():
            out.say(k, v)
        out.say("-area_eta", -comp.signed_area("eta"))
        out.say("max_discrepancy", _max_gap(routes.values()))
        out.check(_max_gap(routes.values()))
        return
    phi = _diffeo(s)
    g = as_grid(sc.grid)
    h = s.metric if s.metric is not None else pushforward_metric(phi)
    curve = ep.epstein_curve(h, g)
    routes = {
        "direct": sch.action_direct(phi, g),
        "inverse_form": sch.action_inverse_form(phi, g),
        "kstar_form": sch.action_kstar_form(h, g),
        "epstein_length": curve.total_length(),
    }
    for k, v in routes.items():
        out.say(k, v)
    out.say("-area_gauss_bonnet", -curve.signed_area())
    out.say("-area_eta", -curve.signed_area("eta-spectral"))
    gap = _max_gap(routes.values())
    out.say("max_discrepancy", gap)
    out.check(gap)


def op_epstein(sc: Scenario, s: Subject, out: Outcome) -> None:
    h = _metric(s)
    g = as_grid(sc.grid)
    curve = ep.epstein_curve(h, g)
    out.say("length", curve.total_length())
    out.say("total_curvature", curve.total_curvature())
    out.say("signed_area", curve.signed_area())
    out.say("metric_length", h.total_length(g))
    out.say("degenerate", render.is_degenerate(curve))
    crit = ep.find_non_immersed(h, g, check=False)
    out.say("non_immersed_points", "everywhere" if crit.everywhere else len(crit))
    if "svg" in sc.outputs:
        count = int(sc.render.get("horocycles", 80))
        canvas = render.render_epstein(h, g, count, float(sc.render.get("stroke", 1.0)))
        canvas.save(sc.outputs["svg"])
        out.say("svg_paths", canvas.paths)
    if "csv" in sc.outputs:
        render.write_csv(curve, sc.outputs["csv"])


def _ts(sc: Scenario, default: str) -> np.ndarray:
    return parse_t_range(sc.t if sc.t is not None else default)


def op_foliate(sc: Scenario, s: Subject, out: Outcome) -> None:
    h = _metric(s)
    g = as_grid(sc.grid)
    ts = _ts(sc, "0:5:0.5")
    rows = []
    for t in ts:
        c = ep.epstein_curve(h.shifted(t), g)
        rows.append([float(t), c.total_length(), c.signed_area()])
    out.lines.append(f"{'t':>8} {'length':>22} {'area':>22}")
    out.lines += [f"{t:8.3f} {length:22.15g} {area:22.15g}" for t, length, area in rows]
    out.data["curves"] = rows
    out.say("embedding_threshold", float(ep.embedding_threshold(h, g)))
    if "svg" in sc.outputs:
        canvas = render.render_foliation(h, ts, g)
        canvas.save(sc.outputs["svg"])
        out.say("svg_paths", canvas.paths)


def op_excess(sc: Scenario, s: Subject, out: Outcome) -> None:
    h = _metric(s)
    h.check_normalized(as_grid(sc.grid))
    g = as_grid(sc.grid)
    ts = _ts(sc, "3:6:1")
    vals = [ep.isoperimetric_excess(h, t, g) for t in ts]
    for t, v in zip(ts, vals):
        out.say(f"excess(t={t:g})", v)
    lim = ep.excess_limit(h, ts, g)
    target = 2 * sch.action_kstar_form(h, g)
    out.say("extrapolated_limit", lim.limit)
    out.say("twice_action", target)
    out.say("limit_error_estimate", lim.error)
    out.check(abs(lim.limit - target))


def op_bilocal(sc: Scenario, s: Subject, out: Outcome) -> None:
    phi = _diffeo(s)
    rng = np.random.default_rng(int(sc.render.get("seed", 0)))
    worst = 0.0
    for _ in range(int(sc.render.get("samples", 200))):
        u, v = rng.uniform(0, TWO_PI, 2)
        worst = max(worst, abs(bl.renormalized_length(phi, u, v) - bl.renormalized_length_formula(phi, u, v)))
    out.say("rl_max_error", worst)
    out.check(worst)
    tri = bl.farey_triangulation(sc.depth)
    obs = bl.observables_from_diffeo(phi, tri)
    out.say("edges", len(tri.edges))
    out.say("observables", len(obs))
    out.data["bundle"] = bl.observable_bundle(tri, obs)


def op_reconstruct(sc: Scenario, s: Subject, out: Outcome) -> None:
    phi = _diffeo(s)
    tri = bl.farey_triangulation(sc.depth)
    obs = bl.observables_from_diffeo(phi, tri)
    rec = bl.reconstruct_from_observables(tri, obs)
    err = bl.round_trip_error(phi, tri, rec)
    out.say("vertices", len(rec.points))
    out.say("max_observable_residual", rec.max_residual)
    out.say("round_trip_error", err)
    out.check(err)
    out.data["points"] = [[tri.angle(k), p.position.real, p.position.imag, p.decoration]
                          for k, p in rec.points.items()]


def op_piecewise(sc: Scenario, s: Subject, out: Outcome) -> None:
    pm = s.piecewise
    if pm is None:
        raise DescriptorError("operation needs a piecewise_moebius descriptor")
    total, lam = pw.distributional_action(pm)
    comp = pw.completed_epstein(pm)
    out.say("jumps", [float(x) for x in lam])
    out.say("sum_jumps", total)
    out.say("length", comp.length())
    out.say("-area_gauss_bonnet", -comp.signed_area())
    out.say("-area_eta", -comp.signed_area("eta"))
    out.say("sum_betas", float(np.sum(comp.betas)))
    out.check(max(abs(total - comp.length()), abs(total + comp.signed_area()),
                  abs(total + comp.signed_area("eta")), abs(np.sum(comp.betas) - TWO_PI)))
    if "svg" in sc.outputs:
        canvas = render.render_completed(comp, pw.carrier_horocycles(pm))
        canvas.save(sc.outputs["svg"])
        out.say("svg_paths", canvas.paths)


def op_nfold(sc: Scenario, s: Subject, out: Outcome) -> None:
    phi = _diffeo(s)
    g = as_grid(sc.grid)
    for n in sc.n:
        cover = phi.nfold(int(n))
        curve = ep.epstein_curve_of_cover(cover, g)
        val = sch.action_nfold(phi, int(n), g)
        length = curve.total_length()
        area = -curve.signed_area() - TWO_PI * (int(n) - 1)
        out.say(f"n={n} action", val)
        out.say(f"n={n} length", length)
        out.say(f"n={n} -area-2pi(n-1)", area)
        out.check(_max_gap([val, length, area]))


def op_dual(sc: Scenario, s: Subject, out: Outcome) -> None:
    h = _metric(s)
    g = as_grid(sc.grid)
    curve = ep.epstein_curve(h, g)
    rep = ep.dual_quantities(curve)
    action = sch.action_kstar_form(h, g)
    out.say("action", action)
    out.say("dual_total_curvature", rep.curvature)
    out.say("2pi-dual_length", TWO_PI - rep.length)
    out.say("density_error_spectral", float(np.max(np.abs(rep.dl_dual - curve.kdl))))
    out.say("density_error_fd", float(np.max(np.abs(rep.dl_dual_fd - curve.kdl))))
    out.check(_max_gap([action, rep.curvature, TWO_PI - rep.length]))


def op_distort(sc: Scenario, s: Subject, out: Outcome) -> None:
    f = s.analytic
    if f is None:
        raise DescriptorError("operation needs an analytic map (moebius, blaschke, power, exp_odd)")
    rep = dist.distortion_limit(f)
    action = sch.action_direct(f.to_diffeo(), as_grid(sc.grid))
    out.say("limit", rep.limit)
    out.say("error_estimate", rep.error)
    out.say("-2/3*action", -2 * action / 3)
    out.check(abs(rep.limit + 2 * action / 3))
    if f.degree == 1:
        area = dist.area_distortion_rate(f)
        out.say("rescaled_area_limit", area.limit)


OPS = {name: globals()[f"op_{name}"] for name in OPERATIONS}


# driver -----------------------------------------------------------------------------

def run(sc: Scenario, stream=None) -> int:
    """Execute a scenario; returns the exit status."""
    stream = stream or sys.stdout
    out = Outcome()
    try:
        OPS[sc.operation](sc, sc.subject, out)
    except DescriptorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except EpsteinError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    tol = sc.tol if sc.tol is not None else DEFAULT_TOL[sc.operation]
    status = EXIT_OK
    if tol is not None and out.discrepancy is not None:
        ok = out.discrepancy < tol
        out.lines.append(f"{'check':<28} {'ok' if ok else 'FAILED'} ({out.discrepancy:.3g} vs tol {tol:g})")
        status = EXIT_OK if ok else EXIT_TOLERANCE
    print("\n".join(out.lines), file=stream)
    if "json" in sc.outputs:
        payload = {"schema": SCHEMA, "scenario": sc.to_json(), "results": out.data,
                   "discrepancy": out.discrepancy, "status": status}
        Path(sc.outputs["json"]).write_text(json.dumps(payload, indent=2, default=_jsonable))
    return status


def _jsonable(v):
    if isinstance(v, np.generic):
        return v.item()
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, complex):
        return [v.real, v.imag]
    raise TypeError(type(v).__name__)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="epstein-action",
                                description="Schwarzian action and Epstein curves of circle maps.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in OPERATIONS:
        q = sub.add_parser(name)
        q.add_argument("--input", required=True, help="descriptor JSON file (or inline JSON)")
        q.add_argument("--grid", type=int, default=2048)
        q.add_argument("--t", dest="t", help="t-range a:b:step or a single value")
        q.add_argument("--depth", type=int, default=5)
        q.add_argument("--n", default="2,3,5", help="cover degrees for nfold")
        q.add_argument("--horocycles", type=int, default=80)
        q.add_argument("--svg")
        q.add_argument("--csv")
        q.add_argument("--json")
        q.add_argument("--tol", type=float)
    r = sub.add_parser("run", help="execute a scenario file")
    r.add_argument("scenario")
    return p


def scenario_from_args(args) -> Scenario:
    if args.command == "run":
        return load_scenario(args.scenario)
    try:
        n = tuple(int(x) for x in str(args.n).split(","))
    except ValueError:
        raise DescriptorError(f"bad --n {args.n!r}") from None
    outputs = {k: getattr(args, k) for k in ("svg", "csv", "json") if getattr(args, k)}
    return Scenario(operation=args.command, input=read_json(args.input), grid=args.grid, t=args.t,
                    depth=args.depth, tol=args.tol, outputs=outputs,
                    render={"horocycles": args.horocycles}, n=n)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        sc = scenario_from_args(args)
    except DescriptorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    return run(sc)


if __name__ == "__main__":
    sys.exit(main())
