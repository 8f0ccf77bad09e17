"""Decorated horocycles, renormalized lengths and Farey reconstruction.

The horocycle attached to ``phi(u)`` is the one of the metric ``phi_* dtheta``,
whose density at ``phi(u)`` is ``1/|phi'(u)|``.  Angles on the source circle
are passed as real numbers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd

import numpy as np
from scipy.optimize import brentq

from .boundary import TWO_PI, CircleDiffeo
from .errors import DomainError, InconsistentObservablesError, ResourceError
from .hyperbolic import Horocycle, MoebiusDisk, busemann, geodesic_circle

DEPTH_CAP = 20


@dataclass(frozen=True)
class DecoratedPoint:
    """Boundary point with decoration ``|phi'(u)|``."""

    position: complex
    decoration: float

    def __post_init__(self):
        if not self.decoration > 0:
            raise DomainError("decoration must be positive")

    @property
    def horocycle(self) -> Horocycle:
        return Horocycle(self.position, 1.0 / self.decoration)


@dataclass(frozen=True)
class BilocalEdge:
    u: float
    v: float
    observable: float

    @property
    def rl(self) -> float:
        return float(-np.log(4 * self.observable**2))


def decorate(phi: CircleDiffeo, u: float) -> DecoratedPoint:
    j = phi.jet(np.asarray([u], dtype=float))
    return DecoratedPoint(complex(np.exp(1j * j.value[0])), float(j.d1[0]))


def lambda_observable(a: DecoratedPoint, b: DecoratedPoint) -> float:
    """``sqrt(d_a d_b) / |p_a - p_b|`` for arbitrary decorated points."""
    return float(np.sqrt(a.decoration * b.decoration) / abs(a.position - b.position))


def _distinct(u, v):
    if abs(np.angle(np.exp(1j * (u - v)))) < 1e-14:
        raise DomainError("endpoints must be distinct")


def bilocal(phi: CircleDiffeo, u: float, v: float) -> float:
    """``sqrt(phi'(u) phi'(v)) / |phi(u) - phi(v)|``."""
    _distinct(u, v)
    return lambda_observable(decorate(phi, u), decorate(phi, v))


def renormalized_length_formula(phi: CircleDiffeo, u: float, v: float) -> float:
    """Closed form ``-log(4 phi'(u) phi'(v) / |phi(u) - phi(v)|^2)``."""
    return float(-np.log(4 * bilocal(phi, u, v) ** 2))


def _foot(horo: Horocycle, other: complex) -> complex:
    """Second intersection of a horocycle with the geodesic from its base to ``other``."""
    p = horo.base
    c_geo, _ = geodesic_circle(p, other)
    if c_geo is None:
        return (horo.decoration - 1) / (horo.decoration + 1) * p
    # both circles pass through p; the other crossing is p reflected in the line of centers
    c_h = horo.center
    w = (c_geo - c_h) / abs(c_geo - c_h)
    return c_h + w * w * np.conj(p - c_h)


def truncation_points(a: DecoratedPoint, b: DecoratedPoint) -> tuple[complex, complex]:
    """Where the geodesic between the two bases meets the two horocycles."""
    return _foot(a.horocycle, b.position), _foot(b.horocycle, a.position)


def renormalized_length_decorated(a: DecoratedPoint, b: DecoratedPoint) -> float:
    """Signed distance between the horocycles along their common geodesic."""
    fa, fb = truncation_points(a, b)
    return float(busemann(a.position, fb) - busemann(a.position, fa))


def renormalized_length(phi: CircleDiffeo, u: float, v: float) -> float:
    """Renormalized length computed by truncating the geodesic with horocycles."""
    _distinct(u, v)
    return renormalized_length_decorated(decorate(phi, u), decorate(phi, v))


def kinematic_density(phi: CircleDiffeo, n: int = 64) -> np.ndarray:
    """``exp(-RL)/4`` on an ``n x n`` grid of endpoint angles (diagonal set to nan)."""
    th = TWO_PI * np.arange(n) / n
    j = phi.jet(th)
    p = np.exp(1j * j.value)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.outer(j.d1, j.d1) / np.abs(p[:, None] - p[None, :]) ** 2
    np.fill_diagonal(out, np.nan)
    return out


# Farey triangulation -------------------------------------------------------------

Vertex = tuple  # (p, q) with q >= 0 in lowest terms; (1, 0) is infinity


def _mediant(a: Vertex, b: Vertex) -> Vertex:
    p, q = a[0] + b[0], a[1] + b[1]
    g = gcd(p, q)
    return (p // g, q // g)


def cayley(vertex: Vertex) -> complex:
    """Extended real ``p/q`` to the circle via ``x -> (i - x)/(i + x)``."""
    p, q = vertex
    return complex((1j * q - p) / (1j * q + p))


@dataclass
class IdealTriangulation:
    """Finite piece of the Farey tessellation around the root edge ``(0, inf)``.

    ``steps`` lists ``(triangle, u, v, w)`` in tree order: ``(u, v)`` is the edge
    through which the triangle is reached and ``w`` its new vertex, with
    ``u, v, w`` counterclockwise.
    """

    depth: int
    vertices: dict
    edges: list
    triangles: list
    root: tuple
    steps: list
    dual_edges: list = field(default_factory=list)

    def angle(self, v: Vertex) -> float:
        return float(np.angle(self.vertices[v]) % TWO_PI)

    def point(self, v: Vertex) -> complex:
        return self.vertices[v]

    def interior_edges(self):
        """Edges shared by two triangles, with the two opposite vertices."""
        seen = {}
        for tri in self.triangles:
            for i in range(3):
                e = frozenset((tri[i], tri[(i + 1) % 3]))
                seen.setdefault(e, []).append(tri[(i + 2) % 3])
        return {e: opp for e, opp in seen.items() if len(opp) == 2}

    def diagonals(self) -> list:
        """Flip diagonals of interior edges (redundant observables)."""
        return [tuple(opp) for opp in self.interior_edges().values()]

    def dual_is_tree(self) -> bool:
        n = len(self.triangles)
        if len(self.dual_edges) != n - 1:
            return False
        adj = {i: [] for i in range(n)}
        for a, b in self.dual_edges:
            adj[a].append(b)
            adj[b].append(a)
        seen, stack = {0}, [0]
        while stack:
            for b in adj[stack.pop()]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return len(seen) == n

    def crossing_pairs(self) -> int:
        """Number of pairs of edges whose geodesics cross (interleaved endpoints)."""
        ang = [(self.angle(a), self.angle(b)) for a, b in self.edges]
        count = 0
        for i in range(len(ang)):
            a1, b1 = sorted(ang[i])
            for j in range(i + 1, len(ang)):
                a2, b2 = ang[j]
                if len({a1, b1, a2, b2}) < 4:
                    continue
                in1 = a1 < a2 < b1
                in2 = a1 < b2 < b1
                count += in1 != in2
        return count


def farey_triangulation(depth: int, cap: int = DEPTH_CAP) -> IdealTriangulation:
    """Farey triangles reached from the root edge ``(0, inf)`` within ``depth`` steps.

    Depth 0 is the two triangles ``{0, 1, inf}`` and ``{-1, 0, inf}``; every
    further level subdivides each outer edge by a mediant, so depth ``d`` has
    ``2**(d + 2) - 2`` triangles.
    """
    if depth < 0:
        raise DomainError("depth must be non-negative")
    if depth > cap:
        raise ResourceError(f"depth {depth} exceeds cap {cap}")
    zero, one, minus, inf = (0, 1), (1, 1), (-1, 1), (1, 0)
    # +inf and -inf are the same vertex; the sign only matters for mediants
    neg_inf = (-1, 0)

    def canon(v):
        return inf if v == neg_inf else v

    vertices = {}
    for v in (zero, one, minus, inf):
        vertices[v] = cayley(v)
    triangles, steps, dual, edges = [], [], [], [(zero, inf)]
    # triangle reached through oriented edge (u, v) whose apex w lies on the ccw arc v -> u
    queue = deque()
    # ccw order on the circle is 0 -> 1 -> inf -> -1; root triangles as (u, v, w) with w new
    for u, v, w in ((inf, zero, one), (zero, neg_inf, minus)):
        idx = len(triangles)
        triangles.append((canon(u), canon(v), w))
        steps.append((idx, canon(u), canon(v), w))
        if idx:
            dual.append((0, idx))
        edges += [(canon(v), w), (w, canon(u))]
        queue.append((idx, 0, (v, w), (w, u)))
    # each queue item: triangle index, level, and its two outer edges as raw (signed) vertex pairs
    while queue:
        idx, level, *outer = queue.popleft()
        if level >= depth:
            continue
        for a, b in outer:
            m = _mediant(a, b)
            vertices[m] = cayley(m)
            new = len(triangles)
            # (a, b) is an edge of triangle idx traversed ccw; the new triangle uses (b, a)
            triangles.append((canon(b), canon(a), m))
            steps.append((new, canon(b), canon(a), m))
            dual.append((idx, new))
            edges += [(canon(a), m), (m, canon(b))]
            queue.append((new, level + 1, (a, m), (m, b)))
    return IdealTriangulation(depth, vertices, edges, triangles, (zero, inf), steps, dual)


# reconstruction ----------------------------------------------------------------------

def _key(a, b):
    return frozenset((a, b))


def observables_from_diffeo(phi: CircleDiffeo, tri: IdealTriangulation, diagonals: bool = True) -> dict:
    """Bi-local observables on every triangulation edge (and flip diagonals)."""
    pairs = list(tri.edges) + (tri.diagonals() if diagonals else [])
    return {_key(a, b): bilocal(phi, tri.angle(a), tri.angle(b)) for a, b in pairs}


@dataclass
class Reconstruction:
    points: dict
    residuals: dict

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)


def _solve_apex(pu, pv, du, dv, b, c, tri_label):
    """Place the apex on the ccw arc from ``pv`` to ``pu`` (see module notes)."""
    av = np.angle(pv)
    gap = (np.angle(pu) - av) % TWO_PI
    target = 2 * np.log(b / c)

    def f(s):
        pw = np.exp(1j * (av + s))
        return np.log(dv * abs(pu - pw) ** 2 / (du * abs(pv - pw) ** 2)) - target

    eps = gap * 1e-12
    lo, hi = eps, gap - eps
    flo, fhi = f(lo), f(hi)
    if not (np.isfinite(flo) and np.isfinite(fhi)) or flo * fhi > 0:
        raise InconsistentObservablesError(f"no admissible apex for triangle {tri_label}", triangle=tri_label)
    s = brentq(f, lo, hi, xtol=1e-15, maxiter=200)
    pw = np.exp(1j * (av + s))
    dw = b * b * abs(pv - pw) ** 2 / dv
    return pw, dw


def reconstruct_from_observables(tri: IdealTriangulation, obs: dict, tol: float = 1e-8) -> Reconstruction:
    """Recover decorated vertex images from edge observables.

    Normalization: the root endpoints are fixed and the first root endpoint has
    decoration 1.  Every supplied observable not used by the tree walk (for
    instance flip diagonals) is re-checked; a relative mismatch above ``tol``
    raises :class:`InconsistentObservablesError`.
    """
    u0, v0 = tri.root

    def get(a, b):
        try:
            return float(obs[_key(a, b)])
        except KeyError:
            raise InconsistentObservablesError(f"missing observable for edge {(a, b)}") from None

    pts = {u0: DecoratedPoint(tri.point(u0), 1.0)}
    o = get(u0, v0)
    pts[v0] = DecoratedPoint(tri.point(v0), o * o * abs(tri.point(u0) - tri.point(v0)) ** 2)
    for idx, u, v, w in tri.steps:
        a, b_ = pts[u], pts[v]
        pw, dw = _solve_apex(a.position, b_.position, a.decoration, b_.decoration,
                             get(v, w), get(w, u), tri.triangles[idx])
        pts[w] = DecoratedPoint(pw, dw)
    residuals = {}
    for e, value in obs.items():
        a, b = tuple(e)
        residuals[e] = abs(lambda_observable(pts[a], pts[b]) - value) / value
    bad = {e: r for e, r in residuals.items() if r > tol}
    if bad:
        e, r = max(bad.items(), key=lambda kv: kv[1])
        raise InconsistentObservablesError(
            f"{len(bad)} observables inconsistent; worst edge {tuple(e)} off by {r:.3g}",
            triangle=tuple(e), residual=r)
    return Reconstruction(pts, residuals)


def normalizing_moebius(phi: CircleDiffeo, u0: float, v0: float, probe: float | None = None) -> MoebiusDisk:
    """The unique ``alpha`` with ``alpha(phi(u0)) = u0``, ``alpha(phi(v0)) = v0`` and ``|(alpha o phi)'(u0)| = 1``.

    Here ``u0, v0`` are angles and the targets are the points ``exp(i u0)``, ``exp(i v0)``.
    """
    zu, zv = np.exp(1j * u0), np.exp(1j * v0)
    if probe is None:
        gap = (v0 - u0) % TWO_PI
        probe = u0 + 0.5 * gap
    zw = np.exp(1j * probe)
    m0 = MoebiusDisk.three_point(phi(np.array([u0, v0, probe])), (zu, zv, zw))
    k0 = abs(m0.derivative(phi(u0))) * float(phi.jet(np.asarray([u0])).d1[0])
    # hyperbolic translation along the geodesic (zu, zv), conjugated to (1, -1)
    c = MoebiusDisk.three_point((zu, zv, zw), (1.0, -1.0, 1j))
    s = (k0 - 1.0) / (k0 + 1.0)
    shift = MoebiusDisk(1.0, s)
    return c.inverse() @ shift @ c @ m0


def observable_bundle(tri: IdealTriangulation, obs: dict) -> dict:
    """JSON-ready bundle of observables keyed by endpoint angles."""
    u0, v0 = tri.root
    edges = []
    for e, value in obs.items():
        a, b = sorted(tuple(e))
        edges.append({"u": tri.angle(a), "v": tri.angle(b), "O": float(value)})
    return {"root": [tri.angle(u0), tri.angle(v0)], "depth": tri.depth, "edges": edges}


def observables_from_bundle(tri: IdealTriangulation, bundle: dict, atol: float = 1e-9) -> dict:
    """Map a JSON bundle back onto triangulation vertices by matching angles."""
    keys = list(tri.vertices)
    angles = np.array([tri.angle(k) for k in keys])

    def find(theta):
        d = np.abs(np.angle(np.exp(1j * (angles - float(theta)))))
        i = int(np.argmin(d))
        if d[i] > atol:
            raise DomainError(f"angle {theta} is not a triangulation vertex")
        return keys[i]

    return {_key(find(e["u"]), find(e["v"])): float(e["O"]) for e in bundle["edges"]}


def normalized_images(phi: CircleDiffeo, tri: IdealTriangulation) -> dict:
    """Decorated vertex images of ``alpha o phi`` in the reconstruction normalization."""
    u0, v0 = tri.root
    g = phi.post_compose(normalizing_moebius(phi, tri.angle(u0), tri.angle(v0)))
    keys = list(tri.vertices)
    j = g.jet(np.array([tri.angle(k) for k in keys]))
    return {k: DecoratedPoint(complex(np.exp(1j * val)), float(d)) for k, val, d in zip(keys, j.value, j.d1)}


def round_trip_error(phi: CircleDiffeo, tri: IdealTriangulation, rec: Reconstruction) -> float:
    """Largest deviation of reconstructed positions and decorations from the normalized truth."""
    truth = normalized_images(phi, tri)
    return max(max(abs(p.position - truth[k].position), abs(p.decoration - truth[k].decoration))
               for k, p in rec.points.items())
