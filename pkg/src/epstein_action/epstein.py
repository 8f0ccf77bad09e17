"""Epstein curves: envelopes of the horocycle family of a boundary metric.

For ``h = exp(sigma) dtheta`` the horocycle at ``exp(i theta)`` has metric
density ``exp(sigma(theta))``.  The envelope point, its outward unit normal
and the signed length / curvature densities depend only on the 2-jet of
``sigma``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .boundary import TWO_PI, BoundaryMetric, CircleDiffeo, as_grid, integrate_periodic
from .errors import DomainError, ExcludedRangeError, NormalizationError, PreconditionError
from .extrapolate import Extrapolation, richardson
from .hyperbolic import circulation, circulation_smooth, dual_frame, lorentz, tangent_to_minkowski, to_minkowski

_K_GUARD = 1e-8


def frame_arrays(theta, sigma, sigma_t, sigma_tt):
    """Vectorized envelope data from the 2-jet of ``sigma`` at boundary angles.

    Returns ``(point, normal, dl, kdl, kstar)``; ``normal`` is a Euclidean
    tangent vector of hyperbolic length one, the densities are per ``dtheta``.
    """
    e = np.exp(sigma)
    rot = np.exp(1j * theta)
    den = sigma_t**2 + (e + 1) ** 2
    point = ((sigma_t**2 + e * e - 1) + 2j * sigma_t) * rot / den
    normal = (2 * e * (sigma_t**2 - (e + 1) ** 2) + 4j * sigma_t * e * (e + 1)) * rot / den**2
    em = np.exp(-sigma)
    bend = sigma_tt - 0.5 * sigma_t**2
    dl = em * bend + np.sinh(sigma)
    kdl = -em * bend + np.cosh(sigma)
    kstar = em * em * (2 * sigma_tt - sigma_t**2 - 1)
    return point, normal, dl, kdl, kstar


@dataclass(frozen=True)
class EpsteinFrame:
    """Envelope point with normal and densities at one boundary angle."""

    theta: float
    point: complex
    normal: complex
    dl_density: float
    kdl_density: float
    kstar: float

    @property
    def curvature(self) -> float:
        """Geodesic curvature ``k``; ``nan`` at non-immersed points."""
        if abs(1 + self.kstar) <= _K_GUARD:
            return float("nan")
        return (1 - self.kstar) / (1 + self.kstar)

    @property
    def normal_direction(self) -> complex:
        return self.normal / abs(self.normal)


@dataclass
class EpsteinCurve:
    """Sampled Epstein curve.

    ``theta`` holds boundary angles (a lift, possibly non-uniform) and
    ``weights`` the ``dtheta`` measure carried by each node, so that totals are
    ``sum(density * weights)``.
    """

    theta: np.ndarray
    point: np.ndarray
    normal: np.ndarray
    dl: np.ndarray
    kdl: np.ndarray
    kstar: np.ndarray
    weights: np.ndarray
    degree: int = 1
    metric: BoundaryMetric | None = field(default=None, repr=False)
    parameter: np.ndarray | None = None

    def __len__(self):
        return self.theta.size

    def frame(self, i: int) -> EpsteinFrame:
        return EpsteinFrame(float(self.theta[i]), complex(self.point[i]), complex(self.normal[i]),
                            float(self.dl[i]), float(self.kdl[i]), float(self.kstar[i]))

    @property
    def frames(self) -> list[EpsteinFrame]:
        return [self.frame(i) for i in range(len(self))]

    @property
    def curvature(self) -> np.ndarray:
        """``k = (1 - k*)/(1 + k*)``, ``nan`` where the curve is not immersed."""
        out = np.full(self.kstar.shape, np.nan)
        ok = np.abs(1 + self.kstar) > _K_GUARD
        out[ok] = (1 - self.kstar[ok]) / (1 + self.kstar[ok])
        return out

    def total_length(self) -> float:
        return float(np.sum(self.dl * self.weights))

    def total_curvature(self) -> float:
        return float(np.sum(self.kdl * self.weights))

    def metric_length(self) -> float:
        return float(np.sum(np.exp(self.sigma_values()) * self.weights))

    def sigma_values(self) -> np.ndarray:
        # dl + kdl = exp(sigma)
        return np.log(self.dl + self.kdl)

    def signed_area(self, route: str = "gauss-bonnet") -> float:
        """Signed enclosed area.

        ``"gauss-bonnet"`` uses ``int k dl - 2 pi degree``; ``"eta"`` integrates
        the area primitive along the polyline of frame points (second order in
        the grid spacing); ``"eta-spectral"`` integrates it along the
        trigonometric interpolant of the points.
        """
        if route == "gauss-bonnet":
            return self.total_curvature() - TWO_PI * self.degree
        if route == "eta":
            return circulation(self.point)
        if route == "eta-spectral":
            return circulation_smooth(self.point, _spectral_derivative(self.point))
        raise ValueError(f"unknown area route {route!r}")


def _spectral_derivative(values):
    """Derivative in the uniform parameter of one period of samples."""
    n = values.shape[0]
    k = np.fft.fftfreq(n, 1.0 / n)
    if n % 2 == 0:
        k[n // 2] = 0.0
    return np.fft.ifft(1j * k * np.fft.fft(values))


# construction -----------------------------------------------------------------

def epstein_frame(h: BoundaryMetric, theta: float) -> EpsteinFrame:
    s, s1, s2 = h.jet(np.asarray([theta], dtype=float))
    p, n, dl, kdl, ks = frame_arrays(np.asarray([theta]), s, s1, s2)
    return EpsteinFrame(float(theta), complex(p[0]), complex(n[0]), float(dl[0]), float(kdl[0]), float(ks[0]))


def epstein_curve(h: BoundaryMetric, grid=None) -> EpsteinCurve:
    """Frames of ``Ep_h`` on a uniform angle grid."""
    g = as_grid(grid)
    th = g.nodes
    s, s1, s2 = h.jet(th)
    p, n, dl, kdl, ks = frame_arrays(th, s, s1, s2)
    return EpsteinCurve(th, p, n, dl, kdl, ks, g.weights, 1, h, th)


def epstein_curve_of_cover(phi: CircleDiffeo, grid=None) -> EpsteinCurve:
    """Epstein curve of ``phi_* dtheta`` parametrized through ``phi``.

    Valid for covers of any degree: the metric is evaluated branch by branch,
    with ``sigma = -log(lift')`` at the image angle ``lift(x)``.
    """
    g = as_grid(grid)
    x = g.nodes
    image, d1, (p, n, dl, kdl, ks) = cover_frame_arrays(phi, x)
    return EpsteinCurve(image, p, n, dl, kdl, ks, d1 * g.weights, phi.degree, None, x)


def cover_frame_arrays(phi: CircleDiffeo, x):
    """Image angles, ``lift'`` and frame arrays of ``phi_* dtheta`` at source angles ``x``."""
    j = phi.jet(np.asarray(x, dtype=float))
    if np.any(j.d1 <= 0):
        raise PreconditionError("cover must be orientation preserving")
    s = -np.log(j.d1)
    s1 = -j.d2 / j.d1**2
    s2 = -j.d3 / j.d1**3 + 2 * j.d2**2 / j.d1**4
    return j.value, j.d1, frame_arrays(j.value, s, s1, s2)


def scale_metric(h: BoundaryMetric, t: float) -> BoundaryMetric:
    """``sigma -> sigma + t``: the equidistant curve at distance ``t``."""
    return h.shifted(t)


def total_length(curve: EpsteinCurve) -> float:
    return curve.total_length()


def total_curvature(curve: EpsteinCurve) -> float:
    return curve.total_curvature()


def signed_area(curve: EpsteinCurve, route: str = "gauss-bonnet") -> float:
    return curve.signed_area(route)


# equidistant foliation --------------------------------------------------------

@dataclass(frozen=True)
class ScalingReport:
    t: float
    length: float
    area: float
    predicted_length: float
    predicted_area: float

    @property
    def residuals(self) -> tuple[float, float]:
        return abs(self.length - self.predicted_length), abs(self.area - self.predicted_area)


def scaling_laws_check(h: BoundaryMetric, t: float, grid=None) -> ScalingReport:
    """Compare recomputed ``L_t, A_t`` with their closed forms in ``t``."""
    g = as_grid(grid)
    h.check_normalized(g)
    area0 = epstein_curve(h, g).signed_area()
    c = epstein_curve(h.shifted(t), g)
    return ScalingReport(
        float(t), c.total_length(), c.signed_area(),
        TWO_PI * np.sinh(t) - np.exp(-t) * area0,
        TWO_PI * (np.cosh(t) - 1) + np.exp(-t) * area0,
    )


def isoperimetric_profile(area):
    """Least perimeter enclosing hyperbolic area ``area`` (attained by round disks)."""
    a = np.asarray(area, dtype=float) / TWO_PI + 1
    return TWO_PI * np.sqrt(a * a - 1)


def isoperimetric_excess(h: BoundaryMetric, t: float, grid=None) -> float:
    """``exp(t) (L_t - J(A_t))`` for the equidistant curve at distance ``t``."""
    g = as_grid(grid)
    h.check_normalized(g)
    c = epstein_curve(h.shifted(t), g)
    area = c.signed_area()
    if area <= 0:
        raise ExcludedRangeError(f"signed area {area!r} is not positive at t={t}")
    return float(np.exp(t) * (c.total_length() - isoperimetric_profile(area)))


def excess_limit(h: BoundaryMetric, ts=(3.0, 4.0, 5.0, 6.0), grid=None) -> Extrapolation:
    """Extrapolated ``t -> infinity`` limit of the isoperimetric excess.

    The excess behaves like ``limit + O(exp(-2t))``; extrapolation is in
    powers of ``exp(-2t)``.
    """
    ts = np.asarray(ts, dtype=float)
    vals = [isoperimetric_excess(h, t, grid) for t in ts]
    return richardson(np.exp(-ts), vals, power=2.0)


def embedding_threshold(h: BoundaryMetric, grid=None) -> float:
    """Smallest ``t`` with ``dl_t > 0`` at every grid node.

    ``dl_t = (exp(t) + exp(-t) k*) h / 2``, so the threshold is
    ``log(max(-k*)) / 2`` (or ``-inf`` when ``k* >= 0`` everywhere).
    """
    ks = h.kstar(as_grid(grid).nodes)
    m = np.max(-ks)
    return 0.5 * np.log(m) if m > 0 else -np.inf


def curvature_at_infinity_estimate(h: BoundaryMetric, t: float, theta):
    """``exp(2t)(1 - k_t)/2``, which tends to ``k*`` as ``t`` grows.

    ``dl_t - kdl_t`` is formed as ``exp(-sigma_t)(2 sigma'' - sigma'^2 - 1)``
    rather than by subtracting two quantities of size ``exp(t)``.
    """
    theta = np.asarray(theta, dtype=float)
    s, s1, s2 = h.shifted(t).jet(theta)
    _, _, dl, _, _ = frame_arrays(theta, s, s1, s2)
    gap = np.exp(-s) * (2 * s2 - s1**2 - 1)
    return np.exp(2 * t) * gap / (2 * dl)


# non-immersion -------------------------------------------------------------------

@dataclass(frozen=True)
class NonImmersed:
    """Angles where ``1 + k*`` vanishes (the curve has zero speed there)."""

    angles: np.ndarray
    everywhere: bool = False

    def __len__(self):
        return self.angles.size

    def __bool__(self):
        return self.everywhere or self.angles.size > 0


def find_non_immersed(h: BoundaryMetric, grid=None, check: bool = True) -> NonImmersed:
    """Locate sign changes of ``1 + k*`` and refine each root with Brent's method.

    With ``check`` the metric must have length ``2 pi``, as for metrics coming
    from diffeomorphisms, where at least one such point always exists.
    """
    g = as_grid(grid)
    if check:
        h.check_normalized(g)
    th = g.nodes

    def f(x):
        return 1.0 + h.kstar(np.asarray(x, dtype=float))

    vals = f(th)
    if np.max(np.abs(vals)) < 1e-10:
        return NonImmersed(th.copy(), True)
    roots = []
    nxt = np.roll(vals, -1)
    for i in np.flatnonzero(vals == 0):
        roots.append(th[i])
    for i in np.flatnonzero(vals * nxt < 0):
        a, b = th[i], th[i] + TWO_PI / g.n
        roots.append(brentq(lambda x: float(f(x)), a, b, xtol=1e-15) % TWO_PI)
    return NonImmersed(np.sort(np.asarray(roots, dtype=float)), False)


def immersion_crossings(kstar: float, ts) -> int:
    """Number of sign changes of ``exp(t) + exp(-t) k*`` along a sampled ``t`` range."""
    ts = np.asarray(ts, dtype=float)
    v = np.exp(ts) + np.exp(-ts) * kstar
    return int(np.sum(np.signbit(v[:-1]) != np.signbit(v[1:])))


# de Sitter dual ----------------------------------------------------------------------

@dataclass(frozen=True)
class DualReport:
    """Dual totals from spectral densities, plus finite-difference densities for cross-checks."""

    length: float
    curvature: float
    dl_dual: np.ndarray
    kdl_dual: np.ndarray
    dl_dual_fd: np.ndarray
    kdl_dual_fd: np.ndarray

    @property
    def action(self) -> float:
        return self.curvature


_CENTRAL = {
    4: (2 / 3, -1 / 12),
    6: (3 / 4, -3 / 20, 1 / 60),
    8: (4 / 5, -1 / 5, 4 / 105, -1 / 280),
}


def _periodic_derivative(v, step, order: int = 8):
    """Central difference of the given even order along the first axis."""
    try:
        coef = _CENTRAL[order]
    except KeyError:
        raise DomainError(f"finite-difference order must be one of {sorted(_CENTRAL)}") from None
    out = np.zeros_like(v)
    for j, c in enumerate(coef, start=1):
        out += c * (np.roll(v, -j, 0) - np.roll(v, j, 0))
    return out / step


def _periodic_derivative_spectral(v, step):
    n = v.shape[0]
    k = np.fft.fftfreq(n, 1.0 / n)
    shape = (n,) + (1,) * (v.ndim - 1)
    d = np.fft.ifft(1j * k.reshape(shape) * np.fft.fft(v, axis=0), axis=0).real
    return d * (TWO_PI / n) / step


def minkowski_frames(curve: EpsteinCurve):
    """Hyperboloid points, unit normals and dual tangents along the curve."""
    x = to_minkowski(curve.point)
    nvec = tangent_to_minkowski(curve.point, curve.normal)
    tvec = dual_frame(x, nvec, tol=1e-7)
    return x, nvec, tvec


def dual_quantities(curve: EpsteinCurve, fd_order: int = 8) -> DualReport:
    """Length and total curvature of the de Sitter dual curve.

    The dual length density is ``dl_perp = <N', -T>`` and
    ``k_perp dl_perp = <-x', -T>``, with derivatives taken in the Minkowski
    model.  Totals integrate the spectral densities; the ``*_fd`` arrays use a
    central difference of order ``fd_order``.
    """
    if curve.degree != 1 or curve.parameter is None:
        raise PreconditionError("dual curve needs a closed degree-one curve on a uniform grid")
    x, nvec, tvec = minkowski_frames(curve)
    step = TWO_PI / len(curve)
    dpar = curve.weights / step  # dtheta per unit parameter

    def densities(deriv):
        return lorentz(deriv(nvec), -tvec) / dpar, lorentz(-deriv(x), -tvec) / dpar

    dl, kdl = densities(lambda v: _periodic_derivative_spectral(v, step))
    dl_fd, kdl_fd = densities(lambda v: _periodic_derivative(v, step, fd_order))
    return DualReport(float(np.sum(dl * curve.weights)), float(np.sum(kdl * curve.weights)),
                      dl, kdl, dl_fd, kdl_fd)
