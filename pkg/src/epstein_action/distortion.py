"""Conformal distortion of round circles under analytic circle maps.

For ``f`` analytic near the unit circle with ``f(S^1) = S^1``, the pulled-back
hyperbolic metric is ``exp(2 sigma)`` times the disk metric with

    sigma(z) = log|f'(z)| + log(1 - |z|^2) - log(1 - |f(z)|^2).

``distortion_integral`` evaluates ``D(r) = 2r/(1 - r^2) * int d_r sigma dtheta``
on the circle of radius ``r``; its limit as ``r -> 1`` is ``-(2/3)`` times the
Schwarzian action of the boundary map.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .boundary import TWO_PI, CircleDiffeo
from .errors import DomainError, PreconditionError, SingularMapError
from .extrapolate import Extrapolation, empirical_order, richardson
from .hyperbolic import MoebiusDisk, circulation_smooth

DEFAULT_LEVELS = tuple(range(3, 13))


@dataclass
class AnalyticCircleMap:
    """Analytic map on an annulus around ``S^1`` preserving the circle.

    ``d`` holds the map and its first three complex derivatives.
    """

    d: tuple
    degree: int
    kind: str = "analytic"
    r0: float = 0.0

    def __call__(self, z):
        return self.d[0](np.asarray(z, dtype=complex))

    def derivative(self, z, order: int = 1):
        return self.d[order](np.asarray(z, dtype=complex))

    def check_circle(self, n: int = 1024, tol: float = 1e-12) -> None:
        z = np.exp(1j * TWO_PI * np.arange(n) / n)
        if np.max(np.abs(np.abs(self(z)) - 1)) > tol:
            raise PreconditionError("map does not preserve the unit circle")

    # constructors
    @classmethod
    def power(cls, n: int) -> "AnalyticCircleMap":
        if n < 1:
            raise DomainError("power must be positive")
        fs = (lambda z: z**n, lambda z: n * z ** (n - 1),
              lambda z: n * (n - 1) * z ** (n - 2), lambda z: n * (n - 1) * (n - 2) * z ** (n - 3))
        return cls(fs, n, "power")

    @classmethod
    def moebius(cls, m: MoebiusDisk) -> "AnalyticCircleMap":
        a, b = m.a, m.b
        cb, ca = np.conj(b), np.conj(a)
        fs = (lambda z: (a * z + b) / (cb * z + ca), lambda z: 1 / (cb * z + ca) ** 2,
              lambda z: -2 * cb / (cb * z + ca) ** 3, lambda z: 6 * cb**2 / (cb * z + ca) ** 4)
        return cls(fs, 1, "moebius", abs(b) / abs(a) if abs(b) else 0.0)

    @classmethod
    def blaschke(cls, zeros) -> "AnalyticCircleMap":
        """``prod (z - a)/(1 - conj(a) z)``; derivatives via logarithmic derivatives."""
        zs = [complex(a) for a in zeros]
        if not zs or any(abs(a) >= 1 for a in zs):
            raise DomainError("zeros must lie in the open disk")

        def f(z):
            return np.prod([(z - a) / (1 - np.conj(a) * z) for a in zs], axis=0)

        def logd(z, k):
            # k-th derivative of log f
            out = 0
            c = factorial(k - 1)
            for a in zs:
                ca = np.conj(a)
                out = out + (-1) ** (k - 1) * c / (z - a) ** k + c * ca**k / (1 - ca * z) ** k
            return out

        def d1(z):
            return f(z) * logd(z, 1)

        def d2(z):
            u1, u2 = logd(z, 1), logd(z, 2)
            return f(z) * (u2 + u1**2)

        def d3(z):
            u1, u2, u3 = logd(z, 1), logd(z, 2), logd(z, 3)
            return f(z) * (u3 + 3 * u1 * u2 + u1**3)

        r0 = max(abs(a) for a in zs)
        return cls((f, d1, d2, d3), len(zs), "blaschke", r0)

    @classmethod
    def exp_odd(cls, eps: float) -> "AnalyticCircleMap":
        """``z exp(eps (z - 1/z) / 2)``; on the circle its lift is ``theta + eps sin theta``."""
        e = float(eps)

        def g(z):  # f'/f
            return 1 / z + 0.5 * e * (1 + z**-2)

        def g1(z):
            return -(z**-2) - e * z**-3

        def g2(z):
            return 2 * z**-3 + 3 * e * z**-4

        def f(z):
            return z * np.exp(0.5 * e * (z - 1 / z))

        fs = (f, lambda z: f(z) * g(z), lambda z: f(z) * (g1(z) + g(z) ** 2),
              lambda z: f(z) * (g2(z) + 3 * g(z) * g1(z) + g(z) ** 3))
        return cls(fs, 1, "exp_odd", 0.0)

    def to_diffeo(self) -> CircleDiffeo:
        """Boundary restriction as a lift with exact derivatives."""
        ref_th = TWO_PI * np.arange(4096) / 4096
        ref_p = np.unwrap(np.angle(self(np.exp(1j * ref_th))))
        ref_p = ref_p - ref_p[0] + float(np.angle(self(1.0 + 0j)))
        step = TWO_PI / ref_th.size
        deg = self.degree

        def jet(theta):
            z = np.exp(1j * theta)
            f0, f1, f2, f3 = (self.derivative(z, k) for k in range(4))
            u = f1 / f0
            u1 = f2 / f0 - u**2
            u2 = f3 / f0 - 3 * f1 * f2 / f0**2 + 2 * u**3
            g, g1, g2 = z * u, u + z * u1, 2 * u1 + z * u2
            d1 = g.real
            d2 = (1j * z * g1).real
            d3 = (-z * (g1 + z * g2)).real
            # branch-consistent lift value from the nearest reference node
            turns = np.floor(theta / TWO_PI)
            local = theta - TWO_PI * turns
            i = np.rint(local / step).astype(int) % ref_th.size
            base = ref_p[i] + deg * (local - ref_th[i])
            corr = np.angle(f0 / np.exp(1j * base))
            return base + corr + TWO_PI * deg * turns, d1, d2, d3

        return CircleDiffeo(jet, deg, "closure", self.kind)


def _circle_data(phi: AnalyticCircleMap, r: float, n: int):
    th = TWO_PI * np.arange(n) / n
    zr = r * np.exp(1j * th)
    f0, f1, f2 = phi(zr), phi.derivative(zr, 1), phi.derivative(zr, 2)
    if np.min(np.abs(f1)) < 1e-14:
        raise SingularMapError("derivative vanishes on the circle")
    return zr, f0, f1, f2


def radial_sigma_derivative(phi: AnalyticCircleMap, r: float, n: int = 4096):
    """Closed-form ``d sigma / d r`` at ``r exp(i theta)`` on a uniform grid."""
    if not phi.r0 < r < 1:
        raise DomainError("radius outside the annulus of definition")
    zr, f0, f1, f2 = _circle_data(phi, r, n)
    return (np.real(f2 / f1 * zr / r) - 2 * r / (1 - r * r)
            + 2 * np.real(zr * f1 * np.conj(f0)) / (r * (1 - np.abs(f0) ** 2)))


def conformal_factor(phi: AnalyticCircleMap, r: float, n: int = 4096):
    """``sigma`` on the circle of radius ``r``."""
    zr, f0, f1, _ = _circle_data(phi, r, n)
    return np.log(np.abs(f1)) + np.log(1 - r * r) - np.log(1 - np.abs(f0) ** 2)


def distortion_integral(phi: AnalyticCircleMap, r: float, n: int = 4096) -> float:
    """``D(r) = 2r/(1 - r^2) int_0^{2 pi} d_r sigma(r e^{i theta}) dtheta``."""
    return float(2 * r / (1 - r * r) * TWO_PI * np.mean(radial_sigma_derivative(phi, r, n)))


def distortion_integral_fd(phi: AnalyticCircleMap, r: float, step: float = 1e-5, n: int = 4096) -> float:
    """Same as :func:`distortion_integral` with a central difference in ``r``."""
    ds = (conformal_factor(phi, r + step, n) - conformal_factor(phi, r - step, n)) / (2 * step)
    return float(2 * r / (1 - r * r) * TWO_PI * np.mean(ds))


@dataclass(frozen=True)
class LimitReport:
    limit: float
    error: float
    order: float
    radii: np.ndarray
    values: np.ndarray


def _extrapolate(levels, values, use: int) -> LimitReport:
    """Richardson over every window of ``use`` consecutive levels; keep the steadiest.

    Round-off in ``D(r)`` grows like ``(1 - r)^-2``, so the deepest levels are
    not automatically the most accurate.
    """
    levels = np.asarray(levels)
    h = 2.0 ** (-levels.astype(float))
    vals = np.asarray(values, dtype=float)
    use = min(use, vals.size)
    best: Extrapolation | None = None
    for end in range(use, vals.size + 1):
        ex = richardson(h[end - use:end], vals[end - use:end], power=1.0)
        if best is None or ex.error < best.error:
            best = ex
    order = empirical_order(h, vals) if vals.size >= 3 else float("nan")
    return LimitReport(best.limit, best.error, order, 1 - h, vals)


def distortion_limit(phi: AnalyticCircleMap, levels=DEFAULT_LEVELS, n: int = 4096, use: int = 5) -> LimitReport:
    """Richardson limit of ``D(1 - 2^-k)`` over the given levels ``k``."""
    levels = np.asarray(levels)
    if levels.max() > 12:
        raise DomainError("schedule limited to k <= 12")
    vals = [distortion_integral(phi, 1 - 2.0 ** -k, n) for k in levels]
    return _extrapolate(levels, vals, use)


def image_area(phi: AnalyticCircleMap, r: float, n: int = 4096) -> float:
    """Signed hyperbolic area enclosed by ``phi(S_r)`` via the area primitive."""
    th = TWO_PI * np.arange(n) / n
    zr = r * np.exp(1j * th)
    return circulation_smooth(phi(zr), phi.derivative(zr, 1) * 1j * zr)


def round_area(r: float) -> float:
    return TWO_PI * (np.cosh(2 * np.arctanh(r)) - 1)


def _require_injective(phi: AnalyticCircleMap) -> None:
    if phi.degree != 1:
        raise PreconditionError("boundary map must be a homeomorphism (degree one)")
    phi.check_circle()
    phi.to_diffeo().check()


def area_distortion(phi: AnalyticCircleMap, levels=DEFAULT_LEVELS, n: int = 4096, use: int = 5) -> LimitReport:
    """Limit of ``A(phi(S_r)) - A(S_r)`` along ``r = 1 - 2^-k``."""
    _require_injective(phi)
    levels = np.asarray(levels)
    vals = [image_area(phi, 1 - 2.0 ** -k, n) - round_area(1 - 2.0 ** -k) for k in levels]
    return _extrapolate(levels, vals, use)


def area_distortion_rate(phi: AnalyticCircleMap, levels=DEFAULT_LEVELS, n: int = 4096, use: int = 5) -> LimitReport:
    """Limit of ``2/(1 - r^2) (A(phi(S_r)) - A(S_r))``.

    By Gauss-Bonnet this equals ``D(r)/r``; it is the rescaled area difference
    that tends to ``-(2/3)`` times the action.
    """
    _require_injective(phi)
    levels = np.asarray(levels)
    vals = []
    for k in levels:
        r = 1 - 2.0 ** -k
        vals.append(2 / (1 - r * r) * (image_area(phi, r, n) - round_area(r)))
    return _extrapolate(levels, vals, use)
