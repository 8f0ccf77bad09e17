"""Schwarzian derivative on the circle and the four boundary action formulas."""

from __future__ import annotations

import numpy as np

from .boundary import (TWO_PI, BoundaryMetric, CircleDiffeo, LiftJet, as_grid,
                       integrate_periodic, pushforward_metric)
from .errors import DomainError


def lift_schwarzian(j: LiftJet):
    """Real-variable Schwarzian ``f'''/f' - 1.5 (f''/f')^2`` of a lift."""
    r = j.d2 / j.d1
    return j.d3 / j.d1 - 1.5 * r * r


def _circle_value(j: LiftJet):
    if np.any(j.d1 <= 0):
        raise DomainError("lift derivative must be positive")
    return -lift_schwarzian(j) - 0.5 * j.d1**2 + 0.5


def schwarzian_on_circle(phi: CircleDiffeo, theta):
    """The real number ``exp(2 i theta) S[phi](exp(i theta))``."""
    return _circle_value(phi.jet(theta))


def schwarzian_complex(phi: CircleDiffeo, theta):
    """Same quantity evaluated through complex derivatives of ``F = exp(i lift)``.

    Kept as an independent check: the result should be real.
    """
    j = phi.jet(theta)
    # theta-derivatives of F divided by F
    f1 = 1j * j.d1
    f2 = 1j * j.d2 - j.d1**2
    f3 = 1j * j.d3 - 3 * j.d1 * j.d2 - 1j * j.d1**3
    s_theta = f3 / f1 - 1.5 * (f2 / f1) ** 2
    # z = exp(i theta): S_theta = S_z (dz/dtheta)^2 + S_theta[z], S_theta[z] = 1/2
    return -(s_theta - 0.5)


def action_direct(phi: CircleDiffeo, grid=None) -> float:
    """Boundary integral of ``exp(2 i theta) S[phi]`` over one turn."""
    th = as_grid(grid).nodes
    return integrate_periodic(schwarzian_on_circle(phi, th))


def action_inverse_form(phi: CircleDiffeo, grid=None) -> float:
    """Action of ``phi`` computed from its inverse ``psi``.

    Uses ``I(phi) = -int exp(2 i theta) S[psi] / |psi'| dtheta``.
    """
    psi = phi.inverse()
    j = psi.jet(as_grid(grid).nodes)
    return -integrate_periodic(_circle_value(j) / j.d1)


def action_kstar_form(h: BoundaryMetric, grid=None, check: bool = True) -> float:
    """Action from the metric ``h = phi_* dtheta`` using only ``sigma`` and ``sigma'``.

    Equals ``(int exp(-sigma)(sigma'^2 - 1) dtheta + 2 pi) / 2``.
    """
    g = as_grid(grid)
    if check:
        h.check_normalized(g)
    s, s1, _ = h.jet(g.nodes)
    return 0.5 * (integrate_periodic(np.exp(-s) * (s1**2 - 1)) + TWO_PI)


def total_kstar(h: BoundaryMetric, grid=None) -> float:
    """``int k* h``, using the first-derivative form ``exp(-sigma)(sigma'^2 - 1)``."""
    s, s1, _ = h.jet(as_grid(grid).nodes)
    return integrate_periodic(np.exp(-s) * (s1**2 - 1))


def action_nfold(phi: CircleDiffeo, n: int, grid=None) -> float:
    """Action of the n-fold cover ``z -> phi(z)^n`` via the correction term."""
    if n < 1:
        raise DomainError("n must be a positive integer")
    th = as_grid(grid).nodes
    j = phi.jet(th)
    return integrate_periodic(_circle_value(j)) + 0.5 * (1 - n * n) * integrate_periodic(j.d1**2)


def unit_interval_action(phi: CircleDiffeo, grid=None) -> float:
    """Action normalized on ``[0, 1]``: ``-int_0^1 (S[f] + 2 pi^2 f'^2) ds``.

    Here ``f(s) = lift(2 pi s) / (2 pi)``; equals ``2 pi I - 2 pi^2``.
    """
    g = as_grid(grid)
    j = phi.jet(g.nodes)
    # derivatives in s: f^{(k)}(s) = (2 pi)^{k-1} lift^{(k)}
    f1, f2, f3 = j.d1, TWO_PI * j.d2, TWO_PI**2 * j.d3
    s = f3 / f1 - 1.5 * (f2 / f1) ** 2
    return -float(np.mean(s + 2 * np.pi**2 * f1**2))


def all_routes(phi: CircleDiffeo, grid=None) -> dict:
    """Action of a degree-one diffeomorphism by the three boundary routes."""
    h = pushforward_metric(phi)
    return {
        "direct": action_direct(phi, grid),
        "inverse_form": action_inverse_form(phi, grid),
        "kstar_form": action_kstar_form(h, grid),
    }
