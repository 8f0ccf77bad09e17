"""C^1 piecewise-Moebius circle diffeomorphisms and their completed Epstein curves.

A map is Moebius ``alpha_j`` on the arc ``[z_j, z_{j+1}]``.  Consecutive pieces
differ by the parabolic transition fixing ``z_j``

    tau(z_j, lam)(z) = ((2i + lam) z_j z - z_j^2 lam) / (lam z + (2i - lam) z_j),

so that ``alpha_j = alpha_{j-1} o tau_j`` and the jump of ``lift''/lift'`` at
``z_j`` (left minus right) equals ``lam``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .boundary import TWO_PI, CircleDiffeo, _moebius_lift_jet
from .errors import ClosureError, DomainError, NotADiffeomorphismError
from .hyperbolic import Horocycle, MoebiusDisk

_GL_X, _GL_W = np.polynomial.legendre.leggauss(24)


def transition(z: complex, lam: float) -> MoebiusDisk:
    """Parabolic element fixing ``z`` that creates a Schwarzian jump ``lam`` there."""
    return MoebiusDisk(1 - 0.5j * lam, 0.5j * complex(z) * lam)


def _closure_residual(m: MoebiusDisk) -> np.ndarray:
    # the product is +-identity iff b = 0 and a is real
    return np.array([m.b.real, m.b.imag, m.a.imag * np.sign(m.a.real or 1.0)])


def _product(points, lams) -> MoebiusDisk:
    """``tau_2 o ... o tau_n o tau_1``, the monodromy around the circle."""
    out = MoebiusDisk.identity()
    order = list(range(1, len(points))) + [0]
    for j in order:
        out = out @ transition(points[j], lams[j])
    return out


def _lift_jet_at(m: MoebiusDisk, theta):
    return _moebius_lift_jet(m, np.asarray(theta, dtype=float))


class PiecewiseMoebiusDiffeo(CircleDiffeo):
    """Circle map equal to ``pieces[j]`` on ``[breakpoints[j], breakpoints[j+1]]``.

    Parameters
    ----------
    breakpoints : array of angles, strictly increasing within one turn
    pieces : list of MoebiusDisk, same length
    """

    def __init__(self, breakpoints, pieces, solved=None, check: bool = True):
        th = np.asarray(breakpoints, dtype=float)
        if th.size < 3 or th.size != len(pieces):
            raise DomainError("need at least three breakpoints, one piece per breakpoint")
        th0 = th[0] % TWO_PI
        th = th0 + (th - th[0])
        if np.any(np.diff(th) <= 0) or th[-1] - th[0] >= TWO_PI:
            raise DomainError("breakpoints must be counterclockwise within one turn")
        self.angles = th
        self.points = np.exp(1j * th)
        self.pieces = list(pieces)
        self.solved = dict(solved or {})
        ends = np.append(th[1:], th[0] + TWO_PI)
        # lift offsets so that the lift is continuous across breakpoints
        offsets = [0.0]
        for j in range(1, th.size):
            left = _lift_jet_at(self.pieces[j - 1], th[j])[0] + offsets[-1]
            right = _lift_jet_at(self.pieces[j], th[j])[0]
            offsets.append(float(left - right))
        self._ends = ends
        self._offsets = np.array(offsets)
        increments = [float(_lift_jet_at(p, e)[0] - _lift_jet_at(p, s)[0])
                      for p, s, e in zip(self.pieces, th, ends)]
        self.increment = float(np.sum(increments))
        super().__init__(self._jet_impl, 1, "piecewise", "piecewise_moebius")
        if check:
            self.check_pieces()

    # representation
    def _locate(self, theta):
        theta = np.asarray(theta, dtype=float)
        k = np.floor((theta - self.angles[0]) / TWO_PI)
        local = theta - TWO_PI * k
        idx = np.clip(np.searchsorted(self.angles, local, side="right") - 1, 0, self.angles.size - 1)
        return k, local, idx

    def _jet_impl(self, theta):
        k, local, idx = self._locate(theta)
        out = [np.zeros(theta.shape) for _ in range(4)]
        for j, piece in enumerate(self.pieces):
            sel = idx == j
            if not np.any(sel):
                continue
            v, d1, d2, d3 = _lift_jet_at(piece, local[sel])
            out[0][sel] = v + self._offsets[j]
            out[1][sel], out[2][sel], out[3][sel] = d1, d2, d3
        out[0] = out[0] + self.increment * k
        return tuple(out)

    def piece_index(self, theta):
        return self._locate(theta)[2]

    # validation
    def check_pieces(self, tol: float = 1e-10) -> None:
        n = len(self.pieces)
        for j in range(n):
            nxt = (j + 1) % n
            z = self.points[nxt]
            a, b = self.pieces[j], self.pieces[nxt]
            if abs(a(z) - b(z)) > tol:
                raise NotADiffeomorphismError(f"pieces {j} and {nxt} do not agree at breakpoint {nxt}")
            if abs(abs(a.derivative(z)) - abs(b.derivative(z))) > tol:
                raise NotADiffeomorphismError(f"derivative mismatch at breakpoint {nxt}")
        if abs(self.increment - TWO_PI) > 1e-8:
            raise NotADiffeomorphismError(f"lift increment {self.increment!r} is not 2*pi")

    def jumps(self) -> np.ndarray:
        """Left-minus-right jump of ``lift''/lift'`` at every breakpoint."""
        n = len(self.pieces)
        out = np.empty(n)
        for j in range(n):
            _, l1, l2, _ = _lift_jet_at(self.pieces[j - 1], self.angles[j])
            _, r1, r2, _ = _lift_jet_at(self.pieces[j], self.angles[j])
            out[j] = l2 / l1 - r2 / r1
        return out

    def to_descriptor(self) -> dict:
        return {
            "kind": "piecewise_moebius",
            "breakpoints": [float(t) for t in self.angles],
            "pieces": [{"a": [p.a.real, p.a.imag], "b": [p.b.real, p.b.imag]} for p in self.pieces],
        }


def build_piecewise(breakpoints, jumps, seed: MoebiusDisk | None = None, free=None,
                    max_iter: int = 100, tol: float = 1e-13) -> PiecewiseMoebiusDiffeo:
    """Construct a piecewise-Moebius diffeomorphism with prescribed jumps.

    The jumps at the ``free`` indices (default: the last three) are treated as
    initial guesses and adjusted by damped Newton so that the monodromy
    ``tau_2 o ... o tau_n o tau_1`` is the identity.  The solved values are
    stored in ``result.solved``.
    """
    th = np.asarray(breakpoints, dtype=float)
    n = th.size
    lam = np.array(jumps, dtype=float)
    if n < 3 or lam.size != n:
        raise DomainError("need n >= 3 breakpoints and n jumps")
    free = list(range(n - 3, n)) if free is None else list(free)
    if len(free) != 3:
        raise DomainError("exactly three jumps are solved for")
    pts = np.exp(1j * th)
    seed = MoebiusDisk.identity() if seed is None else seed

    def resid(x):
        lam[free] = x
        return _closure_residual(_product(pts, lam))

    x = lam[free].copy()
    r = resid(x)
    it = 0
    while np.linalg.norm(r) > tol:
        if it >= max_iter:
            raise ClosureError(f"closure Newton did not converge, residual {np.linalg.norm(r):.3g}",
                               residual=float(np.linalg.norm(r)))
        it += 1
        jac = np.empty((3, 3))
        hstep = 1e-7
        for c in range(3):
            e = np.zeros(3)
            e[c] = hstep
            jac[:, c] = (resid(x + e) - resid(x - e)) / (2 * hstep)
        try:
            step = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(jac, -r, rcond=None)[0]
        damp = 1.0
        while True:
            r_new = resid(x + damp * step)
            if np.linalg.norm(r_new) < np.linalg.norm(r) or damp < 1e-6:
                break
            damp *= 0.5
        x = x + damp * step
        r = resid(x)
    lam[free] = x
    pieces = [seed]
    for j in range(1, n):
        pieces.append(pieces[-1] @ transition(pts[j], lam[j]))
    solved = {int(i): float(v) for i, v in zip(free, x)}
    return PiecewiseMoebiusDiffeo(th, pieces, solved=solved)


def distributional_action(pm: PiecewiseMoebiusDiffeo) -> tuple[float, np.ndarray]:
    """Schwarzian action as the sum of point masses at the breakpoints."""
    lam = pm.jumps()
    return float(np.sum(lam)), lam


# completed Epstein curve -------------------------------------------------------

def _to_half_plane(xi, z):
    """``i (1 + z/xi) / (1 - z/xi)``: sends ``xi`` to infinity, the disk to the upper half plane."""
    w = np.asarray(z) / xi
    return 1j * (1 + w) / (1 - w)


def _from_half_plane(xi, w):
    return xi * (w - 1j) / (w + 1j)


@dataclass(frozen=True)
class HoroArc:
    """Arc of a horocycle at ``base``, straight segment at height ``height`` in half-plane coordinates."""

    base: complex
    height: float
    x0: float
    x1: float

    @property
    def length(self) -> float:
        """Signed length, positive when running clockwise around the horoball."""
        return (self.x0 - self.x1) / self.height

    def z(self, s):
        return _from_half_plane(self.base, s + 1j * self.height)

    def dz(self, s):
        w = s + 1j * self.height
        return self.base * 2j / (w + 1j) ** 2

    def span(self):
        return self.x0, self.x1

    def normal(self, s):
        """Unit normal pointing out of the horoball."""
        d = -1j * self.dz(s)
        return d / np.abs(d)

    def sample(self, n: int = 64):
        return self.z(np.linspace(self.x0, self.x1, n))

    def eta(self) -> float:
        return _eta_integral(self.z, self.dz, self.x0, self.x1)


@dataclass(frozen=True)
class CircleArc:
    """Image under ``piece`` of the round arc ``rho exp(i theta)``, ``theta0 <= theta <= theta1``."""

    piece: MoebiusDisk
    rho: float
    theta0: float
    theta1: float

    @property
    def length(self) -> float:
        r = 2 * np.arctanh(self.rho)
        return np.sinh(r) * (self.theta1 - self.theta0)

    @property
    def kdl(self) -> float:
        r = 2 * np.arctanh(self.rho)
        return np.cosh(r) * (self.theta1 - self.theta0)

    def z(self, s):
        return self.piece(self.rho * np.exp(1j * np.asarray(s)))

    def dz(self, s):
        u = self.rho * np.exp(1j * np.asarray(s))
        return self.piece.derivative(u) * 1j * u

    def span(self):
        return self.theta0, self.theta1

    def normal(self, s):
        """Unit normal pointing towards the center ``piece(0)``."""
        u = self.rho * np.exp(1j * np.asarray(s))
        d = -self.piece.derivative(u) * np.exp(1j * np.asarray(s))
        return d / np.abs(d)

    def sample(self, n: int = 64):
        return self.z(np.linspace(self.theta0, self.theta1, n))

    def eta(self) -> float:
        return _eta_integral(self.z, self.dz, self.theta0, self.theta1)


def _eta_integral(zf, dzf, s0, s1, pieces: int = 16) -> float:
    edges = np.linspace(s0, s1, pieces + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        s = 0.5 * (a + b) + 0.5 * (b - a) * _GL_X
        z, dz = zf(s), dzf(s)
        f = 2 * np.imag(np.conj(z) * dz) / (1 - np.abs(z) ** 2)
        total += 0.5 * (b - a) * np.dot(_GL_W, f)
    return float(total)


def _end_normal(arc, at_start: bool) -> complex:
    s0, s1 = arc.span()
    return complex(arc.normal(np.array([s0 if at_start else s1]))[0])


@dataclass
class CompletedEpstein:
    """Closed curve made of horocyclic arcs (and, after flowing, round arcs)."""

    corners: np.ndarray
    horo_arcs: list
    betas: np.ndarray
    circle_arcs: list = field(default_factory=list)
    t: float = 0.0

    @property
    def arcs(self) -> list:
        """Arcs in traversal order."""
        if not self.circle_arcs:
            return list(self.horo_arcs)
        out = []
        for h, c in zip(self.horo_arcs, self.circle_arcs):
            out += [h, c]
        return out

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([a.length for a in self.horo_arcs])

    def length(self) -> float:
        return float(sum(a.length for a in self.arcs))

    def corner_angles(self) -> np.ndarray:
        """Rotation of the frame normal at each junction, in ``(-pi, pi]``.

        The normal stays continuous through cusps, so this is the exterior
        angle entering Gauss-Bonnet for signed arc length.
        """
        arcs = self.arcs
        out = []
        for a, b in zip(arcs, arcs[1:] + arcs[:1]):
            out.append(np.angle(_end_normal(b, True) / _end_normal(a, False)))
        return np.array(out)

    def signed_area(self, route: str = "gauss-bonnet") -> float:
        """``int k dl + sum(exterior angles) - 2 pi``, or the area-primitive circulation."""
        if route == "eta":
            return float(sum(a.eta() for a in self.arcs))
        horo = -sum(a.length for a in self.horo_arcs)  # k = -1 for the outward normal
        circ = sum(c.kdl for c in self.circle_arcs)
        corners = float(np.sum(self.corner_angles())) if self.circle_arcs else float(np.sum(self.betas))
        return horo + circ + corners - TWO_PI

    def polyline(self, per_arc: int = 64) -> np.ndarray:
        return np.concatenate([a.sample(per_arc)[:-1] for a in self.arcs])


def carrier_horocycles(pm: PiecewiseMoebiusDiffeo, t: float = 0.0):
    d1 = pm.jet(pm.angles).d1
    return [Horocycle(pm.pieces[j](pm.points[j]), np.exp(t) / d1[j]) for j in range(len(pm.pieces))]


def completed_epstein(pm: PiecewiseMoebiusDiffeo) -> CompletedEpstein:
    """Corners ``a_j = alpha_j(0)`` joined by horocyclic arcs on ``H_{phi(z_j)}``."""
    n = len(pm.pieces)
    corners = np.array([p(0.0) for p in pm.pieces])
    horos = carrier_horocycles(pm)
    arcs = []
    for j in range(n):
        xi = horos[j].base
        w0 = _to_half_plane(xi, corners[j - 1])
        w1 = _to_half_plane(xi, corners[j])
        arcs.append(HoroArc(xi, float(0.5 * (w0.imag + w1.imag)), float(w0.real), float(w1.real)))
    betas = np.empty(n)
    for j in range(n):
        nj = corners[j] - horos[j].center
        nk = corners[j] - horos[(j + 1) % n].center
        betas[j] = np.angle(nk / nj) % TWO_PI
    return CompletedEpstein(corners, arcs, betas)


def scaled_completed_epstein(pm: PiecewiseMoebiusDiffeo, t: float) -> CompletedEpstein:
    """Completed curve of ``exp(t) phi_* dtheta``: round arcs of radius ``t`` joined by flowed horocyclic arcs."""
    if t <= 0:
        raise DomainError("t must be positive")
    n = len(pm.pieces)
    rho = np.tanh(t / 2)
    ends = np.append(pm.angles[1:], pm.angles[0] + TWO_PI)
    circles = [CircleArc(pm.pieces[j], rho, pm.angles[j], ends[j]) for j in range(n)]
    horos = carrier_horocycles(pm, t)
    arcs = []
    for j in range(n):
        xi = horos[j].base
        q0 = circles[j - 1].z(np.array([ends[j - 1]]))[0]
        q1 = circles[j].z(np.array([pm.angles[j]]))[0]
        w0, w1 = _to_half_plane(xi, q0), _to_half_plane(xi, q1)
        arcs.append(HoroArc(xi, float(0.5 * (w0.imag + w1.imag)), float(w0.real), float(w1.real)))
    corners = np.array([p(0.0) for p in pm.pieces])
    return CompletedEpstein(corners, arcs, np.diff(np.append(pm.angles, pm.angles[0] + TWO_PI)), circles, float(t))


def mollified_action(pm: PiecewiseMoebiusDiffeo, eps: float, n: int = 1 << 16) -> float:
    """Action of the lift smoothed by a Gaussian of width ``eps`` (spectral)."""
    th = TWO_PI * np.arange(n) / n
    per = pm.lift(th) - th
    k = np.fft.rfftfreq(n, 1.0 / n)
    hat = np.fft.rfft(per) * np.exp(-0.5 * (k * eps) ** 2)
    d1 = 1 + np.fft.irfft(1j * k * hat, n)
    d2 = np.fft.irfft(-(k**2) * hat, n)
    d3 = np.fft.irfft(-1j * k**3 * hat, n)
    if np.any(d1 <= 0):
        raise NotADiffeomorphismError("smoothed lift is not increasing")
    s = d3 / d1 - 1.5 * (d2 / d1) ** 2
    return float(TWO_PI * np.mean(-s - 0.5 * d1**2 + 0.5))
