"""Boundary metrics ``h = exp(sigma) dtheta`` and circle diffeomorphisms.

Both objects are thin wrappers around a *jet*: a vectorized callable that
returns the function and its first derivatives at an array of angles.
Jets are either closed-form closures or trigonometric interpolants whose
derivatives are taken spectrally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError, NormalizationError, NotADiffeomorphismError
from .hyperbolic import MoebiusDisk

TWO_PI = 2.0 * np.pi


# quadrature ---------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureGrid:
    """Uniform periodic grid with trapezoid weights."""

    n: int = 1024

    def __post_init__(self):
        if self.n < 2 or self.n & (self.n - 1):
            raise DomainError("grid size must be a power of two")

    @property
    def nodes(self) -> np.ndarray:
        return TWO_PI * np.arange(self.n) / self.n

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.n, TWO_PI / self.n)

    def integrate(self, values) -> float:
        return integrate_periodic(values, self)


def as_grid(grid) -> QuadratureGrid:
    if grid is None:
        return QuadratureGrid()
    if isinstance(grid, QuadratureGrid):
        return grid
    return QuadratureGrid(int(grid))


def integrate_periodic(values, grid=None) -> float:
    """Trapezoid rule over one period; spectrally accurate for smooth data."""
    v = np.asarray(values)
    n = v.shape[-1]
    if grid is not None and as_grid(grid).n != n:
        raise DomainError("sample count does not match grid")
    return float(np.real(np.sum(v, axis=-1)) * TWO_PI / n)


# trigonometric series -------------------------------------------------------

@dataclass(frozen=True)
class TrigSeries:
    """Real periodic function ``c0 + sum Re(c_k exp(i k theta))`` (k >= 1)."""

    c0: float
    ks: np.ndarray
    cs: np.ndarray

    @classmethod
    def from_samples(cls, values, keep_tol: float = 0.0) -> "TrigSeries":
        v = np.asarray(values, dtype=float)
        n = v.size
        hat = np.fft.rfft(v) / n
        ks = np.arange(1, hat.size)
        cs = 2.0 * hat[1:]
        if n % 2 == 0:
            cs[-1] *= 0.5  # Nyquist mode is shared with its alias
        if keep_tol > 0:
            scale = max(np.max(np.abs(cs), initial=0.0), abs(hat[0]))
            keep = np.abs(cs) > keep_tol * max(scale, 1e-300)
            ks, cs = ks[keep], cs[keep]
        return cls(float(hat[0].real), ks, cs)

    @classmethod
    def from_cos_sin(cls, coeffs, c0: float = 0.0) -> "TrigSeries":
        """Build from rows ``[k, a_k, b_k]`` meaning ``a cos k t + b sin k t``."""
        c0 = float(c0)
        ks, cs = [], []
        for k, a, b in coeffs:
            k = int(k)
            if k < 0:
                raise DomainError("negative wavenumber")
            if k == 0:
                c0 += float(a)
                continue
            ks.append(k)
            cs.append(complex(a, -b))
        return cls(c0, np.asarray(ks, dtype=int), np.asarray(cs, dtype=complex))

    def evaluate(self, theta, order: int = 0):
        theta = np.asarray(theta, dtype=float)
        base = self.c0 if order == 0 else 0.0
        if self.ks.size == 0:
            return np.full(theta.shape, base)
        out = np.full(theta.shape, base, dtype=float)
        coef = self.cs * (1j * self.ks) ** order
        flat = theta.ravel()
        res = out.ravel()
        step = max(1, 2_000_000 // self.ks.size)
        for s in range(0, flat.size, step):
            e = np.exp(1j * np.outer(flat[s:s + step], self.ks))
            res[s:s + step] += np.real(e @ coef)
        return res.reshape(theta.shape)

    def antiderivative(self, theta):
        """``int_0^theta`` of the series (includes the linear mean term)."""
        theta = np.asarray(theta, dtype=float)
        if self.ks.size == 0:
            return self.c0 * theta
        g = TrigSeries(0.0, self.ks, self.cs / (1j * self.ks))
        return self.c0 * theta + g.evaluate(theta) - g.evaluate(0.0)


def fourier_fit(func: Callable, tol: float = 1e-15, n0: int = 256, nmax: int = 1 << 16) -> TrigSeries:
    """Adaptive trigonometric interpolant of a smooth periodic function."""
    n = n0
    while True:
        theta = TWO_PI * np.arange(n) / n
        vals = np.asarray(func(theta), dtype=float)
        hat = np.abs(np.fft.rfft(vals)) / n
        scale = max(hat.max(), 1e-300)
        tail = hat[int(0.75 * hat.size):].max()
        if tail <= tol * scale or n >= nmax:
            return TrigSeries.from_samples(vals, keep_tol=1e-17)
        n *= 2


# boundary metrics ------------------------------------------------------------

class MetricJet(NamedTuple):
    sigma: np.ndarray
    sigma_t: np.ndarray
    sigma_tt: np.ndarray


class BoundaryMetric:
    """Conformal metric ``h = exp(sigma(theta)) dtheta`` on the circle.

    Parameters
    ----------
    jet : callable
        Maps an angle array to ``(sigma, sigma_t, sigma_tt)``.
    kind : str
        ``"closure"`` for closed-form data or ``"fourier"`` for sampled data.
    """

    def __init__(self, jet: Callable, kind: str = "closure", label: str = ""):
        self._jet = jet
        self.kind = kind
        self.label = label

    def jet(self, theta) -> MetricJet:
        theta = np.asarray(theta, dtype=float)
        s, s1, s2 = self._jet(theta)
        shape = theta.shape
        return MetricJet(*(np.broadcast_to(np.asarray(v, dtype=float), shape) for v in (s, s1, s2)))

    def sigma(self, theta):
        return self.jet(theta).sigma

    def density(self, theta):
        return np.exp(self.jet(theta).sigma)

    def kstar(self, theta):
        """Curvature at infinity ``exp(-2 sigma)(2 sigma'' - sigma'^2 - 1)``."""
        s, s1, s2 = self.jet(theta)
        return np.exp(-2 * s) * (2 * s2 - s1**2 - 1)

    def total_length(self, grid=None) -> float:
        g = as_grid(grid)
        return integrate_periodic(self.density(g.nodes))

    def shifted(self, t: float) -> "BoundaryMetric":
        """The metric ``exp(t) h``."""
        t = float(t)

        def jet(theta):
            s, s1, s2 = self.jet(theta)
            return s + t, s1, s2

        return BoundaryMetric(jet, self.kind, self.label)

    def normalized(self, grid=None) -> "BoundaryMetric":
        """Rescale to total length ``2 pi``."""
        return self.shifted(-np.log(self.total_length(grid) / TWO_PI))

    def check_normalized(self, grid=None, tol: float = 1e-8) -> None:
        length = self.total_length(grid)
        if abs(length - TWO_PI) > tol:
            raise NormalizationError(f"total length {length!r} differs from 2*pi")

    # constructors
    @classmethod
    def constant(cls, c: float = 0.0) -> "BoundaryMetric":
        c = float(c)

        def jet(theta):
            z = np.zeros_like(theta)
            return z + c, z, z

        return cls(jet, label=f"constant({c})")

    @classmethod
    def from_series(cls, series: TrigSeries, kind: str = "closure", label: str = "") -> "BoundaryMetric":
        def jet(theta):
            return series.evaluate(theta), series.evaluate(theta, 1), series.evaluate(theta, 2)

        return cls(jet, kind, label)

    @classmethod
    def fourier_sigma(cls, coeffs, c0: float = 0.0) -> "BoundaryMetric":
        """``sigma = c0 + sum a_k cos k theta + b_k sin k theta`` from rows ``[k, a_k, b_k]``."""
        return cls.from_series(TrigSeries.from_cos_sin(coeffs, c0), label="fourier_sigma")

    @classmethod
    def from_samples(cls, values) -> "BoundaryMetric":
        """Trigonometric interpolant of ``sigma`` sampled on a uniform grid."""
        return cls.from_series(TrigSeries.from_samples(values), kind="fourier", label="samples")

    @classmethod
    def from_functions(cls, sigma, sigma_t, sigma_tt, label: str = "") -> "BoundaryMetric":
        return cls(lambda th: (sigma(th), sigma_t(th), sigma_tt(th)), label=label)


# circle diffeomorphisms -------------------------------------------------------

class LiftJet(NamedTuple):
    value: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray


def _moebius_lift_jet(m: MoebiusDisk, theta):
    """Lift ``theta + 2 arg(a + b exp(-i theta))`` of a disk automorphism."""
    a, b = m.a, m.b
    r = b * np.exp(-1j * theta)
    w = a + r
    # |r| < |a| keeps w / a in the right half plane, so the branch is continuous
    value = theta + 2 * np.angle(a) + 2 * np.angle(w / a)
    l1 = -1j * r / w
    l2 = -a * r / w**2
    l3 = 1j * a * r * (a - r) / w**3
    return value, 1 + 2 * l1.imag, 2 * l2.imag, 2 * l3.imag


class CircleDiffeo:
    """Orientation-preserving circle map represented by its lift.

    The lift satisfies ``phi(exp(i theta)) = exp(i lift(theta))`` and
    ``lift(theta + 2 pi) = lift(theta) + 2 pi degree``.
    """

    def __init__(self, jet: Callable, degree: int = 1, kind: str = "closure", label: str = ""):
        self._jet = jet
        self.degree = int(degree)
        self.kind = kind
        self.label = label

    def jet(self, theta) -> LiftJet:
        theta = np.asarray(theta, dtype=float)
        vals = self._jet(theta)
        return LiftJet(*(np.broadcast_to(np.asarray(v, dtype=float), theta.shape) for v in vals))

    def lift(self, theta):
        return self.jet(theta).value

    def __call__(self, theta):
        """Image point ``phi(exp(i theta))`` on the unit circle."""
        return np.exp(1j * self.lift(theta))

    def angular_derivative(self, theta):
        """``|phi'(exp(i theta))|``, equal to the lift derivative."""
        return self.jet(theta).d1

    # validation
    def check(self, grid=2048) -> "CircleDiffeo":
        """Raise if the lift is not increasing or has the wrong increment."""
        th = as_grid(grid).nodes
        j = self.jet(th)
        if np.any(j.d1 <= 0) or not np.all(np.isfinite(j.d1)):
            raise NotADiffeomorphismError("lift derivative is not positive")
        inc = self.lift(TWO_PI) - self.lift(0.0)
        if abs(inc - TWO_PI * self.degree) > 1e-8:
            raise NotADiffeomorphismError(f"lift increment {inc!r} is not 2*pi*{self.degree}")
        return self

    # algebra
    def compose(self, other: "CircleDiffeo") -> "CircleDiffeo":
        """Return ``self o other`` (chain rule on jets)."""

        def jet(theta):
            g = other.jet(theta)
            f = self.jet(g.value)
            return (f.value, f.d1 * g.d1, f.d2 * g.d1**2 + f.d1 * g.d2,
                    f.d3 * g.d1**3 + 3 * f.d2 * g.d1 * g.d2 + f.d1 * g.d3)

        return CircleDiffeo(jet, self.degree * other.degree, "closure", f"{self.label}o{other.label}")

    def post_compose(self, m: MoebiusDisk) -> "CircleDiffeo":
        """Return ``m o self``."""
        return CircleDiffeo.moebius(m).compose(self)

    def nfold(self, n: int) -> "CircleDiffeo":
        """The cover ``z -> phi(z)^n``."""
        n = int(n)
        if n < 1:
            raise DomainError("cover degree must be a positive integer")
        if n == 1:
            return self

        def jet(theta):
            j = self.jet(theta)
            return n * j.value, n * j.d1, n * j.d2, n * j.d3

        return CircleDiffeo(jet, self.degree * n, self.kind, f"{n}-fold {self.label}")

    def inverse(self, tol: float = 1e-13) -> "CircleDiffeo":
        """Inverse diffeomorphism via safeguarded Newton on the lift."""
        if self.degree != 1:
            raise DomainError("only degree-one maps are invertible")
        table_th = np.linspace(0.0, TWO_PI, 4097)
        table = self.lift(table_th)
        if np.any(np.diff(table) <= 0):
            raise NotADiffeomorphismError("lift is not strictly increasing")

        def jet(y):
            x = invert_lift(self, y, tol=tol, table=(table_th, table))
            f = self.jet(x)
            d1 = 1.0 / f.d1
            d2 = -f.d2 / f.d1**3
            d3 = -f.d3 / f.d1**4 + 3 * f.d2**2 / f.d1**5
            return x, d1, d2, d3

        return CircleDiffeo(jet, 1, "closure", f"inverse({self.label})")

    # constructors
    @classmethod
    def identity(cls) -> "CircleDiffeo":
        def jet(theta):
            z = np.zeros_like(theta)
            return theta, z + 1.0, z, z

        return cls(jet, label="identity")

    @classmethod
    def rotation(cls, angle: float) -> "CircleDiffeo":
        angle = float(angle)

        def jet(theta):
            z = np.zeros_like(theta)
            return theta + angle, z + 1.0, z, z

        return cls(jet, label=f"rotation({angle})")

    @classmethod
    def lift_sine(cls, amp: float, k: int = 1) -> "CircleDiffeo":
        """Lift ``theta + amp sin(k theta) / k`` (a diffeomorphism iff |amp| < 1)."""
        if abs(amp) >= 1:
            raise NotADiffeomorphismError("need |amp| < 1")
        return cls.fourier_lift([[k, 0.0, amp / k]], label=f"lift_sine({amp})")

    @classmethod
    def fourier_lift(cls, coeffs, label: str = "fourier_lift") -> "CircleDiffeo":
        """Lift ``theta + sum a_k cos k theta + b_k sin k theta`` from rows ``[k, a_k, b_k]``."""
        series = TrigSeries.from_cos_sin(coeffs)

        def jet(theta):
            return (theta + series.evaluate(theta), 1 + series.evaluate(theta, 1),
                    series.evaluate(theta, 2), series.evaluate(theta, 3))

        return cls(jet, label=label).check()

    @classmethod
    def moebius(cls, m: MoebiusDisk) -> "CircleDiffeo":
        return cls(lambda th: _moebius_lift_jet(m, th), label="moebius")

    @classmethod
    def blaschke(cls, zeros) -> "CircleDiffeo":
        """Finite Blaschke product ``prod (z - a)/(1 - conj(a) z)`` as a degree-n cover."""
        factors = [MoebiusDisk(1.0, -complex(a)) for a in zeros]
        if not factors:
            raise DomainError("need at least one zero")
        if any(abs(complex(a)) >= 1 for a in zeros):
            raise DomainError("Blaschke zeros must lie in the open disk")

        def jet(theta):
            parts = [_moebius_lift_jet(m, theta) for m in factors]
            return tuple(sum(p[i] for p in parts) for i in range(4))

        return cls(jet, degree=len(factors), label="blaschke")

    @classmethod
    def from_metric(cls, h: BoundaryMetric, theta0: float = 0.0, tol: float = 1e-8) -> "CircleDiffeo":
        """Diffeomorphism ``phi`` with ``phi_* dtheta = h`` and ``phi(exp(i theta0)) = 1``.

        The inverse has lift ``theta0 + int_0^theta exp(sigma)``.
        """
        dens = fourier_fit(h.density)
        if abs(dens.c0 - 1.0) > tol / TWO_PI:
            raise NormalizationError(f"total length {TWO_PI * dens.c0!r} differs from 2*pi")
        theta0 = float(theta0)

        def jet(theta):
            s, s1, s2 = h.jet(theta)
            e = np.exp(s)
            return theta0 + dens.antiderivative(theta), e, s1 * e, (s2 + s1**2) * e

        inv = cls(jet, label="metric-inverse")
        out = inv.inverse()
        out.kind = "from-metric"
        return out


def invert_lift(phi: CircleDiffeo, y, tol: float = 1e-13, table=None, max_iter: int = 100):
    """Solve ``lift(x) = y`` for a degree-one lift, vectorized.

    Newton steps are accepted only inside a shrinking bracket; otherwise the
    bracket is bisected.
    """
    y = np.asarray(y, dtype=float)
    if table is None:
        tx = np.linspace(0.0, TWO_PI, 4097)
        table = (tx, phi.lift(tx))
    tx, ty = table
    y0 = ty[0]
    shift = np.floor((y - y0) / TWO_PI)
    yr = (y - TWO_PI * shift).ravel()
    idx = np.clip(np.searchsorted(ty, yr, side="right") - 1, 0, tx.size - 2)
    lo, hi = tx[idx].copy(), tx[idx + 1].copy()
    x = lo + (hi - lo) * (yr - ty[idx]) / (ty[idx + 1] - ty[idx])
    active = np.ones(yr.size, dtype=bool)
    for _ in range(max_iter):
        j = phi.jet(x[active])
        f = j.value - yr[active]
        # maintain bracket
        lo_a, hi_a = lo[active], hi[active]
        pos = f > 0
        hi_a = np.where(pos, x[active], hi_a)
        lo_a = np.where(pos, lo_a, x[active])
        step = f / j.d1
        xn = x[active] - step
        bad = (xn <= lo_a) | (xn >= hi_a) | ~np.isfinite(xn)
        xn = np.where(bad, 0.5 * (lo_a + hi_a), xn)
        lo[active], hi[active] = lo_a, hi_a
        done = (np.abs(step) < tol) & ~bad | (hi_a - lo_a < tol)
        x[active] = xn
        idx_act = np.flatnonzero(active)
        active[idx_act[done]] = False
        if not active.any():
            break
    return (x + TWO_PI * shift.ravel()).reshape(y.shape)


# correspondences -----------------------------------------------------------------

def pushforward_metric(phi: CircleDiffeo) -> BoundaryMetric:
    """The metric ``phi_* dtheta``: ``sigma = log`` of the inverse lift derivative."""
    if phi.degree != 1:
        raise DomainError("pushforward is defined for degree-one maps")
    phi.check()
    psi = phi.inverse()

    def jet(theta):
        j = psi.jet(theta)
        r = j.d2 / j.d1
        return np.log(j.d1), r, j.d3 / j.d1 - r**2

    return BoundaryMetric(jet, "closure", f"pushforward({phi.label})")


def diffeo_from_metric(h: BoundaryMetric, theta0: float = 0.0) -> CircleDiffeo:
    return CircleDiffeo.from_metric(h, theta0)


def nfold_cover(phi: CircleDiffeo, n: int) -> CircleDiffeo:
    return phi.nfold(n)


def random_fourier_diffeo(rng: np.random.Generator, modes: int = 4, strength: float = 0.7) -> CircleDiffeo:
    """Random lift ``theta + sum a_k cos + b_k sin`` with ``min lift' >= 1 - strength``."""
    ks = np.arange(1, modes + 1)
    ab = rng.normal(size=(modes, 2)) / ks[:, None] ** 2
    bound = np.sum(ks * np.hypot(ab[:, 0], ab[:, 1]))
    ab *= strength / bound
    rows = [[int(k), float(a), float(b)] for k, (a, b) in zip(ks, ab)]
    return CircleDiffeo.fourier_lift(rows, label="random_fourier")
