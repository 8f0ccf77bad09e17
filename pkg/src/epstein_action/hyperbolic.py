"""Primitives of the Poincare disk.

Disk points are complex numbers.  The Moebius group PSU(1,1) acts by
``z -> (a z + b) / (conj(b) z + conj(a))`` with ``|a|^2 - |b|^2 = 1``.
The Minkowski model uses the quadratic form ``q(x) = -x0^2 + x1^2 + x2^2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PreconditionError, SingularMapError

_DISK_SLACK = 1e-9
_SINGULAR = 1e-14


def _as_complex(z):
    return np.asarray(z, dtype=complex)


@dataclass(frozen=True)
class MoebiusDisk:
    """Element of PSU(1,1) stored as a unit-determinant pair ``(a, b)``."""

    a: complex
    b: complex

    def __post_init__(self):
        a, b = complex(self.a), complex(self.b)
        det = abs(a) ** 2 - abs(b) ** 2
        if det <= 0:
            raise DomainError("|a|^2 - |b|^2 must be positive")
        s = np.sqrt(det)
        object.__setattr__(self, "a", a / s)
        object.__setattr__(self, "b", b / s)

    # constructors -------------------------------------------------------
    @classmethod
    def identity(cls) -> "MoebiusDisk":
        return cls(1.0, 0.0)

    @classmethod
    def rotation(cls, angle: float) -> "MoebiusDisk":
        """Rotation ``z -> exp(i angle) z``."""
        return cls(np.exp(0.5j * angle), 0.0)

    @classmethod
    def translation(cls, a0: complex) -> "MoebiusDisk":
        """The map ``z -> (z + a0) / (1 + conj(a0) z)`` sending 0 to ``a0``."""
        a0 = complex(a0)
        if abs(a0) >= 1:
            raise DomainError("translation target must lie in the open disk")
        return cls(1.0, a0)

    @classmethod
    def from_matrix(cls, m) -> "MoebiusDisk":
        """Normalize a complex 2x2 matrix representing a disk automorphism."""
        m = np.asarray(m, dtype=complex)
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(det) < _SINGULAR:
            raise SingularMapError("degenerate matrix")
        lam = np.sqrt(det)
        a, b = m[0, 0] / lam, m[0, 1] / lam
        c, d = m[1, 0] / lam, m[1, 1] / lam
        scale = max(1.0, abs(a), abs(b))
        if abs(c - np.conj(b)) > 1e-8 * scale or abs(d - np.conj(a)) > 1e-8 * scale:
            raise DomainError("matrix does not preserve the unit disk")
        # average with the conjugate entries to suppress drift
        return cls(0.5 * (a + np.conj(d)), 0.5 * (b + np.conj(c)))

    @classmethod
    def three_point(cls, src, dst) -> "MoebiusDisk":
        """Unique element sending three circle points ``src`` to ``dst``.

        Both triples must lie on the unit circle in the same cyclic order.
        """
        m = np.linalg.solve(_cross_ratio_matrix(dst), _cross_ratio_matrix(src))
        return cls.from_matrix(m)

    # group structure ----------------------------------------------------
    @property
    def matrix(self) -> np.ndarray:
        a, b = self.a, self.b
        return np.array([[a, b], [np.conj(b), np.conj(a)]])

    def compose(self, other: "MoebiusDisk") -> "MoebiusDisk":
        """Return ``self o other``."""
        m = self.matrix @ other.matrix
        return MoebiusDisk(m[0, 0], m[0, 1])

    __matmul__ = compose

    def inverse(self) -> "MoebiusDisk":
        return MoebiusDisk(np.conj(self.a), -self.b)

    # action -------------------------------------------------------------
    def _denominator(self, z):
        z = _as_complex(z)
        if np.any(np.abs(z) > 1 + _DISK_SLACK):
            raise DomainError("point outside the closed unit disk")
        den = np.conj(self.b) * z + np.conj(self.a)
        if np.any(np.abs(den) < _SINGULAR):
            raise SingularMapError("degenerate denominator")
        return z, den

    def __call__(self, z):
        z, den = self._denominator(z)
        return (self.a * z + self.b) / den

    def derivative(self, z):
        _, den = self._denominator(z)
        return 1.0 / den**2

    def second_derivative(self, z):
        _, den = self._denominator(z)
        return -2.0 * np.conj(self.b) / den**3

    def third_derivative(self, z):
        _, den = self._denominator(z)
        return 6.0 * np.conj(self.b) ** 2 / den**4

    def is_close(self, other: "MoebiusDisk", tol: float = 1e-10) -> bool:
        """Equality in PSU(1,1), i.e. up to the sign of the matrix."""
        d1 = abs(self.a - other.a) + abs(self.b - other.b)
        d2 = abs(self.a + other.a) + abs(self.b + other.b)
        return min(d1, d2) < tol


def _cross_ratio_matrix(z):
    """Matrix sending ``z[0], z[1], z[2]`` to ``0, 1, inf``."""
    z1, z2, z3 = (complex(v) for v in z)
    return np.array([[z2 - z3, -z1 * (z2 - z3)], [z2 - z1, -z3 * (z2 - z1)]])


def apply_moebius(m: MoebiusDisk, z):
    return m(z)


def moebius_derivative(m: MoebiusDisk, z):
    return m.derivative(z)


# metric quantities ------------------------------------------------------

def _check_open_disk(*pts):
    for p in pts:
        if np.any(np.abs(_as_complex(p)) >= 1):
            raise DomainError("point not in the open unit disk")


def hyperbolic_distance(p, q):
    """Distance for the metric ``4|dz|^2 / (1 - |z|^2)^2``."""
    _check_open_disk(p, q)
    p, q = _as_complex(p), _as_complex(q)
    ratio = np.abs(p - q) / np.abs(1 - np.conj(p) * q)
    return 2.0 * np.arctanh(np.minimum(ratio, 1.0))


def area_primitive(p):
    """Coefficients ``(eta_x, eta_y)`` of ``eta = 2(x dy - y dx)/(1 - |p|^2)``.

    ``d eta`` is the hyperbolic area form ``4 dx dy / (1 - |p|^2)^2``.
    """
    _check_open_disk(p)
    p = _as_complex(p)
    w = 2.0 / (1.0 - np.abs(p) ** 2)
    return -w * p.imag, w * p.real


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


def circulation(points, closed: bool = True) -> float:
    """Line integral of the area primitive along a polyline.

    Each straight segment is integrated with 8-point Gauss-Legendre, so the
    result is exact to rounding for the given polyline.  For a closed curve
    this is the signed hyperbolic area it encloses.
    """
    p = _as_complex(points).ravel()
    if p.size < 2:
        return 0.0
    q = np.roll(p, -1) if closed else p[1:]
    p = p if closed else p[:-1]
    seg = q - p
    s = 0.5 * (_GL_NODES + 1.0)
    pts = p[:, None] + seg[:, None] * s[None, :]
    _check_open_disk(pts)
    # x dy - y dx along the segment equals Im(conj(z) dz)
    integrand = 2.0 * np.imag(np.conj(pts) * seg[:, None]) / (1.0 - np.abs(pts) ** 2)
    return float(np.sum(integrand @ (0.5 * _GL_WEIGHTS)))


def circulation_smooth(points, derivatives) -> float:
    """Area primitive integrated along a smooth periodic curve.

    ``points`` and ``derivatives`` sample ``z(theta)`` and ``dz/dtheta`` on a
    uniform grid of one period; the trapezoid sum is spectrally accurate.
    """
    z = _as_complex(points)
    dz = _as_complex(derivatives)
    _check_open_disk(z)
    integrand = 2.0 * np.imag(np.conj(z) * dz) / (1.0 - np.abs(z) ** 2)
    return float(2 * np.pi * np.mean(integrand))


# geodesics and horocycles ----------------------------------------------

def geodesic_circle(p: complex, q: complex):
    """Euclidean circle carrying the geodesic between ideal points ``p, q``.

    Returns ``(center, radius)``, or ``(None, None)`` for a diameter.
    """
    p, q = complex(p), complex(q)
    if abs(p - q) < 1e-15:
        raise DomainError("endpoints coincide")
    s = p + q
    if abs(s) < 1e-12:
        return None, None
    c = 2 * p * q / s
    return c, abs(c - p)


def busemann(xi: complex, q):
    """Busemann function at the ideal point ``xi``, zero on the horocycle through 0."""
    q = _as_complex(q)
    return np.log(np.abs(xi - q) ** 2 / (1.0 - np.abs(q) ** 2))


@dataclass(frozen=True)
class Horocycle:
    """Horocycle at ``base`` sized by the metric density ``decoration`` there."""

    base: complex
    decoration: float

    def __post_init__(self):
        if not self.decoration > 0:
            raise DomainError("decoration must be positive")
        base = complex(self.base)
        if abs(abs(base) - 1) > 1e-9:
            raise DomainError("horocycle base must be on the unit circle")
        object.__setattr__(self, "base", base / abs(base))

    @property
    def center(self) -> complex:
        d = self.decoration
        return d / (d + 1.0) * self.base

    @property
    def radius(self) -> float:
        return 1.0 / (self.decoration + 1.0)

    def point(self, angle):
        """Point at Euclidean angle ``angle`` about the center."""
        return self.center + self.radius * np.exp(1j * np.asarray(angle))

    def distance_to(self, z):
        """Euclidean distance of ``z`` from the horocycle circle."""
        return np.abs(np.abs(_as_complex(z) - self.center) - self.radius)

    def flowed(self, t: float) -> "Horocycle":
        """Horocycle at signed distance ``t`` towards the base."""
        return Horocycle(self.base, self.decoration * np.exp(t))

    def image(self, m: MoebiusDisk) -> "Horocycle":
        """Image under a disk automorphism."""
        return Horocycle(m(self.base), self.decoration / abs(m.derivative(self.base)))

    @classmethod
    def from_circle(cls, base: complex, radius: float) -> "Horocycle":
        return cls(base, 1.0 / radius - 1.0)


# Minkowski model ---------------------------------------------------------

@dataclass(frozen=True)
class MinkowskiVec:
    x0: float
    x1: float
    x2: float

    @property
    def array(self) -> np.ndarray:
        return np.array([self.x0, self.x1, self.x2], dtype=float)

    @classmethod
    def of(cls, v) -> "MinkowskiVec":
        v = np.asarray(v, dtype=float)
        return cls(float(v[0]), float(v[1]), float(v[2]))

    def q(self) -> float:
        return lorentz(self.array, self.array)


_J = np.array([-1.0, 1.0, 1.0])


def lorentz(u, v):
    """Pairing ``-u0 v0 + u1 v1 + u2 v2`` along the last axis."""
    return np.sum(_J * np.asarray(u) * np.asarray(v), axis=-1)


def to_minkowski(p):
    """Hyperboloid point for a disk point (vectorized, last axis = 3)."""
    _check_open_disk(p)
    p = _as_complex(p)
    r2 = np.abs(p) ** 2
    out = np.stack([1 + r2, 2 * p.real, 2 * p.imag], axis=-1) / (1 - r2)[..., None]
    return MinkowskiVec.of(out) if out.ndim == 1 else out


def from_minkowski(v):
    v = v.array if isinstance(v, MinkowskiVec) else np.asarray(v, dtype=float)
    if np.any(v[..., 0] <= 0):
        raise DomainError("not on the upper sheet of the hyperboloid")
    return (v[..., 1] + 1j * v[..., 2]) / (1 + v[..., 0])


def tangent_to_minkowski(p, v):
    """Push a Euclidean tangent vector ``v`` at disk point ``p`` to R^{1,2}."""
    p, v = _as_complex(p), _as_complex(v)
    x, y = p.real, p.imag
    s = 1.0 / (1 - np.abs(p) ** 2)
    s2 = s * s
    dx = np.stack([4 * x * s2, 2 * s + 4 * x * x * s2, 4 * x * y * s2], axis=-1)
    dy = np.stack([4 * y * s2, 4 * x * y * s2, 2 * s + 4 * y * y * s2], axis=-1)
    return v.real[..., None] * dx + v.imag[..., None] * dy


def dual_frame(x, n, tol: float = 1e-9):
    """Unit tangent ``T`` completing ``(x, T, N)`` to a positive Lorentz frame.

    ``x`` must be hyperbolic (``q = -1``), ``n`` de Sitter (``q = 1``) and
    orthogonal to ``x``.  Works on stacked arrays along the last axis.
    """
    scalar = isinstance(x, MinkowskiVec)
    xa = x.array if scalar else np.asarray(x, dtype=float)
    na = n.array if isinstance(n, MinkowskiVec) else np.asarray(n, dtype=float)
    if (np.any(np.abs(lorentz(xa, xa) + 1) > tol) or np.any(np.abs(lorentz(na, na) - 1) > tol)
            or np.any(np.abs(lorentz(xa, na)) > tol)):
        raise PreconditionError("need q(x) = -1, q(N) = 1 and <x, N> = 0")
    t = _J * np.cross(xa, na)
    t = t / np.sqrt(np.abs(lorentz(t, t)))[..., None]
    det = np.linalg.det(np.stack([xa, t, na], axis=-2))
    t = t * np.sign(det)[..., None]
    return MinkowskiVec.of(t) if scalar else t
