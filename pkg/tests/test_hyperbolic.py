import numpy as np
import pytest

from epstein_action.errors import DomainError, PreconditionError, SingularMapError
from epstein_action.hyperbolic import (Horocycle, MinkowskiVec, MoebiusDisk, apply_moebius, area_primitive,
                                       busemann, circulation, circulation_smooth, dual_frame, from_minkowski,
                                       geodesic_circle, hyperbolic_distance, lorentz, moebius_derivative,
                                       to_minkowski)

A0 = np.exp(1j * np.pi / 3) / 3


def random_moebius(rng):
    z = 0.8 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
    return MoebiusDisk.rotation(rng.uniform(0, 2 * np.pi)) @ MoebiusDisk.translation(z)


def random_disk_points(rng, n, rmax=0.95):
    return rmax * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))


def test_identity_fixes_points():
    assert apply_moebius(MoebiusDisk.identity(), 0.3 + 0.1j) == pytest.approx(0.3 + 0.1j, abs=1e-15)


def test_translation_sends_origin_to_target():
    assert abs(MoebiusDisk.translation(A0)(0.0) - A0) < 1e-15


def test_translation_normalization():
    m = MoebiusDisk.translation(A0)
    assert abs(m.a) ** 2 - abs(m.b) ** 2 == pytest.approx(1.0, abs=1e-15)
    assert abs(m.a) == pytest.approx(3 / (2 * np.sqrt(2)), abs=1e-15)


def test_inverse_round_trip():
    rng = np.random.default_rng(1)
    m = random_moebius(rng)
    z = random_disk_points(rng, 64)
    assert np.max(np.abs((m @ m.inverse())(z) - z)) < 1e-12
    assert np.max(np.abs(m.inverse()(m(z)) - z)) < 1e-12


def test_composition_law():
    rng = np.random.default_rng(2)
    for _ in range(20):
        a, b, c = (random_moebius(rng) for _ in range(3))
        z = random_disk_points(rng, 8)
        assert np.max(np.abs((a @ b @ c)(z) - a(b(c(z))))) < 1e-12


def test_singular_and_domain_errors():
    with pytest.raises(DomainError):
        MoebiusDisk(0.5, 0.5)
    with pytest.raises(DomainError):
        MoebiusDisk.identity()(1.5)
    with pytest.raises(SingularMapError):
        MoebiusDisk.from_matrix([[1, 1], [1, 1]])


def test_derivative_values():
    assert moebius_derivative(MoebiusDisk.identity(), 0.2 - 0.3j) == pytest.approx(1.0)
    # (1 - a0^2) / (1 + a0)^2 at z = 1 for a0 = 1/3
    assert moebius_derivative(MoebiusDisk.translation(1 / 3), 1.0) == pytest.approx(0.5, abs=1e-14)


def test_derivatives_match_finite_differences():
    m = MoebiusDisk.translation(0.3 - 0.4j)
    z, h = 0.1 + 0.2j, 1e-5
    fd1 = (m(z + h) - m(z - h)) / (2 * h)
    fd2 = (m.derivative(z + h) - m.derivative(z - h)) / (2 * h)
    fd3 = (m.second_derivative(z + h) - m.second_derivative(z - h)) / (2 * h)
    assert abs(fd1 - m.derivative(z)) < 1e-9
    assert abs(fd2 - m.second_derivative(z)) < 1e-8
    assert abs(fd3 - m.third_derivative(z)) < 1e-7


def test_boundary_derivative_identity():
    # |m'(z)||m'(w)| / |m(z) - m(w)|^2 = 1 / |z - w|^2 on the circle
    rng = np.random.default_rng(3)
    m = random_moebius(rng)
    z, w = np.exp(2j * np.pi * rng.uniform(size=(2, 100)))
    lhs = np.abs(m.derivative(z) * m.derivative(w)) / np.abs(m(z) - m(w)) ** 2
    assert np.max(np.abs(lhs * np.abs(z - w) ** 2 - 1)) < 1e-12


def test_three_point():
    src = np.exp(1j * np.array([0.1, 2.0, 4.0]))
    dst = np.exp(1j * np.array([1.0, 1.5, 5.0]))
    m = MoebiusDisk.three_point(src, dst)
    assert np.max(np.abs(m(src) - dst)) < 1e-12


def test_distance():
    assert hyperbolic_distance(0.3j, 0.3j) == 0.0
    assert hyperbolic_distance(0.0, np.tanh(0.5)) == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(DomainError):
        hyperbolic_distance(0.0, 1.0)


def test_distance_invariance():
    rng = np.random.default_rng(4)
    p, q = random_disk_points(rng, 2, 0.8)
    d = hyperbolic_distance(p, q)
    drift = max(abs(hyperbolic_distance(m(p), m(q)) - d) for m in (random_moebius(rng) for _ in range(50)))
    assert drift < 1e-10


def test_area_primitive():
    assert area_primitive(0.0) == (0.0, 0.0)
    with pytest.raises(DomainError):
        area_primitive(1.0)


def test_circulation_of_round_circle():
    target = 2 * np.pi * (np.cosh(1) - 1)
    th = 2 * np.pi * np.arange(256) / 256
    z = np.tanh(0.5) * np.exp(1j * th)
    assert circulation_smooth(z, 1j * z) == pytest.approx(target, abs=1e-12)
    # inscribed polygon: second order in the spacing
    th = 2 * np.pi * np.arange(1 << 16) / (1 << 16)
    assert circulation(np.tanh(0.5) * np.exp(1j * th)) == pytest.approx(target, abs=1e-8)


def test_circulation_degenerate_loop():
    assert circulation(np.full(10, 0.2 + 0.1j)) == 0.0


def _geodesic_segment(p, q, n):
    t = MoebiusDisk.translation(-p)
    s = np.linspace(0, 1, n)
    return t.inverse()(s * t(q))


def test_circulation_matches_gauss_bonnet_on_geodesic_triangle():
    verts = [0.1 + 0.05j, 0.7 - 0.2j, -0.3 + 0.6j]
    pts = np.concatenate([_geodesic_segment(verts[i], verts[(i + 1) % 3], 2000)[:-1] for i in range(3)])
    angles = 0.0
    for i in range(3):
        p, q, r = verts[i], verts[(i + 1) % 3], verts[i - 1]
        t = MoebiusDisk.translation(-p)
        angles += abs(np.angle(t(q) / t(r)))
    assert circulation(pts) == pytest.approx(np.pi - angles, abs=1e-6)


def test_horocycle_geometry():
    hc = Horocycle(1j, 1.0)
    assert hc.center == pytest.approx(0.5j)
    assert hc.radius == pytest.approx(0.5)
    assert np.max(hc.distance_to(hc.point(np.linspace(0, 6, 7)))) < 1e-15
    assert Horocycle.from_circle(1j, 0.25).decoration == pytest.approx(3.0)
    # Busemann function is constant on a horocycle
    b = busemann(1j, hc.point(np.linspace(0.1, 3, 9)))
    assert np.ptp(b) < 1e-12


def test_horocycle_naturality():
    rng = np.random.default_rng(5)
    for _ in range(10):
        m = random_moebius(rng)
        hc = Horocycle(np.exp(2j * np.pi * rng.uniform()), rng.uniform(0.2, 5))
        pts = hc.point(2 * np.pi * np.arange(32) / 32)
        assert np.max(hc.image(m).distance_to(m(pts))) < 1e-10


def test_horocycle_flow_is_distance():
    hc = Horocycle(1.0, 1.0)
    near = hc.flowed(0.7)
    # innermost points on the diameter through the base
    p = 1 - 2 * hc.radius
    q = 1 - 2 * near.radius
    assert hyperbolic_distance(p, q) == pytest.approx(0.7, abs=1e-12)


def test_geodesic_circle():
    assert geodesic_circle(1, -1) == (None, None)
    c, r = geodesic_circle(1, 1j)
    assert c == pytest.approx(1 + 1j)
    assert r == pytest.approx(1.0)
    with pytest.raises(DomainError):
        geodesic_circle(1, 1)


def test_minkowski_round_trip():
    rng = np.random.default_rng(6)
    z = random_disk_points(rng, 64)
    x = to_minkowski(z)
    assert np.max(np.abs(lorentz(x, x) + 1)) < 1e-10
    assert np.max(np.abs(from_minkowski(x) - z)) < 1e-12


def test_dual_frame_orientation():
    t = dual_frame(MinkowskiVec(1, 0, 0), MinkowskiVec(0, 1, 0))
    assert t == MinkowskiVec(0.0, 0.0, -1.0)
    det = np.linalg.det(np.array([[1, 0, 0], t.array, [0, 1, 0]]))
    assert det == pytest.approx(1.0)


def test_dual_frame_preconditions():
    with pytest.raises(PreconditionError):
        dual_frame(MinkowskiVec(1, 0, 0), MinkowskiVec(1, 1, 0))
