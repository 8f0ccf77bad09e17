import numpy as np
import pytest

from epstein_action.boundary import TWO_PI
from epstein_action.descriptors import load_descriptor
from epstein_action.errors import ClosureError, DomainError, NotADiffeomorphismError
from epstein_action.hyperbolic import MoebiusDisk
from epstein_action.piecewise import (PiecewiseMoebiusDiffeo, build_piecewise, carrier_horocycles,
                                      completed_epstein, distributional_action, mollified_action,
                                      scaled_completed_epstein, transition)
from epstein_action.schwarzian import action_direct

QUARTERS = np.pi / 2 * np.arange(4)
SEED = MoebiusDisk(1, 0.1 + 0.2j)


@pytest.fixture(scope="module")
def square():
    return build_piecewise(QUARTERS, [0.5] * 4, seed=SEED)


def hyperbolic_arc_length(arc, n=4000):
    s0, s1 = arc.span()
    s = np.linspace(s0, s1, n + 1)
    z, dz = arc.z(s), arc.dz(s)
    speed = 2 * np.abs(dz) / (1 - np.abs(z) ** 2)
    return float(np.sum(0.5 * (speed[1:] + speed[:-1]) * np.diff(s)))


def test_closure_solves_for_three_jumps(square):
    assert np.allclose(square.jumps(), [0.5, -0.4, 0.5, -0.4], atol=1e-9)
    assert set(square.solved) == {1, 2, 3}
    square.check_pieces()


def test_pieces_descriptor_reproduces_map(square):
    again = load_descriptor(square.to_descriptor()).diffeo
    th = np.linspace(0, TWO_PI, 101)
    assert np.max(np.abs(again.lift(th) - square.lift(th))) < 1e-12


def test_fixture_file_matches_construction(square):
    pm = load_descriptor("fixtures/piecewise4.json").diffeo
    assert np.max(np.abs(pm.jumps() - square.jumps())) < 1e-12


def test_transition_creates_the_requested_jump():
    tau = transition(np.exp(0.4j), 0.7)
    assert abs(tau(np.exp(0.4j)) - np.exp(0.4j)) < 1e-15
    pm = PiecewiseMoebiusDiffeo(QUARTERS, [MoebiusDisk.identity()] * 4)
    assert np.max(np.abs(pm.jumps())) < 1e-15


def test_zero_jumps_give_one_moebius_map():
    pm = build_piecewise(QUARTERS, [0.0] * 4, seed=SEED)
    assert np.max(np.abs(pm.jumps())) < 1e-12
    for p in pm.pieces:
        assert abs(p.a - SEED.a) < 1e-12 and abs(p.b - SEED.b) < 1e-12
    th = np.linspace(0, TWO_PI, 50)
    assert abs(action_direct(pm, 256)) < 1e-9
    assert distributional_action(pm)[0] == pytest.approx(0.0, abs=1e-12)
    c = completed_epstein(pm)
    assert np.ptp(c.corners.real) + np.ptp(c.corners.imag) < 1e-12
    assert c.length() == pytest.approx(0.0, abs=1e-12)
    assert np.max(np.abs(np.exp(1j * pm.lift(th)) - SEED(np.exp(1j * th)))) < 1e-12


def test_unclosable_jumps_rejected():
    with pytest.raises((ClosureError, NotADiffeomorphismError)):
        build_piecewise(QUARTERS, [-1.0] * 4, free=[0, 1, 2], max_iter=30)


def test_bad_breakpoints():
    with pytest.raises(DomainError):
        build_piecewise([0.0, 1.0], [0.0, 0.0])
    with pytest.raises(DomainError):
        PiecewiseMoebiusDiffeo([0.0, 2.0, 1.0], [MoebiusDisk.identity()] * 3)


def test_distributional_action(square):
    total, lam = distributional_action(square)
    assert total == pytest.approx(0.2, abs=1e-9)
    assert np.allclose(lam, square.jumps())


def test_corner_angles(square):
    c = completed_epstein(square)
    assert np.allclose(c.betas, np.pi / 2, atol=1e-12)
    assert c.betas.sum() == pytest.approx(TWO_PI, abs=1e-12)


def test_corners_lie_on_adjacent_horocycles(square):
    c = completed_epstein(square)
    horos = carrier_horocycles(square)
    for j in range(4):
        assert horos[j].distance_to(c.corners[j]) < 1e-12
        assert horos[j].distance_to(c.corners[j - 1]) < 1e-12


def test_arc_lengths_are_the_jumps(square):
    c = completed_epstein(square)
    assert np.allclose(c.lambdas, square.jumps(), atol=1e-9)
    for arc in c.horo_arcs:
        # signed length is positive when the parameter decreases
        assert -hyperbolic_arc_length(arc) == pytest.approx(arc.length, abs=1e-9)


def test_length_equals_minus_area(square):
    c = completed_epstein(square)
    assert c.length() == pytest.approx(distributional_action(square)[0], abs=1e-9)
    assert c.signed_area() == pytest.approx(-c.length(), abs=1e-9)
    assert c.signed_area("eta") == pytest.approx(-c.length(), abs=1e-5)


@pytest.mark.parametrize("t", [3.0, 5.0])
def test_scaled_curve_is_smooth(square, t):
    c = scaled_completed_epstein(square, t)
    assert len(c.arcs) == 8
    assert np.max(np.abs(c.corner_angles())) < 1e-6
    assert c.signed_area() == pytest.approx(c.signed_area("eta"), abs=1e-6)


def test_scaled_curve_rejects_nonpositive_t(square):
    with pytest.raises(DomainError):
        scaled_completed_epstein(square, 0.0)


def test_mollified_action_converges(square):
    errs = [abs(mollified_action(square, eps) - 0.2) for eps in (1e-2, 1e-3)]
    assert errs[1] < 1e-3
    assert errs[1] < errs[0]
