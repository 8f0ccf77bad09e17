"""Shared fixture diffeomorphisms and frozen reference values."""

import numpy as np

from epstein_action import CircleDiffeo, MoebiusDisk, random_fourier_diffeo

GRID = 2048

# Action of the lift theta + sin(theta)/2, from the closed-form jet at n = 4096.
C1 = 0.09330699317991842
# n-fold actions of the same map at grid 2048.
NFOLD = {2: -10.509568212685632, 3: -28.18102688912822, 5: -84.72969465374449}
# 2 pi I_0(1)
BESSEL = 7.95492652101284

A0 = np.exp(1j * np.pi / 3) / 3


def moebius_maps():
    return [
        MoebiusDisk.translation(A0),
        MoebiusDisk.translation(-0.45 + 0.1j),
        MoebiusDisk.rotation(0.7) @ MoebiusDisk.translation(0.2 - 0.6j),
    ]


def sine_half():
    return CircleDiffeo.lift_sine(0.5)


def fixture_diffeos():
    """The ten acceptance fixtures as ``(name, diffeo)`` pairs."""
    rng = np.random.default_rng(20240607)
    out = [("identity", CircleDiffeo.identity())]
    out += [(f"moebius{i}", CircleDiffeo.moebius(m)) for i, m in enumerate(moebius_maps())]
    out += [("sine_half", sine_half()), ("sine_half_inverse", sine_half().inverse())]
    out += [(f"random{i}", random_fourier_diffeo(rng)) for i in range(4)]
    return out
