"""Extrapolation of sequences to a limit."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError


@dataclass(frozen=True)
class Extrapolation:
    limit: float
    error: float
    table: np.ndarray


def richardson(h, values, power: float = 1.0) -> Extrapolation:
    """Neville extrapolation of ``values(h)`` to ``h = 0``.

    The error model is a power series in ``h**power``.  The error estimate is
    the gap between the two highest-order diagonal entries.
    """
    x = np.asarray(h, dtype=float) ** power
    v = np.asarray(values, dtype=float)
    n = v.size
    table = np.full((n, n), np.nan)
    table[:, 0] = v
    for j in range(1, n):
        for i in range(j, n):
            table[i, j] = (x[i - j] * table[i, j - 1] - x[i] * table[i - 1, j - 1]) / (x[i - j] - x[i])
    limit = table[n - 1, n - 1]
    err = abs(limit - table[n - 1, n - 2]) if n > 1 else np.inf
    return Extrapolation(float(limit), float(err), table)


def empirical_order(h, values) -> float:
    """Observed convergence order from the last three terms."""
    v = np.asarray(values, dtype=float)
    h = np.asarray(h, dtype=float)
    d1, d2 = v[-2] - v[-3], v[-1] - v[-2]
    if d1 == 0 or d2 == 0:
        return np.inf
    return float(np.log(abs(d1 / d2)) / np.log(h[-2] / h[-1]))


def check_cauchy(values, tol: float) -> None:
    """Raise when the tail of a sequence is not settling."""
    v = np.asarray(values, dtype=float)
    if v.size >= 3 and abs(v[-1] - v[-2]) > max(abs(v[-2] - v[-3]), tol):
        raise ConvergenceError("sequence differences are not decreasing")
