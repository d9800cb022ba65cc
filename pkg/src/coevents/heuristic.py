"""Floating-point search for pair densities, certified exactly.

Random strictly positive starts are pushed toward zero residual with
``scipy.optimize.least_squares``.  A candidate only counts once an exact
witness is produced: first by solving the exact system on the chamber the
candidate lies in, then by rounding to nearby rationals.  Failure to certify
is reported as ``unknown``; this mode never claims infeasibility.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np
from scipy.optimize import least_squares

from coevents.algebra import Coevent
from coevents.qmeasure import QMeasure

LOWER = 1e-6
TOL = 1e-9


def _choquet(vals: np.ndarray, mask: int, phi: Coevent) -> float:
    """Float quantum integral of ``vals`` (nonnegative) restricted to ``mask``."""
    pts = [i for i in range(len(vals)) if mask >> i & 1]
    pts.sort(key=lambda i: vals[i])
    total, prev, tail = 0.0, 0.0, mask
    for i in pts:
        if phi.table >> tail & 1:
            total += vals[i] - prev
        prev = vals[i]
        tail &= ~(1 << i)
    return total


def float_double_integral(mask: int, F: np.ndarray, phi: Coevent) -> float:
    g = np.array([_choquet(F[:, j], mask, phi) if mask >> j & 1 else 0.0 for j in range(len(F))])
    return _choquet(g, mask, phi)


def _unpack(n: int, x: np.ndarray, pins: dict[int, Fraction], free) -> np.ndarray:
    F = np.zeros((n, n))
    for w, v in pins.items():
        F[w, w] = float(v)
    for (i, j), val in zip(free, x):
        F[i, j] = F[j, i] = val
    return F


def _rationalize(n, x, pins, free, denom: int):
    F = [[Fraction(0)] * n for _ in range(n)]
    for w, v in pins.items():
        F[w][w] = v
    for (i, j), val in zip(free, x):
        q = Fraction(float(val)).limit_denominator(denom)
        F[i][j] = F[j][i] = q
    return F


def heuristic_search2(mu: QMeasure, phi: Coevent, pins: dict[int, Fraction], seed: int = 0, restarts: int = 24):
    from coevents.generation import (
        UNKNOWN,
        GenerationReport,
        guided_search2,
        verify2,
    )

    n = mu.n
    free = [(i, j) for i, j in combinations_with_replacement(range(n), 2) if not (i == j and i in pins)]
    pair_list = list(combinations_with_replacement(range(n), 2))
    targets = np.array([float(mu(a)) for a in range(1, 1 << n)])
    scale = max(1.0, float(max(mu.values)))
    rng = np.random.default_rng(seed)

    def residual(x):
        F = _unpack(n, x, pins, free)
        return np.array([float_double_integral(a, F, phi) for a in range(1, 1 << n)]) - targets

    tried = 0
    if not free:
        starts = [np.zeros(0)]
    else:
        starts = [rng.uniform(0.1, 2.0 * scale, size=len(free)) for _ in range(restarts)]
    for x0 in starts:
        tried += 1
        if len(free):
            sol = least_squares(residual, x0, bounds=(LOWER, np.inf), xtol=1e-14, ftol=1e-14, gtol=1e-14)
            x = sol.x
        else:
            x = x0
        if np.max(np.abs(residual(x)), initial=0.0) > 1e-7 * scale:
            continue
        F = _unpack(n, x, pins, free)
        point = [F[i, j] for i, j in pair_list]
        rep = guided_search2(mu, phi, pins, point, tol=1e-7 * scale)
        if rep is not None:
            return rep
        for denom in (1, 2, 4, 6, 12, 60, 1000):
            cand = _rationalize(n, x, pins, free, denom)
            if all(v > 0 for row in cand for v in row) and verify2(mu, phi, cand):
                return GenerationReport(
                    phi, 2, "feasible", density=tuple(tuple(r) for r in cand),
                    chambers_checked=tried, mode="heuristic",
                )
    return GenerationReport(phi, 2, UNKNOWN, chambers_checked=tried, mode="heuristic")
