"""Shared oracles and generators.

The oracles here are deliberately naive re-implementations (no shared code
with the package) so agreement with them is meaningful.
"""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from coevents.qmeasure import NotAQMeasure, from_low_order


# --- oracles ---------------------------------------------------------------


def poly_value(monomials, event_points):
    """Parity of the monomials contained in the event (sets of 0-based points)."""
    ev = set(event_points)
    return sum(1 for m in monomials if set(m) <= ev) % 2


def mask_points(mask):
    return {i for i in range(mask.bit_length()) if mask >> i & 1}


def naive_integral(f, value_of, domain=None):
    """Level-set integral of nonnegative ``f`` restricted to ``domain``.

    ``value_of`` maps a set of 0-based points to 0/1.
    """
    pts = range(len(f)) if domain is None else sorted(domain)
    g = {i: Fraction(f[i]) for i in pts}
    levels = sorted({v for v in g.values() if v > 0})
    total = Fraction(0)
    prev = Fraction(0)
    for a in levels:
        above = {i for i, v in g.items() if v >= a}
        total += (a - prev) * value_of(above)
        prev = a
    return total


def naive_double(F, value_of, domain):
    n = len(F)
    g = [
        naive_integral([F[i][j] for i in range(n)], value_of, domain) if j in domain else Fraction(0)
        for j in range(n)
    ]
    return naive_integral(g, value_of, domain)


def coevent_value_fn(phi):
    return lambda pts: phi(sum(1 << i for i in pts))


# --- generators --------------------------------------------------------------


def random_qmeasure(rng: random.Random, n: int, hi: int = 6, zero_prob: float = 0.0):
    """A random q-measure with small integer low-order data (retries until valid)."""
    while True:
        singles = [0 if rng.random() < zero_prob else rng.randint(1, hi) for _ in range(n)]
        pairs = {(i, j): rng.randint(0, 2 * hi) for i, j in combinations(range(n), 2)}
        try:
            return from_low_order(singles, pairs)
        except NotAQMeasure:
            continue


def random_grade1(rng: random.Random, n: int, positive: int):
    """Ordinary measure with exactly ``positive`` nonzero point masses."""
    w = [0] * n
    for i in rng.sample(range(n), positive):
        w[i] = Fraction(rng.randint(1, 9), rng.randint(1, 3))
    return from_low_order(w)


@pytest.fixture
def rng():
    return random.Random(20240611)


# --- acceptance reporting ----------------------------------------------------

_ACCEPTANCE: list[tuple[int, str, str, float]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config.addinivalue_line("markers", "slow: long-running")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    crit = dict(report.user_properties).get("criterion")
    if crit is not None:
        num, title = crit
        _ACCEPTANCE.append((num, title, "PASS" if report.passed else "FAIL", report.duration))


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    m = item.get_closest_marker("criterion")
    if m is not None:
        item.user_properties.append(("criterion", tuple(m.args)))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, status, dur in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {num:>2}: {status}  {title} ({dur:.2f}s)")
