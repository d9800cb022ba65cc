"""The quantum (level-set) integral of a point function against a coevent.

Point functions are sequences of exact rationals indexed by 0-based outcome;
pair functions are symmetric square matrices of the same.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from coevents.algebra import Coevent, check_event, members

PointFunction = tuple[Fraction, ...]
PairFunction = tuple[tuple[Fraction, ...], ...]


def point_function(values: Sequence, n: int | None = None) -> PointFunction:
    f = tuple(Fraction(v) for v in values)
    if n is not None and len(f) != n:
        raise ValueError(f"point function needs {n} values, got {len(f)}")
    return f


def pair_function(rows: Sequence[Sequence], n: int | None = None) -> PairFunction:
    F = tuple(tuple(Fraction(v) for v in row) for row in rows)
    size = len(F)
    if n is not None and size != n:
        raise ValueError(f"pair function needs {n} rows, got {size}")
    for i, row in enumerate(F):
        if len(row) != size:
            raise ValueError("pair function must be square")
        for j in range(i):
            if row[j] != F[j][i]:
                raise ValueError(f"pair function is not symmetric at (w{j + 1},w{i + 1})")
    return F


def _check_length(f: Sequence, phi: Coevent) -> None:
    if len(f) != phi.n:
        raise ValueError(f"function has {len(f)} values but the space has {phi.n} points")


def q_integral_nonneg(f: Sequence, phi: Coevent) -> Fraction:
    """Integral of a nonnegative ``f`` over its distinct positive level sets.

    With positive values a_1 < ... < a_k and tails T_j = {f >= a_j}, the
    result is sum_j (a_j - a_{j-1}) * phi(T_j), a_0 = 0.  Ties never matter.
    """
    _check_length(f, phi)
    levels: dict[Fraction, int] = {}
    for i, v in enumerate(f):
        v = Fraction(v)
        if v < 0:
            raise ValueError(f"negative value {v} at w{i + 1}")
        if v:
            levels[v] = levels.get(v, 0) | (1 << i)
    total = Fraction(0)
    prev = Fraction(0)
    tail = 0
    for v in sorted(levels):
        tail |= levels[v]
    for v in sorted(levels):
        if (phi.table >> tail) & 1:
            total += v - prev
        prev = v
        tail &= ~levels[v]
    return total


def split_sign(f: Sequence) -> tuple[PointFunction, PointFunction]:
    """Unique ``f = pos - neg`` with ``pos, neg >= 0`` and disjoint supports."""
    pos = tuple(max(Fraction(v), Fraction(0)) for v in f)
    neg = tuple(max(-Fraction(v), Fraction(0)) for v in f)
    return pos, neg


def q_integral(f: Sequence, phi: Coevent) -> Fraction:
    pos, neg = split_sign(f)
    return q_integral_nonneg(pos, phi) - q_integral_nonneg(neg, phi)


def q_integral_over(mask: int, f: Sequence, phi: Coevent) -> Fraction:
    check_event(phi.n, mask)
    _check_length(f, phi)
    return q_integral(
        [v if (mask >> i) & 1 else 0 for i, v in enumerate(f)],
        phi,
    )


def inner_integrals(mask: int, F: Sequence[Sequence], phi: Coevent) -> list[Fraction]:
    """``g_A(w') = ∫_A F(., w') dphi`` for every outcome ``w'``."""
    return [
        q_integral_over(mask, [F[w][wp] for w in range(phi.n)], phi)
        for wp in range(phi.n)
    ]


def double_integral(mask: int, F: Sequence[Sequence], phi: Coevent) -> Fraction:
    F = pair_function(F, phi.n)
    return q_integral_over(mask, inner_integrals(mask, F, phi), phi)


def q_integral_sorted(f: Sequence, phi: Coevent) -> Fraction:
    """Telescoping sum over points sorted by value (ties broken by index).

    Test oracle; agrees with :func:`q_integral_nonneg` for nonnegative ``f``.
    """
    _check_length(f, phi)
    pts = sorted((Fraction(v), i) for i, v in enumerate(f) if Fraction(v) > 0)
    total = Fraction(0)
    prev = Fraction(0)
    for k, (v, _) in enumerate(pts):
        tail = 0
        for _, j in pts[k:]:
            tail |= 1 << j
        total += (v - prev) * ((phi.table >> tail) & 1)
        prev = v
    return total


def q_integral_lebesgue(f: Sequence, phi: Coevent) -> Fraction:
    """Direct layer-cake evaluation of the signed definition.

    Integrates ``phi({f > t})`` over t >= 0 and subtracts the integral of
    ``phi({f < -t})``; both integrands are step functions with breakpoints at
    the absolute values of ``f``.
    """
    _check_length(f, phi)
    vals = [Fraction(v) for v in f]
    cuts = sorted({abs(v) for v in vals} | {Fraction(0)})
    total = Fraction(0)
    for lo, hi in zip(cuts, cuts[1:]):
        up = sum(1 << i for i, v in enumerate(vals) if v > lo)
        down = sum(1 << i for i, v in enumerate(vals) if v < -lo)
        total += (hi - lo) * (((phi.table >> up) & 1) - ((phi.table >> down) & 1))
    return total


# Closed forms for particular coevents.  Each is computed without the
# level-set machinery above and serves as an independent check on it.


def closed_form(kind: str, f: Sequence, **args) -> Fraction:
    """Closed-form integral of nonnegative ``f`` for a named family of coevents.

    kinds and their arguments:

    ``additive-chain`` (``points``): w_1* + ... + w_r* over the given points,
    the alternating sum of their sorted values from the top.
    ``monomial`` (``points``): the product of the evaluation maps, the minimum.
    ``upper-star`` (``event``): A^*, the maximum of ``f`` over A.
    ``lower-star`` (``event``): A_*, ``max f - max f off A`` when the top
    level set lies inside A, else 0.
    ``atom`` (``event``): the atom at A, the gap between consecutive levels
    when A is a tail of the level sets, else 0.
    """
    vals = [Fraction(v) for v in f]
    if any(v < 0 for v in vals):
        raise ValueError("closed forms are stated for nonnegative functions")
    if kind == "additive-chain":
        chain = sorted(vals[p] for p in args["points"])
        out = Fraction(0)
        sign = 1
        for v in reversed(chain):
            out += sign * v
            sign = -sign
        return out
    if kind == "monomial":
        return min(vals[p] for p in args["points"])
    if kind == "upper-star":
        inside = [vals[p] for p in members(args["event"])]
        return max(inside, default=Fraction(0))
    if kind == "lower-star":
        mask = args["event"]
        top = max(vals, default=Fraction(0))
        if top == 0:
            return Fraction(0)
        if any(v == top and not (mask >> i) & 1 for i, v in enumerate(vals)):
            return Fraction(0)
        outside = [v for i, v in enumerate(vals) if not (mask >> i) & 1]
        return top - max(outside, default=Fraction(0))
    if kind == "atom":
        mask = args["event"]
        alphas = sorted({v for v in vals if v > 0})
        level_sets = [sum(1 << i for i, v in enumerate(vals) if v == a) for a in alphas]
        for m in range(len(alphas)):
            union = 0
            for s in level_sets[m:]:
                union |= s
            if union == mask:
                return alphas[m] - (alphas[m - 1] if m else 0)
        return Fraction(0)
    raise ValueError(f"unknown closed-form kind {kind!r}")
