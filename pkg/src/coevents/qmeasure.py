"""Quantum measures: grade-2 additivity, construction, regularity, preclusivity.

A set function on an ``n``-point space is any sequence of ``2**n`` values
indexed by event mask; coevents are accepted wherever set functions are.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

from coevents.algebra import (
    Coevent,
    enumerate_coevents,
    members,
    popcount,
    subsets,
)

SetFunctionLike = Union[Sequence, Coevent]


class NotAQMeasure(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def as_values(xi: SetFunctionLike) -> tuple[Fraction, ...]:
    if isinstance(xi, Coevent):
        return tuple(Fraction(v) for v in xi.values())
    if isinstance(xi, QMeasure):
        return xi.values
    vals = tuple(Fraction(v) for v in xi)
    size = len(vals)
    if size < 2 or size & (size - 1):
        raise ValueError(f"a set function needs 2**n values, got {size}")
    return vals


def space_size(values: Sequence) -> int:
    return len(values).bit_length() - 1


def _check_set_function(vals: Sequence[Fraction]) -> None:
    if vals[0] != 0:
        raise ValueError("a set function must vanish on the empty event")
    for a, v in enumerate(vals):
        if v < 0:
            raise ValueError(f"negative value {v} on event mask {a:#b}")


def disjoint_triples(n: int) -> Iterable[tuple[int, int, int]]:
    """Unordered triples of mutually disjoint nonempty events, deterministic order."""
    full = (1 << n) - 1
    for a in range(1, 1 << n):
        for b in subsets(full & ~a):
            if b <= a:
                continue
            for c in subsets(full & ~a & ~b):
                if c <= b:
                    continue
                yield a, b, c


def grade2_violation(xi: SetFunctionLike) -> tuple[int, int, int] | None:
    """First disjoint triple (A, B, C) breaking grade-2 additivity, or None."""
    vals = as_values(xi)
    _check_set_function(vals)
    n = space_size(vals)
    for a, b, c in disjoint_triples(n):
        lhs = vals[a | b | c]
        rhs = vals[a | b] + vals[a | c] + vals[b | c] - vals[a] - vals[b] - vals[c]
        if lhs != rhs:
            return a, b, c
    return None


def is_q_measure(xi: SetFunctionLike) -> bool:
    return grade2_violation(xi) is None


def low_order_fill(vals: Sequence[Fraction], mask: int) -> Fraction:
    """Value forced on ``mask`` by the singleton and doubleton values."""
    pts = members(mask)
    m = len(pts)
    if m <= 2:
        return vals[mask]
    pairs = sum(vals[(1 << i) | (1 << j)] for i, j in combinations(pts, 2))
    singles = sum(vals[1 << i] for i in pts)
    return pairs - (m - 2) * singles


def low_order_violation(xi: SetFunctionLike) -> int | None:
    """First event whose value differs from its low-order reconstruction."""
    vals = as_values(xi)
    _check_set_function(vals)
    for a in range(len(vals)):
        if popcount(a) >= 3 and vals[a] != low_order_fill(vals, a):
            return a
    return None


@dataclass(frozen=True)
class QMeasure:
    """A nonnegative grade-2 additive set function (validated on creation)."""

    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.values) != 1 << self.n:
            raise ValueError(f"need {1 << self.n} values for n={self.n}")
        _check_set_function(self.values)
        bad = grade2_violation(self.values)
        if bad is not None:
            raise NotAQMeasure(
                "grade-2 additivity fails on " + _fmt_triple(bad), witness=bad
            )

    @classmethod
    def from_values(cls, values: SetFunctionLike) -> QMeasure:
        vals = as_values(values)
        return cls(space_size(vals), vals)

    def __call__(self, mask: int) -> Fraction:
        return self.values[mask]

    @property
    def omega(self) -> int:
        return (1 << self.n) - 1

    def singletons(self) -> list[Fraction]:
        return [self.values[1 << i] for i in range(self.n)]


def _fmt_triple(t) -> str:
    from coevents.algebra import format_event

    return ", ".join(format_event(x) for x in t)


def from_low_order(
    singletons: Sequence, doubletons: Mapping[tuple[int, int], object] | None = None
) -> QMeasure:
    """Build the unique q-measure with the given singleton and doubleton values.

    ``doubletons`` maps 0-based pairs ``(i, j)`` to values; missing pairs
    default to the additive value ``mu(i) + mu(j)``.
    """
    n = len(singletons)
    if n < 1:
        raise ValueError("need at least one singleton value")
    vals = [Fraction(0)] * (1 << n)
    for i, v in enumerate(singletons):
        vals[1 << i] = Fraction(v)
    doubletons = dict(doubletons or {})
    for i, j in combinations(range(n), 2):
        key = (i, j) if (i, j) in doubletons else (j, i)
        v = doubletons.pop(key, None)
        vals[(1 << i) | (1 << j)] = (
            Fraction(v) if v is not None else vals[1 << i] + vals[1 << j]
        )
    if doubletons:
        raise ValueError(f"doubleton keys out of range: {sorted(doubletons)}")
    for a in range(1 << n):
        if popcount(a) >= 3:
            vals[a] = low_order_fill(vals, a)
    for a, v in enumerate(vals):
        if v < 0:
            from coevents.algebra import format_event

            raise NotAQMeasure(
                f"low-order data force the negative value {v} on {format_event(a)}",
                witness=a,
            )
    return QMeasure(n, tuple(vals))


def from_point_masses(weights: Sequence) -> QMeasure:
    """The ordinary (grade-1 additive) measure with the given point masses."""
    return from_low_order(weights)


def dirac(n: int, point: int, c=1) -> QMeasure:
    w = [0] * n
    w[point] = c
    return from_point_masses(w)


def regularity_violation(xi: SetFunctionLike) -> tuple[str, int, int] | None:
    """First failure of (R1) or (R2) as ``(rule, A, B)``, or None.

    (R1): xi(A) = 0 implies xi(A ∪ B) = xi(B) for B disjoint from A.
    (R2): xi(A ∪ B) = 0 implies xi(A) = xi(B) for disjoint A, B.
    """
    vals = as_values(xi)
    n = space_size(vals)
    full = (1 << n) - 1
    for a in range(1 << n):
        if vals[a] == 0:
            for b in subsets(full & ~a):
                if vals[a | b] != vals[b]:
                    return "R1", a, b
    for a in range(1 << n):
        for b in subsets(full & ~a):
            if vals[a | b] == 0 and vals[a] != vals[b]:
                return "R2", a, b
    return None


def is_regular(xi: SetFunctionLike) -> bool:
    return regularity_violation(xi) is None


def is_preclusive(phi: Coevent, precluded: Iterable[int]) -> bool:
    return all(not phi(a) for a in precluded)


def preclusive_logic(n: int, precluded: Iterable[int]) -> list[Coevent]:
    """All coevents vanishing on the precluded events, by ascending table."""
    blocked = 1
    for a in precluded:
        blocked |= 1 << a
    permitted = [a for a in range(1, 1 << n) if not (blocked >> a) & 1]
    out = []
    for k in range(1 << len(permitted)):
        table = 0
        for bit, a in enumerate(permitted):
            if (k >> bit) & 1:
                table |= 1 << a
        out.append(Coevent.from_table(n, table))
    out.sort(key=lambda c: c.table)
    return out


def is_mu_preclusive(phi: Coevent, mu: QMeasure | SetFunctionLike) -> bool:
    vals = mu.values if isinstance(mu, QMeasure) else as_values(mu)
    return all(not phi(a) for a in range(1 << phi.n) if vals[a] == 0)


def expand(xi: SetFunctionLike, n: int):
    """``A -> xi(A ∩ Ω_m)`` on the ``n``-point space; keeps the input's kind."""
    if isinstance(xi, Coevent):
        from coevents.algebra import expand_coevent

        return expand_coevent(xi, n)
    vals = xi.values if isinstance(xi, QMeasure) else as_values(xi)
    m = space_size(vals)
    if m > n:
        raise ValueError(f"cannot expand from {m} points down to {n}")
    low = (1 << m) - 1
    out = tuple(vals[a & low] for a in range(1 << n))
    return QMeasure(n, out) if isinstance(xi, QMeasure) else out


def restrict(xi: SetFunctionLike, m: int):
    if isinstance(xi, Coevent):
        from coevents.algebra import restrict_coevent

        return restrict_coevent(xi, m)
    vals = xi.values if isinstance(xi, QMeasure) else as_values(xi)
    n = space_size(vals)
    if m > n:
        raise ValueError(f"cannot restrict from {n} points up to {m}")
    out = tuple(vals[: 1 << m])
    return QMeasure(m, out) if isinstance(xi, QMeasure) else out


PATTERN_ORDER = (0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111)


def bit_pattern(phi: Coevent) -> str:
    """Seven-bit label of a coevent on three points, events ordered
    {w1},{w2},{w3},{w1,w2},{w1,w3},{w2,w3},Ω."""
    if phi.n != 3:
        raise ValueError("bit patterns are defined for three-point spaces")
    return "".join(str(phi(a)) for a in PATTERN_ORDER)


def enumerate_01_qmeasures(n: int = 3) -> list[Coevent]:
    """Nonzero coevents on three points that are themselves q-measures."""
    if n != 3:
        raise ValueError("only the three-point case is supported")
    out = []
    for phi in enumerate_coevents(3):
        if not phi.table:
            continue
        a = [phi(m) for m in PATTERN_ORDER]
        by_relation = a[6] == a[3] + a[4] + a[5] - a[0] - a[1] - a[2]
        if is_q_measure(phi) != by_relation:
            raise AssertionError(f"grade-2 check and the Ω relation disagree on {phi}")
        if by_relation:
            out.append(phi)
    return out
