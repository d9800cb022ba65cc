"""Events, coevents and the Boolean algebra of coevents over a finite sample space.

Outcomes are numbered 0..n-1 internally and 1..n in text.  An event is an
``int`` bitmask (bit ``i`` set when outcome ``i`` belongs to the event).  A
coevent is kept both as a truth table over all ``2**n`` events and as its
GF(2) polynomial in the evaluation maps; the two are related by the
subset-parity (GF(2) zeta) transform.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator

DEFAULT_CAP = 5
HARD_COUNT_CEILING = 6


class SpaceMismatch(ValueError):
    pass


def enumeration_cap() -> int:
    """Largest n for which full enumeration of coevents is allowed."""
    raw = os.environ.get("COEVENT_CAP_N")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"COEVENT_CAP_N must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError("COEVENT_CAP_N must be positive")
    return min(cap, HARD_COUNT_CEILING)


@dataclass(frozen=True)
class SampleSpace:
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"sample space size must be a positive integer, got {self.n!r}")

    @property
    def omega(self) -> int:
        return (1 << self.n) - 1

    def events(self) -> range:
        return range(1 << self.n)

    def nonempty_events(self) -> range:
        return range(1, 1 << self.n)

    def check(self, mask: int) -> int:
        return check_event(self.n, mask)


def check_event(n: int, mask: int) -> int:
    if mask < 0 or mask >> n:
        raise ValueError(f"event mask {mask:#b} out of range for a {n}-point space")
    return mask


def event(*points: int) -> int:
    """Build an event mask from 1-based outcome indices: ``event(1, 3)`` is {w1, w3}."""
    mask = 0
    for p in points:
        if p < 1:
            raise ValueError(f"outcome indices are 1-based, got {p}")
        mask |= 1 << (p - 1)
    return mask


def members(mask: int) -> list[int]:
    """0-based outcomes in ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def subsets(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` including 0 and ``mask`` itself, ascending."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def format_event(mask: int) -> str:
    return "{" + ",".join(f"w{i + 1}" for i in members(mask)) + "}"


def _lane_masks(n: int) -> list[int]:
    # lane i: table positions whose event mask has bit i clear
    size = 1 << n
    lanes = []
    for i in range(n):
        step = 1 << i
        m = 0
        for pos in range(size):
            if not pos & step:
                m |= 1 << pos
        lanes.append(m)
    return lanes


_LANES: dict[int, list[int]] = {}


def parity_transform(n: int, table: int) -> int:
    """Subset-parity transform of a ``2**n``-bit table.

    Output bit ``M`` is the XOR of input bits ``B`` over all ``B ⊆ M``.  The
    transform is an involution; it maps a truth table to the monomial set of
    its evaluation-map polynomial and back.
    """
    lanes = _LANES.get(n)
    if lanes is None:
        lanes = _LANES[n] = _lane_masks(n)
    for i, lane in enumerate(lanes):
        table ^= (table & lane) << (1 << i)
    return table


def _bits(x: int) -> frozenset[int]:
    out = []
    while x:
        low = x & -x
        pos = low.bit_length() - 1
        out.append(pos)
        x ^= low
    return frozenset(out)


def monomial_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Canonical monomial order: by degree, then by index tuple."""
    return (popcount(mask), tuple(members(mask)))


@dataclass(frozen=True)
class Coevent:
    """A {0,1}-valued function on events vanishing on the empty event.

    ``table`` has bit ``A`` set exactly when the coevent is 1 on event ``A``;
    ``poly`` is the set of monomial masks of the evaluation-map polynomial.
    Build instances with :meth:`from_table` or :meth:`from_polynomial` so both
    views stay in sync.
    """

    n: int
    table: int
    poly: frozenset[int] = field(compare=False)

    @classmethod
    def from_table(cls, n: int, table: int) -> Coevent:
        SampleSpace(n)
        if table < 0 or table >> (1 << n):
            raise ValueError("truth table has bits beyond the event range")
        if table & 1:
            raise ValueError("a coevent must vanish on the empty event")
        return cls(n, table, _bits(parity_transform(n, table)))

    @classmethod
    def from_polynomial(cls, n: int, monomials: Iterable[int]) -> Coevent:
        SampleSpace(n)
        acc = 0
        for m in monomials:
            check_event(n, m)
            if m == 0:
                raise ValueError("constant monomials are not allowed")
            acc ^= 1 << m
        return cls(n, parity_transform(n, acc), _bits(acc))

    @classmethod
    def zero(cls, n: int) -> Coevent:
        return cls.from_table(n, 0)

    def __call__(self, mask: int) -> int:
        return evaluate(self, mask)

    def values(self) -> tuple[int, ...]:
        """The coevent as a set function indexed by event mask."""
        return tuple((self.table >> a) & 1 for a in range(1 << self.n))

    def monomials(self) -> list[int]:
        return sorted(self.poly, key=monomial_key)

    def support(self) -> list[int]:
        """Events on which the coevent is 1 (the atoms below it)."""
        return sorted(_bits(self.table))

    def __xor__(self, other: Coevent) -> Coevent:
        return add(self, other)

    def __and__(self, other: Coevent) -> Coevent:
        return meet(self, other)

    def __mul__(self, other: Coevent) -> Coevent:
        return multiply(self, other)

    def __or__(self, other: Coevent) -> Coevent:
        return join(self, other)

    def __invert__(self) -> Coevent:
        return complement(self)

    def __le__(self, other: Coevent) -> bool:
        return leq(self, other)

    def __repr__(self) -> str:
        from coevents.expr import format_coevent

        return f"Coevent(n={self.n}, {format_coevent(self)!r})"


def _same_space(phi: Coevent, psi: Coevent) -> None:
    if phi.n != psi.n:
        raise SpaceMismatch(f"coevents live on spaces of size {phi.n} and {psi.n}")


def evaluate(phi: Coevent, mask: int) -> int:
    check_event(phi.n, mask)
    return (phi.table >> mask) & 1


def from_polynomial(n: int, monomials: Iterable[int]) -> Coevent:
    return Coevent.from_polynomial(n, monomials)


def to_polynomial(phi: Coevent) -> frozenset[int]:
    return phi.poly


def add(phi: Coevent, psi: Coevent) -> Coevent:
    _same_space(phi, psi)
    return Coevent.from_table(phi.n, phi.table ^ psi.table)


def multiply(phi: Coevent, psi: Coevent) -> Coevent:
    _same_space(phi, psi)
    return Coevent.from_table(phi.n, phi.table & psi.table)


meet = multiply


def join(phi: Coevent, psi: Coevent) -> Coevent:
    _same_space(phi, psi)
    return Coevent.from_table(phi.n, phi.table | psi.table)


def complement(phi: Coevent) -> Coevent:
    return add(one(phi.n), phi)


def leq(phi: Coevent, psi: Coevent) -> bool:
    _same_space(phi, psi)
    return phi.table & ~psi.table == 0


def _all_nonempty(n: int) -> int:
    return ((1 << (1 << n)) - 1) & ~1


def one(n: int) -> Coevent:
    return Coevent.from_table(n, _all_nonempty(n))


def evaluation_map(n: int, point: int) -> Coevent:
    """The classical coevent of the 0-based outcome ``point``."""
    return Coevent.from_polynomial(n, [1 << point])


def atom(n: int, mask: int) -> Coevent:
    check_event(n, mask)
    if mask == 0:
        raise ValueError("atoms are indexed by nonempty events")
    return Coevent.from_table(n, 1 << mask)


def atom_polynomial(n: int, mask: int) -> frozenset[int]:
    """Monomials of the atom at ``mask`` built by summing every monomial containing it."""
    check_event(n, mask)
    if mask == 0:
        raise ValueError("atoms are indexed by nonempty events")
    rest = ((1 << n) - 1) & ~mask
    return frozenset(mask | s for s in subsets(rest))


def atoms_below(phi: Coevent) -> list[int]:
    return phi.support()


def decompose(phi: Coevent) -> list[Coevent]:
    return [atom(phi.n, a) for a in atoms_below(phi)]


def lower_star(n: int, mask: int) -> Coevent:
    """A_*: 1 exactly on the nonempty subsets of A."""
    check_event(n, mask)
    table = 0
    for b in subsets(mask):
        if b:
            table |= 1 << b
    return Coevent.from_table(n, table)


def upper_star(n: int, mask: int) -> Coevent:
    """A^*: 1 exactly on the events meeting A."""
    check_event(n, mask)
    table = 0
    for b in range(1, 1 << n):
        if b & mask:
            table |= 1 << b
    return Coevent.from_table(n, table)


def psi(n: int, mask: int) -> Coevent:
    """psi_A: 1 exactly on the supersets of A (the monomial over A)."""
    check_event(n, mask)
    if mask == 0:
        raise ValueError("psi of the empty event is constant 1 on the empty event, not a coevent")
    table = 0
    for b in range(1, 1 << n):
        if b & mask == mask:
            table |= 1 << b
    return Coevent.from_table(n, table)


def lower_star_polynomial(n: int, mask: int) -> frozenset[int]:
    """Monomials having at least one factor from A."""
    return frozenset(m for m in range(1, 1 << n) if m & mask)


def upper_star_polynomial(n: int, mask: int) -> frozenset[int]:
    """Monomials all of whose factors lie in A."""
    return frozenset(m for m in subsets(mask) if m)


@dataclass(frozen=True)
class CoeventClass:
    zero: bool
    classical: bool
    additive: bool
    multiplicative: bool
    quadratic: bool
    unital: bool
    type_signature: tuple[int, ...]

    def type_label(self) -> str:
        """Type in the style ``(1,2,12)``; ``(0)`` for the zero coevent."""
        if self.zero:
            return "(0)"
        parts = ["".join(str(i + 1) for i in members(m)) for m in self.type_signature]
        return "(" + ",".join(parts) + ")"


def classify(phi: Coevent) -> CoeventClass:
    degrees = [popcount(m) for m in phi.poly]
    zero = not phi.poly
    return CoeventClass(
        zero=zero,
        classical=len(degrees) == 1 and degrees[0] == 1,
        additive=all(d == 1 for d in degrees),
        multiplicative=len(degrees) <= 1,
        quadratic=all(d <= 2 for d in degrees),
        unital=bool(evaluate(phi, (1 << phi.n) - 1)),
        type_signature=tuple(phi.monomials()),
    )


def canonical_type(phi: Coevent) -> str:
    """Type label up to relabelling the points (least over permutations)."""
    from itertools import permutations

    if not phi.poly:
        return "(0)"
    best = None
    for perm in permutations(range(phi.n)):
        mons = sorted(
            (sum(1 << perm[i] for i in members(m)) for m in phi.poly), key=monomial_key
        )
        sig = tuple(monomial_key(m) for m in mons)
        if best is None or sig < best:
            best = sig
    parts = ["".join(str(i + 1) for i in idx) for _, idx in best]
    return "(" + ",".join(parts) + ")"


def coevent_count(n: int) -> int:
    SampleSpace(n)
    if n > HARD_COUNT_CEILING:
        raise ValueError(f"coevent counts are limited to n <= {HARD_COUNT_CEILING}, got n={n}")
    return 1 << ((1 << n) - 1)


def enumerate_coevents(n: int, cap: int | None = None) -> Iterator[Coevent]:
    """Every coevent on an ``n``-point space, by ascending truth-table value."""
    SampleSpace(n)
    if cap is None:
        cap = enumeration_cap()
    if n > cap:
        raise ValueError(f"enumeration of coevents limited to n <= {cap}, got n={n}")
    for k in range(1 << ((1 << n) - 1)):
        yield Coevent.from_table(n, k << 1)


def expand_coevent(phi: Coevent, n: int) -> Coevent:
    """The coevent ``A -> phi(A ∩ Ω_m)`` on the larger space; same polynomial."""
    if n < phi.n:
        raise ValueError(f"cannot expand from {phi.n} points down to {n}")
    return Coevent.from_polynomial(n, phi.poly)


def restrict_coevent(phi: Coevent, m: int) -> Coevent:
    if m > phi.n:
        raise ValueError(f"cannot restrict from {phi.n} points up to {m}")
    return Coevent.from_table(m, phi.table & ((1 << (1 << m)) - 1))
