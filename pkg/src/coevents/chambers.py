"""Weak orders and the linear form of the quantum integral on a chamber.

On the set of densities whose values follow a fixed weak order (ties
included), the quantum integral is linear.  A chamber is described by a
:class:`WeakOrder`: ascending blocks of items sharing one value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterator, Sequence

from coevents import linear
from coevents.algebra import Coevent
from coevents.linear import Expr


@dataclass(frozen=True)
class WeakOrder:
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise ValueError("weak order blocks must be nonempty")
            if seen & set(b):
                raise ValueError("weak order blocks must be disjoint")
            seen |= set(b)

    def rank(self) -> dict[int, int]:
        return {x: r for r, b in enumerate(self.blocks) for x in b}

    def items(self) -> list[int]:
        return sorted(x for b in self.blocks for x in b)

    def restrict(self, keep: set[int]) -> WeakOrder:
        return WeakOrder(tuple(t for b in self.blocks if (t := tuple(x for x in b if x in keep))))

    def as_lists(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


def weak_orders(items: Sequence[int]) -> Iterator[WeakOrder]:
    """Every ordered set partition of ``items`` (a Fubini number of them)."""
    items = list(items)
    if not items:
        yield WeakOrder(())
        return
    first, rest = items[0], items[1:]
    for wo in weak_orders(rest):
        blocks = list(wo.blocks)
        # join an existing block or open a new block at any gap
        for i in range(len(blocks)):
            yield WeakOrder(tuple(blocks[:i] + [tuple(sorted(blocks[i] + (first,)))] + blocks[i + 1 :]))
        for i in range(len(blocks) + 1):
            yield WeakOrder(tuple(blocks[:i] + [(first,)] + blocks[i:]))


def fubini(n: int) -> int:
    from math import comb

    a = [1]
    for m in range(1, n + 1):
        a.append(sum(comb(m, j) * a[m - j] for j in range(1, m + 1)))
    return a[n]


def integral_form(
    order: Sequence[Sequence[int]], values: Sequence[Expr], phi: Coevent, k: int
) -> Expr:
    """Linear form of the integral of a nonnegative function against ``phi``.

    ``order`` lists ascending blocks of 0-based outcomes (only outcomes in
    the integration domain); ``values[r]`` is the expression for the common
    value of block ``r``.  The form is sum_r (v_r - v_{r-1}) phi(tail_r).
    """
    total = linear.const(k, 0)
    prev = linear.const(k, 0)
    tail = 0
    for b in order:
        for x in b:
            tail |= 1 << x
    for block, v in zip(order, values):
        if (phi.table >> tail) & 1:
            total = linear.add(total, linear.sub(v, prev))
        prev = v
        for x in block:
            tail &= ~(1 << x)
    return total


def order_constraints(system: linear.System, forms: Sequence[Expr]) -> None:
    """Constrain consecutive block values ``forms`` to strictly increase."""
    for lo, hi in zip(forms, forms[1:]):
        system.gt(linear.sub(hi, lo))


Relation = dict[tuple[Hashable, Hashable], int]


def consistent(order: WeakOrder, keys: Sequence[Hashable], known: Relation) -> bool:
    """Whether ``order`` agrees with already decided pairwise comparisons.

    ``keys[i]`` identifies item ``i``; equal keys denote the same quantity.
    """
    rank = order.rank()
    items = order.items()
    for a_i, a in enumerate(items):
        for b in items[a_i + 1 :]:
            ka, kb = keys[a], keys[b]
            want = (rank[a] > rank[b]) - (rank[a] < rank[b])
            if ka == kb:
                if want:
                    return False
                continue
            got = known.get((ka, kb))
            if got is not None and got != want:
                return False
    return True


def record(order: WeakOrder, keys: Sequence[Hashable], known: Relation) -> Relation:
    out = dict(known)
    rank = order.rank()
    items = order.items()
    for a_i, a in enumerate(items):
        for b in items[a_i + 1 :]:
            ka, kb = keys[a], keys[b]
            if ka == kb:
                continue
            s = (rank[a] > rank[b]) - (rank[a] < rank[b])
            out[(ka, kb)] = s
            out[(kb, ka)] = -s
    return out
