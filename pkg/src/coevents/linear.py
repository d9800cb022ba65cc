"""Exact rational feasibility of mixed equality / strict / non-strict systems.

A linear expression over ``k`` variables is a tuple of ``k + 1`` Fractions:
the coefficients followed by the constant term.  A system is three lists of
expressions read as ``e == 0``, ``e > 0`` and ``e >= 0``.  Equalities are
eliminated by substitution, the rest by Fourier-Motzkin elimination that
carries strictness through every combination, so an infeasible verdict is an
exact statement with no tolerance involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

Expr = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def const(k: int, c) -> Expr:
    return (ZERO,) * k + (Fraction(c),)


def var(k: int, i: int, coeff=1) -> Expr:
    e = [ZERO] * (k + 1)
    e[i] = Fraction(coeff)
    return tuple(e)


def add(a: Expr, b: Expr) -> Expr:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Expr, b: Expr) -> Expr:
    return tuple(x - y for x, y in zip(a, b))


def scale(a: Expr, c) -> Expr:
    c = Fraction(c)
    return tuple(x * c for x in a)


def evaluate(e: Expr, point: Sequence[Fraction]) -> Fraction:
    return sum((c * x for c, x in zip(e, point)), e[-1])


def is_constant(e: Expr) -> bool:
    return not any(e[:-1])


@dataclass
class System:
    """Constraints over ``k`` variables."""

    k: int
    eqs: list[Expr] = field(default_factory=list)
    gts: list[Expr] = field(default_factory=list)
    ges: list[Expr] = field(default_factory=list)

    def copy(self) -> System:
        return System(self.k, list(self.eqs), list(self.gts), list(self.ges))

    def eq(self, e: Expr) -> None:
        self.eqs.append(e)

    def gt(self, e: Expr) -> None:
        self.gts.append(e)

    def ge(self, e: Expr) -> None:
        self.ges.append(e)

    def holds_at(self, point: Sequence[Fraction]) -> bool:
        return (
            all(evaluate(e, point) == 0 for e in self.eqs)
            and all(evaluate(e, point) > 0 for e in self.gts)
            and all(evaluate(e, point) >= 0 for e in self.ges)
        )


class _Infeasible(Exception):
    pass


def _substitute(e: Expr, pivot: int, repl: Expr) -> Expr:
    c = e[pivot]
    if not c:
        return e
    out = list(e)
    out[pivot] = ZERO
    for i, r in enumerate(repl):
        if r:
            out[i] += c * r
    return tuple(out)


def _normalize(e: Expr) -> Expr:
    for c in e[:-1]:
        if c:
            s = abs(c)
            return tuple(x / s for x in e) if s != 1 else e
    return e


def _tidy(ineqs: list[tuple[Expr, bool]]) -> list[tuple[Expr, bool]]:
    """Drop constant and dominated constraints; raise on a false constant."""
    best: dict[Expr, tuple[Fraction, bool]] = {}
    for e, strict in ineqs:
        if is_constant(e):
            c = e[-1]
            if c < 0 or (strict and c == 0):
                raise _Infeasible
            continue
        e = _normalize(e)
        key = e[:-1]
        c = e[-1]
        old = best.get(key)
        # e(x) = a.x + c; smaller c is the tighter constraint
        if old is None or c < old[0] or (c == old[0] and strict and not old[1]):
            best[key] = (c, strict)
    return [(key + (c,), strict) for key, (c, strict) in best.items()]


@dataclass
class _Step:
    var: int
    lowers: list[tuple[Expr, bool]]
    uppers: list[tuple[Expr, bool]]


def solve(system: System, pick: Fraction = HALF) -> list[Fraction] | None:
    """A point satisfying ``system``, or None when it is infeasible.

    Variables are fixed in reverse elimination order; each lands at
    ``lo + pick * (hi - lo)`` inside its remaining interval (or one unit
    past a lone bound), so ``pick`` in (0, 1) selects different interior
    points of the same solution set.
    """
    if not 0 < pick < 1:
        raise ValueError("pick must lie strictly between 0 and 1")
    k = system.k
    subs: list[tuple[int, Expr]] = []
    eqs = list(system.eqs)
    ineqs = [(e, True) for e in system.gts] + [(e, False) for e in system.ges]
    try:
        while eqs:
            e = eqs.pop()
            pivot = next((i for i in range(k) if e[i]), None)
            if pivot is None:
                if e[-1]:
                    raise _Infeasible
                continue
            c = e[pivot]
            repl = tuple(ZERO if i == pivot else -x / c for i, x in enumerate(e))
            subs.append((pivot, repl))
            eqs = [_substitute(x, pivot, repl) for x in eqs]
            ineqs = [(_substitute(x, pivot, repl), s) for x, s in ineqs]
        ineqs = _tidy(ineqs)

        eliminated = {p for p, _ in subs}
        remaining = [i for i in range(k) if i not in eliminated]
        steps: list[_Step] = []
        while remaining:
            best_var, best_cost = None, None
            for v in remaining:
                lo = sum(1 for e, _ in ineqs if e[v] > 0)
                hi = sum(1 for e, _ in ineqs if e[v] < 0)
                cost = lo * hi - lo - hi
                if best_cost is None or cost < best_cost:
                    best_var, best_cost = v, cost
            v = best_var
            remaining.remove(v)
            lowers = [(e, s) for e, s in ineqs if e[v] > 0]
            uppers = [(e, s) for e, s in ineqs if e[v] < 0]
            rest = [(e, s) for e, s in ineqs if not e[v]]
            steps.append(_Step(v, lowers, uppers))
            combined = []
            for el, sl in lowers:
                for eu, su in uppers:
                    # positive combination cancelling v
                    cl, cu = el[v], -eu[v]
                    combined.append((add(scale(el, cu), scale(eu, cl)), sl or su))
            ineqs = _tidy(rest + combined)
        if ineqs:
            raise AssertionError("constraints left after eliminating every variable")
    except _Infeasible:
        return None

    point = [ZERO] * k + [ONE]
    for step in reversed(steps):
        v = step.var
        lo = hi = None
        lo_strict = hi_strict = False
        for e, s in step.lowers:
            # e[v] * x + rest >= 0  ->  x >= -rest / e[v]
            b = -(evaluate(e, point[:-1]) - e[v] * point[v]) / e[v]
            if lo is None or b > lo or (b == lo and s):
                lo, lo_strict = b, s
        for e, s in step.uppers:
            b = -(evaluate(e, point[:-1]) - e[v] * point[v]) / e[v]
            if hi is None or b < hi or (b == hi and s):
                hi, hi_strict = b, s
        if lo is not None and hi is not None:
            if lo == hi:
                if lo_strict or hi_strict:
                    raise AssertionError("elimination admitted an empty interval")
                x = lo
            else:
                x = lo + pick * (hi - lo)
        elif lo is not None:
            x = lo + 1
        elif hi is not None:
            x = hi - 1
        else:
            x = ZERO
        point[v] = x
    for pivot, repl in reversed(subs):
        point[pivot] = evaluate(repl, point[:-1])
    out = point[:-1]
    if not system.holds_at(out):
        raise AssertionError("witness does not satisfy the system")
    return out


def feasible(system: System) -> bool:
    return solve(system) is not None
