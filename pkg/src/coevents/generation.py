"""Deciding whether a q-measure 1-generates or 2-generates a coevent.

``mu`` 1-generates ``phi`` when some strictly positive ``f`` on the outcomes
gives ``mu(A) = ∫_A f dphi`` for every event; 2-generation asks the same of
the nested integral of a strictly positive symmetric ``f`` on pairs.

The exact searches split density space into chambers (weak orders of the
relevant values) on which every integral is a linear form, and decide each
chamber's linear system exactly with :mod:`coevents.linear`.  A Feasible
verdict carries a density that is re-verified by direct integration; an
Infeasible verdict means every chamber was refuted.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Any, Callable, Iterator, Sequence

from coevents import linear
from coevents.algebra import (
    Coevent,
    enumerate_coevents,
    expand_coevent,
    format_event,
    members,
    popcount,
    subsets,
)
from coevents.chambers import (
    WeakOrder,
    consistent,
    integral_form,
    order_constraints,
    record,
    weak_orders,
)
from coevents.integral import double_integral, inner_integrals, q_integral_over
from coevents.linear import HALF, Expr, System
from coevents.qmeasure import QMeasure, expand, is_mu_preclusive

EXACT1_MAX_N = 4
EXACT2_MAX_N = 3

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNKNOWN = "unknown"


class InvalidDensity(ValueError):
    pass


class LiftRefused(ValueError):
    def __init__(self, message: str, witness: int):
        super().__init__(message)
        self.witness = witness


def density1(values: Sequence, n: int | None = None) -> tuple[Fraction, ...]:
    f = tuple(Fraction(v) for v in values)
    if n is not None and len(f) != n:
        raise InvalidDensity(f"density needs {n} values, got {len(f)}")
    for i, v in enumerate(f):
        if v <= 0:
            raise InvalidDensity(f"density must be strictly positive; f(w{i + 1}) = {v}")
    return f


def density2(rows: Sequence[Sequence], n: int | None = None) -> tuple[tuple[Fraction, ...], ...]:
    F = tuple(tuple(Fraction(v) for v in row) for row in rows)
    if n is not None and len(F) != n:
        raise InvalidDensity(f"density needs {n} rows, got {len(F)}")
    for i, row in enumerate(F):
        if len(row) != len(F):
            raise InvalidDensity("pair density must be square")
        for j, v in enumerate(row):
            if v <= 0:
                raise InvalidDensity(
                    f"density must be strictly positive; f(w{i + 1},w{j + 1}) = {v}"
                )
            if v != F[j][i]:
                raise InvalidDensity(f"density not symmetric at (w{i + 1},w{j + 1})")
    return F


def _check_pair(mu: QMeasure, phi: Coevent) -> None:
    if mu.n != phi.n:
        raise ValueError(f"measure on {mu.n} points, coevent on {phi.n}")


def verify1(mu: QMeasure, phi: Coevent, f: Sequence) -> bool:
    _check_pair(mu, phi)
    f = density1(f, mu.n)
    return all(mu(a) == q_integral_over(a, f, phi) for a in range(1 << mu.n))


def verify2(mu: QMeasure, phi: Coevent, F: Sequence[Sequence]) -> bool:
    _check_pair(mu, phi)
    F = density2(F, mu.n)
    return all(mu(a) == double_integral(a, F, phi) for a in range(1 << mu.n))


def first_mismatch1(mu: QMeasure, phi: Coevent, f: Sequence) -> int | None:
    f = density1(f, mu.n)
    return next((a for a in range(1 << mu.n) if mu(a) != q_integral_over(a, f, phi)), None)


def first_mismatch2(mu: QMeasure, phi: Coevent, F: Sequence[Sequence]) -> int | None:
    F = density2(F, mu.n)
    return next((a for a in range(1 << mu.n) if mu(a) != double_integral(a, F, phi)), None)


@dataclass(frozen=True)
class Pinning:
    """Outcome of the density-pinning pre-pass.

    ``values`` maps each outcome with ``phi(w) = 1`` to its forced density
    value ``mu(w)``; it is None when the pair is already ruled out, and
    ``reason`` says why.
    """

    values: dict[int, Fraction] | None
    reason: str | None = None

    @property
    def ok(self) -> bool:
        return self.values is not None


def pin_density1(mu: QMeasure, phi: Coevent) -> Pinning:
    _check_pair(mu, phi)
    pins = {}
    for w in range(mu.n):
        m, p = mu(1 << w), phi(1 << w)
        if (m == 0) != (p == 0):
            return Pinning(
                None,
                f"phi(w{w + 1}) = {p} but mu(w{w + 1}) = {m}; they must vanish together",
            )
        if p:
            pins[w] = m
    if phi.poly and all(popcount(m) >= 3 for m in phi.poly):
        return Pinning(None, "every monomial has degree >= 3")
    return Pinning(pins)


# Diagonal pinning for pair densities follows the same rule.
pin_density2 = pin_density1


@dataclass(frozen=True)
class GenerationReport:
    coevent: Coevent
    grade: int
    outcome: str
    density: Any = None
    chamber: Any = None
    chambers_checked: int = 0
    prune_reason: str | None = None
    mode: str = "exact"

    @property
    def feasible(self) -> bool:
        return self.outcome == FEASIBLE

    def to_json(self) -> dict:
        from coevents.expr import format_coevent
        from coevents.jsonio import density1_to_json, density2_to_json

        out: dict[str, Any] = {
            "coevent": format_coevent(self.coevent),
            "grade": self.grade,
            "outcome": self.outcome,
            "mode": self.mode,
            "chambers_checked": self.chambers_checked,
        }
        if self.density is not None:
            out["density"] = (
                density1_to_json(self.density)
                if self.grade == 1
                else density2_to_json(self.density)
            )
        if self.chamber is not None:
            out["chamber"] = self.chamber
        if self.prune_reason is not None:
            out["prune_reason"] = self.prune_reason
        return out


def _chamber_json(order: WeakOrder) -> list[list[int]]:
    return [[x + 1 for x in b] for b in order.blocks]


def _pins_compatible(order: WeakOrder, pins: dict[int, Fraction]) -> bool:
    rank = order.rank()
    pinned = sorted(pins)
    for a, b in combinations(pinned, 2):
        want = (pins[a] > pins[b]) - (pins[a] < pins[b])
        got = (rank[a] > rank[b]) - (rank[a] < rank[b])
        if want != got:
            return False
    return True


def _pinned_subset_conflict(mu: QMeasure, phi: Coevent, pins: dict[int, Fraction]) -> int | None:
    """An event inside the pinned outcomes whose integral is already wrong."""
    pmask = sum(1 << w for w in pins)
    f = [pins.get(w, Fraction(1)) for w in range(mu.n)]
    for a in subsets(pmask):
        if a and popcount(a) >= 2 and q_integral_over(a, f, phi) != mu(a):
            return a
    return None


def search1(mu: QMeasure, phi: Coevent, pick: Fraction = HALF) -> GenerationReport:
    """Exact decision of 1-generation of ``phi`` by ``mu``."""
    _check_pair(mu, phi)
    n = mu.n
    if n > EXACT1_MAX_N:
        raise ValueError(f"exact 1-generation search supports n <= {EXACT1_MAX_N}")
    pin = pin_density1(mu, phi)
    if not pin.ok:
        return GenerationReport(phi, 1, INFEASIBLE, prune_reason=pin.reason)
    pins = pin.values
    bad = _pinned_subset_conflict(mu, phi, pins)
    if bad is not None:
        return GenerationReport(
            phi, 1, INFEASIBLE,
            prune_reason=f"pinned values contradict mu on {format_event(bad)}",
        )
    checked = 0
    for order in weak_orders(range(n)):
        if not _pins_compatible(order, pins):
            continue
        checked += 1
        k = len(order.blocks)
        rank = order.rank()
        system = System(k)
        system.gt(linear.var(k, 0))
        order_constraints(system, [linear.var(k, r) for r in range(k)])
        for w, v in pins.items():
            system.eq(linear.sub(linear.var(k, rank[w]), linear.const(k, v)))
        for a in range(1, 1 << n):
            keep = set(members(a))
            blocks, values = [], []
            for r, b in enumerate(order.blocks):
                part = [x for x in b if x in keep]
                if part:
                    blocks.append(part)
                    values.append(linear.var(k, r))
            form = integral_form(blocks, values, phi, k)
            system.eq(linear.sub(form, linear.const(k, mu(a))))
        sol = linear.solve(system, pick)
        if sol is None:
            continue
        f = tuple(sol[rank[w]] for w in range(n))
        if not verify1(mu, phi, f):
            raise AssertionError(f"chamber witness {f} fails verification")
        return GenerationReport(
            phi, 1, FEASIBLE, density=f, chamber=_chamber_json(order), chambers_checked=checked
        )
    return GenerationReport(phi, 1, INFEASIBLE, chambers_checked=checked)


# --- 2-generation ---------------------------------------------------------


def pair_index(n: int) -> dict[tuple[int, int], int]:
    """Variable index of every ordered pair; symmetric pairs share one index."""
    idx = {}
    for k, (i, j) in enumerate(combinations_with_replacement(range(n), 2)):
        idx[(i, j)] = idx[(j, i)] = k
    return idx


OrderFilter = Callable[[WeakOrder, Sequence[Expr]], bool]


class _PairChamberSearch:
    """Depth-first walk over chambers of a symmetric pair density.

    Events are visited by size.  For event A the search fixes, for every
    column w' in A, the weak order of ``f(., w')`` on A, which makes each
    ``g_A(w')`` a linear form; it then fixes the weak order of those forms,
    which makes the double integral over A linear and yields one equation.
    Pairwise comparisons already decided are reused so no comparison is
    branched on twice, and each partial chamber is checked for feasibility
    before going deeper.
    """

    def __init__(
        self,
        phi: Coevent,
        targets: Sequence[Expr],
        k: int,
        base: System,
        pick: Fraction = HALF,
        accept: OrderFilter | None = None,
    ):
        self.phi = phi
        self.n = phi.n
        self.targets = targets
        self.k = k
        self.base = base
        self.pick = pick
        self.accept = accept
        self.pidx = pair_index(self.n)
        self.events = sorted(range(1, 1 << self.n), key=lambda a: (popcount(a), a))
        self.checked = 0

    def _var(self, i: int, j: int) -> Expr:
        return linear.var(self.k, self.pidx[(i, j)])

    def _orders(self, forms: Sequence[Expr], keys, known) -> Iterator[WeakOrder]:
        for order in weak_orders(range(len(forms))):
            if not consistent(order, keys, known):
                continue
            if self.accept is not None and not self.accept(order, forms):
                continue
            yield order

    @staticmethod
    def _apply(system: System, order: WeakOrder, forms: Sequence[Expr]) -> list[Expr]:
        reps = []
        for b in order.blocks:
            reps.append(forms[b[0]])
            for x in b[1:]:
                system.eq(linear.sub(forms[x], forms[b[0]]))
        order_constraints(system, reps)
        return reps

    def _feasible(self, system: System) -> bool:
        self.checked += 1
        return linear.solve(system) is not None

    def run(self) -> tuple[list[Fraction], list] | None:
        return self._event(0, self.base, {}, [])

    def _event(self, idx: int, system: System, known, trail):
        if idx == len(self.events):
            sol = linear.solve(system, self.pick)
            return (sol, trail) if sol is not None else None
        a = self.events[idx]
        pts = members(a)
        return self._columns(idx, a, pts, 0, system, known, [], trail)

    def _columns(self, idx, a, pts, c, system, known, col_orders, trail):
        if c == len(pts):
            if len(pts) > 1 and not self._feasible(system):
                return None
            return self._levels(idx, a, pts, system, known, col_orders, trail)
        wp = pts[c]
        forms = [self._var(w, wp) for w in pts]
        keys = [("f", self.pidx[(w, wp)]) for w in pts]
        for order in self._orders(forms, keys, known):
            sub = system.copy()
            self._apply(sub, order, forms)
            found = self._columns(
                idx, a, pts, c + 1, sub, record(order, keys, known),
                col_orders + [order], trail,
            )
            if found is not None:
                return found
        return None

    def _levels(self, idx, a, pts, system, known, col_orders, trail):
        gforms = []
        for wp, order in zip(pts, col_orders):
            blocks = [[pts[x] for x in b] for b in order.blocks]
            values = [self._var(pts[b[0]], wp) for b in order.blocks]
            gforms.append(integral_form(blocks, values, self.phi, self.k))
        keys = [("g", g) for g in gforms]
        for order in self._orders(gforms, keys, known):
            sub = system.copy()
            reps = self._apply(sub, order, gforms)
            blocks = [[pts[x] for x in b] for b in order.blocks]
            form = integral_form(blocks, reps, self.phi, self.k)
            sub.eq(linear.sub(form, self.targets[a]))
            if not self._feasible(sub):
                continue
            step = {
                "event": format_event(a),
                "columns": {
                    f"w{wp + 1}": [[pts[x] + 1 for x in b] for b in o.blocks]
                    for wp, o in zip(pts, col_orders)
                },
                "levels": [[pts[x] + 1 for x in b] for b in order.blocks],
            }
            found = self._event(idx + 1, sub, record(order, keys, known), trail + [step])
            if found is not None:
                return found
        return None


def _pair_matrix(n: int, sol: Sequence[Fraction]) -> tuple[tuple[Fraction, ...], ...]:
    pidx = pair_index(n)
    return tuple(tuple(sol[pidx[(i, j)]] for j in range(n)) for i in range(n))


def _pair_base(n: int, k: int, pins: dict[int, Fraction]) -> System:
    pidx = pair_index(n)
    system = System(k)
    for v in range(n * (n + 1) // 2):
        system.gt(linear.var(k, v))
    for w, val in pins.items():
        system.eq(linear.sub(linear.var(k, pidx[(w, w)]), linear.const(k, val)))
    return system


def search2(
    mu: QMeasure,
    phi: Coevent,
    mode: str = "exact",
    pick: Fraction = HALF,
    seed: int = 0,
    restarts: int = 24,
) -> GenerationReport:
    """Decide (exact) or look for (heuristic) 2-generation of ``phi`` by ``mu``."""
    _check_pair(mu, phi)
    n = mu.n
    if mode not in ("exact", "heuristic"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "exact" and n > EXACT2_MAX_N:
        raise ValueError(f"exact 2-generation search supports n <= {EXACT2_MAX_N}")
    pin = pin_density2(mu, phi)
    if not pin.ok:
        return GenerationReport(phi, 2, INFEASIBLE, prune_reason=pin.reason, mode=mode)
    if mode == "heuristic":
        from coevents.heuristic import heuristic_search2

        return heuristic_search2(mu, phi, pin.values, seed=seed, restarts=restarts)
    k = n * (n + 1) // 2
    targets = [linear.const(k, mu(a)) for a in range(1 << n)]
    search = _PairChamberSearch(phi, targets, k, _pair_base(n, k, pin.values), pick)
    found = search.run()
    if found is None:
        return GenerationReport(phi, 2, INFEASIBLE, chambers_checked=search.checked)
    sol, trail = found
    F = _pair_matrix(n, sol)
    if not verify2(mu, phi, F):
        raise AssertionError(f"chamber witness {F} fails verification")
    return GenerationReport(
        phi, 2, FEASIBLE, density=F, chamber=trail, chambers_checked=search.checked
    )


def guided_search2(
    mu: QMeasure, phi: Coevent, pins: dict[int, Fraction], point: Sequence[float], tol: float
) -> GenerationReport | None:
    """Exact solve restricted to the chamber containing a floating-point density."""
    n = mu.n
    k = n * (n + 1) // 2

    def value(e: Expr) -> float:
        return float(e[-1]) + sum(float(c) * x for c, x in zip(e, point) if c)

    def accept(order: WeakOrder, forms: Sequence[Expr]) -> bool:
        vals = [value(forms[b[0]]) for b in order.blocks]
        for b, v in zip(order.blocks, vals):
            if any(abs(value(forms[x]) - v) > tol for x in b):
                return False
        return all(hi - lo > tol for lo, hi in zip(vals, vals[1:]))

    targets = [linear.const(k, mu(a)) for a in range(1 << n)]
    search = _PairChamberSearch(phi, targets, k, _pair_base(n, k, pins), accept=accept)
    found = search.run()
    if found is None:
        return None
    sol, trail = found
    F = _pair_matrix(n, sol)
    if not verify2(mu, phi, F):
        return None
    return GenerationReport(
        phi, 2, FEASIBLE, density=F, chamber=trail,
        chambers_checked=search.checked, mode="heuristic",
    )


# --- surveys ----------------------------------------------------------------


@dataclass
class Survey:
    grade: int
    rows: list[GenerationReport] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def coevents(self) -> list[Coevent]:
        return [r.coevent for r in self.rows]


def _run_one(args) -> GenerationReport:
    grade, mu, phi, mode = args
    if grade == 1:
        return search1(mu, phi)
    return search2(mu, phi, mode=mode)


def default_jobs() -> int:
    return os.cpu_count() or 1


def _survey(grade: int, mu: QMeasure, mode: str, jobs: int) -> Survey:
    tasks = [(grade, mu, phi, mode) for phi in enumerate_coevents(mu.n)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_one, tasks, chunksize=8))
    else:
        reports = [_run_one(t) for t in tasks]
    out = Survey(grade)
    out.counts = {FEASIBLE: 0, INFEASIBLE: 0, UNKNOWN: 0, "pruned": 0}
    for r in reports:
        out.counts[r.outcome] += 1
        if r.prune_reason is not None:
            out.counts["pruned"] += 1
        if r.feasible:
            out.rows.append(r)
    return out


def survey1(mu: QMeasure, jobs: int = 1) -> Survey:
    if mu.n > EXACT1_MAX_N:
        raise ValueError(f"1-generation surveys support n <= {EXACT1_MAX_N}")
    return _survey(1, mu, "exact", jobs)


def survey2(mu: QMeasure, mode: str = "exact", jobs: int = 1) -> Survey:
    if mode == "exact" and mu.n > EXACT2_MAX_N:
        raise ValueError(f"exact 2-generation surveys support n <= {EXACT2_MAX_N}")
    return _survey(2, mu, mode, jobs)


# --- constructions from known densities ------------------------------------


def lift_density2_from_density1(mu: QMeasure, phi: Coevent, f: Sequence) -> tuple:
    """Pair density ``(f(w) + f(w')) / 2`` 2-generating ``phi``.

    Valid when ``f`` 1-generates ``phi`` and ``phi(A) = 1`` wherever
    ``mu(A) != 0``; the double integral then equals ``mu(A) * phi(A)``.
    """
    f = density1(f, mu.n)
    bad = first_mismatch1(mu, phi, f)
    if bad is not None:
        raise LiftRefused(f"f does not 1-generate phi (fails on {format_event(bad)})", bad)
    for a in range(1, 1 << mu.n):
        if mu(a) != 0 and not phi(a):
            raise LiftRefused(
                f"mu{format_event(a)} = {mu(a)} but phi{format_event(a)} = 0", a
            )
    F = tuple(tuple((x + y) / 2 for y in f) for x in f)
    if not verify2(mu, phi, F):
        raise AssertionError("lifted density fails verification")
    return F


def _is_pair_density(f: Sequence) -> bool:
    return bool(f) and isinstance(f[0], (list, tuple))


def expand_generation(mu: QMeasure, phi: Coevent, f: Sequence, n: int):
    """Carry a verified generating triple from ``mu.n`` points to ``n`` points.

    New outcomes get the value ``M``: the largest density value for point
    densities; for pair densities the larger of the largest entry and the
    largest inner integral ``∫_A f(., w) dphi``.
    """
    m = mu.n
    if n < m:
        raise ValueError(f"cannot expand from {m} points down to {n}")
    if _is_pair_density(f):
        F = density2(f, m)
        if not verify2(mu, phi, F):
            raise ValueError("input triple does not verify (2-generation)")
        m1 = max(max(row) for row in F)
        m2 = max(
            max(inner_integrals(a, F, phi)[:m]) for a in range(1 << m)
        )
        big = max(m1, m2)
        G = tuple(
            tuple(F[i][j] if i < m and j < m else big for j in range(n)) for i in range(n)
        )
        out = (expand(mu, n), expand_coevent(phi, n), G)
        if not verify2(*out):
            raise AssertionError("expanded pair density fails verification")
        return out
    f1 = density1(f, m)
    if not verify1(mu, phi, f1):
        raise ValueError("input triple does not verify (1-generation)")
    big = max(f1)
    g = f1 + (big,) * (n - m)
    out = (expand(mu, n), expand_coevent(phi, n), g)
    if not verify1(*out):
        raise AssertionError("expanded density fails verification")
    return out


class ConstraintViolation(ValueError):
    pass


def _require(cond: bool, text: str) -> None:
    if not cond:
        raise ConstraintViolation(f"construction requires {text}")


def construct(kind: str, **params):
    """Generating triples ``(mu, phi, density)`` from the known constructions.

    kinds:
      ``two-atom``: a1, a2 > 0, M > a1 + a2, n >= 2 -- the measure
        a1*delta_1 + a2*delta_2 with phi = w1 + w2 + w1*w2 (pair density).
      ``split-pair``: mu1, mu2 > 0, 0 <= mu_omega <= |mu2 - mu1| on two
        points with phi = w1 + w2 (pair density with midpoint off-diagonal).
      ``three-point-pair``: 0 < mu1 <= mu2, mu12 >= mu1 + mu2 on three points with
        phi = w1 + w2 + w3 + w1*w2 (pair density, off-diagonal mu12).
      ``dirac``: c > 0, point (0-based), n -- c*delta_point, its evaluation
        map and the constant density c.
    """
    from coevents.qmeasure import dirac, from_low_order

    P = Fraction
    if kind == "two-atom":
        a1, a2, M = P(params["a1"]), P(params["a2"]), P(params["M"])
        n = int(params.get("n", 2))
        _require(n >= 2, "n >= 2")
        _require(a1 > 0, "a1 > 0")
        _require(a2 > 0, "a2 > 0")
        _require(M > a1 + a2, "M > a1 + a2")
        mu = from_low_order([a1, a2] + [0] * (n - 2))
        phi = Coevent.from_polynomial(n, [0b1, 0b10, 0b11])
        F = [[M] * n for _ in range(n)]
        F[0][0], F[1][1] = a1, a2
        F[0][1] = F[1][0] = a1 + a2
        return mu, phi, density2(F)
    if kind == "split-pair":
        m1, m2, mo = P(params["mu1"]), P(params["mu2"]), P(params["mu_omega"])
        _require(m1 > 0, "mu(w1) > 0")
        _require(m2 > 0, "mu(w2) > 0")
        _require(mo >= 0, "mu(Ω) >= 0")
        _require(mo <= abs(m2 - m1), "mu(Ω) <= max(mu(w1), mu(w2)) - min(mu(w1), mu(w2))")
        mu = from_low_order([m1, m2], {(0, 1): mo})
        phi = Coevent.from_polynomial(2, [0b1, 0b10])
        off = (mo + m1 + m2) / 2
        return mu, phi, density2([[m1, off], [off, m2]])
    if kind == "three-point-pair":
        m1, m2, m12 = P(params["mu1"]), P(params["mu2"]), P(params["mu12"])
        m3 = m1 + m2
        _require(m1 > 0, "mu(w1) > 0")
        _require(m1 <= m2, "mu(w1) <= mu(w2)")
        _require(m12 >= m3, "mu({w1,w2}) >= mu(w3) = mu(w1) + mu(w2)")
        mu = from_low_order([m1, m2, m3], {(0, 1): m12, (0, 2): m2, (1, 2): m1})
        phi = Coevent.from_polynomial(3, [0b1, 0b10, 0b100, 0b11])
        F = [[m12] * 3 for _ in range(3)]
        F[0][0], F[1][1], F[2][2] = m1, m2, m3
        return mu, phi, density2(F)
    if kind == "dirac":
        c = P(params.get("c", 1))
        n = int(params["n"])
        point = int(params.get("point", 0))
        _require(c > 0, "c > 0")
        _require(0 <= point < n, "0 <= point < n")
        mu = dirac(n, point, c)
        phi = Coevent.from_polynomial(n, [1 << point])
        return mu, phi, density1([c] * n)
    raise ValueError(f"unknown construction {kind!r}")


def survey_properties(survey: Survey, mu: QMeasure) -> dict[str, bool]:
    """Preclusivity of every row, and at most one regular row for grade 1."""
    from coevents.qmeasure import is_regular

    regular = sum(1 for r in survey.rows if is_regular(r.coevent))
    return {
        "mu_preclusive": all(is_mu_preclusive(r.coevent, mu) for r in survey.rows),
        "regular_unique": survey.grade != 1 or regular <= 1,
    }


def probe_open(phi: Coevent, pick: Fraction = HALF) -> GenerationReport:
    """Is ``phi`` 2-generated by any q-measure at all?

    Densities and the measure are solved for together: doubleton values are
    extra unknowns, singleton values are the diagonal (or 0 where ``phi``
    vanishes), and larger events follow the grade-2 relation.  A Feasible
    report carries the density; the measure is its double integral.
    """
    n = phi.n
    if n > EXACT2_MAX_N:
        raise ValueError(f"exact 2-generation search supports n <= {EXACT2_MAX_N}")
    npair = n * (n + 1) // 2
    pairs = list(combinations(range(n), 2))
    k = npair + len(pairs)
    pidx = pair_index(n)
    targets: list[Expr] = [linear.const(k, 0)] * (1 << n)
    for w in range(n):
        targets[1 << w] = linear.var(k, pidx[(w, w)]) if phi(1 << w) else linear.const(k, 0)
    for t, (i, j) in enumerate(pairs):
        targets[(1 << i) | (1 << j)] = linear.var(k, npair + t)
    for a in range(1 << n):
        m = popcount(a)
        if m >= 3:
            e = linear.const(k, 0)
            for i, j in combinations(members(a), 2):
                e = linear.add(e, targets[(1 << i) | (1 << j)])
            for i in members(a):
                e = linear.sub(e, linear.scale(targets[1 << i], m - 2))
            targets[a] = e
    base = System(k)
    for v in range(npair):
        base.gt(linear.var(k, v))
    search = _PairChamberSearch(phi, targets, k, base, pick)
    found = search.run()
    if found is None:
        return GenerationReport(phi, 2, INFEASIBLE, chambers_checked=search.checked, mode="probe")
    sol, trail = found
    F = _pair_matrix(n, sol[:npair])
    mu = QMeasure(n, tuple(double_integral(a, F, phi) for a in range(1 << n)))
    if not verify2(mu, phi, F):
        raise AssertionError("probe witness fails verification")
    return GenerationReport(
        phi, 2, FEASIBLE, density=F, chamber=trail, chambers_checked=search.checked, mode="probe"
    )
