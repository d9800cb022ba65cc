"""Worked examples recomputed from scratch.

Each reproduction returns a list of :class:`Check` rows pairing a computed
value with its expected value; ``run(id)`` is all-pass when every row agrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from coevents import algebra
from coevents.algebra import canonical_type, coevent_count, event, lower_star, one
from coevents.expr import format_coevent, parse_coevent
from coevents.integral import q_integral, q_integral_over
from coevents.qmeasure import (
    bit_pattern,
    enumerate_01_qmeasures,
    from_low_order,
    is_q_measure,
    preclusive_logic,
)


@dataclass(frozen=True)
class Check:
    label: str
    expected: Any
    actual: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


def _show(x: Any) -> Any:
    if isinstance(x, algebra.Coevent):
        return format_coevent(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_show(v) for v in x]
    return x


def _types(n: int) -> dict[str, int]:
    out: dict[str, int] = {}
    for phi in algebra.enumerate_coevents(n):
        label = canonical_type(phi)
        out[label] = out.get(label, 0) + 1
    return out


def two_point_types() -> list[Check]:
    t = _types(2)
    return [
        Check("|A_2*|", 8, coevent_count(2)),
        Check("type (0)", 1, t.get("(0)")),
        Check("type (1)", 2, t.get("(1)")),
        Check("type (1,2)", 1, t.get("(1,2)")),
        Check("type (12)", 1, t.get("(12)")),
        Check("type (1,12)", 2, t.get("(1,12)")),
        Check("type (1,2,12)", 1, t.get("(1,2,12)")),
        Check("1 on two points", "w1 + w2 + w1*w2", format_coevent(one(2))),
    ]


def three_point_types() -> list[Check]:
    t = _types(3)
    expected = {
        "(1)": 3, "(1,2)": 3, "(12)": 3, "(1,2,3)": 1, "(123)": 1, "(1,12)": 6,
        "(1,23)": 3, "(1,2,12)": 3, "(1,2,13)": 6, "(1,2,3,12)": 3,
        "(1,2,3,12,13,23,123)": 1,
    }
    rows = [Check("|A_3*|", 128, coevent_count(3))]
    rows += [Check(f"type {k}", v, t.get(k)) for k, v in expected.items()]
    rows.append(Check("1 is the full sum", one(3), parse_coevent(
        "w1 + w2 + w3 + w1*w2 + w1*w3 + w2*w3 + w1*w2*w3", 3)))
    return rows


def lower_star_polys() -> list[Check]:
    a = lower_star(4, event(1, 2))
    listed = parse_coevent(
        "w1 + w2 + w1*w2 + w1*w3 + w1*w4 + w2*w3 + w2*w4 + w1*w2*w3 + w1*w2*w4"
        " + w1*w3*w4 + w2*w3*w4 + w1*w2*w3*w4", 4)
    b = lower_star(4, event(1, 2, 3))
    return [
        Check("A_* monomials", 12, len(a.poly)),
        Check("A_* polynomial", _show(listed), _show(a)),
        Check("B_* = A_* + w3 + w3*w4", _show(a ^ parse_coevent("w3 + w3*w4", 4)), _show(b)),
        Check("three-point {w1,w2}_*", _show(parse_coevent(
            "w1 + w2 + w1*w2 + w1*w3 + w2*w3 + w1*w2*w3", 3)), _show(lower_star(3, event(1, 2)))),
    ]


def integral_values() -> list[Check]:
    f = [1, 2, 3, 4, 5]
    n = 5
    a = event(2, 3, 4)
    b = event(3, 4, 5)
    return [
        Check("∫ f d(w2+w3+w4)", "3", str(q_integral(f, parse_coevent("w2 + w3 + w4", n)))),
        Check("∫ f d(w2*w3*w4)", "2", str(q_integral(f, parse_coevent("w2*w3*w4", n)))),
        Check("∫ f dA^*", "4", str(q_integral(f, algebra.upper_star(n, a)))),
        Check("∫ f dA_*", "0", str(q_integral(f, lower_star(n, a)))),
        Check("∫ f dB_*", "3", str(q_integral(f, lower_star(n, b)))),
    ]


def non_additive() -> list[Check]:
    n = 2
    f = [1, 3]
    phi = parse_coevent("w1 + w2", n)
    a, b = event(1), event(2)
    whole = q_integral_over(a | b, f, phi)
    parts = q_integral_over(a, f, phi) + q_integral_over(b, f, phi)
    return [
        Check("∫ over the union", "2", str(whole)),
        Check("sum of the parts", "4", str(parts)),
        Check("not additive", True, whole != parts),
    ]


def non_grade2() -> list[Check]:
    n = 3
    f = [1, 2, 4]
    phi = parse_coevent("w1 + w2 + w3", n)
    a, b, c = event(1), event(2), event(3)

    def I(m):
        return q_integral_over(m, f, phi)

    whole = I(a | b | c)
    grade2 = I(a | b) + I(a | c) + I(b | c) - I(a) - I(b) - I(c)
    return [
        Check("∫ over A∪B∪C", str(Fraction(4 - 2 + 1)), str(whole)),
        Check("grade-2 combination", str(Fraction(1 + 3 + 2 - 1 - 2 - 4)), str(grade2)),
        Check("not grade-2 additive", True, whole != grade2),
    ]


def two_point_grid() -> list[Check]:
    from coevents.generation import search1, survey1

    rows = []
    cases = [
        ("zero measure", (0, 0, 0), "0", None),
        ("Dirac", (2, 0, 2), "w1", None),
        ("type (1,2)", (1, 2, 1), "w1 + w2", ("1", "2")),
        ("type (12)", (0, 0, 3), "w1*w2", None),
        ("type (1,12)", (3, 0, 1), "w1 + w1*w2", ("3", "2")),
        ("type (1,2,12)", (1, 2, 2), "w1 + w2 + w1*w2", ("1", "2")),
    ]
    for label, (m1, m2, mo), want, dens in cases:
        mu = from_low_order([m1, m2], {(0, 1): mo})
        s = survey1(mu)
        rows.append(Check(f"{label}: generated coevents", [want], [format_coevent(r.coevent) for r in s.rows]))
        if dens is not None:
            rep = search1(mu, parse_coevent(want, 2))
            rows.append(Check(f"{label}: density", list(dens), [str(v) for v in rep.density]))
    return rows


def zero_one_measures() -> list[Check]:
    from coevents.generation import search1

    qs = enumerate_01_qmeasures(3)
    pats = {bit_pattern(p): p for p in qs}
    rows = [Check("0/1 q-measures", 34, len(qs))]
    for text, pat in [
        ("w1", "1001101"),
        ("w1 + w2", "1100110"),
        ("w2 + w1*w2 + w1*w3", "0100111"),
    ]:
        phi = parse_coevent(text, 3)
        rows.append(Check(f"{text} has pattern", pat, bit_pattern(phi)))
        rows.append(Check(f"pattern {pat} listed", True, pat in pats))
    comp = algebra.complement(parse_coevent("w1*w2*w3", 3))
    rows.append(Check("(w1*w2*w3)' pattern", "1111110", bit_pattern(comp)))
    mu = from_low_order([1, 2, 3], {(0, 1): 2, (0, 2): 3, (1, 2): 3})
    rep = search1(mu, comp)
    rows.append(Check("(w1*w2*w3)' generated by max-type measure", "feasible", rep.outcome))
    rows.append(Check("density is the singleton values", ["1", "2", "3"], [str(v) for v in rep.density or ()]))
    for text in ("w1*w2*w3", "w1 + w2 + w3", "w1 + w2 + w3 + w1*w2"):
        rows.append(Check(f"{text} not generated by {_show(list(mu.singletons()))}", "infeasible",
                          search1(mu, parse_coevent(text, 3)).outcome))
    rows.append(Check("degree >= 3 prune", True, search1(mu, parse_coevent("w1*w2*w3", 3)).prune_reason is not None))
    return rows


def split_pair() -> list[Check]:
    from coevents.generation import construct, search2, verify2

    mu, phi, F = construct("split-pair", mu1=1, mu2=3, mu_omega=1)
    return [
        Check("off-diagonal density", "5/2", str(F[0][1])),
        Check("verify2", True, verify2(mu, phi, F)),
        Check("exact search", "feasible", search2(mu, phi).outcome),
        Check("not 1-generating", [], [format_coevent(r.coevent) for r in _survey1(mu)]),
    ]


def _survey1(mu):
    from coevents.generation import survey1

    return survey1(mu).rows


def three_point_pair() -> list[Check]:
    from coevents.generation import construct, search1, verify2

    mu, phi, F = construct("three-point-pair", mu1=1, mu2=2, mu12=4)
    o = mu.omega
    return [
        Check("mu(w3)", "3", str(mu(event(3)))),
        Check("mu({w1,w3})", "2", str(mu(event(1, 3)))),
        Check("mu({w2,w3})", "1", str(mu(event(2, 3)))),
        Check("mu(Ω)", "1", str(mu(o))),
        Check("is a q-measure", True, is_q_measure(mu.values)),
        Check("verify2", True, verify2(mu, phi, F)),
        Check("same coevent not 1-generated", "infeasible", search1(mu, phi).outcome),
    ]


def two_atom_pair() -> list[Check]:
    from coevents.generation import construct, expand_generation, verify2

    mu, phi, F = construct("two-atom", a1=1, a2=2, M=4)
    big = expand_generation(mu, phi, F, 3)
    return [
        Check("f(w1,w2)", "3", str(F[0][1])),
        Check("verify2", True, verify2(mu, phi, F)),
        Check("verify2 after expansion to three points", True, verify2(*big)),
        Check("ordinary measure", True, mu(mu.omega) == mu(1) + mu(2)),
    ]


def dirac() -> list[Check]:
    from coevents.generation import construct, survey1, verify1

    rows = []
    for point in range(3):
        mu, phi, f = construct("dirac", c=Fraction(5, 2), n=3, point=point)
        rows.append(Check(f"verify1 at w{point + 1}", True, verify1(mu, phi, f)))
        rows.append(Check(f"unique coevent for w{point + 1}", [format_coevent(phi)],
                          [format_coevent(r.coevent) for r in survey1(mu).rows]))
    return rows


def preclusive() -> list[Check]:
    rows = []
    for precluded, listed in [
        ([event(1)], ["0", "w2", "w1*w2", "w2 + w1*w2"]),
        ([event(1, 2)], ["0", "w1 + w1*w2", "w2 + w1*w2", "w1 + w2"]),
        ([event(1), event(2)], ["0", "w1*w2"]),
    ]:
        got = sorted(format_coevent(p) for p in preclusive_logic(2, precluded))
        rows.append(Check(f"precluded {[algebra.format_event(a) for a in precluded]}", sorted(listed), got))
    return rows


REPRODUCTIONS: dict[str, Callable[[], list[Check]]] = {
    "two-point-types": two_point_types,
    "three-point-types": three_point_types,
    "lower-star-polys": lower_star_polys,
    "integral-values": integral_values,
    "non-additive": non_additive,
    "non-grade2": non_grade2,
    "two-point-grid": two_point_grid,
    "zero-one-measures": zero_one_measures,
    "split-pair": split_pair,
    "three-point-pair": three_point_pair,
    "two-atom-pair": two_atom_pair,
    "dirac": dirac,
    "preclusive": preclusive,
}


def run(name: str) -> list[Check]:
    try:
        fn = REPRODUCTIONS[name]
    except KeyError:
        raise ValueError(f"unknown example {name!r}; choose from {', '.join(REPRODUCTIONS)}") from None
    return fn()
