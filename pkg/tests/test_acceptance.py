"""Acceptance criteria 1-17.

Each test carries a ``criterion`` marker; the conftest prints one PASS/FAIL
line per criterion in the terminal summary.  Time limits are asserted inside
the tests.
"""

import functools
import random
import subprocess
import sys
import time
from fractions import Fraction
from itertools import combinations, permutations, product

import pytest

from coevents import algebra
from coevents.algebra import (
    Coevent,
    atom,
    coevent_count,
    enumerate_coevents,
    event,
    join,
    lower_star,
    meet,
    one,
    upper_star,
)
from coevents.expr import format_coevent, parse_coevent
from coevents.generation import (
    construct,
    expand_generation,
    search1,
    survey1,
    survey2,
    verify1,
    verify2,
)
from coevents.integral import closed_form, q_integral, q_integral_over, q_integral_sorted
from coevents.qmeasure import (
    bit_pattern,
    dirac,
    enumerate_01_qmeasures,
    from_low_order,
    grade2_violation,
    is_mu_preclusive,
    is_regular,
    low_order_violation,
    preclusive_logic,
    restrict,
)

from conftest import (
    coevent_value_fn,
    mask_points,
    naive_double,
    naive_integral,
    poly_value,
    random_grade1,
    random_qmeasure,
)

F = Fraction


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


# ---------------------------------------------------------------------------


@pytest.mark.criterion(1, "structure counts")
def test_c01_structure_counts():
    with Timer(1):
        assert coevent_count(2) == 8
        assert coevent_count(3) == 128
        assert sum(1 for _ in enumerate_coevents(2)) == 8
        assert sum(1 for _ in enumerate_coevents(3)) == 128
        for n in range(1, 7):
            assert coevent_count(n) == 2 ** (2**n - 1)
        assert coevent_count(6) == 9_223_372_036_854_775_808
        with pytest.raises(ValueError):
            coevent_count(7)


@pytest.mark.criterion(2, "identity coevent and atoms")
def test_c02_one_and_atoms():
    with Timer(10):
        for n in range(1, 6):
            u = one(n)
            assert all(u(a) == 1 for a in range(1, 1 << n))
            assert u(0) == 0
            assert len(u.poly) == 2**n - 1
            for a in range(1, 1 << n):
                phi = atom(n, a)
                assert [phi(b) for b in range(1 << n)] == [int(b == a) for b in range(1 << n)]
                # independent evaluation of the polynomial form
                mons = [mask_points(m) for m in phi.poly]
                for b in range(1 << n):
                    assert poly_value(mons, mask_points(b)) == int(b == a)


@pytest.mark.criterion(3, "lower-star embedding on four points")
def test_c03_lower_star_example():
    with Timer(1):
        listed = [
            (1,), (2,), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4),
            (1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (1, 2, 3, 4),
        ]
        a = lower_star(4, event(1, 2))
        assert a.poly == frozenset(event(*m) for m in listed)
        assert len(a.poly) == 12
        b = lower_star(4, event(1, 2, 3))
        assert b == a ^ parse_coevent("w3 + w3*w4", 4)


@pytest.mark.criterion(4, "embedding order and lattice laws")
def test_c04_embedding_laws():
    with Timer(5):
        for n in range(1, 5):
            events = range(1 << n)
            low = [lower_star(n, a) for a in events]
            up = [upper_star(n, a) for a in events]
            for a in events:
                # defining conditions, checked directly
                for b in events:
                    assert low[a](b) == int(b != 0 and b & ~a == 0)
                    assert up[a](b) == int(b & a != 0)
                assert low[a] <= up[a]
                for b in events:
                    subset = a & ~b == 0
                    assert (low[a] <= low[b]) == subset
                    assert (up[a] <= up[b]) == subset
                    assert low[a & b] == meet(low[a], low[b])
                    assert up[a | b] == join(up[a], up[b])
        n = 3
        low_w = [
            (a, b) for a in range(8) for b in range(8)
            if lower_star(n, a | b) != join(lower_star(n, a), lower_star(n, b))
        ]
        up_w = [
            (a, b) for a in range(8) for b in range(8)
            if upper_star(n, a & b) != meet(upper_star(n, a), upper_star(n, b))
        ]
        assert low_w and up_w


def _f_grid(n, values=(1, 2, 3, 4)):
    return product(values, repeat=n)


@pytest.mark.criterion(5, "integral suite and closed forms")
def test_c05_integral_suite():
    with Timer(60):
        # level-set form agrees with the sorted-point form on distinct values
        for n in (1, 2, 3):
            for phi in enumerate_coevents(n):
                for perm in permutations([F(1), F(5, 2), F(7)][:n]):
                    assert q_integral(perm, phi) == q_integral_sorted(perm, phi)
        r = random.Random(5)
        for _ in range(2000):
            phi = Coevent.from_table(4, r.getrandbits(15) << 1)
            f = r.sample([F(1), F(2), F(7, 2), F(9)], 4)
            assert q_integral(f, phi) == q_integral_sorted(f, phi)

        # closed forms against the general integral
        for n in range(1, 5):
            nonempty = range(1, 1 << n)
            fam = []
            for a in nonempty:
                pts = algebra.members(a)
                fam.append(("additive-chain", Coevent.from_polynomial(n, [1 << p for p in pts]), {"points": pts}))
                fam.append(("monomial", Coevent.from_polynomial(n, [a]), {"points": pts}))
                fam.append(("upper-star", upper_star(n, a), {"event": a}))
                fam.append(("lower-star", lower_star(n, a), {"event": a}))
                fam.append(("atom", atom(n, a), {"event": a}))
            for f in _f_grid(n):
                for kind, phi, args in fam:
                    got = q_integral(f, phi)
                    assert got == closed_form(kind, f, **args), (kind, f, format_coevent(phi))
                    assert got == naive_integral(f, coevent_value_fn(phi))

        # worked values at f(w_i) = i on five points
        f = [1, 2, 3, 4, 5]
        assert q_integral(f, parse_coevent("w2 + w3 + w4", 5)) == 3
        assert q_integral(f, parse_coevent("w2*w3*w4", 5)) == 2
        assert q_integral(f, upper_star(5, event(2, 3, 4))) == 4
        assert q_integral(f, lower_star(5, event(2, 3, 4))) == 0
        assert q_integral(f, lower_star(5, event(3, 4, 5))) == 3


@pytest.mark.criterion(6, "additivity over distinct atoms")
def test_c06_atom_additivity():
    r = random.Random(6)
    n = 4
    for _ in range(10_000):
        f = [F(r.randint(0, 6), r.choice((1, 2))) for _ in range(n)]
        events = r.sample(range(1, 1 << n), r.randint(1, 6))
        phis = [atom(n, a) for a in events]
        joined = functools.reduce(join, phis)
        assert q_integral(f, joined) == sum(q_integral(f, p) for p in phis)


@pytest.mark.criterion(7, "non-additivity and non-grade-2-additivity instances")
def test_c07_non_additivity():
    with Timer(1):
        # two disjoint events, f increasing across them, additive coevent
        n = 4
        phi = parse_coevent("w1 + w2", n)
        a, b = event(1, 3), event(2, 4)
        f = [1, 3, 1, 2]
        whole = q_integral_over(a | b, f, phi)
        assert whole == f[1] - f[0]
        assert whole != q_integral_over(a, f, phi) + q_integral_over(b, f, phi)
        assert q_integral_over(a, f, phi) + q_integral_over(b, f, phi) == f[0] + f[1]

        # three disjoint events, additive coevent on three points
        n = 3
        phi = parse_coevent("w1 + w2 + w3", n)
        f = [1, 2, 4]
        A, B, C = event(1), event(2), event(3)

        def I(m):
            return q_integral_over(m, f, phi)

        whole = I(A | B | C)
        assert whole == f[2] - f[1] + f[0]
        combo = I(A | B) + I(A | C) + I(B | C) - I(A) - I(B) - I(C)
        assert whole != combo


@pytest.mark.criterion(8, "q-measure machinery")
def test_c08_qmeasures():
    with Timer(10):
        r = random.Random(8)
        agree_true = 0
        done = 0
        while done < 1000:
            n = r.randint(1, 4)
            vals = [F(0)] + [F(r.randint(0, 5)) for _ in range((1 << n) - 1)]
            if r.random() < 0.5:
                # make it satisfy the low-order relation on big events
                for a in sorted(range(1 << n), key=algebra.popcount):
                    m = algebra.popcount(a)
                    if m >= 3:
                        pts = algebra.members(a)
                        vals[a] = sum(vals[(1 << i) | (1 << j)] for i, j in combinations(pts, 2)) - (m - 2) * sum(
                            vals[1 << i] for i in pts
                        )
            if any(v < 0 for v in vals):
                continue
            done += 1
            g = grade2_violation(vals) is None
            low = low_order_violation(vals) is None
            assert g == low
            agree_true += g
        assert agree_true > 100

        qs = enumerate_01_qmeasures(3)
        assert len(qs) == 34
        pats = {bit_pattern(p) for p in qs}
        for pat in ("1001101", "1100110", "1111110", "0100111"):
            assert pat in pats
        assert bit_pattern(parse_coevent("w1", 3)) == "1001101"
        assert bit_pattern(parse_coevent("w1 + w2", 3)) == "1100110"
        assert bit_pattern(~parse_coevent("w1*w2*w3", 3)) == "1111110"
        assert bit_pattern(parse_coevent("w2 + w1*w2 + w1*w3", 3)) == "0100111"


@pytest.mark.criterion(9, "preclusive logics")
def test_c09_preclusive_logics():
    with Timer(5):
        def texts(precluded):
            return {format_coevent(p) for p in preclusive_logic(2, precluded)}

        assert texts([event(1)]) == {"0", "w2", "w1*w2", "w2 + w1*w2"}
        assert texts([event(1, 2)]) == {"0", "w1 + w1*w2", "w2 + w1*w2", "w1 + w2"}
        assert texts([event(1), event(2)]) == {"0", "w1*w2"}
        for n in (1, 2, 3):
            for k in range(1 << ((1 << n) - 1)):
                precluded = [a for a in range(1, 1 << n) if (k >> (a - 1)) & 1]
                permitted = (1 << n) - 1 - len(precluded)
                logic = preclusive_logic(n, precluded)
                assert len(logic) == 2**permitted
                assert len({p.table for p in logic}) == len(logic)


# --- generation surveys shared by criteria 10-12 and 16 ----------------------


def predicted_two_point(m1, m2, mo):
    """Coevents generated on two points, from the case analysis; None density = not unique."""
    if m1 == 0 and m2 == 0:
        return ("0", None) if mo == 0 else ("w1*w2", None)
    if m1 > 0 and m2 == 0:
        if mo == m1:
            return ("w1", None)
        if mo < m1:
            return ("w1 + w1*w2", (m1, m1 - mo))
        return (None, None)
    if m1 == 0 and m2 > 0:
        if mo == m2:
            return ("w2", None)
        if mo < m2:
            return ("w2 + w1*w2", (m2 - mo, m2))
        return (None, None)
    if mo == abs(m2 - m1):
        return ("w1 + w2", (m1, m2))
    if mo == max(m1, m2):
        return ("w1 + w2 + w1*w2", (m1, m2))
    return (None, None)


@functools.cache
def two_point_grid():
    rows = []
    for m1, m2, mo in product(range(5), repeat=3):
        mu = from_low_order([m1, m2], {(0, 1): mo})
        rows.append(((m1, m2, mo), mu, survey1(mu)))
    return rows


@functools.cache
def dirac_surveys():
    out = []
    for point in range(3):
        for c in (F(1), F(7, 3)):
            mu = dirac(3, point, c)
            out.append((point, mu, survey1(mu, jobs=4)))
    return out


@functools.cache
def non_dirac_surveys():
    r = random.Random(11)
    out = []
    for _ in range(20):
        mu = random_grade1(r, 3, r.choice((2, 3)))
        out.append((mu, survey1(mu, jobs=4)))
    return out


NAMED_COEVENTS = ("w1*w2*w3", "w1 + w2 + w3", "w1 + w2 + w3 + w1*w2")


def named_coevent_measures(text, count=60):
    r = random.Random(hash(text) % 1000)
    out = []
    while len(out) < count:
        mode = len(out) % 3
        if mode == 0:
            mu = random_qmeasure(r, 3)
        elif mode == 1 and text == "w1*w2*w3":
            # singletons zero so the pinning pass does not decide it
            mu = random_qmeasure(r, 3, zero_prob=1.0)
        else:
            # doubletons set to the values the coevent would force on pairs
            s = [r.randint(1, 6) for _ in range(3)]
            pairs = {(i, j): abs(s[i] - s[j]) for i, j in combinations(range(3), 2)}
            if text.endswith("w1*w2"):
                pairs[(0, 1)] = max(s[0], s[1])
            try:
                mu = from_low_order(s, pairs)
            except Exception:
                continue
        out.append(mu)
    return out


@functools.cache
def named_coevent_reports():
    out = {}
    for text in NAMED_COEVENTS:
        phi = parse_coevent(text, 3)
        out[text] = [(mu, search1(mu, phi)) for mu in named_coevent_measures(text)]
    return out


@pytest.mark.criterion(10, "two-point classification grid")
def test_c10_two_point_grid():
    with Timer(60):
        for (m1, m2, mo), mu, s in two_point_grid():
            want, dens = predicted_two_point(m1, m2, mo)
            got = [format_coevent(r.coevent) for r in s.rows]
            assert got == ([want] if want else []), ((m1, m2, mo), got)
            if dens is not None:
                assert tuple(s.rows[0].density) == tuple(F(d) for d in dens)
            for rep in s.rows:
                assert verify1(mu, rep.coevent, rep.density)


@pytest.mark.criterion(11, "Dirac uniqueness and ordinary measures")
def test_c11_dirac_and_grade1():
    with Timer(300):
        for point, mu, s in dirac_surveys():
            assert [r.coevent for r in s.rows] == [algebra.evaluation_map(3, point)]
        for mu, s in non_dirac_surveys():
            assert sum(1 for v in mu.singletons() if v > 0) >= 2
            assert s.rows == []


@pytest.mark.criterion(12, "named three-point coevents are never 1-generated")
def test_c12_named_coevent_negatives():
    with Timer(300):
        reps = named_coevent_reports()
        for text in NAMED_COEVENTS:
            assert len(reps[text]) >= 50
            assert all(r.outcome == "infeasible" for _, r in reps[text]), text
        zero_singletons = from_low_order([0, 0, 0], {(0, 1): 1, (0, 2): 2, (1, 2): 1})
        rep = search1(zero_singletons, parse_coevent("w1*w2*w3", 3))
        assert rep.outcome == "infeasible"
        assert "degree" in rep.prune_reason


@pytest.mark.criterion(13, "2-generation constructions")
def test_c13_two_generation_positives():
    with Timer(10):
        mu, phi, F2 = construct("two-atom", a1=1, a2=2, M=4)
        assert verify2(mu, phi, F2)
        assert phi == parse_coevent("w1 + w2 + w1*w2", 2)
        mu, phi, F2 = construct("split-pair", mu1=1, mu2=3, mu_omega=1)
        assert F2[0][1] == F(5, 2)
        assert verify2(mu, phi, F2)
        mu, phi, F2 = construct("three-point-pair", mu1=1, mu2=2, mu12=4)
        assert mu(event(3)) == 3 and mu(mu.omega) == 1
        assert verify2(mu, phi, F2)
        # independent double-integral evaluation
        val = coevent_value_fn(phi)
        for a in range(1 << 3):
            assert naive_double(F2, val, mask_points(a)) == mu(a)
        assert search1(mu, phi).outcome == "infeasible"


@pytest.mark.criterion(14, "ordinary three-atom measures are not 2-generating")
def test_c14_ordinary_measures_sampled():
    with Timer(1800):
        r = random.Random(14)
        for _ in range(5):
            mu = random_grade1(r, 3, 3)
            s = survey2(mu, jobs=4)
            assert s.rows == [], [format_coevent(x.coevent) for x in s.rows]
            assert s.counts["infeasible"] == 128


@pytest.mark.criterion(15, "expansion theorem")
def test_c15_expansion():
    with Timer(5):
        mu = from_low_order([1, 2], {(0, 1): 1})
        phi = parse_coevent("w1 + w2", 2)
        f = (F(1), F(2))
        big_mu, big_phi, big_f = expand_generation(mu, phi, f, 4)
        assert verify1(big_mu, big_phi, big_f)
        assert restrict(big_mu, 2) == mu
        assert algebra.restrict_coevent(big_phi, 2) == phi
        assert verify1(restrict(big_mu, 2), algebra.restrict_coevent(big_phi, 2), big_f[:2])

        mu, phi, F2 = construct("two-atom", a1=1, a2=2, M=4)
        big_mu, big_phi, big_F = expand_generation(mu, phi, F2, 3)
        assert verify2(big_mu, big_phi, big_F)
        small = [row[:2] for row in big_F[:2]]
        assert verify2(restrict(big_mu, 2), algebra.restrict_coevent(big_phi, 2), small)


@pytest.mark.criterion(16, "preclusivity and regular uniqueness over all surveys")
def test_c16_global_properties():
    surveys = [(mu, s) for _, mu, s in two_point_grid()]
    surveys += [(mu, s) for _, mu, s in dirac_surveys()]
    surveys += non_dirac_surveys()
    for mu, s in surveys:
        assert all(is_mu_preclusive(r.coevent, mu) for r in s.rows)
        assert sum(1 for r in s.rows if is_regular(r.coevent)) <= 1
    for reps in named_coevent_reports().values():
        for mu, r in reps:
            if r.feasible:
                assert is_mu_preclusive(r.coevent, mu)


def _cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "coevents", *args], capture_output=True, check=False
    )


@pytest.mark.criterion(17, "parser round trip and deterministic output")
def test_c17_roundtrip_and_determinism(tmp_path):
    for phi in enumerate_coevents(3):
        text = format_coevent(phi)
        assert parse_coevent(text, 3) == phi
        assert format_coevent(parse_coevent(text, 3)) == text
    m = tmp_path / "mu.json"
    m.write_text('{"n": 3, "mu": {"1": "1", "2": "2", "3": "3", "1,2": "2", "1,3": "3", "2,3": "3", "1,2,3": "2"}}')
    runs = [
        ("gen1", "survey", "-m", str(m), "--format", "json", "--seed", "17", "--jobs", "1"),
        ("gen1", "survey", "-m", str(m), "--format", "json", "--seed", "17", "--jobs", "3"),
    ]
    outs = [_cli(*a) for a in runs + runs[:1]]
    assert all(o.returncode == 0 for o in outs)
    assert outs[0].stdout == outs[1].stdout == outs[2].stdout
    assert b'"seed": 17' in outs[0].stdout
    h = ("gen2", "search", "-m", str(m), "--phi", "w1 + w2 + w3 + w1*w2 + w1*w3 + w2*w3",
         "--mode", "heuristic", "--seed", "5", "--format", "json")
    a, b = _cli(*h), _cli(*h)
    assert a.stdout == b.stdout and a.stdout
