"""JSON forms of coevents, measures and densities.

Rationals are written as strings ``"p/q"`` (or ``"p"``); outcomes are
1-based.  Event keys are comma-joined sorted indices (``"1,2"``); density
keys carry a ``w`` prefix (``"w1"``, ``"w1,w2"``).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Any, Mapping, Sequence

from coevents.algebra import Coevent, members, popcount
from coevents.qmeasure import QMeasure, low_order_fill

FORMAT_VERSION = "coevents-json/1"


def rat(x) -> str:
    return str(Fraction(x))


def parse_rat(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(s, float):
        raise ValueError(f"floating point value {s!r}; write rationals as strings like \"3/2\"")
    return Fraction(s)


def event_key(mask: int) -> str:
    return ",".join(str(i + 1) for i in members(mask))


def parse_event_key(key: str, n: int) -> int:
    mask = 0
    for part in key.split(","):
        part = part.strip().lstrip("wW")
        idx = int(part)
        if not 1 <= idx <= n:
            raise ValueError(f"outcome {idx} out of range 1..{n}")
        mask |= 1 << (idx - 1)
    return mask


def coevent_to_json(phi: Coevent) -> dict:
    return {"n": phi.n, "poly": [event_key(m) for m in phi.monomials()]}


def coevent_from_json(obj: Mapping) -> Coevent:
    n = int(obj["n"])
    return Coevent.from_polynomial(n, [parse_event_key(k, n) for k in obj["poly"]])


def measure_to_json(mu: QMeasure, full: bool = True) -> dict:
    events = range(1, 1 << mu.n)
    if not full:
        events = [a for a in events if popcount(a) <= 2]
    return {"n": mu.n, "mu": {event_key(a): rat(mu(a)) for a in events}}


def measure_values_from_json(obj: Mapping, complete_grade2: bool = False) -> tuple[Fraction, ...]:
    """Raw set-function values from measure JSON (not yet validated as a q-measure).

    With ``complete_grade2`` missing entries on events of three or more
    outcomes are filled from the singleton and doubleton values.
    """
    n = int(obj["n"])
    given = {parse_event_key(k, n): parse_rat(v) for k, v in obj["mu"].items()}
    vals: list[Fraction | None] = [None] * (1 << n)
    vals[0] = Fraction(0)
    for a, v in given.items():
        vals[a] = v
    for a in range(1, 1 << n):
        if vals[a] is None:
            if popcount(a) >= 3 and complete_grade2:
                continue
            raise ValueError(f"measure has no value for event {{{event_key(a)}}}")
    if complete_grade2:
        for a in sorted(range(1, 1 << n), key=popcount):
            if vals[a] is None:
                vals[a] = low_order_fill(vals, a)
    return tuple(vals)  # type: ignore[arg-type]


def measure_from_json(obj: Mapping, complete_grade2: bool = False) -> QMeasure:
    vals = measure_values_from_json(obj, complete_grade2)
    return QMeasure(int(obj["n"]), vals)


def density1_to_json(f: Sequence) -> dict:
    return {f"w{i + 1}": rat(v) for i, v in enumerate(f)}


def density1_from_json(obj: Mapping, n: int) -> tuple[Fraction, ...]:
    body = obj.get("f", obj)
    vals: list[Fraction | None] = [None] * n
    for k, v in body.items():
        (idx,) = members(parse_event_key(k, n))
        vals[idx] = parse_rat(v)
    missing = [i + 1 for i, v in enumerate(vals) if v is None]
    if missing:
        raise ValueError(f"point function missing outcomes {missing}")
    return tuple(vals)  # type: ignore[arg-type]


def density2_to_json(F: Sequence[Sequence]) -> dict:
    n = len(F)
    return {
        f"w{i + 1},w{j + 1}": rat(F[i][j])
        for i, j in combinations_with_replacement(range(n), 2)
    }


def density2_from_json(obj: Mapping, n: int) -> tuple[tuple[Fraction, ...], ...]:
    body = obj.get("f2", obj)
    F: list[list[Fraction | None]] = [[None] * n for _ in range(n)]
    for k, v in body.items():
        parts = [p.strip().lstrip("wW") for p in k.split(",")]
        if len(parts) != 2:
            raise ValueError(f"pair key {k!r} must name two outcomes")
        i, j = (int(p) - 1 for p in parts)
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"pair key {k!r} out of range")
        x = parse_rat(v)
        for a, b in ((i, j), (j, i)):
            if F[a][b] is not None and F[a][b] != x:
                raise ValueError(f"conflicting values for pair {k!r}")
            F[a][b] = x
    for i in range(n):
        for j in range(n):
            if F[i][j] is None:
                raise ValueError(f"pair function missing (w{i + 1},w{j + 1})")
    return tuple(tuple(row) for row in F)  # type: ignore[arg-type]


def header(seed: int | None = None, **extra: Any) -> dict:
    from coevents.expr import SYNTAX_VERSION

    out: dict[str, Any] = {"version": FORMAT_VERSION, "syntax": SYNTAX_VERSION, "seed": seed}
    out.update(extra)
    return out
