"""Command-line front end.

Exit status: 0 success or affirmative answer, 1 negative mathematical answer
(not a q-measure, infeasible, not preclusive, failed reproduction), 2 bad
input or usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any

from coevents import algebra, jsonio
from coevents.algebra import Coevent, format_event
from coevents.expr import ExprSyntaxError, format_coevent, parse_coevent, parse_event

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


# --- input helpers ----------------------------------------------------------


def _load_json(spec: str) -> Any:
    if spec == "-":
        text = sys.stdin.read()
    elif spec.lstrip().startswith("{"):
        text = spec
    else:
        try:
            with open(spec, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {spec}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON in {spec}: {exc}") from None


def _rats(text: str) -> list[Fraction]:
    try:
        return [jsonio.parse_rat(p.strip()) for p in text.split(",") if p.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected comma-separated rationals, got {text!r}") from None


def _density1(args, n: int):
    if args.f.lstrip().startswith("{") or os.path.exists(args.f):
        return jsonio.density1_from_json(_load_json(args.f), n)
    return tuple(_rats(args.f))


def _density2(args, n: int):
    if args.f2.lstrip().startswith("{") or os.path.exists(args.f2):
        return jsonio.density2_from_json(_load_json(args.f2), n)
    return tuple(tuple(_rats(row)) for row in args.f2.split(";"))


def _measure(args):
    from coevents.qmeasure import QMeasure

    obj = _load_json(args.measure)
    vals = jsonio.measure_values_from_json(obj, complete_grade2=args.complete_grade2)
    return QMeasure(int(obj["n"]), vals)


def _coevent(text: str, n: int) -> Coevent:
    return parse_coevent(text, n)


# --- output -----------------------------------------------------------------


class Out:
    def __init__(self, args):
        self.fmt = args.format
        self.seed = args.seed
        self.unicode = args.unicode
        self.command = args.command

    def coevent(self, phi: Coevent) -> str:
        return format_coevent(phi, unicode=self.unicode)

    def emit(self, payload: dict, table: list[tuple[str, Any]] | None = None) -> None:
        if self.fmt == "json":
            body = {"header": jsonio.header(self.seed, command=self.command)}
            body.update(payload)
            sys.stdout.write(json.dumps(body, ensure_ascii=False, indent=2) + "\n")
            return
        rows = table if table is not None else list(payload.items())
        width = max((len(k) for k, _ in rows), default=0)
        for k, v in rows:
            if isinstance(v, (dict, list)):
                v = json.dumps(v, ensure_ascii=False)
            sys.stdout.write(f"{k.ljust(width)}  {v}\n")

    def lines(self, records: list[dict], summary: dict) -> None:
        """JSON-lines stream (json) or one line per record (table)."""
        if self.fmt == "json":
            head = {"header": jsonio.header(self.seed, command=self.command)}
            sys.stdout.write(json.dumps(head, ensure_ascii=False) + "\n")
            for r in records:
                sys.stdout.write(json.dumps(r, ensure_ascii=False) + "\n")
            sys.stdout.write(json.dumps({"summary": summary}, ensure_ascii=False) + "\n")
            return
        for r in records:
            dens = r.get("density")
            sys.stdout.write(f"{r['coevent']}\t{r['outcome']}\t{json.dumps(dens) if dens else ''}\n")
        sys.stdout.write(" ".join(f"{k}={v}" for k, v in summary.items()) + "\n")


def _report_json(rep, out: Out) -> dict:
    d = rep.to_json()
    d["coevent"] = out.coevent(rep.coevent)
    return d


# --- commands ---------------------------------------------------------------


def cmd_eval(args, out: Out) -> int:
    phi = _coevent(args.coevent, args.n)
    a = parse_event(args.event, args.n)
    v = phi(a)
    out.emit({"coevent": out.coevent(phi), "event": format_event(a), "value": v})
    return EXIT_OK


def cmd_integrate(args, out: Out) -> int:
    from coevents.integral import q_integral_over

    f = _density1(args, args.n) if args.n else tuple(_rats(args.f))
    n = args.n or len(f)
    phi = _coevent(args.coevent, n)
    a = parse_event(args.over, n) if args.over else (1 << n) - 1
    v = q_integral_over(a, f, phi)
    out.emit({
        "coevent": out.coevent(phi), "over": format_event(a),
        "f": jsonio.density1_to_json(f), "value": jsonio.rat(v),
    })
    return EXIT_OK


def cmd_integrate2(args, out: Out) -> int:
    from coevents.integral import double_integral, inner_integrals, pair_function

    if args.n:
        F = _density2(args, args.n)
    else:
        F = tuple(tuple(_rats(row)) for row in args.f2.split(";"))
    F = pair_function(F)
    n = len(F)
    phi = _coevent(args.coevent, n)
    a = parse_event(args.over, n) if args.over else (1 << n) - 1
    g = inner_integrals(a, F, phi)
    out.emit({
        "coevent": out.coevent(phi), "over": format_event(a),
        "inner": {f"w{i + 1}": jsonio.rat(x) for i, x in enumerate(g)},
        "value": jsonio.rat(double_integral(a, F, phi)),
    })
    return EXIT_OK


def cmd_classify(args, out: Out) -> int:
    from coevents.qmeasure import is_regular

    phi = _coevent(args.coevent, args.n)
    c = algebra.classify(phi)
    out.emit({
        "coevent": out.coevent(phi),
        "type": c.type_label(),
        "canonical_type": algebra.canonical_type(phi),
        "zero": c.zero, "classical": c.classical, "additive": c.additive,
        "multiplicative": c.multiplicative, "quadratic": c.quadratic, "unital": c.unital,
        "regular": is_regular(phi),
        "table": {format_event(a): phi(a) for a in range(1, 1 << args.n)},
    })
    return EXIT_OK


def cmd_atoms(args, out: Out) -> int:
    phi = _coevent(args.coevent, args.n)
    events = algebra.atoms_below(phi)
    out.emit({
        "coevent": out.coevent(phi),
        "atoms": [
            {"event": format_event(a), "poly": out.coevent(algebra.atom(args.n, a))} for a in events
        ],
    })
    return EXIT_OK


def cmd_embed(args, out: Out) -> int:
    a = parse_event(args.event, args.n)
    fn = {"low": algebra.lower_star, "up": algebra.upper_star, "psi": algebra.psi}[args.kind]
    phi = fn(args.n, a)
    out.emit({"kind": args.kind, "event": format_event(a), "coevent": out.coevent(phi)})
    return EXIT_OK


def cmd_measure(args, out: Out) -> int:
    from coevents.qmeasure import (
        NotAQMeasure,
        bit_pattern,
        enumerate_01_qmeasures,
        from_low_order,
        grade2_violation,
        is_regular,
    )

    if args.action == "check":
        obj = _load_json(args.measure)
        vals = jsonio.measure_values_from_json(obj, complete_grade2=args.complete_grade2)
        neg = [a for a, v in enumerate(vals) if v < 0]
        bad = grade2_violation(vals) if not neg else None
        ok = not neg and bad is None
        payload: dict[str, Any] = {"n": int(obj["n"]), "q_measure": ok}
        if neg:
            payload["negative_on"] = format_event(neg[0])
        if bad is not None:
            payload["grade2_violation"] = [format_event(x) for x in bad]
        if ok:
            payload["regular"] = is_regular(vals)
            payload["additive"] = all(
                vals[a | b] == vals[a] + vals[b]
                for a in range(1 << int(obj["n"])) for b in range(1 << int(obj["n"])) if not a & b
            )
        out.emit(payload)
        return EXIT_OK if ok else EXIT_NEGATIVE
    if args.action == "build":
        singles = _rats(args.singletons)
        pairs = {}
        for spec in args.pair or []:
            key, _, val = spec.partition("=")
            mask = jsonio.parse_event_key(key, len(singles))
            i, j = algebra.members(mask) if algebra.popcount(mask) == 2 else (None, None)
            if i is None:
                raise UsageError(f"pair {spec!r} must name two outcomes")
            pairs[(i, j)] = jsonio.parse_rat(val)
        try:
            mu = from_low_order(singles, pairs)
        except NotAQMeasure as exc:
            sys.stderr.write(f"not a q-measure: {exc}\n")
            return EXIT_NEGATIVE
        body = jsonio.measure_to_json(mu)
        if args.format == "json":
            sys.stdout.write(json.dumps(body, indent=2) + "\n")
        else:
            out.emit(body["mu"])
        return EXIT_OK
    qs = enumerate_01_qmeasures(3)
    out.emit({
        "count": len(qs),
        "q_measures": [{"pattern": bit_pattern(p), "coevent": out.coevent(p)} for p in qs],
    })
    return EXIT_OK


def _gen(args, out: Out, grade: int) -> int:
    from coevents import generation as g

    mu = _measure(args)
    if args.action == "survey":
        jobs = args.jobs or g.default_jobs()
        s = g.survey1(mu, jobs=jobs) if grade == 1 else g.survey2(mu, mode=args.mode, jobs=jobs)
        props = g.survey_properties(s, mu)
        summary = dict(s.counts)
        summary.update(props)
        out.lines([_report_json(r, out) for r in s.rows], summary)
        return EXIT_OK if s.rows else EXIT_NEGATIVE
    phi = _coevent(args.phi, mu.n)
    if args.action == "verify":
        if grade == 1:
            f = _density1(args, mu.n)
            bad = g.first_mismatch1(mu, phi, f)
        else:
            f = _density2(args, mu.n)
            bad = g.first_mismatch2(mu, phi, f)
        payload = {"coevent": out.coevent(phi), "grade": grade, "verified": bad is None}
        if bad is not None:
            payload["mismatch"] = format_event(bad)
        out.emit(payload)
        return EXIT_OK if bad is None else EXIT_NEGATIVE
    pick = Fraction(args.pick)
    if grade == 1:
        rep = g.search1(mu, phi, pick=pick)
    else:
        rep = g.search2(mu, phi, mode=args.mode, pick=pick, seed=args.seed or 0)
    out.emit(_report_json(rep, out))
    return EXIT_OK if rep.feasible else EXIT_NEGATIVE


def cmd_gen1(args, out: Out) -> int:
    return _gen(args, out, 1)


def cmd_gen2(args, out: Out) -> int:
    return _gen(args, out, 2)


def cmd_filters(args, out: Out) -> int:
    from coevents.qmeasure import is_mu_preclusive, regularity_violation

    mu = _measure(args) if args.measure else None
    n = mu.n if mu is not None else args.n
    if n is None:
        raise UsageError("give -n or --measure")
    phi = _coevent(args.phi, n)
    reg = regularity_violation(phi)
    payload: dict[str, Any] = {"coevent": out.coevent(phi), "regular": reg is None}
    if reg is not None:
        payload["regularity_violation"] = {
            "condition": reg[0], "A": format_event(reg[1]), "B": format_event(reg[2])
        }
    code = EXIT_OK
    if mu is not None:
        pre = is_mu_preclusive(phi, mu)
        payload["mu_preclusive"] = pre
        payload["precluded"] = [format_event(a) for a in range(1, 1 << n) if mu(a) == 0]
        if not pre:
            code = EXIT_NEGATIVE
    out.emit(payload)
    return code


def cmd_reproduce(args, out: Out) -> int:
    from coevents.reproduce import REPRODUCTIONS, _show, run

    if args.example == "list":
        out.emit({"examples": list(REPRODUCTIONS)})
        return EXIT_OK
    try:
        rows = run(args.example)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok = all(r.ok for r in rows)
    checks = [
        {"check": r.label, "expected": _show(r.expected), "actual": _show(r.actual), "ok": r.ok}
        for r in rows
    ]
    table = [(("PASS " if r.ok else "FAIL ") + r.label, _show(r.actual)) for r in rows]
    out.emit({"example": args.example, "passed": ok, "checks": checks}, table)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_probe_open(args, out: Out) -> int:
    from coevents.generation import probe_open
    from coevents.integral import double_integral

    phi = _coevent(args.phi, args.n)
    rep = probe_open(phi)
    payload = _report_json(rep, out)
    if rep.feasible:
        mu = [double_integral(a, rep.density, phi) for a in range(1 << args.n)]
        payload["measure"] = {format_event(a): jsonio.rat(mu[a]) for a in range(1, 1 << args.n)}
    out.emit(payload)
    return EXIT_OK if rep.feasible else EXIT_NEGATIVE


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--seed", type=int, default=None, help="recorded in output headers")
    common.add_argument("--unicode", action="store_true", help="print ⊕ and ω")
    common.add_argument("--jobs", type=int, default=None, help="worker processes for surveys")
    common.add_argument(
        "--complete-grade2", action="store_true",
        help="fill missing measure values on events of 3+ outcomes from the low-order ones",
    )

    p = argparse.ArgumentParser(prog="coevents", description="Coevents, quantum integrals and generation.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=fn)
        return sp

    sp = add("eval", cmd_eval, "value of a coevent on an event")
    sp.add_argument("coevent")
    sp.add_argument("event")
    sp.add_argument("-n", type=int, required=True)

    sp = add("integrate", cmd_integrate, "quantum integral of a point function")
    sp.add_argument("coevent")
    sp.add_argument("--f", required=True, help='values "1,2,3" or JSON')
    sp.add_argument("--over", help="restrict to an event")
    sp.add_argument("-n", type=int)

    sp = add("integrate2", cmd_integrate2, "double quantum integral of a pair function")
    sp.add_argument("coevent")
    sp.add_argument("--f2", required=True, help='rows "1,2;2,3" or JSON')
    sp.add_argument("--over")
    sp.add_argument("-n", type=int)

    sp = add("classify", cmd_classify, "kind flags and type of a coevent")
    sp.add_argument("coevent")
    sp.add_argument("-n", type=int, required=True)

    sp = add("atoms", cmd_atoms, "atoms below a coevent")
    sp.add_argument("coevent")
    sp.add_argument("-n", type=int, required=True)

    sp = add("embed", cmd_embed, "embed an event as a coevent")
    sp.add_argument("kind", choices=("low", "up", "psi"))
    sp.add_argument("event")
    sp.add_argument("-n", type=int, required=True)

    sp = add("measure", cmd_measure, "check, build or enumerate q-measures")
    sp.add_argument("action", choices=("check", "build", "enum01"))
    sp.add_argument("-m", "--measure", help="measure JSON: path, '-' or inline")
    sp.add_argument("--singletons", help="build: singleton values")
    sp.add_argument("--pair", action="append", help="build: doubleton value like 1,2=4")

    for name, fn in (("gen1", cmd_gen1), ("gen2", cmd_gen2)):
        sp = add(name, fn, f"{name[-1]}-generation: verify, search, survey")
        sp.add_argument("action", choices=("verify", "search", "survey"))
        sp.add_argument("-m", "--measure", required=True)
        sp.add_argument("--phi", help="coevent (verify, search)")
        sp.add_argument("--pick", default="1/2", help="interior point parameter in (0,1)")
        if name == "gen1":
            sp.add_argument("--f", help="density for verify")
        else:
            sp.add_argument("--f2", help="pair density for verify")
            sp.add_argument("--mode", choices=("exact", "heuristic"), default="exact")

    sp = add("filters", cmd_filters, "regularity and preclusivity of a coevent")
    sp.add_argument("--phi", required=True)
    sp.add_argument("-m", "--measure")
    sp.add_argument("-n", type=int)

    sp = add("reproduce", cmd_reproduce, "recompute a worked example ('list' to list)")
    sp.add_argument("example")

    sp = add("probe-open", cmd_probe_open, "search for any q-measure 2-generating a coevent")
    sp.add_argument("--phi", default="w1 + w2 + w3")
    sp.add_argument("-n", type=int, default=3)
    return p


def _check_args(args) -> None:
    if args.command == "measure":
        if args.action == "check" and not args.measure:
            raise UsageError("measure check needs --measure")
        if args.action == "build" and not args.singletons:
            raise UsageError("measure build needs --singletons")
    if args.command in ("gen1", "gen2") and args.action in ("verify", "search") and not args.phi:
        raise UsageError(f"{args.command} {args.action} needs --phi")
    if args.command == "gen1" and args.action == "verify" and not args.f:
        raise UsageError("gen1 verify needs --f")
    if args.command == "gen2" and args.action == "verify" and not args.f2:
        raise UsageError("gen2 verify needs --f2")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    from coevents.generation import ConstraintViolation, InvalidDensity
    from coevents.qmeasure import NotAQMeasure

    out = Out(args)
    try:
        _check_args(args)
        return args.func(args, out)
    except NotAQMeasure as exc:
        sys.stderr.write(f"not a q-measure: {exc}\n")
        return EXIT_NEGATIVE
    except (UsageError, ExprSyntaxError, InvalidDensity, ConstraintViolation) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
