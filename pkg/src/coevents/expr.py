"""Text syntax for coevents and events.

Grammar (whitespace is ignored, ``+`` is XOR)::

    coevent  := "0" | "1" | term ("+" term)*
    term     := monomial | "atom" eventset | "low" eventset
              | "up" eventset | "psi" eventset
    monomial := "w" INT ("*" "w" INT)*
    eventset := "{" "w" INT ("," "w" INT)* "}"

``0`` and ``1`` are also accepted as terms inside a sum.
"""

from __future__ import annotations

import re

from coevents import algebra
from coevents.algebra import Coevent, members

SYNTAX_VERSION = "coevent-expr/1"

_TOKEN = re.compile(r"\s*(?:(w\d+)|(atom|low|up|psi)|(\d+)|(.))")


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.pos = pos


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        point, word, number, other = m.groups()
        start = m.start(m.lastindex) if m.lastindex else pos
        if point:
            out.append(("point", point, start))
        elif word:
            out.append(("word", word, start))
        elif number:
            out.append(("number", number, start))
        elif other:
            if not other.isspace():
                out.append(("sym", other, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str, value: str | None = None):
        tok = self.toks[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ExprSyntaxError(f"expected {want!r}, found {got!r}", self.text, tok[2])
        self.i += 1
        return tok

    def point(self) -> int:
        tok = self.take("point")
        idx = int(tok[1][1:])
        if not 1 <= idx <= self.n:
            raise ExprSyntaxError(f"outcome w{idx} out of range 1..{self.n}", self.text, tok[2])
        return idx - 1

    def eventset(self) -> int:
        self.take("sym", "{")
        mask = 1 << self.point()
        while self.peek()[:2] == ("sym", ","):
            self.i += 1
            mask |= 1 << self.point()
        self.take("sym", "}")
        return mask

    def term(self) -> Coevent:
        kind, value, pos = self.peek()
        if kind == "number":
            self.i += 1
            if value == "0":
                return Coevent.zero(self.n)
            if value == "1":
                return algebra.one(self.n)
            raise ExprSyntaxError(f"unexpected number {value}", self.text, pos)
        if kind == "word":
            self.i += 1
            mask = self.eventset()
            if value == "atom":
                return algebra.atom(self.n, mask)
            if value == "low":
                return algebra.lower_star(self.n, mask)
            if value == "up":
                return algebra.upper_star(self.n, mask)
            return algebra.psi(self.n, mask)
        mask = 1 << self.point()
        while self.peek()[:2] == ("sym", "*"):
            self.i += 1
            mask |= 1 << self.point()
        return Coevent.from_polynomial(self.n, [mask])

    def coevent(self) -> Coevent:
        acc = self.term()
        while self.peek()[:2] == ("sym", "+"):
            self.i += 1
            acc = acc ^ self.term()
        self.take("end")
        return acc


def parse_coevent(text: str, n: int) -> Coevent:
    algebra.SampleSpace(n)
    return _Parser(text, n).coevent()


def parse_event(text: str, n: int) -> int:
    """Parse ``{w1,w3}``, ``{}``, ``w1,w3`` or ``1,3`` into an event mask."""
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    mask = 0
    for part in body.split(","):
        part = part.strip()
        if not part:
            continue
        digits = part[1:] if part[:1] in ("w", "W") else part
        if not digits.isdigit():
            raise ValueError(f"bad outcome {part!r} in event {text!r}")
        idx = int(digits)
        if not 1 <= idx <= n:
            raise ValueError(f"outcome {part} out of range 1..{n}")
        mask |= 1 << (idx - 1)
    return mask


def format_monomial(mask: int, unicode: bool = False) -> str:
    if unicode:
        return "".join(f"ω{i + 1}*" for i in members(mask))
    return "*".join(f"w{i + 1}" for i in members(mask))


def format_coevent(phi: Coevent, unicode: bool = False) -> str:
    mons = phi.monomials()
    if not mons:
        return "0"
    sep = " ⊕ " if unicode else " + "
    return sep.join(format_monomial(m, unicode) for m in mons)
