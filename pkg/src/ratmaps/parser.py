"""Tokenizer and recursive-descent parser for polynomials and session scripts.

Script grammar::

    script    := statement*
    statement := ring | map | command
    ring      := "ring" NAME "=" field "[" names "]" ("/" "(" polys ")")? ";"
    field     := "QQ" | "GF" "(" INT ")" | "ZZ" "/" INT
    map       := "map" NAME ":" NAME "->" NAME "=" "[" polys "]" ";"
    command   := WORD ("-" WORD)* arg* ";"          e.g.  base-locus F;

Polynomials use ``+ - * ^``, parentheses, integer literals and division by
nonzero constants.  ``#`` and ``--`` start comments that run to the end of
the line.
"""

from __future__ import annotations

import re
import dataclasses
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .fields import GF, QQ, Field
from .rings import Poly, PolyRing

__all__ = [
    "Token",
    "tokenize",
    "parse_polynomial",
    "RingDecl",
    "MapDecl",
    "Command",
    "SessionScript",
    "parse_script",
]

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>(?:\#|--(?!>))[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<arrow>->)
  | (?P<op>[-+*/^()\[\],;:=])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int
    gap: bool = True  # whitespace before this token


def tokenize(text: str) -> list:
    tokens = []
    pos, line, col = 0, 1, 1
    gap = True
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line += 1
            col = 1
            gap = True
        elif kind in ("ws", "comment"):
            col += len(s)
            gap = True
        else:
            tokens.append(Token(kind, s, line, col, gap))
            col += len(s)
            gap = False
        pos = m.end()
    tokens.append(Token("eof", "", line, col, True))
    return tokens


class _Parser:
    def __init__(self, tokens: list):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def peek(self, text: str) -> bool:
        return self.tok.kind not in ("eof",) and self.tok.text == text

    def accept(self, text: str) -> Token | None:
        if self.peek(text):
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, text: str) -> Token:
        t = self.accept(text)
        if t is None:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return t

    def expect_kind(self, kind: str, what: str) -> Token:
        t = self.tok
        if t.kind != kind:
            raise self.error(f"expected {what}, found {t.text or 'end of input'!r}")
        self.i += 1
        return t

    # -- polynomial expressions ------------------------------------------------
    def expr(self, ring: PolyRing) -> Poly:
        val = self.term(ring)
        while True:
            if self.accept("+"):
                val = val + self.term(ring)
            elif self.accept("-"):
                val = val - self.term(ring)
            else:
                return val

    def term(self, ring: PolyRing) -> Poly:
        val = self.unary(ring)
        while True:
            if self.accept("*"):
                val = val * self.unary(ring)
            elif self.peek("/"):
                tok = self.expect("/")
                den = self.unary(ring)
                if not den.is_constant() or not den:
                    raise self.error("division only by nonzero constants", tok)
                val = val * ring.field.inv(den.terms[0])
            else:
                return val

    def unary(self, ring: PolyRing) -> Poly:
        if self.accept("-"):
            return -self.unary(ring)
        if self.accept("+"):
            return self.unary(ring)
        return self.power(ring)

    def power(self, ring: PolyRing) -> Poly:
        base = self.atom(ring)
        if self.accept("^"):
            e = self.expect_kind("int", "an integer exponent")
            return base ** int(e.text)
        return base

    def atom(self, ring: PolyRing) -> Poly:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return ring(Fraction(int(t.text)))
        if t.kind == "name":
            self.i += 1
            try:
                return ring.gen(t.text)
            except KeyError:
                raise ParseError(f"unknown variable {t.text!r} in ring {ring}", t.line, t.col) from None
        if self.accept("("):
            v = self.expr(ring)
            self.expect(")")
            return v
        raise self.error(f"expected a polynomial, found {t.text or 'end of input'!r}")

    def poly_list(self, ring: PolyRing, close: str) -> list:
        out = []
        if self.peek(close):
            return out
        while True:
            out.append((self.tok, self.expr(ring)))
            if not self.accept(","):
                return out


def parse_polynomial(text: str, ring: PolyRing) -> Poly:
    p = _Parser(tokenize(text))
    val = p.expr(ring)
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    return val


@dataclass
class RingDecl:
    name: str
    ring: PolyRing
    ideal: list
    line: int = 0
    col: int = 0


@dataclass
class MapDecl:
    name: str
    source: str
    target: str
    forms: list
    form_positions: list
    line: int = 0
    col: int = 0


@dataclass
class Command:
    name: str
    args: list
    line: int = 0
    col: int = 0


@dataclass
class SessionScript:
    """Ordered declarations of a parsed script."""

    field: Field | None = None
    rings: dict = dataclasses.field(default_factory=dict)
    maps: dict = dataclasses.field(default_factory=dict)
    commands: list = dataclasses.field(default_factory=list)
    order: list = dataclasses.field(default_factory=list)


def _parse_field(p: _Parser) -> Field:
    t = p.tok
    if p.accept("QQ"):
        return QQ
    if p.accept("GF"):
        p.expect("(")
        n = p.expect_kind("int", "a prime")
        p.expect(")")
    elif p.accept("ZZ"):
        p.expect("/")
        n = p.expect_kind("int", "a prime")
    else:
        raise p.error(f"expected a field (QQ or GF(p)), found {t.text!r}")
    try:
        return GF(int(n.text))
    except ValueError as exc:
        raise ParseError(str(exc), n.line, n.col) from None


def parse_script(text: str) -> SessionScript:
    """Parse a script; every identifier must be declared before use."""
    p = _Parser(tokenize(text))
    script = SessionScript()
    while p.tok.kind != "eof":
        start = p.tok
        if start.kind != "name":
            raise p.error(f"expected a statement, found {start.text!r}")
        if start.text == "ring" and p.toks[p.i + 1].kind == "name":
            p.i += 1
            name = p.expect_kind("name", "a ring name").text
            if name in script.rings:
                raise ParseError(f"ring {name!r} declared twice", start.line, start.col)
            p.expect("=")
            fld = _parse_field(p)
            if script.field is not None and fld != script.field:
                raise ParseError("all rings of a script must share one field", start.line, start.col)
            script.field = fld
            p.expect("[")
            names = []
            while True:
                v = p.expect_kind("name", "a variable name")
                if v.text in names:
                    raise ParseError(f"variable {v.text!r} repeated", v.line, v.col)
                names.append(v.text)
                if not p.accept(","):
                    break
            p.expect("]")
            ring = PolyRing(fld, names)
            ideal = []
            if p.accept("/"):
                p.expect("(")
                ideal = [f for _, f in p.poly_list(ring, ")")]
                p.expect(")")
            p.expect(";")
            script.rings[name] = RingDecl(name, ring, ideal, start.line, start.col)
            script.order.append(("ring", name))
        elif start.text == "map" and p.toks[p.i + 1].kind == "name":
            p.i += 1
            name = p.expect_kind("name", "a map name").text
            if name in script.maps:
                raise ParseError(f"map {name!r} declared twice", start.line, start.col)
            p.expect(":")
            src = p.expect_kind("name", "a source ring")
            p.expect("->")
            tgt = p.expect_kind("name", "a target ring")
            for t in (src, tgt):
                if t.text not in script.rings:
                    raise ParseError(f"undeclared ring {t.text!r}", t.line, t.col)
            p.expect("=")
            p.expect("[")
            items = p.poly_list(script.rings[src.text].ring, "]")
            p.expect("]")
            p.expect(";")
            script.maps[name] = MapDecl(
                name,
                src.text,
                tgt.text,
                [f for _, f in items],
                [(t.line, t.col) for t, _ in items],
                start.line,
                start.col,
            )
            script.order.append(("map", name))
        else:
            parts = [p.expect_kind("name", "a command").text]
            while p.peek("-") and not p.tok.gap and p.toks[p.i + 1].kind == "name":
                p.i += 1
                parts.append(p.expect_kind("name", "a command").text)
            cmd = "-".join(parts)
            args = []
            while not p.peek(";"):
                t = p.tok
                if t.kind == "name":
                    if t.text not in script.maps and t.text not in script.rings:
                        raise ParseError(f"undeclared identifier {t.text!r}", t.line, t.col)
                    args.append(t.text)
                elif t.kind == "int":
                    args.append(int(t.text))
                else:
                    raise p.error(f"unexpected {t.text or 'end of input'!r} in command")
                p.i += 1
            p.expect(";")
            script.commands.append(Command(cmd, args, start.line, start.col))
            script.order.append(("command", len(script.commands) - 1))
    return script
