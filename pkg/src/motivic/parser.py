"""Surface syntax for variety and class expressions.

Grammar (lowest precedence first, all binary operators left-associative)::

    expr    := sum ( '\\' sum )*
    sum     := product ( ('+' | '-') product )*
    product := unary ( '*' unary )*
    unary   := '-' unary | atom
    atom    := 'empty' | 'pt' | 'A(' n ')' | 'P(' n ')' | 'T(' n ')' | 'Gr(' k ',' n ')'
             | 'vb(' expr ',' r ')' | 'pb(' expr ',' r ')' | 'bl(' expr ';' expr ';' d ')'
             | 'sym(' name ',' dim [',' flags] ')' | '(' expr ')'
             | INT | 'L' [ '^' ['-'] INT ] | name

``flags`` is a word over the letters ``s`` (smooth), ``c`` (complete) and
``i`` (irreducible/connected), or ``-`` for none; it defaults to ``sci``.

Integer literals, ``L``, ``-`` and unary minus are class-level notation and
are only accepted by :func:`parse_class_expr` / :func:`parse_class`.  Products,
sums and differences of scalars are folded while parsing, so the canonical
rendering of a Laurent polynomial such as ``L^-2 + 3 + 2*L`` parses back to a
single :class:`~motivic.varieties.Scalar`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .core import MotivicClass, Registry
from .errors import DomainError, ParseError
from .laurent import LaurentPoly
from .varieties import (
    Affine, BlowUp, Complement, Difference, DisjointUnion, Empty, Grassmannian, Point,
    Product, Projective, ProjBundle, Scalar, Symbolic, Torus, VarietyExpr, VecBundle, class_of,
)

__all__ = [
    "parse_expr", "parse_class_expr", "parse_class", "parse_expr_list", "render_expr",
    "SemanticError", "RESERVED",
]

RESERVED = frozenset({"empty", "pt", "A", "P", "T", "Gr", "vb", "pb", "bl", "sym", "L"})


class SemanticError(DomainError):
    """A syntactically valid expression violating an arity or bound constraint."""

    def __init__(self, message, line, column):
        self.line, self.column = line, column
        super().__init__(f"{line}:{column}: {message}")


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[()\[\],;+\-*\\^])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str  # int | name | op | eof
    text: str
    line: int
    col: int


def _tokenize(src: str, line: int = 1, col: int = 1) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, col, src)
        text = m.group()
        if m.lastgroup != "ws":
            toks.append(_Tok(m.lastgroup, text, line, col))
        for ch in text:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


def _fold(kind, a, b):
    if isinstance(a, Scalar) and isinstance(b, Scalar):
        if kind is Product:
            return Scalar(a.value * b.value)
        if kind is DisjointUnion:
            return Scalar(a.value + b.value)
        if kind is Difference:
            return Scalar(a.value - b.value)
    return kind(a, b)


class _Parser:
    def __init__(self, src, class_mode, symbols, line, col):
        self.src = src
        self.toks = _tokenize(src, line, col)
        self.i = 0
        self.class_mode = class_mode
        self.symbols = symbols or {}

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col, self.src)

    def advance(self) -> _Tok:
        t = self.tok
        self.i += 1
        return t

    def at(self, text) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def expect(self, text) -> _Tok:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def expect_int(self, what) -> int:
        if self.tok.kind != "int":
            raise self.error(f"expected an integer for {what}")
        return int(self.advance().text)

    def build(self, tok, ctor, *args):
        try:
            return ctor(*args)
        except DomainError as exc:
            if isinstance(exc, SemanticError):
                raise
            raise SemanticError(str(exc), tok.line, tok.col) from None

    # -- grammar -----------------------------------------------------------

    def parse_all(self) -> VarietyExpr:
        e = self.expr()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r} after expression")
        return e

    def expr(self):
        left = self.sum()
        while self.at("\\"):
            tok = self.advance()
            left = self.build(tok, Complement, left, self.sum())
        return left

    def sum(self):
        left = self.product()
        while self.at("+") or (self.at("-") and self.class_mode):
            tok = self.advance()
            kind = DisjointUnion if tok.text == "+" else Difference
            left = self.build(tok, _fold, kind, left, self.product())
        return left

    def product(self):
        left = self.unary()
        while self.at("*"):
            tok = self.advance()
            left = self.build(tok, _fold, Product, left, self.unary())
        return left

    def unary(self):
        if self.at("-") and self.class_mode:
            tok = self.advance()
            inner = self.unary()
            return self.build(tok, _fold, Product, Scalar(LaurentPoly.const(-1)), inner)
        return self.atom()

    def atom(self):
        tok = self.tok
        if self.at("("):
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind == "int":
            if not self.class_mode:
                raise self.error("integer literals are only allowed in class expressions")
            self.advance()
            return Scalar(LaurentPoly.const(int(tok.text)))
        if tok.kind != "name":
            raise self.error(f"expected an expression, found {tok.text or 'end of input'!r}")
        self.advance()
        name = tok.text
        if name == "empty":
            return Empty()
        if name == "pt":
            return Point()
        if name == "L":
            if not self.class_mode:
                raise self.error("L is only allowed in class expressions", tok)
            exp = 1
            if self.at("^"):
                self.advance()
                sign = 1
                if self.at("-"):
                    self.advance()
                    sign = -1
                exp = sign * self.expect_int("the exponent of L")
            return Scalar(LaurentPoly.monomial(exp))
        if name in ("A", "P", "T"):
            self.expect("(")
            n = self.expect_int(f"{name}(n)")
            self.expect(")")
            return self.build(tok, {"A": Affine, "P": Projective, "T": Torus}[name], n)
        if name == "Gr":
            self.expect("(")
            k = self.expect_int("Gr(k, n): k")
            self.expect(",")
            n = self.expect_int("Gr(k, n): n")
            self.expect(")")
            return self.build(tok, Grassmannian, k, n)
        if name in ("vb", "pb"):
            self.expect("(")
            base = self.expr()
            self.expect(",")
            r = self.expect_int(f"{name}(X, r): r")
            self.expect(")")
            return self.build(tok, VecBundle if name == "vb" else ProjBundle, base, r)
        if name == "bl":
            self.expect("(")
            x = self.expr()
            self.expect(";")
            y = self.expr()
            self.expect(";")
            d = self.expect_int("bl(X; Y; d): d")
            self.expect(")")
            return self.build(tok, BlowUp, x, y, d)
        if name == "sym":
            return self.symbol(tok)
        if name in self.symbols:
            return self.symbols[name]
        raise self.error(f"unknown name {name!r}", tok)

    def symbol(self, tok):
        self.expect("(")
        if self.tok.kind != "name":
            raise self.error("expected a symbol name")
        name_tok = self.advance()
        if name_tok.text in RESERVED:
            raise self.error(f"{name_tok.text!r} is reserved and cannot name a symbol", name_tok)
        self.expect(",")
        dim = self.expect_int("sym(name, dim): dim")
        flags = "sci"
        if self.at(","):
            self.advance()
            if self.at("-"):
                self.advance()
                flags = ""
            elif self.tok.kind == "name" and set(self.tok.text) <= set("sci"):
                flags = self.advance().text
            else:
                raise self.error("flags must be a word over 's', 'c', 'i' or '-'")
        self.expect(")")
        return self.build(tok, Symbolic, name_tok.text, dim, "s" in flags, "c" in flags, "i" in flags)


def parse_expr(src: str, symbols: Mapping[str, Symbolic] | None = None, *,
               line: int = 1, column: int = 1) -> VarietyExpr:
    """Parse a variety expression (no scalars or differences)."""
    return _Parser(src, False, symbols, line, column).parse_all()


def parse_class_expr(src: str, symbols: Mapping[str, Symbolic] | None = None, *,
                     line: int = 1, column: int = 1) -> VarietyExpr:
    """Parse a class expression: the variety grammar plus ``L``, integers and ``-``."""
    return _Parser(src, True, symbols, line, column).parse_all()


def parse_class(src: str, registry: Registry | None = None,
                symbols: Mapping[str, Symbolic] | None = None, *,
                line: int = 1, column: int = 1) -> MotivicClass:
    return class_of(parse_class_expr(src, symbols, line=line, column=column), registry)


def parse_expr_list(src: str, *, class_mode: bool = False, line: int = 1,
                    column: int = 1) -> list[VarietyExpr]:
    """Parse ``[e1, e2, ...]``."""
    p = _Parser(src, class_mode, None, line, column)
    p.expect("[")
    items = []
    if not p.at("]"):
        items.append(p.expr())
        while p.at(","):
            p.advance()
            items.append(p.expr())
    p.expect("]")
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after list")
    return items


# -- rendering -------------------------------------------------------------

def _prec(e) -> int:
    if isinstance(e, Complement):
        return 1
    if isinstance(e, (DisjointUnion, Difference)):
        return 2
    if isinstance(e, Product):
        return 3
    return 4


def _scalar_token(p: LaurentPoly) -> str | None:
    if p.is_zero():
        return "0"
    if p.is_monomial():
        (e, c), = p.items()
        if e == 0 and c > 0:
            return str(c)
        if c == 1:
            return "L" if e == 1 else f"L^{e}"
    return None


def render_expr(e: VarietyExpr) -> str:
    """Render in the surface syntax; ``parse_class_expr`` inverts this exactly."""
    if isinstance(e, Empty):
        return "empty"
    if isinstance(e, Point):
        return "pt"
    if isinstance(e, Affine):
        return f"A({e.n})"
    if isinstance(e, Projective):
        return f"P({e.n})"
    if isinstance(e, Torus):
        return f"T({e.n})"
    if isinstance(e, Grassmannian):
        return f"Gr({e.k}, {e.n})"
    if isinstance(e, VecBundle):
        return f"vb({render_expr(e.base)}, {e.rank})"
    if isinstance(e, ProjBundle):
        return f"pb({render_expr(e.base)}, {e.rank})"
    if isinstance(e, BlowUp):
        return f"bl({render_expr(e.ambient)}; {render_expr(e.center)}; {e.codim})"
    if isinstance(e, Symbolic):
        flags = ("s" if e.smooth else "") + ("c" if e.complete else "") + ("i" if e.connected else "")
        return f"sym({e.name}, {e.dimension}, {flags or '-'})"
    if isinstance(e, Scalar):
        tok = _scalar_token(e.value)
        return tok if tok is not None else f"({e.value.render()})"
    ops = {Complement: ("\\", "whole", "closed"), DisjointUnion: ("+", "left", "right"),
           Difference: ("-", "left", "right"), Product: ("*", "left", "right")}
    op, lname, rname = ops[type(e)]
    p = _prec(e)
    left, right = getattr(e, lname), getattr(e, rname)
    ltext, rtext = render_expr(left), render_expr(right)
    if _prec(left) < p:
        ltext = f"({ltext})"
    if _prec(right) <= p:
        rtext = f"({rtext})"
    return f"{ltext} {op} {rtext}"
