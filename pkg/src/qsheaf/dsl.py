"""Text syntax for sheaf expressions.

    file   := 'Q' INT ':' expr
    expr   := term ('+' term)*
    term   := atom | 'quot(' expr ',' expr ')' | 'res(' expr ')' | '(' expr ')' twist?
    atom   := ('O' | 'S' | 'S1' | 'S2' | 'Pt[' INT ']' | '0') twist?
    twist  := '(' INT ')'            -- on Q2, 'O(a,b)' is a bidegree line bundle

The header fixes the quadric on which atoms live; each ``res(...)`` lowers
the dimension of its result by one.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import (
    Atom,
    Generator,
    Kind,
    ODD_LABEL,
    QsheafError,
    Quotient,
    Restrict,
    SheafExpr,
    StructuralError,
    Sum,
    Twist,
    check,
    generator_text,
    normalize,
)


class ParseError(QsheafError, ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line, self.col = line, col


@dataclass
class Token:
    kind: str  # 'name' | 'int' | 'punct' | 'end'
    text: str
    pos: int


_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<int>-?\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<punct>[()\[\],+:])")


def _tokenize(text: str) -> list[Token]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            line, col = _linecol(text, pos)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        if m.lastgroup:
            out.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


def _linecol(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.k]

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        line, col = _linecol(self.text, (tok or self.tok).pos)
        return ParseError(message, line, col)

    def take(self, text: str) -> Token:
        if self.tok.text != text:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        self.k += 1
        return self.toks[self.k - 1]

    def take_int(self) -> int:
        if self.tok.kind != "int":
            raise self.error(f"expected an integer, found {self.tok.text or 'end of input'!r}")
        self.k += 1
        return int(self.toks[self.k - 1].text)

    def parse_file(self) -> SheafExpr:
        head = self.tok
        m = re.fullmatch(r"Q(\d+)", head.text) if head.kind == "name" else None
        if m is None:
            raise self.error("expected a header like 'Q4:'")
        n = int(m.group(1))
        if n < 2:
            raise self.error("quadric dimension must be at least 2", head)
        self.k += 1
        self.take(":")
        expr = self.expr(n)
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return expr

    def expr(self, n: int) -> SheafExpr:
        start = self.tok
        terms = [self.term(n)]
        while self.tok.text == "+":
            self.k += 1
            terms.append(self.term(n))
        if len(terms) == 1:
            return terms[0]
        dims = {t.n for t in terms}
        if len(dims) > 1:
            raise self.error(f"sum mixes quadrics {sorted(dims)}", start)
        return Sum(terms[0].n, tuple(terms))

    def term(self, n: int) -> SheafExpr:
        tok = self.tok
        if tok.text == "quot":
            self.k += 1
            self.take("(")
            sub = self.expr(n)
            self.take(",")
            mid = self.expr(n)
            self.take(")")
            if sub.n != mid.n:
                raise self.error("quotient mixes quadrics", tok)
            return Quotient(sub.n, sub, mid)
        if tok.text == "res":
            self.k += 1
            self.take("(")
            child = self.expr(n)
            self.take(")")
            if child.n <= 2:
                raise self.error("cannot restrict from Q2", tok)
            return Restrict(child.n - 1, child)
        if tok.text == "(":
            self.k += 1
            inner = self.expr(n)
            self.take(")")
            k = self.twist()
            return inner if k == 0 else Twist(inner.n, inner, k)
        return self.atom(n)

    def twist(self) -> int:
        if self.tok.text != "(" or self.toks[self.k + 1].kind != "int":
            return 0
        self.k += 1
        k = self.take_int()
        self.take(")")
        return k

    def atom(self, n: int) -> SheafExpr:
        tok = self.tok
        if tok.kind == "int" and tok.text == "0":
            self.k += 1
            return Atom(n, ())
        if tok.kind != "name":
            raise self.error(f"expected a sheaf, found {tok.text or 'end of input'!r}")
        self.k += 1
        if tok.text == "Pt":
            self.take("[")
            length = self.take_int()
            self.take("]")
            self.twist()  # twisting a skyscraper changes nothing
            if length < 1:
                raise self.error("skyscraper length must be positive", tok)
            return Atom(n, (Generator(Kind.SKYSCRAPER, length=length),))
        if tok.text == "O" and n == 2 and self.tok.text == "(" and self.toks[self.k + 2].text == ",":
            self.take("(")
            a = self.take_int()
            self.take(",")
            b = self.take_int()
            self.take(")")
            return Atom(n, (Generator(Kind.BIDEGREE, a, twist2=b),))
        if tok.text == "O":
            return Atom(n, (Generator(Kind.LINE, self.twist()),))
        labels = {"S": ODD_LABEL, "S1": 1, "S2": 2}
        if tok.text in labels:
            label = labels[tok.text]
            if (label == ODD_LABEL) != (n % 2 == 1):
                want = "S" if n % 2 else "S1 or S2"
                raise self.error(f"spinor {tok.text} does not exist on Q{n}; use {want}", tok)
            return Atom(n, (Generator(Kind.SPINOR, self.twist(), label),))
        raise self.error(f"unknown sheaf {tok.text!r}", tok)


def parse(text: str, normalized: bool = True) -> SheafExpr:
    """Parse ``'Qn: expr'`` into a (by default normalized) expression."""
    expr = _Parser(text).parse_file()
    try:
        check(expr)
    except StructuralError as exc:
        raise ParseError(str(exc), 1, 1) from exc
    return normalize(expr) if normalized else expr


def _atom_dim(expr: SheafExpr) -> set[int]:
    # atoms carry the dimension of the quadric they live on
    if isinstance(expr, Atom):
        return {expr.n}
    if isinstance(expr, (Restrict, Twist)):
        return _atom_dim(expr.child)
    kids = expr.children if isinstance(expr, Sum) else (expr.sub, expr.mid)
    return set().union(*(_atom_dim(c) for c in kids))


def to_text(expr: SheafExpr) -> str:
    """Render an expression with its header; inverse of :func:`parse`."""
    dims = _atom_dim(expr)
    if len(dims) != 1:
        raise StructuralError("expression has atoms on different quadrics; no single header")
    return f"Q{dims.pop()}: {_text(expr)}"


def _text(expr: SheafExpr) -> str:
    if isinstance(expr, Atom):
        return " + ".join(generator_text(g) for g in expr.gens) or "0"
    if isinstance(expr, Sum):
        return " + ".join(_text(c) for c in expr.children)
    if isinstance(expr, Twist):
        return f"({_text(expr.child)})({expr.k})"
    if isinstance(expr, Quotient):
        return f"quot({_text(expr.sub)}, {_text(expr.mid)})"
    return f"res({_text(expr.child)})"
