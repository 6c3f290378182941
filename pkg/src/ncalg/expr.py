"""Parser for the canonical textual expression grammar.

    element ::= term (('+'|'-') term)*
    term    ::= scalar ('*' factor)* | factor ('*' factor)*
    factor  ::= 'g'INT | '1' | 'adj(' element ')' | '(' element ')'
    scalar  ::= '(' re ('+'|'-') im 'i' ')'

The printer in :mod:`ncalg.algebra` emits this grammar, so printing and
parsing round-trip exactly.  ``adj`` applies the involution under the
conjugation handed to :func:`parse_expression`.
"""

from __future__ import annotations

import re

from . import algebra
from .algebra import C0
from .errors import ExpressionSyntaxError

_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"

_TOKEN_RE = re.compile(
    r"""
    (?P<SCALAR>\(\s*{num}\s*[-+]\s*(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?\s*i\s*\))
    | (?P<ADJ>adj\b)
    | (?P<GEN>g\d+)
    | (?P<ONE>1)
    | (?P<LPAREN>\()
    | (?P<RPAREN>\))
    | (?P<PLUS>\+)
    | (?P<MINUS>-)
    | (?P<STAR>\*)
    | (?P<WS>\s+)
    | (?P<BAD>.)
    """.format(num=_NUM),
    re.VERBOSE,
)

_SCALAR_RE = re.compile(
    r"\(\s*(?P<re>{num})\s*(?P<sign>[-+])\s*(?P<im>(?:\d+\.?\d*|\.\d+)"
    r"(?:[eE][-+]?\d+)?)\s*i\s*\)".format(num=_NUM)
)


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column


def _tokenize(text):
    tokens = []
    line, col = 1, 0
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        chunk = m.group()
        if kind == "BAD":
            raise ExpressionSyntaxError(
                f"unexpected character {chunk!r}", line, col
            )
        if kind != "WS":
            tokens.append(_Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n") - 1
        else:
            col += len(chunk)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens, conjugation):
        self.tokens = tokens
        self.pos = 0
        self.conjugation = conjugation

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, what):
        tok = self.next()
        if tok.kind != kind:
            raise ExpressionSyntaxError(
                f"expected {what}, found {tok.text or 'end of input'!r}",
                tok.line,
                tok.column,
            )
        return tok

    def parse_element(self):
        out = self.parse_term()
        while self.peek().kind in ("PLUS", "MINUS"):
            op = self.next()
            term = self.parse_term()
            out = out + term if op.kind == "PLUS" else out - term
        return out

    def parse_term(self):
        tok = self.peek()
        if tok.kind == "SCALAR":
            self.next()
            out = algebra.unit() * _parse_scalar(tok)
        else:
            out = self.parse_factor()
        while self.peek().kind == "STAR":
            self.next()
            out = out * self.parse_factor()
        return out

    def parse_factor(self):
        tok = self.next()
        if tok.kind == "GEN":
            index = int(tok.text[1:])
            if index < 1:
                raise ExpressionSyntaxError(
                    f"unknown generator token {tok.text!r}", tok.line, tok.column
                )
            return algebra.generator(index)
        if tok.kind == "ONE":
            return algebra.unit()
        if tok.kind == "ADJ":
            self.expect("LPAREN", "'(' after adj")
            inner = self.parse_element()
            self.expect("RPAREN", "')'")
            return inner.adjoint(self.conjugation)
        if tok.kind == "LPAREN":
            inner = self.parse_element()
            self.expect("RPAREN", "')'")
            return inner
        raise ExpressionSyntaxError(
            f"expected a factor, found {tok.text or 'end of input'!r}",
            tok.line,
            tok.column,
        )


def _parse_scalar(tok):
    m = _SCALAR_RE.fullmatch(tok.text)
    re_part = float(m.group("re"))
    im_part = float(m.group("im"))
    if m.group("sign") == "-":
        im_part = -im_part
    return complex(re_part, im_part)


def parse_expression(text, conjugation=C0):
    """Parse the textual grammar into a canonical element.

    Raises :class:`ExpressionSyntaxError` with line/column information on
    malformed input.
    """
    parser = _Parser(_tokenize(text), conjugation)
    out = parser.parse_element()
    tail = parser.peek()
    if tail.kind != "EOF":
        raise ExpressionSyntaxError(
            f"unexpected trailing input {tail.text!r}", tail.line, tail.column
        )
    return out
