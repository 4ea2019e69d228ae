"""Tokenizer and operator-precedence parser shared by the formula and
structure readers.

The parser produces a small generic tree (:class:`Op`, :class:`Atom`,
:class:`Shift`, :class:`Braced`); the formula, polarized and structure
readers interpret that tree into their own datatypes.

Precedence, tightest first: prefix shifts and ``~``; the (co)implications
``/ \\ </ \\>``; the products ``* + & |``; the structural ``.``.  Operators of
one level never chain without parentheses, since none of the connectives is
associative.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

TIGHT_OPS = ("/", "\\", "</", "\\>")
PRODUCT_OPS = ("*", "+", "&", "|")
STRUCT_OPS = (".",)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ident>[a-z][a-z0-9_]*)
  | (?P<sym>=>|</|\\>|[()\{\}~^_;.*+&|/\\])
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    """Syntax error with the byte offset of the offending token."""

    def __init__(self, offset: int, expected: set[str] | frozenset[str], found: str):
        self.offset = offset
        self.expected = frozenset(expected)
        self.found = found
        exp = ", ".join(sorted(self.expected))
        super().__init__(f"offset {offset}: expected one of {{{exp}}}, found {found}")


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", a symbol, or "eof"
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(len(text[:pos].encode()), {"token"}, repr(text[pos]))
        if m.lastgroup == "ident":
            tokens.append(Token("ident", m.group(), pos))
        elif m.lastgroup == "sym":
            tokens.append(Token(m.group(), m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text.encode())))
    return tokens


@dataclass(frozen=True)
class Atom:
    name: str
    negative: bool
    offset: int


@dataclass(frozen=True)
class Shift:
    kind: str  # "^" or "_"
    body: "Tree"
    offset: int


@dataclass(frozen=True)
class Op:
    op: str
    left: "Tree"
    right: "Tree"
    offset: int


@dataclass(frozen=True)
class Braced:
    inner: "Tree"
    offset: int


Tree = Union[Atom, Shift, Op, Braced]

_PRIMARY_START = frozenset({"atom", "~", "^", "_", "(", "{"})


class Parser:
    """Recursive-descent reader over a token list."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.index]

    def _offset(self, token: Token) -> int:
        # byte offset, so that non-ASCII input reports consistently
        return len(self.text[: token.offset].encode()) if token.kind != "eof" else token.offset

    def fail(self, expected) -> ParseError:
        tok = self.peek
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(self._offset(tok), expected, found)

    def advance(self) -> Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind: str) -> Token:
        if self.peek.kind != kind:
            raise self.fail({kind})
        return self.advance()

    def at_end(self) -> bool:
        return self.peek.kind == "eof"

    def expect_end(self, also: tuple[str, ...] = ()) -> None:
        if not self.at_end():
            raise self.fail({"end of input", *also})

    def expression(self) -> Tree:
        return self._level(STRUCT_OPS, self._products)

    def _products(self) -> Tree:
        return self._level(PRODUCT_OPS, self._tight)

    def _tight(self) -> Tree:
        return self._level(TIGHT_OPS, self._primary)

    def _level(self, ops, operand) -> Tree:
        left = operand()
        if self.peek.kind in ops:
            tok = self.advance()
            right = operand()
            if self.peek.kind in ops:
                raise ParseError(
                    self._offset(self.peek),
                    {")", "end of input"},
                    f"{self.peek.text!r} (operators of equal precedence need parentheses)",
                )
            return Op(tok.kind, left, right, self._offset(tok))
        return left

    def _primary(self) -> Tree:
        tok = self.peek
        if tok.kind == "ident":
            self.advance()
            return Atom(tok.text, False, self._offset(tok))
        if tok.kind == "~":
            self.advance()
            name = self.peek
            if name.kind != "ident":
                raise self.fail({"atom"})
            self.advance()
            return Atom(name.text, True, self._offset(tok))
        if tok.kind in ("^", "_"):
            self.advance()
            return Shift(tok.kind, self._primary(), self._offset(tok))
        if tok.kind == "(":
            self.advance()
            inner = self.expression()
            self.expect(")")
            return inner
        if tok.kind == "{":
            self.advance()
            inner = self.expression()
            self.expect("}")
            return Braced(inner, self._offset(tok))
        raise self.fail(_PRIMARY_START)
