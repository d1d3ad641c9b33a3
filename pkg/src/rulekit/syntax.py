"""Reader and writer for the parenthesized quoted-token theory format.

Facts look like ``("bob" "is" "big" "+")`` or ``("cat" "likes" "dog" "-")``;
rules wrap a condition list: ``((("x" "is" "a" "+")) -> ("x" "is" "b" "+"))``.
``//`` starts a comment running to end of line. Whitespace between tokens is
insignificant. ``parse_theory`` and ``emit_theory`` are mutual inverses up to
whitespace and symbol case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .model import (
    Atom,
    Literal,
    Rule,
    Term,
    Theory,
    TheoryType,
    normalize_symbol,
    infer_signature,
)


@dataclass(frozen=True, slots=True)
class SourceSpan:
    """Half-open character offsets ``[start, end)`` into the input text."""

    start: int
    end: int


class ParseError(Exception):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{message} at {span.start}..{span.end}")
        self.message = message
        self.span = span


_LPAREN = "("
_RPAREN = ")"
_ARROW = "->"
_STRING = "string"
_EOF = "eof"


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str
    value: str
    span: SourceSpan


def _tokenize(text: str) -> Iterator[_Token]:
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif text.startswith("//", i):
            j = text.find("\n", i)
            i = n if j < 0 else j + 1
        elif c == "(":
            yield _Token(_LPAREN, c, SourceSpan(i, i + 1))
            i += 1
        elif c == ")":
            yield _Token(_RPAREN, c, SourceSpan(i, i + 1))
            i += 1
        elif text.startswith(_ARROW, i):
            yield _Token(_ARROW, _ARROW, SourceSpan(i, i + 2))
            i += 2
        elif c == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise ParseError("unterminated string", SourceSpan(i, n))
            yield _Token(_STRING, text[i + 1 : j], SourceSpan(i, j + 1))
            i = j + 1
        else:
            raise ParseError(f"unexpected character {c!r}", SourceSpan(i, i + 1))
    yield _Token(_EOF, "", SourceSpan(n, n))


class _Parser:
    def __init__(self, text: str):
        self._tokens = list(_tokenize(text))
        self._pos = 0

    def peek(self) -> _Token:
        return self._tokens[self._pos]

    def next(self) -> _Token:
        tok = self._tokens[self._pos]
        if tok.kind != _EOF:
            self._pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.kind!r}", tok.span)
        return tok

    def literal_body(self, open_span: SourceSpan) -> Literal:
        """The four quoted tokens and closing paren of a fact."""
        parts: list[_Token] = []
        while self.peek().kind == _STRING:
            parts.append(self.next())
        close = self.expect(_RPAREN)
        if len(parts) != 4:
            raise ParseError(
                f"facts take exactly 4 tokens, found {len(parts)}",
                SourceSpan(open_span.start, close.span.end),
            )
        arg1, pred, arg2, polarity = (p.value for p in parts)
        if polarity not in ("+", "-"):
            raise ParseError(
                f"polarity must be '+' or '-', found {polarity!r}", parts[3].span
            )
        atom = Atom(normalize_symbol(pred), Term(normalize_symbol(arg1)), normalize_symbol(arg2))
        return Literal(atom, polarity == "+")

    def literal(self) -> Literal:
        open_tok = self.expect(_LPAREN)
        return self.literal_body(open_tok.span)

    def statement(self) -> Literal | Rule:
        open_tok = self.expect(_LPAREN)
        if self.peek().kind == _STRING:
            return self.literal_body(open_tok.span)
        # rule: ( (fact+) -> fact )
        self.expect(_LPAREN)
        conditions = [self.literal()]
        while self.peek().kind == _LPAREN:
            conditions.append(self.literal())
        self.expect(_RPAREN)
        self.expect(_ARROW)
        conclusion = self.literal()
        self.expect(_RPAREN)
        return Rule(tuple(conditions), conclusion)


def parse_literal(text: str) -> Literal:
    """A single fact expression, e.g. for the statement of a question."""
    parser = _Parser(text)
    lit = parser.literal()
    tok = parser.peek()
    if tok.kind != _EOF:
        raise ParseError("trailing input after literal", tok.span)
    return lit


def parse_theory(
    text: str,
    theory_type: TheoryType | None = None,
    negation_enabled: bool = True,
) -> Theory:
    """Parse a whole theory; facts keep input order, as do rules.

    Symbols outside the standard generation pools parse fine (hand-authored
    rulebases use entirely fresh vocabulary); the signature is inferred from
    the symbols in use.
    """
    parser = _Parser(text)
    facts: list[Literal] = []
    rules: list[Rule] = []
    while parser.peek().kind != _EOF:
        start = parser.peek().span.start
        stmt = parser.statement()
        end = parser._tokens[parser._pos - 1].span.end
        if isinstance(stmt, Literal):
            if not stmt.is_ground:
                raise ParseError("facts must be ground", SourceSpan(start, end))
            facts.append(stmt)
        else:
            rules.append(stmt)
    signature = infer_signature(facts, rules)
    if theory_type is None:
        theory_type = TheoryType.REL if signature.relations else TheoryType.ATT
    return Theory(
        tuple(facts),
        tuple(rules),
        signature,
        theory_type,
        negation_enabled,
    )


def _quote(symbol: str) -> str:
    if '"' in symbol:
        raise ValueError(f"symbol {symbol!r} cannot contain a quote")
    return f'"{symbol}"'


def emit_literal(lit: Literal) -> str:
    atom = lit.atom
    polarity = "+" if lit.positive else "-"
    parts = (atom.arg1.text, atom.predicate, atom.arg2, polarity)
    return "(" + " ".join(_quote(p) for p in parts) + ")"


def emit_rule(r: Rule) -> str:
    conds = " ".join(emit_literal(c) for c in r.conditions)
    return f"(({conds}) -> {emit_literal(r.conclusion)})"


def emit_theory(t: Theory) -> str:
    """Canonical text: one statement per line, facts before rules."""
    lines = [emit_literal(f) for f in t.facts]
    lines.extend(emit_rule(r) for r in t.rules)
    return "\n".join(lines) + ("\n" if lines else "")


def emit_atom(atom: Atom) -> str:
    return emit_literal(Literal(atom, True))
