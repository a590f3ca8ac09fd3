"""Surface syntax for algebra elements.

Grammar (whitespace insignificant, one expression per string):

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := rational ['*'] factor*  |  factor+
    factor   := 'v' | 'e' digits ["'"]   -- the apostrophe marks the dual
    rational := digits ['/' digits]      -- denominator must be positive

Factors multiply by juxtaposition or an explicit '*'.  A bare rational
denotes that multiple of the unit v; in particular "0" is the zero
element.  `parse` produces a small AST, `lower` reduces it to a normal
form Element.  `format_element` is the canonical printer; it round-trips
through `parse` exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraConfig, BasisMonomial, Element, VERTEX, reduce_word


class ExprError(ValueError):
    """Syntax or range error in a surface expression, with position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Term:
    coefficient: Fraction
    letters: tuple[int, ...]


@dataclass(frozen=True)
class Expression:
    terms: tuple[Term, ...]


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>v|e\d+'?)|(?P<op>[+\-*/])|(?P<bad>\S))")


def _tokenize(source: str):
    tokens = []
    line = 1
    line_start = 0
    pos = 0
    while pos < len(source):
        nl = source.find("\n", pos)
        m = _TOKEN.match(source, pos)
        if m is None or m.lastgroup is None:
            break
        while nl != -1 and nl < m.start(m.lastgroup):
            line += 1
            line_start = nl + 1
            nl = source.find("\n", nl + 1)
        col = m.start(m.lastgroup) - line_start + 1
        if m.lastgroup == "bad":
            raise ExprError(f"unexpected character {m.group('bad')!r}", line, col)
        tokens.append((m.lastgroup, m.group(m.lastgroup), line, col))
        pos = m.end()
    tokens.append(("end", "", line, len(source) - line_start + 1))
    return tokens


def _letter_for(name: str, cfg: AlgebraConfig, line: int, col: int) -> int:
    if name == "v":
        return VERTEX
    dual = name.endswith("'")
    index = int(name[1:-1] if dual else name[1:])
    if not 1 <= index <= cfg.loops:
        raise ExprError(
            f"edge index {index} out of range 1..{cfg.loops}", line, col)
    return -index if dual else index


def parse(source: str, cfg: AlgebraConfig) -> Expression:
    """Parse a surface expression, validating edge indices against cfg."""
    tokens = _tokenize(source)
    pos = 0

    def peek():
        return tokens[pos]

    def advance():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def fail(message):
        kind, value, line, col = peek()
        raise ExprError(message, line, col)

    def parse_rational() -> Fraction:
        _, value, _, _ = advance()
        num = int(value)
        if peek()[0] == "op" and peek()[1] == "/":
            advance()
            if peek()[0] != "num":
                fail("expected a positive integer denominator")
            _, den, line, col = advance()
            if int(den) == 0:
                raise ExprError("zero denominator", line, col)
            return Fraction(num, int(den))
        return Fraction(num)

    def parse_term(sign: int) -> Term:
        coeff = Fraction(sign)
        have_coeff = False
        if peek()[0] == "num":
            coeff *= parse_rational()
            have_coeff = True
            if peek()[0] == "op" and peek()[1] == "*":
                advance()
                if peek()[0] != "name":
                    fail("expected a factor after '*'")
        letters = []
        while peek()[0] == "name":
            kind, value, line, col = advance()
            letters.append(_letter_for(value, cfg, line, col))
            if peek()[0] == "op" and peek()[1] == "*":
                if tokens[pos + 1][0] != "name":
                    break
                advance()
        if not letters and not have_coeff:
            fail("expected a term")
        return Term(coeff, tuple(letters))

    terms = []
    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if advance()[1] == "-" else 1
    terms.append(parse_term(sign))
    while peek()[0] != "end":
        kind, value, line, col = peek()
        if kind == "op" and value in "+-":
            advance()
            terms.append(parse_term(-1 if value == "-" else 1))
        else:
            fail(f"expected '+' or '-', got {value!r}")
    return Expression(tuple(terms))


def lower(cfg: AlgebraConfig, expression: Expression) -> Element:
    """Reduce the spelled word of each term and sum."""
    total = Element.zero(cfg)
    for term in expression.terms:
        if term.coefficient:
            total = total + term.coefficient * reduce_word(cfg, term.letters)
    return total


def parse_element(source: str, cfg: AlgebraConfig) -> Element:
    return lower(cfg, parse(source, cfg))


def format_monomial(mono: BasisMonomial) -> str:
    return str(mono)


def format_element(element: Element) -> str:
    """Canonical text form: monomials in basis order, exact coefficients."""
    if element.is_zero():
        return "0"
    parts = []
    for mono in element.support():
        coeff = element.coefficient(mono)
        magnitude = abs(coeff)
        body = str(mono) if magnitude == 1 else f"{magnitude}*{mono}"
        if not parts:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f" {'-' if coeff < 0 else '+'} {body}")
    return "".join(parts)


def element_to_triples(element: Element) -> list[list]:
    """JSON form: [monomial word, numerator, denominator] per term."""
    out = []
    for mono in element.support():
        coeff = element.coefficient(mono)
        out.append([str(mono), coeff.numerator, coeff.denominator])
    return out
