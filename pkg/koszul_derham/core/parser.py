# koszul_derham/core/parser.py
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from koszul_derham.core.polynomial import Polynomial
from koszul_derham.core.ring import RingContext
from koszul_derham.errors import InputError, PolynomialSyntaxError, UnknownIdentifierError

logger = logging.getLogger(__name__)

DEFAULT_MAX_EXPONENT = 512
MAX_NESTING = 100

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op" or "end"
    text: str
    position: int  # 1-based


@dataclass(frozen=True)
class ExpressionSource:
    """Polynomial text plus the ordered variables it may mention."""
    text: str
    var_names: Tuple[str, ...] = ()


def tokenize(text: str) -> Iterator[Token]:
    offset = 0
    while offset < len(text):
        match = _TOKEN.match(text, offset)
        if match is None or match.end() == offset:
            # only trailing whitespace is left
            break
        number, ident, op = match.groups()
        start = match.start(match.lastindex) + 1
        if number is not None:
            yield Token("int", number, start)
        elif ident is not None:
            yield Token("ident", ident, start)
        elif op is not None:
            if op not in "+-*/^()":
                raise PolynomialSyntaxError(f"unexpected character {op!r}", start)
            yield Token("op", op, start)
        offset = match.end()
    yield Token("end", "", len(text) + 1)


class _Parser:
    """
    Recursive descent over

        expr  := term (('+'|'-') term)*
        term  := unary ('*' unary)*
        unary := ('-'|'+')* power
        power := atom ['^' INT]
        atom  := INT ['/' INT ['^' INT]] | IDENT | '(' expr ')'
    """

    def __init__(self, text: str, ring: RingContext, max_exponent: int):
        self.ring = ring
        self.max_exponent = max_exponent
        self.tokens: List[Token] = list(tokenize(text))
        self.index = 0
        self.depth = 0

    @property
    def token(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.token
        if token.kind != "end":
            self.index += 1
        return token

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        return self.token.kind == kind and (text is None or self.token.text == text)

    def fail(self, message: str, token: Optional[Token] = None):
        token = token or self.token
        found = "end of input" if token.kind == "end" else repr(token.text)
        raise PolynomialSyntaxError(f"{message}, found {found}", token.position)

    def parse(self) -> Polynomial:
        if self.at("end"):
            self.fail("empty expression")
        result = self.expr()
        if not self.at("end"):
            self.fail("expected an operator")
        return result

    def expr(self) -> Polynomial:
        left = self.term()
        while self.at("op", "+") or self.at("op", "-"):
            op = self.advance()
            right = self.term()
            left = left + right if op.text == "+" else left - right
        return left

    def term(self) -> Polynomial:
        left = self.unary()
        while self.at("op", "*"):
            self.advance()
            left = left * self.unary()
        return left

    def unary(self) -> Polynomial:
        negate = False
        while self.at("op", "-") or self.at("op", "+"):
            if self.advance().text == "-":
                negate = not negate
        value = self.power()
        return -value if negate else value

    def exponent(self) -> int:
        """Reads '^ INT' and returns the exponent."""
        self.advance()
        if not self.at("int"):
            self.fail("exponent must be a non-negative integer literal")
        token = self.advance()
        exponent = int(token.text)
        if exponent > self.max_exponent:
            raise PolynomialSyntaxError(
                f"exponent {exponent} exceeds the limit {self.max_exponent}", token.position
            )
        return exponent

    def power(self) -> Polynomial:
        base = self.atom()
        if not self.at("op", "^"):
            return base
        return base ** self.exponent()

    def atom(self) -> Polynomial:
        token = self.token
        if token.kind == "int":
            self.advance()
            value = Fraction(int(token.text))
            if self.at("op", "/"):
                self.advance()
                if not self.at("int"):
                    self.fail("expected an integer denominator")
                denominator = self.advance()
                if int(denominator.text) == 0:
                    raise PolynomialSyntaxError("zero denominator", denominator.position)
                # '^' binds tighter than '/': 2/3^2 is 2/9
                divisor = int(denominator.text)
                if self.at("op", "^"):
                    divisor = divisor ** self.exponent()
                value = value / divisor
            return Polynomial.constant(self.ring, value)
        if token.kind == "ident":
            self.advance()
            if not self.ring.has_variable(token.text):
                raise UnknownIdentifierError(
                    f"unknown identifier {token.text!r} (variables: {','.join(self.ring.var_names)})",
                    token.position,
                )
            return Polynomial.variable(self.ring, self.ring.index_of(token.text))
        if self.at("op", "("):
            self.depth += 1
            if self.depth > MAX_NESTING:
                raise PolynomialSyntaxError(f"parentheses nested deeper than {MAX_NESTING}", token.position)
            self.advance()
            inner = self.expr()
            if not self.at("op", ")"):
                self.fail("expected ')'")
            self.advance()
            self.depth -= 1
            return inner
        self.fail("expected a number, a variable or '('")


def parse_polynomial(
    src: Union[str, ExpressionSource],
    ring: RingContext,
    max_exponent: int = DEFAULT_MAX_EXPONENT,
) -> Polynomial:
    """Parse polynomial text over `ring`; errors carry a 1-based position."""
    text = src.text if isinstance(src, ExpressionSource) else src
    if isinstance(src, ExpressionSource) and src.var_names and tuple(src.var_names) != ring.var_names:
        raise InputError(
            f"expression bound to {list(src.var_names)} but ring has {list(ring.var_names)}",
            reason="bad_variables",
        )
    poly = _Parser(text, ring, max_exponent).parse()
    logger.debug(f"Parsed {text!r} into {len(poly)} terms")
    return poly


def infer_variables(text: str) -> List[str]:
    """Identifiers of `text` in order of first appearance."""
    seen: List[str] = []
    for token in tokenize(text):
        if token.kind == "ident" and token.text not in seen:
            seen.append(token.text)
    return seen


def _format_monomial(names: Sequence[str], exponents: Sequence[int]) -> str:
    factors = []
    for name, e in zip(names, exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def format_polynomial(p: Polynomial) -> str:
    """Canonical text; parse_polynomial(format_polynomial(p)) == p."""
    if p.is_zero():
        return "0"
    pieces: List[str] = []
    for monomial, coefficient in p.sorted_terms():
        magnitude = abs(coefficient)
        body = _format_monomial(p.ring.var_names, monomial)
        if not body:
            text = str(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{magnitude}*{body}"
        if not pieces:
            pieces.append(f"-{text}" if coefficient < 0 else text)
        else:
            pieces.append(f"{'-' if coefficient < 0 else '+'} {text}")
    return " ".join(pieces)
