"""Parsing of equations and idempotent-ultrafilter combinations.

Grammar (whitespace between tokens is ignored)::

    equation     = term { ("+" | "-") term } "=" "0" ;
    term         = [ "+" | "-" ] [ integer [ "*" ] ] identifier ;
    combination  = uterm { "(+)" uterm } ;
    uterm        = [ integer [ "*" ] ] "U" ;
    identifier   = letter { letter | digit | "_" } ;

A combination ``a_0U (+) a_1U (+) ... (+) a_kU`` stands for
``a_0 U + a_1 U + ... + a_k U`` under the pseudo-sum, for a single symbolic
idempotent ``U``. Two combinations are equal for every idempotent ``U``
exactly when their coefficient strings are u-equivalent, so equality is
decided on normal forms. The empty normal form denotes the principal
ultrafilter of 0 and prints as ``0U``.
"""
import logging
import re
from dataclasses import dataclass
from typing import Optional

from .exceptions import ParseError, SemanticError
from .ueq_core import concat, reduce, u_equiv
from .witness import EquationCoeffs

logger = logging.getLogger(__name__)

SYMBOL = "U"

TOKEN_PATTERN = re.compile(
    r"(?P<WS>\s+)"
    r"|(?P<PSUM>\(\+\))"
    r"|(?P<INT>\d+)"
    r"|(?P<IDENT>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<OP>[-+*=])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    column: int


@dataclass(frozen=True)
class UltraExpr:
    """Coefficients ``a_0 ... a_k`` of ``a_0U (+) ... (+) a_kU``."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(int(a) for a in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        negative = [a for a in coeffs if a < 0]
        if negative:
            raise SemanticError(f"combination coefficients must be nonnegative, got {negative}")

    def __str__(self) -> str:
        return format_combination(self)


@dataclass(frozen=True)
class ParsedEquation:
    eq: EquationCoeffs
    variable_names: tuple[str, ...]


def _tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = TOKEN_PATTERN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos + 1)
        if m.lastgroup != "WS":
            tokens.append(Token(m.lastgroup or "", m.group(), pos + 1))
        pos = m.end()
    tokens.append(Token("EOF", "", len(text) + 1))
    return tokens


class _Cursor:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "EOF":
            self.index += 1
        return token

    def accept(self, kind: str, text: Optional[str] = None) -> Optional[Token]:
        token = self.current
        if token.kind == kind and (text is None or token.text == text):
            return self.advance()
        return None

    def expect(self, kind: str, text: Optional[str] = None, what: str = "") -> Token:
        token = self.accept(kind, text)
        if token is None:
            found = self.current.text or "end of input"
            raise ParseError(f"expected {what or text or kind}, found {found!r}", self.current.column)
        return token

    def coefficient(self) -> Optional[int]:
        token = self.accept("INT")
        if token is None:
            return None
        self.accept("OP", "*")
        return int(token.text)


def parse_equation(text: str) -> ParsedEquation:
    """Parse ``3x1+x2+x3-x4-4x5=0`` into coefficients in order of first
    appearance of each variable.

    Raises:
        ParseError: If the text does not match the grammar.
        SemanticError: If a variable repeats, a coefficient is 0 or the
            right-hand side is not 0.
    """
    cursor = _Cursor(text)
    names: list[str] = []
    coeffs: list[int] = []

    first = True
    while True:
        sign = 1
        op = cursor.accept("OP", "+") or cursor.accept("OP", "-")
        if op is not None:
            sign = -1 if op.text == "-" else 1
        elif not first:
            break
        magnitude = cursor.coefficient()
        name = cursor.expect("IDENT", what="variable")
        if name.text in names:
            raise SemanticError(f"variable '{name.text}' appears more than once (column {name.column})")
        if magnitude == 0:
            raise SemanticError(f"coefficient of '{name.text}' is 0 (column {name.column})")
        names.append(name.text)
        coeffs.append(sign * (1 if magnitude is None else magnitude))
        first = False

    cursor.expect("OP", "=", what="'='")
    rhs_sign = -1 if cursor.accept("OP", "-") else 1
    rhs = cursor.expect("INT", what="'0'")
    cursor.expect("EOF", what="end of input")
    if int(rhs.text) != 0:
        raise SemanticError(f"right-hand side must be 0, got {rhs_sign * int(rhs.text)}")

    parsed = ParsedEquation(EquationCoeffs(tuple(coeffs)), tuple(names))
    logger.debug(f"parsed {text!r} -> {coeffs} over {names}")
    return parsed


def parse_combination(text: str) -> UltraExpr:
    """Parse ``2U (+) U`` into the coefficient string ``<2, 1>``.

    Raises:
        ParseError: If the text does not match the grammar, including any
            symbol other than ``U``.
        SemanticError: On negative coefficients.
    """
    cursor = _Cursor(text)
    coeffs: list[int] = []
    while True:
        minus = cursor.accept("OP", "-")
        if minus is not None:
            raise SemanticError(f"negative coefficient at column {minus.column}")
        magnitude = cursor.coefficient()
        symbol = cursor.current
        if symbol.kind == "IDENT" and symbol.text != SYMBOL:
            raise ParseError(f"only the symbol '{SYMBOL}' is supported, found {symbol.text!r}", symbol.column)
        cursor.expect("IDENT", SYMBOL, what=f"'{SYMBOL}'")
        coeffs.append(1 if magnitude is None else magnitude)
        if cursor.accept("PSUM") is None:
            break
    cursor.expect("EOF", what="'(+)' or end of input")
    return UltraExpr(tuple(coeffs))


def format_combination(e: UltraExpr) -> str:
    """Print a combination in the surface syntax; empty prints as ``0U``."""
    if not e.coeffs:
        return f"0{SYMBOL}"
    return " (+) ".join(SYMBOL if a == 1 else f"{a}{SYMBOL}" for a in e.coeffs)


def combinations_equal(e1: UltraExpr, e2: UltraExpr) -> bool:
    """Whether the two combinations coincide for every idempotent ``U``."""
    return u_equiv(e1.coeffs, e2.coeffs)


def canonical_combination(e: UltraExpr) -> UltraExpr:
    """The representative with no zero and no repeated adjacent coefficient."""
    return UltraExpr(reduce(e.coeffs))


def pseudo_sum(e1: UltraExpr, e2: UltraExpr) -> UltraExpr:
    """``e1 (+) e2``: concatenation of the coefficient strings."""
    return UltraExpr(concat(e1.coeffs, e2.coeffs))


def scale(h: int, e: UltraExpr) -> UltraExpr:
    """``h * e`` for ``h >= 0``."""
    if h < 0:
        raise SemanticError(f"scalar must be nonnegative, got {h}")
    return UltraExpr(tuple(h * a for a in e.coeffs))
