"""Compact command-line notation for large inputs.

Users name a start value without materializing its digits:

    123            plain decimal (underscore separators allowed: 1_000_000)
    2^607          a power of two
    2^607-1        the Mersenne number with that exponent
    M607           same Mersenne number, shorter
    Mp13           the 13th known Mersenne prime (catalog rank)

No whitespace, no signs, ASCII digits only.  Parse failures carry the
offset of the first offending character and what was expected there.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from enum import Enum

from .catalog import catalog_entry, mersenne_number
from .errors import DomainError, ParseError


class ExpressionKind(str, Enum):
    DECIMAL = "decimal"
    POWER_OF_TWO = "power_of_two"
    MERSENNE_BY_EXPONENT = "mersenne_by_exponent"
    MERSENNE_BY_RANK = "mersenne_by_rank"


@dataclass(frozen=True)
class NumberExpression:
    """A parsed input expression.

    Equality and hashing use (kind, parameter) only, so "2^13-1" and "M13"
    compare equal; source_text preserves what was actually written.
    """

    kind: ExpressionKind
    parameter: int
    source_text: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.kind, ExpressionKind):
            raise DomainError(f"kind must be an ExpressionKind, got {self.kind!r}")
        object.__setattr__(self, "parameter", operator.index(self.parameter))
        if self.parameter < 0:
            raise DomainError(f"parameter must be >= 0, got {self.parameter}")
        if not self.source_text:
            object.__setattr__(self, "source_text", self.canonical())

    def canonical(self) -> str:
        """The shortest spelling; re-parsing it yields an equal expression."""
        if self.kind is ExpressionKind.DECIMAL:
            return str(self.parameter)
        if self.kind is ExpressionKind.POWER_OF_TWO:
            return f"2^{self.parameter}"
        if self.kind is ExpressionKind.MERSENNE_BY_EXPONENT:
            return f"M{self.parameter}"
        return f"Mp{self.parameter}"

    def mersenne_exponent(self) -> int | None:
        """The exponent n when this names 2**n - 1, else None."""
        if self.kind is ExpressionKind.MERSENNE_BY_EXPONENT:
            return self.parameter
        if self.kind is ExpressionKind.MERSENNE_BY_RANK:
            return catalog_entry(self.parameter).exponent
        return None

    def resolve(self) -> int:
        """The integer value this expression names.

        Raises DomainError for M0 and RangeError for a rank outside the
        catalog; parsing alone never validates those, so an expression can
        be inspected without being resolvable.
        """
        if self.kind is ExpressionKind.DECIMAL:
            return self.parameter
        if self.kind is ExpressionKind.POWER_OF_TWO:
            return 1 << self.parameter
        if self.kind is ExpressionKind.MERSENNE_BY_EXPONENT:
            return mersenne_number(self.parameter)
        return mersenne_number(catalog_entry(self.parameter).exponent)


def _is_digit(c: str) -> bool:
    return "0" <= c <= "9"


def _scan_decimal(text: str, start: int) -> tuple[int, int]:
    """Scan a decimal literal with optional '_' separators between digits.

    Returns (value, end offset).
    """
    i = start
    n = len(text)
    if i >= n or not _is_digit(text[i]):
        raise ParseError(text, i, "a decimal digit")
    digits = [text[i]]
    i += 1
    while i < n:
        c = text[i]
        if _is_digit(c):
            digits.append(c)
            i += 1
        elif c == "_":
            if i + 1 < n and _is_digit(text[i + 1]):
                i += 1
            else:
                raise ParseError(text, i + 1, "a decimal digit after '_'")
        else:
            break
    return int("".join(digits)), i


def parse_expression(text: str) -> NumberExpression:
    """Parse one expression; the whole string must be consumed.

    Grammar: DEC | "2^" DEC | "2^" DEC "-1" | "M" DEC | "Mp" DEC.
    """
    if not isinstance(text, str):
        raise DomainError(f"text must be a string, got {type(text).__name__}")
    if not text:
        raise ParseError(text, 0, "a number expression")
    tail_expected = "end of input"
    if text.startswith("Mp"):
        value, end = _scan_decimal(text, 2)
        kind = ExpressionKind.MERSENNE_BY_RANK
    elif text[0] == "M":
        value, end = _scan_decimal(text, 1)
        kind = ExpressionKind.MERSENNE_BY_EXPONENT
    elif text.startswith("2^"):
        value, end = _scan_decimal(text, 2)
        if text[end : end + 2] == "-1":
            kind = ExpressionKind.MERSENNE_BY_EXPONENT
            end += 2
        else:
            kind = ExpressionKind.POWER_OF_TWO
            tail_expected = "'-1' or end of input"
    elif _is_digit(text[0]):
        value, end = _scan_decimal(text, 0)
        kind = ExpressionKind.DECIMAL
    else:
        raise ParseError(text, 0, "a digit, 'M', 'Mp', or '2^'")
    if end != len(text):
        raise ParseError(text, end, tail_expected)
    return NumberExpression(kind=kind, parameter=value, source_text=text)
