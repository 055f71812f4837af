"""Strict text <-> Fraction conversion used by the file formats and the CLI."""
import re
from fractions import Fraction

from .errors import ValidationError

_FRACTION_RE = re.compile(r"-?\d+(?:/\d+)?")


def parse_fraction(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` exactly.

    Decimals, exponents, whitespace and zero denominators are rejected, so a
    value that is not a rational literal can never slip through as a float.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str) or not _FRACTION_RE.fullmatch(text):
        raise ValidationError(f"not a rational literal: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValidationError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_fraction(x) -> str:
    """Irreducible ``p/q`` with positive ``q``; integers keep their ``/1``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise ValidationError(f"floats are not accepted, got {x!r}")
    if isinstance(x, str):
        return parse_fraction(x)
    return Fraction(x)
