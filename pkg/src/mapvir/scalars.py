"""Exact rational scalars and their canonical string form.

Every scalar in the library is a ``fractions.Fraction`` (arbitrary precision,
normalized sign and gcd).  The wire format is ``"p/q"``, or ``"p"`` when the
denominator is 1.
"""

from __future__ import annotations

from fractions import Fraction

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def as_scalar(value) -> Fraction:
    """Coerce an int, string or Fraction to a Fraction.  Floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def parse_scalar(text: str) -> Fraction:
    """Parse "p/q" or "p" into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {text!r}") from exc


def format_scalar(x: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
