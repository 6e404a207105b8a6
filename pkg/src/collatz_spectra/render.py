"""Decimal rendering of exact rationals."""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Context, Decimal
from fractions import Fraction

DEFAULT_DIGITS = 7


def to_decimal(x: Fraction | int, digits: int = DEFAULT_DIGITS) -> Decimal:
    """``x`` rounded half-up to ``digits`` significant digits."""
    x = Fraction(x)
    ctx = Context(prec=digits, rounding=ROUND_HALF_UP)
    return ctx.divide(Decimal(x.numerator), Decimal(x.denominator))


def render(x: Fraction | int, digits: int = DEFAULT_DIGITS, exact: bool = False) -> str:
    """Positional decimal with ``digits`` significant digits, or ``num/den``."""
    x = Fraction(x)
    if exact:
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if x == 0:
        return "0"
    return format(to_decimal(x, digits), "f")


def significant_digits(text: str) -> int:
    """Significant digits of a printed decimal (``"6.6440e-4"`` has five)."""
    return len(Decimal(text).as_tuple().digits)


def over(x: Fraction, denominator: int) -> str:
    """``x`` written over ``denominator`` when that is exact (as printed tables do)."""
    num = x * denominator
    if num.denominator != 1:
        return f"{x.numerator}/{x.denominator}"
    return f"{num.numerator}/{denominator}"


def percent(x: Fraction, places: int = 2) -> str:
    return format(to_decimal(x * 100, 30).quantize(Decimal(1).scaleb(-places), ROUND_HALF_UP), "f")
