"""Exact-rational helpers: rendering, Euler's number enclosure, n^{1.5}.

All proof-chain comparisons run on `fractions.Fraction`. Floating point only
appears when a value is rendered for a human (decimal strings, square roots of
the adversary minimum) or in `float-fallback` mode, where n^{1.5} is replaced
by a high-precision decimal approximation and comparisons get a relative slack.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction

from src.config import Settings, settings


def e_enclosure(cfg: Settings = settings) -> tuple[Fraction, Fraction]:
    """Return rational bounds (low, high) with low <= e <= high."""

    return Fraction(cfg.e_lower), Fraction(cfg.e_upper)


def is_perfect_square(n: int) -> bool:
    root = math.isqrt(n)
    return root * root == n


def three_halves_power(n: int, *, precision: int = settings.decimal_precision) -> tuple[Fraction, bool]:
    """Return (n^{1.5}, exact).

    For perfect squares the value is the integer n·√n. Otherwise it is a
    decimal approximation with `precision` significant digits and `exact` is
    False.
    """

    root = math.isqrt(n)
    if root * root == n:
        return Fraction(n * root), True

    with localcontext() as ctx:
        ctx.prec = precision
        value = Decimal(n).sqrt() * n
    return Fraction(value), False


def _to_decimal(value: Fraction, digits: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = digits + 10
        return Decimal(value.numerator) / Decimal(value.denominator)


def decimal_string(value: Fraction | int, digits: int = settings.csv_significant_digits) -> str:
    """Render a rational with `digits` significant digits."""

    return f"{_to_decimal(Fraction(value), digits):.{digits}g}"


def sqrt_decimal_string(value: Fraction, digits: int = settings.csv_significant_digits) -> str:
    """Render √value with `digits` significant digits (display only)."""

    with localcontext() as ctx:
        ctx.prec = digits + 10
        root = (Decimal(value.numerator) / Decimal(value.denominator)).sqrt()
    return f"{root:.{digits}g}"


def fraction_payload(value: Fraction | int, digits: int = settings.csv_significant_digits) -> dict[str, str]:
    """Exact numerator/denominator strings plus a decimal rendering."""

    value = Fraction(value)
    return {
        "numerator": str(value.numerator),
        "denominator": str(value.denominator),
        "decimal": decimal_string(value, digits),
    }


def holds_le(lhs: Fraction, rhs: Fraction, *, exact: bool, slack: float = settings.inexact_relative_slack) -> bool:
    """Check lhs <= rhs, exactly or with a relative slack for inexact runs."""

    if exact:
        return lhs <= rhs
    return lhs <= rhs * (1 + Fraction(slack))
