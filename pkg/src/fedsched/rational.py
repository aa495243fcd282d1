"""Exact rational values and their text encoding.

All times, demands and processor speeds in this package are
arbitrary-precision rationals (``fractions.Fraction``), so comparisons that
sit exactly on ceiling-function discontinuities are decided without
rounding.  Files and CLI streams encode rationals with the grammar:
optional sign, digits, optionally "/" followed by digits.
"""

from __future__ import annotations

import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^[+-]?[0-9]+(?:/[0-9]+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse a rational-string such as ``"7"`` or ``"-3/4"``.

    Rejects anything outside the grammar (decimals, whitespace, empty
    strings) and zero denominators.
    """
    if not isinstance(text, str) or _RATIONAL_RE.match(text) is None:
        raise ValueError(f"not a rational-string: {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator in rational-string: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(value: Fraction | int) -> str:
    """Encode a rational as ``"p"`` or ``"p/q"`` in lowest terms."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
