"""Exact rational scalars and their canonical string form."""

from __future__ import annotations

import re
from fractions import Fraction

# The base exact field. Fraction already maintains the invariants we need:
# gcd(|num|, den) = 1, den > 0, and zero is 0/1.
Scalar = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")


def parse_scalar(text: str) -> Fraction:
    """Parse an exact rational written as ``p`` or ``p/q``.

    Decimal notation is rejected: '0.5' must be written '1/2'.
    """
    s = text.strip()
    if "." in s or "e" in s.lower():
        raise ValueError(
            f"decimal notation is not exact: {text!r} (write '1/2' instead of '0.5')"
        )
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not a rational literal: {text!r} (expected 'p' or 'p/q')")
    return Fraction(s)


def format_scalar(x: Fraction) -> str:
    """Canonical string form: ``p`` for integers, ``p/q`` otherwise."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
