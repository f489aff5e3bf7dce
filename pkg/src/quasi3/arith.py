"""Exact scalar arithmetic shared by every other module.

Python integers are arbitrary precision and fractions.Fraction is always
stored in lowest terms with a positive denominator, so the two built-in
types serve directly as the exact integer and rational scalars.  What this
module adds is the binomial-coefficient convention used throughout the
difference formulas, plus strict string serialization for rationals.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb

_RAT_RE = re.compile(r"[+-]?\d+(/\d+)?\Z")


def binom(n: int, k: int) -> int:
    """Binomial coefficient with out-of-range arguments giving 0.

    Returns 0 whenever k < 0, k > n, or n < 0, so that expressions like
    binom(h, s) - binom(h, L - s) evaluate cleanly at edge indices.
    """
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def rational_to_str(value) -> str:
    """Render an exact rational as "num" or "num/den" with den > 0."""
    return str(Fraction(value))


def rational_from_str(text: str) -> Fraction:
    """Parse "num" or "num/den".  Rejects anything else, including floats."""
    text = text.strip()
    if not _RAT_RE.match(text):
        raise ValueError(f"not an exact rational: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator: {text!r}") from None
