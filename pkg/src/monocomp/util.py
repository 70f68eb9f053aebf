from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def as_fraction(x) -> Fraction:
    """Exact rational for ints, Fractions, decimal strings and floats.

    Floats go through their shortest repr, so ``0.3`` becomes ``3/10`` rather
    than the binary expansion of the double.
    """
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(str(x).strip())


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
