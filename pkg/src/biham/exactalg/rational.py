"""Exact rational scalars.

The scalar field for everything in this package is the stdlib
:class:`fractions.Fraction`: arbitrary-precision numerator, positive
denominator, always stored in lowest terms.  This module only adds the
string conventions used by the JSON interchange formats ("p/q").
"""

from fractions import Fraction

from ..errors import ValidationError

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value) -> Fraction:
    """Coerce ints, "p/q" strings and Fractions to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad rational literal {value!r}") from exc
    raise ValidationError(f"cannot interpret {value!r} as a rational")


def rat_str(value: Fraction) -> str:
    """Canonical "p/q" form (plain integer when the denominator is 1)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
