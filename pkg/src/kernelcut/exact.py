"""Exact rational helpers: parsing, formatting, sign and bit-size utilities."""

from fractions import Fraction
from math import lcm

from .errors import ValidationError


def to_fraction(value):
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: every weight in the package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ValidationError(f"not an exact rational: {value!r}")


def parse_rational(text, line=None):
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            q = int(den)
            if q == 0:
                raise ValidationError(f"zero denominator in {text!r}", line)
            return Fraction(int(num), q)
        return Fraction(int(num))
    except ValueError:
        raise ValidationError(f"not a rational literal: {text!r}", line) from None


def format_rational(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rational_vector(values):
    """Canonical RationalVector: a tuple of reduced Fractions."""
    return tuple(to_fraction(v) for v in values)


def sign(x):
    return (x > 0) - (x < 0)


def common_denominator(values):
    return lcm(1, *(Fraction(v).denominator for v in values))


def integer_scaled(values):
    """Positive integer multiple of a rational vector (sign pattern unchanged)."""
    scale = common_denominator(values)
    return [int(Fraction(v) * scale) for v in values]


def rational_bits(value):
    """Encoding length of a rational: sign bit plus numerator and denominator bits."""
    value = Fraction(value)
    return 1 + abs(value.numerator).bit_length() + value.denominator.bit_length()


def ft_magnitude_bound(r, N):
    """Largest entry magnitude allowed for a compressed vector of length r."""
    return 2 ** (4 * r**3) * N ** (r * (r + 2))


def within_ft_bound(values, N):
    r = len(values)
    bound = ft_magnitude_bound(r, N)
    return all(abs(v) <= bound for v in values)


def bit_length_within(value, r, N):
    """Exact test of ``bitlen(value) <= 4r^3 + r(r+2) log2(N) + 1``."""
    excess = abs(int(value)).bit_length() - 1 - 4 * r**3
    if excess <= 0:
        return True
    return 2**excess <= N ** (r * (r + 2))


def bit_length_bound(r, N):
    """Float rendering of the per-number bit bound, for reports only."""
    from math import log2

    return 4 * r**3 + r * (r + 2) * log2(N) + 1
