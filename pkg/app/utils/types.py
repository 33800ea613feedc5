"""Annotated variables in this app."""

from fractions import Fraction
from typing import Annotated, Sequence, TypeAlias

from pydantic import PlainSerializer, PlainValidator

Vector: TypeAlias = tuple[Fraction, ...]
IntVector: TypeAlias = tuple[int, ...]
IndexSet: TypeAlias = frozenset[int]
Numeric: TypeAlias = int | Fraction


def to_fraction(value: object) -> Fraction:
    """
    Convert an int, a Fraction or a "p/q" string into a Fraction.

    Args:
        value (object): Raw value from a file or CLI flag.

    Returns:
        Fraction: Exact rational.

    Raises:
        ValueError: If the value is a float, bool or unparsable string.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"Exact rational expected, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Bad rational literal {value!r}") from e
    raise ValueError(f"Exact rational expected, got {type(value).__name__}")


def fraction_to_json(value: Fraction) -> int | str:
    """Integers stay integers, other rationals become "p/q" strings."""
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def vector_to_json(vector: Sequence[Fraction]) -> list[int | str]:
    """Serialize a rational vector coordinate by coordinate."""
    return [fraction_to_json(Fraction(x)) for x in vector]


Rational = Annotated[
    Fraction,
    PlainValidator(to_fraction),
    PlainSerializer(fraction_to_json, return_type=int | str),
]
