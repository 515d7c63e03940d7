"""
Module with helpers to read and write exact rationals as "p/q" strings and to enumerate outcome tuples.
"""


import itertools
import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Tuple


RationalLike = Fraction | int | str


def to_fraction(value : RationalLike) -> Fraction:
    """
    Function to convert a rational-like value into a `Fraction`.

    Floats are rejected: every number handled by the engine must be exact.

    Args:
        value: an int, a `Fraction` or a string such as "3/4", "-2" or "10/1".

    Returns:
        The exact `Fraction`.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f'Inexact value not allowed: {value!r}')

    if isinstance(value, Fraction):
        return value

    if isinstance(value, int):
        return Fraction(value)

    if isinstance(value, str):
        return Fraction(value.strip())

    raise TypeError(f'Cannot read a rational from {value!r}')


def format_fraction(value : Fraction) -> str:
    """
    Function to write a rational as a "p/q" string (the denominator is always present).
    """
    value = to_fraction(value)
    return f'{value.numerator}/{value.denominator}'


def outcome_tuples(cardinalities : Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """
    Function to enumerate joint outcomes in row-major order (first position varying slowest).
    """
    return itertools.product(*(range(cardinality) for cardinality in cardinalities))


def row_major_index(outcomes : Sequence[int], cardinalities : Sequence[int]) -> int:
    """
    Function to compute the flat row-major index of a joint outcome.
    """
    index = 0

    for outcome, cardinality in zip(outcomes, cardinalities):
        index = index * cardinality + outcome

    return index


def table_size(cardinalities : Iterable[int]) -> int:
    """
    Function to compute the number of joint outcomes over the given cardinalities.
    """
    return math.prod(cardinalities)


def common_denominator(values : Iterable[Fraction]) -> int:
    """
    Function to compute the least common multiple of the denominators of the given rationals.
    """
    return math.lcm(1, *(value.denominator for value in values))
