"""
Module to implement the results produced by the bound calculators.
"""


from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Mapping, Sequence, Tuple

from monogamy_engine.behaviors.behavior import Behavior
from monogamy_engine.bounds.rational_simplex_solver import LPStatus
from monogamy_engine.scenario.expression import Sense


ALGEBRAIC_BOUND : str = 'algebraic'
CLASSICAL_BOUND : str = 'classical'
NO_DISTURBANCE_BOUND : str = 'no-disturbance'


@dataclass(frozen = True)
class BoundResult:
    """
    A class to implement a bound of an expression, expressed in the expression's own sense, with an optional witness.
    """

    expression_name : str
    kind : str
    value : Fraction
    sense : Sense = Sense.MAXIMIZE
    witness : Mapping[str, int] | None = None
    assignments_enumerated : int = 0


    @property
    def normalized_value(self) -> Fraction:
        """ Property to retrieve the bound of the MAXIMIZE-normalized expression. """
        return self.value if self.sense is Sense.MAXIMIZE else -self.value


@dataclass(frozen = True)
class LinearProgram:
    """
    A class to implement the no-disturbance polytope of a scenario in context form.

    Variables are (context, joint outcome) probability entries; every row is an equality
    `sum(coefficient * x) == rhs`; nonnegativity of all variables is implicit.
    """

    variables : Tuple[Tuple[Tuple[str, ...], Tuple[int, ...]], ...]
    equalities : Tuple[Tuple[Mapping[int, Fraction], Fraction], ...]
    objective : Tuple[Fraction, ...] | None = None
    normalization_rows : int = 0


    @property
    def variable_count(self) -> int:
        """ Property to retrieve the number of variables. """
        return len(self.variables)


    @property
    def constraint_count(self) -> int:
        """ Property to retrieve the number of equality rows. """
        return len(self.equalities)


    def violated_rows(self, values : Sequence[Fraction]) -> Tuple[int, ...]:
        """
        Method to list the rows (and the negative entries, as -1 - index) a point violates.
        """
        negative = tuple(-1 - position for position, value in enumerate(values) if value < 0)
        broken = tuple(
            position
            for position, (row, rhs) in enumerate(self.equalities)
            if sum((coefficient * values[variable] for variable, coefficient in row.items()), Fraction(0)) != rhs
        )
        return negative + broken


    def is_satisfied_by(self, values : Sequence[Fraction]) -> bool:
        """ Method to check that a point is nonnegative and satisfies every equality exactly. """
        return len(values) == self.variable_count and not self.violated_rows(values)


@dataclass(frozen = True)
class LPSolution:
    """
    A class to implement the solution of a no-disturbance linear program.
    """

    expression_name : str
    status : LPStatus
    optimum : Fraction | None
    witness : Behavior | None
    sense : Sense = Sense.MAXIMIZE
    variable_count : int = 0
    constraint_count : int = 0
    pivots : int = 0
    details : Dict[str, int] = field(default_factory = dict)
