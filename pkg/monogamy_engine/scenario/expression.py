"""
Module to implement inequality expressions: rational-linear functionals over behaviors, built from terms on
jointly measurable subsets of observables.
"""


from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from monogamy_engine._utils.rationals import RationalLike, outcome_tuples, row_major_index, table_size, to_fraction
from monogamy_engine.errors.scenario_errors import InvalidExpressionError
from monogamy_engine.scenario.scenario import Scenario


class Sense(Enum):
    """
    A class to implement the direction of an inequality bound ("≤ ω" is MAXIMIZE, "≥ ω" is MINIMIZE).
    """

    MAXIMIZE = 'MAXIMIZE'
    MINIMIZE = 'MINIMIZE'


@dataclass(frozen = True)
class ExpressionTerm:
    """
    A class to implement one term: a coefficient times the expected value of a table over the joint outcomes of its support.

    The value table is laid out in row-major order, the first support observable varying slowest.
    """

    support : Tuple[str, ...]
    coefficient : Fraction
    values : Tuple[Fraction, ...]


    def __post_init__(self) -> None:
        object.__setattr__(self, 'support', tuple(self.support))
        object.__setattr__(self, 'coefficient', to_fraction(self.coefficient))
        object.__setattr__(self, 'values', tuple(to_fraction(value) for value in self.values))

        if len(set(self.support)) != len(self.support):
            raise InvalidExpressionError(f'Repeated observables in term support {self.support}')


    @classmethod
    def from_function(cls, support : Sequence[str], cardinalities : Sequence[int], function, coefficient : RationalLike = 1) -> 'ExpressionTerm':
        """
        Method to build a term whose value table is given by a function of the joint outcome tuple.
        """
        return cls(tuple(support), to_fraction(coefficient), tuple(to_fraction(function(outcomes)) for outcomes in outcome_tuples(cardinalities)))


    def value(self, outcomes : Sequence[int], cardinalities : Sequence[int]) -> Fraction:
        """ Method to retrieve the (unweighted) table value of a joint outcome of the support. """
        return self.values[row_major_index(outcomes, cardinalities)]


    def weighted_values(self) -> Tuple[Fraction, ...]:
        """ Method to retrieve the table multiplied by the coefficient. """
        return tuple(self.coefficient * value for value in self.values)


    def scaled(self, factor : Fraction) -> 'ExpressionTerm':
        """ Method to build a copy of the term with its coefficient multiplied by `factor`. """
        return ExpressionTerm(self.support, self.coefficient * factor, self.values)


@dataclass(frozen = True)
class Expression:
    """
    A class to implement an inequality expression over a scenario.
    """

    scenario : Scenario
    terms : Tuple[ExpressionTerm, ...]
    sense : Sense = Sense.MAXIMIZE
    name : str = 'expression'


    def __post_init__(self) -> None:
        object.__setattr__(self, 'terms', tuple(self.terms))

        for position, term in enumerate(self.terms):
            unknown = [identifier for identifier in term.support if identifier not in self.scenario.index]

            if unknown:
                raise InvalidExpressionError(f'Term {position} of "{self.name}" uses unknown observables {unknown}')

            if not self.scenario.is_clique(term.support):
                raise InvalidExpressionError(f'Term {position} of "{self.name}" has support {term.support}, which is not a clique')

            expected_length = table_size(self.scenario.outcome_cardinalities(term.support))

            if len(term.values) != expected_length:
                raise InvalidExpressionError(
                    f'Term {position} of "{self.name}" has {len(term.values)} values, {expected_length} expected for support {term.support}'
                )


    @property
    def observables(self) -> Tuple[str, ...]:
        """ Property to retrieve the observables appearing in some term support, in scenario order. """
        return self.scenario.ordered({identifier for term in self.terms for identifier in term.support})


    def normalized(self) -> 'Expression':
        """
        Method to express the expression in MAXIMIZE sense (MINIMIZE expressions have every coefficient negated).
        """
        if self.sense is Sense.MAXIMIZE:
            return self

        return Expression(self.scenario, tuple(term.scaled(Fraction(-1)) for term in self.terms), Sense.MAXIMIZE, self.name)


    def to_user_sense(self, normalized_value : Fraction) -> Fraction:
        """ Method to translate a bound of the normalized expression back into this expression's sense. """
        return normalized_value if self.sense is Sense.MAXIMIZE else -normalized_value


    def with_terms(self, terms : Iterable[ExpressionTerm], name : str | None = None) -> 'Expression':
        """ Method to build an expression on the same scenario and sense with other terms. """
        return Expression(self.scenario, tuple(terms), self.sense, self.name if name is None else name)


    def on_scenario(self, scenario : Scenario) -> 'Expression':
        """ Method to attach the same terms to another scenario (for instance one with extra contexts). """
        return Expression(scenario, self.terms, self.sense, self.name)
