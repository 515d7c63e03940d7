"""
Module to implement behaviors (boxes) and joint probability distributions.
"""


from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Mapping, Sequence, Tuple

from monogamy_engine._utils.rationals import outcome_tuples, row_major_index, to_fraction
from monogamy_engine.scenario.scenario import Scenario


@dataclass(frozen = True)
class Behavior:
    """
    A class to implement a behavior: one probability table per maximal context of a scenario.

    Tables follow the row-major convention of expression value tables (first context observable varying slowest).
    Well-formedness is checked by `BehaviorAnalyzer`, so malformed boxes can still be represented and reported.
    """

    scenario : Scenario
    contexts : Tuple[Tuple[str, ...], ...]
    tables : Tuple[Tuple[Fraction, ...], ...]
    name : str = 'box'


    def __post_init__(self) -> None:
        object.__setattr__(self, 'contexts', tuple(tuple(context) for context in self.contexts))
        object.__setattr__(self, 'tables', tuple(tuple(to_fraction(entry) for entry in table) for table in self.tables))


    @classmethod
    def from_function(
            cls,
            scenario : Scenario,
            probability : Callable[[Tuple[str, ...], Mapping[str, int]], Fraction | int | str],
            name : str = 'box'
        ) -> 'Behavior':
        """
        Method to build a behavior on the scenario's maximal contexts from a function of (context, outcome assignment).
        """
        tables = []

        for context in scenario.contexts:
            cardinalities = scenario.outcome_cardinalities(context)
            tables.append(tuple(
                to_fraction(probability(context, dict(zip(context, outcomes))))
                for outcomes in outcome_tuples(cardinalities)
            ))

        return cls(scenario, scenario.contexts, tuple(tables), name)


    def table(self, context : Sequence[str]) -> Tuple[Fraction, ...]:
        """ Method to retrieve the table of a context (given in any order of its observables). """
        wanted = frozenset(context)

        for candidate, table in zip(self.contexts, self.tables):
            if frozenset(candidate) == wanted:
                return table

        raise KeyError(f'No table for context {tuple(context)}')


    def probability(self, context : Sequence[str], outcomes : Sequence[int]) -> Fraction:
        """ Method to retrieve the probability of a joint outcome of a stored context (in stored order). """
        context = tuple(context)
        return self.table(context)[row_major_index(outcomes, self.scenario.outcome_cardinalities(context))]


@dataclass(frozen = True)
class JointDistribution:
    """
    A class to implement a probability table over the joint outcomes of every observable of a scenario.
    """

    observables : Tuple[str, ...]
    cardinalities : Tuple[int, ...]
    probabilities : Tuple[Fraction, ...]


    def marginal(self, subset : Sequence[str]) -> Dict[Tuple[int, ...], Fraction]:
        """
        Method to sum out every observable outside `subset`.

        Returns:
            The marginal as a mapping from outcome tuples (in `subset` order) to probabilities.
        """
        positions = [self.observables.index(identifier) for identifier in subset]
        marginal : Dict[Tuple[int, ...], Fraction] = {
            outcomes : Fraction(0) for outcomes in outcome_tuples([self.cardinalities[position] for position in positions])
        }

        for outcomes, probability in zip(outcome_tuples(self.cardinalities), self.probabilities):
            if probability:
                marginal[tuple(outcomes[position] for position in positions)] += probability

        return marginal
