"""
Module to implement the analysis of behaviors: well-formedness, no-disturbance, marginals and expression evaluation.
"""


import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from monogamy_engine._utils.loggable_entity import LoggableEntity
from monogamy_engine._utils.rationals import outcome_tuples, row_major_index, table_size
from monogamy_engine.behaviors.behavior import Behavior
from monogamy_engine.errors.behavior_errors import MalformedBehaviorError, UnsupportedTermError
from monogamy_engine.graphs.chordal_graph_analyzer import ChordalGraphAnalyzer
from monogamy_engine.scenario.expression import Expression, ExpressionTerm
from monogamy_engine.scenario.scenario import Scenario


@dataclass(frozen = True)
class DisturbanceViolation:
    """
    A class to implement one violated no-disturbance constraint: two contexts whose shared marginals differ.
    """

    first_context : Tuple[str, ...]
    second_context : Tuple[str, ...]
    shared : Tuple[str, ...]


@dataclass(frozen = True)
class NoDisturbanceReport:
    """
    A class to implement the outcome of a no-disturbance check.
    """

    holds : bool
    violations : Tuple[DisturbanceViolation, ...]


    def __bool__(self) -> bool:
        return self.holds


class BehaviorAnalyzer(LoggableEntity):
    """
    A class to implement the behavior analysis functionality of the monogamy engine.
    """


    def __init__(self, log_level : int = logging.WARNING) -> None:
        """
        Constructor method for the `BehaviorAnalyzer` class.

        Args:
            log_level (int): the log level to be used for filtering logs in the runtime.
        """
        super().__init__(log_level)
        self.graph_analyzer = ChordalGraphAnalyzer(log_level)


    def validate(self, behavior : Behavior) -> None:
        """
        Method to check that a behavior is well formed: one table per maximal context, right lengths, nonnegative
        entries summing to one.

        Args:
            behavior (Behavior): the behavior to be checked.
        """
        scenario = behavior.scenario
        expected = {frozenset(context) for context in scenario.contexts}
        given = [frozenset(context) for context in behavior.contexts]

        if len(given) != len(behavior.tables):
            raise MalformedBehaviorError(f'{len(given)} contexts but {len(behavior.tables)} tables in "{behavior.name}"')

        if set(given) != expected or len(given) != len(expected):
            self.logger.error(f'Contexts of "{behavior.name}" differ from the maximal cliques of the scenario')
            raise MalformedBehaviorError(f'The contexts of "{behavior.name}" are not the maximal cliques of its scenario')

        for context, table in zip(behavior.contexts, behavior.tables):
            expected_length = table_size(scenario.outcome_cardinalities(context))

            if len(table) != expected_length:
                raise MalformedBehaviorError(f'Context {context} has {len(table)} entries, {expected_length} expected')

            if any(entry < 0 for entry in table):
                raise MalformedBehaviorError(f'Context {context} has negative entries')

            if sum(table) != 1:
                raise MalformedBehaviorError(f'Context {context} sums to {sum(table)} instead of 1')


    def marginal(self, behavior : Behavior, context : Sequence[str], subset : Sequence[str]) -> Tuple[Fraction, ...]:
        """
        Method to compute the marginal of a context table on a subset of its observables.

        Args:
            behavior (Behavior): the behavior.
            context (Sequence[str]): a stored context.
            subset (Sequence[str]): the observables to be kept (the result follows this order).

        Returns:
            The marginal table in row-major order over `subset` (a single 1 for the empty subset).
        """
        stored = next((candidate for candidate in behavior.contexts if frozenset(candidate) == frozenset(context)), None)

        if stored is None:
            raise MalformedBehaviorError(f'{tuple(context)} is not a context of "{behavior.name}"')

        missing = [identifier for identifier in subset if identifier not in stored]

        if missing:
            raise MalformedBehaviorError(f'Observables {missing} are not part of context {stored}')

        scenario = behavior.scenario
        positions = [stored.index(identifier) for identifier in subset]
        subset_cardinalities = scenario.outcome_cardinalities(subset)
        marginal = [Fraction(0)] * table_size(subset_cardinalities)

        for outcomes, probability in zip(outcome_tuples(scenario.outcome_cardinalities(stored)), behavior.table(stored)):
            if probability:
                marginal[row_major_index([outcomes[position] for position in positions], subset_cardinalities)] += probability

        return tuple(marginal)


    def is_no_disturbance(self, behavior : Behavior) -> NoDisturbanceReport:
        """
        Method to check that every pair of overlapping contexts agrees on the marginal of their intersection.

        Args:
            behavior (Behavior): the behavior to be checked (validated first).

        Returns:
            A report with the verdict and the list of violated context pairs.
        """
        self.logger.debug(f'Checking no-disturbance of "{behavior.name}"')

        self.validate(behavior)
        scenario = behavior.scenario
        violations : List[DisturbanceViolation] = []

        for first, second in itertools.combinations(behavior.contexts, 2):
            shared = scenario.ordered(set(first) & set(second))

            if shared and self.marginal(behavior, first, shared) != self.marginal(behavior, second, shared):
                violations.append(DisturbanceViolation(first, second, shared))

        report = NoDisturbanceReport(not violations, tuple(violations))

        self.logger.debug(f'Checked no-disturbance of "{behavior.name}" ({len(violations)} violations)')

        return report


    def term_value(self, term : ExpressionTerm, behavior : Behavior, context : Sequence[str]) -> Fraction:
        """
        Method to compute the weighted expected value of one term from a given context containing its support.
        """
        marginal = self.marginal(behavior, context, term.support)
        return term.coefficient * sum((value * probability for value, probability in zip(term.values, marginal)), Fraction(0))


    def containing_contexts(self, behavior : Behavior, support : Sequence[str]) -> List[Tuple[str, ...]]:
        """
        Method to list the contexts of a behavior that contain a term support.
        """
        return [context for context in behavior.contexts if set(support) <= set(context)]


    def evaluate(self, expression : Expression, behavior : Behavior) -> Fraction:
        """
        Method to evaluate an expression on a behavior, reading every term from the first context containing its support.

        Args:
            expression (Expression): the expression.
            behavior (Behavior): the behavior.

        Returns:
            The exact value of the expression.
        """
        self.validate(behavior)

        value = Fraction(0)

        for term in expression.terms:
            contexts = self.containing_contexts(behavior, term.support)

            if not contexts:
                self.logger.error(f'Term support {term.support} lies in no context')
                raise UnsupportedTermError(f'Term support {term.support} of "{expression.name}" is contained in no context of "{behavior.name}"')

            value += self.term_value(term, behavior, contexts[0])

        return value


    def deterministic_behavior(self, scenario : Scenario, assignment : Mapping[str, int], name : str = 'deterministic') -> Behavior:
        """
        Method to build the behavior whose every context table is a point mass on the assigned outcomes.

        Args:
            scenario (Scenario): the scenario.
            assignment (Mapping[str, int]): the outcome index of every observable.

        Returns:
            The deterministic behavior.
        """
        missing = [identifier for identifier in scenario.ids if identifier not in assignment]

        if missing:
            raise MalformedBehaviorError(f'The assignment misses observables {missing}')

        invalid = [identifier for identifier in scenario.ids if not 0 <= assignment[identifier] < scenario.cardinalities[identifier]]

        if invalid:
            raise MalformedBehaviorError(f'The assignment gives out-of-range outcomes to {invalid}')

        return Behavior.from_function(
            scenario,
            lambda context, outcomes : int(all(outcomes[identifier] == assignment[identifier] for identifier in context)),
            name
        )


    def compatible_marginals(self, first : Behavior, second : Behavior, shared : Sequence[str]) -> bool:
        """
        Method to check whether two behaviors agree on every measurable marginal of a shared set of observables.

        Both strategies can be glued into a single one only if they agree there.

        Args:
            first (Behavior): the first behavior.
            second (Behavior): the second behavior.
            shared (Sequence[str]): the shared observables.

        Returns:
            True if the marginals agree on every maximal clique of the shared observables in both scenarios.
        """
        for behavior, other in ((first, second), (second, first)):
            graph = self.graph_analyzer.induced_subgraph(behavior.scenario.graph, shared)

            for clique in self.graph_analyzer.maximal_cliques(graph):
                if self.__clique_marginal(behavior, clique) != self.__clique_marginal(other, clique):
                    return False

        return True


    def __clique_marginal(self, behavior : Behavior, clique : Sequence[str]) -> Dict[Tuple[int, ...], Fraction] | None:
        """
        Private method to compute the marginal of a clique from the first context containing it (None when unmeasurable).
        """
        contexts = self.containing_contexts(behavior, clique)

        if not contexts:
            return None

        cardinalities = behavior.scenario.outcome_cardinalities(clique)
        return dict(zip(outcome_tuples(cardinalities), self.marginal(behavior, contexts[0], clique)))
