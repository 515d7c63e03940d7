"""
Module to implement the construction of a joint probability distribution from a no-disturbance behavior on a
chordal scenario, by chaining clique marginals along a maximal clique tree.
"""


import logging
from fractions import Fraction
from typing import Dict, List, Tuple

from monogamy_engine._utils.loggable_entity import LoggableEntity
from monogamy_engine._utils.rationals import outcome_tuples
from monogamy_engine.behaviors.behavior import Behavior, JointDistribution
from monogamy_engine.behaviors.behavior_analyzer import BehaviorAnalyzer
from monogamy_engine.errors.behavior_errors import DisturbanceError
from monogamy_engine.errors.graph_errors import NonChordalGraphError
from monogamy_engine.graphs.chordal_graph_analyzer import ChordalGraphAnalyzer
from monogamy_engine.graphs.clique_tree import CliqueTree
from monogamy_engine.scenario.scenario import Scenario


Table = Dict[Tuple[int, ...], Fraction]


class JointDistributionBuilder(LoggableEntity):
    """
    A class to implement the joint-distribution construction functionality of the monogamy engine.
    """


    def __init__(self, log_level : int = logging.WARNING) -> None:
        """
        Constructor method for the `JointDistributionBuilder` class.

        Args:
            log_level (int): the log level to be used for filtering logs in the runtime.
        """
        super().__init__(log_level)
        self.graph_analyzer = ChordalGraphAnalyzer(log_level)
        self.behavior_analyzer = BehaviorAnalyzer(log_level)


    def jpd_from_clique_tree(self, behavior : Behavior, tree : CliqueTree | None = None) -> JointDistribution:
        """
        Method to build the joint distribution P = prod_nodes P(C) / prod_edges P(S) of a no-disturbance behavior.

        The product is evaluated root to leaves as P(root) times the conditionals P(C | S) of every child clique;
        a zero separator marginal makes the whole factor zero.

        Args:
            behavior (Behavior): a no-disturbance behavior on a chordal scenario.
            tree (CliqueTree | None): a clique tree of the scenario graph (built when None).

        Returns:
            The joint distribution over all observables of the scenario.
        """
        self.logger.debug(f'Calculating joint distribution of "{behavior.name}"')

        scenario = behavior.scenario

        # Step 1: Checking the preconditions
        if not self.graph_analyzer.is_chordal(scenario.graph):
            witness = self.graph_analyzer.find_chordless_cycle(scenario.graph)
            self.logger.error('The scenario graph is not chordal')
            raise NonChordalGraphError('A joint distribution can only be built for chordal scenarios', witness)

        report = self.behavior_analyzer.is_no_disturbance(behavior)

        if not report.holds:
            self.logger.error(f'"{behavior.name}" violates {len(report.violations)} no-disturbance constraints')
            raise DisturbanceError(f'"{behavior.name}" is not a no-disturbance behavior: {report.violations[0]}')

        tree = tree if tree is not None else self.graph_analyzer.clique_tree(scenario.graph)

        # Step 2: Preparing the clique tables and the separator marginals
        clique_tables = [self.__clique_table(behavior, clique) for clique in tree.nodes]
        factors : List[Tuple[Tuple[str, ...], Table, Tuple[str, ...] | None, Table | None]] = []

        for node, parent in tree.traversal():
            clique = tree.nodes[node]

            if parent is None:
                factors.append((clique, clique_tables[node], None, None))
            else:
                separator = tree.separator_between(node, parent)
                factors.append((clique, clique_tables[node], separator, self.__clique_table(behavior, separator, clique)))

        # Step 3: Evaluating the product for every joint outcome
        observables = scenario.ids
        cardinalities = tuple(scenario.cardinalities[identifier] for identifier in observables)
        position = scenario.index
        probabilities : List[Fraction] = []

        for outcomes in outcome_tuples(cardinalities):
            probability = Fraction(1)

            for clique, table, separator, separator_table in factors:
                numerator = table[tuple(outcomes[position[identifier]] for identifier in clique)]

                if separator is None:
                    probability *= numerator
                else:
                    denominator = separator_table[tuple(outcomes[position[identifier]] for identifier in separator)]
                    probability *= numerator / denominator if denominator else Fraction(0)

                if not probability:
                    break

            probabilities.append(probability)

        joint = JointDistribution(observables, cardinalities, tuple(probabilities))

        self.logger.debug(f'Calculated joint distribution of "{behavior.name}"')

        return joint


    def marginalize_joint(self, joint : JointDistribution, scenario : Scenario, name : str = 'marginalized') -> Behavior:
        """
        Method to build the behavior obtained by marginalizing a joint distribution onto every context of a scenario.

        Args:
            joint (JointDistribution): the joint distribution (over the scenario observables).
            scenario (Scenario): the scenario whose maximal contexts receive the marginals.

        Returns:
            The (necessarily no-disturbance) behavior.
        """
        marginals = {context : joint.marginal(context) for context in scenario.contexts}
        return Behavior.from_function(scenario, lambda context, outcomes : marginals[context][tuple(outcomes[identifier] for identifier in context)], name)


    def __clique_table(self, behavior : Behavior, subset : Tuple[str, ...], within : Tuple[str, ...] | None = None) -> Table:
        """
        Private method to compute the marginal table of a clique from a context containing it.
        """
        context = next(context for context in behavior.contexts if set(subset) <= set(context) and (within is None or set(context) >= set(within)))
        cardinalities = behavior.scenario.outcome_cardinalities(subset)
        return dict(zip(outcome_tuples(cardinalities), self.behavior_analyzer.marginal(behavior, context, subset)))
