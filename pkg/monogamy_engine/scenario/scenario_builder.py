"""
Module to implement the construction of Bell and contextuality scenarios.
"""


import dataclasses
import itertools
import logging
from typing import Iterable, List, Sequence, Tuple

from monogamy_engine._utils.loggable_entity import LoggableEntity
from monogamy_engine.errors.scenario_errors import InvalidScenarioError
from monogamy_engine.scenario.scenario import Observable, Scenario


class ScenarioBuilder(LoggableEntity):
    """
    A class to implement the scenario construction functionality of the monogamy engine.
    """


    def __init__(self, log_level : int = logging.WARNING) -> None:
        """
        Constructor method for the `ScenarioBuilder` class.

        Args:
            log_level (int): the log level to be used for filtering logs in the runtime.
        """
        super().__init__(log_level)


    def build_bell_scenario(self, parties : Sequence[Tuple[str, Sequence[Observable]]]) -> Scenario:
        """
        Method to build a Bell scenario, where observables of distinct parties commute and those of a same party do not.

        Args:
            parties (Sequence[Tuple[str, Sequence[Observable]]]): the party tags with their observables.

        Returns:
            The scenario with an edge between every pair of observables of distinct parties.
        """
        self.logger.debug('Building Bell scenario')

        tags = [tag for tag, _ in parties]

        if len(set(tags)) != len(tags):
            raise InvalidScenarioError(f'Party tags must be distinct, got {tags}')

        # Step 1: Tagging every observable with its party
        observables : List[Observable] = [
            dataclasses.replace(observable, party = tag)
            for tag, party_observables in parties
            for observable in party_observables
        ]

        # Step 2: Connecting every pair of observables held by distinct parties
        edges = [
            (first.id, second.id)
            for first, second in itertools.combinations(observables, 2)
            if first.party != second.party
        ]

        scenario = Scenario(tuple(observables), frozenset(frozenset(edge) for edge in edges))

        self.logger.debug(f'Built Bell scenario with {len(observables)} observables and {len(edges)} edges')

        return scenario


    def add_contexts(self, scenario : Scenario, cliques : Iterable[Iterable[str]]) -> Scenario:
        """
        Method to make every given subset of observables jointly measurable.

        Args:
            scenario (Scenario): the scenario to be extended.
            cliques (Iterable[Iterable[str]]): the subsets of observable ids to be turned into cliques.

        Returns:
            A new scenario with all pairs inside each subset added as edges.
        """
        new_edges = []

        for clique in cliques:
            clique = list(clique)
            unknown = [identifier for identifier in clique if identifier not in scenario.index]

            if unknown:
                self.logger.error(f'Unknown observables in context {clique}')
                raise InvalidScenarioError(f'Unknown observables in context {clique}: {unknown}')

            new_edges.extend(itertools.combinations(clique, 2))

        return scenario.with_edges(new_edges)


    def dichotomic(self, *identifiers : str, outcomes : int = 2) -> Tuple[Observable, ...]:
        """
        Method to build observables sharing an outcome cardinality (two by default).
        """
        return tuple(Observable(identifier, outcomes) for identifier in identifiers)
