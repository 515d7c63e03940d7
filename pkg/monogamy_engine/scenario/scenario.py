"""
Module to implement measurement scenarios: observables and their compatibility (commutation) graph.
"""


import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Tuple

import networkx as nx

from monogamy_engine.errors.scenario_errors import InvalidScenarioError
from monogamy_engine.graphs.chordal_graph_analyzer import ChordalGraphAnalyzer


_GRAPH_ANALYZER = ChordalGraphAnalyzer(logging.WARNING)


@dataclass(frozen = True)
class Observable:
    """
    A class to implement an observable with `outcomes` distinguishable results indexed 0..outcomes-1.
    """

    id : str
    outcomes : int = 2
    party : str | None = None
    label : str | None = None


    def __post_init__(self) -> None:
        if not isinstance(self.id, str) or not self.id:
            raise InvalidScenarioError(f'Observable ids must be non-empty strings, got {self.id!r}')

        if not isinstance(self.outcomes, int) or self.outcomes < 2:
            raise InvalidScenarioError(f'Observable "{self.id}" must have at least 2 outcomes, got {self.outcomes!r}')


    @property
    def display_label(self) -> str:
        """ Property to retrieve the label to be displayed (the id when no label was given). """
        return self.label if self.label is not None else self.id


@dataclass(frozen = True)
class Scenario:
    """
    A class to implement a measurement scenario: its observables plus the pairs of compatible observables.

    Scenarios are immutable; the commutation graph and its maximal cliques (the contexts) are derived lazily.
    """

    observables : Tuple[Observable, ...]
    edges : FrozenSet[FrozenSet[str]] = field(default_factory = frozenset)


    def __post_init__(self) -> None:
        object.__setattr__(self, 'observables', tuple(self.observables))
        object.__setattr__(self, 'edges', frozenset(frozenset(edge) for edge in self.edges))

        ids = [observable.id for observable in self.observables]
        duplicates = sorted({identifier for identifier in ids if ids.count(identifier) > 1})

        if duplicates:
            raise InvalidScenarioError(f'Duplicate observable ids: {duplicates}')

        known = set(ids)

        for edge in self.edges:
            if len(edge) != 2:
                raise InvalidScenarioError(f'Self-loops are not allowed: {sorted(edge)}')

            unknown = sorted(edge - known)

            if unknown:
                raise InvalidScenarioError(f'Edge {sorted(edge)} references unknown observables {unknown}')


    @cached_property
    def ids(self) -> Tuple[str, ...]:
        """ Property to retrieve the observable ids in scenario order. """
        return tuple(observable.id for observable in self.observables)


    @cached_property
    def index(self) -> Dict[str, int]:
        """ Property to map every observable id to its position. """
        return {identifier : position for position, identifier in enumerate(self.ids)}


    @cached_property
    def cardinalities(self) -> Dict[str, int]:
        """ Property to map every observable id to its number of outcomes. """
        return {observable.id : observable.outcomes for observable in self.observables}


    @cached_property
    def graph(self) -> nx.Graph:
        """ Property to retrieve the commutation graph (vertices inserted in scenario order). """
        graph = nx.Graph()
        graph.add_nodes_from(self.ids)
        graph.add_edges_from(self.sorted_edges)
        return nx.freeze(graph)


    @cached_property
    def sorted_edges(self) -> Tuple[Tuple[str, str], ...]:
        """ Property to retrieve the edges as ordered pairs, sorted by observable positions. """
        return tuple(sorted((self.ordered(edge) for edge in self.edges), key = lambda edge : (self.index[edge[0]], self.index[edge[1]])))


    @cached_property
    def contexts(self) -> Tuple[Tuple[str, ...], ...]:
        """ Property to retrieve the maximal contexts (maximal cliques of the commutation graph). """
        return tuple(_GRAPH_ANALYZER.maximal_cliques(self.graph))


    def observable(self, identifier : str) -> Observable:
        """ Method to retrieve an observable by id. """
        try:
            return self.observables[self.index[identifier]]
        except KeyError as error:
            raise InvalidScenarioError(f'Unknown observable "{identifier}"') from error


    def ordered(self, identifiers : Iterable[str]) -> Tuple[str, ...]:
        """ Method to sort a set of observable ids by scenario order. """
        identifiers = list(identifiers)
        unknown = [identifier for identifier in identifiers if identifier not in self.index]

        if unknown:
            raise InvalidScenarioError(f'Unknown observables: {unknown}')

        return tuple(sorted(identifiers, key = self.index.__getitem__))


    def has_edge(self, first : str, second : str) -> bool:
        """ Method to check whether two observables are compatible. """
        return frozenset((first, second)) in self.edges


    def is_clique(self, identifiers : Iterable[str]) -> bool:
        """ Method to check whether a set of observables is jointly measurable. """
        identifiers = list(identifiers)
        return all(self.has_edge(first, second) for position, first in enumerate(identifiers) for second in identifiers[position + 1:])


    def outcome_cardinalities(self, identifiers : Iterable[str]) -> Tuple[int, ...]:
        """ Method to retrieve the outcome cardinalities of the given observables, in the given order. """
        return tuple(self.observable(identifier).outcomes for identifier in identifiers)


    def with_edges(self, new_edges : Iterable[Iterable[str]]) -> 'Scenario':
        """ Method to build a copy of the scenario with extra edges (already present edges are ignored). """
        return Scenario(self.observables, self.edges | frozenset(frozenset(edge) for edge in new_edges))
