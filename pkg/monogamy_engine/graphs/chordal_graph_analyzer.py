"""
Module to implement the chordal-graph routines of the monogamy engine: chordality recognition, elimination
orderings, maximal cliques, reduced clique graphs and maximal clique trees.
"""


import itertools
import logging
from typing import Dict, Iterable, List, Sequence, Set, Tuple

import networkx as nx

from monogamy_engine._utils.loggable_entity import LoggableEntity
from monogamy_engine.errors.graph_errors import NonChordalGraphError, UnknownVertexError
from monogamy_engine.graphs.clique_tree import Clique, CliqueTree, EliminationOrdering, Vertex


class ChordalGraphAnalyzer(LoggableEntity):
    """
    A class to implement the chordal-graph analysis functionality of the monogamy engine.

    Graphs are plain `networkx.Graph` instances; the insertion order of their vertices is used
    for every tie-break, so results are reproducible.
    """


    def __init__(self, log_level : int = logging.WARNING) -> None:
        """
        Constructor method for the `ChordalGraphAnalyzer` class.

        Args:
            log_level (int): the log level to be used for filtering logs in the runtime.
        """
        super().__init__(log_level)


    def mcs_ordering(self, graph : nx.Graph) -> EliminationOrdering:
        """
        Method to compute an elimination ordering by maximum cardinality search.

        The reverse of the visiting order is returned; it is perfect if and only if the graph is chordal.

        Args:
            graph (nx.Graph): the graph to be ordered.

        Returns:
            The elimination ordering, flagged as perfect or not.
        """
        self.logger.debug('Calculating maximum cardinality search ordering')

        rank = self.__vertex_rank(graph)
        weights : Dict[Vertex, int] = {vertex : 0 for vertex in graph.nodes}
        visited : List[Vertex] = []

        # Step 1: Visiting the vertex with most visited neighbours (earliest vertex on ties)
        while weights:
            vertex = max(weights, key = lambda candidate : (weights[candidate], -rank[candidate]))
            del weights[vertex]
            visited.append(vertex)

            for neighbour in graph.neighbors(vertex):
                if neighbour in weights:
                    weights[neighbour] += 1

        # Step 2: Checking the reversed visit order for the perfect elimination property
        order = tuple(reversed(visited))
        ordering = EliminationOrdering(order, self.__is_perfect(graph, order))

        self.logger.debug('Calculated maximum cardinality search ordering')

        return ordering


    def is_chordal(self, graph : nx.Graph) -> bool:
        """
        Method to check whether every cycle of length four or more of the graph has a chord.

        Args:
            graph (nx.Graph): the graph to be checked.

        Returns:
            True if the graph is chordal.
        """
        return self.mcs_ordering(graph).is_perfect


    def find_chordless_cycle(self, graph : nx.Graph) -> Tuple[Vertex, ...] | None:
        """
        Method to find an induced cycle of length at least four.

        Args:
            graph (nx.Graph): the graph to be inspected.

        Returns:
            The vertices of a chordless cycle in cyclic order, or None when the graph is chordal.
        """
        if self.is_chordal(graph):
            return None

        for cycle in nx.chordless_cycles(graph):
            if len(cycle) >= 4:
                return tuple(cycle)

        return None


    def maximal_cliques(self, graph : nx.Graph) -> List[Clique]:
        """
        Method to enumerate the inclusion-maximal cliques of a graph.

        A perfect elimination scan is used for chordal graphs and Bron-Kerbosch with pivoting otherwise.

        Args:
            graph (nx.Graph): the graph whose maximal cliques will be enumerated.

        Returns:
            The maximal cliques (vertices in graph order), sorted by their vertex positions.
        """
        self.logger.debug('Calculating maximal cliques')

        rank = self.__vertex_rank(graph)
        ordering = self.mcs_ordering(graph)

        if ordering.is_perfect:
            position = ordering.position()
            candidates = [
                frozenset([vertex, *(neighbour for neighbour in graph.neighbors(vertex) if position[neighbour] > position[vertex])])
                for vertex in ordering.order
            ]
            candidates.sort(key = len, reverse = True)

            cliques : List[frozenset] = []
            for candidate in candidates:
                if not any(candidate <= kept for kept in cliques):
                    cliques.append(candidate)
        else:
            cliques = [frozenset(clique) for clique in nx.find_cliques(graph)]

        sorted_cliques = sorted(
            (tuple(sorted(clique, key = rank.__getitem__)) for clique in cliques),
            key = lambda clique : tuple(rank[vertex] for vertex in clique)
        )

        self.logger.debug('Calculated maximal cliques')

        return sorted_cliques


    def reduced_clique_graph(self, graph : nx.Graph) -> nx.Graph:
        """
        Method to compute the reduced clique graph of a chordal graph.

        Two maximal cliques are joined when their intersection is non-empty and separates them; every edge
        carries the intersection as `separator` and its size as `weight`.

        Args:
            graph (nx.Graph): the chordal graph.

        Returns:
            A graph whose nodes are the maximal cliques (as tuples).
        """
        self.__require_chordal(graph)
        self.logger.debug('Calculating reduced clique graph')

        rank = self.__vertex_rank(graph)
        cliques = self.maximal_cliques(graph)

        reduced_graph = nx.Graph()
        reduced_graph.add_nodes_from(cliques)

        for first, second in itertools.combinations(cliques, 2):
            separator = set(first) & set(second)

            if not separator:
                continue

            # Step 1: Checking that removing the intersection disconnects the two clique remainders
            remainder = graph.subgraph(vertex for vertex in graph.nodes if vertex not in separator)
            first_rep = next(vertex for vertex in first if vertex not in separator)
            second_rep = next(vertex for vertex in second if vertex not in separator)

            if not nx.has_path(remainder, first_rep, second_rep):
                reduced_graph.add_edge(
                    first,
                    second,
                    weight = len(separator),
                    separator = tuple(sorted(separator, key = rank.__getitem__))
                )

        self.logger.debug('Calculated reduced clique graph')

        return reduced_graph


    def clique_tree(self, graph : nx.Graph) -> CliqueTree:
        """
        Method to build a maximal clique tree as a maximum-weight spanning forest of the reduced clique graph.

        Args:
            graph (nx.Graph): the chordal graph.

        Returns:
            The clique tree, with edges labelled by their separators.
        """
        self.logger.debug('Calculating clique tree')

        reduced_graph = self.reduced_clique_graph(graph)
        cliques = list(reduced_graph.nodes)
        index = {clique : position for position, clique in enumerate(cliques)}

        spanning_forest = nx.maximum_spanning_tree(reduced_graph, weight = 'weight', algorithm = 'kruskal')

        edges = sorted(tuple(sorted((index[u], index[v]))) for u, v in spanning_forest.edges)
        labels = tuple(reduced_graph.edges[cliques[u], cliques[v]]['separator'] for u, v in edges)

        tree = CliqueTree(tuple(cliques), tuple(edges), labels)

        self.logger.debug('Calculated clique tree')

        return tree


    def induced_subgraph(self, graph : nx.Graph, vertices : Iterable[Vertex]) -> nx.Graph:
        """
        Method to compute the subgraph induced by a vertex subset.

        Args:
            graph (nx.Graph): the graph.
            vertices (Iterable[Vertex]): the vertex subset.

        Returns:
            A copy of the induced subgraph (vertices kept in graph order).
        """
        vertices = list(vertices)
        unknown = [vertex for vertex in vertices if vertex not in graph]

        if unknown:
            self.logger.error(f'Unknown vertices requested: {unknown}')
            raise UnknownVertexError(f'Vertices not present in the graph: {unknown}')

        return graph.subgraph(vertices).copy()


    def is_minimal_separator(self, graph : nx.Graph, separator : Sequence[Vertex], first : Vertex, second : Vertex) -> bool:
        """
        Method to check that `separator` separates `first` from `second` and that no proper subset does.

        Args:
            graph (nx.Graph): the graph.
            separator (Sequence[Vertex]): the candidate separator.
            first (Vertex): a vertex on one side.
            second (Vertex): a vertex on the other side.

        Returns:
            True if the separator is a minimal (first, second)-separator.
        """
        def separates(vertices : Set[Vertex]) -> bool:
            remainder = graph.subgraph(vertex for vertex in graph.nodes if vertex not in vertices)
            return not nx.has_path(remainder, first, second)

        separator = set(separator)

        if not separates(separator):
            return False

        return all(not separates(separator - {vertex}) for vertex in separator)


    def __require_chordal(self, graph : nx.Graph) -> None:
        """
        Private method to raise a `NonChordalGraphError` (with a chordless cycle) for non-chordal input.
        """
        if not self.is_chordal(graph):
            witness = self.find_chordless_cycle(graph)
            self.logger.error('A chordal graph was required')
            raise NonChordalGraphError('The graph is not chordal', [str(vertex) for vertex in witness] if witness else None)


    def __vertex_rank(self, graph : nx.Graph) -> Dict[Vertex, int]:
        """
        Private method to map every vertex to its insertion position.
        """
        return {vertex : position for position, vertex in enumerate(graph.nodes)}


    def __is_perfect(self, graph : nx.Graph, order : Tuple[Vertex, ...]) -> bool:
        """
        Private method to check the perfect elimination property of an ordering.
        """
        position = {vertex : index for index, vertex in enumerate(order)}

        for vertex in order:
            later = [neighbour for neighbour in graph.neighbors(vertex) if position[neighbour] > position[vertex]]

            if not later:
                continue

            follower = min(later, key = position.__getitem__)
            follower_neighbours = set(graph.neighbors(follower))

            if any(neighbour != follower and neighbour not in follower_neighbours for neighbour in later):
                return False

        return True
