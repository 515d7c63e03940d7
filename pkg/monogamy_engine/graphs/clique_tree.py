"""
Module to implement the data structures produced by the chordal-graph routines.
"""


from dataclasses import dataclass
from typing import Dict, Hashable, List, Set, Tuple

import networkx as nx


Vertex = Hashable
Clique = Tuple[Vertex, ...]


@dataclass(frozen = True)
class EliminationOrdering:
    """
    A class to implement a vertex elimination ordering, flagged as perfect when every vertex's later neighbours form a clique.
    """

    order : Tuple[Vertex, ...]
    is_perfect : bool


    def position(self) -> Dict[Vertex, int]:
        """ Method to map every vertex to its position in the ordering. """
        return {vertex : index for index, vertex in enumerate(self.order)}


@dataclass(frozen = True)
class CliqueTree:
    """
    A class to implement a maximal clique tree (a forest when the graph is disconnected).

    Nodes are the maximal cliques, edges are pairs of node indices and every edge is labelled
    with the separator shared by its endpoints.
    """

    nodes : Tuple[Clique, ...]
    edges : Tuple[Tuple[int, int], ...]
    labels : Tuple[Clique, ...]


    @property
    def separators(self) -> Tuple[Clique, ...]:
        """ Property to retrieve the edge labels (minimal separators). """
        return self.labels


    def to_networkx(self) -> nx.Graph:
        """
        Method to convert the clique tree into a `networkx` graph over node indices.
        """
        tree = nx.Graph()
        tree.add_nodes_from((index, {'clique' : clique}) for index, clique in enumerate(self.nodes))
        tree.add_edges_from((u, v, {'separator' : label}) for (u, v), label in zip(self.edges, self.labels))
        return tree


    def running_intersection_holds(self) -> bool:
        """
        Method to check that, for every vertex, the nodes containing it induce a connected subtree.
        """
        tree = self.to_networkx()
        vertices : Set[Vertex] = {vertex for clique in self.nodes for vertex in clique}

        for vertex in vertices:
            holders = [index for index, clique in enumerate(self.nodes) if vertex in clique]

            if not nx.is_connected(tree.subgraph(holders)):
                return False

        return all(set(label) == set(self.nodes[u]) & set(self.nodes[v]) for (u, v), label in zip(self.edges, self.labels)) \
            and nx.is_forest(tree)


    def traversal(self) -> List[Tuple[int, int | None]]:
        """
        Method to list the nodes in breadth-first order, each one with its parent (None for component roots).
        """
        tree = self.to_networkx()
        visited : Set[int] = set()
        ordered : List[Tuple[int, int | None]] = []

        for root in range(len(self.nodes)):
            if root in visited:
                continue

            visited.add(root)
            ordered.append((root, None))

            for parent, child in nx.bfs_edges(tree, root, sort_neighbors = sorted):
                visited.add(child)
                ordered.append((child, parent))

        return ordered


    def separator_between(self, u : int, v : int) -> Clique:
        """ Method to retrieve the label of the tree edge joining nodes `u` and `v`. """
        for (a, b), label in zip(self.edges, self.labels):
            if {a, b} == {u, v}:
                return label

        raise KeyError(f'No clique tree edge between nodes {u} and {v}')
