"""
Module to implement the decomposition of two cycle expressions sharing observables into two induced cycles, each
holding exactly one contradiction edge.

Cycle G has vertices A1..An with edge e_t = (A_t, A_{t+1}) and its contradiction on e_n; cycle G' has vertices
A'1..A'm, its contradiction on e'_c. The shared pairs (i_t, j_t) identify A'_{j_t} with A_{i_t}.
"""


import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import networkx as nx

from monogamy_engine._utils.loggable_entity import LoggableEntity
from monogamy_engine.catalog.expression_library import ExpressionLibrary
from monogamy_engine.errors.config_errors import IllegalConfigurationError
from monogamy_engine.graphs.chordal_graph_analyzer import ChordalGraphAnalyzer
from monogamy_engine.monogamy.decomposition import Decomposition
from monogamy_engine.scenario.expression import Expression
from monogamy_engine.scenario.expression_composer import ExpressionComposer
from monogamy_engine.scenario.scenario import Observable, Scenario


FIRST_CASE : str = 'i'
SECOND_CASE : str = 'ii'


@dataclass(frozen = True)
class CyclePairLayout:
    """
    A class to implement the layout of two cycles sharing k >= 2 observables.
    """

    n : int
    m : int
    shared : Tuple[Tuple[int, int], ...]
    contradiction : int
    outcomes : int = 2


    def g_vertex(self, position : int) -> str:
        """ Method to name the vertex at a 1-based position of G. """
        return f'A{position}'


    def g_prime_vertex(self, position : int) -> str:
        """ Method to name the vertex at a 1-based position of G' (shared vertices keep their G name). """
        aliases = {j : i for i, j in self.shared}
        return self.g_vertex(aliases[position]) if position in aliases else f"A'{position}"


    @property
    def g_cycle(self) -> List[str]:
        """ Property to list the vertices of G in cyclic order. """
        return [self.g_vertex(position) for position in range(1, self.n + 1)]


    @property
    def g_prime_cycle(self) -> List[str]:
        """ Property to list the vertices of G' in cyclic order. """
        return [self.g_prime_vertex(position) for position in range(1, self.m + 1)]


    @property
    def case(self) -> str:
        """ Property to retrieve the case: "ii" when the G' contradiction lies between two shared vertices of G', else "i". """
        return SECOND_CASE if self.split_index is not None else FIRST_CASE


    @property
    def split_index(self) -> int | None:
        """ Property to retrieve the 0-based l with j_l <= c' < j_{l+1} (None in the first case). """
        j_positions = [j for _, j in self.shared]

        for index in range(len(j_positions) - 1):
            if j_positions[index] <= self.contradiction < j_positions[index + 1]:
                return index

        return None


@dataclass(frozen = True)
class CyclePair:
    """
    A class to implement a ready-to-certify cycle pair: scenario (with completion edges), combined expression and decomposition.
    """

    layout : CyclePairLayout
    scenario : Scenario
    expression : Expression
    decomposition : Decomposition
    completion_edges : Tuple[Tuple[str, str], ...]


class CycleDecomposer(LoggableEntity):
    """
    A class to implement the cycle-pair decomposition functionality of the monogamy engine.
    """


    def __init__(self, log_level : int = logging.WARNING) -> None:
        """
        Constructor method for the `CycleDecomposer` class.

        Args:
            log_level (int): the log level to be used for filtering logs in the runtime.
        """
        super().__init__(log_level)
        self.library = ExpressionLibrary(log_level)
        self.composer = ExpressionComposer(log_level)
        self.graph_analyzer = ChordalGraphAnalyzer(log_level)


    def layout(self, n : int, m : int, shared : Sequence[Tuple[int, int]], contradictions : Tuple[int, int] | None = None, outcomes : int = 2) -> CyclePairLayout:
        """
        Method to validate a cycle-pair configuration.

        Args:
            n (int): the length of G.
            m (int): the length of G'.
            shared (Sequence[Tuple[int, int]]): the aligned pairs (i, j), 1-based, with increasing i and j.
            contradictions (Tuple[int, int] | None): the contradiction positions in G (must be n) and G' (m when None).
            outcomes (int): the number of outcomes of every observable.

        Returns:
            The layout.
        """
        shared = tuple((int(i), int(j)) for i, j in shared)
        contradictions = (n, m) if contradictions is None else tuple(contradictions)

        if n < 3 or m < 3:
            raise IllegalConfigurationError(f'Both cycles need at least 3 observables, got n={n} and m={m}')

        if outcomes < 2:
            raise IllegalConfigurationError(f'Observables need at least 2 outcomes, got {outcomes}')

        if len(shared) < 2:
            raise IllegalConfigurationError(f'At least 2 shared observables are required, got {len(shared)}')

        i_positions, j_positions = [i for i, _ in shared], [j for _, j in shared]

        if any(not 1 <= i <= n for i in i_positions) or any(not 1 <= j <= m for j in j_positions):
            raise IllegalConfigurationError(f'Shared positions out of range: {shared}')

        if any(first >= second for first, second in zip(i_positions, i_positions[1:])) or any(first >= second for first, second in zip(j_positions, j_positions[1:])):
            raise IllegalConfigurationError(f'Shared positions must increase along both cycles: {shared}')

        if contradictions[0] != n:
            raise IllegalConfigurationError(f'The contradiction of G must sit on its closing edge e_{n}, got e_{contradictions[0]}')

        if not 1 <= contradictions[1] <= m:
            raise IllegalConfigurationError(f'The contradiction of G\' must lie in 1..{m}, got {contradictions[1]}')

        return CyclePairLayout(n, m, shared, contradictions[1], outcomes)


    def cycle_decomposition(self, n : int, m : int, shared : Sequence[Tuple[int, int]], contradictions : Tuple[int, int] | None = None) -> Decomposition:
        """
        Method to decompose I(n) + I(m) into two induced cycles, following the case of the G' contradiction.

        Args:
            n (int): the length of G.
            m (int): the length of G'.
            shared (Sequence[Tuple[int, int]]): the aligned pairs (i, j).
            contradictions (Tuple[int, int] | None): the contradiction positions in G and G'.

        Returns:
            The decomposition (terms ordered as e_1..e_n of G then e'_1..e'_m of G').
        """
        layout = self.layout(n, m, shared, contradictions)
        return self.__decompose(layout, self.__scenario(layout))


    def cycle_decomposition_d_outcome(self, n : int, m : int, d : int, shared : Sequence[Tuple[int, int]], contradiction : int | None = None) -> Decomposition:
        """
        Method to decompose two d-outcome cycle expressions, which is only possible in the first case.

        Args:
            n (int): the length of G.
            m (int): the length of G'.
            d (int): the number of outcomes.
            shared (Sequence[Tuple[int, int]]): the aligned pairs (i, j).
            contradiction (int | None): the contradiction position in G' (m when None).

        Returns:
            The decomposition.
        """
        layout = self.layout(n, m, shared, (n, m if contradiction is None else contradiction), d)

        self.__require_first_case(layout)

        return self.__decompose(layout, self.__scenario(layout))


    def build_cycle_pair(
            self,
            n : int,
            m : int,
            shared : Sequence[Tuple[int, int]],
            contradiction : int | None = None,
            outcomes : int = 2
        ) -> CyclePair:
        """
        Method to build the scenario, combined expression and decomposition of a cycle pair, adding the
        commutation relations that make both parts chordal.

        Args:
            n (int): the length of G.
            m (int): the length of G'.
            shared (Sequence[Tuple[int, int]]): the aligned pairs (i, j).
            contradiction (int | None): the contradiction position in G' (m when None).
            outcomes (int): 2 for the dichotomic cycles, d > 2 for the modular ones.

        Returns:
            The cycle pair.
        """
        self.logger.debug(f'Building cycle pair n={n}, m={m}, shared={list(shared)}')

        layout = self.layout(n, m, shared, (n, m if contradiction is None else contradiction), outcomes)

        if outcomes > 2:
            self.__require_first_case(layout)

        bare_scenario = self.__scenario(layout)
        decomposition = self.__decompose(layout, bare_scenario)

        extra_edges = self.completion_edges(bare_scenario, decomposition.parts)
        scenario = bare_scenario.with_edges(extra_edges)

        cycle_pair = CyclePair(layout, scenario, self.__expression(layout, scenario), decomposition, tuple(extra_edges))

        self.logger.debug(f'Built cycle pair ({layout.case}) with {len(extra_edges)} completion edges')

        return cycle_pair


    def completion_edges(self, scenario : Scenario, parts : Sequence[Sequence[str]]) -> List[Tuple[str, str]]:
        """
        Method to find extra commutation relations making every part induce a chordal subgraph.

        A non-chordal part first receives a fan from its first vertex not shared with another part; when the fan
        does not suffice it is triangulated by MCS-M, and as a last resort completed to a clique.

        Args:
            scenario (Scenario): the scenario.
            parts (Sequence[Sequence[str]]): the vertex subsets.

        Returns:
            The added edges, sorted by scenario order.
        """
        graph = nx.Graph(scenario.graph)
        added : List[Tuple[str, str]] = []

        for _ in range(len(parts) + 1):
            pending = [part for part in parts if not self.graph_analyzer.is_chordal(graph.subgraph(part))]

            if not pending:
                break

            for position, part in enumerate(parts):
                if part not in pending:
                    continue

                subgraph = nx.Graph(graph.subgraph(part))

                if self.graph_analyzer.is_chordal(subgraph):
                    continue

                elsewhere = {vertex for index, other in enumerate(parts) if index != position for vertex in other}
                apex = next((vertex for vertex in part if vertex not in elsewhere), part[0])
                fan = [(apex, vertex) for vertex in part if vertex != apex and not subgraph.has_edge(apex, vertex)]
                subgraph.add_edges_from(fan)

                if self.graph_analyzer.is_chordal(subgraph):
                    new_edges = fan
                else:
                    triangulated, _ = nx.complete_to_chordal_graph(nx.Graph(graph.subgraph(part)))
                    new_edges = [edge for edge in triangulated.edges if not graph.has_edge(*edge)]

                graph.add_edges_from(new_edges)
                added.extend(new_edges)
        else:
            for part in parts:
                if self.graph_analyzer.is_chordal(graph.subgraph(part)):
                    continue

                clique_edges = [(first, second) for position, first in enumerate(part) for second in part[position + 1:] if not graph.has_edge(first, second)]
                graph.add_edges_from(clique_edges)
                added.extend(clique_edges)

        return sorted({tuple(scenario.ordered(edge)) for edge in added}, key = lambda edge : (scenario.index[edge[0]], scenario.index[edge[1]]))


    def __require_first_case(self, layout : CyclePairLayout) -> None:
        """
        Private method to reject d-outcome layouts whose G' contradiction lies between two shared vertices.
        """
        if layout.case != FIRST_CASE:
            self.logger.error('The d-outcome decomposition only exists in the first case')
            raise IllegalConfigurationError('Directed d-outcome cycles can only be decomposed when the G\' contradiction lies outside the shared arc (case i)')


    def __scenario(self, layout : CyclePairLayout) -> Scenario:
        """
        Private method to build the scenario holding both cycles (no extra edges).
        """
        observables = [Observable(vertex, layout.outcomes) for vertex in layout.g_cycle]
        observables.extend(Observable(vertex, layout.outcomes) for vertex in layout.g_prime_cycle if vertex not in layout.g_cycle)

        edges = self.library.cycle_edges(layout.g_cycle) + self.library.cycle_edges(layout.g_prime_cycle)

        return Scenario(tuple(observables), frozenset(frozenset(edge) for edge in edges))


    def __expression(self, layout : CyclePairLayout, scenario : Scenario) -> Expression:
        """
        Private method to build the combined expression: the terms of G followed by the terms of G'.
        """
        if layout.outcomes == 2:
            first = self.library.cycle(scenario, layout.g_cycle, layout.n, f'I({layout.n})')
            second = self.library.cycle(scenario, layout.g_prime_cycle, layout.contradiction, f"I'({layout.m})")
        else:
            first = self.library.modular_cycle(scenario, layout.g_cycle, layout.outcomes, layout.n, f'I({layout.n};d={layout.outcomes})')
            second = self.library.modular_cycle(scenario, layout.g_prime_cycle, layout.outcomes, layout.contradiction, f"I'({layout.m};d={layout.outcomes})")

        return self.composer.combine([first, second], [1, 1], f'{first.name} + {second.name}')


    def __decompose(self, layout : CyclePairLayout, scenario : Scenario) -> Decomposition:
        """
        Private method to assign every edge of both cycles to one of the two parts.
        """
        i_positions = [i for i, _ in layout.shared]
        j_positions = [j for _, j in layout.shared]
        split = layout.split_index

        # Step 1: Assigning the edges of G, then those of G'
        if split is None:
            g_parts = [1 if on_arc(t, i_positions[0], i_positions[-1]) else 0 for t in range(1, layout.n + 1)]
        else:
            g_parts = [0 if on_arc(t, i_positions[split], i_positions[split + 1]) else 1 for t in range(1, layout.n + 1)]

        g_prime_parts = [0 if on_arc(t, j_positions[0], j_positions[-1]) else 1 for t in range(1, layout.m + 1)]
        assignment = tuple(g_parts + g_prime_parts)

        # Step 2: Checking that each part holds exactly one contradiction
        contradiction_parts = (assignment[layout.n - 1], assignment[layout.n + layout.contradiction - 1])

        if sorted(contradiction_parts) != [0, 1]:
            raise IllegalConfigurationError(f'The configuration puts both contradictions in part {contradiction_parts[0]}')

        # Step 3: Collecting the vertices of every part
        edges = self.library.cycle_edges(layout.g_cycle) + self.library.cycle_edges(layout.g_prime_cycle)
        vertices : Dict[int, set] = {0 : set(), 1 : set()}

        for edge, part in zip(edges, assignment):
            vertices[part].update(edge)

        return Decomposition(
            (scenario.ordered(vertices[0]), scenario.ordered(vertices[1])),
            assignment,
            f'cycle pair ({layout.case})'
        )


def on_arc(edge_position : int, start : int, end : int) -> bool:
    """
    Function to check whether edge e_t (from vertex t to t + 1) lies on the forward arc from vertex `start` to vertex `end`.
    """
    if start < end:
        return start <= edge_position < end

    return edge_position >= start or edge_position < end
