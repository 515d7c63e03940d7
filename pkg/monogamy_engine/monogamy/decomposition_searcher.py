"""
Module to implement the exhaustive search of chordal decompositions of an expression.

Terms are put in a canonical order and partitioned block by block, every block being led by the smallest
unassigned term, which enumerates each set partition exactly once. A block is abandoned as soon as its vertex set
stops being chordal (induced supersets of a non-chordal graph are non-chordal), and a branch is abandoned when the
closed blocks plus the classical bound of the remaining terms already exceed the classical bound of the whole
expression (a sum of classical bounds never falls below the classical bound of the sum).
"""


import sys
from typing import Dict, FrozenSet, Iterator, List, Sequence, Set, Tuple

from pandas import DataFrame

from monogamy_engine._calculator import Calculator
from monogamy_engine._utils.rationals import format_fraction
from monogamy_engine.bounds.classical_bound_calculator import ClassicalBoundCalculator
from monogamy_engine.configuration.engine_config import EngineConfig
from monogamy_engine.errors.operational_errors import BudgetExceededError
from monogamy_engine.graphs.chordal_graph_analyzer import ChordalGraphAnalyzer
from monogamy_engine.monogamy.decomposition import Decomposition, MonogamyCertificate, SearchOutcome, SearchTrace
from monogamy_engine.monogamy.decomposition_verifier import DecompositionVerifier
from monogamy_engine.scenario.expression import Expression


class DecompositionSearcher(Calculator):
    """
    A class to implement the decomposition search functionality of the monogamy engine.
    """


    def __init__(self, config : EngineConfig | None = None, log_level : int | None = None, show_progress : bool = False) -> None:
        """
        Constructor method for the `DecompositionSearcher` class.

        Args:
            config (EngineConfig | None): the engine configuration (search budget and default part limit).
            log_level (int | None): the log level to be used for filtering logs in the runtime.
            show_progress (bool): whether the search reports progress over the first block.
        """
        super().__init__(config, log_level, show_progress)
        self.classical_calculator = ClassicalBoundCalculator(self.config, self.logger.level)
        self.verifier = DecompositionVerifier(self.config, self.logger.level, self.classical_calculator)
        self.graph_analyzer = ChordalGraphAnalyzer(self.logger.level)


    def search_decomposition(self, expression : Expression, max_parts : int | None = None) -> SearchOutcome:
        """
        Method to search exhaustively for a certified decomposition with at most `max_parts` parts.

        Args:
            expression (Expression): the expression.
            max_parts (int | None): the part limit (configured limit when None, number of terms when 0).

        Returns:
            The certified decomposition, or no decomposition after an exhausted search, with the pruning trace.
        """
        max_parts = self.config.search_max_parts if max_parts is None else max_parts
        max_parts = len(expression.terms) if max_parts <= 0 else max_parts

        return self.calculate(expression, max_parts)


    def build_new_results(self, expression : Expression, max_parts : int) -> SearchOutcome:
        """
        Method to run the search from scratch.

        Args:
            expression (Expression): the expression.
            max_parts (int): the part limit.

        Returns:
            The search outcome.
        """
        self.logger.debug(f'Searching decompositions of "{expression.name}" into at most {max_parts} parts')

        normalized = expression.normalized()
        scenario = normalized.scenario
        term_count = len(normalized.terms)

        # Step 1: Ordering the terms canonically
        canonical = sorted(
            range(term_count),
            key = lambda position : (
                [scenario.index[identifier] for identifier in normalized.terms[position].support],
                normalized.terms[position].coefficient,
                normalized.terms[position].values,
            )
        )
        matrix, _ = self.classical_calculator.term_value_matrix(normalized)
        matrix = matrix[canonical] if term_count else matrix
        vertices = [frozenset(normalized.terms[position].support) for position in canonical]

        self.__classical_cache : Dict[int, int] = {}
        self.__chordal_cache : Dict[FrozenSet[str], bool] = {}
        self.__matrix = matrix
        self.__vertices = vertices
        self.__scenario = scenario
        self.__failed : Set[Tuple[int, int, int]] = set()
        self.__counters : Dict[str, int] = dict.fromkeys(
            ('nodes_visited', 'blocks_enumerated', 'pruned_non_chordal', 'pruned_bound', 'pruned_max_parts', 'memo_hits', 'partitions_completed'),
            0
        )

        full_mask = (1 << term_count) - 1
        omega = self.__classical(full_mask)

        # Step 2: Exploring the block-by-block partition tree
        previous_limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(previous_limit, 10 * term_count + 1000))

        try:
            blocks = self.__solve(full_mask, omega, max_parts, top_level = True)
        finally:
            sys.setrecursionlimit(previous_limit)

        trace = SearchTrace(**self.__counters, exhausted = blocks is None)

        # Step 3: Turning the blocks into a verified decomposition
        if blocks is None:
            self.logger.info(f'No chordal decomposition of "{expression.name}" into at most {max_parts} parts exists ({trace.nodes_visited} nodes visited)')
            return SearchOutcome(expression, None, None, trace, max_parts)

        parts = []
        assignment = [0] * term_count

        for part_index, block in enumerate(blocks):
            members = [canonical[bit] for bit in range(term_count) if block >> bit & 1]
            parts.append(scenario.ordered({identifier for member in members for identifier in normalized.terms[member].support}))

            for member in members:
                assignment[member] = part_index

        decomposition = Decomposition(tuple(parts), tuple(assignment), f'{expression.name} search')
        certificate = self.verifier.verify_decomposition(expression, decomposition)

        if not certificate.certified:
            raise ArithmeticError(f'The decomposition found for "{expression.name}" does not verify: {certificate.reason}')

        certificate = MonogamyCertificate(
            certificate.expression, certificate.decomposition, certificate.omega_c, certificate.parts,
            certificate.verdict, certificate.reason, certificate.reduced_bound_kind, trace
        )

        self.logger.info(f'Found a {len(parts)}-part chordal decomposition of "{expression.name}"')

        return SearchOutcome(expression, decomposition, certificate, trace, max_parts)


    def audit_non_existence(self, expression : Expression, max_parts : int | None = None) -> Tuple[int, int]:
        """
        Method to re-check a search by verifying every set partition of the terms, enumerated independently as
        restricted-growth strings.

        Args:
            expression (Expression): the expression (small term counts only).
            max_parts (int | None): the part limit (number of terms when None or 0).

        Returns:
            The number of partitions checked and the number of them that verify as CERTIFIED.
        """
        term_count = len(expression.terms)
        max_parts = term_count if not max_parts else max_parts
        checked = certified = 0

        for growth_string in restricted_growth_strings(term_count, max_parts):
            checked += 1

            if checked > self.config.search_budget:
                raise BudgetExceededError(f'Auditing "{expression.name}" exceeds the budget', checked, self.config.search_budget)

            part_count = max(growth_string) + 1 if growth_string else 0
            parts = [
                expression.scenario.ordered({identifier for position, label in enumerate(growth_string) if label == part for identifier in expression.terms[position].support})
                for part in range(part_count)
            ]
            decomposition = Decomposition(tuple(parts), tuple(growth_string), 'audit')

            if self.verifier.verify_decomposition(expression, decomposition).certified:
                certified += 1

        return checked, certified


    def to_pandas_dataframe(self) -> DataFrame:
        """
        Method to transform the last search outcome into a Pandas DataFrame (one row per trace counter).

        Returns:
            A Pandas DataFrame with the verdict and the pruning statistics.
        """
        outcome : SearchOutcome = self.calculation_results
        rows = [{'expression' : outcome.expression.name, 'statistic' : 'verdict', 'value' : 'FOUND' if outcome.found else 'NONE'}]
        rows.extend({'expression' : outcome.expression.name, 'statistic' : key, 'value' : str(value)} for key, value in outcome.trace.as_dict().items())

        if outcome.certificate is not None:
            rows.append({'expression' : outcome.expression.name, 'statistic' : 'omega_c', 'value' : format_fraction(outcome.certificate.omega_c)})

        return DataFrame(rows)


    def __solve(self, remaining : int, slack : int, parts_left : int, top_level : bool = False) -> List[int] | None:
        """
        Private method to split `remaining` into at most `parts_left` chordal blocks whose classical bounds add up to `slack`.
        """
        self.__counters['nodes_visited'] += 1

        if self.__counters['nodes_visited'] > self.config.search_budget:
            self.logger.error('The decomposition search exceeded its budget')
            raise BudgetExceededError('The decomposition search exceeds the budget', self.__counters['nodes_visited'], self.config.search_budget)

        if remaining == 0:
            self.__counters['partitions_completed'] += 1
            return [] if slack == 0 else None

        if parts_left == 0:
            self.__counters['pruned_max_parts'] += 1
            return None

        key = (remaining, slack, parts_left)

        if key in self.__failed:
            self.__counters['memo_hits'] += 1
            return None

        leader = (remaining & -remaining).bit_length() - 1
        others = [bit for bit in range(leader + 1, self.__matrix.shape[0]) if remaining >> bit & 1]
        blocks = self.__blocks(others, 0, 1 << leader, self.__vertices[leader])

        for block in (self.progress(blocks, None, 'first block') if top_level else blocks):
            self.__counters['blocks_enumerated'] += 1
            rest = remaining & ~block
            block_value = self.__classical(block)

            if block_value + self.__classical(rest) > slack:
                self.__counters['pruned_bound'] += 1
                continue

            tail = self.__solve(rest, slack - block_value, parts_left - 1)

            if tail is not None:
                return [block] + tail

        self.__failed.add(key)
        return None


    def __blocks(self, others : Sequence[int], position : int, mask : int, vertices : FrozenSet[str]) -> Iterator[int]:
        """
        Private method to enumerate the chordal blocks extending `mask` with terms from `others[position:]`.
        """
        if position == len(others):
            yield mask
            return

        candidate = others[position]
        extended = vertices | self.__vertices[candidate]

        if self.__is_chordal(extended):
            yield from self.__blocks(others, position + 1, mask | 1 << candidate, extended)
        else:
            self.__counters['pruned_non_chordal'] += 1

        yield from self.__blocks(others, position + 1, mask, vertices)


    def __classical(self, mask : int) -> int:
        """
        Private method to compute (and memoize) the scaled classical bound of a set of canonical terms.
        """
        if mask not in self.__classical_cache:
            rows = [bit for bit in range(self.__matrix.shape[0]) if mask >> bit & 1]
            self.__classical_cache[mask] = int(self.__matrix[rows].sum(axis = 0).max()) if rows else 0

        return self.__classical_cache[mask]


    def __is_chordal(self, vertices : FrozenSet[str]) -> bool:
        """
        Private method to check (and memoize) the chordality of the subgraph induced by a vertex set.
        """
        if vertices not in self.__chordal_cache:
            subgraph = self.graph_analyzer.induced_subgraph(self.__scenario.graph, vertices)
            self.__chordal_cache[vertices] = self.graph_analyzer.is_chordal(subgraph)

        return self.__chordal_cache[vertices]


def restricted_growth_strings(length : int, max_parts : int) -> Iterator[Tuple[int, ...]]:
    """
    Function to enumerate the restricted-growth strings of a given length with labels below `max_parts`
    (one per set partition into at most `max_parts` blocks).
    """
    if length == 0:
        yield ()
        return

    def extend(prefix : List[int], largest : int) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == length:
            yield tuple(prefix)
            return

        for label in range(min(largest + 2, max_parts)):
            prefix.append(label)
            yield from extend(prefix, max(largest, label))
            prefix.pop()

    yield from extend([0], 0)
