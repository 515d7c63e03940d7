from fractions import Fraction

import numpy as np
import pytest

from monogamy_engine.behaviors.behavior import Behavior
from monogamy_engine.behaviors.behavior_analyzer import BehaviorAnalyzer
from monogamy_engine.configuration.engine_config import EngineConfig
from monogamy_engine.errors.config_errors import IllegalConfigurationError
from monogamy_engine.errors.scenario_errors import InvalidDecompositionError
from monogamy_engine.monogamy.cycle_decomposer import FIRST_CASE, SECOND_CASE, CycleDecomposer, on_arc
from monogamy_engine.monogamy.decomposition import Decomposition, Verdict
from monogamy_engine.monogamy.decomposition_searcher import DecompositionSearcher, restricted_growth_strings
from monogamy_engine.monogamy.decomposition_verifier import DecompositionVerifier
from monogamy_engine.scenario.expression_composer import ExpressionComposer

from tests.conftest import random_edge_expression, relabel_expression


@pytest.fixture
def chsh_pair(builder, library):
    scenario = builder.build_bell_scenario([
        ('A', builder.dichotomic('A1', 'A2')),
        ('B', builder.dichotomic('B1', 'B2')),
        ('C', builder.dichotomic('C1', 'C2')),
    ])
    chsh_ab = library.chsh(scenario, ('A1', 'A2'), ('B1', 'B2'), 'CHSH_AB')
    chsh_ac = library.chsh(scenario, ('A1', 'A2'), ('C1', 'C2'), 'CHSH_AC')

    return ExpressionComposer().combine([chsh_ab, chsh_ac], [1, 1])


@pytest.fixture
def verifier(config) -> DecompositionVerifier:
    return DecompositionVerifier(config)


class TestDecompositionVerifier:

    def test_two_chordal_parts_certify(self, chsh_pair, verifier):
        decomposition = Decomposition.from_parts(chsh_pair, (('A1', 'A2', 'B1', 'C2'), ('A1', 'A2', 'B2', 'C1')))
        certificate = verifier.verify_decomposition(chsh_pair, decomposition)

        assert certificate.verdict is Verdict.CERTIFIED
        assert certificate.omega_c == 4
        assert [part.reduced_value for part in certificate.parts] == [2, 2]
        assert all(part.chordal for part in certificate.parts)


    def test_chordless_part_fails(self, chsh_pair, verifier):
        decomposition = Decomposition.from_parts(chsh_pair, (('A1', 'A2', 'B1', 'B2'), ('A1', 'A2', 'C1', 'C2')))
        certificate = verifier.verify_decomposition(chsh_pair, decomposition)

        assert certificate.verdict is Verdict.FAILED
        assert 'not chordal' in certificate.reason
        assert len(certificate.parts[0].chordless_cycle) == 4


    def test_part_sum_above_the_classical_bound_fails(self, chsh_pair, verifier):
        decomposition = Decomposition.from_parts(
            chsh_pair,
            (('A1', 'B1', 'C1'), ('A2', 'B1', 'C1'), ('A1', 'B2', 'C2'), ('A2', 'B2', 'C2'))
        )
        certificate = verifier.verify_decomposition(chsh_pair, decomposition)

        assert certificate.verdict is Verdict.FAILED
        assert certificate.part_sum > certificate.omega_c


    def test_misplaced_term_fails(self, chsh_pair, verifier):
        parts = (('A1', 'A2', 'B1', 'C2'), ('A1', 'A2', 'B2', 'C1'))
        assignment = list(Decomposition.from_parts(chsh_pair, parts).assignment)
        assignment[0] = 1
        certificate = verifier.verify_decomposition(chsh_pair, Decomposition(parts, tuple(assignment)))

        assert certificate.verdict is Verdict.FAILED
        assert 'term 0' in certificate.reason


    def test_assignment_must_cover_every_term(self, chsh_pair, verifier):
        with pytest.raises(InvalidDecompositionError):
            verifier.verify_decomposition(chsh_pair, Decomposition((('A1', 'B1'),), (0,)))


    def test_terms_outside_every_part_are_rejected(self, chsh_pair):
        with pytest.raises(InvalidDecompositionError):
            Decomposition.from_parts(chsh_pair, (('A1', 'B1', 'C1'),))


    def test_no_disturbance_boxes_respect_the_certified_bound(self, chsh_pair, verifier, nd_calculator):
        decomposition = Decomposition.from_parts(chsh_pair, (('A1', 'A2', 'B1', 'C2'), ('A1', 'A2', 'B2', 'C1')))
        certificate = verifier.verify_decomposition(chsh_pair, decomposition)
        rng = np.random.default_rng(11)
        analyzer = BehaviorAnalyzer()

        vertices = [nd_calculator.nd_max(random_edge_expression(rng, chsh_pair.scenario, f'objective {k}')).witness for k in range(10)]
        mixtures = []

        for k in range(10):
            first, second = (vertices[int(index)] for index in rng.choice(len(vertices), 2, replace = False))
            weight = Fraction(int(rng.integers(1, 10)), 10)
            tables = tuple(
                tuple(weight * a + (1 - weight) * b for a, b in zip(first_table, second_table))
                for first_table, second_table in zip(first.tables, second.tables)
            )
            mixtures.append(Behavior(first.scenario, first.contexts, tables, f'mixture {k}'))

        assert certificate.certified

        for box in vertices + mixtures:
            assert analyzer.is_no_disturbance(box).holds
            assert analyzer.evaluate(chsh_pair, box) <= certificate.omega_c


    @pytest.mark.parametrize('parts', [
        (('A1', 'A2', 'B1', 'C2'), ('A1', 'A2', 'B2', 'C1')),
        (('A1', 'A2', 'B1', 'B2'), ('A1', 'A2', 'C1', 'C2')),
    ])
    def test_verdict_does_not_depend_on_part_order_or_labels(self, chsh_pair, verifier, parts):
        decomposition = Decomposition.from_parts(chsh_pair, parts)
        baseline = verifier.verify_decomposition(chsh_pair, decomposition)

        swapped = Decomposition(decomposition.parts[::-1], tuple(1 - holder for holder in decomposition.assignment))
        relabeled, names = relabel_expression(np.random.default_rng(3), chsh_pair)
        renamed = Decomposition(
            tuple(relabeled.scenario.ordered(names[identifier] for identifier in part) for part in decomposition.parts),
            decomposition.assignment
        )

        for expression, candidate in ((chsh_pair, swapped), (relabeled, renamed)):
            certificate = verifier.verify_decomposition(expression, candidate)

            assert certificate.verdict is baseline.verdict
            assert certificate.omega_c == baseline.omega_c
            assert sorted(part.reduced_value for part in certificate.parts) == sorted(part.reduced_value for part in baseline.parts)


class TestDecompositionSearcher:

    def test_restricted_growth_strings_count_set_partitions(self):
        assert len(list(restricted_growth_strings(4, 4))) == 15
        assert len(list(restricted_growth_strings(4, 2))) == 8
        assert list(restricted_growth_strings(0, 3)) == [()]


    def test_single_chsh_has_no_decomposition(self, chsh, config):
        searcher = DecompositionSearcher(config)
        outcome = searcher.search_decomposition(chsh)

        assert not outcome.found
        assert outcome.trace.exhausted
        assert outcome.max_parts == 4
        assert searcher.audit_non_existence(chsh) == (15, 0)


    def test_chsh_pair_has_a_certified_decomposition(self, chsh_pair, config):
        outcome = DecompositionSearcher(config).search_decomposition(chsh_pair)

        assert outcome.found
        assert outcome.certificate.certified
        assert outcome.certificate.part_sum == 4
        assert outcome.certificate.trace is outcome.trace


    def test_part_limit(self, chsh_pair, config):
        outcome = DecompositionSearcher(config).search_decomposition(chsh_pair, max_parts = 1)

        assert not outcome.found
        assert outcome.max_parts == 1


@pytest.mark.parametrize('position, start, end, expected', [
    (1, 1, 3, True),
    (3, 1, 3, False),
    (5, 4, 2, True),
    (1, 4, 2, True),
    (2, 4, 2, False),
    (3, 4, 2, False),
])
def test_on_arc(position, start, end, expected):
    assert on_arc(position, start, end) is expected


class TestCycleDecomposer:

    @pytest.mark.parametrize('shared, contradiction, case, part_values', [
        ([(1, 1), (3, 3)], 5, FIRST_CASE, [3, 3]),
        ([(1, 1), (3, 3)], 1, SECOND_CASE, [2, 4]),
        ([(1, 1), (2, 2)], None, FIRST_CASE, [3, 3]),
        ([(1, 1), (2, 2)], 5, FIRST_CASE, [3, 3]),
        ([(1, 1), (2, 2)], 1, SECOND_CASE, [0, 6]),
    ])
    def test_five_cycles_sharing_two_observables(self, verifier, shared, contradiction, case, part_values):
        pair = CycleDecomposer().build_cycle_pair(5, 5, shared, contradiction)
        certificate = verifier.verify_decomposition(pair.expression, pair.decomposition)

        assert pair.layout.case == case
        assert certificate.certified
        assert certificate.omega_c == 6
        assert [part.reduced_value for part in certificate.parts] == part_values


    def test_first_case_parts(self):
        decomposition = CycleDecomposer().cycle_decomposition(5, 5, [(1, 1), (3, 3)])

        assert {frozenset(part) for part in decomposition.parts} == {
            frozenset({'A1', 'A3', 'A4', 'A5', "A'2"}),
            frozenset({'A1', 'A2', 'A3', "A'4", "A'5"}),
        }
        assert decomposition.assignment == (1, 1, 0, 0, 0, 0, 0, 1, 1, 1)


    def test_completion_edges_make_every_part_chordal(self):
        decomposer = CycleDecomposer()
        pair = decomposer.build_cycle_pair(6, 7, [(1, 1), (3, 3)])

        assert pair.completion_edges
        assert all(decomposer.graph_analyzer.is_chordal(pair.scenario.graph.subgraph(part)) for part in pair.decomposition.parts)
        assert decomposer.completion_edges(pair.scenario, pair.decomposition.parts) == []


    def test_d_outcome_pair(self, config):
        pair = CycleDecomposer().build_cycle_pair(5, 5, [(1, 1), (3, 3)], outcomes = 3)
        certificate = DecompositionVerifier(config).verify_decomposition(pair.expression, pair.decomposition)

        assert certificate.certified
        assert certificate.omega_c == 4


    def test_d_outcome_second_case_is_rejected(self):
        with pytest.raises(IllegalConfigurationError):
            CycleDecomposer().cycle_decomposition_d_outcome(5, 5, 3, [(1, 1), (3, 3)], contradiction = 1)


    @pytest.mark.parametrize('n, m, shared, contradictions', [
        (2, 5, [(1, 1), (2, 2)], None),
        (5, 5, [(1, 1)], None),
        (5, 5, [(3, 3), (1, 1)], None),
        (5, 5, [(1, 1), (3, 6)], None),
        (5, 5, [(1, 1), (3, 3)], (4, 5)),
        (5, 5, [(1, 1), (3, 3)], (5, 6)),
    ])
    def test_invalid_layouts(self, n, m, shared, contradictions):
        with pytest.raises(IllegalConfigurationError):
            CycleDecomposer().layout(n, m, shared, contradictions)
