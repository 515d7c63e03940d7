"""
Module to implement the catalog of named fixtures: scenarios, expressions, boxes, strategies and decompositions
together with the values they are expected to reproduce.

Loading a fixture runs its gate (every quantity not flagged as slow is recomputed and compared); reproducing a
fixture recomputes every quantity, slow ones included.
"""


import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Mapping, Tuple

from pandas import DataFrame

from monogamy_engine._calculator import Calculator
from monogamy_engine._utils.rationals import format_fraction
from monogamy_engine.behaviors.behavior import Behavior
from monogamy_engine.behaviors.behavior_analyzer import BehaviorAnalyzer
from monogamy_engine.bounds.classical_bound_calculator import ClassicalBoundCalculator
from monogamy_engine.bounds.no_disturbance_bound_calculator import NoDisturbanceBoundCalculator
from monogamy_engine.catalog.box_library import (
    FOUR_OUTCOME_EVENTS, HIGH_BIT_FIRST, LOW_BIT_FIRST, PAIR_BLOCKS, SINGLE_BLOCKS, WRAP_PAIR, BoxLibrary
)
from monogamy_engine.catalog.expression_library import ExpressionLibrary
from monogamy_engine.configuration.engine_config import EngineConfig
from monogamy_engine.errors.config_errors import IllegalConfigurationError
from monogamy_engine.errors.operational_errors import GateFailureError
from monogamy_engine.graphs.chordal_graph_analyzer import ChordalGraphAnalyzer
from monogamy_engine.monogamy.cycle_decomposer import FIRST_CASE, SECOND_CASE, CycleDecomposer
from monogamy_engine.monogamy.decomposition import Decomposition, Verdict
from monogamy_engine.monogamy.decomposition_searcher import DecompositionSearcher
from monogamy_engine.monogamy.decomposition_verifier import DecompositionVerifier
from monogamy_engine.scenario.expression import Expression
from monogamy_engine.scenario.expression_composer import ExpressionComposer
from monogamy_engine.scenario.scenario import Observable, Scenario
from monogamy_engine.scenario.scenario_builder import ScenarioBuilder
from monogamy_engine.serialization.json_codec import JsonCodec


PUBLISHED : str = 'PUBLISHED'
DERIVED : str = 'DERIVED'
TRIVIAL : str = 'TRIVIAL'

CLASSICAL : str = 'classical'
ALGEBRAIC : str = 'algebraic'
NO_DISTURBANCE : str = 'no-disturbance'
BOX_VALUE : str = 'box value'
BOX_IS_ND : str = 'box is no-disturbance'
CERTIFICATE : str = 'certificate'
SEARCH : str = 'search'
STRATEGY_VALUE : str = 'strategy value'
COMPATIBLE : str = 'compatible marginals'
CLASSICAL_GAP : str = 'classical gap'
CHORDAL : str = 'chordal'
CLIQUE_COUNT : str = 'maximal cliques'
SEPARATORS : str = 'separators'
REDUCED_CLIQUE_EDGES : str = 'reduced clique graph edges'

FOUND : str = 'FOUND'
NONE : str = 'NONE'

REGISTERED_FIXTURES : Tuple[str, ...] = (
    'chsh_monogamy',
    'i3322_activation',
    'i3322_no_single_monogamy',
    'xor3_counterexample',
    'cabello_2334',
    'kcbs',
    'chordal_example',
)

DEFAULT_CYCLE_PAIRS : Tuple[str, ...] = (
    'cycle_pair(5,5,2,i)',
    'cycle_pair(5,5,2,ii)',
    'cycle_pair(5,6,2,i)',
    'cycle_pair(5,6,2,ii)',
    'cycle_pair(6,7,2,i)',
    'cycle_pair(6,7,2,ii)',
    'cycle_pair_d(5,5,3)',
)

CYCLE_PAIR_PATTERN = re.compile(r'^cycle_pair\((\d+),(\d+),(\d+),(i|ii)\)$')
CYCLE_PAIR_D_PATTERN = re.compile(r'^cycle_pair_d\((\d+),(\d+),(\d+)\)$')

# Part receiving each term, in the order I3322_AB, I3322_AC, then the two 5-cycle copies.
ACTIVATION_PARTS : Tuple[Tuple[str, ...], ...] = (
    ('A1', 'A4', 'A5', 'A6', 'B1', 'C2'),
    ('A1', 'A4', 'A5', 'A6', 'B2', 'C1'),
    ('A1', 'A2', 'A3', 'A4', 'B3'),
    ('A1', 'A2', 'A3', 'A4', 'C3'),
)
ACTIVATION_ASSIGNMENT : Tuple[int, ...] = (
    0, 0, 0, 1, 0, 1, 2, 0, 1, 2, 0, 1,
    1, 1, 1, 0, 1, 0, 3, 1, 0, 3, 1, 0,
    2, 2, 2, 0, 0,
    3, 3, 3, 1, 1,
)


@dataclass(frozen = True)
class ExpectedValue:
    """
    A class to implement a value a fixture must reproduce.

    `targets` names the fixture objects the quantity is computed from (expressions, boxes, decompositions or
    strategies, depending on `kind`).
    """

    quantity : str
    kind : str
    targets : Tuple[str, ...]
    expected : Fraction | bool | int | str
    provenance : str
    slow : bool = False


@dataclass(frozen = True)
class Fixture:
    """
    A class to implement a named fixture.
    """

    name : str
    scenario : Scenario
    expressions : Mapping[str, Expression] = field(default_factory = dict)
    boxes : Mapping[str, Behavior] = field(default_factory = dict)
    decompositions : Mapping[str, Tuple[str, Decomposition]] = field(default_factory = dict)
    strategies : Mapping[str, Mapping[str, int]] = field(default_factory = dict)
    expected : Tuple[ExpectedValue, ...] = ()
    metadata : Mapping[str, str] = field(default_factory = dict)


class FixtureCatalog(Calculator):
    """
    A class to implement the fixture catalog of the monogamy engine.
    """


    def __init__(self, config : EngineConfig | None = None, log_level : int | None = None, show_progress : bool = False) -> None:
        """
        Constructor method for the `FixtureCatalog` class.

        Args:
            config (EngineConfig | None): the engine configuration shared with every calculator.
            log_level (int | None): the log level to be used for filtering logs in the runtime.
            show_progress (bool): whether `reproduce` reports a progress bar.
        """
        super().__init__(config, log_level, show_progress)

        level = self.logger.level
        self.builder = ScenarioBuilder(level)
        self.library = ExpressionLibrary(level)
        self.boxes = BoxLibrary(level)
        self.composer = ExpressionComposer(level)
        self.graph_analyzer = ChordalGraphAnalyzer(level)
        self.behavior_analyzer = BehaviorAnalyzer(level)
        self.cycle_decomposer = CycleDecomposer(level)
        self.codec = JsonCodec(level)
        self.classical_calculator = ClassicalBoundCalculator(self.config, level)
        self.nd_calculator = NoDisturbanceBoundCalculator(self.config, level)
        self.verifier = DecompositionVerifier(self.config, level, self.classical_calculator)
        self.searcher = DecompositionSearcher(self.config, level)

        self.__loaded : Dict[str, Fixture] = {}
        self.__builders : Dict[str, Callable[[], Fixture]] = {
            'chsh_monogamy' : self.__chsh_monogamy,
            'i3322_activation' : self.__i3322_activation,
            'i3322_no_single_monogamy' : self.__i3322_no_single_monogamy,
            'xor3_counterexample' : self.__xor3_counterexample,
            'cabello_2334' : self.__cabello_2334,
            'kcbs' : self.__kcbs,
            'chordal_example' : self.__chordal_example,
        }
        self.__quantities : Dict[str, Callable[[Fixture, Tuple[str, ...]], Any]] = {
            CLASSICAL : lambda fixture, targets : self.classical_calculator.classical_max(fixture.expressions[targets[0]]).value,
            ALGEBRAIC : lambda fixture, targets : self.classical_calculator.algebraic_max(fixture.expressions[targets[0]]).value,
            NO_DISTURBANCE : lambda fixture, targets : self.nd_calculator.nd_max(fixture.expressions[targets[0]]).optimum,
            BOX_VALUE : lambda fixture, targets : self.behavior_analyzer.evaluate(fixture.expressions[targets[0]], fixture.boxes[targets[1]]),
            BOX_IS_ND : lambda fixture, targets : bool(self.behavior_analyzer.is_no_disturbance(fixture.boxes[targets[0]])),
            CERTIFICATE : self.__certificate_value,
            SEARCH : lambda fixture, targets : FOUND if self.searcher.search_decomposition(fixture.expressions[targets[0]]).found else NONE,
            STRATEGY_VALUE : lambda fixture, targets : self.classical_calculator.evaluate_assignment(fixture.expressions[targets[0]], fixture.strategies[targets[1]]),
            COMPATIBLE : self.__compatible_value,
            CLASSICAL_GAP : lambda fixture, targets : self.classical_calculator.classical_gap([fixture.expressions[target] for target in targets]),
            CHORDAL : lambda fixture, targets : self.graph_analyzer.is_chordal(fixture.scenario.graph),
            CLIQUE_COUNT : lambda fixture, targets : len(fixture.scenario.contexts),
            SEPARATORS : self.__separators_value,
            REDUCED_CLIQUE_EDGES : lambda fixture, targets : self.graph_analyzer.reduced_clique_graph(fixture.scenario.graph).number_of_edges(),
        }


    @property
    def names(self) -> Tuple[str, ...]:
        """ Property to list the fixtures reproduced by `reproduce('all')`. """
        return REGISTERED_FIXTURES + DEFAULT_CYCLE_PAIRS


    def load_fixture(self, name : str) -> Fixture:
        """
        Method to build a fixture and run its gate.

        Args:
            name (str): a registered name, "cycle_pair(n,m,k,case)" or "cycle_pair_d(n,m,d)".

        Returns:
            The gate-verified fixture.
        """
        name = name.replace(' ', '')

        if name in self.__loaded:
            return self.__loaded[name]

        self.logger.debug(f'Loading fixture {name}')

        fixture = self.__build(name)
        mismatches = {
            expected.quantity : self.__format(obtained)
            for expected, obtained in ((expected, self.obtain(fixture, expected)) for expected in fixture.expected if not expected.slow)
            if obtained != expected.expected
        }

        if mismatches:
            self.logger.error(f'Fixture {name} failed its gate: {mismatches}')
            raise GateFailureError(f'Fixture {name} does not reproduce its recorded values', mismatches)

        self.__loaded[name] = fixture

        self.logger.debug(f'Loaded fixture {name}')

        return fixture


    def obtain(self, fixture : Fixture, expected : ExpectedValue) -> Any:
        """
        Method to compute the quantity behind an expected value.
        """
        return self.__quantities[expected.kind](fixture, expected.targets)


    def reproduce(self, name : str = 'all') -> DataFrame:
        """
        Method to recompute every recorded value of a fixture (or of every fixture) and compare it.

        Args:
            name (str): a fixture name or "all".

        Returns:
            A Pandas DataFrame with one row per quantity: fixture, quantity, expected, obtained, provenance, status.
        """
        self.calculate(name.replace(' ', ''))
        return self.to_pandas_dataframe()


    def build_new_results(self, name : str) -> List[Dict[str, str]]:
        """
        Method to reproduce one fixture or all of them from scratch.
        """
        names = self.names if name == 'all' else (name,)
        rows : List[Dict[str, str]] = []

        for fixture_name in self.progress(names, total = len(names), description = 'Reproducing fixtures'):
            fixture = self.__build(fixture_name)

            for expected in fixture.expected:
                obtained = self.obtain(fixture, expected)
                status = 'PASS' if obtained == expected.expected else 'FAIL'

                self.logger.info(f'{fixture_name} / {expected.quantity}: {status}')

                rows.append({
                    'fixture' : fixture_name,
                    'quantity' : expected.quantity,
                    'expected' : self.__format(expected.expected),
                    'obtained' : self.__format(obtained),
                    'provenance' : expected.provenance,
                    'status' : status,
                })

        return rows


    def to_pandas_dataframe(self) -> DataFrame:
        """
        Method to transform the last reproduction into a Pandas DataFrame.
        """
        return DataFrame(self.calculation_results, columns = ['fixture', 'quantity', 'expected', 'obtained', 'provenance', 'status'])


    def export(self, name : str) -> Dict[str, Any]:
        """
        Method to export a fixture in the JSON scenario, expression, box and decomposition formats.
        """
        fixture = self.load_fixture(name)

        return {
            'name' : fixture.name,
            'scenario' : self.codec.encode_scenario(fixture.scenario),
            'expressions' : {key : self.codec.encode_expression(expression) for key, expression in fixture.expressions.items()},
            'boxes' : {key : self.codec.encode_box(box) for key, box in fixture.boxes.items()},
            'decompositions' : {
                key : {'expression' : expression_key, **self.codec.encode_decomposition(decomposition)}
                for key, (expression_key, decomposition) in fixture.decompositions.items()
            },
            'strategies' : {key : dict(strategy) for key, strategy in fixture.strategies.items()},
            'expected' : [
                {
                    'quantity' : expected.quantity,
                    'kind' : expected.kind,
                    'targets' : list(expected.targets),
                    'expected' : self.__format(expected.expected),
                    'provenance' : expected.provenance,
                }
                for expected in fixture.expected
            ],
            'metadata' : dict(fixture.metadata),
        }


    def __build(self, name : str) -> Fixture:
        """
        Private method to build a fixture (no gate) from its name.
        """
        if name in self.__loaded:
            return self.__loaded[name]

        if name in self.__builders:
            return self.__builders[name]()

        match = CYCLE_PAIR_PATTERN.match(name)

        if match is not None:
            n, m, k = (int(group) for group in match.groups()[:3])
            return self.__cycle_pair(n, m, k, match.group(4))

        match = CYCLE_PAIR_D_PATTERN.match(name)

        if match is not None:
            return self.__cycle_pair_d(*(int(group) for group in match.groups()))

        raise IllegalConfigurationError(f'Unknown fixture "{name}", expected one of {list(REGISTERED_FIXTURES)}, cycle_pair(n,m,k,case) or cycle_pair_d(n,m,d)')


    def __bell_scenario(self, alice : Tuple[str, ...], *others : Tuple[str, Tuple[str, ...]]) -> Scenario:
        """
        Private method to build a dichotomic Bell scenario with Alice first.
        """
        parties = [('A', self.builder.dichotomic(*alice))]
        parties.extend((tag, self.builder.dichotomic(*identifiers)) for tag, identifiers in others)

        return self.builder.build_bell_scenario(parties)


    def __chsh_monogamy(self) -> Fixture:
        """
        Private method to build CHSH between Alice and Bob plus CHSH between Alice and Charlie.
        """
        scenario = self.__bell_scenario(('A1', 'A2'), ('B', ('B1', 'B2')), ('C', ('C1', 'C2')))
        chsh_ab = self.library.chsh(scenario, ('A1', 'A2'), ('B1', 'B2'), 'CHSH_AB')
        chsh_ac = self.library.chsh(scenario, ('A1', 'A2'), ('C1', 'C2'), 'CHSH_AC')
        total = self.composer.combine([chsh_ab, chsh_ac], [1, 1], 'CHSH_AB + CHSH_AC')

        two_parts = Decomposition.from_parts(total, (('A1', 'A2', 'B1', 'C2'), ('A1', 'A2', 'B2', 'C1')), 'two parts')
        triangles = Decomposition.from_parts(
            total,
            (('A1', 'B1', 'C1'), ('A2', 'B1', 'C1'), ('A1', 'B2', 'C2'), ('A2', 'B2', 'C2')),
            'triangles'
        )

        return Fixture(
            'chsh_monogamy',
            scenario,
            {'CHSH_AB' : chsh_ab, 'CHSH_AC' : chsh_ac, 'sum' : total},
            decompositions = {'two parts' : ('sum', two_parts), 'triangles' : ('sum', triangles)},
            expected = (
                ExpectedValue('classical CHSH_AB', CLASSICAL, ('CHSH_AB',), Fraction(2), PUBLISHED),
                ExpectedValue('classical sum', CLASSICAL, ('sum',), Fraction(4), DERIVED),
                ExpectedValue('certificate two parts', CERTIFICATE, ('two parts',), Fraction(4), DERIVED),
                ExpectedValue('certificate triangles', CERTIFICATE, ('triangles',), Verdict.FAILED.value, DERIVED),
                ExpectedValue('no-disturbance CHSH_AB', NO_DISTURBANCE, ('CHSH_AB',), Fraction(4), DERIVED, True),
                ExpectedValue('no-disturbance sum', NO_DISTURBANCE, ('sum',), Fraction(4), DERIVED, True),
                ExpectedValue('search sum', SEARCH, ('sum',), FOUND, DERIVED, True),
            )
        )


    def __i3322_activation(self) -> Fixture:
        """
        Private method to build I3322 between Alice and Bob, I3322 between Alice and Charlie and two copies of the
        5-cycle expression on Alice's compatible pairs, with the four-part decomposition.
        """
        alice = ('A1', 'A2', 'A3', 'A4', 'A5', 'A6')
        scenario = self.__bell_scenario(alice, ('B', ('B1', 'B2', 'B3')), ('C', ('C1', 'C2', 'C3')))
        scenario = self.builder.add_contexts(scenario, self.library.cycle_edges(alice[:5]))

        i3322_ab = self.library.i3322(scenario, ('A1', 'A4', 'A6'), ('B1', 'B2', 'B3'), 'I3322_AB')
        i3322_ac = self.library.i3322(scenario, ('A1', 'A4', 'A6'), ('C1', 'C2', 'C3'), 'I3322_AC')
        cycle = self.library.cycle(scenario, alice[:5], name = 'I(5)')
        total = self.composer.combine([i3322_ab, i3322_ac, cycle, cycle], [1, 1, 1, 1], 'I3322_AB + I3322_AC + 2 I(5)')

        decomposition = Decomposition(ACTIVATION_PARTS, ACTIVATION_ASSIGNMENT, 'four chordal parts')

        return Fixture(
            'i3322_activation',
            scenario,
            {'I3322_AB' : i3322_ab, 'I3322_AC' : i3322_ac, 'I(5)' : cycle, 'sum' : total},
            decompositions = {'four chordal parts' : ('sum', decomposition)},
            expected = (
                ExpectedValue('classical I3322_AB', CLASSICAL, ('I3322_AB',), Fraction(4), PUBLISHED),
                ExpectedValue('classical I(5)', CLASSICAL, ('I(5)',), Fraction(3), PUBLISHED),
                ExpectedValue('classical sum', CLASSICAL, ('sum',), Fraction(14), DERIVED),
                ExpectedValue('certificate four chordal parts', CERTIFICATE, ('four chordal parts',), Fraction(14), PUBLISHED),
                ExpectedValue('no-disturbance I3322_AB', NO_DISTURBANCE, ('I3322_AB',), Fraction(8), PUBLISHED, True),
                ExpectedValue('no-disturbance sum', NO_DISTURBANCE, ('sum',), Fraction(14), PUBLISHED, True),
            )
        )


    def __i3322_no_single_monogamy(self) -> Fixture:
        """
        Private method to build the bipartite box violating I3322 and the 5-cycle expression simultaneously.
        """
        scenario = self.boxes.pair_scenario()
        i3322 = self.library.i3322(scenario, ('A1', 'A4', 'A6'), ('B1', 'B2', 'B3'), 'I3322')
        cycle = self.library.cycle(scenario, ('A1', 'A2', 'A3', 'A4', 'A5'), name = 'I(5)')

        label, box = self.boxes.gated(
            'the pair box',
            [(f'{order[0]} first', lambda order = order : self.boxes.pair_box(scenario, order)) for order in (WRAP_PAIR, WRAP_PAIR[::-1])],
            lambda candidate : {
                'no-disturbance' : bool(self.behavior_analyzer.is_no_disturbance(candidate)),
                'I3322' : self.behavior_analyzer.evaluate(i3322, candidate),
                'I(5)' : self.behavior_analyzer.evaluate(cycle, candidate),
            },
            {'no-disturbance' : True, 'I3322' : Fraction(13, 3), 'I(5)' : Fraction(4)}
        )

        return Fixture(
            'i3322_no_single_monogamy',
            scenario,
            {'I3322' : i3322, 'I(5)' : cycle},
            {'pair box' : box},
            expected = (
                ExpectedValue('box is no-disturbance', BOX_IS_ND, ('pair box',), True, PUBLISHED),
                ExpectedValue('box value I3322', BOX_VALUE, ('I3322', 'pair box'), Fraction(13, 3), PUBLISHED),
                ExpectedValue('box value I(5)', BOX_VALUE, ('I(5)', 'pair box'), Fraction(4), PUBLISHED),
                ExpectedValue('classical I3322', CLASSICAL, ('I3322',), Fraction(4), PUBLISHED),
                ExpectedValue('classical I(5)', CLASSICAL, ('I(5)',), Fraction(3), PUBLISHED),
            ),
            metadata = {'reading' : label, 'table fingerprint' : self.boxes.fingerprint({**PAIR_BLOCKS, **SINGLE_BLOCKS})}
        )


    def __xor3_counterexample(self) -> Fixture:
        """
        Private method to build the XOR game between Alice and Bob plus the same game between Alice and Charlie.
        """
        scenario = self.__bell_scenario(('A1', 'A2', 'A3'), ('B', ('B1', 'B2', 'B3')), ('C', ('C1', 'C2', 'C3')))
        xor_ab = self.library.xor_game(scenario, ('A1', 'A2', 'A3'), ('B1', 'B2', 'B3'), 'XOR_AB')
        xor_ac = self.library.xor_game(scenario, ('A1', 'A2', 'A3'), ('C1', 'C2', 'C3'), 'XOR_AC')
        total = self.composer.combine([xor_ab, xor_ac], [1, 1], 'XOR_AB + XOR_AC')

        return Fixture(
            'xor3_counterexample',
            scenario,
            {'XOR_AB' : xor_ab, 'XOR_AC' : xor_ac, 'sum' : total},
            expected = (
                ExpectedValue('classical XOR_AB', CLASSICAL, ('XOR_AB',), Fraction(5), PUBLISHED),
                ExpectedValue('no-disturbance XOR_AB', NO_DISTURBANCE, ('XOR_AB',), Fraction(9), PUBLISHED, True),
                ExpectedValue('no-disturbance sum', NO_DISTURBANCE, ('sum',), Fraction(10), PUBLISHED, True),
                ExpectedValue('search sum', SEARCH, ('sum',), NONE, PUBLISHED, True),
            )
        )


    def __cabello_2334(self) -> Fixture:
        """
        Private method to build the bit-correlator expression with its box, its two residual expressions and the
        strategies saturating each residual.
        """
        scenario = self.boxes.four_outcome_scenario()
        expression = self.library.cabello_expression(scenario, 'I_B1B2C1')
        residual_b = self.composer.select_terms(expression, (0, 1, 3, 4, 6, 7), 'I_B1B2')
        residual_c = self.composer.select_terms(expression, (2, 5, 8), 'I_C1')

        label, box = self.boxes.gated(
            'the four-outcome box',
            [(bit_order, lambda bit_order = bit_order : self.boxes.four_outcome_box(scenario, bit_order)) for bit_order in (HIGH_BIT_FIRST, LOW_BIT_FIRST)],
            lambda candidate : {
                'no-disturbance' : bool(self.behavior_analyzer.is_no_disturbance(candidate)),
                'value' : self.behavior_analyzer.evaluate(expression, candidate),
            },
            {'no-disturbance' : True, 'value' : Fraction(9)}
        )

        zeros = {identifier : 0 for identifier in scenario.ids}

        return Fixture(
            'cabello_2334',
            scenario,
            {'I_B1B2C1' : expression, 'I_B1B2' : residual_b, 'I_C1' : residual_c},
            {'box' : box},
            strategies = {'all outputs 00' : zeros, 'A3 outputs 10' : {**zeros, 'A3' : 2}},
            expected = (
                ExpectedValue('classical I_B1B2C1', CLASSICAL, ('I_B1B2C1',), Fraction(7), PUBLISHED),
                ExpectedValue('algebraic I_B1B2C1', ALGEBRAIC, ('I_B1B2C1',), Fraction(9), PUBLISHED),
                ExpectedValue('box is no-disturbance', BOX_IS_ND, ('box',), True, PUBLISHED),
                ExpectedValue('box value I_B1B2C1', BOX_VALUE, ('I_B1B2C1', 'box'), Fraction(9), PUBLISHED),
                ExpectedValue('strategy value I_B1B2', STRATEGY_VALUE, ('I_B1B2', 'all outputs 00'), Fraction(6), PUBLISHED),
                ExpectedValue('strategy value I_C1', STRATEGY_VALUE, ('I_C1', 'A3 outputs 10'), Fraction(3), PUBLISHED),
                ExpectedValue('classical I_B1B2', CLASSICAL, ('I_B1B2',), Fraction(6), DERIVED),
                ExpectedValue('classical I_C1', CLASSICAL, ('I_C1',), Fraction(3), DERIVED),
                ExpectedValue('strategies agree on A1 A2 A3', COMPATIBLE, ('all outputs 00', 'A3 outputs 10', 'A1', 'A2', 'A3'), False, DERIVED),
                ExpectedValue('classical gap of the residuals', CLASSICAL_GAP, ('I_B1B2', 'I_C1'), Fraction(2), DERIVED),
                ExpectedValue('no-disturbance I_B1B2C1', NO_DISTURBANCE, ('I_B1B2C1',), Fraction(9), DERIVED, True),
            ),
            metadata = {'reading' : label, 'table fingerprint' : self.boxes.fingerprint(FOUR_OUTCOME_EVENTS)}
        )


    def __kcbs(self) -> Fixture:
        """
        Private method to build the 5-cycle non-contextuality expression on its own scenario.
        """
        cycle = ('A1', 'A2', 'A3', 'A4', 'A5')
        scenario = self.builder.add_contexts(Scenario(self.builder.dichotomic(*cycle)), self.library.cycle_edges(cycle))
        expression = self.library.cycle(scenario, cycle, name = 'I(5)')

        return Fixture(
            'kcbs',
            scenario,
            {'I(5)' : expression},
            expected = (
                ExpectedValue('classical I(5)', CLASSICAL, ('I(5)',), Fraction(3), PUBLISHED),
                ExpectedValue('algebraic I(5)', ALGEBRAIC, ('I(5)',), Fraction(5), TRIVIAL),
                ExpectedValue('chordal', CHORDAL, (), False, TRIVIAL),
                ExpectedValue('no-disturbance I(5)', NO_DISTURBANCE, ('I(5)',), Fraction(5), DERIVED, True),
            )
        )


    def __chordal_example(self) -> Fixture:
        """
        Private method to build the ten-observable chordal graph whose clique tree illustrates the joint distribution construction.
        """
        cliques = (('1', '3', '5'), ('3', '5', '7'), ('3', '6', '7', '8'), ('3', '4', '6', '8'), ('2', '4', '6'), ('7', '9'), ('6', '10'))
        observables = tuple(Observable(str(identifier)) for identifier in range(1, 11))
        scenario = self.builder.add_contexts(Scenario(observables), cliques)

        return Fixture(
            'chordal_example',
            scenario,
            expected = (
                ExpectedValue('chordal', CHORDAL, (), True, PUBLISHED),
                ExpectedValue('maximal cliques', CLIQUE_COUNT, (), 7, PUBLISHED),
                ExpectedValue('clique tree separators', SEPARATORS, (), '{6} {7} {3,5} {3,7} {4,6} {3,6,8}', PUBLISHED),
                ExpectedValue('reduced clique graph edges', REDUCED_CLIQUE_EDGES, (), 9, DERIVED),
            )
        )


    def __cycle_pair(self, n : int, m : int, k : int, case : str) -> Fixture:
        """
        Private method to build two dichotomic cycles sharing k observables at positions 1, 3, 5..., with the
        contradiction of the second cycle outside (case i) or inside (case ii) the shared arc.
        """
        shared = self.__shared_positions(n, m, k)
        contradiction = m if case == FIRST_CASE else 1
        pair = self.cycle_decomposer.build_cycle_pair(n, m, shared, contradiction)

        if pair.layout.case != case:
            raise IllegalConfigurationError(f'Layout n={n}, m={m}, k={k} falls in case {pair.layout.case}, not {case}')

        bound = Fraction(n + m - 4)

        return Fixture(
            f'cycle_pair({n},{m},{k},{case})',
            pair.scenario,
            {'sum' : pair.expression},
            decompositions = {'two cycles' : ('sum', pair.decomposition)},
            expected = (
                ExpectedValue('classical sum', CLASSICAL, ('sum',), bound, PUBLISHED),
                ExpectedValue('certificate two cycles', CERTIFICATE, ('two cycles',), bound, PUBLISHED),
                ExpectedValue('no-disturbance sum', NO_DISTURBANCE, ('sum',), bound, PUBLISHED, True),
            ),
            metadata = {'completion edges' : ' '.join(f'{first}-{second}' for first, second in pair.completion_edges)}
        )


    def __cycle_pair_d(self, n : int, m : int, d : int) -> Fixture:
        """
        Private method to build two d-outcome cycles sharing two observables, in case i.
        """
        pair = self.cycle_decomposer.build_cycle_pair(n, m, self.__shared_positions(n, m, 2), m, d)
        bound = Fraction(2 * (d - 1))

        return Fixture(
            f'cycle_pair_d({n},{m},{d})',
            pair.scenario,
            {'sum' : pair.expression},
            decompositions = {'two cycles' : ('sum', pair.decomposition)},
            expected = (
                ExpectedValue('classical sum', CLASSICAL, ('sum',), bound, PUBLISHED),
                ExpectedValue('certificate two cycles', CERTIFICATE, ('two cycles',), bound, PUBLISHED),
                ExpectedValue('no-disturbance sum', NO_DISTURBANCE, ('sum',), bound, DERIVED, True),
            ),
            metadata = {'completion edges' : ' '.join(f'{first}-{second}' for first, second in pair.completion_edges)}
        )


    def __shared_positions(self, n : int, m : int, k : int) -> List[Tuple[int, int]]:
        """
        Private method to place k shared observables at positions 1, 3, 5... of both cycles.
        """
        if k < 2 or 2 * k - 1 > min(n, m):
            raise IllegalConfigurationError(f'Cannot share {k} non-adjacent observables between cycles of lengths {n} and {m}')

        return [(2 * t - 1, 2 * t - 1) for t in range(1, k + 1)]


    def __certificate_value(self, fixture : Fixture, targets : Tuple[str, ...]) -> Fraction | str:
        """
        Private method to verify a decomposition, giving the certified bound or the FAILED verdict.
        """
        expression_key, decomposition = fixture.decompositions[targets[0]]
        certificate = self.verifier.verify_decomposition(fixture.expressions[expression_key], decomposition)

        return certificate.part_sum if certificate.certified else certificate.verdict.value


    def __compatible_value(self, fixture : Fixture, targets : Tuple[str, ...]) -> bool:
        """
        Private method to check whether two deterministic strategies agree on the given observables.
        """
        first, second = (self.behavior_analyzer.deterministic_behavior(fixture.scenario, fixture.strategies[target], target) for target in targets[:2])
        return self.behavior_analyzer.compatible_marginals(first, second, targets[2:])


    def __separators_value(self, fixture : Fixture, targets : Tuple[str, ...]) -> str:
        """
        Private method to list the clique tree separators in canonical order.
        """
        scenario = fixture.scenario
        separators = [scenario.ordered(separator) for separator in self.graph_analyzer.clique_tree(scenario.graph).separators]
        separators.sort(key = lambda separator : (len(separator), tuple(scenario.index[vertex] for vertex in separator)))

        return ' '.join('{' + ','.join(separator) + '}' for separator in separators)


    def __format(self, value : Any) -> str:
        """
        Private method to write a quantity for tables and JSON.
        """
        if isinstance(value, bool):
            return 'true' if value else 'false'

        if isinstance(value, Fraction):
            return format_fraction(value)

        return str(value)
