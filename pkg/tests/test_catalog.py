from fractions import Fraction

import pytest

from monogamy_engine.behaviors.behavior_analyzer import BehaviorAnalyzer
from monogamy_engine.catalog.box_library import FOUR_OUTCOME_EVENTS, HIGH_BIT_FIRST, LOW_BIT_FIRST, BoxLibrary
from monogamy_engine.catalog.fixture_catalog import DEFAULT_CYCLE_PAIRS, REGISTERED_FIXTURES
from monogamy_engine.errors.config_errors import IllegalConfigurationError
from monogamy_engine.errors.operational_errors import GateFailureError
from monogamy_engine.scenario.expression import Sense


@pytest.fixture
def boxes() -> BoxLibrary:
    return BoxLibrary()


class TestBoxLibrary:

    def test_four_outcome_box_is_no_disturbance(self, boxes):
        box = boxes.four_outcome_box()

        assert BehaviorAnalyzer().is_no_disturbance(box).holds
        assert len(box.contexts) == 6
        assert all(len(events) == 8 for events in FOUR_OUTCOME_EVENTS.values())


    def test_unknown_bit_order_is_rejected(self, boxes):
        with pytest.raises(IllegalConfigurationError):
            boxes.four_outcome_box(bit_order = 'middle')


    def test_gate_falls_back_to_the_next_reading(self, boxes, chsh_scenario):
        analyzer = BehaviorAnalyzer()
        zeros = {'A1' : 0, 'A2' : 0, 'B1' : 0, 'B2' : 0}
        candidates = [
            ('zeros', lambda : analyzer.deterministic_behavior(chsh_scenario, zeros, 'zeros')),
            ('ones', lambda : analyzer.deterministic_behavior(chsh_scenario, {**zeros, 'A1' : 1}, 'ones')),
        ]

        label, box = boxes.gated('test box', candidates, lambda candidate : {'A1' : candidate.probability(('A1', 'B1'), (1, 0))}, {'A1' : Fraction(1)})

        assert label == 'ones'
        assert box.name == 'ones'


    def test_gate_reports_every_observed_value(self, boxes, chsh_scenario):
        analyzer = BehaviorAnalyzer()
        candidates = [('zeros', lambda : analyzer.deterministic_behavior(chsh_scenario, dict.fromkeys(chsh_scenario.ids, 0)))]

        with pytest.raises(GateFailureError) as error:
            boxes.gated('test box', candidates, lambda candidate : {'value' : Fraction(0)}, {'value' : Fraction(1)})

        assert error.value.candidates == {'zeros' : {'value' : Fraction(0)}}


    def test_fingerprint_is_stable(self, boxes):
        assert boxes.fingerprint(FOUR_OUTCOME_EVENTS) == boxes.fingerprint(dict(reversed(list(FOUR_OUTCOME_EVENTS.items()))))
        assert len(boxes.fingerprint(FOUR_OUTCOME_EVENTS)) == 64


class TestFixtureCatalog:

    @pytest.mark.parametrize('name', REGISTERED_FIXTURES)
    def test_registered_fixtures_pass_their_gate(self, catalog, name):
        fixture = catalog.load_fixture(name)

        assert fixture.name == name
        assert fixture.expected


    @pytest.mark.parametrize('name', DEFAULT_CYCLE_PAIRS)
    def test_cycle_pairs_pass_their_gate(self, catalog, name):
        assert catalog.load_fixture(name).decompositions


    def test_natural_readings_are_accepted(self, catalog):
        assert catalog.load_fixture('cabello_2334').metadata['reading'] == HIGH_BIT_FIRST
        assert catalog.load_fixture('i3322_no_single_monogamy').metadata['reading'] == 'A5 first'


    def test_cabello_box(self, catalog):
        fixture = catalog.load_fixture('cabello_2334')
        analyzer = BehaviorAnalyzer()

        assert analyzer.evaluate(fixture.expressions['I_B1B2C1'], fixture.boxes['box']) == 9
        assert catalog.classical_calculator.classical_max(fixture.expressions['I_B1B2C1']).value == 7


    def test_names_are_normalized(self, catalog):
        assert catalog.load_fixture('cycle_pair(5, 5, 2, i)').name == 'cycle_pair(5,5,2,i)'


    @pytest.mark.parametrize('name', ['bell_state', 'cycle_pair(5,5,4,i)', 'cycle_pair_d(5,5,3,i)'])
    def test_unknown_fixtures_are_rejected(self, catalog, name):
        with pytest.raises(IllegalConfigurationError):
            catalog.load_fixture(name)


    def test_reproduce_single_fixture(self, catalog):
        table = catalog.reproduce('kcbs')

        assert list(table.columns) == ['fixture', 'quantity', 'expected', 'obtained', 'provenance', 'status']
        assert (table['status'] == 'PASS').all()
        assert table.loc[table['quantity'] == 'no-disturbance I(5)', 'obtained'].item() == '5/1'


    def test_export(self, catalog):
        document = catalog.export('chsh_monogamy')

        assert set(document['expressions']) == {'CHSH_AB', 'CHSH_AC', 'sum'}
        assert document['decompositions']['two parts']['expression'] == 'sum'
        assert {'quantity', 'kind', 'targets', 'expected', 'provenance'} <= set(document['expected'][0])


@pytest.mark.slow
@pytest.mark.parametrize('name', REGISTERED_FIXTURES + DEFAULT_CYCLE_PAIRS)
def test_reproduce_every_recorded_value(catalog, name):
    table = catalog.reproduce(name)

    assert (table['status'] == 'PASS').all(), table[table['status'] != 'PASS'].to_string()


@pytest.mark.parametrize('name', [
    name if name in ('chsh_monogamy', 'kcbs') else pytest.param(name, marks = pytest.mark.slow)
    for name in REGISTERED_FIXTURES + DEFAULT_CYCLE_PAIRS
])
def test_bounds_are_ordered_on_every_fixture(catalog, name):
    fixture = catalog.load_fixture(name)

    for expression in fixture.expressions.values():
        bounds = [
            catalog.classical_calculator.classical_max(expression).value,
            catalog.nd_calculator.nd_max(expression).optimum,
            catalog.classical_calculator.algebraic_max(expression).value,
        ]

        assert bounds == sorted(bounds, reverse = expression.sense is Sense.MINIMIZE), f'{expression.name}: {bounds}'
