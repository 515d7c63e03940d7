from fractions import Fraction

import pytest

from monogamy_engine.errors.config_errors import IllegalConfigurationError
from monogamy_engine.errors.scenario_errors import InvalidExpressionError, InvalidScenarioError
from monogamy_engine.scenario.expression import Expression, ExpressionTerm, Sense
from monogamy_engine.scenario.expression_composer import ExpressionComposer
from monogamy_engine.scenario.scenario import Observable, Scenario


def test_bell_scenario_connects_distinct_parties_only(chsh_scenario):
    assert chsh_scenario.has_edge('A1', 'B2')
    assert not chsh_scenario.has_edge('A1', 'A2')
    assert not chsh_scenario.has_edge('B1', 'B2')
    assert chsh_scenario.contexts == (('A1', 'B1'), ('A1', 'B2'), ('A2', 'B1'), ('A2', 'B2'))
    assert chsh_scenario.observable('B2').party == 'B'


@pytest.mark.parametrize('observables, edges', [
    ((Observable('X'), Observable('X')), ()),
    ((Observable('X'), Observable('Y')), (('X', 'Z'),)),
    ((Observable('X'),), (('X', 'X'),)),
])
def test_invalid_scenarios_are_rejected(observables, edges):
    with pytest.raises(InvalidScenarioError):
        Scenario(observables, frozenset(frozenset(edge) for edge in edges))


def test_observables_need_two_outcomes():
    with pytest.raises(InvalidScenarioError):
        Observable('X', 1)


def test_duplicate_party_tags_are_rejected(builder):
    with pytest.raises(InvalidScenarioError):
        builder.build_bell_scenario([('A', builder.dichotomic('A1')), ('A', builder.dichotomic('A2'))])


def test_add_contexts_turns_subsets_into_cliques(builder):
    scenario = builder.add_contexts(Scenario(builder.dichotomic('X', 'Y', 'Z')), [('X', 'Y', 'Z')])

    assert scenario.contexts == (('X', 'Y', 'Z'),)

    with pytest.raises(InvalidScenarioError):
        builder.add_contexts(scenario, [('X', 'W')])


def test_correlator_table_is_row_major(chsh_scenario, library):
    term = library.correlator_term(chsh_scenario, ('A1', 'B1'))

    assert term.values == (1, -1, -1, 1)
    assert term.value((1, 0), (2, 2)) == -1


def test_expression_supports_must_be_cliques(chsh_scenario, library):
    with pytest.raises(InvalidExpressionError):
        Expression(chsh_scenario, (library.correlator_term(chsh_scenario, ('A1', 'A2')),))


def test_expression_tables_must_match_cardinalities(chsh_scenario):
    with pytest.raises(InvalidExpressionError):
        Expression(chsh_scenario, (ExpressionTerm(('A1', 'B1'), Fraction(1), (1, 0, 0)),))


def test_cycle_contradiction_must_lie_on_the_cycle(builder, library):
    scenario = builder.add_contexts(Scenario(builder.dichotomic('X1', 'X2', 'X3', 'X4')), library.cycle_edges(('X1', 'X2', 'X3', 'X4')))

    with pytest.raises(IllegalConfigurationError):
        library.cycle(scenario, ('X1', 'X2', 'X3', 'X4'), contradiction = 5)


@pytest.mark.parametrize('masks, outcomes, expected', [
    (('10', '10'), (0, 0), 1),
    (('11', '11'), (1, 2), 1),
    (('10', '01'), (2, 0), -1),
    (('01', '11'), (1, 3), -1),
])
def test_bit_correlator_values(builder, library, masks, outcomes, expected):
    scenario = builder.build_bell_scenario([('A', builder.dichotomic('A1', outcomes = 4)), ('B', builder.dichotomic('B1', outcomes = 4))])
    term = library.bit_correlator_term(scenario, ('A1', 'B1'), masks)

    assert term.value(outcomes, (4, 4)) == expected


def test_bit_correlator_rejects_unknown_masks(builder, library):
    scenario = builder.build_bell_scenario([('A', builder.dichotomic('A1', outcomes = 4)), ('B', builder.dichotomic('B1', outcomes = 4))])

    with pytest.raises(InvalidExpressionError):
        library.bit_correlator_term(scenario, ('A1', 'B1'), ('00', '10'))


def test_combine_keeps_copies_unless_merged(chsh):
    composer = ExpressionComposer()

    assert len(composer.combine([chsh, chsh], [1, 1]).terms) == 8

    merged = composer.combine([chsh, chsh], [1, 1], merge = True)
    assert len(merged.terms) == 4
    assert merged.terms[0].values == (2, -2, -2, 2)


def test_combine_normalizes_mixed_senses(chsh):
    composer = ExpressionComposer()
    combined = composer.combine([chsh, composer.negate(chsh)], [1, 1])

    assert combined.sense is Sense.MAXIMIZE
    assert [term.coefficient for term in combined.terms] == [1, 1, 1, -1, 1, 1, 1, -1]


def test_reduce_to_keeps_terms_inside_the_subset(chsh):
    reduced = ExpressionComposer().reduce_to(chsh, ('A1', 'B1', 'B2'))

    assert [term.support for term in reduced.terms] == [('A1', 'B1'), ('A1', 'B2')]
