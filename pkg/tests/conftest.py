"""
Module with the shared pytest fixtures of the monogamy engine test suites.
"""


from fractions import Fraction
from typing import Dict, Tuple

import networkx as nx
import numpy as np
import pytest

from monogamy_engine._utils.rationals import outcome_tuples, row_major_index
from monogamy_engine.behaviors.behavior import Behavior
from monogamy_engine.bounds.classical_bound_calculator import ClassicalBoundCalculator
from monogamy_engine.bounds.no_disturbance_bound_calculator import NoDisturbanceBoundCalculator
from monogamy_engine.catalog.expression_library import ExpressionLibrary
from monogamy_engine.catalog.fixture_catalog import FixtureCatalog
from monogamy_engine.configuration.engine_config import EngineConfig
from monogamy_engine.scenario.expression import Expression, ExpressionTerm, Sense
from monogamy_engine.scenario.scenario import Observable, Scenario
from monogamy_engine.scenario.scenario_builder import ScenarioBuilder


@pytest.fixture
def config() -> EngineConfig:
    return EngineConfig()


@pytest.fixture
def builder() -> ScenarioBuilder:
    return ScenarioBuilder()


@pytest.fixture
def library() -> ExpressionLibrary:
    return ExpressionLibrary()


@pytest.fixture
def classical_calculator(config : EngineConfig) -> ClassicalBoundCalculator:
    return ClassicalBoundCalculator(config)


@pytest.fixture
def nd_calculator(config : EngineConfig) -> NoDisturbanceBoundCalculator:
    return NoDisturbanceBoundCalculator(config)


@pytest.fixture
def chsh_scenario(builder : ScenarioBuilder) -> Scenario:
    return builder.build_bell_scenario([('A', builder.dichotomic('A1', 'A2')), ('B', builder.dichotomic('B1', 'B2'))])


@pytest.fixture
def chsh(chsh_scenario : Scenario, library : ExpressionLibrary) -> Expression:
    return library.chsh(chsh_scenario, ('A1', 'A2'), ('B1', 'B2'))


@pytest.fixture
def pr_box(chsh_scenario : Scenario) -> Behavior:
    """ The box whose outcomes satisfy a XOR b = x AND y with uniform marginals. """
    def probability(context, outcomes):
        x, y = (int(identifier[1]) - 1 for identifier in context)
        a, b = (outcomes[identifier] for identifier in context)
        return Fraction(1, 2) if a ^ b == x * y else 0

    return Behavior.from_function(chsh_scenario, probability, 'PR box')


@pytest.fixture(scope = 'session')
def catalog() -> FixtureCatalog:
    return FixtureCatalog(EngineConfig())


def random_chordal_scenario(rng : np.random.Generator, size : int, density : float = 0.4) -> Scenario:
    """
    Function to draw a random dichotomic scenario whose commutation graph is chordal.
    """
    graph = nx.gnp_random_graph(size, density, seed = int(rng.integers(1 << 31)))
    chordal, _ = nx.complete_to_chordal_graph(graph)
    names = {vertex : f'X{vertex}' for vertex in chordal.nodes}

    return Scenario(
        tuple(Observable(names[vertex]) for vertex in sorted(chordal.nodes)),
        frozenset(frozenset((names[u], names[v])) for u, v in chordal.edges)
    )


def random_edge_expression(rng : np.random.Generator, scenario : Scenario, name : str = 'random') -> Expression:
    """
    Function to draw an expression with small integer tables on every edge and a few single observables.
    """
    supports : Tuple[Tuple[str, ...], ...] = scenario.sorted_edges + tuple((identifier,) for identifier in scenario.ids[:2])
    terms = tuple(
        ExpressionTerm(support, Fraction(1), tuple(Fraction(int(value)) for value in rng.integers(-3, 4, size = 2 ** len(support))))
        for support in supports
    )

    return Expression(scenario, terms, Sense.MAXIMIZE, name)


def relabel_expression(rng : np.random.Generator, expression : Expression, prefix : str = 'Y') -> Tuple[Expression, Dict[str, str]]:
    """
    Function to rename and reorder the observables of an expression and permute the outcomes of each one.

    Returns:
        The relabeled expression and the map from old to new observable ids.
    """
    scenario = expression.scenario
    order = [scenario.ids[position] for position in rng.permutation(len(scenario.ids))]
    names = {identifier : f'{prefix}{position}' for position, identifier in enumerate(order)}
    outcome_maps = {observable.id : rng.permutation(observable.outcomes) for observable in scenario.observables}
    observables = {observable.id : observable for observable in scenario.observables}

    relabeled = Scenario(
        tuple(Observable(names[identifier], observables[identifier].outcomes, observables[identifier].party) for identifier in order),
        frozenset(frozenset(names[identifier] for identifier in edge) for edge in scenario.edges)
    )

    terms = []

    for term in expression.terms:
        cardinalities = scenario.outcome_cardinalities(term.support)
        values = [Fraction(0)] * len(term.values)

        for outcomes in outcome_tuples(cardinalities):
            moved = tuple(int(outcome_maps[identifier][outcome]) for identifier, outcome in zip(term.support, outcomes))
            values[row_major_index(moved, cardinalities)] = term.values[row_major_index(outcomes, cardinalities)]

        terms.append(ExpressionTerm(tuple(names[identifier] for identifier in term.support), term.coefficient, tuple(values)))

    return Expression(relabeled, tuple(terms), expression.sense, expression.name), names
