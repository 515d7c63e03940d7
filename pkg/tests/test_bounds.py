from fractions import Fraction

import numpy as np
import pytest

from monogamy_engine.bounds.classical_bound_calculator import ClassicalBoundCalculator
from monogamy_engine.bounds.no_disturbance_bound_calculator import NoDisturbanceBoundCalculator
from monogamy_engine.bounds.rational_simplex_solver import LPStatus, RationalSimplexSolver
from monogamy_engine.configuration.engine_config import EngineConfig
from monogamy_engine.errors.operational_errors import BudgetExceededError
from monogamy_engine.scenario.expression import Sense
from monogamy_engine.scenario.expression_composer import ExpressionComposer
from monogamy_engine.scenario.scenario import Scenario

from tests.conftest import random_chordal_scenario, random_edge_expression, relabel_expression


@pytest.fixture
def i3322(builder, library):
    scenario = builder.build_bell_scenario([('A', builder.dichotomic('A1', 'A2', 'A3')), ('B', builder.dichotomic('B1', 'B2', 'B3'))])
    return library.i3322(scenario, ('A1', 'A2', 'A3'), ('B1', 'B2', 'B3'))


@pytest.fixture
def kcbs(builder, library):
    cycle = ('A1', 'A2', 'A3', 'A4', 'A5')
    scenario = builder.add_contexts(Scenario(builder.dichotomic(*cycle)), library.cycle_edges(cycle))
    return library.cycle(scenario, cycle)


def test_chsh_bounds(chsh, classical_calculator, nd_calculator):
    classical = classical_calculator.classical_max(chsh)

    assert classical.value == 2
    assert classical_calculator.evaluate_assignment(chsh, classical.witness) == 2
    assert set(classical.witness) == set(chsh.scenario.ids)
    assert classical_calculator.algebraic_max(chsh).value == 4
    assert nd_calculator.nd_max(chsh).optimum == 4


def test_i3322_bounds(i3322, classical_calculator, nd_calculator):
    assert classical_calculator.classical_max(i3322).value == 4
    assert classical_calculator.algebraic_max(i3322).value == 12
    assert nd_calculator.nd_max(i3322).optimum == 8


def test_cycle_bounds(kcbs, classical_calculator, nd_calculator):
    assert classical_calculator.classical_max(kcbs).value == 3
    assert nd_calculator.nd_max(kcbs).optimum == 5


def test_modular_cycle_is_minimized(builder, library, classical_calculator):
    cycle = ('X1', 'X2', 'X3', 'X4')
    scenario = builder.add_contexts(Scenario(builder.dichotomic(*cycle, outcomes = 3)), library.cycle_edges(cycle))
    expression = library.modular_cycle(scenario, cycle, 3)
    bound = classical_calculator.classical_max(expression)

    assert expression.sense is Sense.MINIMIZE
    assert bound.sense is Sense.MINIMIZE
    assert bound.value == 2


def test_negated_expression_reports_bounds_in_its_own_sense(chsh, classical_calculator, nd_calculator):
    negated = ExpressionComposer().negate(chsh)

    assert classical_calculator.classical_max(negated).value == -2
    assert nd_calculator.nd_max(negated).optimum == -4


def test_classical_budget_is_enforced(chsh):
    calculator = ClassicalBoundCalculator(EngineConfig(classical_budget = 8))

    with pytest.raises(BudgetExceededError) as error:
        calculator.classical_max(chsh)

    assert error.value.required == 16
    assert error.value.budget == 8


def test_threaded_enumeration_keeps_the_first_optimum(i3322):
    single = ClassicalBoundCalculator(EngineConfig(chunk_size = 4)).classical_max(i3322)
    threaded = ClassicalBoundCalculator(EngineConfig(chunk_size = 4, threads = 3)).classical_max(i3322)

    assert threaded.value == single.value == 4
    assert threaded.witness == single.witness


def test_term_value_matrix(chsh, classical_calculator):
    matrix, scale = classical_calculator.term_value_matrix(chsh)

    assert matrix.shape == (4, 16)
    assert scale == 1
    assert int(matrix.sum(axis = 0).max()) == 2


def test_nd_polytope_of_chsh(chsh, nd_calculator):
    polytope = nd_calculator.nd_polytope(chsh.scenario)

    assert polytope.variable_count == 16
    assert polytope.normalization_rows == 4
    assert polytope.constraint_count == 12


def test_nd_witness_lies_in_the_polytope(chsh, nd_calculator):
    solution = nd_calculator.nd_max(chsh)
    polytope = nd_calculator.nd_polytope(chsh.scenario)

    assert solution.status is LPStatus.OPTIMAL
    assert polytope.is_satisfied_by([entry for table in solution.witness.tables for entry in table])


@pytest.mark.parametrize('seed', [seed if seed < 4 else pytest.param(seed, marks = pytest.mark.slow) for seed in range(50)])
def test_chordal_scenarios_have_no_classical_gap(seed, classical_calculator, nd_calculator):
    rng = np.random.default_rng(seed)
    scenario = random_chordal_scenario(rng, int(rng.integers(3, 9)), 0.5)
    expression = random_edge_expression(rng, scenario)

    assert classical_calculator.classical_max(expression).value == nd_calculator.nd_max(expression).optimum


@pytest.mark.parametrize('seed', range(3))
def test_bounds_do_not_depend_on_labels(seed, chsh, i3322, kcbs, classical_calculator, nd_calculator):
    rng = np.random.default_rng(seed)

    for expression in (chsh, i3322, kcbs, random_edge_expression(rng, random_chordal_scenario(rng, 5))):
        relabeled, _ = relabel_expression(rng, expression)

        assert nd_calculator.nd_max(relabeled).optimum == nd_calculator.nd_max(expression).optimum
        assert classical_calculator.classical_max(relabeled).value == classical_calculator.classical_max(expression).value


class TestRationalSimplexSolver:

    def test_optimal_vertex(self):
        result = RationalSimplexSolver().solve(
            {0 : Fraction(1), 1 : Fraction(1)},
            [({0 : Fraction(1), 1 : Fraction(2)}, Fraction(4)), ({0 : Fraction(3), 1 : Fraction(1)}, Fraction(6))],
            2
        )

        assert result.status is LPStatus.OPTIMAL
        assert result.value == Fraction(14, 5)
        assert result.solution == (Fraction(8, 5), Fraction(6, 5))


    def test_unbounded(self):
        result = RationalSimplexSolver().solve({0 : Fraction(1)}, [({0 : Fraction(-1)}, Fraction(1))], 1)

        assert result.status is LPStatus.UNBOUNDED


    def test_infeasible(self):
        result = RationalSimplexSolver(RationalSimplexSolver.BLAND_RULE).solve({0 : Fraction(1)}, [({0 : Fraction(1)}, Fraction(-1))], 1)

        assert result.status is LPStatus.INFEASIBLE


    def test_unknown_rule(self):
        with pytest.raises(ValueError):
            RationalSimplexSolver('steepest')
