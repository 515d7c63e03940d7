"""
Module to implement the no-disturbance bound of expressions by exact linear programming over the no-disturbance
polytope.

The program is solved in marginal coordinates: one variable per (non-empty clique S, outcome tuple over
{0..d-2}^S), every context probability being recovered by inclusion-exclusion over the last outcomes. The
marginal-consistency equalities then hold by construction, positivity of all context probabilities is the only
family of rows and the all-last-outcomes point is feasible, so no phase one is needed.
"""


import itertools
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from pandas import DataFrame

from monogamy_engine._calculator import Calculator
from monogamy_engine._utils.rationals import format_fraction, outcome_tuples, table_size
from monogamy_engine.behaviors.behavior import Behavior
from monogamy_engine.behaviors.behavior_analyzer import BehaviorAnalyzer
from monogamy_engine.bounds.bound_result import LinearProgram, LPSolution
from monogamy_engine.bounds.rational_simplex_solver import LPStatus, RationalSimplexSolver
from monogamy_engine.configuration.engine_config import EngineConfig
from monogamy_engine.errors.operational_errors import InfeasibleProgramError, UnboundedProgramError
from monogamy_engine.scenario.expression import Expression
from monogamy_engine.scenario.scenario import Scenario


LinearForm = Tuple[Fraction, Dict[int, Fraction]]


class NoDisturbanceBoundCalculator(Calculator):
    """
    A class to implement the no-disturbance bound calculation functionality of the monogamy engine.
    """


    def __init__(self, config : EngineConfig | None = None, log_level : int | None = None, show_progress : bool = False) -> None:
        """
        Constructor method for the `NoDisturbanceBoundCalculator` class.

        Args:
            config (EngineConfig | None): the engine configuration.
            log_level (int | None): the log level to be used for filtering logs in the runtime.
            show_progress (bool): whether long computations report progress bars.
        """
        super().__init__(config, log_level, show_progress)
        self.solver = RationalSimplexSolver(log_level = self.logger.level)
        self.behavior_analyzer = BehaviorAnalyzer(self.logger.level)


    def nd_polytope(self, scenario : Scenario) -> LinearProgram:
        """
        Method to build the no-disturbance polytope in context form.

        Args:
            scenario (Scenario): the scenario.

        Returns:
            The constraints: one variable per (maximal context, joint outcome), normalization of every context
            and equality of the shared marginals of every overlapping pair of contexts.
        """
        self.logger.debug('Building no-disturbance polytope')

        contexts = scenario.contexts
        variables = []
        offsets = []

        # Step 1: Indexing the context probabilities
        for context in contexts:
            offsets.append(len(variables))
            variables.extend((context, outcomes) for outcomes in outcome_tuples(scenario.outcome_cardinalities(context)))

        # Step 2: Normalizing every context
        sizes = [table_size(scenario.outcome_cardinalities(context)) for context in contexts]
        equalities = [({offset + entry : Fraction(1) for entry in range(size)}, Fraction(1)) for offset, size in zip(offsets, sizes)]
        normalization_rows = len(equalities)

        # Step 3: Equating the shared marginals of every overlapping pair
        for first, second in itertools.combinations(range(len(contexts)), 2):
            shared = scenario.ordered(set(contexts[first]) & set(contexts[second]))

            if not shared:
                continue

            for shared_outcomes in outcome_tuples(scenario.outcome_cardinalities(shared)):
                row : Dict[int, Fraction] = {}

                for position, sign in ((first, Fraction(1)), (second, Fraction(-1))):
                    context = contexts[position]
                    places = [context.index(identifier) for identifier in shared]

                    for entry, outcomes in enumerate(outcome_tuples(scenario.outcome_cardinalities(context))):
                        if all(outcomes[place] == value for place, value in zip(places, shared_outcomes)):
                            row[offsets[position] + entry] = sign

                equalities.append((row, Fraction(0)))

        polytope = LinearProgram(tuple(variables), tuple(equalities), None, normalization_rows)

        self.logger.debug(f'Built no-disturbance polytope with {polytope.variable_count} variables and {polytope.constraint_count} equalities')

        return polytope


    def nd_max(self, expression : Expression) -> LPSolution:
        """
        Method to compute the no-disturbance bound of an expression.

        Args:
            expression (Expression): the expression.

        Returns:
            The exact optimum (in the expression's sense) with an optimal behavior.
        """
        return self.calculate(expression)


    def build_new_results(self, expression : Expression) -> LPSolution:
        """
        Method to solve the no-disturbance program of an expression from scratch.

        Args:
            expression (Expression): the expression.

        Returns:
            The solution, whose witness has been re-verified in context form.
        """
        self.logger.debug(f'Calculating no-disturbance bound of "{expression.name}"')

        normalized = expression.normalized()
        scenario = normalized.scenario

        # Step 1: Indexing the marginal coordinates
        coordinates = self.marginal_coordinates(scenario)
        index = {coordinate : position for position, coordinate in enumerate(coordinates)}

        # Step 2: Writing the objective in marginal coordinates
        objective_constant = Fraction(0)
        objective : Dict[int, Fraction] = {}

        for term in normalized.terms:
            ordered_support = scenario.ordered(term.support)
            places = [term.support.index(identifier) for identifier in ordered_support]

            for outcomes, value in zip(outcome_tuples(scenario.outcome_cardinalities(term.support)), term.weighted_values()):
                if not value:
                    continue

                constant, form = self.__probability_form(scenario, ordered_support, tuple(outcomes[place] for place in places), index)
                objective_constant += value * constant

                for variable, coefficient in form.items():
                    objective[variable] = objective.get(variable, Fraction(0)) + value * coefficient

        # Step 3: Requiring every context probability to be nonnegative
        context_forms : List[List[LinearForm]] = []
        rows = []

        for context in scenario.contexts:
            forms = [self.__probability_form(scenario, context, outcomes, index) for outcomes in outcome_tuples(scenario.outcome_cardinalities(context))]
            context_forms.append(forms)
            rows.extend(({variable : -coefficient for variable, coefficient in form.items()}, constant) for constant, form in forms)

        # Step 4: Solving the program
        result = self.solver.solve(objective, rows, len(coordinates))

        if result.status is LPStatus.INFEASIBLE:
            self.logger.error(f'The no-disturbance program of "{expression.name}" is infeasible')
            raise InfeasibleProgramError(f'The no-disturbance program of "{expression.name}" is infeasible')

        if result.status is LPStatus.UNBOUNDED:
            self.logger.error(f'The no-disturbance program of "{expression.name}" is unbounded')
            raise UnboundedProgramError(f'The no-disturbance program of "{expression.name}" is unbounded')

        optimum = result.value + objective_constant

        # Step 5: Recovering and re-verifying the optimal behavior
        tables = [
            tuple(constant + sum((coefficient * result.solution[variable] for variable, coefficient in form.items()), Fraction(0)) for constant, form in forms)
            for forms in context_forms
        ]
        witness = Behavior(scenario, scenario.contexts, tuple(tables), f'{expression.name} optimum')
        self.__verify_witness(normalized, witness, optimum)

        solution = LPSolution(
            expression.name,
            LPStatus.OPTIMAL,
            expression.to_user_sense(optimum),
            witness,
            expression.sense,
            len(coordinates),
            len(rows),
            result.pivots,
            {'context_variables' : sum(len(table) for table in tables), 'contexts' : len(tables)},
        )

        self.logger.debug(f'Calculated no-disturbance bound of "{expression.name}": {format_fraction(solution.optimum)}')

        return solution


    def marginal_coordinates(self, scenario : Scenario) -> List[Tuple[Tuple[str, ...], Tuple[int, ...]]]:
        """
        Method to list the marginal coordinates: (non-empty clique, outcome tuple avoiding every last outcome).

        Args:
            scenario (Scenario): the scenario.

        Returns:
            The coordinates, cliques in scenario order.
        """
        cliques = set()

        for context in scenario.contexts:
            for size in range(1, len(context) + 1):
                cliques.update(itertools.combinations(context, size))

        ordered_cliques = sorted(cliques, key = lambda clique : (len(clique), [scenario.index[identifier] for identifier in clique]))

        return [
            (clique, outcomes)
            for clique in ordered_cliques
            for outcomes in outcome_tuples([cardinality - 1 for cardinality in scenario.outcome_cardinalities(clique)])
        ]


    def to_pandas_dataframe(self) -> DataFrame:
        """
        Method to transform the last no-disturbance bound into a Pandas DataFrame.

        Returns:
            A Pandas DataFrame with the expression, status, optimum and program sizes.
        """
        solution : LPSolution = self.calculation_results

        return DataFrame([{
            'expression' : solution.expression_name,
            'kind' : 'no-disturbance',
            'sense' : solution.sense.value,
            'status' : solution.status.value,
            'value' : format_fraction(solution.optimum) if solution.optimum is not None else '',
            'variables' : solution.variable_count,
            'constraints' : solution.constraint_count,
            'pivots' : solution.pivots,
        }])


    def __probability_form(
            self,
            scenario : Scenario,
            clique : Sequence[str],
            outcomes : Sequence[int],
            index : Dict[Tuple[Tuple[str, ...], Tuple[int, ...]], int]
        ) -> LinearForm:
        """
        Private method to write P(clique = outcomes) as an affine form of the marginal coordinates.

        Positions holding their last outcome are expanded as 1 minus the other outcomes.
        """
        cardinalities = scenario.outcome_cardinalities(clique)
        last = [position for position, (outcome, cardinality) in enumerate(zip(outcomes, cardinalities)) if outcome == cardinality - 1]
        fixed = [position for position in range(len(clique)) if position not in last]

        constant = Fraction(0)
        form : Dict[int, Fraction] = {}

        for size in range(len(last) + 1):
            sign = Fraction((-1) ** size)

            for expanded in itertools.combinations(last, size):
                kept = sorted(fixed + list(expanded))

                if not kept:
                    constant += sign
                    continue

                ranges = [range(cardinalities[position] - 1) if position in expanded else (outcomes[position],) for position in kept]

                for values in itertools.product(*ranges):
                    variable = index[(tuple(clique[position] for position in kept), tuple(values))]
                    form[variable] = form.get(variable, Fraction(0)) + sign

        return constant, {variable : coefficient for variable, coefficient in form.items() if coefficient}


    def __verify_witness(self, expression : Expression, witness : Behavior, optimum : Fraction) -> None:
        """
        Private method to check the optimal behavior against the context-form polytope and the optimum, exactly.
        """
        polytope = self.nd_polytope(expression.scenario)
        flattened = [entry for table in witness.tables for entry in table]

        if not polytope.is_satisfied_by(flattened):
            self.logger.error('The optimal behavior violates the no-disturbance polytope')
            raise ArithmeticError(f'The optimal behavior of "{expression.name}" violates rows {polytope.violated_rows(flattened)[:5]}')

        value = self.behavior_analyzer.evaluate(expression, witness)

        if value != optimum:
            self.logger.error('The optimal behavior does not attain the optimum')
            raise ArithmeticError(f'The optimal behavior of "{expression.name}" evaluates to {value}, {optimum} expected')
