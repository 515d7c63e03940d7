"""
Module to implement the algebraic and classical (deterministic local) bounds of expressions.
"""


import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np
from pandas import DataFrame

from monogamy_engine._calculator import Calculator
from monogamy_engine._utils.rationals import common_denominator, format_fraction, row_major_index
from monogamy_engine.bounds.bound_result import ALGEBRAIC_BOUND, CLASSICAL_BOUND, BoundResult
from monogamy_engine.configuration.engine_config import EngineConfig
from monogamy_engine.errors.operational_errors import BudgetExceededError
from monogamy_engine.scenario.expression import Expression
from monogamy_engine.scenario.expression_composer import ExpressionComposer


INT64_SAFE_LIMIT : int = 2 ** 62


class ClassicalBoundCalculator(Calculator):
    """
    A class to implement the classical bound calculation functionality of the monogamy engine.

    Deterministic assignments of the observables appearing in the expression are enumerated with a mixed-radix
    counter (first observable varying slowest), in chunks that may be spread over several threads; the reduction
    keeps the largest value and, among ties, the first assignment in enumeration order.
    """


    def __init__(self, config : EngineConfig | None = None, log_level : int | None = None, show_progress : bool = False) -> None:
        """
        Constructor method for the `ClassicalBoundCalculator` class.

        Args:
            config (EngineConfig | None): the engine configuration (budget, chunk size, threads).
            log_level (int | None): the log level to be used for filtering logs in the runtime.
            show_progress (bool): whether the enumeration reports a progress bar.
        """
        super().__init__(config, log_level, show_progress)
        self.composer = ExpressionComposer(self.logger.level)


    def algebraic_max(self, expression : Expression) -> BoundResult:
        """
        Method to compute the algebraic bound: every term optimized independently.

        Args:
            expression (Expression): the expression.

        Returns:
            The bound, in the expression's sense.
        """
        normalized = expression.normalized()
        value = sum((max(term.weighted_values()) for term in normalized.terms), Fraction(0))

        return BoundResult(expression.name, ALGEBRAIC_BOUND, expression.to_user_sense(value), expression.sense)


    def classical_max(self, expression : Expression) -> BoundResult:
        """
        Method to compute the classical bound by exhaustive enumeration of deterministic assignments.

        Args:
            expression (Expression): the expression.

        Returns:
            The bound, in the expression's sense, with a witness assignment of every scenario observable.
        """
        return self.calculate(expression)


    def build_new_results(self, expression : Expression) -> BoundResult:
        """
        Method to enumerate the deterministic assignments of an expression from scratch.

        Args:
            expression (Expression): the expression.

        Returns:
            The classical bound with its witness.
        """
        self.logger.debug(f'Calculating classical bound of "{expression.name}"')

        normalized = expression.normalized()
        observables = normalized.observables
        dims = normalized.scenario.outcome_cardinalities(observables)
        total = math.prod(dims)

        # Step 1: Checking the enumeration budget
        if total > self.config.classical_budget:
            self.logger.error(f'Classical enumeration of "{expression.name}" needs {total} assignments')
            raise BudgetExceededError(f'Classical enumeration of "{expression.name}" exceeds the budget', total, self.config.classical_budget)

        # Step 2: Scaling the weighted tables to integers
        scale, tables = self.__integer_tables(normalized)

        # Step 3: Enumerating the assignments chunk by chunk
        chunks = [(start, min(start + self.config.chunk_size, total)) for start in range(0, total, self.config.chunk_size)]

        def evaluate_chunk(bounds : Tuple[int, int]) -> Tuple[int, int]:
            start, stop = bounds
            scores = self.__chunk_scores(normalized, observables, dims, tables, start, stop)
            best = int(np.argmax(scores))
            return int(scores[best]), start + best

        if self.config.threads > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(max_workers = self.config.threads) as executor:
                chunk_results = list(self.progress(executor.map(evaluate_chunk, chunks), len(chunks), 'classical bound'))
        else:
            chunk_results = [evaluate_chunk(chunk) for chunk in self.progress(chunks, len(chunks), 'classical bound')]

        best_score, best_index = chunk_results[0]

        for score, index in chunk_results[1:]:
            if score > best_score:
                best_score, best_index = score, index

        # Step 4: Decoding and exactly re-evaluating the witness
        outcomes = np.unravel_index(best_index, dims) if dims else ()
        witness = {identifier : 0 for identifier in expression.scenario.ids}
        witness.update({identifier : int(outcome) for identifier, outcome in zip(observables, outcomes)})

        value = self.evaluate_assignment(normalized, witness)

        if value != Fraction(best_score, scale):
            raise ArithmeticError(f'Witness of "{expression.name}" evaluates to {value}, {Fraction(best_score, scale)} expected')

        result = BoundResult(expression.name, CLASSICAL_BOUND, expression.to_user_sense(value), expression.sense, witness, total)

        self.logger.debug(f'Calculated classical bound of "{expression.name}": {format_fraction(result.value)}')

        return result


    def evaluate_assignment(self, expression : Expression, assignment : Mapping[str, int]) -> Fraction:
        """
        Method to evaluate an expression on a deterministic assignment, exactly.
        """
        scenario = expression.scenario
        value = Fraction(0)

        for term in expression.terms:
            outcomes = [assignment[identifier] for identifier in term.support]
            value += term.coefficient * term.values[row_major_index(outcomes, scenario.outcome_cardinalities(term.support))]

        return value


    def term_value_matrix(self, expression : Expression) -> Tuple[np.ndarray, int]:
        """
        Method to tabulate every weighted term of a (normalized) expression on every deterministic assignment.

        Args:
            expression (Expression): the expression (taken as MAXIMIZE).

        Returns:
            The integer matrix (terms x assignments) and the common scale dividing its entries.
        """
        observables = expression.observables
        dims = expression.scenario.outcome_cardinalities(observables)
        total = math.prod(dims)

        if total * max(len(expression.terms), 1) > self.config.classical_budget:
            self.logger.error(f'Term value matrix of "{expression.name}" needs {total} assignments')
            raise BudgetExceededError(f'Term value matrix of "{expression.name}" exceeds the budget', total * len(expression.terms), self.config.classical_budget)

        scale, tables = self.__integer_tables(expression)
        digits = np.unravel_index(np.arange(total, dtype = np.int64), dims) if dims else ()
        position = {identifier : index for index, identifier in enumerate(observables)}

        rows = [
            self.__lookup(term.support, expression, position, digits, table, total)
            for term, table in zip(expression.terms, tables)
        ]
        matrix = np.vstack(rows) if rows else np.zeros((0, total), dtype = np.int64)

        return matrix, scale


    def classical_gap(self, expressions : Sequence[Expression]) -> Fraction:
        """
        Method to compute how far the classical bounds of several expressions are from being jointly attainable.

        Args:
            expressions (Sequence[Expression]): expressions on a common scenario.

        Returns:
            The sum of the individual classical bounds minus the classical bound of their sum (normalized sense).
        """
        normalized = [expression.normalized() for expression in expressions]
        combined = self.composer.combine(normalized, [1] * len(normalized), name = 'classical gap')
        individual = sum((self.classical_max(expression).normalized_value for expression in normalized), Fraction(0))

        return individual - self.classical_max(combined).normalized_value


    def to_pandas_dataframe(self) -> DataFrame:
        """
        Method to transform the last classical bound into a Pandas DataFrame.

        Returns:
            A Pandas DataFrame with the expression, the bound kind, the value and the witness.
        """
        result : BoundResult = self.calculation_results
        witness = '' if result.witness is None else ' '.join(f'{identifier}={outcome}' for identifier, outcome in result.witness.items())

        return DataFrame([{
            'expression' : result.expression_name,
            'kind' : result.kind,
            'sense' : result.sense.value,
            'value' : format_fraction(result.value),
            'assignments' : result.assignments_enumerated,
            'witness' : witness,
        }])


    def __integer_tables(self, expression : Expression) -> Tuple[int, List[np.ndarray]]:
        """
        Private method to scale every weighted table by the common denominator.
        """
        weighted = [term.weighted_values() for term in expression.terms]
        scale = common_denominator(value for values in weighted for value in values)
        integer_tables = [[int(value * scale) for value in values] for values in weighted]

        magnitude = sum(max((abs(value) for value in values), default = 0) for values in integer_tables)
        dtype = np.int64 if magnitude < INT64_SAFE_LIMIT else object

        return scale, [np.array(values, dtype = dtype) for values in integer_tables]


    def __lookup(self, support, expression, position, digits, table, size) -> np.ndarray:
        """
        Private method to read a term table for a block of assignments given by their digits.
        """
        if not support:
            return np.full(size, table[0], dtype = table.dtype)

        columns = [digits[position[identifier]] for identifier in support]
        flat = np.ravel_multi_index(columns, expression.scenario.outcome_cardinalities(support))

        return table[flat]


    def __chunk_scores(self, expression, observables, dims, tables, start, stop) -> np.ndarray:
        """
        Private method to score the assignments with flat indices in [start, stop).
        """
        size = stop - start
        digits = np.unravel_index(np.arange(start, stop, dtype = np.int64), dims) if dims else ()
        position = {identifier : index for index, identifier in enumerate(observables)}
        scores = np.zeros(size, dtype = tables[0].dtype if tables else np.int64)

        for term, table in zip(expression.terms, tables):
            scores = scores + self.__lookup(term.support, expression, position, digits, table, size)

        return scores
