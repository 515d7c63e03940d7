"""
Module to implement an exact rational simplex solver working on sparse dictionaries.

Problems have the form: maximize c.x subject to A x <= b and x >= 0, with every number a `Fraction`.
"""


import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Set, Tuple

from monogamy_engine._utils.loggable_entity import LoggableEntity


SparseRow = Mapping[int, Fraction]


class LPStatus(Enum):
    """
    A class to implement the termination status of a linear program.
    """

    OPTIMAL = 'optimal'
    INFEASIBLE = 'infeasible'
    UNBOUNDED = 'unbounded'


@dataclass(frozen = True)
class SimplexResult:
    """
    A class to implement the raw outcome of a simplex run.
    """

    status : LPStatus
    value : Fraction | None
    solution : Tuple[Fraction, ...] | None
    pivots : int


class RationalSimplexSolver(LoggableEntity):
    """
    A class to implement a two-phase primal simplex method in exact rational arithmetic.

    The largest-coefficient rule drives the pivots until `degenerate_limit` consecutive degenerate pivots occur,
    after which Bland's smallest-index rule takes over for the rest of the run, which rules out cycling.
    """

    DANTZIG_RULE : str = 'dantzig'
    BLAND_RULE : str = 'bland'


    def __init__(self, pivot_rule : str = DANTZIG_RULE, degenerate_limit : int = 50, log_level : int = logging.WARNING) -> None:
        """
        Constructor method for the `RationalSimplexSolver` class.

        Args:
            pivot_rule (str): the initial pivoting rule ("dantzig" or "bland").
            degenerate_limit (int): the number of consecutive degenerate pivots that triggers Bland's rule.
            log_level (int): the log level to be used for filtering logs in the runtime.
        """
        super().__init__(log_level)

        if pivot_rule not in (self.DANTZIG_RULE, self.BLAND_RULE):
            raise ValueError(f'Unknown pivot rule: {pivot_rule}')

        self.pivot_rule = pivot_rule
        self.degenerate_limit = degenerate_limit


    def solve(self, objective : SparseRow, rows : Sequence[Tuple[SparseRow, Fraction]], variable_count : int) -> SimplexResult:
        """
        Method to maximize `objective` over {x >= 0 : row . x <= bound for every (row, bound)}.

        Args:
            objective (SparseRow): the objective coefficients by variable index.
            rows (Sequence[Tuple[SparseRow, Fraction]]): the inequality rows with their right-hand sides.
            variable_count (int): the number of structural variables.

        Returns:
            The status, the optimal value and an optimal vertex (structural variables only).
        """
        self.logger.debug(f'Solving linear program with {variable_count} variables and {len(rows)} rows')

        self.__rows : Dict[int, Dict[int, Fraction]] = {}
        self.__constants : Dict[int, Fraction] = {}
        self.__columns : Dict[int, Set[int]] = {}
        self.__pivots = 0
        self.__use_bland = self.pivot_rule == self.BLAND_RULE
        self.__degenerate_streak = 0
        self.__objective : Dict[int, Fraction] = {}
        self.__objective_constant = Fraction(0)

        # Step 1: Building the slack dictionary, slack i being basic on row i
        for position, (row, bound) in enumerate(rows):
            slack = variable_count + position
            self.__constants[slack] = Fraction(bound)
            self.__rows[slack] = {}

            for variable, coefficient in row.items():
                if coefficient:
                    self.__rows[slack][variable] = -Fraction(coefficient)
                    self.__columns.setdefault(variable, set()).add(slack)

        # Step 2: Reaching a feasible dictionary (phase one) when the origin is infeasible
        if any(constant < 0 for constant in self.__constants.values()):
            auxiliary = variable_count + len(rows)

            if not self.__phase_one(auxiliary):
                self.logger.debug('Solved linear program (infeasible)')
                return SimplexResult(LPStatus.INFEASIBLE, None, None, self.__pivots)

        # Step 3: Optimizing the true objective (phase two)
        self.__set_objective({variable : Fraction(coefficient) for variable, coefficient in objective.items() if coefficient})

        if not self.__optimize():
            self.logger.debug('Solved linear program (unbounded)')
            return SimplexResult(LPStatus.UNBOUNDED, None, None, self.__pivots)

        solution = tuple(self.__constants.get(variable, Fraction(0)) if variable in self.__rows else Fraction(0) for variable in range(variable_count))

        self.logger.debug(f'Solved linear program with optimum {self.__objective_constant} after {self.__pivots} pivots')

        return SimplexResult(LPStatus.OPTIMAL, self.__objective_constant, solution, self.__pivots)


    def __phase_one(self, auxiliary : int) -> bool:
        """
        Private method to find a feasible dictionary by maximizing -x0, x0 relaxing every row.

        Returns:
            True if the original problem is feasible.
        """
        self.logger.debug('Running phase one')

        for basic, row in self.__rows.items():
            row[auxiliary] = Fraction(1)
            self.__columns.setdefault(auxiliary, set()).add(basic)

        self.__objective_constant = Fraction(0)
        self.__objective = {auxiliary : Fraction(-1)}

        # Step 1: Entering x0 in place of the most violated row
        leaving = min(self.__rows, key = lambda basic : (self.__constants[basic], basic))
        self.__pivot(auxiliary, leaving)

        # Step 2: Driving x0 to zero
        self.__optimize()

        if self.__objective_constant < 0:
            return False

        # Step 3: Moving a degenerate basic x0 out of the basis
        if auxiliary in self.__rows and self.__rows[auxiliary]:
            self.__pivot(min(self.__rows[auxiliary]), auxiliary)
        elif auxiliary in self.__rows:
            del self.__rows[auxiliary]
            del self.__constants[auxiliary]

        # Step 4: Forgetting x0
        for basic in self.__columns.pop(auxiliary, set()):
            self.__rows[basic].pop(auxiliary, None)

        self.logger.debug('Ran phase one')

        return True


    def __set_objective(self, objective : Dict[int, Fraction]) -> None:
        """
        Private method to express an objective over the current nonbasic variables.
        """
        self.__objective_constant = Fraction(0)
        self.__objective = {}

        for variable, coefficient in objective.items():
            if variable in self.__rows:
                self.__objective_constant += coefficient * self.__constants[variable]

                for nonbasic, value in self.__rows[variable].items():
                    self.__objective[nonbasic] = self.__objective.get(nonbasic, Fraction(0)) + coefficient * value
            else:
                self.__objective[variable] = self.__objective.get(variable, Fraction(0)) + coefficient

        self.__objective = {variable : value for variable, value in self.__objective.items() if value}


    def __optimize(self) -> bool:
        """
        Private method to pivot until optimality.

        Returns:
            False if the objective is unbounded along some entering variable.
        """
        while True:
            improving = [variable for variable, coefficient in self.__objective.items() if coefficient > 0]

            if not improving:
                return True

            if self.__use_bland:
                entering = min(improving)
            else:
                entering = max(improving, key = lambda variable : (self.__objective[variable], -variable))

            # Ratio test, ties broken by the smallest basic index
            leaving = None
            best_ratio = None

            for basic in self.__columns.get(entering, ()):
                coefficient = self.__rows[basic][entering]

                if coefficient < 0:
                    ratio = self.__constants[basic] / -coefficient

                    if best_ratio is None or ratio < best_ratio or (ratio == best_ratio and basic < leaving):
                        best_ratio, leaving = ratio, basic

            if leaving is None:
                return False

            if best_ratio == 0:
                self.__degenerate_streak += 1

                if not self.__use_bland and self.__degenerate_streak >= self.degenerate_limit:
                    self.logger.debug('Switching to Bland\'s rule after a run of degenerate pivots')
                    self.__use_bland = True
            else:
                self.__degenerate_streak = 0

            self.__pivot(entering, leaving)


    def __pivot(self, entering : int, leaving : int) -> None:
        """
        Private method to exchange a nonbasic (entering) and a basic (leaving) variable.
        """
        self.__pivots += 1

        # Step 1: Solving the leaving row for the entering variable
        row = self.__rows.pop(leaving)
        constant = self.__constants.pop(leaving)
        pivot = row.pop(entering)

        new_row = {variable : -value / pivot for variable, value in row.items()}
        new_row[leaving] = 1 / pivot
        new_constant = -constant / pivot

        for variable in row:
            self.__columns[variable].discard(leaving)

        users = self.__columns.pop(entering, set())
        users.discard(leaving)

        self.__rows[entering] = new_row
        self.__constants[entering] = new_constant

        for variable in new_row:
            self.__columns.setdefault(variable, set()).add(entering)

        # Step 2: Substituting the entering variable in the other rows
        for basic in users:
            target = self.__rows[basic]
            factor = target.pop(entering)
            self.__constants[basic] += factor * new_constant

            for variable, value in new_row.items():
                updated = target.get(variable, Fraction(0)) + factor * value

                if updated:
                    target[variable] = updated
                    self.__columns[variable].add(basic)
                elif variable in target:
                    del target[variable]
                    self.__columns[variable].discard(basic)

        # Step 3: Substituting it in the objective
        if entering in self.__objective:
            factor = self.__objective.pop(entering)
            self.__objective_constant += factor * new_constant

            for variable, value in new_row.items():
                updated = self.__objective.get(variable, Fraction(0)) + factor * value

                if updated:
                    self.__objective[variable] = updated
                else:
                    self.__objective.pop(variable, None)
