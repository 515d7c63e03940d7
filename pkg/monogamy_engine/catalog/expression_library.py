"""
Module to implement the library of standard inequality expressions: correlators, CHSH, I3322, the XOR game,
cycle inequalities (dichotomic and modular) and bit correlators of four-outcome observables.
"""


import logging
from typing import List, Sequence, Tuple

from monogamy_engine._utils.loggable_entity import LoggableEntity
from monogamy_engine._utils.rationals import RationalLike
from monogamy_engine.errors.config_errors import IllegalConfigurationError
from monogamy_engine.errors.scenario_errors import InvalidExpressionError
from monogamy_engine.scenario.expression import Expression, ExpressionTerm, Sense
from monogamy_engine.scenario.scenario import Scenario


BIT_MASKS : Tuple[str, ...] = ('10', '01', '11')


class ExpressionLibrary(LoggableEntity):
    """
    A class to implement the construction of the standard expressions used by the fixtures.

    Dichotomic outcome index a stands for the value (-1)^a, so index 0 is +1 and index 1 is -1.
    """


    def __init__(self, log_level : int = logging.WARNING) -> None:
        """
        Constructor method for the `ExpressionLibrary` class.

        Args:
            log_level (int): the log level to be used for filtering logs in the runtime.
        """
        super().__init__(log_level)


    def correlator_term(self, scenario : Scenario, support : Sequence[str], coefficient : RationalLike = 1) -> ExpressionTerm:
        """
        Method to build the term <X1 X2 ...> of dichotomic observables (a single id gives the mean <X>).
        """
        cardinalities = scenario.outcome_cardinalities(support)

        if any(cardinality != 2 for cardinality in cardinalities):
            raise InvalidExpressionError(f'Correlators need dichotomic observables, got {dict(zip(support, cardinalities))}')

        return ExpressionTerm.from_function(support, cardinalities, lambda outcomes : (-1) ** sum(outcomes), coefficient)


    def chsh(self, scenario : Scenario, alice : Sequence[str], bob : Sequence[str], name : str = 'CHSH') -> Expression:
        """
        Method to build <A1B1> + <A1B2> + <A2B1> - <A2B2> (classical bound 2).
        """
        (a1, a2), (b1, b2) = alice, bob
        signs = {(a1, b1) : 1, (a1, b2) : 1, (a2, b1) : 1, (a2, b2) : -1}

        return Expression(scenario, tuple(self.correlator_term(scenario, pair, sign) for pair, sign in signs.items()), Sense.MAXIMIZE, name)


    def i3322(self, scenario : Scenario, alice : Sequence[str], bob : Sequence[str], name : str = 'I3322') -> Expression:
        """
        Method to build the I3322 expression (classical bound 4) on three observables per party.
        """
        (a1, a2, a3), (b1, b2, b3) = alice, bob

        terms = [self.correlator_term(scenario, (observable,)) for observable in (a1, a2, b1, b2)]
        correlations = {
            (a1, b1) : -1, (a1, b2) : -1, (a1, b3) : -1,
            (a2, b1) : -1, (a2, b2) : -1, (a2, b3) : 1,
            (a3, b1) : -1, (a3, b2) : 1,
        }
        terms.extend(self.correlator_term(scenario, pair, sign) for pair, sign in correlations.items())

        return Expression(scenario, tuple(terms), Sense.MAXIMIZE, name)


    def xor_game(self, scenario : Scenario, alice : Sequence[str], bob : Sequence[str], name : str = 'XOR') -> Expression:
        """
        Method to build the nine-correlator XOR game expression (classical bound 5, no-disturbance bound 9).
        """
        signs = ((1, -1, -1), (1, 1, -1), (1, 1, 1))

        return Expression(
            scenario,
            tuple(self.correlator_term(scenario, (a, b), signs[row][column]) for row, a in enumerate(alice) for column, b in enumerate(bob)),
            Sense.MAXIMIZE,
            name
        )


    def cycle(self, scenario : Scenario, cycle : Sequence[str], contradiction : int | None = None, name : str | None = None) -> Expression:
        """
        Method to build the cycle expression sum_i <X_i X_{i+1}> with one negated edge (classical bound n - 2).

        Args:
            scenario (Scenario): the scenario (consecutive observables must be compatible).
            cycle (Sequence[str]): the observables X_1..X_n; edge e_i joins X_i and X_{i+1 mod n}.
            contradiction (int | None): the 1-based position of the negated edge (the last edge when None).
            name (str | None): the expression name.
        """
        edges = self.cycle_edges(cycle)
        contradiction = self.__contradiction(len(edges), contradiction)

        terms = [self.correlator_term(scenario, edge, -1 if position == contradiction else 1) for position, edge in enumerate(edges, start = 1)]

        return Expression(scenario, tuple(terms), Sense.MAXIMIZE, name if name is not None else f'I({len(edges)})')


    def modular_cycle(
            self,
            scenario : Scenario,
            cycle : Sequence[str],
            outcomes : int,
            contradiction : int | None = None,
            name : str | None = None
        ) -> Expression:
        """
        Method to build the d-outcome cycle expression sum_i <[X_i - X_{i+1}]> with one shifted edge
        <[X_c - X_{c+1} - 1]>, where [.] is the residue modulo d (MINIMIZE, classical bound d - 1).
        """
        edges = self.cycle_edges(cycle)
        contradiction = self.__contradiction(len(edges), contradiction)
        terms = []

        for position, (first, second) in enumerate(edges, start = 1):
            shift = 1 if position == contradiction else 0
            terms.append(ExpressionTerm.from_function(
                (first, second),
                scenario.outcome_cardinalities((first, second)),
                lambda values, shift = shift : (values[0] - values[1] - shift) % outcomes
            ))

        if any(cardinality != outcomes for cardinality in scenario.outcome_cardinalities(cycle)):
            raise InvalidExpressionError(f'Every observable of the modular cycle must have {outcomes} outcomes')

        return Expression(scenario, tuple(terms), Sense.MINIMIZE, name if name is not None else f'I({len(edges)};d={outcomes})')


    def bit_correlator_term(self, scenario : Scenario, observables : Sequence[str], masks : Sequence[str], coefficient : RationalLike = 1) -> ExpressionTerm:
        """
        Method to build the correlator of selected bits of four-outcome observables.

        Outcome o encodes the bits (b0, b1) with o = 2 * b0 + b1; mask "10" selects b0, "01" selects b1 and "11"
        their parity. Each selected bit contributes a factor (-1)^bit.

        Args:
            scenario (Scenario): the scenario.
            observables (Sequence[str]): the observables of the correlator.
            masks (Sequence[str]): one mask per observable.
            coefficient (RationalLike): the term coefficient.

        Returns:
            The bit correlator term.
        """
        if len(observables) != len(masks):
            raise InvalidExpressionError(f'{len(observables)} observables but {len(masks)} bit masks')

        invalid = [mask for mask in masks if mask not in BIT_MASKS]

        if invalid:
            raise InvalidExpressionError(f'Invalid bit masks {invalid}, expected one of {BIT_MASKS}')

        cardinalities = scenario.outcome_cardinalities(observables)

        if any(cardinality != 4 for cardinality in cardinalities):
            raise InvalidExpressionError(f'Bit correlators need four-outcome observables, got {dict(zip(observables, cardinalities))}')

        def selected_bit(outcome : int, mask : str) -> int:
            first_bit, second_bit = outcome >> 1, outcome & 1
            return (first_bit if mask[0] == '1' else 0) ^ (second_bit if mask[1] == '1' else 0)

        return ExpressionTerm.from_function(
            observables,
            cardinalities,
            lambda outcomes : (-1) ** sum(selected_bit(outcome, mask) for outcome, mask in zip(outcomes, masks)),
            coefficient
        )


    def cabello_expression(self, scenario : Scenario, name : str = 'Cabello') -> Expression:
        """
        Method to build the nine-term bit-correlator expression on A1..A3, B1, B2 and C1 (classical bound 7, algebraic 9).
        """
        specification : List[Tuple[Tuple[str, str], Tuple[str, str], int]] = [
            (('A1', 'B1'), ('10', '10'), 1),
            (('A1', 'B2'), ('01', '10'), 1),
            (('A1', 'C1'), ('11', '10'), 1),
            (('A2', 'B1'), ('10', '01'), 1),
            (('A2', 'B2'), ('01', '01'), 1),
            (('A2', 'C1'), ('11', '01'), 1),
            (('A3', 'B1'), ('10', '11'), 1),
            (('A3', 'B2'), ('01', '11'), 1),
            (('A3', 'C1'), ('11', '11'), -1),
        ]

        return Expression(
            scenario,
            tuple(self.bit_correlator_term(scenario, pair, masks, sign) for pair, masks, sign in specification),
            Sense.MAXIMIZE,
            name
        )


    def cycle_edges(self, cycle : Sequence[str]) -> List[Tuple[str, str]]:
        """
        Method to list the directed edges (X_i, X_{i+1 mod n}) of a cycle.
        """
        if len(cycle) < 3:
            raise InvalidExpressionError(f'A cycle needs at least 3 observables, got {len(cycle)}')

        return [(cycle[position], cycle[(position + 1) % len(cycle)]) for position in range(len(cycle))]


    def __contradiction(self, length : int, contradiction : int | None) -> int:
        """
        Private method to validate the 1-based position of the contradiction edge.
        """
        contradiction = length if contradiction is None else contradiction

        if not 1 <= contradiction <= length:
            raise IllegalConfigurationError(f'The contradiction position must lie in 1..{length}, got {contradiction}')

        return contradiction
