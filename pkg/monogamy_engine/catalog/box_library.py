"""
Module to implement the library of transcribed boxes: the tripartite four-outcome box reaching the algebraic value of
the bit-correlator expression, and the bipartite box violating I3322 and the 5-cycle expression at the same time.

Tables are transcribed once as text and fingerprinted, and every reading ambiguity (bit order, orientation of the
wrap-around pair) is resolved by a verification gate instead of being assumed.
"""


import hashlib
import logging
from fractions import Fraction
from typing import Callable, Dict, Mapping, Sequence, Tuple

from monogamy_engine._utils.loggable_entity import LoggableEntity
from monogamy_engine.behaviors.behavior import Behavior
from monogamy_engine.errors.config_errors import IllegalConfigurationError
from monogamy_engine.errors.operational_errors import GateFailureError
from monogamy_engine.scenario.scenario import Scenario
from monogamy_engine.scenario.scenario_builder import ScenarioBuilder


HIGH_BIT_FIRST : str = 'b0-high'
LOW_BIT_FIRST : str = 'b0-low'

FOUR_OUTCOME_EVENT_PROBABILITY : Fraction = Fraction(1, 8)

# (a, b, c) events of probability 1/8 per context A_k B_l C1, bits written as b0 b1.
FOUR_OUTCOME_EVENTS : Dict[Tuple[str, str, str], Tuple[str, ...]] = {
    ('A1', 'B1', 'C1') : ('00 00 00', '00 00 01', '00 01 00', '00 01 01', '01 00 10', '01 00 11', '01 01 10', '01 01 11'),
    ('A1', 'B2', 'C1') : ('00 00 00', '00 00 01', '00 01 00', '00 01 01', '01 10 10', '01 10 11', '01 11 10', '01 11 11'),
    ('A2', 'B1', 'C1') : ('00 00 00', '00 00 10', '01 00 01', '01 00 11', '10 01 01', '10 01 11', '11 01 00', '11 01 10'),
    ('A2', 'B2', 'C1') : ('00 00 00', '00 10 10', '01 01 01', '01 11 11', '10 00 01', '10 10 11', '11 01 00', '11 11 10'),
    ('A3', 'B1', 'C1') : ('00 00 01', '00 00 10', '01 00 00', '01 00 11', '10 01 00', '10 01 11', '11 01 01', '11 01 10'),
    ('A3', 'B2', 'C1') : ('00 00 01', '00 11 10', '01 01 00', '01 10 11', '10 00 00', '10 11 11', '11 01 01', '11 10 10'),
}

# Rows are Alice's outcome pairs (++, +-, -+, --) of the printed pair, columns Bob's outcome (+, -); identical for B1..B3.
PAIR_BLOCKS : Dict[Tuple[str, str], Tuple[Tuple[str, str], ...]] = {
    ('A1', 'A2') : (('1/4', '1/2'), ('0', '0'), ('0', '0'), ('1/4', '0')),
    ('A2', 'A3') : (('1/4', '1/2'), ('0', '0'), ('0', '0'), ('1/4', '0')),
    ('A3', 'A4') : (('1/4', '1/3'), ('0', '1/6'), ('0', '0'), ('1/4', '0')),
    ('A4', 'A5') : (('1/4', '1/6'), ('0', '1/6'), ('0', '0'), ('1/4', '1/6')),
    ('A5', 'A1') : (('0', '1/6'), ('1/4', '0'), ('1/4', '1/3'), ('0', '0')),
}

# Rows are A6's outcome (+, -), columns Bob's outcome (+, -).
SINGLE_BLOCKS : Dict[str, Tuple[Tuple[str, str], ...]] = {
    'B1' : (('0', '1/2'), ('1/2', '0')),
    'B2' : (('1/2', '0'), ('0', '1/2')),
    'B3' : (('1/4', '1/4'), ('1/4', '1/4')),
}

WRAP_PAIR : Tuple[str, str] = ('A5', 'A1')


class BoxLibrary(LoggableEntity):
    """
    A class to implement the construction of the transcribed boxes and their verification gates.
    """


    def __init__(self, log_level : int = logging.WARNING) -> None:
        """
        Constructor method for the `BoxLibrary` class.

        Args:
            log_level (int): the log level to be used for filtering logs in the runtime.
        """
        super().__init__(log_level)
        self.builder = ScenarioBuilder(log_level)


    def four_outcome_scenario(self) -> Scenario:
        """
        Method to build the tripartite scenario A1..A3 | B1, B2 | C1 of four-outcome observables.
        """
        return self.builder.build_bell_scenario([
            ('A', self.builder.dichotomic('A1', 'A2', 'A3', outcomes = 4)),
            ('B', self.builder.dichotomic('B1', 'B2', outcomes = 4)),
            ('C', self.builder.dichotomic('C1', outcomes = 4)),
        ])


    def four_outcome_box(self, scenario : Scenario | None = None, bit_order : str = HIGH_BIT_FIRST) -> Behavior:
        """
        Method to build the tripartite box where every listed event has probability 1/8.

        Args:
            scenario (Scenario | None): the scenario (the four-outcome scenario when None).
            bit_order (str): how the printed bits b0 b1 map to the outcome index: `HIGH_BIT_FIRST` reads
                o = 2 * b0 + b1 and `LOW_BIT_FIRST` reads o = b0 + 2 * b1.

        Returns:
            The behavior.
        """
        scenario = self.four_outcome_scenario() if scenario is None else scenario

        if bit_order not in (HIGH_BIT_FIRST, LOW_BIT_FIRST):
            raise IllegalConfigurationError(f'Unknown bit order "{bit_order}"')

        def decode(bits : str) -> int:
            first, second = int(bits[0]), int(bits[1])
            return 2 * first + second if bit_order == HIGH_BIT_FIRST else first + 2 * second

        events = {
            frozenset(context) : (context, {tuple(decode(bits) for bits in event.split()) for event in listed})
            for context, listed in FOUR_OUTCOME_EVENTS.items()
        }

        def probability(context : Tuple[str, ...], assignment : Mapping[str, int]) -> Fraction:
            printed_context, support = events[frozenset(context)]
            return FOUR_OUTCOME_EVENT_PROBABILITY if tuple(assignment[identifier] for identifier in printed_context) in support else Fraction(0)

        return Behavior.from_function(scenario, probability, f'four-outcome box ({bit_order})')


    def pair_scenario(self) -> Scenario:
        """
        Method to build the bipartite scenario where Alice measures pairs along the 5-cycle A1..A5 or A6 alone, and Bob one of B1..B3.
        """
        scenario = self.builder.build_bell_scenario([
            ('A', self.builder.dichotomic('A1', 'A2', 'A3', 'A4', 'A5', 'A6')),
            ('B', self.builder.dichotomic('B1', 'B2', 'B3')),
        ])

        return self.builder.add_contexts(scenario, PAIR_BLOCKS.keys())


    def pair_box(self, scenario : Scenario | None = None, wrap_order : Tuple[str, str] = WRAP_PAIR) -> Behavior:
        """
        Method to build the bipartite box from the pair blocks.

        Args:
            scenario (Scenario | None): the scenario (the pair scenario when None).
            wrap_order (Tuple[str, str]): the observable indexing the rows first in the block of the wrap-around pair.

        Returns:
            The behavior.
        """
        scenario = self.pair_scenario() if scenario is None else scenario

        if frozenset(wrap_order) != frozenset(WRAP_PAIR):
            raise IllegalConfigurationError(f'The wrap-around pair is {WRAP_PAIR}, got {wrap_order}')

        blocks = {
            frozenset(pair) : (tuple(wrap_order) if frozenset(pair) == frozenset(WRAP_PAIR) else pair, rows)
            for pair, rows in PAIR_BLOCKS.items()
        }

        def probability(context : Tuple[str, ...], assignment : Mapping[str, int]) -> Fraction:
            bob = next(identifier for identifier in context if identifier.startswith('B'))
            alice = frozenset(identifier for identifier in context if identifier != bob)

            if alice == frozenset(('A6',)):
                return Fraction(SINGLE_BLOCKS[bob][assignment['A6']][assignment[bob]])

            (first, second), rows = blocks[alice]
            return Fraction(rows[2 * assignment[first] + assignment[second]][assignment[bob]])

        return Behavior.from_function(scenario, probability, f'pair box ({wrap_order[0]} first)')


    def gated(
            self,
            name : str,
            candidates : Sequence[Tuple[str, Callable[[], Behavior]]],
            check : Callable[[Behavior], Dict[str, Fraction | bool]],
            expected : Dict[str, Fraction | bool]
        ) -> Tuple[str, Behavior]:
        """
        Method to pick the first reading of a transcribed box that reproduces the expected values.

        Args:
            name (str): the box name, for logging.
            candidates (Sequence[Tuple[str, Callable[[], Behavior]]]): the labelled readings, preferred one first.
            check (Callable[[Behavior], Dict[str, Fraction | bool]]): the function computing the gated quantities.
            expected (Dict[str, Fraction | bool]): the expected quantities.

        Returns:
            The label and behavior of the accepted reading.
        """
        observed : Dict[str, Dict[str, Fraction | bool] | str] = {}

        for position, (label, build) in enumerate(candidates):
            self.logger.debug(f'Checking reading "{label}" of {name}')

            try:
                behavior = build()
                values = check(behavior)
            except Exception as error:
                observed[label] = f'{type(error).__name__}: {error}'
                continue

            observed[label] = values

            if values == expected:
                if position > 0:
                    self.logger.warning(f'{name} verified under the reading "{label}" instead of "{candidates[0][0]}"')

                return label, behavior

        self.logger.error(f'No reading of {name} reproduces {expected}')
        raise GateFailureError(f'No reading of {name} reproduces {expected}', observed)


    def fingerprint(self, table : Mapping) -> str:
        """
        Method to fingerprint a transcribed table (sha256 of its canonical text).
        """
        canonical = '\n'.join(f'{key}:{table[key]}' for key in sorted(table))
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()
