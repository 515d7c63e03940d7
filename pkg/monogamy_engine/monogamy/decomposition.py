"""
Module to implement decompositions of expressions into induced parts and the certificates built from them.
"""


from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Sequence, Tuple

from monogamy_engine.errors.scenario_errors import InvalidDecompositionError
from monogamy_engine.scenario.expression import Expression, Sense


REDUCED_BOUND_KIND : str = 'classical'


class Verdict(Enum):
    """
    A class to implement the verdict of a decomposition check.
    """

    CERTIFIED = 'CERTIFIED'
    FAILED = 'FAILED'


@dataclass(frozen = True)
class Decomposition:
    """
    A class to implement a decomposition: vertex subsets of the scenario plus the part each term is assigned to.

    `assignment[i]` is the index of the part receiving term i of the expression.
    """

    parts : Tuple[Tuple[str, ...], ...]
    assignment : Tuple[int, ...]
    name : str = 'decomposition'


    def __post_init__(self) -> None:
        object.__setattr__(self, 'parts', tuple(tuple(part) for part in self.parts))
        object.__setattr__(self, 'assignment', tuple(self.assignment))


    @classmethod
    def from_parts(cls, expression : Expression, parts : Sequence[Sequence[str]], name : str = 'decomposition') -> 'Decomposition':
        """
        Method to assign every term to the first part containing its support.

        Args:
            expression (Expression): the expression to be decomposed.
            parts (Sequence[Sequence[str]]): the vertex subsets.
            name (str): the decomposition name.

        Returns:
            The decomposition.
        """
        assignment = []

        for position, term in enumerate(expression.terms):
            holder = next((index for index, part in enumerate(parts) if set(term.support) <= set(part)), None)

            if holder is None:
                raise InvalidDecompositionError(f'Term {position} with support {term.support} lies in no part')

            assignment.append(holder)

        return cls(tuple(expression.scenario.ordered(part) for part in parts), tuple(assignment), name)


    def terms_of(self, part : int) -> Tuple[int, ...]:
        """ Method to list the terms assigned to a part. """
        return tuple(term for term, holder in enumerate(self.assignment) if holder == part)


@dataclass(frozen = True)
class PartReport:
    """
    A class to implement the verification details of one part.
    """

    vertices : Tuple[str, ...]
    terms : Tuple[int, ...]
    chordal : bool
    chordless_cycle : Tuple[str, ...] | None
    reduced_expression : Expression
    reduced_value : Fraction


@dataclass(frozen = True)
class SearchTrace:
    """
    A class to implement the statistics of an exhaustive decomposition search.
    """

    nodes_visited : int = 0
    blocks_enumerated : int = 0
    pruned_non_chordal : int = 0
    pruned_bound : int = 0
    pruned_max_parts : int = 0
    memo_hits : int = 0
    partitions_completed : int = 0
    exhausted : bool = False


    def as_dict(self) -> Dict[str, int | bool]:
        """ Method to expose the counters as a dictionary. """
        return dict(self.__dict__)


@dataclass(frozen = True)
class MonogamyCertificate:
    """
    A class to implement the certificate of a decomposition: the classical bound of the whole expression, the
    reduced classical bound of every part and the verdict.

    When CERTIFIED, the classical bound is also the no-disturbance bound of the expression.
    """

    expression : Expression
    decomposition : Decomposition
    omega_c : Fraction
    parts : Tuple[PartReport, ...]
    verdict : Verdict
    reason : str
    reduced_bound_kind : str = REDUCED_BOUND_KIND
    trace : SearchTrace | None = field(default = None, compare = False)


    @property
    def sense(self) -> Sense:
        """ Property to retrieve the sense of the certified expression. """
        return self.expression.sense


    @property
    def part_sum(self) -> Fraction:
        """ Property to retrieve the sum of the reduced bounds of the parts. """
        return sum((part.reduced_value for part in self.parts), Fraction(0))


    @property
    def certified(self) -> bool:
        """ Property to check whether the verdict is CERTIFIED. """
        return self.verdict is Verdict.CERTIFIED


@dataclass(frozen = True)
class SearchOutcome:
    """
    A class to implement the result of a decomposition search: a certified decomposition, or None after an exhaustive run.
    """

    expression : Expression
    decomposition : Decomposition | None
    certificate : MonogamyCertificate | None
    trace : SearchTrace
    max_parts : int


    @property
    def found(self) -> bool:
        """ Property to check whether a certified decomposition was found. """
        return self.decomposition is not None
