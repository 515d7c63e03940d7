"""
Module to implement the algebra of expressions: weighted combinations and restrictions to vertex subsets.
"""


import logging
from collections import OrderedDict
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from monogamy_engine._utils.loggable_entity import LoggableEntity
from monogamy_engine._utils.rationals import RationalLike, to_fraction
from monogamy_engine.errors.scenario_errors import InvalidExpressionError
from monogamy_engine.scenario.expression import Expression, ExpressionTerm, Sense


class ExpressionComposer(LoggableEntity):
    """
    A class to implement the expression composition functionality of the monogamy engine.
    """


    def __init__(self, log_level : int = logging.WARNING) -> None:
        """
        Constructor method for the `ExpressionComposer` class.

        Args:
            log_level (int): the log level to be used for filtering logs in the runtime.
        """
        super().__init__(log_level)


    def combine(
            self,
            expressions : Sequence[Expression],
            weights : Sequence[RationalLike],
            name : str | None = None,
            merge : bool = False
        ) -> Expression:
        """
        Method to build the weighted sum of expressions defined on a common scenario.

        Expressions sharing one sense keep it; mixed senses are normalized to MAXIMIZE first.

        Args:
            expressions (Sequence[Expression]): the expressions to be combined.
            weights (Sequence[RationalLike]): one weight per expression.
            name (str | None): the name of the combined expression.
            merge (bool): whether terms with equal supports are merged into a single table.

        Returns:
            The combined expression (weighted concatenation of the terms).
        """
        if not expressions:
            raise InvalidExpressionError('At least one expression is required')

        if len(expressions) != len(weights):
            raise InvalidExpressionError(f'{len(expressions)} expressions but {len(weights)} weights')

        scenario = expressions[0].scenario

        if any(expression.scenario != scenario for expression in expressions[1:]):
            self.logger.error('Cannot combine expressions of mixed scenarios')
            raise InvalidExpressionError('Cannot combine expressions defined on different scenarios')

        # Step 1: Agreeing on a common sense
        senses = {expression.sense for expression in expressions}

        if len(senses) > 1:
            expressions = [expression.normalized() for expression in expressions]
            sense = Sense.MAXIMIZE
        else:
            sense = senses.pop()

        # Step 2: Concatenating the weighted terms
        terms : List[ExpressionTerm] = [
            term.scaled(to_fraction(weight))
            for expression, weight in zip(expressions, weights)
            if to_fraction(weight) != 0
            for term in expression.terms
        ]

        if merge:
            terms = self.__merge_equal_supports(terms)

        combined_name = name if name is not None else ' + '.join(
            expression.name if to_fraction(weight) == 1 else f'{weight}*{expression.name}'
            for expression, weight in zip(expressions, weights)
        )

        return Expression(scenario, tuple(terms), sense, combined_name)


    def reduce_to(self, expression : Expression, vertices : Iterable[str], name : str | None = None) -> Expression:
        """
        Method to keep exactly the terms whose support lies inside a vertex subset.

        Args:
            expression (Expression): the expression to be reduced.
            vertices (Iterable[str]): the vertex subset.
            name (str | None): the name of the reduced expression.

        Returns:
            The reduced expression.
        """
        vertices = set(vertices)
        kept = [term for term in expression.terms if set(term.support) <= vertices]

        return expression.with_terms(kept, name if name is not None else f'{expression.name}|{",".join(expression.scenario.ordered(vertices))}')


    def select_terms(self, expression : Expression, indices : Iterable[int], name : str | None = None) -> Expression:
        """
        Method to keep the terms at the given positions (in their original order).
        """
        indices = sorted(set(indices))
        return expression.with_terms([expression.terms[index] for index in indices], name)


    def negate(self, expression : Expression) -> Expression:
        """
        Method to negate every coefficient and flip the sense, giving an equivalent inequality.
        """
        flipped = Sense.MINIMIZE if expression.sense is Sense.MAXIMIZE else Sense.MAXIMIZE
        return Expression(expression.scenario, tuple(term.scaled(Fraction(-1)) for term in expression.terms), flipped, f'-({expression.name})')


    def __merge_equal_supports(self, terms : List[ExpressionTerm]) -> List[ExpressionTerm]:
        """
        Private method to sum the weighted tables of terms sharing the same (ordered) support.
        """
        merged : Dict[Tuple[str, ...], List[Fraction]] = OrderedDict()

        for term in terms:
            weighted = term.weighted_values()

            if term.support in merged:
                merged[term.support] = [current + value for current, value in zip(merged[term.support], weighted)]
            else:
                merged[term.support] = list(weighted)

        return [
            ExpressionTerm(support, Fraction(1), tuple(values))
            for support, values in merged.items()
            if any(value != 0 for value in values)
        ]
