"""
Module to implement the JSON documents of the monogamy engine: scenarios, expressions, boxes, decompositions,
bounds and certificates. Every rational is written as a "p/q" string.
"""


import json
import logging
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from monogamy_engine._utils.loggable_entity import LoggableEntity
from monogamy_engine._utils.rationals import format_fraction, to_fraction
from monogamy_engine.behaviors.behavior import Behavior
from monogamy_engine.bounds.bound_result import NO_DISTURBANCE_BOUND, BoundResult, LPSolution
from monogamy_engine.errors.serialization_errors import MalformedDocumentError
from monogamy_engine.monogamy.decomposition import Decomposition, MonogamyCertificate
from monogamy_engine.scenario.expression import Expression, ExpressionTerm, Sense
from monogamy_engine.scenario.scenario import Observable, Scenario
from monogamy_engine.scenario.scenario_builder import ScenarioBuilder


Document = Dict[str, Any]


class JsonCodec(LoggableEntity):
    """
    A class to implement the JSON encoding and decoding functionality of the monogamy engine.
    """


    def __init__(self, log_level : int = logging.WARNING) -> None:
        """
        Constructor method for the `JsonCodec` class.

        Args:
            log_level (int): the log level to be used for filtering logs in the runtime.
        """
        super().__init__(log_level)
        self.builder = ScenarioBuilder(log_level)


    def read(self, path : str) -> Document:
        """
        Method to read a JSON document, reporting the location of syntax errors.

        Args:
            path (str): the path of the document.

        Returns:
            The parsed document.
        """
        self.logger.debug(f'Reading {path}')

        try:
            with open(path, 'r', encoding = 'utf-8') as document_file:
                document = json.load(document_file)
        except json.JSONDecodeError as error:
            self.logger.error(f'Malformed JSON in {path}')
            raise MalformedDocumentError(error.msg, path, error.lineno, error.colno) from error
        except OSError as error:
            raise MalformedDocumentError(f'Cannot read the document ({error.strerror})', path) from error

        if not isinstance(document, dict):
            raise MalformedDocumentError('The top-level value must be an object', path)

        return document


    def dumps(self, document : Document) -> str:
        """
        Method to write a document deterministically.
        """
        return json.dumps(document, indent = 2, sort_keys = False, ensure_ascii = False)


    def encode_scenario(self, scenario : Scenario) -> Document:
        """
        Method to encode a scenario with its observables, edges and maximal contexts.
        """
        return {
            'observables' : [
                {'id' : observable.id, 'outcomes' : observable.outcomes, 'party' : observable.party, 'label' : observable.label}
                for observable in scenario.observables
            ],
            'edges' : [list(edge) for edge in scenario.sorted_edges],
            'contexts' : [list(context) for context in scenario.contexts],
        }


    def decode_scenario(self, document : Document) -> Scenario:
        """
        Method to decode a scenario; listed contexts are made jointly measurable on top of the listed edges.
        """
        try:
            observables = tuple(
                Observable(str(entry['id']), int(entry.get('outcomes', 2)), entry.get('party'), entry.get('label'))
                for entry in self.__field(document, 'observables', list)
            )
        except (KeyError, TypeError, ValueError, AttributeError) as error:
            raise MalformedDocumentError(f'Malformed observable entry ({error})') from error

        try:
            edges = [tuple(str(vertex) for vertex in edge) for edge in self.__optional_list(document, 'edges')]
            contexts = [[str(vertex) for vertex in context] for context in self.__optional_list(document, 'contexts')]
        except TypeError as error:
            raise MalformedDocumentError(f'Edges and contexts must be lists of observable ids ({error})') from error

        if any(len(edge) != 2 for edge in edges):
            raise MalformedDocumentError('Every edge must list exactly two observables')

        scenario = Scenario(observables, frozenset(frozenset(edge) for edge in edges))

        return self.builder.add_contexts(scenario, contexts)


    def encode_expression(self, expression : Expression) -> Document:
        """
        Method to encode an expression (its scenario is encoded separately).
        """
        return {
            'name' : expression.name,
            'sense' : expression.sense.value,
            'terms' : [
                {
                    'support' : list(term.support),
                    'coefficient' : format_fraction(term.coefficient),
                    'values' : [format_fraction(value) for value in term.values],
                }
                for term in expression.terms
            ],
        }


    def decode_expression(self, document : Document, scenario : Scenario) -> Expression:
        """
        Method to decode an expression on a scenario.
        """
        sense = self.__sense(document.get('sense', Sense.MAXIMIZE.value))

        try:
            terms = tuple(
                ExpressionTerm(
                    tuple(term['support']),
                    self.__rational(term.get('coefficient', '1/1')),
                    tuple(self.__rational(value) for value in term['values'])
                )
                for term in self.__field(document, 'terms', list)
            )
        except (KeyError, TypeError, AttributeError) as error:
            raise MalformedDocumentError(f'Malformed term entry ({error})') from error

        return Expression(scenario, terms, sense, str(document.get('name', 'expression')))


    def encode_box(self, behavior : Behavior) -> Document:
        """
        Method to encode a behavior as its list of context tables.
        """
        return {
            'name' : behavior.name,
            'contexts' : [
                {'observables' : list(context), 'probabilities' : [format_fraction(entry) for entry in table]}
                for context, table in zip(behavior.contexts, behavior.tables)
            ],
        }


    def decode_box(self, document : Document, scenario : Scenario) -> Behavior:
        """
        Method to decode a behavior on a scenario (well-formedness is checked by the behavior analyzer).
        """
        contexts, tables = [], []

        try:
            for entry in self.__field(document, 'contexts', list):
                contexts.append(tuple(entry['observables']))
                tables.append(tuple(self.__rational(value) for value in entry['probabilities']))
        except (KeyError, TypeError) as error:
            raise MalformedDocumentError(f'Malformed context entry ({error})') from error

        return Behavior(scenario, tuple(contexts), tuple(tables), str(document.get('name', 'box')))


    def encode_decomposition(self, decomposition : Decomposition) -> Document:
        """
        Method to encode a decomposition: its parts and the part of every term.
        """
        return {
            'name' : decomposition.name,
            'parts' : [list(part) for part in decomposition.parts],
            'assignment' : list(decomposition.assignment),
        }


    def decode_decomposition(self, document : Document, expression : Expression | None = None) -> Decomposition:
        """
        Method to decode a decomposition; without an assignment every term goes to the first part containing it.
        """
        parts = [tuple(part) for part in self.__field(document, 'parts', list)]
        name = str(document.get('name', 'decomposition'))

        if 'assignment' in document:
            return Decomposition(tuple(parts), tuple(int(part) for part in document['assignment']), name)

        if expression is None:
            raise MalformedDocumentError('A decomposition without an assignment needs its expression')

        return Decomposition.from_parts(expression, parts, name)


    def encode_bound(self, result : BoundResult) -> Document:
        """
        Method to encode an algebraic or classical bound.
        """
        return {
            'expression' : result.expression_name,
            'kind' : result.kind,
            'sense' : result.sense.value,
            'value' : format_fraction(result.value),
            'witness' : None if result.witness is None else {identifier : int(outcome) for identifier, outcome in result.witness.items()},
            'assignments_enumerated' : result.assignments_enumerated,
        }


    def encode_lp_solution(self, solution : LPSolution) -> Document:
        """
        Method to encode a no-disturbance bound with its optimal box and the program sizes.
        """
        return {
            'expression' : solution.expression_name,
            'kind' : NO_DISTURBANCE_BOUND,
            'status' : solution.status.value,
            'sense' : solution.sense.value,
            'optimum' : None if solution.optimum is None else format_fraction(solution.optimum),
            'variables' : solution.variable_count,
            'constraints' : solution.constraint_count,
            'pivots' : solution.pivots,
            'details' : dict(solution.details),
            'witness' : None if solution.witness is None else self.encode_box(solution.witness),
        }


    def encode_certificate(self, certificate : MonogamyCertificate) -> Document:
        """
        Method to encode a monogamy certificate with everything needed to check it again.
        """
        return {
            'scenario' : self.encode_scenario(certificate.expression.scenario),
            'expression' : self.encode_expression(certificate.expression),
            'decomposition' : self.encode_decomposition(certificate.decomposition),
            'kind' : NO_DISTURBANCE_BOUND,
            'sense' : certificate.sense.value,
            'omega_c' : format_fraction(certificate.omega_c),
            'reduced_bound_kind' : certificate.reduced_bound_kind,
            'parts' : [
                {
                    'vertices' : list(part.vertices),
                    'terms' : list(part.terms),
                    'chordal' : part.chordal,
                    'chordless_cycle' : None if part.chordless_cycle is None else list(part.chordless_cycle),
                    'reduced_expression' : self.encode_expression(part.reduced_expression),
                    'value' : format_fraction(part.reduced_value),
                }
                for part in certificate.parts
            ],
            'part_sum' : format_fraction(certificate.part_sum),
            'verdict' : certificate.verdict.value,
            'reason' : certificate.reason,
            'trace' : None if certificate.trace is None else certificate.trace.as_dict(),
        }


    def decode_certificate(self, document : Document) -> Tuple[Expression, Decomposition, str, Fraction]:
        """
        Method to decode the checkable content of a certificate.

        Returns:
            The expression, the decomposition, the claimed verdict and the claimed bound.
        """
        scenario = self.decode_scenario(self.__field(document, 'scenario', dict))
        expression = self.decode_expression(self.__field(document, 'expression', dict), scenario)
        decomposition = self.decode_decomposition(self.__field(document, 'decomposition', dict), expression)

        return expression, decomposition, str(self.__field(document, 'verdict', str)), self.__rational(self.__field(document, 'omega_c', str))


    def encode_rows(self, rows : List[Dict[str, Any]]) -> List[Dict[str, Any]]:
        """
        Method to make table rows JSON-ready (rationals as "p/q" strings).
        """
        return [
            {key : format_fraction(value) if isinstance(value, Fraction) else value for key, value in row.items()}
            for row in rows
        ]


    def __field(self, document : Document, key : str, kind : type) -> Any:
        """
        Private method to read a required field of a given JSON type.
        """
        if not isinstance(document, dict) or key not in document:
            raise MalformedDocumentError(f'Missing field "{key}"')

        if not isinstance(document[key], kind):
            raise MalformedDocumentError(f'Field "{key}" must be of type {kind.__name__}')

        return document[key]


    def __optional_list(self, document : Document, key : str) -> List[List[Any]]:
        """
        Private method to read an optional list of lists (empty when absent).
        """
        if key not in document:
            return []

        entries = self.__field(document, key, list)

        if not all(isinstance(entry, list) for entry in entries):
            raise MalformedDocumentError(f'Every entry of "{key}" must be a list of observable ids')

        return entries


    def __rational(self, value : Any) -> Fraction:
        """
        Private method to read an exact rational ("p/q" string or integer).
        """
        try:
            return to_fraction(value)
        except (TypeError, ValueError, ZeroDivisionError) as error:
            raise MalformedDocumentError(f'Invalid rational {value!r}, expected a "p/q" string') from error


    def __sense(self, value : str) -> Sense:
        """
        Private method to read an optimization sense.
        """
        try:
            return Sense(str(value).upper())
        except ValueError as error:
            raise MalformedDocumentError(f'Invalid sense {value!r}') from error
