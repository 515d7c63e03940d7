"""
Module to implement the command-line application that exposes the monogamy engine on JSON documents.

Exit codes: 0 on success or CERTIFIED, 1 on FAILED, NONE or FAIL outcomes, 2 on input errors and 3 when a budget
is exceeded.
"""


import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Any, Callable, Dict, List, Sequence, Tuple

from monogamy_engine._utils.loggable_entity import LoggableEntity
from monogamy_engine._utils.rationals import format_fraction
from monogamy_engine.behaviors.behavior_analyzer import BehaviorAnalyzer
from monogamy_engine.bounds.classical_bound_calculator import ClassicalBoundCalculator
from monogamy_engine.bounds.no_disturbance_bound_calculator import NoDisturbanceBoundCalculator
from monogamy_engine.catalog.fixture_catalog import FixtureCatalog
from monogamy_engine.configuration.engine_config import EngineConfig, parse_log_level
from monogamy_engine.errors.behavior_errors import DisturbanceError, MalformedBehaviorError, UnsupportedTermError
from monogamy_engine.errors.config_errors import IllegalConfigurationError
from monogamy_engine.errors.graph_errors import NonChordalGraphError, UnknownVertexError
from monogamy_engine.errors.operational_errors import BudgetExceededError, GateFailureError, InfeasibleProgramError, UnboundedProgramError
from monogamy_engine.errors.scenario_errors import InvalidDecompositionError, InvalidExpressionError, InvalidScenarioError
from monogamy_engine.errors.serialization_errors import MalformedDocumentError
from monogamy_engine.graphs.chordal_graph_analyzer import ChordalGraphAnalyzer
from monogamy_engine.monogamy.cycle_decomposer import CycleDecomposer
from monogamy_engine.monogamy.decomposition_searcher import DecompositionSearcher
from monogamy_engine.monogamy.decomposition_verifier import DecompositionVerifier
from monogamy_engine.scenario.expression import Expression
from monogamy_engine.scenario.scenario import Scenario
from monogamy_engine.serialization.json_codec import Document, JsonCodec


EXIT_SUCCESS : int = 0
EXIT_NEGATIVE : int = 1
EXIT_INPUT_ERROR : int = 2
EXIT_BUDGET : int = 3

INPUT_ERRORS : Tuple[type, ...] = (
    MalformedDocumentError,
    IllegalConfigurationError,
    InvalidScenarioError,
    InvalidExpressionError,
    InvalidDecompositionError,
    MalformedBehaviorError,
    DisturbanceError,
    UnsupportedTermError,
    NonChordalGraphError,
    UnknownVertexError,
    InfeasibleProgramError,
    UnboundedProgramError,
)


class MonogamyCli(LoggableEntity):
    """
    A class to implement the command-line application: one handler per subcommand, each one calling a single
    engine entry point and returning a JSON document with an exit code.
    """


    def __init__(self, config : EngineConfig, show_progress : bool = False) -> None:
        """
        Constructor method for the `MonogamyCli` class.

        Args:
            config (EngineConfig): the configuration, command-line overrides already applied.
            show_progress (bool): whether long computations report progress bars.
        """
        super().__init__(config.log_level)

        self.config = config
        self.show_progress = show_progress
        self.codec = JsonCodec(config.log_level)


    def chordal_check(self, args : argparse.Namespace) -> Tuple[Document, int]:
        """
        Method to check whether the commutation graph of a scenario is chordal, with a chordless cycle otherwise.
        """
        scenario = self.__read_scenario(args.input)
        analyzer = ChordalGraphAnalyzer(self.config.log_level)
        ordering = analyzer.mcs_ordering(scenario.graph)
        witness = None if ordering.is_perfect else analyzer.find_chordless_cycle(scenario.graph)

        return {
            'chordal' : ordering.is_perfect,
            'witness_cycle' : None if witness is None else list(witness),
            'elimination_order' : list(ordering.order) if ordering.is_perfect else None,
        }, EXIT_SUCCESS


    def clique_tree(self, args : argparse.Namespace) -> Tuple[Document, int]:
        """
        Method to build the maximal clique tree of a chordal scenario.
        """
        scenario = self.__read_scenario(args.input)
        tree = ChordalGraphAnalyzer(self.config.log_level).clique_tree(scenario.graph)

        return {
            'cliques' : [list(clique) for clique in tree.nodes],
            'edges' : [{'cliques' : [u, v], 'separator' : list(label)} for (u, v), label in zip(tree.edges, tree.labels)],
            'running_intersection' : tree.running_intersection_holds(),
        }, EXIT_SUCCESS


    def classical_bound(self, args : argparse.Namespace) -> Tuple[Document, int]:
        """
        Method to compute the classical and algebraic bounds of an expression.
        """
        document = self.codec.read(args.input)
        expression = self.__read_expression(document)
        calculator = ClassicalBoundCalculator(self.config, self.config.log_level, self.show_progress)

        return {
            **self.codec.encode_bound(calculator.classical_max(expression)),
            'algebraic' : format_fraction(calculator.algebraic_max(expression).value),
        }, EXIT_SUCCESS


    def nd_max(self, args : argparse.Namespace) -> Tuple[Document, int]:
        """
        Method to compute the no-disturbance bound of an expression.
        """
        document = self.codec.read(args.input)
        expression = self.__read_expression(document)
        solution = NoDisturbanceBoundCalculator(self.config, self.config.log_level, self.show_progress).nd_max(expression)

        return self.codec.encode_lp_solution(solution), EXIT_SUCCESS


    def verify_box(self, args : argparse.Namespace) -> Tuple[Document, int]:
        """
        Method to check a box for well-formedness and no-disturbance, and to evaluate an expression on it if given.
        """
        document = self.codec.read(args.input)
        scenario = self.codec.decode_scenario(self.__section(document, 'scenario'))
        box = self.codec.decode_box(self.__section(document, 'box'), scenario)
        analyzer = BehaviorAnalyzer(self.config.log_level)

        analyzer.validate(box)
        report = analyzer.is_no_disturbance(box)
        output : Document = {
            'well_formed' : True,
            'no_disturbance' : report.holds,
            'violations' : [
                {'contexts' : [list(violation.first_context), list(violation.second_context)], 'shared' : list(violation.shared)}
                for violation in report.violations
            ],
        }

        if 'expression' in document:
            expression = self.codec.decode_expression(self.__section(document, 'expression'), scenario)
            output['value'] = format_fraction(analyzer.evaluate(expression, box))

        return output, EXIT_SUCCESS if report.holds else EXIT_NEGATIVE


    def certify(self, args : argparse.Namespace) -> Tuple[Document, int]:
        """
        Method to verify a decomposition, or with `--check` to re-verify a certificate emitted earlier.
        """
        document = self.codec.read(args.input)
        verifier = DecompositionVerifier(self.config, self.config.log_level)

        if args.check:
            expression, decomposition, verdict, omega_c = self.codec.decode_certificate(document)
            certificate = verifier.verify_decomposition(expression, decomposition)
            consistent = certificate.verdict.value == verdict and certificate.omega_c == omega_c

            return {
                'consistent' : consistent,
                'claimed' : {'verdict' : verdict, 'omega_c' : format_fraction(omega_c)},
                'certificate' : self.codec.encode_certificate(certificate),
            }, EXIT_SUCCESS if consistent and certificate.certified else EXIT_NEGATIVE

        expression = self.__read_expression(document)
        decomposition = self.codec.decode_decomposition(self.__section(document, 'decomposition'), expression)
        certificate = verifier.verify_decomposition(expression, decomposition)

        return self.codec.encode_certificate(certificate), EXIT_SUCCESS if certificate.certified else EXIT_NEGATIVE


    def search_decomposition(self, args : argparse.Namespace) -> Tuple[Document, int]:
        """
        Method to search exhaustively for a certified decomposition.
        """
        document = self.codec.read(args.input)
        expression = self.__read_expression(document)
        outcome = DecompositionSearcher(self.config, self.config.log_level, self.show_progress).search_decomposition(expression, args.max_parts)

        return {
            'expression' : expression.name,
            'max_parts' : outcome.max_parts,
            'found' : outcome.found,
            'decomposition' : None if outcome.decomposition is None else self.codec.encode_decomposition(outcome.decomposition),
            'certificate' : None if outcome.certificate is None else self.codec.encode_certificate(outcome.certificate),
            'trace' : outcome.trace.as_dict(),
        }, EXIT_SUCCESS if outcome.found else EXIT_NEGATIVE


    def cycle_decompose(self, args : argparse.Namespace) -> Tuple[Document, int]:
        """
        Method to build and certify the decomposition of two cycle expressions sharing observables.
        """
        shared = self.__parse_shared(args.shared)
        pair = CycleDecomposer(self.config.log_level).build_cycle_pair(args.n, args.m, shared, args.contradiction, args.outcomes)
        certificate = DecompositionVerifier(self.config, self.config.log_level).verify_decomposition(pair.expression, pair.decomposition)

        return {
            'case' : pair.layout.case,
            'completion_edges' : [list(edge) for edge in pair.completion_edges],
            'certificate' : self.codec.encode_certificate(certificate),
        }, EXIT_SUCCESS if certificate.certified else EXIT_NEGATIVE


    def reproduce(self, args : argparse.Namespace) -> Tuple[Document, int]:
        """
        Method to recompute the recorded values of a fixture (or of all of them).
        """
        catalog = FixtureCatalog(self.config, self.config.log_level, self.show_progress)
        table = catalog.reproduce(args.fixture)

        if args.csv is not None:
            catalog.to_csv(args.csv)

        if args.table:
            print(table.to_string(index = False), file = sys.stderr)

        passed = bool((table['status'] == 'PASS').all())

        return {'fixture' : args.fixture, 'passed' : passed, 'rows' : table.to_dict(orient = 'records')}, EXIT_SUCCESS if passed else EXIT_NEGATIVE


    def export_fixture(self, args : argparse.Namespace) -> Tuple[Document, int]:
        """
        Method to export a gate-verified fixture as JSON.
        """
        return FixtureCatalog(self.config, self.config.log_level).export(args.fixture), EXIT_SUCCESS


    def __read_scenario(self, path : str) -> Scenario:
        """
        Private method to read a scenario document, or a bare graph given as vertices and edges.
        """
        document = self.codec.read(path)
        document = document.get('scenario', document)

        if 'observables' not in document and 'vertices' in document:
            document = {
                'observables' : [{'id' : str(vertex)} for vertex in document['vertices']],
                'edges' : [[str(vertex) for vertex in edge] for edge in document.get('edges', [])],
            }

        return self.codec.decode_scenario(document)


    def __read_expression(self, document : Document) -> Expression:
        """
        Private method to read the scenario and the expression of a problem document.
        """
        scenario = self.codec.decode_scenario(self.__section(document, 'scenario'))
        return self.codec.decode_expression(self.__section(document, 'expression'), scenario)


    def __section(self, document : Document, key : str) -> Document:
        """
        Private method to read a required object of a problem document.
        """
        if not isinstance(document.get(key), dict):
            raise MalformedDocumentError(f'Missing object "{key}"')

        return document[key]


    def __parse_shared(self, text : str) -> List[Tuple[int, int]]:
        """
        Private method to read shared positions written as "i:j,i:j".
        """
        try:
            pairs = [tuple(int(position) for position in pair.split(':')) for pair in text.split(',')]
        except ValueError as error:
            raise IllegalConfigurationError(f'Invalid shared positions "{text}", expected pairs such as 1:1,3:3') from error

        if any(len(pair) != 2 for pair in pairs):
            raise IllegalConfigurationError(f'Invalid shared positions "{text}", expected pairs such as 1:1,3:3')

        return pairs


def build_parser() -> argparse.ArgumentParser:
    """
    Function to build the argument parser with one sub-parser per subcommand.
    """
    common = argparse.ArgumentParser(add_help = False)
    common.add_argument('--config', default = None, help = 'configuration file (the root config.ini by default)')
    common.add_argument('--log-level', default = None, help = 'DEBUG, INFO, WARNING or ERROR')
    common.add_argument('--budget', type = int, default = None, help = 'work budget for enumerations and searches')
    common.add_argument('--threads', type = int, default = None, help = 'threads for the classical enumeration')
    common.add_argument('--progress', action = 'store_true', help = 'show progress bars')

    parser = argparse.ArgumentParser(prog = 'monogamy', description = 'Monogamy relations of Bell and non-contextuality inequalities')
    subparsers = parser.add_subparsers(dest = 'command', required = True)

    for command, help_text in (
        ('chordal-check', 'check chordality of a scenario graph'),
        ('clique-tree', 'build the maximal clique tree of a chordal scenario'),
        ('classical-bound', 'classical and algebraic bounds of an expression'),
        ('nd-max', 'no-disturbance bound of an expression'),
        ('verify-box', 'check a box and evaluate an expression on it'),
    ):
        subparser = subparsers.add_parser(command, parents = [common], help = help_text)
        subparser.add_argument('input', help = 'JSON document')

    certify = subparsers.add_parser('certify', parents = [common], help = 'verify a decomposition')
    certify.add_argument('input', help = 'JSON problem, or a certificate with --check')
    certify.add_argument('--check', action = 'store_true', help = 're-verify a certificate emitted earlier')

    search = subparsers.add_parser('search-decomposition', parents = [common], help = 'search a certified decomposition exhaustively')
    search.add_argument('input', help = 'JSON problem')
    search.add_argument('--max-parts', type = int, default = None, help = 'maximum number of parts (0 means the number of terms)')

    cycle = subparsers.add_parser('cycle-decompose', parents = [common], help = 'decompose two cycle expressions sharing observables')
    cycle.add_argument('--n', type = int, required = True, help = 'length of the first cycle')
    cycle.add_argument('--m', type = int, required = True, help = 'length of the second cycle')
    cycle.add_argument('--shared', required = True, help = 'shared positions as i:j pairs, for instance 1:1,3:3')
    cycle.add_argument('--contradiction', type = int, default = None, help = 'contradiction position in the second cycle (m by default)')
    cycle.add_argument('--outcomes', type = int, default = 2, help = 'number of outcomes per observable')

    reproduce = subparsers.add_parser('reproduce', parents = [common], help = 'recompute the recorded values of a fixture or of all fixtures')
    reproduce.add_argument('fixture', help = 'fixture name or "all"')
    reproduce.add_argument('--csv', default = None, help = 'also store the table as CSV')
    reproduce.add_argument('--table', action = 'store_true', help = 'print a human-readable table on standard error')

    export = subparsers.add_parser('export-fixture', parents = [common], help = 'export a fixture as JSON')
    export.add_argument('fixture', help = 'fixture name')

    return parser


HANDLERS : Dict[str, Callable[[MonogamyCli, argparse.Namespace], Tuple[Document, int]]] = {
    'chordal-check' : MonogamyCli.chordal_check,
    'clique-tree' : MonogamyCli.clique_tree,
    'classical-bound' : MonogamyCli.classical_bound,
    'nd-max' : MonogamyCli.nd_max,
    'verify-box' : MonogamyCli.verify_box,
    'certify' : MonogamyCli.certify,
    'search-decomposition' : MonogamyCli.search_decomposition,
    'cycle-decompose' : MonogamyCli.cycle_decompose,
    'reproduce' : MonogamyCli.reproduce,
    'export-fixture' : MonogamyCli.export_fixture,
}


def run(argv : Sequence[str] | None = None) -> int:
    """
    Function to run one command, printing its JSON document on standard output.

    Args:
        argv (Sequence[str] | None): the arguments (the process arguments when None).

    Returns:
        The exit code.
    """
    args = build_parser().parse_args(argv)

    try:
        config = EngineConfig.from_file(args.config).with_overrides(
            classical_budget = args.budget,
            search_budget = args.budget,
            threads = args.threads,
            log_level = None if args.log_level is None else parse_log_level(args.log_level),
        )
        document, exit_code = HANDLERS[args.command](MonogamyCli(config, args.progress), args)
    except BudgetExceededError as error:
        document, exit_code = _error_document(error, required = error.required, budget = error.budget), EXIT_BUDGET
    except GateFailureError as error:
        document, exit_code = _error_document(error, candidates = {key : str(value) for key, value in error.candidates.items()}), EXIT_NEGATIVE
    except MalformedDocumentError as error:
        document, exit_code = _error_document(error, file = error.path, line = error.line, column = error.column), EXIT_INPUT_ERROR
    except INPUT_ERRORS as error:
        document, exit_code = _error_document(error), EXIT_INPUT_ERROR

    print(json.dumps(document, indent = 2, default = _default))

    return exit_code


def _error_document(error : Exception, **details : Any) -> Document:
    """
    Function to describe an error as a JSON document.
    """
    logging.getLogger('monogamy_engine.MonogamyCli').error(str(error))
    return {'error' : type(error).__name__, 'message' : str(error), **{key : value for key, value in details.items() if value is not None}}


def _default(value : Any) -> Any:
    """
    Function to serialize values the JSON encoder does not know.
    """
    if isinstance(value, Fraction):
        return format_fraction(value)

    return str(value)


def main() -> None:
    """
    Function to run the console script.
    """
    sys.exit(run())
