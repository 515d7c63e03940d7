"""
Module to implement the verification of chordal decompositions certifying monogamy relations.

A decomposition certifies the classical bound w_c of an expression as a no-disturbance bound when every part
induces a chordal subgraph, every term is assigned to a part containing its support, and the classical bounds
of the reduced expressions add up to w_c: on chordal parts the classical and no-disturbance bounds coincide.
"""


from fractions import Fraction
from typing import List

from pandas import DataFrame

from monogamy_engine._calculator import Calculator
from monogamy_engine._utils.rationals import format_fraction
from monogamy_engine.bounds.classical_bound_calculator import ClassicalBoundCalculator
from monogamy_engine.configuration.engine_config import EngineConfig
from monogamy_engine.errors.scenario_errors import InvalidDecompositionError
from monogamy_engine.graphs.chordal_graph_analyzer import ChordalGraphAnalyzer
from monogamy_engine.monogamy.decomposition import Decomposition, MonogamyCertificate, PartReport, Verdict
from monogamy_engine.scenario.expression import Expression
from monogamy_engine.scenario.expression_composer import ExpressionComposer


class DecompositionVerifier(Calculator):
    """
    A class to implement the decomposition verification functionality of the monogamy engine.
    """


    def __init__(
            self,
            config : EngineConfig | None = None,
            log_level : int | None = None,
            classical_calculator : ClassicalBoundCalculator | None = None
        ) -> None:
        """
        Constructor method for the `DecompositionVerifier` class.

        Args:
            config (EngineConfig | None): the engine configuration.
            log_level (int | None): the log level to be used for filtering logs in the runtime.
            classical_calculator (ClassicalBoundCalculator | None): a shared classical calculator (one is built when None).
        """
        super().__init__(config, log_level)
        self.classical_calculator = classical_calculator if classical_calculator is not None else ClassicalBoundCalculator(self.config, self.logger.level)
        self.graph_analyzer = ChordalGraphAnalyzer(self.logger.level)
        self.composer = ExpressionComposer(self.logger.level)


    def verify_decomposition(self, expression : Expression, decomposition : Decomposition) -> MonogamyCertificate:
        """
        Method to verify a decomposition of an expression.

        Args:
            expression (Expression): the (combined) expression.
            decomposition (Decomposition): the parts and the term assignment.

        Returns:
            The certificate, CERTIFIED or FAILED with the first violated check.
        """
        return self.calculate(expression, decomposition)


    def build_new_results(self, expression : Expression, decomposition : Decomposition) -> MonogamyCertificate:
        """
        Method to verify a decomposition from scratch.

        Args:
            expression (Expression): the (combined) expression.
            decomposition (Decomposition): the parts and the term assignment.

        Returns:
            The certificate.
        """
        self.logger.debug(f'Verifying decomposition "{decomposition.name}" of "{expression.name}"')

        self.__check_structure(expression, decomposition)
        scenario = expression.scenario
        reports : List[PartReport] = []

        # Step 1: Inspecting every part
        for index, part in enumerate(decomposition.parts):
            subgraph = self.graph_analyzer.induced_subgraph(scenario.graph, part)
            chordal = self.graph_analyzer.is_chordal(subgraph)
            terms = decomposition.terms_of(index)
            reduced = self.composer.select_terms(expression, terms, f'{expression.name}[{",".join(part)}]')

            reports.append(PartReport(
                tuple(part),
                terms,
                chordal,
                None if chordal else self.graph_analyzer.find_chordless_cycle(subgraph),
                reduced,
                self.classical_calculator.classical_max(reduced).value,
            ))

        omega_c = self.classical_calculator.classical_max(expression).value
        part_sum = sum((report.reduced_value for report in reports), Fraction(0))

        # Step 2: Reporting the first violated check
        verdict, reason = Verdict.CERTIFIED, f'{len(reports)} chordal parts whose classical bounds add up to {format_fraction(omega_c)}'
        non_chordal = next((report for report in reports if not report.chordal), None)
        misplaced = next(
            (position for position, holder in enumerate(decomposition.assignment) if not set(expression.terms[position].support) <= set(decomposition.parts[holder])),
            None
        )

        if non_chordal is not None:
            verdict, reason = Verdict.FAILED, f'part {{{", ".join(non_chordal.vertices)}}} is not chordal (chordless cycle {" - ".join(non_chordal.chordless_cycle or ())})'
        elif misplaced is not None:
            verdict, reason = Verdict.FAILED, f'term {misplaced} with support {expression.terms[misplaced].support} is assigned to a part not containing it'
        elif part_sum != omega_c:
            verdict, reason = Verdict.FAILED, f'the part bounds add up to {format_fraction(part_sum)} instead of the classical bound {format_fraction(omega_c)}'

        certificate = MonogamyCertificate(expression, decomposition, omega_c, tuple(reports), verdict, reason)

        self.logger.info(f'Decomposition "{decomposition.name}" of "{expression.name}": {verdict.value} ({reason})')

        return certificate


    def to_pandas_dataframe(self) -> DataFrame:
        """
        Method to transform the last certificate into a Pandas DataFrame (one row per part).

        Returns:
            A Pandas DataFrame with the vertices, chordality, term count and reduced bound of every part.
        """
        certificate : MonogamyCertificate = self.calculation_results

        return DataFrame([
            {
                'expression' : certificate.expression.name,
                'part' : ' '.join(report.vertices),
                'chordal' : report.chordal,
                'terms' : len(report.terms),
                'reduced_value' : format_fraction(report.reduced_value),
                'omega_c' : format_fraction(certificate.omega_c),
                'verdict' : certificate.verdict.value,
            }
            for report in certificate.parts
        ])


    def __check_structure(self, expression : Expression, decomposition : Decomposition) -> None:
        """
        Private method to reject decompositions that do not match their expression.
        """
        if len(decomposition.assignment) != len(expression.terms):
            raise InvalidDecompositionError(f'{len(decomposition.assignment)} assignments for {len(expression.terms)} terms')

        if any(not 0 <= holder < len(decomposition.parts) for holder in decomposition.assignment):
            raise InvalidDecompositionError(f'Assignments must reference parts 0..{len(decomposition.parts) - 1}')

        for part in decomposition.parts:
            expression.scenario.ordered(part)

        for position, term in enumerate(expression.terms):
            if not any(set(term.support) <= set(part) for part in decomposition.parts):
                self.logger.error(f'Term {position} lies in no part')
                raise InvalidDecompositionError(f'Term {position} with support {term.support} lies in no part')
