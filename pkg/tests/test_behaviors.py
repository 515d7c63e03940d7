from fractions import Fraction

import numpy as np
import pytest

from monogamy_engine.behaviors.behavior import Behavior, JointDistribution
from monogamy_engine.behaviors.behavior_analyzer import BehaviorAnalyzer
from monogamy_engine.behaviors.joint_distribution_builder import JointDistributionBuilder
from monogamy_engine.errors.behavior_errors import DisturbanceError, MalformedBehaviorError, UnsupportedTermError
from monogamy_engine.errors.graph_errors import NonChordalGraphError
from monogamy_engine.scenario.expression import Expression, ExpressionTerm

from tests.conftest import random_chordal_scenario


@pytest.fixture
def analyzer() -> BehaviorAnalyzer:
    return BehaviorAnalyzer()


def test_pr_box_is_no_disturbance_and_reaches_four(analyzer, chsh, pr_box):
    assert analyzer.is_no_disturbance(pr_box).holds
    assert analyzer.evaluate(chsh, pr_box) == 4


def test_signalling_box_reports_the_violated_pair(analyzer, chsh_scenario):
    box = Behavior.from_function(
        chsh_scenario,
        lambda context, outcomes : int(outcomes['A1'] == (1 if 'B2' in context else 0)) * Fraction(1, 2) if 'A1' in context else Fraction(1, 4)
    )
    report = analyzer.is_no_disturbance(box)

    assert not report
    assert report.violations[0].first_context == ('A1', 'B1')
    assert report.violations[0].second_context == ('A1', 'B2')
    assert report.violations[0].shared == ('A1',)


@pytest.mark.parametrize('tables', [
    ((1, 0, 0, 0),) * 3 + ((Fraction(1, 2), 0, 0, 0),),
    ((1, 0, 0, 0),) * 3 + ((2, -1, 0, 0),),
    ((1, 0, 0, 0),) * 3 + ((1, 0, 0),),
])
def test_malformed_tables_are_rejected(analyzer, chsh_scenario, tables):
    with pytest.raises(MalformedBehaviorError):
        analyzer.validate(Behavior(chsh_scenario, chsh_scenario.contexts, tables))


def test_evaluate_rejects_malformed_tables(analyzer, chsh, chsh_scenario):
    box = Behavior(chsh_scenario, chsh_scenario.contexts, ((1, 0, 0, 0),) * 3 + ((2, -1, 0, 0),))

    with pytest.raises(MalformedBehaviorError):
        analyzer.evaluate(chsh, box)


def test_missing_context_is_rejected(analyzer, chsh_scenario):
    with pytest.raises(MalformedBehaviorError):
        analyzer.validate(Behavior(chsh_scenario, chsh_scenario.contexts[:3], ((1, 0, 0, 0),) * 3))


def test_marginal_follows_subset_order(analyzer, pr_box):
    assert analyzer.marginal(pr_box, ('A2', 'B2'), ('B2',)) == (Fraction(1, 2), Fraction(1, 2))
    assert analyzer.marginal(pr_box, ('A2', 'B2'), ('B2', 'A2')) == (0, Fraction(1, 2), Fraction(1, 2), 0)
    assert analyzer.marginal(pr_box, ('A1', 'B1'), ()) == (1,)


def test_deterministic_behavior(analyzer, chsh, chsh_scenario):
    box = analyzer.deterministic_behavior(chsh_scenario, {'A1' : 0, 'A2' : 0, 'B1' : 0, 'B2' : 0})

    assert analyzer.is_no_disturbance(box).holds
    assert analyzer.evaluate(chsh, box) == 2

    with pytest.raises(MalformedBehaviorError):
        analyzer.deterministic_behavior(chsh_scenario, {'A1' : 0})


def test_unsupported_term(analyzer, chsh, builder):
    scenario = builder.add_contexts(chsh.scenario, [('A1', 'A2')])
    box = analyzer.deterministic_behavior(chsh.scenario, {'A1' : 0, 'A2' : 0, 'B1' : 0, 'B2' : 0})

    assert analyzer.evaluate(Expression(scenario, (chsh.terms[0],), name = 'A1 B1'), box) == 1

    with pytest.raises(UnsupportedTermError):
        analyzer.evaluate(Expression(scenario, (ExpressionTerm(('A1', 'A2'), 1, (1, 0, 0, 0)),), name = 'A1 A2'), box)


def test_compatible_marginals(analyzer, chsh_scenario):
    zeros = {'A1' : 0, 'A2' : 0, 'B1' : 0, 'B2' : 0}
    first = analyzer.deterministic_behavior(chsh_scenario, zeros)
    second = analyzer.deterministic_behavior(chsh_scenario, {**zeros, 'B2' : 1})

    assert analyzer.compatible_marginals(first, second, ('A1', 'A2', 'B1'))
    assert not analyzer.compatible_marginals(first, second, ('A1', 'B2'))


def test_joint_distribution_requires_a_chordal_scenario(chsh_scenario, pr_box):
    with pytest.raises(NonChordalGraphError):
        JointDistributionBuilder().jpd_from_clique_tree(pr_box)


def test_joint_distribution_requires_no_disturbance(builder):
    scenario = builder.build_bell_scenario([('A', builder.dichotomic('A1')), ('B', builder.dichotomic('B1', 'B2'))])
    box = Behavior(scenario, scenario.contexts, ((1, 0, 0, 0), (0, 0, 1, 0)))

    with pytest.raises(DisturbanceError):
        JointDistributionBuilder().jpd_from_clique_tree(box)


@pytest.mark.parametrize('seed', [seed if seed < 10 else pytest.param(seed, marks = pytest.mark.slow) for seed in range(100)])
def test_joint_distribution_reproduces_every_context(seed):
    rng = np.random.default_rng(seed)
    scenario = random_chordal_scenario(rng, int(rng.integers(3, 7)))
    weights = rng.integers(0, 5, size = 2 ** len(scenario.ids))
    weights[0] += 1
    joint = JointDistribution(scenario.ids, (2,) * len(scenario.ids), tuple(Fraction(int(weight), int(weights.sum())) for weight in weights))

    builder = JointDistributionBuilder()
    box = builder.marginalize_joint(joint, scenario)
    rebuilt = builder.jpd_from_clique_tree(box)

    assert sum(rebuilt.probabilities) == 1
    assert all(entry >= 0 for entry in rebuilt.probabilities)
    assert builder.marginalize_joint(rebuilt, scenario).tables == box.tables
