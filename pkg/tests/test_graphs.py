import itertools

import networkx as nx
import numpy as np
import pytest

from monogamy_engine.errors.graph_errors import NonChordalGraphError, UnknownVertexError
from monogamy_engine.graphs.chordal_graph_analyzer import ChordalGraphAnalyzer


EXAMPLE_CLIQUES = ((1, 3, 5), (3, 5, 7), (3, 6, 7, 8), (3, 4, 6, 8), (2, 4, 6), (7, 9), (6, 10))


@pytest.fixture
def analyzer() -> ChordalGraphAnalyzer:
    return ChordalGraphAnalyzer()


@pytest.fixture
def example_graph() -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(1, 11))

    for clique in EXAMPLE_CLIQUES:
        graph.add_edges_from((u, v) for position, u in enumerate(clique) for v in clique[position + 1:])

    return graph


def test_example_graph_cliques(analyzer, example_graph):
    cliques = analyzer.maximal_cliques(example_graph)

    assert analyzer.is_chordal(example_graph)
    assert {frozenset(clique) for clique in cliques} == {frozenset(clique) for clique in EXAMPLE_CLIQUES}


def test_example_clique_tree_separators(analyzer, example_graph):
    tree = analyzer.clique_tree(example_graph)

    assert len(tree.edges) == 6
    assert tree.running_intersection_holds()
    assert sorted(sorted(separator) for separator in tree.separators) == sorted([[6], [7], [3, 5], [3, 7], [4, 6], [3, 6, 8]])


def test_example_reduced_clique_graph(analyzer, example_graph):
    reduced = analyzer.reduced_clique_graph(example_graph)

    assert reduced.number_of_nodes() == 7
    assert reduced.number_of_edges() == 9


def test_cycle_is_not_chordal(analyzer):
    cycle = nx.cycle_graph(5)

    assert not analyzer.mcs_ordering(cycle).is_perfect
    assert sorted(analyzer.find_chordless_cycle(cycle)) == [0, 1, 2, 3, 4]

    with pytest.raises(NonChordalGraphError) as error:
        analyzer.clique_tree(cycle)

    assert error.value.witness is not None


def test_chordal_graph_has_no_chordless_cycle(analyzer, example_graph):
    assert analyzer.find_chordless_cycle(example_graph) is None


def test_induced_subgraph_rejects_unknown_vertices(analyzer, example_graph):
    assert analyzer.induced_subgraph(example_graph, (3, 5, 7)).number_of_edges() == 3

    with pytest.raises(UnknownVertexError):
        analyzer.induced_subgraph(example_graph, (3, 42))


def test_minimal_separator(analyzer, example_graph):
    assert analyzer.is_minimal_separator(example_graph, (3, 5), 1, 7)
    assert not analyzer.is_minimal_separator(example_graph, (3, 5, 6), 1, 7)


def test_disconnected_graph_gives_a_forest(analyzer):
    graph = nx.Graph([(0, 1), (1, 2), (3, 4)])
    tree = analyzer.clique_tree(graph)

    assert len(tree.nodes) == 3
    assert len(tree.edges) == 1
    assert tree.running_intersection_holds()


@pytest.mark.parametrize('seed', range(8))
def test_agrees_with_networkx_on_random_graphs(analyzer, seed):
    rng = np.random.default_rng(seed)
    graph = nx.gnp_random_graph(8, float(rng.uniform(0.2, 0.7)), seed = seed)

    assert analyzer.is_chordal(graph) == nx.is_chordal(graph)
    assert {frozenset(clique) for clique in analyzer.maximal_cliques(graph)} == {frozenset(clique) for clique in nx.find_cliques(graph)}

    chordal, _ = nx.complete_to_chordal_graph(graph)
    assert analyzer.clique_tree(chordal).running_intersection_holds()


def induces_chordless_cycle(graph : nx.Graph, vertices) -> bool:
    """ Brute-force check that a vertex subset of size at least four induces exactly one cycle through all of it. """
    subgraph = graph.subgraph(vertices)

    return len(vertices) >= 4 and nx.is_connected(subgraph) and all(degree == 2 for _, degree in subgraph.degree)


def has_chordless_cycle(graph : nx.Graph) -> bool:
    nodes = list(graph.nodes)

    return any(
        induces_chordless_cycle(graph, subset)
        for size in range(4, len(nodes) + 1)
        for subset in itertools.combinations(nodes, size)
    )


@pytest.mark.parametrize('seed', [seed if seed < 50 else pytest.param(seed, marks = pytest.mark.slow) for seed in range(500)])
def test_chordality_matches_induced_cycle_search(analyzer, seed):
    rng = np.random.default_rng(seed)
    graph = nx.gnp_random_graph(int(rng.integers(1, 10)), float(rng.uniform(0.2, 0.8)), seed = seed)
    witness = analyzer.find_chordless_cycle(graph)

    assert analyzer.is_chordal(graph) == (not has_chordless_cycle(graph))
    assert (witness is None) == analyzer.is_chordal(graph)

    if witness is not None:
        assert induces_chordless_cycle(graph, witness)


@pytest.mark.parametrize('seed', range(10))
def test_separators_do_not_depend_on_vertex_order(analyzer, example_graph, seed):
    rng = np.random.default_rng(seed)
    graph = example_graph if seed == 0 else nx.complete_to_chordal_graph(nx.gnp_random_graph(9, 0.35, seed = seed))[0]
    nodes = list(graph.nodes)
    edges = list(graph.edges)
    rng.shuffle(nodes)
    rng.shuffle(edges)

    permuted = nx.Graph()
    permuted.add_nodes_from(nodes)
    permuted.add_edges_from((v, u) if rng.random() < 0.5 else (u, v) for u, v in edges)

    def separators(tree):
        return sorted(sorted(separator) for separator in tree.separators)

    assert separators(analyzer.clique_tree(permuted)) == separators(analyzer.clique_tree(graph))
