from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from lgkernel.generators import GenSpec, planted_instance, random_root
from lgkernel.graph import Graph, line_graph_of
from lgkernel.patterns import (
    MAX_PATTERN_SIZE,
    Modulator,
    TooManyPacked,
    beineke_patterns,
    build_modulator,
    find_forbidden_subgraph,
    match_pattern,
)
from lgkernel.recognition import is_line_graph
from instances import CLAW, K5_MINUS_EDGE, TWO_CLAWS, brute_yes, small_corpus
from strategies import graphs


def as_nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(g.vertices)
    out.add_edges_from(g.edges())
    return out


class TestPatternSet:
    def test_count_and_size(self):
        pats = beineke_patterns()
        assert [p.id for p in pats] == list(range(1, 10))
        assert all(p.graph.n <= MAX_PATTERN_SIZE for p in pats)

    def test_first_is_claw(self):
        g = beineke_patterns()[0].graph
        assert g.n == 4 and sorted(g.degree(v) for v in g.vertices) == [1, 1, 1, 3]

    def test_vertex_and_edge_counts(self):
        got = [(p.graph.n, p.graph.m) for p in beineke_patterns()]
        assert got == [(4, 3), (5, 7), (5, 9), (6, 7), (6, 8), (6, 9), (6, 9), (6, 10), (6, 11)]

    def test_pairwise_non_isomorphic(self):
        pats = beineke_patterns()
        for a, b in combinations(pats, 2):
            assert not nx.is_isomorphic(as_nx(a.graph), as_nx(b.graph))

    @pytest.mark.parametrize("pid", range(1, 10))
    def test_minimal_non_line(self, pid):
        g = beineke_patterns()[pid - 1].graph
        assert not is_line_graph(g)
        for v in g.vertices:
            assert is_line_graph(g.remove_vertices([v])[0])

    @pytest.mark.parametrize("pid", range(1, 10))
    def test_match_pattern_finds_itself_under_relabeling(self, pid):
        g = beineke_patterns()[pid - 1].graph
        perm = [(3 * v + 1) % g.n if g.n % 3 else (g.n - 1 - v) for v in g.vertices]
        h = Graph.from_edge_list(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
        assert match_pattern(h.adjacency, h.vertices) == pid

    def test_match_pattern_rejects_line_graphs(self):
        assert match_pattern(Graph.complete(5).adjacency, range(5)) is None
        assert match_pattern(Graph.complete(7).adjacency, range(7)) is None


class TestFindForbidden:
    def test_claw(self):
        assert find_forbidden_subgraph(CLAW) == (0, 1, 2, 3)

    def test_line_graph(self):
        g, _ = line_graph_of(random_root(15, 0.3, 4))
        assert find_forbidden_subgraph(g) is None

    def test_k5_minus_edge(self):
        found = find_forbidden_subgraph(K5_MINUS_EDGE)
        assert found == (0, 1, 2, 3, 4)
        assert match_pattern(K5_MINUS_EDGE.adjacency, found) == 3

    @given(graphs(max_n=9))
    @settings(max_examples=300)
    def test_result_is_a_pattern(self, g):
        found = find_forbidden_subgraph(g)
        if found is None:
            assert is_line_graph(g)
            return
        assert len(found) <= MAX_PATTERN_SIZE
        assert match_pattern(g.adjacency, found) is not None
        sub, _ = g.induced_subgraph(found)
        assert not is_line_graph(sub)

    @pytest.mark.parametrize("seed", range(5))
    def test_large_planted(self, seed):
        g, _ = planted_instance(GenSpec(120, 0.05, 3, seed))
        found = find_forbidden_subgraph(g)
        assert found is not None and match_pattern(g.adjacency, found) is not None


def check_modulator(g: Graph, k: int, mod) -> None:
    if isinstance(mod, TooManyPacked):
        assert len(mod.packing) == k + 1
    else:
        assert len(mod.packing) <= k
        assert len(mod.s) <= 6 * len(mod.packing)
        for v in mod.s:
            assert is_line_graph(g.remove_vertices(mod.s - {v})[0])
    seen_edges: set = set()
    for found in mod.packing:
        assert match_pattern(g.adjacency, found) is not None
        own = {(u, v) for u, v in combinations(found, 2) if g.has_edge(u, v)}
        assert not own & seen_edges
        seen_edges |= own


class TestModulator:
    def test_line_graph(self):
        g, _ = line_graph_of(random_root(12, 0.3, 1))
        assert build_modulator(g, 3) == Modulator(frozenset(), ())

    def test_claw(self):
        mod = build_modulator(CLAW, 1)
        assert mod.s == frozenset(range(4)) and len(mod.packing) == 1

    def test_two_claws(self):
        assert isinstance(build_modulator(TWO_CLAWS, 1), TooManyPacked)
        mod = build_modulator(TWO_CLAWS, 2)
        assert isinstance(mod, Modulator) and len(mod.s) == 8

    def test_negative_budget(self):
        with pytest.raises(ValueError):
            build_modulator(CLAW, -1)

    @given(graphs(max_n=10))
    @settings(max_examples=200)
    def test_invariants(self, g):
        for k in (0, 1, 3):
            check_modulator(g, k, build_modulator(g, k))

    def test_too_many_packed_is_no(self):
        hits = 0
        for _, g, k in small_corpus(150):
            if isinstance(build_modulator(g, k), TooManyPacked):
                hits += 1
                assert not brute_yes(g, k)
        assert hits > 0
