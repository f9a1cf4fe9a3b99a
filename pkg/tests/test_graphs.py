import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipart.graphs import (
    GnpSpec,
    Graph,
    VertexSet,
    common_neighborhood,
    density_deviation,
    independence_number_exact,
    independent_set_greedy,
    independent_set_search,
    induced_subgraph,
    max_balanced_biclique_side,
    parse_edge_list,
    format_edge_list,
    sample_gnp,
)

from conftest import gnp_graphs
from oracles import alpha_brute, balanced_side_brute


class TestGraphBasics:
    def test_constructor_rejects_asymmetry(self):
        with pytest.raises(ValueError, match="asymmetric"):
            Graph(2, (0b10, 0b00))

    def test_constructor_rejects_loops(self):
        with pytest.raises(ValueError, match="self-loop"):
            Graph(1, (0b1,))

    def test_constructor_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Graph(2, (0b100, 0b000))

    def test_edge_count(self):
        assert Graph.complete(5).m == 10
        assert Graph.complete_bipartite(2, 3).m == 6
        assert Graph.cycle(7).m == 7
        assert Graph.empty(4).m == 0

    def test_edges_lexicographic(self):
        g = Graph.from_edges(4, [(2, 3), (0, 1), (0, 3)])
        assert list(g.edges()) == [(0, 1), (0, 3), (2, 3)]


class TestSampleGnp:
    def test_p_one_gives_complete_graph(self):
        g = sample_gnp(GnpSpec(5, 1.0, 12345))
        assert g.m == 10

    def test_degenerate_p_gives_nearly_empty_graph(self):
        g = sample_gnp(GnpSpec(5, 1e-9, 1))
        assert g.m <= 1

    def test_edge_count_concentration_n2000(self):
        # Chernoff-style bound: |m - p*C(n,2)| <= 5*sqrt(C(n,2)) covers
        # 10 standard deviations at p = 1/2.
        g = sample_gnp(GnpSpec(2000, 0.5, 7))
        pairs = 2000 * 1999 // 2
        assert abs(g.m - 0.5 * pairs) <= 5 * math.sqrt(pairs)

    def test_rejects_bad_p(self):
        with pytest.raises(ValueError):
            GnpSpec(5, 0.0, 1)
        with pytest.raises(ValueError):
            GnpSpec(5, 1.5, 1)

    @given(n=st.integers(0, 40), seed=st.integers(0, 2**64 - 1),
           p=st.sampled_from([0.1, 0.5, 0.9]))
    @settings(max_examples=25, deadline=None)
    def test_determinism(self, n, seed, p):
        a = sample_gnp(GnpSpec(n, p, seed))
        b = sample_gnp(GnpSpec(n, p, seed))
        assert a.adj == b.adj


class TestInducedSubgraph:
    def test_triangle_from_k4(self):
        sub, mapping = induced_subgraph(Graph.complete(4), [0, 1, 2])
        assert sub.adj == Graph.complete(3).adj
        assert mapping == (0, 1, 2)

    def test_cycle_fragment(self):
        sub, mapping = induced_subgraph(Graph.cycle(5), [0, 1, 3])
        assert mapping == (0, 1, 3)
        assert list(sub.edges()) == [(0, 1)]

    def test_empty_selection(self):
        sub, mapping = induced_subgraph(Graph.complete(4), [])
        assert sub.n == 0 and mapping == ()

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            induced_subgraph(Graph.complete(3), [0, 5])

    @given(gnp_graphs(max_n=9))
    @settings(max_examples=25, deadline=None)
    def test_full_selection_is_identity(self, g):
        sub, mapping = induced_subgraph(g, range(g.n))
        assert sub.adj == g.adj
        assert mapping == tuple(range(g.n))


class TestCommonNeighborhood:
    def test_k4(self):
        assert common_neighborhood(Graph.complete(4), [0, 1]).as_set() == {2, 3}

    def test_c5(self):
        assert common_neighborhood(Graph.cycle(5), [0, 2]).as_set() == {1}

    def test_star_leaves_share_center(self):
        star = Graph.from_edges(5, [(0, 4), (1, 4), (2, 4), (3, 4)])
        assert common_neighborhood(star, [0, 1]).as_set() == {4}

    def test_empty_set_rejected(self):
        with pytest.raises(ValueError):
            common_neighborhood(Graph.complete(3), [])

    @given(gnp_graphs(min_n=2, max_n=9), st.data())
    @settings(max_examples=40, deadline=None)
    def test_forms_complete_bipartite_pair(self, g, data):
        size = data.draw(st.integers(1, g.n))
        members = data.draw(
            st.lists(st.integers(0, g.n - 1), min_size=size, max_size=size, unique=True)
        )
        cn = common_neighborhood(g, members)
        for x in members:
            for y in cn:
                assert g.has_edge(x, y)


class TestIndependence:
    def test_complete_graph(self):
        res = independence_number_exact(Graph.complete(6))
        assert res.value == 1 and res.complete

    def test_cycle_five(self):
        assert independence_number_exact(Graph.cycle(5)).value == 2

    def test_empty_graph(self):
        res = independence_number_exact(Graph.empty(7))
        assert res.value == 7 and res.witness.as_set() == set(range(7))

    def test_budget_exhaustion_reports_incomplete(self):
        g = sample_gnp(GnpSpec(30, 0.5, 3))
        res = independence_number_exact(g, budget=5)
        assert not res.complete
        assert res.value >= 1  # best-found lower bound still carried

    def test_matches_brute_force_200_seeds(self):
        for s in range(200):
            n = 4 + s % 9  # n in 4..12
            g = sample_gnp(GnpSpec(n, 0.5, 20_000 + s))
            assert independence_number_exact(g).value == alpha_brute(g), s

    def test_greedy_empty_graph(self):
        assert len(independent_set_greedy(Graph.empty(5), 1)) == 5

    def test_greedy_complete_graph(self):
        assert len(independent_set_greedy(Graph.complete(5), 9)) == 1

    def test_greedy_cycle_always_two(self):
        for seed in range(40):
            assert len(independent_set_greedy(Graph.cycle(5), seed)) == 2

    @given(gnp_graphs(min_n=1, max_n=10), st.integers(0, 1000))
    @settings(max_examples=30, deadline=None)
    def test_exact_at_least_greedy_and_maximal(self, g, seed):
        greedy = independent_set_greedy(g, seed)
        for v in greedy:
            assert not g.adj[v] & greedy.mask
        for v in range(g.n):
            if v not in greedy:
                assert g.adj[v] & greedy.mask  # maximality
        assert independence_number_exact(g).value >= len(greedy)

    def test_search_returns_maximal_independent_set(self):
        g = sample_gnp(GnpSpec(120, 0.5, 17))
        found = independent_set_search(g, 4, rounds=2, beam_width=32)
        for v in found:
            assert not g.adj[v] & found.mask
        for v in range(g.n):
            if v not in found:
                assert g.adj[v] & found.mask
        assert len(found) >= len(independent_set_greedy(g, 4))


class TestDensityDeviation:
    def test_k4_full_set(self):
        got = density_deviation(Graph.complete(4), range(4), p=1.0)
        expected = abs(6 - 8) / (8 * math.sqrt(math.log(4)))
        assert got == pytest.approx(expected)
        assert got == pytest.approx(0.2123, abs=1e-4)

    def test_empty_graph_small_p(self):
        got = density_deviation(Graph.empty(10), range(10), p=0.001)
        expected = 0.05 / (10**1.5 * math.sqrt(math.log(10)))
        assert got == pytest.approx(expected)

    def test_singleton_subset(self):
        got = density_deviation(Graph.complete(5), [2], p=0.4)
        assert got == pytest.approx(0.2 / math.sqrt(math.log(5)))

    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            density_deviation(Graph.empty(1), [0], p=0.5)


class TestBalancedBiclique:
    def test_k33(self):
        assert max_balanced_biclique_side(Graph.complete_bipartite(3, 3)) == 3

    def test_c5_has_no_four_cycle(self):
        assert max_balanced_biclique_side(Graph.cycle(5)) == 1

    def test_edgeless(self):
        assert max_balanced_biclique_side(Graph.empty(6)) == 0

    def test_exact_refused_when_large(self):
        with pytest.raises(ValueError, match="refused"):
            max_balanced_biclique_side(Graph.empty(21), "exact")

    def test_exact_matches_brute(self):
        for s in range(30):
            g = sample_gnp(GnpSpec(8, 0.5, 31_000 + s))
            assert max_balanced_biclique_side(g) == balanced_side_brute(g), s

    def test_heuristic_finds_planted_k55(self):
        g = Graph.complete_bipartite(5, 5)
        assert max_balanced_biclique_side(g, "heuristic", budget=200, seed=1) == 5

    def test_heuristic_never_exceeds_exact(self):
        for s in range(20):
            g = sample_gnp(GnpSpec(12, 0.5, 44_000 + s))
            exact = max_balanced_biclique_side(g, "exact")
            heur = max_balanced_biclique_side(g, "heuristic", budget=150, seed=s)
            assert heur <= exact, s


class TestEdgeListFormat:
    def test_round_trip(self):
        g = sample_gnp(GnpSpec(9, 0.5, 77))
        assert parse_edge_list(format_edge_list(g)).adj == g.adj

    def test_header_and_lines(self):
        text = format_edge_list(Graph.from_edges(3, [(0, 1), (1, 2)]))
        assert text == "3 2\n0 1\n1 2\n"

    @pytest.mark.parametrize(
        "bad",
        [
            "2 1\n0 0\n",          # loop
            "2 1\n1 0\n",          # reversed endpoints
            "2 1\n0 5\n",          # out of range
            "3 2\n0 1\n0 1\n",     # duplicate
            "3 2\n0 1\n",          # count mismatch
            "x y\n",               # bad header
            "",                    # empty
        ],
    )
    def test_rejects_malformed(self, bad):
        with pytest.raises(ValueError):
            parse_edge_list(bad)


class TestVertexSet:
    def test_ascending_iteration(self):
        vs = VertexSet.of([5, 1, 3], 8)
        assert vs.as_tuple() == (1, 3, 5)
        assert list(vs) == [1, 3, 5]
        assert 3 in vs and 2 not in vs

    def test_universe_enforced(self):
        with pytest.raises(ValueError):
            VertexSet.of([4], 3)
