"""Covering-path solver tests: the brute-force oracles, hand-worked
family values, solver-vs-oracle equality on random cacti, and the
2n-3 length bound."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cactusq.covering_path import (
    CoveringPath,
    TooLarge,
    brute_force_oracle,
    brute_force_visit_all,
    solve_cactus,
)
from cactusq.families import chain_of_squares, cycle, fig3_cactus, line, star
from cactusq.graph_core import Graph, random_cactus

# three legs of length 2 hanging off vertex 0: the shortest covering walk
# must re-enter the hub, so no simple covering path exists at all
SPIDER = Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])


class TestCoveringPathType:
    def test_from_vertices_checks_adjacency(self):
        g = line(4)
        with pytest.raises(ValueError):
            CoveringPath.from_vertices(g, [0, 2])

    def test_counts(self):
        g = cycle(4)
        p = CoveringPath.from_vertices(g, [0, 1, 0])
        assert p.k == 3 and p.k_distinct == 2 and p.length == 2

    def test_is_covering(self):
        g = line(5)
        assert CoveringPath.from_vertices(g, [1, 2, 3]).is_covering(g)
        assert not CoveringPath.from_vertices(g, [1, 2]).is_covering(g)

    def test_fringe(self):
        g = star(5)
        p = CoveringPath.from_vertices(g, [0])
        assert p.fringe == frozenset({1, 2, 3, 4})


class TestOracles:
    def test_oracle_line4(self):
        p = brute_force_oracle(line(4))
        assert p.k == 2 and p.is_covering(line(4))

    def test_oracle_spider_needs_revisit(self):
        p = brute_force_oracle(SPIDER)
        assert p.k == 5 and p.k_distinct == 4

    def test_oracle_size_cap(self):
        with pytest.raises(TooLarge):
            brute_force_oracle(line(17))

    def test_visit_all_differs_from_covering(self):
        # visiting every vertex of the 3-square chain takes 11 path
        # elements (10 edges); covering needs only 5
        p = brute_force_visit_all(fig3_cactus())
        assert p.k == 11 and p.length == 10
        assert set(p.vertices) == set(range(10))

    def test_visit_all_complete(self):
        p = brute_force_visit_all(Graph.from_edges(3, [(0, 1), (1, 2), (2, 0)]))
        assert p.k == 3


class TestSolverHandValues:
    # (graph, element count): lines need n-2 interior vertices (n >= 3),
    # cycles t-2 consecutive vertices, stars just the center
    CASES = [
        (line(2), 1),
        (line(3), 1),
        (line(4), 2),
        (line(5), 3),
        (line(7), 5),
        (cycle(3), 1),
        (cycle(4), 2),
        (cycle(5), 3),
        (cycle(8), 6),
        (star(5), 1),
        (star(9), 1),
        (fig3_cactus(), 5),
        (chain_of_squares(4), 7),
        (chain_of_squares(5), 9),
        (SPIDER, 5),
    ]

    @pytest.mark.parametrize("g, k", CASES, ids=lambda c: getattr(c, "n", c))
    def test_family_lengths(self, g, k):
        p = solve_cactus(g)
        assert p.k == k
        assert p.is_covering(g)

    def test_single_vertex(self):
        p = solve_cactus(Graph.from_edges(1, []))
        assert p.vertices == (0,)

    def test_fig3_exact_path(self):
        # one diagonal walk down the 3-square chain: length 4, five fringe
        # vertices left to neighbors
        p = solve_cactus(fig3_cactus())
        assert p.vertices == (8, 6, 5, 3, 1)
        assert sorted(p.fringe) == [0, 2, 4, 7, 9]

    def test_solver_deterministic(self):
        g = random_cactus(12, 3)
        assert solve_cactus(g).vertices == solve_cactus(g).vertices


class TestSolverAgainstOracle:
    @settings(max_examples=120, deadline=None)
    @given(st.integers(2, 12), st.integers(0, 400))
    def test_length_matches_oracle(self, n, seed):
        g = random_cactus(n, seed)
        ours = solve_cactus(g)
        oracle = brute_force_oracle(g)
        assert ours.k == oracle.k
        assert ours.is_covering(g)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(2, 40), st.integers(0, 400))
    def test_length_bound(self, n, seed):
        g = random_cactus(n, seed)
        assert solve_cactus(g).length <= 2 * n - 3
