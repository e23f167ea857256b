import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kpbit import (
    Assignment,
    Graph,
    GraphParseError,
    cut_value,
    energy,
    generate_random_graph,
    parse_graph,
    serialize_graph,
)

from conftest import assign

TRIANGLE_TEXT = "p edge 3 3\ne 1 2\ne 2 3\ne 1 3"


class TestParse:
    def test_triangle(self):
        g = parse_graph(TRIANGLE_TEXT)
        assert g.n == 3
        assert g.m == 3
        assert g == Graph(3, ((0, 1), (1, 2), (0, 2)))

    def test_nodes_without_edges(self):
        g = parse_graph("p edge 2 0")
        assert (g.n, g.m) == (2, 0)

    def test_comments_blanks_and_weight_column(self):
        text = "c a comment\n\np edge 3 2\ne 1 2 1.5\nc mid comment\ne 2 3 2\n"
        g = parse_graph(text)
        assert g.m == 2

    def test_self_loop_carries_line_number(self):
        with pytest.raises(GraphParseError) as err:
            parse_graph("p edge 2 1\ne 1 1")
        assert err.value.line_number == 2
        assert "self-loop" in str(err.value)

    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("e 1 2\np edge 2 1", "before"),
            ("p edge 2 1\np edge 2 1\ne 1 2", "duplicate 'p'"),
            ("p edge 2 1\ne 1 3", "out of range"),
            ("p edge 2 1\ne 1 2\ne 2 1", "duplicate edge"),
            ("p edge 3 2\ne 1 2", "declares 2 edges"),
            ("p edge 2 1\nq 1 2", "unknown line"),
            ("p edge x 1\ne 1 2", "non-integer"),
            ("p edge 2 1\ne 1 two", "non-numeric"),
            ("", "missing 'p edge"),
        ],
    )
    def test_malformed(self, text, fragment):
        with pytest.raises(GraphParseError, match=fragment):
            parse_graph(text)

    def test_roundtrip_explicit(self, triangle):
        assert parse_graph(serialize_graph(triangle)) == triangle

    @given(n=st.integers(1, 12), p=st.floats(0.0, 1.0), seed=st.integers(0, 2**32))
    @settings(max_examples=40, deadline=None)
    def test_roundtrip_random_graphs(self, n, p, seed):
        g = generate_random_graph(n, p, seed)
        assert parse_graph(serialize_graph(g)) == g


class TestGraphType:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError, match="self-loop"):
            Graph(2, ((1, 1),))

    def test_rejects_duplicate_even_reversed(self):
        with pytest.raises(ValueError, match="duplicate"):
            Graph(2, ((0, 1), (1, 0)))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            Graph(2, ((0, 2),))

    def test_adjacency_symmetric(self, triangle):
        adj = triangle.adjacency
        for u, v in triangle.edges:
            assert v in adj[u] and u in adj[v]
        assert triangle.max_degree == 2


class TestGenerate:
    def test_p_zero_and_one(self):
        assert generate_random_graph(5, 0.0, 123).m == 0
        assert generate_random_graph(5, 1.0, 123).m == 10

    def test_deterministic(self):
        a = generate_random_graph(30, 0.3, 1)
        b = generate_random_graph(30, 0.3, 1)
        assert a == b and a.edges == b.edges

    def test_seed_changes_graph(self):
        assert generate_random_graph(30, 0.3, 1) != generate_random_graph(30, 0.3, 2)

    def test_validation(self):
        with pytest.raises(ValueError):
            generate_random_graph(5, 1.5, 0)
        with pytest.raises(ValueError):
            generate_random_graph(-1, 0.5, 0)


class TestObjective:
    def test_triangle_examples(self, triangle):
        assert cut_value(triangle, assign([0, 1, 2], 3)) == 3
        assert cut_value(triangle, assign([0, 0, 0], 3)) == 0
        assert energy(triangle, assign([0, 1, 2], 3)) == -3
        assert energy(triangle, assign([0, 0, 0], 3)) == 3

    def test_path_example(self, path3):
        assert cut_value(path3, assign([0, 1, 0], 2)) == 2

    def test_size_mismatch(self, triangle):
        with pytest.raises(ValueError, match="covers"):
            cut_value(triangle, assign([0, 1], 3))
        with pytest.raises(ValueError, match="covers"):
            energy(triangle, assign([0, 1], 3))

    def test_identity_exhaustive_n8(self):
        # Independent recomputation over every 3-state assignment of an
        # 8-node graph: H = sum over edges of (2*[same] - 1) = m - 2*cut.
        g = generate_random_graph(8, 0.5, 42)
        for states in itertools.product(range(3), repeat=8):
            a = assign(states, 3)
            h_direct = sum(
                2 * (states[u] == states[v]) - 1 for u, v in g.edges
            )
            cut_direct = sum(states[u] != states[v] for u, v in g.edges)
            assert energy(g, a) == h_direct
            assert cut_value(g, a) == cut_direct
            assert energy(g, a) == g.m - 2 * cut_value(g, a)

    def test_max_cut_is_min_energy(self):
        # exhaustive check that the two objectives pick the same assignments
        g = generate_random_graph(5, 0.6, 17)
        best_cut, min_energy = -1, None
        cut_argmax, energy_argmin = set(), set()
        for states in itertools.product(range(3), repeat=5):
            a = assign(states, 3)
            c, h = cut_value(g, a), energy(g, a)
            if c > best_cut:
                best_cut, cut_argmax = c, {states}
            elif c == best_cut:
                cut_argmax.add(states)
            if min_energy is None or h < min_energy:
                min_energy, energy_argmin = h, {states}
            elif h == min_energy:
                energy_argmin.add(states)
        assert cut_argmax == energy_argmin

    @given(
        n=st.integers(1, 16),
        p=st.floats(0.0, 1.0),
        seed=st.integers(0, 2**32),
        k=st.integers(2, 4),
        data=st.data(),
    )
    @settings(max_examples=60, deadline=None)
    def test_identity_property(self, n, p, seed, k, data):
        g = generate_random_graph(n, p, seed)
        states = data.draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
        a = assign(states, k)
        assert energy(g, a) + 2 * cut_value(g, a) == g.m
        assert 0 <= cut_value(g, a) <= g.m


class TestAssignment:
    def test_label_bounds(self):
        with pytest.raises(ValueError):
            Assignment(np.array([0, 3]), 3)
        with pytest.raises(ValueError):
            Assignment(np.array([-1]), 3)

    def test_states_read_only(self):
        a = assign([0, 1], 2)
        with pytest.raises(ValueError):
            a.states[0] = 1

    def test_equality_and_hash(self):
        a = assign([0, 1, 2], 3)
        b = assign([0, 1, 2], 3)
        assert a == b and hash(a) == hash(b)
        assert a != assign([0, 1, 2], 4)
