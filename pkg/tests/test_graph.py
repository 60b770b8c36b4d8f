import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capax.graph import (
    Graph,
    GraphSizeError,
    adjacency_matrix,
    complement,
    complete_graph,
    cycle_graph,
    empty_graph,
    hamming_distance,
    hamming_graph,
    petersen_graph,
    product_index,
    strong_power,
    strong_product,
    vertex_bits,
    vertex_value,
)
from oracles import random_graph, strong_adjacent


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


def check_structure(g: Graph):
    a = adjacency_matrix(g)
    assert np.array_equal(a, a.T)
    assert not np.any(np.diag(a))


def test_cube_graph_is_15_regular(gp):
    assert gp.n == 32
    assert gp.regular_degree() == 15
    assert gp.num_edges() == 240


def test_empty_distance_set_gives_edgeless():
    g = hamming_graph(5, [])
    assert g.n == 32 and g.num_edges() == 0


def test_three_cube_against_pair_enumeration():
    g = hamming_graph(3, [1])
    expected = {
        (u, v) for u, v in itertools.combinations(range(8), 2) if bin(u ^ v).count("1") == 1
    }
    assert set(g.edges()) == expected
    assert len(expected) == 12 and g.regular_degree() == 3
    # bipartite by parity of weight
    assert all(bin(u).count("1") % 2 != bin(v).count("1") % 2 for u, v in g.edges())


@pytest.mark.parametrize("m", [0, 17])
def test_hamming_dimension_range(m):
    with pytest.raises(ValueError):
        hamming_graph(m, [1])


@pytest.mark.parametrize("m,dists", [(1, [1]), (4, [2, 4]), (6, [1, 2, 3]), (7, [3])])
def test_hamming_degree(m, dists):
    g = hamming_graph(m, dists)
    assert set(g.degrees()) == {sum(math.comb(m, d) for d in dists)}
    check_structure(g)


def test_vertex_labels():
    assert vertex_value((1, 0, 0, 1, 0)) == 18
    assert vertex_bits(18, 5) == (1, 0, 0, 1, 0)
    assert [vertex_value(vertex_bits(v, 5)) for v in range(32)] == list(range(32))
    assert hamming_distance(vertex_value((1, 1, 1, 0, 1)), vertex_value((0, 0, 0, 0, 1))) == 3


def test_complement(gp):
    c = complement(gp)
    assert c.regular_degree() == 16
    assert complement(c) == gp
    k4 = complement(empty_graph(4))
    assert k4 == complete_graph(4) and k4.regular_degree() == 3


def test_strong_product_identity(gp):
    assert strong_product(complete_graph(1), gp) == gp


def test_strong_square_degree(gp_square):
    assert gp_square.n == 1024
    assert gp_square.regular_degree() == 16 * 16 - 1


def test_strong_square_condition_three(gp, gp_square):
    a = product_index(0b00000, 0b00000, 32)
    b = product_index(0b00001, 0b00011, 32)
    assert gp_square.has_edge(a, b)
    assert strong_adjacent(gp, gp, (0, 0), (1, 3))


def test_strong_power():
    g = cycle_graph(5)
    assert strong_power(g, 1) == g
    k2 = complete_graph(2)
    assert strong_power(k2, 2) == complete_graph(4)
    assert strong_power(g, 2) == strong_product(g, g)
    with pytest.raises(GraphSizeError):
        strong_power(hamming_graph(5, [1]), 5)
    with pytest.raises(ValueError):
        strong_power(g, 0)


def test_strong_power_two_of_cube_graph(gp, gp_square):
    assert strong_power(gp, 2) == gp_square


def test_product_size_cap():
    with pytest.raises(GraphSizeError):
        strong_product(complete_graph(40), complete_graph(40), size_cap=1000)


def test_adjacency_matrix():
    assert adjacency_matrix(complete_graph(2)).tolist() == [[0, 1], [1, 0]]
    c4 = adjacency_matrix(hamming_graph(2, [1]))
    # 00-01-11-10-00
    assert c4.tolist() == [[0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 0, 1], [0, 1, 1, 0]]


def test_adjacency_rows_of_cube_graph(gp):
    assert set(adjacency_matrix(gp).sum(axis=1)) == {15}


def test_petersen():
    p = petersen_graph()
    assert p.n == 10 and p.regular_degree() == 3 and p.num_edges() == 15


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))  # asymmetric
    with pytest.raises(ValueError):
        Graph(2, (0b01, 0))  # self-loop
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])


@settings(max_examples=60, deadline=None)
@given(graphs(), graphs())
def test_strong_product_matches_definition(g, h):
    p = strong_product(g, h)
    check_structure(p)
    for a, b in itertools.combinations(itertools.product(range(g.n), range(h.n)), 2):
        ia, ib = product_index(*a, h.n), product_index(*b, h.n)
        assert p.has_edge(ia, ib) == strong_adjacent(g, h, a, b)


@settings(max_examples=60, deadline=None)
@given(graphs(), graphs())
def test_strong_product_swap_isomorphism(g, h):
    gh, hg = strong_product(g, h), strong_product(h, g)
    swap = lambda i: (i % h.n) * g.n + i // h.n  # noqa: E731
    assert {(min(swap(u), swap(v)), max(swap(u), swap(v))) for u, v in gh.edges()} == set(hg.edges())


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=12))
def test_complement_edge_count(g):
    assert g.num_edges() + complement(g).num_edges() == math.comb(g.n, 2)
    check_structure(complement(g))


def test_regular_products_are_regular():
    rng = random.Random(1)
    for _ in range(5):
        g = cycle_graph(rng.randint(3, 7))
        h = hamming_graph(3, [rng.randint(1, 3)])
        d, e = g.regular_degree(), h.regular_degree()
        assert strong_product(g, h).regular_degree() == (d + 1) * (e + 1) - 1


def test_random_graphs_structural():
    rng = random.Random(5)
    for _ in range(20):
        check_structure(random_graph(rng.randint(1, 15), rng.random(), rng))
