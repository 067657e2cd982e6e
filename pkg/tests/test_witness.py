import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from bookramsey.errors import InputError
from bookramsey.graph import complete_graph, from_edge_list, mask_of
from bookramsey.sampler import Seed, sample_gnp, sample_uniform_coloring
from bookramsey.witness import (
    TwoColoring,
    color_subgraph,
    find_mono_biclique,
    find_mono_book,
    goodman_counts,
    max_book_size,
    verify_book_witness,
)

from conftest import brute_triangles, small_graphs


def all_red(g):
    return TwoColoring(g, (1 << g.edge_count) - 1)


def pentagon_coloring():
    """K_5 split into a red 5-cycle and a blue 5-cycle (both triangle-free)."""
    g = complete_graph(5)
    red_cycle = {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}
    red = 0
    for i, e in enumerate(g.edges()):
        if e in red_cycle:
            red |= 1 << i
    return TwoColoring(g, red)


@st.composite
def small_colorings(draw, max_n=8):
    g = draw(small_graphs(max_n=max_n))
    red = draw(st.integers(min_value=0, max_value=(1 << g.edge_count) - 1))
    return TwoColoring(g, red)


class TestTwoColoring:
    def test_mask_out_of_range(self):
        with pytest.raises(InputError):
            TwoColoring(complete_graph(3), 1 << 3)

    def test_is_red_symmetric_lookup(self):
        c = all_red(complete_graph(3))
        assert c.is_red(2, 0) and c.is_red(0, 2)

    def test_swapped_complement(self):
        c = pentagon_coloring()
        s = c.swapped()
        assert c.red_edges ^ s.red_edges == (1 << 10) - 1


class TestColorSubgraph:
    def test_all_red_k4(self):
        c = all_red(complete_graph(4))
        assert color_subgraph(c, "red") == complete_graph(4)
        assert color_subgraph(c, "blue").edge_count == 0

    def test_alternating_c4(self):
        g = from_edge_list(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        # canonical edge order (0,1),(0,3),(1,2),(2,3); alternate around the
        # cycle: red (0,1) and (2,3)
        c = TwoColoring(g, 0b1001)
        red = color_subgraph(c, "red")
        assert red.edge_count == 2 and all(red.degree(v) == 1 for v in range(4))

    def test_empty_host(self):
        c = TwoColoring(from_edge_list(3, []), 0)
        assert color_subgraph(c, "red").edge_count == 0
        assert color_subgraph(c, "blue").edge_count == 0


class TestGoodmanCounts:
    def test_all_red_k4(self):
        counts = goodman_counts(all_red(complete_graph(4)))
        assert (counts.T, counts.M_r, counts.M_b, counts.M_rb) == (4, 4, 0, 0)

    def test_k3_two_red_one_blue(self):
        counts = goodman_counts(TwoColoring(complete_graph(3), 0b011))
        assert counts.T == 1 and counts.M == 0 and counts.M_rb == 1

    def test_brute_force_classification(self):
        # random colorings of G(25,0.5) vs per-triangle classification
        for i in range(100):
            g = sample_gnp(25, 0.5, Seed(200).child(i))
            c = sample_uniform_coloring(g, Seed(201).child(i))
            m_r = m_b = m_rb = 0
            for a, b, d in brute_triangles(g):
                reds = c.is_red(a, b) + c.is_red(a, d) + c.is_red(b, d)
                if reds == 3:
                    m_r += 1
                elif reds == 0:
                    m_b += 1
                else:
                    m_rb += 1
            counts = goodman_counts(c)
            assert (counts.M_r, counts.M_b, counts.M_rb) == (m_r, m_b, m_rb)
            assert counts.T == m_r + m_b + m_rb


class TestFindMonoBook:
    def test_all_red_k6_n4(self):
        c = all_red(complete_graph(6))
        w = find_mono_book(c, 2, 4)
        assert w is not None and w.color == "red" and w.page_count == 4
        assert verify_book_witness(c, w, 2, 4)

    def test_all_red_k6_n5_absent(self):
        assert find_mono_book(all_red(complete_graph(6)), 2, 5) is None

    def test_pentagon_triangle_free(self):
        assert find_mono_book(pentagon_coloring(), 2, 1) is None

    def test_bad_params(self):
        with pytest.raises(InputError):
            find_mono_book(all_red(complete_graph(3)), 0, 1)


class TestFindMonoBiclique:
    def test_all_red_k5(self):
        c = all_red(complete_graph(5))
        w = find_mono_biclique(c, 2, 3)
        assert w is not None and w.page_count >= 3
        assert verify_book_witness(c, w, 2, 3, spine_is_clique=False)

    def test_matching_host_star_absent(self):
        g = from_edge_list(6, [(0, 1), (2, 3), (4, 5)])
        assert find_mono_biclique(all_red(g), 1, 2) is None

    def test_bipartite_k33(self):
        g = from_edge_list(6, [(u, v) for u in range(3) for v in range(3, 6)])
        w = find_mono_biclique(all_red(g), 3, 3)
        assert w is not None and w.page_count == 3


class TestMaxBookSize:
    def test_all_red_k6(self):
        c = all_red(complete_graph(6))
        assert max_book_size(c, "red", 2) == 4
        assert max_book_size(c, "blue", 2) == 0

    def test_pentagon(self):
        assert max_book_size(pentagon_coloring(), "red", 2) == 0


@given(small_colorings())
@settings(max_examples=100, deadline=None)
def test_goodman_identity(c):
    counts = goodman_counts(c)
    assert counts.M_r + counts.M_b + counts.M_rb == counts.T
    assert counts.M == counts.T - counts.M_rb


@given(small_colorings())
@settings(max_examples=100, deadline=None)
def test_color_swap_symmetry(c):
    a = goodman_counts(c)
    b = goodman_counts(c.swapped())
    assert (a.M_r, a.M_b) == (b.M_b, b.M_r)
    assert a.M_rb == b.M_rb and a.T == b.T


@given(small_colorings(), st.integers(1, 3), st.integers(1, 4))
@settings(max_examples=100, deadline=None)
def test_book_presence_iff_max_book_size(c, k, n):
    present = find_mono_book(c, k, n) is not None
    sizes = (max_book_size(c, "red", k), max_book_size(c, "blue", k))
    assert present == (max(sizes) >= n)
    if present and n > 1:
        # monotone in n
        assert find_mono_book(c, k, n - 1) is not None


@given(small_colorings(max_n=8), st.integers(1, 6))
@settings(max_examples=100, deadline=None)
def test_star_book_reduction(c, n):
    """B_n^(1) detection = 'some vertex has >= n same-color incident edges'."""
    red = color_subgraph(c, "red")
    blue = color_subgraph(c, "blue")
    oracle = max(red.max_degree(), blue.max_degree()) >= n
    assert (find_mono_book(c, 1, n) is not None) == oracle


@given(small_colorings(max_n=7), st.integers(1, 2), st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_biclique_witnesses_verify(c, k, n):
    w = find_mono_biclique(c, k, n)
    if w is not None:
        assert verify_book_witness(c, w, k, n, spine_is_clique=False)
        spine_mask = mask_of(w.spine)
        assert not (w.pages & spine_mask)
