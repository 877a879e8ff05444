import random

import pytest

from milnorfib.algebra.intlinalg import AbelianGroup
from milnorfib.errors import NotAbsorbable, NotBlowDownable, TooLarge
from milnorfib.io.corpus import (
    all_fixtures,
    expected_crosscap,
    expected_f4,
    expected_s1_double_edge,
    expected_s1_loop,
    random_plumbing_graph,
    y_bar,
)
from milnorfib.plumbing import (
    PlumbingGraph,
    blow_down,
    can_absorb,
    can_blow_down,
    equivalent,
    h1,
    intersection_matrix,
    isomorphic,
    normalize,
    sign_normalize,
    zero_chain_absorb,
)


def relabel(g: PlumbingGraph, perm: list[int]) -> PlumbingGraph:
    euler = [0] * g.num_vertices
    for v, e in enumerate(g.euler):
        euler[perm[v]] = e
    return PlumbingGraph(euler, [(perm[a], perm[b], s) for a, b, s in g.edges])


def test_intersection_matrix_examples():
    assert intersection_matrix(y_bar(-1)) == [[-1, 1, 1], [1, -2, 0], [1, 0, -2]]
    assert intersection_matrix(expected_s1_loop()) == [[-6]]
    assert intersection_matrix(expected_s1_double_edge()) == [[-1, 0], [0, -6]]


def test_h1_examples():
    assert h1(y_bar(-1)) == AbelianGroup(1, ())
    assert h1(PlumbingGraph([-4])) == AbelianGroup(0, (4,))
    assert h1(expected_s1_double_edge()) == AbelianGroup(1, (6,))
    assert h1(expected_s1_loop()) == AbelianGroup(1, (6,))


def test_y_star_euler_scan():
    assert [e for e in range(-5, 6) if h1(y_bar(e)).free_rank == 1] == [-1]


def test_blow_down_leaf():
    g = PlumbingGraph([-2, -1], [(0, 1, 1)])
    out = blow_down(g, 1)
    assert out.euler == [-1] and not out.edges


def test_blow_down_middle_of_chain_creates_edge():
    g = PlumbingGraph([-3, -1, -4], [(0, 1, 1), (1, 2, 1)])
    out = blow_down(g, 1)
    assert sorted(out.euler) == [-3, -2]
    assert len(out.edges) == 1
    assert h1(out) == h1(g)


def test_blow_down_preconditions():
    assert not can_blow_down(PlumbingGraph([-2]), 0)
    with pytest.raises(NotBlowDownable):
        blow_down(PlumbingGraph([-2, -2], [(0, 1, 1)]), 0)
    star = PlumbingGraph([-1, -2, -2, -2], [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
    assert not can_blow_down(star, 0)  # degree 3


def test_zero_chain_absorb_examples():
    out = zero_chain_absorb(PlumbingGraph([-2, 0, -2], [(0, 1, 1), (1, 2, 1)]), 1)
    assert out.euler == [-4] and not out.edges
    out = zero_chain_absorb(PlumbingGraph([-2, 0, -3], [(0, 1, 1), (1, 2, 1)]), 1)
    assert out.euler == [-5]


def test_zero_chain_absorb_turns_parallel_edges_into_loops():
    # a — 0 — b with an extra a—b edge: after merging the a—b edge becomes a loop
    g = PlumbingGraph([-2, 0, -3], [(0, 1, 1), (1, 2, 1), (0, 2, -1)])
    out = zero_chain_absorb(g, 1)
    assert out.euler == [-5] and len(out.loops(0)) == 1
    assert h1(out) == h1(g)


def test_zero_vertex_on_a_single_neighbour_is_not_absorbable():
    g = PlumbingGraph([-2, 0], [(0, 1, 1), (0, 1, -1)])
    assert not can_absorb(g, 1)
    with pytest.raises(NotAbsorbable):
        zero_chain_absorb(g, 1)


def test_sign_normalize():
    tree = PlumbingGraph([-2, -3, -2, -5], [(0, 1, -1), (1, 2, -1), (1, 3, 1)])
    assert all(s == 1 for _, _, s in sign_normalize(tree).edges)
    double = expected_s1_double_edge()
    assert sorted(s for _, _, s in sign_normalize(double).edges) == [-1, 1]
    loop = PlumbingGraph([-3], [(0, 0, 1)])
    assert sign_normalize(loop).edges == [(0, 0, 1)]


def test_normalize_crosscap_to_minus_four():
    out = normalize(expected_crosscap())
    assert out.euler == [-4] and not out.edges


def test_normalize_idempotent_on_corpus():
    for fx in all_fixtures():
        once = normalize(fx.expected())
        assert isomorphic(normalize(once), once), fx.name


def test_s1_presentations_equivalent_but_not_isomorphic():
    a, b = expected_s1_double_edge(), expected_s1_loop()
    assert not isomorphic(a, b)
    assert equivalent(a, b)
    assert isomorphic(normalize(a), normalize(b))


def test_isomorphic_examples():
    g = expected_f4()
    rng = random.Random(3)
    for _ in range(10):
        perm = list(range(g.num_vertices))
        rng.shuffle(perm)
        assert isomorphic(g, relabel(g, perm))
    assert not isomorphic(PlumbingGraph([-4]), PlumbingGraph([-5]))
    # same underlying multigraph, different cycle sign class
    assert not isomorphic(PlumbingGraph([-1, -6], [(0, 1, 1), (0, 1, 1)]), expected_s1_double_edge())
    # vertex flips (flipping every edge at a vertex) are allowed
    assert isomorphic(
        PlumbingGraph([-1, -6, -2], [(0, 1, 1), (0, 1, -1), (1, 2, -1)]),
        PlumbingGraph([-1, -6, -2], [(0, 1, 1), (0, 1, -1), (1, 2, 1)]),
    )


def test_isomorphic_too_large():
    big = PlumbingGraph([-2] * 70, [(v, v + 1, 1) for v in range(69)])
    with pytest.raises(TooLarge):
        isomorphic(big, big)


def test_y_star_and_its_mirror_have_equal_homology():
    """(−1; −2, −2) glued to a graph vs (+1; 2, 2) glued through the same ⊖ edge."""
    for base in ([-3], [-2, -5]):
        n = len(base)
        chain = [(v, v + 1, 1) for v in range(n - 1)]
        star = [(n, n + 1, 1), (n, n + 2, 1), (0, n, -1)]
        neg = PlumbingGraph(base + [-1, -2, -2], chain + star)
        pos = PlumbingGraph(base + [1, 2, 2], chain + star)
        assert h1(neg).free_rank == h1(pos).free_rank == 0
        assert h1(neg).order == h1(pos).order


def test_h1_invariant_under_moves_on_random_graphs():
    rng = random.Random(99)
    moves = 0
    for _ in range(500):
        g = random_plumbing_graph(rng)
        group = h1(g)
        assert h1(sign_normalize(g)) == group
        assert h1(normalize(g)) == group
        for v in range(g.num_vertices):
            if can_blow_down(g, v) and g.degree(v) > 0:
                assert h1(blow_down(g, v)) == group
                moves += 1
            if can_absorb(g, v):
                assert h1(zero_chain_absorb(g, v)) == group
                moves += 1
    assert moves > 100


def test_json_round_trip_is_byte_identical():
    for fx in all_fixtures():
        text = fx.expected().to_json()
        assert PlumbingGraph.from_json(text).to_json() == text


def test_dot_marks_negative_edges():
    dot = expected_s1_double_edge().to_dot()
    assert 'label="e=-6"' in dot
    assert dot.count("style=dashed") == 1
