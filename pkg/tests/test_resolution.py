import pytest

from milnorfib.algebra.fields import QQ
from milnorfib.errors import InvalidGraph, NonIntegralSolution, NonPositiveMultiplicity
from milnorfib.io.corpus import expected_f4_resolution, resolution_with_arrows
from milnorfib.io.expr import parse_bivariate
from milnorfib.newton_puiseux import expand
from milnorfib.plumbing import isomorphic
from milnorfib.resolution import (
    ResolutionGraph,
    multiplicities,
    noether_intersections,
    pairwise_intersections_from_graph,
    resolve,
)
from milnorfib.branches import intersection_multiplicity


def resolve_text(text: str) -> ResolutionGraph:
    return resolve(expand(parse_bivariate(text, QQ)))


def same_shape(a: ResolutionGraph, b: ResolutionGraph) -> bool:
    return isomorphic(resolution_with_arrows(a), resolution_with_arrows(b))


def chain_graph(n: int, arrows: int = 2) -> ResolutionGraph:
    """``(−2)^{n−1} — (−1)`` with ``arrows`` arrowheads on the −1."""
    return ResolutionGraph([-2] * (n - 1) + [-1], [(v, v + 1) for v in range(n - 1)], [n - 1] * arrows)


def test_axis():
    g = resolve_text("s")
    assert g.euler == [-1] and g.arrowheads == [0]
    assert multiplicities(g) == [[1]]


def test_transverse_pair():
    g = resolve_text("t^2 + s^2")
    assert g.euler == [-1] and g.arrowheads == [0, 0]
    assert multiplicities(g) == [[1], [1]]
    assert pairwise_intersections_from_graph(g)[0][1] == 1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_tangent_pair_gives_chain(n):
    g = resolve_text(f"t^2 + s^{2 * n}")
    assert same_shape(g, chain_graph(n))
    assert pairwise_intersections_from_graph(g)[0][1] == n


def test_multiplicities_on_t2_s4():
    g = resolve_text("t^2 + s^4")
    m = multiplicities(g)
    # vertex order: the −2 then the −1
    assert sorted(g.euler) == [-2, -1]
    for row in m:
        assert sorted(row) == [1, 2]
        assert row[g.arrowheads[0]] == 2


def test_chain_multiplicities_count_up():
    for k in range(2, 6):
        g = chain_graph(k)
        for row in multiplicities(g):
            assert row == list(range(1, k + 1))


def test_off_diagonal_intersection_two_vertex_chain():
    g = ResolutionGraph([-2, -1], [(0, 1)], [0, 1])
    assert pairwise_intersections_from_graph(g)[0][1] == 1  # −A⁻¹ = [[1,1],[1,2]]


def test_f4_resolution_and_multiplicity():
    g = resolve_text("s^3 + t^4")
    assert same_shape(g, expected_f4_resolution())
    assert g.m_at_attach(0) == 12


def test_c4_resolution_shape():
    g = resolve_text("s*t^2 + s^4")
    # (−3) — (−1) with a −2 leg; the {s=0} arrow sits on the −3 (the first curve)
    expected = ResolutionGraph([-3, -1, -2], [(0, 1), (1, 2)], [0, 1])
    assert same_shape(g, expected)


@pytest.mark.parametrize(
    "text",
    ["s^3 + t^4", "s*t^2 + s^5", "(s^2 - t^3)*(s^2 + t^3)", "(s - t^2)*(s^2 - t^5)", "s^4 - t^6 + t^7"],
)
def test_three_intersection_computations_agree(text):
    bs = expand(parse_bivariate(text, QQ))
    g = resolve(bs)
    g.validate()
    from_graph = pairwise_intersections_from_graph(g)
    from_noether = noether_intersections(g)
    for i in range(len(bs)):
        for k in range(i + 1, len(bs)):
            pu = intersection_multiplicity(bs[i], bs[k])
            assert from_graph[i][k] == pu == from_noether[i][k]
    assert all(x > 0 for row in multiplicities(g) for x in row)


def test_validation_failures():
    with pytest.raises(InvalidGraph):
        ResolutionGraph([-1, -1], [(0, 1)], [0]).validate()  # not negative definite
    with pytest.raises(InvalidGraph):
        ResolutionGraph([-2, -2, -2], [(0, 1), (1, 2), (0, 2)], [0]).validate()  # cycle
    with pytest.raises(NonPositiveMultiplicity):
        multiplicities(ResolutionGraph([1], [], [0]))  # m = −1
    with pytest.raises(NonIntegralSolution):
        multiplicities(ResolutionGraph([-5], [], [0]))  # m = 1/5
