import itertools
import random

import pytest

from milnorfib.algebra.fields import QQ
from milnorfib.boundary import Pair, PairingData, alpha, build_boundary_graph, vertical_index, y_graph
from milnorfib.errors import InvalidGerm, MissingVerticalData, PairingIncomplete, PipelineError
from milnorfib.io.corpus import (
    corank2_input,
    expected_corank2,
    expected_crosscap,
    expected_s1_double_edge,
    h_k_input,
    random_d,
)
from milnorfib.io.expr import parse_bivariate
from milnorfib.newton_puiseux import expand
from milnorfib.plumbing import h1, isomorphic
from milnorfib.resolution import ResolutionGraph
from milnorfib.sigma10 import (
    Sigma10Germ,
    compute_boundary,
    crosscap_count,
    image_equation,
    lambda_value,
    pairing,
    verify_sum_identity,
)


def germ(text: str) -> Sigma10Germ:
    return Sigma10Germ(parse_bivariate(text, QQ))


# -- vertical data and the boundary builder --------------------------------------------


def test_vertical_index():
    assert vertical_index(Pair((0, 1), lambdas=(-2, -2), v=0)) == -4
    assert vertical_index(Pair((0,), lambdas=(-3,), v=0)) == -3
    assert vertical_index(Pair((0, 1), vi=-10)) == -10
    with pytest.raises(MissingVerticalData):
        vertical_index(Pair((0, 1), lambdas=(-2, -2)))


def test_alpha_examples():
    crosscap = ResolutionGraph([-1], [], [0])
    assert alpha(Pair((0,), lambdas=(-1,), v=0), crosscap) == -2
    for k in range(1, 5):
        g, pd = h_k_input(k)
        assert alpha(pd.pairs[0], g) == -9 * k + 3
    assert alpha(Pair((0,), vi=-7, alpha=-4), crosscap) == -4  # a supplied α wins


def test_y_graph_fragment():
    y = y_graph()
    assert y.num_vertices == 3 and len(y.edges) == 2
    assert y.euler[0] == -1


def test_build_crosscap_and_s1():
    g = ResolutionGraph([-1], [], [0])
    out = build_boundary_graph(g, PairingData.from_pairs(1, [Pair((0,), lambdas=(-1,), v=0)]))
    assert isomorphic(out.graph, expected_crosscap())
    g = ResolutionGraph([-1], [], [0, 0])
    out = build_boundary_graph(g, PairingData.from_pairs(2, [Pair((0, 1), lambdas=(-2, -2), v=0)]))
    assert isomorphic(out.graph, expected_s1_double_edge())


def test_build_corank2():
    g, pd = corank2_input()
    out = build_boundary_graph(g, pd)
    assert isomorphic(out.graph, expected_corank2())
    # every self pair adds 4 vertices
    assert out.graph.num_vertices == 1 + 5 * 4


def test_vertex_count_rule():
    g, pd = h_k_input(2)
    out = build_boundary_graph(g, pd)
    assert out.graph.num_vertices == g.num_vertices + 1


def test_pairing_validation():
    with pytest.raises(PairingIncomplete):
        PairingData([1, 1])
    with pytest.raises(PairingIncomplete):
        PairingData.from_pairs(3, [Pair((0, 1), vi=-1)])
    g = ResolutionGraph([-1], [], [0, 0])
    with pytest.raises(PairingIncomplete):
        build_boundary_graph(g, PairingData.from_pairs(1, [Pair((0,), vi=-1)]))


# -- the Σ^{1,0} pipeline -------------------------------------------------------------


def test_germ_validation():
    with pytest.raises(InvalidGerm):
        germ("t^3 + s^2")  # odd in t
    with pytest.raises(InvalidGerm):
        germ("t^2")  # divisible by t
    with pytest.raises(InvalidGerm):
        germ("1 + s")
    with pytest.raises(InvalidGerm):
        germ("(s + t^2)^2")


def test_image_equations():
    assert image_equation(germ("s")) == "y*(x)^2 - z^2"
    assert image_equation(germ("t^2 + s^2")) == "y*(y + x^2)^2 - z^2"
    assert image_equation(germ("s*t^2 + s^3")) == "y*(x*y + x^3)^2 - z^2"


def test_crosscap_count():
    assert crosscap_count(germ("s")) == 1
    for k in (1, 2, 3):
        assert crosscap_count(germ(f"s^2 + t^{2 * k}")) == 2
    for k in (2, 3, 5):
        assert crosscap_count(germ(f"t^2 + s^{k}")) == k


def _sigma(text):
    return pairing(expand(parse_bivariate(text, QQ))).sigma


def test_pairing_examples():
    assert _sigma("s") == [0]
    assert _sigma("t^2 + s^2") == [1, 0]
    for k in range(1, 6):
        sigma = _sigma(f"s^2 + t^{2 * k}")
        assert (sigma == [1, 0]) is (k % 2 == 1)


def test_lambda_examples():
    bs = expand(parse_bivariate("s", QQ))
    assert lambda_value(bs, 0) == -1
    for n in (1, 2, 3):
        bs = expand(parse_bivariate(f"t^2 + s^{2 * n}", QQ))
        assert [lambda_value(bs, i) for i in range(2)] == [-2 * n] * 2
    for k in (1, 2, 3, 4):
        bs = expand(parse_bivariate(f"s^2 + t^{2 * k}", QQ))
        assert [lambda_value(bs, i) for i in range(2)] == [-k - 1] * 2


@pytest.mark.parametrize(
    "text, lhs",
    [("s", -1), ("t^2 + s^2", -4), ("s^2 + t^4", -6), ("s^3 + t^4", None), ("s*t^2 + s^5", None)],
)
def test_sum_identity(text, lhs):
    ok, report = verify_sum_identity(germ(text))
    assert ok, report
    if lhs is not None:
        assert report["lhs"] == lhs


def test_sum_identity_on_random_germs():
    rng = random.Random(5)
    checked = 0
    while checked < 15:
        d = random_d(rng)
        if d is None:
            continue
        try:
            g = Sigma10Germ(d)
        except InvalidGerm:
            continue
        ok, report = verify_sum_identity(g)
        assert ok, (str(d), report)
        checked += 1


def test_compute_boundary_examples():
    res = compute_boundary(germ("s"))
    assert isomorphic(res.boundary.graph, expected_crosscap())
    res = compute_boundary(germ("t^2 + s^6"))
    assert res.boundary.alphas == {"{1,2}": -18}
    res = compute_boundary(germ("s*t^2 + s^5"))
    assert sorted(res.boundary.alphas.values()) == [-14, -4]


def test_factor_order_does_not_matter():
    factors = ["s", "t^2 + s^2", "t^2 - 2*s^3"]
    graphs = []
    for perm in itertools.permutations(factors):
        text = "*".join(f"({f})" for f in perm)
        graphs.append(compute_boundary(germ(text)).boundary.graph)
    assert all(isomorphic(graphs[0], g) for g in graphs[1:])
    assert all(h1(g) == h1(graphs[0]) for g in graphs)


def test_gaussian_field_input_matches_rational():
    from milnorfib.io.inputs import parse_input

    inp = parse_input({"mode": "sigma10", "sigma10": {"d": "(s + i*t)*(s - i*t)",
                                                      "field": {"generator": "i", "minpoly": "i^2 + 1"}}})
    res = compute_boundary(inp.germ)
    assert isomorphic(res.boundary.graph, expected_s1_double_edge())


def test_pipeline_error_names_stage(monkeypatch):
    import milnorfib.sigma10 as mod
    from milnorfib.errors import TruncationExhausted

    def boom(*args, **kwargs):
        raise TruncationExhausted("forced")

    monkeypatch.setattr(mod, "resolve", boom)
    with pytest.raises(PipelineError) as info:
        compute_boundary(germ("s"))
    assert info.value.stage == "resolve"
