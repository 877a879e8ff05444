"""Built-in verification corpus: germ fixtures with hand-built expected graphs.

The expected graphs are assembled here directly from the known pictures of
the boundary of the Milnor fibre (chains, double edges, Y stars); they do
not go through the boundary builder, so they serve as independent oracles.
The :func:`acceptance_checks` list is shared by ``corpus verify`` and the
acceptance test-suite.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable

from ..algebra.bipoly import BivariatePolynomial, squarefree_check
from ..algebra.fields import QQ
from ..algebra.intlinalg import AbelianGroup, is_negative_definite
from ..boundary import Pair, PairingData, build_boundary_graph
from ..branches import intersection_multiplicity
from ..errors import InvalidGerm
from ..plumbing import (
    PlumbingGraph,
    blow_down,
    can_absorb,
    can_blow_down,
    equivalent,
    h1,
    isomorphic,
    normalize,
    sign_normalize,
    zero_chain_absorb,
)
from ..resolution import ResolutionGraph, multiplicities, pairwise_intersections_from_graph
from ..sigma10 import Sigma10Germ, Sigma10Result, compute_boundary, verify_sum_identity
from .expr import parse_bivariate

# ---------------------------------------------------------------------------
# hand-built expected graphs
# ---------------------------------------------------------------------------


class _Builder:
    """Tiny helper for writing plumbing graphs by hand."""

    def __init__(self):
        self.euler: list[int] = []
        self.edges: list[tuple[int, int, int]] = []

    def vertex(self, e: int) -> int:
        self.euler.append(e)
        return len(self.euler) - 1

    def edge(self, a: int, b: int, sign: int = 1) -> None:
        self.edges.append((a, b, sign))

    def chain(self, eulers: list[int], start: int | None = None) -> list[int]:
        """Append a chain; optionally hang its first vertex on ``start``."""
        vs = [self.vertex(e) for e in eulers]
        if start is not None and vs:
            self.edge(start, vs[0])
        for a, b in zip(vs, vs[1:]):
            self.edge(a, b)
        return vs

    def double(self, a: int, b: int) -> None:
        self.edge(a, b, 1)
        self.edge(a, b, -1)

    def y_star(self, at: int) -> None:
        """Glue ``(−1; −2, −2)`` to ``at`` through a ⊖ edge."""
        c = self.vertex(-1)
        self.edge(at, c, -1)
        self.chain([-2], c)
        self.chain([-2], c)

    def graph(self) -> PlumbingGraph:
        return PlumbingGraph(self.euler, self.edges)


def expected_crosscap() -> PlumbingGraph:
    b = _Builder()
    left, mid, right = b.vertex(-1), b.vertex(-2), b.vertex(-1)
    b.edge(left, mid)
    b.edge(mid, right, -1)
    b.chain([-2], right)
    b.chain([-2], right)
    return b.graph()


def expected_s1_double_edge() -> PlumbingGraph:
    b = _Builder()
    b.double(b.vertex(-1), b.vertex(-6))
    return b.graph()


def expected_s1_loop() -> PlumbingGraph:
    return PlumbingGraph([-4], [(0, 0, -1)])


def expected_s(k: int) -> PlumbingGraph:
    """``S_{k−1}``: ``d = t² + s^k``."""
    n = k // 2
    b = _Builder()
    if k % 2 == 0:
        (top,) = b.chain([-2] * (n - 1) + [-1])[-1:]
        b.double(top, b.vertex(-3 * k))
    else:
        top = b.chain([-2] * (n - 1) + [-3, -1])[-1]
        b.chain([-2], top)
        new = b.vertex(-3 * k)
        b.edge(top, new)
        b.y_star(new)
    return b.graph()


def expected_b(k: int) -> PlumbingGraph:
    """``B_k``: ``d = s² + t^{2k}``."""
    b = _Builder()
    top = b.chain([-2] * (k - 1) + [-1])[-1]
    if k % 2:
        b.double(top, b.vertex(-4 * k - 2))
    else:
        for _ in range(2):
            new = b.vertex(-2 * k - 1)
            b.edge(top, new)
            b.y_star(new)
    return b.graph()


def expected_c(k: int) -> PlumbingGraph:
    """``C_k``: ``d = s·t² + s^k``."""
    n = k // 2
    b = _Builder()
    if k == 2:
        top = b.chain([-2, -1])[-1]
        for _ in range(2):
            new = b.vertex(-5)
            b.edge(top, new)
            b.y_star(new)
        return b.graph()
    if k % 2:
        chain = b.chain([-2] * (n - 1) + [-1])
        b.double(chain[-1], b.vertex(-3 * k + 1))
    else:
        chain = b.chain([-2] * (n - 2) + [-3, -1])
        b.chain([-2], chain[-1])
        new = b.vertex(-3 * k + 1)
        b.edge(chain[-1], new)
        b.y_star(new)
    four = b.vertex(-4)
    b.edge(chain[0], four)
    b.y_star(four)
    return b.graph()


def expected_f4() -> PlumbingGraph:
    b = _Builder()
    top = b.chain([-2, -2, -1])[-1]
    b.chain([-4], top)
    new = b.vertex(-15)
    b.edge(top, new)
    b.y_star(new)
    return b.graph()


def expected_h(k: int) -> PlumbingGraph:
    b = _Builder()
    top = b.chain([-2] * (3 * k - 3) + [-1])[-1]
    b.double(top, b.vertex(-9 * k + 3))
    return b.graph()


def expected_corank2() -> PlumbingGraph:
    b = _Builder()
    centre = b.vertex(-1)
    for _ in range(5):
        new = b.vertex(-5)
        b.edge(centre, new)
        b.y_star(new)
    return b.graph()


def expected_f4_resolution() -> ResolutionGraph:
    """Resolution of ``s³ + t⁴``: a −1 vertex carrying the arrow, with a −4 leg and a −2—−2 leg."""
    return ResolutionGraph([-1, -4, -2, -2], [(0, 1), (0, 2), (2, 3)], [0])


def y_bar(e: int) -> PlumbingGraph:
    """The star ``(e; −2, −2)``."""
    return PlumbingGraph([e, -2, -2], [(0, 1, 1), (0, 2, 1)])


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------


@dataclass
class Fixture:
    name: str
    expected: Callable[[], PlumbingGraph]
    d: str | None = None  # Σ^{1,0} germ
    combinatorial: Callable[[], tuple[ResolutionGraph, PairingData]] | None = None
    alphas: dict[str, int] = dc_field(default_factory=dict)
    m_at_attach: list[int] | None = None


def h_k_input(k: int) -> tuple[ResolutionGraph, PairingData]:
    """``H_k``: chain ``(−2)^{3k−3}—(−1)`` with both arrows on the −1 and ``𝔳𝔦 = −3k−1``."""
    n = 3 * k - 2
    g = ResolutionGraph([-2] * (n - 1) + [-1], [(v, v + 1) for v in range(n - 1)], [n - 1, n - 1])
    return g, PairingData.from_pairs(2, [Pair((0, 1), vi=-3 * k - 1)])


def corank2_input() -> tuple[ResolutionGraph, PairingData]:
    """Corank-2 germ: one −1 vertex with five self-paired arrows, ``𝔳𝔦 = −4`` each."""
    g = ResolutionGraph([-1], [], [0] * 5)
    return g, PairingData.from_pairs(5, [Pair((i,), vi=-4) for i in range(5)])


def sigma10_fixtures() -> list[Fixture]:
    out = [Fixture("crosscap", expected_crosscap, d="s", alphas={"{1}": -2})]
    for k in range(2, 10):
        alphas = {"{1,2}": -3 * k} if k % 2 == 0 else {"{1}": -3 * k}
        out.append(Fixture(f"S{k - 1}", lambda k=k: expected_s(k), d=f"t^2 + s^{k}", alphas=alphas))
    for k in range(1, 6):
        alphas = {"{1,2}": -4 * k - 2} if k % 2 else {"{1}": -2 * k - 1, "{2}": -2 * k - 1}
        out.append(Fixture(f"B{k}", lambda k=k: expected_b(k), d=f"s^2 + t^{2 * k}", alphas=alphas))
    for k in range(2, 6):
        out.append(Fixture(f"C{k}", lambda k=k: expected_c(k), d=f"s*t^2 + s^{k}"))
    out.append(Fixture("F4", expected_f4, d="s^3 + t^4", alphas={"{1}": -15}, m_at_attach=[12]))
    return out


def combinatorial_fixtures() -> list[Fixture]:
    out = [
        Fixture(f"H{k}", lambda k=k: expected_h(k), combinatorial=lambda k=k: h_k_input(k),
                alphas={"{1,2}": -9 * k + 3}, m_at_attach=[3 * k - 2] * 2)
        for k in range(1, 5)
    ]
    out.append(Fixture("corank2", expected_corank2, combinatorial=corank2_input,
                       alphas={f"{{{i}}}": -5 for i in range(1, 6)}, m_at_attach=[1] * 5))
    return out


def all_fixtures() -> list[Fixture]:
    return sigma10_fixtures() + combinatorial_fixtures()


def fixture(name: str) -> Fixture:
    for f in all_fixtures():
        if f.name == name:
            return f
    raise KeyError(name)


def germ_of(fx: Fixture) -> Sigma10Germ:
    return Sigma10Germ(parse_bivariate(fx.d, QQ))


def run_combinatorial(fx: Fixture):
    g, pd = fx.combinatorial()
    g.validate()
    multiplicities(g)
    return g, build_boundary_graph(g, pd)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def check_fixture(fx: Fixture) -> CheckResult:
    """Compute the fixture and compare with its hand-built graph, α's and m's."""
    try:
        if fx.d is not None:
            res = compute_boundary(germ_of(fx))
            rg, boundary = res.resolution, res.boundary
        else:
            rg, boundary = run_combinatorial(fx)
    except Exception as exc:  # report, don't abort the table
        return CheckResult(fx.name, False, f"{type(exc).__name__}: {exc}")
    problems = []
    if not isomorphic(boundary.graph, fx.expected()):
        problems.append(f"graph {boundary.graph.euler} differs from expected {fx.expected().euler}")
    for label, a in fx.alphas.items():
        if boundary.alphas.get(label) != a:
            problems.append(f"alpha{label} = {boundary.alphas.get(label)}, expected {a}")
    if fx.m_at_attach is not None:
        got = [rg.m_at_attach(i) for i in range(len(rg.arrowheads))]
        if got != fx.m_at_attach:
            problems.append(f"m at arrow vertices {got}, expected {fx.m_at_attach}")
    alphas = ", ".join(f"a{k}={v}" for k, v in sorted(boundary.alphas.items()))
    return CheckResult(fx.name, not problems, "; ".join(problems) or alphas)


_SIGMA10_CACHE: dict[str, Sigma10Result] = {}


def _sigma10_result(name: str) -> Sigma10Result:
    if name not in _SIGMA10_CACHE:
        _SIGMA10_CACHE[name] = compute_boundary(germ_of(fixture(name)))
    return _SIGMA10_CACHE[name]


def _all_ok(results: list[CheckResult]) -> tuple[bool, str]:
    bad = [r for r in results if not r.ok]
    return not bad, "; ".join(f"{r.name}: {r.detail}" for r in bad) or f"{len(results)} fixtures"


def criterion_crosscap() -> CheckResult:
    start = time.perf_counter()
    res = compute_boundary(germ_of(fixture("crosscap")))
    elapsed = time.perf_counter() - start
    norm = normalize(res.boundary.graph)
    ok_iso = isomorphic(res.boundary.graph, expected_crosscap())
    ok_norm = norm.euler == [-4] and not norm.edges
    ok = ok_iso and ok_norm and elapsed < 1.0
    return CheckResult("1 crosscap", ok, f"isomorphic={ok_iso}, normalized={norm.euler}, {elapsed:.3f}s")


def criterion_s1() -> CheckResult:
    res = _sigma10_result("S1")
    a = res.boundary.alphas.get("{1,2}")
    iso = isomorphic(res.boundary.graph, expected_s1_double_edge())
    eq = equivalent(expected_s1_double_edge(), expected_s1_loop())
    group = h1(res.boundary.graph)
    ok = a == -6 and iso and eq and group == AbelianGroup(1, (6,))
    return CheckResult("2 S1", ok, f"alpha={a}, isomorphic={iso}, presentations equivalent={eq}, H1={group}")


def _fixture_group(names: list[str], label: str) -> CheckResult:
    ok, detail = _all_ok([check_fixture(fixture(n)) for n in names])
    return CheckResult(label, ok, detail)


def criterion_s_family() -> CheckResult:
    return _fixture_group([f"S{k - 1}" for k in range(2, 10)], "3 S_{k-1}, k=2..9")


def criterion_b_family() -> CheckResult:
    return _fixture_group([f"B{k}" for k in range(1, 6)], "4 B_k, k=1..5")


def criterion_c_family() -> CheckResult:
    return _fixture_group([f"C{k}" for k in range(2, 6)], "5 C_k, k=2..5")


def criterion_f4() -> CheckResult:
    res = _sigma10_result("F4")
    rg = res.resolution
    shape_ok = isomorphic(resolution_with_arrows(rg), resolution_with_arrows(expected_f4_resolution()))
    fx = check_fixture(fixture("F4"))
    ok = shape_ok and fx.ok
    return CheckResult("6 F4", ok, f"resolution shape={shape_ok}, m={rg.m_at_attach(0)}, {fx.detail}")


def criterion_h_family() -> CheckResult:
    results = [check_fixture(fixture(f"H{k}")) for k in range(1, 5)]
    ok, detail = _all_ok(results)
    _, h1_boundary = run_combinatorial(fixture("H1"))
    eq = equivalent(h1_boundary.graph, _sigma10_result("S1").boundary.graph)
    return CheckResult("7 H_k, k=1..4", ok and eq, f"{detail}; H1 equivalent to S1={eq}")


def criterion_corank2() -> CheckResult:
    r = check_fixture(fixture("corank2"))
    return CheckResult("8 corank 2", r.ok, r.detail)


def criterion_y_calibration() -> CheckResult:
    free = [e for e in range(-5, 6) if h1(y_bar(e)).free_rank == 1]
    return CheckResult("9 Y calibration", free == [-1], f"free rank 1 at e in {free}")


# -- property suites ----------------------------------------------------------


def random_d(rng: random.Random) -> BivariatePolynomial | None:
    """A random product of one to three small factors ``g(s, t²)``."""
    s, t = BivariatePolynomial.s(QQ), BivariatePolynomial.t(QQ)

    def coeff() -> int:
        return rng.choice([-2, -1, 1, 2, 3])

    def factor() -> BivariatePolynomial:
        kind = rng.randrange(3)
        if kind == 0:
            return s + coeff() * t ** (2 * rng.randint(1, 3)) + rng.randint(0, 2) * s * t**2
        if kind == 1:
            k = rng.randint(1, 5)
            return t**2 + coeff() * s**k + rng.randint(0, 2) * s ** (k + 1)
        return s + rng.randint(0, 2) * s**2

    d = factor()
    for _ in range(rng.randint(0, 2)):
        d = d * factor()
    return d if squarefree_check(d) else None


def random_sum_identity(count: int = 50, seed: int = 2024) -> CheckResult:
    rng = random.Random(seed)
    done = failures = 0
    notes = []
    while done < count:
        d = random_d(rng)
        if d is None:
            continue
        try:
            germ = Sigma10Germ(d)
        except InvalidGerm:
            continue
        done += 1
        ok, report = verify_sum_identity(germ)
        if not ok:
            failures += 1
            notes.append(f"d={d}: {report}")
    return CheckResult("sum identity, random d", not failures, "; ".join(notes) or f"{count} germs")


def random_plumbing_graph(rng: random.Random, max_vertices: int = 8) -> PlumbingGraph:
    n = rng.randint(1, max_vertices)
    edges = [(rng.randrange(v), v, rng.choice([1, -1])) for v in range(1, n)]
    for _ in range(rng.randint(0, 2)):
        edges.append((rng.randrange(n), rng.randrange(n), rng.choice([1, -1])))
    return PlumbingGraph([rng.choice([-3, -2, -1, 0, 1, 2]) for _ in range(n)], edges)


def calculus_h1_invariance(count: int = 500, seed: int = 7) -> CheckResult:
    rng = random.Random(seed)
    moves = failures = 0
    for _ in range(count):
        g = random_plumbing_graph(rng)
        group = h1(g)
        variants = [sign_normalize(g), normalize(g)]
        for v in range(g.num_vertices):
            if can_blow_down(g, v) and g.degree(v) > 0:
                variants.append(blow_down(g, v))
            if can_absorb(g, v):
                variants.append(zero_chain_absorb(g, v))
        moves += len(variants)
        failures += sum(h1(x) != group for x in variants)
    return CheckResult("H1 invariance under calculus", not failures, f"{count} graphs, {moves} moves, {failures} failures")


def resolution_checks() -> list[CheckResult]:
    """(c) −A⁻¹ vs Puiseux intersections, (d) positive m, (e) negative definite — on every Σ^{1,0} fixture."""
    inter_bad, m_bad, nd_bad = [], [], []
    for fx in sigma10_fixtures():
        res = _sigma10_result(fx.name)
        g, bs = res.resolution, res.branches
        graph_inter = pairwise_intersections_from_graph(g)
        for i in range(len(bs)):
            for k in range(i + 1, len(bs)):
                if graph_inter[i][k] != intersection_multiplicity(bs[i], bs[k]):
                    inter_bad.append(f"{fx.name} D{i + 1}.D{k + 1}")
        if any(x <= 0 for row in multiplicities(g) for x in row):
            m_bad.append(fx.name)
        if not is_negative_definite(g.intersection_matrix):
            nd_bad.append(fx.name)
    for fx in combinatorial_fixtures():
        g, _ = fx.combinatorial()
        if any(x <= 0 for row in multiplicities(g) for x in row):
            m_bad.append(fx.name)
        if not is_negative_definite(g.intersection_matrix):
            nd_bad.append(fx.name)
    return [
        CheckResult("intersections -A^-1 = Puiseux", not inter_bad, ", ".join(inter_bad) or "all pairs"),
        CheckResult("multiplicities positive", not m_bad, ", ".join(m_bad) or "all fixtures"),
        CheckResult("negative definite", not nd_bad, ", ".join(nd_bad) or "all fixtures"),
    ]


def criterion_properties() -> CheckResult:
    corpus_identity = [
        CheckResult(fx.name, _sigma10_result(fx.name).sum_identity["lhs"] == _sigma10_result(fx.name).sum_identity["rhs"])
        for fx in sigma10_fixtures()
    ]
    ok_a, detail_a = _all_ok(corpus_identity)
    subs = [CheckResult("sum identity, corpus", ok_a, detail_a), random_sum_identity(), calculus_h1_invariance()]
    subs += resolution_checks()
    return CheckResult("10 property suites", all(s.ok for s in subs), "; ".join(f"{s.name}: {s.detail}" for s in subs))


def resolution_with_arrows(g: ResolutionGraph) -> PlumbingGraph:
    """Plumbing-style graph with each arrowhead as a distinguished leaf (for shape comparisons)."""
    arrow = 10**6
    euler = list(g.euler) + [arrow] * len(g.arrowheads)
    edges = [(a, b, 1) for a, b in g.edges]
    edges += [(v, g.num_vertices + i, 1) for i, v in enumerate(g.arrowheads)]
    return PlumbingGraph(euler, edges)


ACCEPTANCE: list[Callable[[], CheckResult]] = [
    criterion_crosscap,
    criterion_s1,
    criterion_s_family,
    criterion_b_family,
    criterion_c_family,
    criterion_f4,
    criterion_h_family,
    criterion_corank2,
    criterion_y_calibration,
    criterion_properties,
]


def acceptance_checks() -> list[CheckResult]:
    return [check() for check in ACCEPTANCE]


def fixture_table() -> list[CheckResult]:
    return [check_fixture(fx) for fx in all_fixtures()]
