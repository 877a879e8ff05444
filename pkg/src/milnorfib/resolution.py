"""Minimal good embedded resolution of a plane-curve germ and its dual graph Γ.

The cluster of infinitely near points is found by blowing up explicitly on the
branch parametrizations: every point carries local coordinates ``(x, y)``,
the local series of the branches through it and the exceptional curves through
it (each one a coordinate axis).  A point is blown up while it is the origin,
carries two or more branches, a singular branch, a branch meeting two
exceptional curves, or a smooth branch tangent to its exceptional curve.
Euler numbers and edges then come from the proximity matrix ``P`` through
``A = −PᵀP``, and the multiplicities ``m_i(v)`` from ``A·m_i = −b_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any

from .algebra.intlinalg import (
    is_negative_definite,
    matmul,
    rational_inverse,
    solve_integer_linear,
)
from .algebra.series import EXACT, Series
from .branches import MAX_TRUNCATION, BranchSet
from .errors import (
    InvalidGraph,
    NonIntegralSolution,
    NonPositiveMultiplicity,
    TruncationExhausted,
)

INFINITE = EXACT


@dataclass
class ClusterPoint:
    """An infinitely near point that gets blown up (one per exceptional curve)."""

    parent: int | None
    proximate_to: frozenset[int]
    branches_through: frozenset[int]
    multiplicities: dict[int, int]  # branch index -> multiplicity of its strict transform here

    @property
    def free(self) -> bool:
        return len(self.proximate_to) <= 1


@dataclass
class ResolutionGraph:
    """Dual graph of a good embedded resolution, with arrowheads for the branches.

    ``arrowheads[i]`` is the vertex the strict transform of branch ``i`` meets.
    """

    euler: list[int]
    edges: list[tuple[int, int]]
    arrowheads: list[int]
    multiplicities: list[list[int]] | None = None
    cluster: list[ClusterPoint] | None = dc_field(default=None, repr=False)

    def __post_init__(self):
        self.edges = sorted(tuple(sorted(e)) for e in self.edges)
        n = len(self.euler)
        for a, b in self.edges:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise InvalidGraph(f"bad edge {(a, b)}")
        for v in self.arrowheads:
            if not 0 <= v < n:
                raise InvalidGraph(f"arrowhead attached to unknown vertex {v}")

    @property
    def num_vertices(self) -> int:
        return len(self.euler)

    @property
    def intersection_matrix(self) -> list[list[int]]:
        n = self.num_vertices
        a = [[0] * n for _ in range(n)]
        for v, e in enumerate(self.euler):
            a[v][v] = e
        for v, w in self.edges:
            a[v][w] += 1
            a[w][v] += 1
        return a

    def neighbours(self, v: int) -> list[int]:
        return sorted([b for a, b in self.edges if a == v] + [a for a, b in self.edges if b == v])

    def is_tree(self) -> bool:
        n = self.num_vertices
        if len(self.edges) != n - 1:
            return False
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.neighbours(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    def validate(self) -> None:
        if not self.num_vertices:
            raise InvalidGraph("empty resolution graph")
        if not self.is_tree():
            raise InvalidGraph("resolution graph must be a connected tree")
        if not is_negative_definite(self.intersection_matrix):
            raise InvalidGraph("intersection matrix is not negative definite")

    def m_at_attach(self, i: int) -> int:
        if self.multiplicities is None:
            self.multiplicities = multiplicities(self)
        return self.multiplicities[i][self.arrowheads[i]]

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "vertices": [{"id": v, "euler": e} for v, e in enumerate(self.euler)],
            "edges": [{"a": a, "b": b, "sign": 1} for a, b in self.edges],
            "arrowheads": [{"id": i, "attach": v} for i, v in enumerate(self.arrowheads)],
        }
        if self.multiplicities is not None:
            out["multiplicities"] = [list(row) for row in self.multiplicities]
        return out

    def to_dot(self, name: str = "resolution") -> str:
        """DOT text; each arrowhead is a terminal arrow-shaped node."""
        lines = [f"graph {name} {{"]
        for v, e in enumerate(self.euler):
            lines.append(f'  n{v} [label="e={e}"];')
        for i in range(len(self.arrowheads)):
            lines.append(f'  a{i} [shape=rarrow, label="D{i + 1}"];')
        for a, b in self.edges:
            lines.append(f"  n{a} -- n{b};")
        for i, v in enumerate(self.arrowheads):
            lines.append(f"  n{v} -- a{i};")
        lines.append("}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# multiplicities and intersection numbers
# ---------------------------------------------------------------------------


def multiplicities(g: ResolutionGraph) -> list[list[int]]:
    """Solve ``Σ_v m_i(v)(E_v·E_w) + D̃_i·E_w = 0`` for every branch ``i``."""
    a = g.intersection_matrix
    n = g.num_vertices
    out = []
    for i, v in enumerate(g.arrowheads):
        b = [0] * n
        b[v] = -1
        try:
            m = solve_integer_linear(a, b)
        except NonIntegralSolution as exc:
            raise NonIntegralSolution(f"branch {i}: {exc}") from None
        if any(x <= 0 for x in m):
            raise NonPositiveMultiplicity(f"branch {i}: multiplicities {m} are not all positive")
        out.append(m)
    g.multiplicities = out
    return out


def pairwise_intersections_from_graph(g: ResolutionGraph) -> list[list[int]]:
    """``D_i·D_k`` as the ``(v(i), v(k))`` entry of ``−A⁻¹`` (diagonal left 0)."""
    inv = rational_inverse(g.intersection_matrix)
    l = len(g.arrowheads)
    out = [[0] * l for _ in range(l)]
    for i in range(l):
        for k in range(l):
            if i == k:
                continue
            val = -inv[g.arrowheads[i]][g.arrowheads[k]]
            if val.denominator != 1:
                raise NonIntegralSolution(f"D_{i}·D_{k} = {val} is not integral")
            out[i][k] = int(val)
    return out


def graph_from_cluster(points: list[ClusterPoint], attach: list[int]) -> ResolutionGraph:
    """``A = −PᵀP`` from the proximity relations of the cluster."""
    n = len(points)
    p = [[0] * n for _ in range(n)]
    for q, pt in enumerate(points):
        p[q][q] = 1
        for r in pt.proximate_to:
            p[q][r] = -1
    ptp = matmul([list(col) for col in zip(*p)], p)
    euler = [-ptp[v][v] for v in range(n)]
    edges = []
    for v in range(n):
        for w in range(v + 1, n):
            val = -ptp[v][w]
            if val not in (0, 1):
                raise InvalidGraph(f"proximity data gives E_{v}·E_{w} = {val}")
            if val:
                edges.append((v, w))
    g = ResolutionGraph(euler, edges, attach, cluster=points)
    g.validate()
    m = multiplicities(g)
    # independent cluster-side recomputation: P·M = point multiplicities
    for i, row in enumerate(m):
        pm = [sum(p[q][r] * row[r] for r in range(n)) for q in range(n)]
        expect = [points[q].multiplicities.get(i, 0) for q in range(n)]
        if pm != expect:
            raise AssertionError(f"branch {i}: proximity check failed ({pm} != {expect})")
    return g


# ---------------------------------------------------------------------------
# blow-up simulation
# ---------------------------------------------------------------------------


class _NeedPrecision(Exception):
    pass


def _val(s: Series) -> int:
    v = s.valuation()
    if v is not None:
        return v
    if s.is_exact:
        return INFINITE
    raise _NeedPrecision


@dataclass
class _Local:
    branches: dict[int, tuple[Series, Series]]  # branch -> (x(τ), y(τ))
    exc: dict[str, int]  # "x" / "y" -> vertex whose curve is {x=0} / {y=0}
    parent: int | None


def _simulate(bs: BranchSet, order: int) -> tuple[list[ClusterPoint], list[int]]:
    for b in bs:
        b.ensure(order)
    cap = order
    start = _Local({i: (b.s().truncate(cap) if not b.s().is_exact else b.s(),
                        b.t().truncate(cap) if not b.t().is_exact else b.t()) for i, b in enumerate(bs)}, {}, None)
    points: list[ClusterPoint] = []
    attach = [-1] * len(bs)
    queue = [start]
    while queue:
        loc = queue.pop(0)
        mults = {}
        for i, (x, y) in loc.branches.items():
            vx, vy = _val(x), _val(y)
            if min(vx, vy) == INFINITE:
                raise _NeedPrecision
            mults[i] = min(vx, vy)
        blow = loc.parent is None or len(loc.branches) >= 2
        if not blow and loc.branches:
            (i, (x, y)), = loc.branches.items()
            if mults[i] > 1 or len(loc.exc) >= 2:
                blow = True
            else:
                (axis, vertex), = loc.exc.items()
                transverse = _val(x) == 1 if axis == "x" else _val(y) == 1
                if transverse:
                    attach[i] = vertex
                else:
                    blow = True
        if not blow:
            continue
        v = len(points)
        points.append(
            ClusterPoint(
                parent=loc.parent,
                proximate_to=frozenset(loc.exc.values()),
                branches_through=frozenset(loc.branches),
                multiplicities=mults,
            )
        )
        children: dict[Any, _Local] = {}
        for i in sorted(loc.branches):
            x, y = loc.branches[i]
            vx, vy = _val(x), _val(y)
            if vx <= vy:
                ratio = y.divide(x, cap)
                c = ratio.coefficient(0) if ratio.prec > 0 else None
                if c is None:
                    raise _NeedPrecision
                key = ("A", c)
                nx, ny = x, ratio - c
                if key not in children:
                    exc = {"x": v}
                    if c.is_zero() and "y" in loc.exc:
                        exc["y"] = loc.exc["y"]
                    children[key] = _Local({}, exc, v)
            else:
                key = ("B",)
                nx, ny = x.divide(y, cap), y
                if key not in children:
                    exc = {"y": v}
                    if "x" in loc.exc:
                        exc["x"] = loc.exc["x"]
                    children[key] = _Local({}, exc, v)
            if ny.prec <= 0 or nx.prec <= 0:
                raise _NeedPrecision
            children[key].branches[i] = (nx, ny)
        queue.extend(children.values())
    if any(a < 0 for a in attach):
        raise AssertionError("a branch was not separated")
    return points, attach


def resolve(bs: BranchSet, order: int = 16) -> ResolutionGraph:
    """Dual graph of the minimal good embedded resolution of the branch set."""
    if not len(bs):
        raise ValueError("empty branch set")
    while True:
        try:
            points, attach = _simulate(bs, order)
            break
        except _NeedPrecision:
            if order >= MAX_TRUNCATION:
                raise TruncationExhausted(f"resolution needs more than {MAX_TRUNCATION} series terms") from None
            order = min(2 * order, MAX_TRUNCATION)
    return graph_from_cluster(points, attach)


def noether_intersections(g: ResolutionGraph) -> list[list[int]]:
    """``D_i·D_k = Σ_p mult_i(p)·mult_k(p)`` over the cluster (needs ``g.cluster``)."""
    if g.cluster is None:
        raise ValueError("graph carries no cluster data")
    l = len(g.arrowheads)
    return [
        [0 if i == k else sum(p.multiplicities.get(i, 0) * p.multiplicities.get(k, 0) for p in g.cluster) for k in range(l)]
        for i in range(l)
    ]
