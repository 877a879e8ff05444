"""Surgery on the resolution graph Γ producing the plumbing graph Γ̂ of ∂F.

Each orbit ``j = {i, σ(i)}`` of the pairing on arrowheads is replaced by one
new vertex with Euler number ``α_j``:

* ``i ≠ σ(i)``: the new vertex is joined to ``v(i)`` by a ``+`` edge and to
  ``v(σ(i))`` by a ``⊖`` edge (a double edge when both arrows sit on the
  same vertex);
* ``i = σ(i)``: the new vertex is joined to ``v(i)`` by a ``+`` edge and to
  the ``−1`` vertex of a ``(−1; −2, −2)`` star by a ``⊖`` edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import MissingVerticalData, PairingIncomplete
from .plumbing import PlumbingGraph
from .resolution import ResolutionGraph, multiplicities


@dataclass
class Pair:
    """One orbit of the pairing (0-based arrowhead indices) with its vertical data."""

    members: tuple[int, ...]
    vi: int | None = None
    lambdas: tuple[int, ...] | None = None
    v: int | None = None
    alpha: int | None = None

    def __post_init__(self):
        self.members = tuple(sorted(set(self.members)))
        if len(self.members) not in (1, 2):
            raise PairingIncomplete(f"a pair has one or two members, got {self.members}")
        if self.lambdas is not None:
            self.lambdas = tuple(int(x) for x in self.lambdas)
            if len(self.lambdas) != len(self.members):
                raise MissingVerticalData(
                    f"pair {self.label}: expected {len(self.members)} lambda value(s), got {len(self.lambdas)}"
                )

    @property
    def is_self_pair(self) -> bool:
        return len(self.members) == 1

    @property
    def label(self) -> str:
        return "{" + ",".join(str(i + 1) for i in self.members) + "}"


@dataclass
class PairingData:
    """Involution ``σ`` on arrowheads and the per-orbit vertical data."""

    sigma: list[int]
    pairs: list[Pair] = dc_field(default_factory=list)

    def __post_init__(self):
        n = len(self.sigma)
        for i, k in enumerate(self.sigma):
            if not 0 <= k < n or self.sigma[k] != i:
                raise PairingIncomplete("sigma is not an involution on the arrowheads")
        if not self.pairs:
            self.pairs = [Pair((i, k)) for i, k in enumerate(self.sigma) if i <= k]
        covered = sorted(i for p in self.pairs for i in p.members)
        if covered != list(range(n)):
            raise PairingIncomplete("pairs must partition the arrowheads")
        for p in self.pairs:
            i = p.members[0]
            if self.sigma[i] != p.members[-1]:
                raise PairingIncomplete(f"pair {p.label} disagrees with sigma")
        self.pairs.sort(key=lambda p: p.members)

    @classmethod
    def from_pairs(cls, n: int, pairs: Sequence[Pair]) -> "PairingData":
        sigma = list(range(n))
        for p in pairs:
            for i in p.members:
                if not 0 <= i < n:
                    raise PairingIncomplete(f"pair {p.label} references a missing arrowhead")
            if len(p.members) == 2:
                a, b = p.members
                sigma[a], sigma[b] = b, a
        return cls(sigma, list(pairs))


def vertical_index(pair: Pair) -> int:
    """``𝔳𝔦_j = λ_i + λ_σ(i) + 𝔳_j`` (or ``λ_i + 𝔳_j`` for a self-pair), or the supplied value."""
    if pair.vi is not None:
        return pair.vi
    if pair.lambdas is None or pair.v is None:
        raise MissingVerticalData(f"pair {pair.label} needs either vi or both lambda and v")
    return sum(pair.lambdas) + pair.v


def alpha(pair: Pair, g: ResolutionGraph) -> int:
    """``α_j = 𝔳𝔦_j − Σ m_i(v(i))`` over the members of the pair (a supplied α overrides)."""
    if pair.alpha is not None:
        return pair.alpha
    if g.multiplicities is None:
        multiplicities(g)
    return vertical_index(pair) - sum(g.m_at_attach(i) for i in pair.members)


def y_graph() -> PlumbingGraph:
    """The star ``(−1; −2, −2)``; vertex 0 is where it is glued."""
    return PlumbingGraph([-1, -2, -2], [(0, 1, 1), (0, 2, 1)])


@dataclass
class BoundaryGraph:
    graph: PlumbingGraph
    alphas: dict[str, int]
    new_vertex: dict[str, int]


def build_boundary_graph(g: ResolutionGraph, pd: PairingData) -> BoundaryGraph:
    if len(pd.sigma) != len(g.arrowheads):
        raise PairingIncomplete(
            f"pairing covers {len(pd.sigma)} arrowheads but the graph has {len(g.arrowheads)}"
        )
    euler = list(g.euler)
    edges = [(a, b, 1) for a, b in g.edges]
    annotations: list[dict] = [{} for _ in euler]
    alphas: dict[str, int] = {}
    new_vertex: dict[str, int] = {}
    for pair in pd.pairs:
        a = alpha(pair, g)
        v_new = len(euler)
        euler.append(a)
        annotations.append({"origin": f"pair:{pair.label}", "alpha": a})
        alphas[pair.label] = a
        new_vertex[pair.label] = v_new
        first = pair.members[0]
        edges.append((g.arrowheads[first], v_new, 1))
        if not pair.is_self_pair:
            edges.append((g.arrowheads[pair.members[1]], v_new, -1))
        else:
            star = y_graph()
            base = len(euler)
            euler.extend(star.euler)
            annotations.extend({"origin": f"Y:{pair.label}"} for _ in star.euler)
            edges.extend((base + x, base + y, s) for x, y, s in star.edges)
            edges.append((v_new, base, -1))
    graph = PlumbingGraph(euler, edges, annotations=annotations)
    graph.validate()
    return BoundaryGraph(graph, alphas, new_vertex)
