"""Signed plumbing graphs of closed oriented 3-manifolds.

Vertices carry an Euler number (and a genus, always 0 here); edges carry a
sign ``±1`` and may be loops.  Conventions:

* intersection matrix: ``A_vv = e_v + 2·Σ(loop signs at v)``, ``A_vw = Σ(edge signs)``;
* ``H_1 = Z^{b_1} ⊕ coker(A)`` with ``b_1`` the cycle rank of the multigraph.

The calculus moves implemented are ±1 blow-downs of vertices of degree ≤ 2,
0-chain absorption between two distinct neighbours, and the vertex sign
flips used by :func:`sign_normalize`.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field as dc_field
from typing import Any, Hashable, Iterable

from .algebra.intlinalg import AbelianGroup
from .errors import InvalidGraph, NotAbsorbable, NotBlowDownable, TooLarge, Unsupported

MAX_ISO_VERTICES = 64


@dataclass
class PlumbingGraph:
    """Plumbing graph with signed (multi-)edges and loops; edges are ``(a, b, sign)`` with ``a <= b``."""

    euler: list[int]
    edges: list[tuple[int, int, int]] = dc_field(default_factory=list)
    genus: list[int] | None = None
    annotations: list[dict[str, Any]] | None = None

    def __post_init__(self):
        n = len(self.euler)
        self.euler = [int(e) for e in self.euler]
        if self.genus is None:
            self.genus = [0] * n
        if self.annotations is None:
            self.annotations = [{} for _ in range(n)]
        if len(self.genus) != n or len(self.annotations) != n:
            raise InvalidGraph("per-vertex data of inconsistent length")
        if any(g != 0 for g in self.genus):
            raise Unsupported("vertices of nonzero genus are not supported")
        clean = []
        for a, b, s in self.edges:
            if s not in (1, -1):
                raise InvalidGraph(f"edge sign must be ±1, got {s}")
            if not (0 <= a < n and 0 <= b < n):
                raise InvalidGraph(f"edge {(a, b)} references a missing vertex")
            clean.append((min(a, b), max(a, b), s))
        self.edges = sorted(clean)

    # -- structure ----------------------------------------------------------
    @property
    def num_vertices(self) -> int:
        return len(self.euler)

    def copy(self) -> "PlumbingGraph":
        return PlumbingGraph(list(self.euler), list(self.edges), list(self.genus), [dict(a) for a in self.annotations])

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b, _ in self.edges)

    def loops(self, v: int) -> list[int]:
        return [s for a, b, s in self.edges if a == b == v]

    def incident(self, v: int) -> list[tuple[int, int, int]]:
        """Non-loop edges at ``v`` as ``(neighbour, sign, edge index)``."""
        out = []
        for k, (a, b, s) in enumerate(self.edges):
            if a == b:
                continue
            if a == v:
                out.append((b, s, k))
            elif b == v:
                out.append((a, s, k))
        return out

    def is_connected(self) -> bool:
        n = self.num_vertices
        if n == 0:
            return False
        adj = defaultdict(set)
        for a, b, _ in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == n

    def validate(self) -> None:
        if not self.is_connected():
            raise InvalidGraph("plumbing graph must be connected and nonempty")

    def cycle_rank(self) -> int:
        return len(self.edges) - self.num_vertices + 1

    def remove_vertices(self, doomed: Iterable[int]) -> "PlumbingGraph":
        doomed = set(doomed)
        keep = [v for v in range(self.num_vertices) if v not in doomed]
        index = {v: k for k, v in enumerate(keep)}
        edges = [(index[a], index[b], s) for a, b, s in self.edges if a in index and b in index]
        return PlumbingGraph(
            [self.euler[v] for v in keep],
            edges,
            [self.genus[v] for v in keep],
            [self.annotations[v] for v in keep],
        )

    # -- serialization ------------------------------------------------------
    def to_json_obj(self) -> dict[str, Any]:
        vertices = []
        for v in range(self.num_vertices):
            entry: dict[str, Any] = {"id": v, "euler": self.euler[v]}
            for k in sorted(self.annotations[v]):
                entry[k] = self.annotations[v][k]
            vertices.append(entry)
        return {
            "vertices": vertices,
            "edges": [{"a": a, "b": b, "sign": s} for a, b, s in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2) + "\n"

    @classmethod
    def from_json_obj(cls, obj: dict[str, Any]) -> "PlumbingGraph":
        try:
            verts = sorted(obj["vertices"], key=lambda v: v["id"])
            index = {v["id"]: k for k, v in enumerate(verts)}
            if len(index) != len(verts):
                raise InvalidGraph("duplicate vertex id")
            euler = [int(v["euler"]) for v in verts]
            genus = [int(v.get("genus", 0)) for v in verts]
            annotations = [{k: val for k, val in v.items() if k not in ("id", "euler", "genus")} for v in verts]
            edges = [(index[e["a"]], index[e["b"]], int(e.get("sign", 1))) for e in obj.get("edges", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidGraph(f"malformed graph document: {exc}") from None
        return cls(euler, edges, genus, annotations)

    @classmethod
    def from_json(cls, text: str) -> "PlumbingGraph":
        return cls.from_json_obj(json.loads(text))

    def to_dot(self, name: str = "plumbing") -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.num_vertices):
            lines.append(f'  n{v} [label="e={self.euler[v]}"];')
        for a, b, s in self.edges:
            style = " [style=dashed]" if s < 0 else ""
            lines.append(f"  n{a} -- n{b}{style};")
        lines.append("}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------


def intersection_matrix(g: PlumbingGraph) -> list[list[int]]:
    n = g.num_vertices
    a = [[0] * n for _ in range(n)]
    for v in range(n):
        a[v][v] = g.euler[v]
    for x, y, s in g.edges:
        if x == y:
            a[x][x] += 2 * s
        else:
            a[x][y] += s
            a[y][x] += s
    return a


def h1(g: PlumbingGraph) -> AbelianGroup:
    """First homology of the plumbed manifold: ``Z^{b_1} ⊕ coker(A)``."""
    g.validate()
    return AbelianGroup.cokernel(intersection_matrix(g), extra_free=g.cycle_rank())


# ---------------------------------------------------------------------------
# calculus moves
# ---------------------------------------------------------------------------


def can_blow_down(g: PlumbingGraph, v: int) -> bool:
    return (
        g.euler[v] in (1, -1)
        and g.genus[v] == 0
        and not g.loops(v)
        and (g.degree(v) in (1, 2) or (g.degree(v) == 0 and g.num_vertices > 1))
    )


def blow_down(g: PlumbingGraph, v: int) -> PlumbingGraph:
    """Remove a ``±1`` vertex of degree ≤ 2 (the blow-down move)."""
    if not can_blow_down(g, v):
        raise NotBlowDownable(f"vertex {v} (euler {g.euler[v]}, degree {g.degree(v)}) cannot be blown down")
    eps = g.euler[v]
    out = g.copy()
    inc = g.incident(v)
    if len(inc) == 1:
        (a, _, _), = inc
        out.euler[a] -= eps
    elif len(inc) == 2:
        (a, s1, _), (b, s2, _) = inc
        out.euler[a] -= eps
        out.euler[b] -= eps
        out.edges.append((min(a, b), max(a, b), -eps * s1 * s2))
    return out.remove_vertices([v])


def can_absorb(g: PlumbingGraph, v: int) -> bool:
    if g.euler[v] != 0 or g.genus[v] != 0 or g.loops(v) or g.degree(v) != 2:
        return False
    (a, _, _), (b, _, _) = g.incident(v)
    return a != b


def zero_chain_absorb(g: PlumbingGraph, v: int) -> PlumbingGraph:
    """Absorb a 0-vertex of degree 2: its neighbours ``a ≠ b`` merge into one vertex.

    Edges formerly at ``b`` are re-attached to ``a`` with their sign multiplied
    by ``−ε₁ε₂`` (``ε₁, ε₂`` the signs of the two absorbed edges); edges
    between ``a`` and ``b`` become loops.  This keeps ``H_1`` unchanged.
    """
    if g.euler[v] != 0 or g.genus[v] != 0 or g.loops(v) or g.degree(v) != 2:
        raise NotAbsorbable(f"vertex {v} is not a 0-vertex of degree 2 without loops")
    (a, s1, _), (b, s2, _) = g.incident(v)
    if a == b:
        raise NotAbsorbable("both edges of the 0-vertex go to the same neighbour")
    factor = -s1 * s2
    out = g.copy()
    out.euler[a] = g.euler[a] + g.euler[b]
    new_edges = []
    for x, y, s in g.edges:
        if v in (x, y):
            continue
        if b in (x, y):
            s = s * factor if x != y else s  # loops at b keep their sign
            x = a if x == b else x
            y = a if y == b else y
        new_edges.append((min(x, y), max(x, y), s))
    out.edges = sorted(new_edges)
    return out.remove_vertices([v, b])


def sign_normalize(g: PlumbingGraph) -> PlumbingGraph:
    """Flip vertex signs so that a BFS spanning tree from vertex 0 is all-positive."""
    n = g.num_vertices
    if n == 0:
        return g.copy()
    adj: dict[int, list[tuple[int, int, int]]] = defaultdict(list)
    for k, (a, b, s) in enumerate(g.edges):
        if a != b:
            adj[a].append((b, s, k))
            adj[b].append((a, s, k))
    gauge = [0] * n
    gauge[0] = 1
    order = [0]
    for v in order:
        for w, s, _ in sorted(adj[v]):
            if not gauge[w]:
                gauge[w] = gauge[v] * s
                order.append(w)
    for v in range(n):  # disconnected graphs: keep other components as they are
        if not gauge[v]:
            gauge[v] = 1
    out = g.copy()
    out.edges = sorted((a, b, s if a == b else s * gauge[a] * gauge[b]) for a, b, s in g.edges)
    return out


def normalize(g: PlumbingGraph) -> PlumbingGraph:
    """Apply blow-downs and 0-chain absorptions greedily (lowest vertex first), then sign-normalize."""
    cur = g.copy()
    while True:
        for v in range(cur.num_vertices):
            if can_blow_down(cur, v) and cur.degree(v) > 0:
                cur = blow_down(cur, v)
                break
            if can_absorb(cur, v):
                cur = zero_chain_absorb(cur, v)
                break
        else:
            break
    return sign_normalize(cur)


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------


@dataclass
class _Shape:
    labels: list[Hashable]
    pair_signs: dict[tuple[int, int], list[int]]  # a < b -> sorted signs of parallel edges
    loop_signs: dict[int, list[int]]

    @property
    def n(self) -> int:
        return len(self.labels)

    def neighbours(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.pair_signs:
            nb[a].append(b)
            nb[b].append(a)
        return nb

    def mult(self, a: int, b: int) -> int:
        if a == b:
            return len(self.loop_signs.get(a, []))
        return len(self.pair_signs.get((min(a, b), max(a, b)), []))


def shape_of(labels: list[Hashable], edges: Iterable[tuple[int, int, int]]) -> _Shape:
    pairs: dict[tuple[int, int], list[int]] = defaultdict(list)
    loops: dict[int, list[int]] = defaultdict(list)
    for a, b, s in edges:
        if a == b:
            loops[a].append(s)
        else:
            pairs[(min(a, b), max(a, b))].append(s)
    return _Shape(list(labels), {k: sorted(v) for k, v in pairs.items()}, {k: sorted(v) for k, v in loops.items()})


def _refine(shapes: list[_Shape]) -> list[list[int]]:
    """Colour refinement run jointly so that colours are comparable across graphs."""

    def relabel(sigs: list[list[Any]]) -> list[list[int]]:
        palette = {sig: k for k, sig in enumerate(sorted({x for ss in sigs for x in ss}, key=repr))}
        return [[palette[x] for x in ss] for ss in sigs]

    colours = relabel(
        [[(repr(sh.labels[v]), tuple(sh.loop_signs.get(v, []))) for v in range(sh.n)] for sh in shapes]
    )
    nbs = [sh.neighbours() for sh in shapes]
    count = len({c for cs in colours for c in cs})
    while True:
        sigs = [
            [(col[v], tuple(sorted((col[w], sh.mult(v, w)) for w in nb[v]))) for v in range(sh.n)]
            for sh, col, nb in zip(shapes, colours, nbs)
        ]
        new = relabel(sigs)
        new_count = len({c for cs in new for c in cs})
        if new_count == count:
            return new
        colours, count = new, new_count


def _sign_gauge_ok(s1: _Shape, s2: _Shape, phi: list[int]) -> bool:
    """Is there a vertex gauge ``g`` turning the signs of ``s1`` into those of ``s2`` along ``phi``?"""
    for v, signs in s1.loop_signs.items():
        if signs != s2.loop_signs.get(phi[v], []):
            return False
    constraints: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for (a, b), signs in s1.pair_signs.items():
        target = s2.pair_signs.get((min(phi[a], phi[b]), max(phi[a], phi[b])), [])
        same = signs == target
        flipped = sorted(-x for x in signs) == target
        if same and flipped:
            continue
        if not (same or flipped):
            return False
        parity = 1 if same else -1
        constraints[a].append((b, parity))
        constraints[b].append((a, parity))
    gauge: dict[int, int] = {}
    for root in range(s1.n):
        if root in gauge:
            continue
        gauge[root] = 1
        stack = [root]
        while stack:
            v = stack.pop()
            for w, par in constraints[v]:
                want = gauge[v] * par
                if w not in gauge:
                    gauge[w] = want
                    stack.append(w)
                elif gauge[w] != want:
                    return False
    return True


def isomorphic_shapes(s1: _Shape, s2: _Shape) -> bool:
    if s1.n != s2.n:
        return False
    if max(s1.n, s2.n) > MAX_ISO_VERTICES:
        raise TooLarge(f"isomorphism test limited to {MAX_ISO_VERTICES} vertices")
    if sum(map(len, s1.pair_signs.values())) != sum(map(len, s2.pair_signs.values())):
        return False
    c1, c2 = _refine([s1, s2])
    if Counter(c1) != Counter(c2):
        return False
    n = s1.n
    nb1 = s1.neighbours()
    # order vertices: rarest colour first, then by BFS to keep constraints tight
    freq = Counter(c1)
    order: list[int] = []
    seen: set[int] = set()
    for start in sorted(range(n), key=lambda v: (freq[c1[v]], v)):
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(nb1[v], key=lambda w: (freq[c1[w]], w)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    phi = [-1] * n
    used = [False] * n

    def consistent(v: int, w: int) -> bool:
        if s1.mult(v, v) != s2.mult(w, w):
            return False
        for u in nb1[v]:
            if phi[u] >= 0 and s1.mult(v, u) != s2.mult(w, phi[u]):
                return False
        # non-edges to already mapped vertices must stay non-edges
        mapped_nb = sum(1 for u in nb1[v] if phi[u] >= 0)
        images = sum(1 for u in range(n) if phi[u] >= 0 and s2.mult(w, phi[u]))
        return mapped_nb == images

    def search(k: int) -> bool:
        if k == n:
            return _sign_gauge_ok(s1, s2, phi)
        v = order[k]
        for w in range(n):
            if used[w] or c2[w] != c1[v] or not consistent(v, w):
                continue
            phi[v] = w
            used[w] = True
            if search(k + 1):
                return True
            phi[v] = -1
            used[w] = False
        return False

    return search(0)


def isomorphic(g1: PlumbingGraph, g2: PlumbingGraph) -> bool:
    """Isomorphism respecting Euler numbers, edge multiplicities and signs up to vertex flips."""
    s1 = shape_of(list(zip(g1.euler, g1.genus)), g1.edges)
    s2 = shape_of(list(zip(g2.euler, g2.genus)), g2.edges)
    return isomorphic_shapes(s1, s2)


def equivalent(g1: PlumbingGraph, g2: PlumbingGraph) -> bool:
    """Calculus equivalence decided as ``isomorphic(normalize(g1), normalize(g2))`` (sound, not complete)."""
    return isomorphic(normalize(g1), normalize(g2))
