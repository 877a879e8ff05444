"""Newton–Puiseux splitting of a square-free d(s, t) into branch parametrizations.

The recursion follows the rational-Puiseux-expansion scheme: for an edge of
slope ``p/q`` and a root ``ξ`` of its edge polynomial in ``W = y^q/x^p`` the
substitution ``x = ξ^v·T^q``, ``y = T^p·(ξ^u + Y)`` with ``u·q − v·p = 1`` keeps
all coefficients in the field generated by the roots of edge polynomials, so
no ``q``-th roots are ever adjoined.  Once a root is simple the remaining
equation is regular in ``Y`` and is solved by Newton iteration to any order,
which is what lets branches re-extend themselves on demand.

Branches are collected in two passes so that each is written in monomial
form with respect to the coordinate of smaller order:

* pass 1 (``x = s, y = t``): edges of slope ``≥ 1`` plus the branch ``{t = 0}``;
* pass 2 (``x = t, y = s``): edges of slope ``> 1`` plus the branch ``{s = 0}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .algebra.bipoly import BivariatePolynomial, squarefree_check
from .algebra.factor import split_polynomial
from .algebra.fields import Embedding, FieldElement
from .algebra.series import Series, evaluate_bivariate
from .branches import MAX_TRUNCATION, Branch, BranchSet
from .errors import NotSquareFree, NotVanishingAtOrigin, Unsupported

MAX_DEPTH = 32
DEFAULT_ORDER = 8

__all__ = ["squarefree_check", "expand", "MAX_DEPTH"]


@dataclass
class _Step:
    xi: FieldElement
    p: int
    q: int
    u: int
    v: int

    def mapped(self, emb: Embedding) -> "_Step":
        return _Step(emb(self.xi), self.p, self.q, self.u, self.v)


@dataclass
class _Item:
    poly: BivariatePolynomial  # in (x, y) = (s-slot, t-slot)
    steps: list[_Step]
    swapped: bool
    kind: str  # "pass1", "pass2" or "inner"
    key: tuple

    def mapped(self, emb: Embedding) -> "_Item":
        return _Item(self.poly.map_field(emb), [s.mapped(emb) for s in self.steps], self.swapped, self.kind, self.key)


@dataclass
class _Result:
    steps: list[_Step]
    final: BivariatePolynomial  # regular in Y at the origin
    swapped: bool
    key: tuple
    axis: bool = False

    def mapped(self, emb: Embedding) -> "_Result":
        return _Result([s.mapped(emb) for s in self.steps], self.final.map_field(emb), self.swapped, self.key, self.axis)


def _divide_monomial(f: BivariatePolynomial, a: int, b: int) -> BivariatePolynomial:
    return BivariatePolynomial(f.field, {(i - a, j - b): c for (i, j), c in f.terms.items()})


def _newton_edges(f: BivariatePolynomial) -> list[tuple[int, int, int, int, int, int]]:
    """Edges of the Newton polygon between the axes.

    ``f`` has no monomial factor.  Returns ``(i_a, j_a, i_b, j_b, p, q)`` from the
    y-axis towards the x-axis; the slope ``(i_b − i_a)/(j_a − j_b)`` equals ``p/q``.
    """
    pts = list(f.terms)
    j_axis = min(j for i, j in pts if i == 0)
    edges = []
    cur = (0, j_axis)
    while cur[1] > 0:
        best = None
        for i, j in pts:
            if j >= cur[1]:
                continue
            slope = Fraction(i - cur[0], cur[1] - j)
            if best is None or slope < best[0] or (slope == best[0] and j < best[1][1]):
                best = (slope, (i, j))
        slope, nxt = best
        edges.append((cur[0], cur[1], nxt[0], nxt[1], slope.numerator, slope.denominator))
        cur = nxt
    return edges


def _edge_polynomial(f: BivariatePolynomial, edge) -> list[FieldElement]:
    i_a, j_a, i_b, j_b, p, q = edge
    weight = q * i_b + p * j_b
    psi = [f.field.zero] * ((j_a - j_b) // q + 1)
    for (i, j), c in f.terms.items():
        if q * i + p * j == weight:
            psi[(j - j_b) // q] = c
    return psi


def _bezout_uv(p: int, q: int) -> tuple[int, int]:
    """Smallest ``u >= 0`` with ``u·q − v·p = 1`` and ``v >= 0``."""
    u = 0
    while True:
        if (u * q - 1) % p == 0 and u * q - 1 >= 0:
            return u, (u * q - 1) // p
        u += 1


def _transform(f: BivariatePolynomial, step: _Step) -> BivariatePolynomial:
    """``f(ξ^v T^q, T^p (ξ^u + Y)) / T^N`` as a polynomial in ``(T, Y)``."""
    xi, p, q, u, v = step.xi, step.p, step.q, step.u, step.v
    weight = min(q * i + p * j for i, j in f.terms)
    xi_u = xi**u
    out: dict[tuple[int, int], FieldElement] = {}
    for (i, j), c in f.terms.items():
        base = c * xi ** (v * i)
        texp = q * i + p * j - weight
        for m in range(j + 1):
            coef = base * comb(j, m) * xi_u ** (j - m)
            key = (texp, m)
            out[key] = out[key] + coef if key in out else coef
    return BivariatePolynomial(f.field, out)


def _y_order_at_zero(f: BivariatePolynomial) -> int:
    return min(j for i, j in f.terms if i == 0)


class _Expander:
    def __init__(self, d: BivariatePolynomial):
        self.field = d.field
        self.embedding = Embedding.identity(d.field)
        self.work: list[_Item] = [
            _Item(d, [], False, "pass1", (0,)),
            _Item(d.swap(), [], True, "pass2", (1,)),
        ]
        self.results: list[_Result] = []

    def _extend(self, emb: Embedding) -> None:
        self.field = emb.target
        self.embedding = self.embedding.then(emb)
        self.work = [w.mapped(emb) for w in self.work]
        self.results = [r.mapped(emb) for r in self.results]

    def run(self) -> None:
        while self.work:
            item = self.work.pop(0)
            self._process(item)

    def _process(self, item: _Item) -> None:
        f = item.poly
        if len(item.steps) > MAX_DEPTH:
            raise Unsupported(f"Newton–Puiseux recursion deeper than {MAX_DEPTH}")
        if item.kind != "inner":
            a = min(i for i, _ in f.terms)
            f = _divide_monomial(f, a, 0)
        if min(j for _, j in f.terms) >= 1:
            y_axis = BivariatePolynomial.t(f.field)
            self.results.append(_Result(item.steps, y_axis, item.swapped, item.key + (-1,), axis=not item.steps))
            f = _divide_monomial(f, 0, 1)
            if min(j for _, j in f.terms) >= 1:
                raise NotSquareFree("repeated factor along a coordinate axis")
        if (0, 0) in f.terms:
            return
        edges = _newton_edges(f)
        for edge_index, edge in enumerate(edges):
            p, q = edge[4], edge[5]
            if item.kind == "pass1" and p < q:
                continue
            if item.kind == "pass2" and p <= q:
                continue
            psi = _edge_polynomial(f, edge)
            field_before = self.field
            new_field, emb, roots = split_polynomial(psi, self.field)
            if new_field is not field_before:
                self.work.insert(0, item)  # keep ``item`` in the mapped set
                self._extend(emb)
                item = self.work.pop(0)
                f = f.map_field(emb)
            u, v = _bezout_uv(p, q)
            for root_index, (xi, mult) in enumerate(roots):
                step = _Step(xi, p, q, u, v)
                g = _transform(f, step)
                r = _y_order_at_zero(g)
                if r != mult:
                    raise AssertionError("edge root multiplicity mismatch")
                key = item.key + (edge_index, root_index)
                steps = item.steps + [step]
                if mult == 1:
                    self.results.append(_Result(steps, g, item.swapped, key))
                else:
                    self.work.append(_Item(g, steps, item.swapped, "inner", key))


def _solve_regular(g: BivariatePolynomial, order: int) -> Series:
    """The unique ``Y(τ)`` with ``Y(0) = 0`` and ``g(τ, Y(τ)) = 0``, to ``order`` terms."""
    field = g.field
    tau = Series.monomial(field, field.one, 1)
    if all(j >= 1 for _, j in g.terms):
        return Series.zero(field)
    gy = g.derivative_t()
    y = Series(field, [], 1)
    n = 1
    while n < order:
        n = min(2 * n, order)
        approx = Series(field, y.coeffs, n)
        val = evaluate_bivariate(g, tau, approx, cap=n).truncate(n)
        der = evaluate_bivariate(gy, tau, approx, cap=n).truncate(n)
        y = (approx - val * der.inverse(n)).truncate(n)
        y = Series(field, y.coeffs, n)
        exact = Series(field, y.coeffs)
        if evaluate_bivariate(g, tau, exact).is_zero():
            return exact
    return y


def _unwind(steps: list[_Step], y_final: Series) -> tuple[FieldElement, int, Series]:
    field = y_final.field
    g = field.one
    e = 1
    y = y_final
    for st in reversed(steps):
        lead = Series.monomial(field, g**st.p, st.p * e)
        y = lead * (y + st.xi**st.u)
        g = st.xi**st.v * g**st.q
        e *= st.q
    return g, e, y


def _shift_total(steps: list[_Step]) -> int:
    total = 0
    e = 1
    for st in reversed(steps):
        total += st.p * e
        e *= st.q
    return total


def _branch_from_result(res: _Result, d: BivariatePolynomial, min_order: int, single: bool) -> Branch:
    field = res.final.field
    offset = _shift_total(res.steps)

    def regenerate(order: int) -> Series:
        inner = _solve_regular(res.final, max(order - offset, 1))
        _, _, y = _unwind(res.steps, inner)
        return y

    y = regenerate(min_order)
    gamma, e, _ = _unwind(res.steps, Series.zero(field))
    defining = None
    if res.axis:
        defining = BivariatePolynomial.s(field) if res.swapped else BivariatePolynomial.t(field)
    elif single:
        defining = d
    elif e == 1 and y.is_exact:
        # y = Q(x/γ) exactly: the branch is the smooth curve y − Q(x/γ) = 0
        xs = BivariatePolynomial.t(field) if res.swapped else BivariatePolynomial.s(field)
        ys = BivariatePolynomial.s(field) if res.swapped else BivariatePolynomial.t(field)
        inv = gamma.inverse()
        q_poly = BivariatePolynomial(field, {})
        for k, c in y.terms():
            q_poly = q_poly + (xs**k) * (c * inv**k)
        defining = ys - q_poly
    return Branch(
        field,
        gamma,
        e,
        y,
        swapped=res.swapped,
        regenerate=regenerate,
        defining_polynomial=defining,
    )


def expand(d: BivariatePolynomial, min_order: int = DEFAULT_ORDER) -> BranchSet:
    """All branches of ``{d = 0}`` at the origin, each expanded to ``min_order`` terms."""
    if d.is_zero():
        raise ValueError("d must be nonzero")
    if not d.vanishes_at_origin():
        raise NotVanishingAtOrigin(f"{d} does not vanish at the origin")
    if not squarefree_check(d):
        raise NotSquareFree(f"{d} has a repeated factor")
    min_order = min(max(min_order, 1), MAX_TRUNCATION)
    exp = _Expander(d)
    exp.run()
    results = sorted(exp.results, key=lambda r: r.key)
    d_final = d.map_field(exp.embedding)
    single = len(results) == 1
    branches = [_branch_from_result(r, d_final, min_order, single) for r in results]
    for k, b in enumerate(branches):
        b.label = f"D{k + 1}"
    return BranchSet(branches, provenance=str(d), embedding=exp.embedding)
