"""Irreducible plane-curve branches as exact truncated Puiseux parametrizations.

Every branch is stored in *monomial form*: one coordinate is ``x = γ·τ^e`` and
the other is a power series ``y(τ)``.  ``swapped`` records which coordinate is
which: ``(s, t) = (x, y)`` when it is false and ``(s, t) = (y, x)`` when true.
The coordinate carrying the monomial is always the one of smaller order (``s``
on ties), so branches tangent to ``{s = 0}`` are exactly the swapped ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Callable, Iterator, Sequence

from .algebra.bipoly import BivariatePolynomial
from .algebra.fields import Embedding, FieldElement, NumberField
from .algebra.series import EXACT, Series, evaluate_bivariate
from .errors import FieldMismatch, IdenticalBranches, TruncationExhausted, Unsupported

MAX_TRUNCATION = 512
"""Hard cap on the number of series terms computed for any branch."""

Generator = Callable[[int], Series]


class Branch:
    """Primitive Puiseux parametrization ``(s(τ), t(τ))`` of a branch through the origin."""

    def __init__(
        self,
        field: NumberField,
        gamma: FieldElement,
        e: int,
        y: Series,
        *,
        swapped: bool = False,
        regenerate: Generator | None = None,
        defining_polynomial: BivariatePolynomial | None = None,
        label: str = "",
    ):
        if e < 1:
            raise ValueError("monomial exponent must be positive")
        self.field = field
        self.gamma = field(gamma)
        self.e = e
        self._y = y
        self.swapped = swapped
        self._regenerate = None if y.is_exact else regenerate
        self.defining_polynomial = defining_polynomial
        self.label = label

    # -- construction -------------------------------------------------------
    @classmethod
    def from_parametrization(cls, field: NumberField, s: Series, t: Series, label: str = "") -> "Branch":
        """Branch from exact polynomial parametrizations ``s(τ), t(τ)``.

        The coordinate of smaller order (``s`` on ties) must be a monomial.
        """
        if not (s.is_exact and t.is_exact):
            raise ValueError("literal parametrizations must be exact")
        vs, vt = s.valuation(), t.valuation()
        if vs is None and vt is None:
            raise ValueError("the zero parametrization is not a branch")
        if (vs is not None and vs < 1) or (vt is not None and vt < 1):
            raise ValueError("branch must pass through the origin")
        swapped = vs is None or (vt is not None and vt < vs)
        x, y = (t, s) if swapped else (s, t)
        terms = x.terms()
        if len(terms) != 1:
            raise Unsupported("the lower-order coordinate of a branch literal must be a monomial")
        e, gamma = terms[0]
        exps = [e] + [k for k, _ in y.terms()]
        if reduce(gcd, exps) != 1:
            raise ValueError("parametrization is not primitive (τ is a power of another parameter)")
        return cls(field, gamma, e, y, swapped=swapped, label=label)

    # -- series access ------------------------------------------------------
    @property
    def y(self) -> Series:
        return self._y

    @property
    def x(self) -> Series:
        return Series.monomial(self.field, self.gamma, self.e)

    def s(self) -> Series:
        return self._y if self.swapped else self.x

    def t(self) -> Series:
        return self.x if self.swapped else self._y

    @property
    def truncation_order(self) -> int:
        return self._y.prec

    @property
    def s_series(self) -> list[tuple[int, FieldElement]]:
        return self.s().terms()

    @property
    def t_series(self) -> list[tuple[int, FieldElement]]:
        return self.t().terms()

    def ensure(self, order: int) -> None:
        """Make sure ``y`` is known to at least ``order`` terms (capped)."""
        if self._y.prec >= order:
            return
        if order > MAX_TRUNCATION:
            raise TruncationExhausted(f"truncation order {order} exceeds the cap {MAX_TRUNCATION}")
        assert self._regenerate is not None
        y = self._regenerate(order)
        if y.prec < order:
            raise AssertionError("branch regeneration returned too few terms")
        self._y = y

    def extend(self) -> None:
        """Double the truncation order; raise TruncationExhausted past the cap."""
        if self._y.is_exact:
            return
        if self._y.prec >= MAX_TRUNCATION:
            raise TruncationExhausted(f"branch {self} needs more than {MAX_TRUNCATION} terms")
        self.ensure(min(2 * max(self._y.prec, 1), MAX_TRUNCATION))

    @property
    def is_exact(self) -> bool:
        return self._y.is_exact

    # -- transformations ----------------------------------------------------
    def _derived(
        self, gamma, y: Series, transform: Callable[[Series], Series], defining=None, *, field=None
    ) -> "Branch":
        parent = self

        def regen(order: int) -> Series:
            parent.ensure(order)
            return transform(parent._y)

        return Branch(
            self.field if field is None else field,
            gamma,
            self.e,
            y,
            swapped=self.swapped,
            regenerate=regen,
            defining_polynomial=defining,
            label=self.label,
        )

    def map_field(self, emb: Embedding) -> "Branch":
        if self.field != emb.source:
            raise FieldMismatch("embedding source differs from branch field")
        return self._derived(
            emb(self.gamma),
            self._y.map_field(emb),
            lambda y: y.map_field(emb),
            self.defining_polynomial.map_field(emb) if self.defining_polynomial is not None else None,
            field=emb.target,
        )

    def __repr__(self):
        return f"Branch(s={self.s()!r}, t={self.t()!r})"

    def __str__(self):
        return self.label or repr(self)


@dataclass
class BranchSet:
    """Ordered list of pairwise distinct branches over a common field."""

    branches: list[Branch]
    provenance: str = ""
    embedding: Embedding | None = dc_field(default=None, repr=False)

    @property
    def field(self) -> NumberField:
        return self.branches[0].field

    def __len__(self) -> int:
        return len(self.branches)

    def __iter__(self) -> Iterator[Branch]:
        return iter(self.branches)

    def __getitem__(self, i: int) -> Branch:
        return self.branches[i]


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------


def branch_multiplicity(b: Branch) -> int:
    """Multiplicity of the branch at the origin: ``min(ord s, ord t)``."""
    v = b.y.valuation()
    if v is not None:
        return min(b.e, v)
    # all known y-coefficients vanish: y has order >= prec
    while not b.y.is_exact and b.y.prec < b.e:
        b.extend()
        v = b.y.valuation()
        if v is not None:
            return min(b.e, v)
    return b.e


def apply_involution(b: Branch) -> Branch:
    """Image under ``(s, t) ↦ (s, −t)``."""
    d = b.defining_polynomial
    flipped = None
    if d is not None:
        flipped = BivariatePolynomial(d.field, {(i, j): (-c if j % 2 else c) for (i, j), c in d.terms.items()})
    if b.swapped:  # t is the monomial coordinate
        return b._derived(-b.gamma, b.y, lambda y: y, flipped)
    return b._derived(b.gamma, -b.y, lambda y: -y, flipped)


def _common_exponents(a: Branch, b: Branch, upto: int) -> list[int]:
    exps = {k for k, _ in a.y.truncate(upto).terms()} | {k for k, _ in b.y.truncate(upto).terms()}
    return sorted(exps)


def _bezout(values: Sequence[int]) -> list[int]:
    """Integers ``c`` with ``sum c_k·values_k = gcd(values)``."""
    coeffs = [0] * len(values)
    g = 0
    for k, n in enumerate(values):
        # extended gcd of g and n
        old_r, r = g, n
        old_s, s_ = 1, 0
        old_t, t_ = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s_ = s_, old_s - q * s_
            old_t, t_ = t_, old_t - q * t_
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        coeffs = [c * old_s for c in coeffs]
        coeffs[k] = old_t
        g = old_r
    return coeffs


def reparametrization_unit(a: Branch, b: Branch, upto: int | None = None) -> FieldElement | None:
    """A scalar ``u`` with ``a(τ) = b(u·τ)`` up to the common truncation, else ``None``."""
    if a.field != b.field:
        raise FieldMismatch("branches live over different fields")
    if a.swapped != b.swapped or a.e != b.e:
        return None
    n = min(a.y.prec, b.y.prec, EXACT if upto is None else upto)
    if a.y.is_exact and b.y.is_exact:
        n = max(len(a.y.coeffs), len(b.y.coeffs))
    exps = _common_exponents(a, b, n)
    for k in exps:
        if a.y.coefficient(k).is_zero() != b.y.coefficient(k).is_zero():
            return None
    # known powers: u^e = γ_a/γ_b, u^k = a_k/b_k
    values = [a.e] + exps
    ratios = [a.gamma / b.gamma] + [a.y.coefficient(k) / b.y.coefficient(k) for k in exps]
    g = reduce(gcd, values)
    if g != 1:
        return None  # cannot pin u down at this truncation
    u = a.field.one
    for c, r in zip(_bezout(values), ratios):
        if c:
            u = u * r**c
    if u ** a.e != ratios[0]:
        return None
    if any(u**k != r for k, r in zip(exps, ratios[1:])):
        return None
    return u


def branches_equal(a: Branch, b: Branch, upto: int | None = None) -> bool:
    """True iff ``b`` reparametrizes ``a`` by ``τ ↦ u·τ`` (checked to the common truncation).

    With finite truncations the answer is certified only as far as both series
    are known; callers that must decide among candidates extend until exactly
    one candidate survives (see the pairing computation).
    """
    if a.swapped != b.swapped or a.e != b.e:
        return False
    while True:
        u = reparametrization_unit(a, b, upto)
        if u is not None:
            return True
        n = min(a.y.prec, b.y.prec)
        exps = _common_exponents(a, b, n)
        if reduce(gcd, [a.e] + exps) == 1 or (a.is_exact and b.is_exact):
            return False
        # the exponents seen so far do not yet determine u: extend
        for br in (a, b):
            if not br.is_exact and br.y.prec <= n:
                br.extend()


def characteristic_exponents(b: Branch) -> list[Fraction]:
    """Puiseux characteristic exponents ``k/e`` of ``y`` as a series in ``x^{1/e}``."""
    out: list[Fraction] = []
    current = b.e
    k = 0
    while current > 1:
        if k >= b.y.prec:
            if b.y.is_exact:
                raise ValueError("parametrization is not primitive")
            b.extend()
            continue
        if not b.y.coefficient(k).is_zero() and k % current:
            out.append(Fraction(k, b.e))
            current = gcd(current, k)
        k += 1
    return out


# ---------------------------------------------------------------------------
# intersection multiplicities
# ---------------------------------------------------------------------------


def _intersect_polynomial(a: Branch, p: BivariatePolynomial) -> int:
    if p.field != a.field:
        raise FieldMismatch("polynomial and branch over different fields")
    while True:
        val = evaluate_bivariate(p, a.s(), a.t())
        v = val.valuation()
        if v is not None:
            return v
        if val.is_zero():
            raise IdenticalBranches("the polynomial vanishes identically on the branch")
        a.extend()


def _norm_determinant(matrix: list[list[Series]]) -> Series:
    """Determinant of a small matrix of series (Laplace expansion over row subsets)."""
    n = len(matrix)
    field = matrix[0][0].field
    det: dict[int, Series] = {0: Series(field, [field.one])}
    for col in range(n):
        nxt: dict[int, Series] = {}
        for mask, val in det.items():
            for row in range(n):
                if mask >> row & 1:
                    continue
                entry = matrix[row][col]
                if entry.is_zero():
                    continue
                sign = -1 if bin(mask >> (row + 1)).count("1") % 2 else 1
                term = val * entry
                if sign < 0:
                    term = -term
                key = mask | (1 << row)
                nxt[key] = nxt[key] + term if key in nxt else term
        det = nxt
    return det.get((1 << n) - 1, Series.zero(field))


def _intersect_same_chart(a: Branch, b: Branch) -> int:
    """``I(a, b)`` as ``ord_τ`` of the norm of ``y_a(τ) − y_b(σ)`` over ``σ^{e_b} = (γ_a/γ_b)·τ^{e_a}``."""
    if b.e > a.e:
        a, b = b, a
    field = a.field
    while True:
        c = a.gamma / b.gamma
        ea, eb = a.e, b.e
        step = Series.monomial(field, c, ea)  # σ^{e_b}
        h: list[Series] = []
        for r in range(eb):
            terms = []
            k = 0
            limit = b.y.prec if not b.y.is_exact else len(b.y.coeffs)
            while r + k * eb < limit:
                coef = b.y.coefficient(r + k * eb)
                if not coef.is_zero():
                    terms.append((k * ea, coef * c**k))
                k += 1
            prec = EXACT if b.y.is_exact else k * ea
            br = Series.from_terms(field, terms, prec)
            h.append((a.y - br) if r == 0 else -br)
        matrix = [[h[i - j] if i >= j else step * h[i - j + eb] for j in range(eb)] for i in range(eb)]
        det = _norm_determinant(matrix)
        v = det.valuation()
        if v is not None:
            return v
        if det.is_zero():
            raise IdenticalBranches("branches coincide")
        progressed = False
        for br in (a, b):
            if not br.is_exact:
                br.extend()
                progressed = True
        if not progressed:
            raise IdenticalBranches("branches coincide")


def intersection_multiplicity(a: Branch, b: "Branch | BivariatePolynomial") -> int:
    """Local intersection number of a branch with another branch or a curve ``{p = 0}``."""
    if isinstance(b, BivariatePolynomial):
        return _intersect_polynomial(a, b)
    if a.field != b.field:
        raise FieldMismatch("branches live over different fields")
    if a.swapped != b.swapped:
        # one branch is tangent to {s=0}, the other is not: transverse tangents
        return branch_multiplicity(a) * branch_multiplicity(b)
    if b.defining_polynomial is not None:
        return _intersect_polynomial(a, b.defining_polynomial)
    if a.defining_polynomial is not None:
        return _intersect_polynomial(b, a.defining_polynomial)
    return _intersect_same_chart(a, b)
