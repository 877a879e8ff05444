"""Sparse bivariate polynomials in (s, t) over a number field."""

from __future__ import annotations

from typing import Iterable, Mapping

from . import upoly
from .fields import QQ, Embedding, FieldElement, NumberField


class BivariatePolynomial:
    """Polynomial ``sum c_{ij} s^i t^j`` stored as ``{(i, j): c}`` without zero coefficients."""

    __slots__ = ("field", "terms")

    def __init__(self, field: NumberField, terms: Mapping[tuple[int, int], object] | None = None):
        self.field = field
        clean: dict[tuple[int, int], FieldElement] = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            c = field(c)
            if not c.is_zero():
                clean[(int(i), int(j))] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def s(cls, field: NumberField = QQ) -> "BivariatePolynomial":
        return cls(field, {(1, 0): 1})

    @classmethod
    def t(cls, field: NumberField = QQ) -> "BivariatePolynomial":
        return cls(field, {(0, 1): 1})

    @classmethod
    def constant(cls, field: NumberField, c) -> "BivariatePolynomial":
        return cls(field, {(0, 0): c})

    # -- basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, i: int, j: int) -> FieldElement:
        return self.terms.get((i, j), self.field.zero)

    def degree_s(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def degree_t(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def order(self) -> int:
        """Lowest total degree (the multiplicity at the origin); -1 for zero."""
        return min((i + j for i, j in self.terms), default=-1)

    def vanishes_at_origin(self) -> bool:
        return (0, 0) not in self.terms

    def __eq__(self, other):
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- arithmetic ---------------------------------------------------------
    def _lift(self, other) -> "BivariatePolynomial":
        if isinstance(other, BivariatePolynomial):
            if other.field is not self.field and other.field != self.field:
                from ..errors import FieldMismatch

                raise FieldMismatch("polynomials over different fields")
            return other
        return BivariatePolynomial.constant(self.field, other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out[k] + c if k in out else c
        return BivariatePolynomial(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial(self.field, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        out: dict[tuple[int, int], FieldElement] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in o.terms.items():
                k = (i1 + i2, j1 + j2)
                p = c1 * c2
                out[k] = out[k] + p if k in out else p
        return BivariatePolynomial(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = BivariatePolynomial.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative_t(self) -> "BivariatePolynomial":
        return BivariatePolynomial(self.field, {(i, j - 1): c * j for (i, j), c in self.terms.items() if j})

    def derivative_s(self) -> "BivariatePolynomial":
        return BivariatePolynomial(self.field, {(i - 1, j): c * i for (i, j), c in self.terms.items() if i})

    def map_field(self, emb: Embedding) -> "BivariatePolynomial":
        return BivariatePolynomial(emb.target, {k: emb(c) for k, c in self.terms.items()})

    def swap(self) -> "BivariatePolynomial":
        """Exchange the roles of s and t."""
        return BivariatePolynomial(self.field, {(j, i): c for (i, j), c in self.terms.items()})

    # -- univariate views ---------------------------------------------------
    def t_coefficients(self) -> list[list[FieldElement]]:
        """``[a_0(s), a_1(s), …]`` with ``self = sum a_j(s) t^j`` (each a dense poly in s)."""
        out: list[list[FieldElement]] = [[] for _ in range(self.degree_t() + 1)]
        for (i, j), c in self.terms.items():
            row = out[j]
            if len(row) <= i:
                row.extend([self.field.zero] * (i + 1 - len(row)))
            row[i] = c
        return [upoly.trim(r) for r in out]

    def at_s(self, value: FieldElement) -> list[FieldElement]:
        """Dense polynomial in t obtained by substituting ``s = value``."""
        return upoly.trim([upoly.evaluate(a, value) if a else self.field.zero for a in self.t_coefficients()])

    def at_t_zero(self) -> list[FieldElement]:
        """Dense polynomial ``self(s, 0)`` in s."""
        out = [self.field.zero] * (max((i for i, j in self.terms if j == 0), default=-1) + 1)
        for (i, j), c in self.terms.items():
            if j == 0:
                out[i] = c
        return upoly.trim(out)

    def divides_by_t(self) -> bool:
        return bool(self.terms) and all(j > 0 for _, j in self.terms)

    def is_even_in_t(self) -> bool:
        return all(j % 2 == 0 for _, j in self.terms)

    # -- printing -----------------------------------------------------------
    def __str__(self) -> str:
        return self.format()

    def format(self, names: tuple[str, str] = ("s", "t")) -> str:
        """Human-readable text with ``^`` for powers, using the given variable names."""
        sn, tn = names
        if not self.terms:
            return "0"
        pieces = []
        for (i, j) in sorted(self.terms, key=lambda k: (k[0] + k[1], -k[0])):
            c = self.terms[(i, j)]
            mono = "*".join(
                x for x in (
                    "" if i == 0 else (sn if i == 1 else f"{sn}^{i}"),
                    "" if j == 0 else (tn if j == 1 else f"{tn}^{j}"),
                ) if x
            )
            cs = str(c)
            if not mono:
                pieces.append(cs)
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append(f"-{mono}")
            else:
                pieces.append(f"{cs}*{mono}")
        out = pieces[0]
        for p in pieces[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"BivariatePolynomial({self})"


def _sample_points() -> Iterable[int]:
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def squarefree_check(d: BivariatePolynomial) -> bool:
    """True iff ``d`` has no repeated irreducible factor in K[s, t].

    A repeated factor either involves t — then it divides ``gcd(d, ∂d/∂t)``
    over K(s), which is detected by the resultant ``Res_t(d, ∂d/∂t)`` vanishing
    identically — or lies in K[s] and then squares into the t-content of d.
    The resultant is tested exactly through specializations ``s = c``: it has
    s-degree at most ``deg_s(d)·(2·deg_t(d) − 1)``, so one good point where
    ``d(c, t)`` keeps its degree and is square-free certifies it is nonzero,
    and that many good failures certify it vanishes.
    """
    if d.is_zero():
        raise ValueError("zero polynomial")
    coeffs = d.t_coefficients()
    content: list[FieldElement] = []
    for a in coeffs:
        if a:
            content = upoly.gcd(content, a) if content else upoly.monic(a)
    if len(content) > 1 and not upoly.is_squarefree(content):
        return False
    n = d.degree_t()
    if n <= 0:
        return True
    bound = max(d.degree_s(), 0) * (2 * n - 1)
    lead = coeffs[n]
    good = 0
    for c in _sample_points():
        point = d.field(c)
        if upoly.evaluate(lead, point) == 0:
            continue
        spec = d.at_s(point)
        if upoly.is_squarefree(spec):
            return True
        good += 1
        if good > bound:
            return False
    raise AssertionError("unreachable")
