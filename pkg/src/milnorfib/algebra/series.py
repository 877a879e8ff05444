"""Truncated power series in one variable with exact precision bookkeeping.

A :class:`Series` stores the coefficients of ``τ^0 … τ^{prec-1}``; anything
from ``τ^prec`` on is unknown.  Exact (polynomial) series carry the sentinel
precision :data:`EXACT`.  Every operation propagates the precision that is
actually certified, so a coefficient read below ``prec`` is always correct.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import DivisionByZero
from . import upoly
from .fields import FieldElement, NumberField

EXACT = 1 << 60
"""Precision sentinel for series known exactly (finitely many nonzero terms)."""


def _clamp(p: int) -> int:
    return EXACT if p >= EXACT else p


class Series:
    __slots__ = ("field", "coeffs", "prec")

    def __init__(self, field: NumberField, coeffs: Sequence, prec: int = EXACT):
        coeffs = [field(c) for c in coeffs[: prec if prec < EXACT else len(coeffs)]]
        self.field = field
        self.coeffs = upoly.trim(coeffs)
        self.prec = _clamp(prec)

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, field: NumberField, prec: int = EXACT) -> "Series":
        return cls(field, [], prec)

    @classmethod
    def monomial(cls, field: NumberField, coeff, exponent: int) -> "Series":
        return cls(field, [field.zero] * exponent + [field(coeff)])

    @classmethod
    def from_terms(cls, field: NumberField, terms, prec: int = EXACT) -> "Series":
        """Build from ``[(exponent, coeff), …]``."""
        top = max((e for e, _ in terms), default=-1)
        coeffs = [field.zero] * (top + 1)
        for e, c in terms:
            coeffs[e] = coeffs[e] + field(c)
        return cls(field, coeffs, prec)

    # -- queries ------------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.prec >= EXACT

    def coefficient(self, n: int) -> FieldElement:
        if n >= self.prec:
            raise IndexError(f"coefficient {n} beyond precision {self.prec}")
        return self.coeffs[n] if n < len(self.coeffs) else self.field.zero

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, ``None`` if none is known."""
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return None

    def _val_or_prec(self) -> int:
        v = self.valuation()
        return self.prec if v is None else v

    def is_zero(self) -> bool:
        """True only for the exactly-zero series."""
        return self.is_exact and not self.coeffs

    def terms(self) -> list[tuple[int, FieldElement]]:
        return [(k, c) for k, c in enumerate(self.coeffs) if not c.is_zero()]

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.prec == other.prec and self.coeffs == other.coeffs

    def agrees_with(self, other: "Series", upto: int | None = None) -> bool:
        """Coefficients coincide below ``min(prec, other.prec, upto)``."""
        n = min(self.prec, other.prec, EXACT if upto is None else upto)
        n = min(n, max(len(self.coeffs), len(other.coeffs)))
        return all(self.coefficient(k) == other.coefficient(k) for k in range(n))

    # -- arithmetic ---------------------------------------------------------
    def _lift(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        return Series(self.field, [self.field(other)])

    def __add__(self, other):
        o = self._lift(other)
        prec = min(self.prec, o.prec)
        return Series(self.field, upoly.add(self.coeffs, o.coeffs), prec)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.field, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Series):
            c = self.field(other)
            if c.is_zero():
                return Series(self.field, [])
            return Series(self.field, [a * c for a in self.coeffs], self.prec)
        o = other
        prec = _clamp(min(self.prec + o._val_or_prec(), o.prec + self._val_or_prec()))
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Series(self.field, [], prec)
        n = min(len(a) + len(b) - 1, prec)
        out = [None] * n
        for i, x in enumerate(a):
            if i >= n:
                break
            if x.is_zero():
                continue
            for j in range(min(len(b), n - i)):
                y = b[j]
                if y.is_zero():
                    continue
                t = x * y
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        zero = self.field.zero
        return Series(self.field, [zero if c is None else c for c in out], prec)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Series":
        if n < 0:
            raise ValueError("negative power; use inverse()")
        result = Series(self.field, [self.field.one])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def truncate(self, n: int) -> "Series":
        return Series(self.field, self.coeffs[:n], min(self.prec, n))

    def shift(self, k: int) -> "Series":
        """Multiply by ``τ^k`` (``k`` may be negative if the low terms are known zero)."""
        if k >= 0:
            return Series(self.field, [self.field.zero] * k + self.coeffs, _clamp(self.prec + k))
        v = self._val_or_prec()
        if v < -k:
            raise DivisionByZero(f"series of valuation {v} is not divisible by τ^{-k}")
        return Series(self.field, self.coeffs[-k:], EXACT if self.is_exact else self.prec + k)

    def substitute_monomial(self, c: FieldElement, q: int) -> "Series":
        """Return ``f(c·τ^q)``."""
        out: list[FieldElement] = []
        cp = self.field.one
        for k, a in enumerate(self.coeffs):
            if k:
                out.extend([self.field.zero] * (q - 1))
            out.append(a * cp)
            cp = cp * c
        return Series(self.field, out, _clamp(self.prec * q) if not self.is_exact else EXACT)

    def map_field(self, emb) -> "Series":
        return Series(emb.target, [emb(c) for c in self.coeffs], self.prec)

    def inverse(self, cap: int) -> "Series":
        """Multiplicative inverse of a unit series (valuation 0), at most ``cap`` terms."""
        if not self.coeffs or self.coeffs[0].is_zero():
            raise DivisionByZero("series is not a unit")
        if self.is_exact and len(self.coeffs) == 1:
            return Series(self.field, [self.coeffs[0].inverse()])
        n = min(self.prec, cap)
        inv0 = self.coeffs[0].inverse()
        out = [inv0]
        a = self.coeffs
        for k in range(1, n):
            acc = self.field.zero
            for j in range(1, min(k, len(a) - 1) + 1):
                if not a[j].is_zero() and not out[k - j].is_zero():
                    acc = acc + a[j] * out[k - j]
            out.append(-acc * inv0)
        return Series(self.field, out, n)

    def divide(self, other: "Series", cap: int) -> "Series":
        """``self / other`` where ``ord(self) >= ord(other)``; precision capped at ``cap``."""
        v = other.valuation()
        if v is None:
            raise DivisionByZero("division by a series with no known nonzero term")
        num = self.shift(-v)
        den = other.shift(-v)
        if den.is_exact and len(den.coeffs) == 1:
            return num * den.coeffs[0].inverse()
        return (num * den.inverse(cap)).truncate(cap)

    def compose(self, inner: "Series", cap: int) -> "Series":
        """``self(inner(τ))`` for ``ord(inner) >= 1`` (Horner, precision capped)."""
        iv = inner.valuation()
        if iv is not None and iv < 1 and inner.coeffs:
            raise ValueError("inner series must vanish at 0")
        acc = Series(self.field, [], EXACT)
        for k in range(len(self.coeffs) - 1, -1, -1):
            acc = (acc * inner).truncate(cap) + self.coeffs[k]
        if not self.is_exact:
            # unknown tail: self.prec-th power of inner
            tail = inner._val_or_prec() * self.prec
            acc = acc.truncate(tail)
        return acc

    def __repr__(self):
        body = " + ".join(f"({c})*τ^{k}" for k, c in self.terms()) or "0"
        return body if self.is_exact else f"{body} + O(τ^{self.prec})"


def evaluate_bivariate(poly, s: Series, t: Series, cap: int | None = None) -> Series:
    """Evaluate a :class:`BivariatePolynomial` at the series pair ``(s, t)``."""
    field = poly.field
    acc = Series.zero(field)
    if poly.is_zero():
        return acc
    ds, dt = poly.degree_s(), poly.degree_t()
    s_pows = [Series(field, [field.one])]
    for _ in range(ds):
        nxt = s_pows[-1] * s
        s_pows.append(nxt.truncate(cap) if cap else nxt)
    t_pows = [Series(field, [field.one])]
    for _ in range(dt):
        nxt = t_pows[-1] * t
        t_pows.append(nxt.truncate(cap) if cap else nxt)
    for (i, j), c in poly.terms.items():
        term = (s_pows[i] * t_pows[j]) * c
        acc = acc + term
    return acc
