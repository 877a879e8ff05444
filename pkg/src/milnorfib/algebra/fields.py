"""Simple algebraic number fields Q[x]/(p) with exact rational arithmetic."""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import DivisionByZero, FieldMismatch, UnsupportedDegree
from . import upoly

IRREDUCIBILITY_CHECK_DEGREE = 8


def max_field_degree() -> int:
    """Cap on the degree of any working field (``MILNOR_MAX_DEGREE``, default 16)."""
    raw = os.environ.get("MILNOR_MAX_DEGREE")
    return int(raw) if raw else 16


def _fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class NumberField:
    """The field Q(a) with a a root of a monic irreducible integer polynomial.

    ``minimal_polynomial`` is stored lowest degree first.  The degree-1 field
    with minimal polynomial ``x`` is the rational field itself (generator 0).
    """

    def __init__(self, generator_name: str, minimal_polynomial: Sequence, *, check: bool = True):
        coeffs = upoly.trim([_fraction(c) for c in minimal_polynomial])
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        self.generator_name = generator_name
        self.minimal_polynomial = tuple(coeffs)
        self.degree = len(coeffs) - 1
        if check and self.degree > 1:
            if any(c.denominator != 1 for c in coeffs):
                raise ValueError("minimal polynomial must have integer coefficients")
            if self.degree > IRREDUCIBILITY_CHECK_DEGREE:
                raise UnsupportedDegree(
                    f"irreducibility check limited to degree {IRREDUCIBILITY_CHECK_DEGREE}"
                )
            from .factor import factor_rational

            factors = factor_rational(list(coeffs))
            if len(factors) != 1 or factors[0][1] != 1:
                raise ValueError(f"{self.poly_str()} is not irreducible over Q")
        n = self.degree
        # x^k reduced mod p for k = n .. 2n-2, as coefficient vectors
        self._reduction: list[tuple[Fraction, ...]] = []
        cur = [-c for c in coeffs[:-1]]  # x^n
        for _ in range(max(n - 1, 0)):
            self._reduction.append(tuple(cur))
            shifted = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            cur = [shifted[k] - top * coeffs[k] for k in range(n)]
        self._key = (generator_name, self.minimal_polynomial)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.is_rational:
            return "QQ"
        return f"NumberField({self.generator_name!r}, {self.poly_str()})"

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def poly_str(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.minimal_polynomial[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (self.generator_name if k == 1 else f"{self.generator_name}^{k}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            terms.append(("-" if c < 0 else "+", body))
        out = terms[0][1] if terms[0][0] == "+" else "-" + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is not self and value.field != self:
                raise FieldMismatch(f"{value.field!r} element used in {self!r}")
            return value
        if isinstance(value, (list, tuple)):
            coeffs = [_fraction(c) for c in value]
            if len(coeffs) > self.degree:
                return self.from_poly(coeffs)
            coeffs += [Fraction(0)] * (self.degree - len(coeffs))
            return FieldElement(self, tuple(coeffs))
        v = _fraction(value)
        return FieldElement(self, (v,) + (Fraction(0),) * (self.degree - 1))

    def from_poly(self, coeffs: Iterable) -> "FieldElement":
        """Reduce an arbitrary rational polynomial in the generator."""
        coeffs = [_fraction(c) for c in coeffs]
        return FieldElement(self, self._reduce(coeffs))

    @property
    def zero(self) -> "FieldElement":
        return self(0)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    @property
    def gen(self) -> "FieldElement":
        if self.is_rational:
            return self(-self.minimal_polynomial[0])
        return self([0, 1])

    def _reduce(self, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
        n = self.degree
        if n == 1:
            # generator is the rational root r of x - r
            r = -self.minimal_polynomial[0]
            acc = Fraction(0)
            for c in reversed(coeffs):
                acc = acc * r + c
            return (acc,)
        if len(coeffs) > 2 * n - 1:
            rem = upoly.rem(coeffs, list(self.minimal_polynomial))
            rem = list(rem) + [Fraction(0)] * (n - len(rem))
            return tuple(rem)
        out = list(coeffs[:n]) + [Fraction(0)] * (n - min(len(coeffs), n))
        for k in range(n, len(coeffs)):
            c = coeffs[k]
            if c:
                red = self._reduction[k - n]
                for j in range(n):
                    out[j] += c * red[j]
        return tuple(out)


class FieldElement:
    """Immutable element of a :class:`NumberField` in the power basis."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: NumberField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    def _coerce(self, other) -> "FieldElement | None":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"cannot combine elements of {self.field!r} and {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.field.degree == 1:
            return FieldElement(self.field, (self.coeffs[0] * o.coeffs[0],))
        a, b = self.coeffs, o.coeffs
        prod = [Fraction(0)] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return FieldElement(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a number field")
        if self.field.degree == 1:
            return FieldElement(self.field, (1 / self.coeffs[0],))
        g, u, _ = upoly.xgcd(list(self.coeffs), list(self.field.minimal_polynomial), Fraction(1))
        if len(g) != 1:
            raise DivisionByZero("element is not invertible (minimal polynomial reducible?)")
        return self.field.from_poly(u)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.coeffs == other.coeffs and (self.field is other.field or self.field == other.field)
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not any(self.coeffs[1:]):
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash(self.coeffs)
        return self._hash

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        name = self.field.generator_name
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = name if k == 1 else f"{name}^{k}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return f"({out})" if len(parts) > 1 else out


QQ = NumberField("", [0, 1], check=False)


class Embedding:
    """Field homomorphism ``source -> target`` fixed by the image of the generator."""

    def __init__(self, source: NumberField, target: NumberField, gen_image: FieldElement):
        if gen_image.field != target:
            raise FieldMismatch("generator image must lie in the target field")
        self.source = source
        self.target = target
        self.gen_image = gen_image
        self._powers = None

    @classmethod
    def identity(cls, field: NumberField) -> "Embedding":
        return cls(field, field, field.gen)

    def __call__(self, x) -> FieldElement:
        if not isinstance(x, FieldElement):
            return self.target(x)
        if x.field != self.source:
            raise FieldMismatch(f"embedding from {self.source!r} applied to element of {x.field!r}")
        if self.source == self.target:
            return x
        if self.source.degree == 1:
            return self.target(x.coeffs[0])
        if self._powers is None:
            pw = [self.target.one]
            for _ in range(1, self.source.degree):
                pw.append(pw[-1] * self.gen_image)
            self._powers = pw
        acc = self.target.zero
        for c, p in zip(x.coeffs, self._powers):
            if c:
                acc = acc + p * c
        return acc

    def then(self, other: "Embedding") -> "Embedding":
        """Composition ``other o self``."""
        if other.source != self.target:
            raise FieldMismatch("embeddings do not compose")
        return Embedding(self.source, other.target, other(self.gen_image))


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()
