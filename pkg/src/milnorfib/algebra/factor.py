"""Factorization over number fields (via norms of shifted polynomials) and root adjunction.

Factorization over Q itself is delegated to sympy; everything on top of it
(norms, the shift search, gcds over K, primitive elements) is done here.
"""

from __future__ import annotations

import string
from fractions import Fraction

import sympy

from ..errors import UnsupportedDegree
from . import upoly
from .fields import Embedding, FieldElement, NumberField, max_field_degree

_X = sympy.Symbol("x")
_RESERVED_NAMES = set("stxyz")


def factor_rational(coeffs: list[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Monic irreducible factors of a rational polynomial, with multiplicities."""
    coeffs = upoly.trim(coeffs)
    if len(coeffs) <= 1:
        return []
    sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], _X, domain="QQ")
    _, factors = sp.factor_list()
    out = []
    for f, m in factors:
        fc = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        out.append((upoly.monic(fc), m))
    out.sort(key=lambda fm: (len(fm[0]), [(c.numerator, c.denominator) for c in fm[0]]))
    return out


def _poly_det(matrix: list[list[list[Fraction]]]) -> list[Fraction]:
    """Determinant of a square matrix over Q[W] (Bareiss fraction-free elimination)."""
    m = [[list(e) for e in row] for row in matrix]
    n = len(m)
    sign = 1
    prev: list[Fraction] = [Fraction(1)]
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return []
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = upoly.sub(upoly.mul(m[i][j], m[k][k]), upoly.mul(m[i][k], m[k][j]))
                m[i][j] = upoly.exact_div(num, prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return upoly.scale(det, Fraction(sign)) if det else []


def norm(h: list[FieldElement], field: NumberField) -> list[Fraction]:
    """Norm N_{K/Q} of ``h`` in K[W], a polynomial in Q[W]."""
    if field.degree == 1:
        return upoly.trim([c.coeffs[0] for c in h])
    n = field.degree
    gen = field.gen
    # column j: coordinates of gen^j * h
    columns = []
    g_pow = field.one
    for _ in range(n):
        shifted = [c * g_pow for c in h]
        columns.append([[c.coeffs[i] for c in shifted] for i in range(n)])
        g_pow = g_pow * gen
    matrix = [[upoly.trim(columns[j][i]) for j in range(n)] for i in range(n)]
    return _poly_det(matrix)


def _shifts():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def _shifted_squarefree_norm(h: list[FieldElement], field: NumberField):
    gen = field.gen
    for k in _shifts():
        hk = upoly.compose_linear(h, gen * (-k), field.one) if k else list(h)
        nk = norm(hk, field)
        if upoly.is_squarefree(nk):
            return k, hk, nk
        if field.degree == 1:
            raise ValueError("polynomial is not square-free")
        if abs(k) > 50:
            raise RuntimeError("no square-free norm shift found")


def factor_over(h: list[FieldElement], field: NumberField) -> list[list[FieldElement]]:
    """Monic irreducible factors over ``field`` of a square-free polynomial."""
    h = upoly.monic(upoly.trim(h))
    if len(h) <= 1:
        return []
    if len(h) == 2:
        return [h]
    k, hk, nk = _shifted_squarefree_norm(h, field)
    gen = field.gen
    out = []
    for g, _ in factor_rational(nk):
        g_k = [field(c) for c in g]
        f = upoly.gcd(hk, g_k)
        if len(f) > 1:
            out.append(upoly.compose_linear(f, gen * k, field.one) if k else f)
    out.sort(key=len)
    return out


def _fresh_name(field: NumberField) -> str:
    for ch in string.ascii_lowercase:
        if ch not in _RESERVED_NAMES and ch != field.generator_name:
            return ch
    raise RuntimeError("out of generator names")


def adjoin_root(field: NumberField, poly: list[FieldElement]) -> tuple[NumberField, Embedding, FieldElement]:
    """Adjoin a root of an irreducible ``poly`` to ``field``.

    The result is flattened to a simple extension Q(c) by a primitive element.
    Returns ``(L, embedding field->L, root in L)``.
    """
    poly = upoly.monic(upoly.trim(poly))
    new_degree = field.degree * (len(poly) - 1)
    if new_degree > max_field_degree():
        raise UnsupportedDegree(
            f"adjoining a degree-{len(poly) - 1} root to a degree-{field.degree} field exceeds "
            f"the cap {max_field_degree()}"
        )
    k, hk, nk = _shifted_squarefree_norm(poly, field)
    new_field = NumberField(_fresh_name(field), upoly.monic(nk), check=False)
    gamma = new_field.gen
    if field.degree == 1:
        theta = new_field(field.gen.coeffs[0])
    else:
        # theta is the unique common root of minpoly(X) and hk(gamma)|_{gen -> X}
        n = field.degree
        gamma_pows = [new_field.one]
        for _ in range(1, len(hk)):
            gamma_pows.append(gamma_pows[-1] * gamma)
        q = [new_field.zero] * n
        for m, c in enumerate(hk):
            for i in range(n):
                if c.coeffs[i]:
                    q[i] = q[i] + gamma_pows[m] * c.coeffs[i]
        p = [new_field(c) for c in field.minimal_polynomial]
        g = upoly.gcd(p, upoly.trim(q))
        if len(g) != 2:
            raise RuntimeError("primitive element computation failed")
        theta = -g[0]
    emb = Embedding(field, new_field, theta)
    root = gamma - theta * k
    return new_field, emb, root


def split_polynomial(
    poly: list[FieldElement], field: NumberField
) -> tuple[NumberField, Embedding, list[tuple[FieldElement, int]]]:
    """Extend ``field`` until ``poly`` splits into linear factors.

    Returns the splitting field ``L`` (a simple extension), the embedding
    ``field -> L`` and the distinct roots in ``L`` with their multiplicities.
    """
    emb = Embedding.identity(field)
    current = field
    cur = list(poly)
    while True:
        roots: list[tuple[FieldElement, int]] = []
        pending = None
        for f, mult in upoly.squarefree_decomposition(cur):
            for factor in factor_over(f, current):
                if len(factor) == 2:
                    roots.append((-factor[0], mult))
                elif pending is None:
                    pending = factor
        if pending is None:
            return current, emb, roots
        current, step, _ = adjoin_root(current, pending)
        emb = emb.then(step)
        cur = [step(c) for c in cur]
