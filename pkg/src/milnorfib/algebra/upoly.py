"""Dense univariate polynomials over an exact field.

A polynomial is a list of coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  Coefficients may be
:class:`fractions.Fraction` or :class:`~milnorfib.algebra.fields.FieldElement`;
only ``+ - * /`` and comparison with ``0`` are used.
"""

from __future__ import annotations

from typing import Any, Sequence

Poly = list


def trim(p: Sequence[Any]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence[Any]) -> int:
    """Degree of ``p``; ``-1`` for the zero polynomial."""
    return len(p) - 1


def add(p: Sequence[Any], q: Sequence[Any]) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for k, c in enumerate(q):
        out[k] = out[k] + c
    return trim(out)


def neg(p: Sequence[Any]) -> Poly:
    return [-c for c in p]


def sub(p: Sequence[Any], q: Sequence[Any]) -> Poly:
    return add(p, neg(q))


def scale(p: Sequence[Any], c: Any) -> Poly:
    if c == 0:
        return []
    return trim([a * c for a in p])


def mul(p: Sequence[Any], q: Sequence[Any]) -> Poly:
    if not p or not q:
        return []
    out = [None] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            t = a * b
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    zero = p[0] - p[0]
    return trim([zero if c is None else c for c in out])


def divmod_(p: Sequence[Any], q: Sequence[Any]) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    inv_lead = 1 / q[-1] if not hasattr(q[-1], "inverse") else q[-1].inverse()
    if len(r) <= dq:
        return [], trim(r)
    quot = [None] * (len(r) - dq)
    for k in range(len(r) - 1, dq - 1, -1):
        c = r[k] * inv_lead
        quot[k - dq] = c
        if c != 0:
            for j in range(dq + 1):
                r[k - dq + j] = r[k - dq + j] - c * q[j]
    zero = q[0] - q[0]
    quot = [zero if c is None else c for c in quot]
    return trim(quot), trim(r[:dq])


def rem(p: Sequence[Any], q: Sequence[Any]) -> Poly:
    return divmod_(p, q)[1]


def exact_div(p: Sequence[Any], q: Sequence[Any]) -> Poly:
    quot, r = divmod_(p, q)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return quot


def monic(p: Sequence[Any]) -> Poly:
    if not p:
        return []
    lead = p[-1]
    inv = lead.inverse() if hasattr(lead, "inverse") else 1 / lead
    return [c * inv for c in p]


def gcd(p: Sequence[Any], q: Sequence[Any]) -> Poly:
    """Monic greatest common divisor (``[]`` if both are zero)."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def xgcd(p: Sequence[Any], q: Sequence[Any], one: Any) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, u, v)`` with ``u*p + v*q = g`` and ``g`` monic."""
    r0, r1 = trim(p), trim(q)
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        quot, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(quot, s1))
        t0, t1 = t1, sub(t0, mul(quot, t1))
    if not r0:
        return [], s0, t0
    lead = r0[-1]
    inv = lead.inverse() if hasattr(lead, "inverse") else 1 / lead
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def deriv(p: Sequence[Any]) -> Poly:
    return trim([p[k] * k for k in range(1, len(p))])


def evaluate(p: Sequence[Any], x: Any) -> Any:
    acc = None
    for c in reversed(p):
        acc = c if acc is None else acc * x + c
    return acc if acc is not None else 0 * x


def compose_linear(p: Sequence[Any], shift: Any, one: Any) -> Poly:
    """Return ``p(W + shift)``."""
    acc: Poly = []
    for c in reversed(p):
        acc = add(mul(acc, [shift, one]), [c])
    return acc


def squarefree_decomposition(p: Sequence[Any]) -> list[tuple[Poly, int]]:
    """Yun's algorithm (characteristic zero).

    Returns ``[(f_k, k)]`` with ``p = lc * prod f_k**k`` and each ``f_k`` monic,
    square-free, pairwise coprime and non-constant.
    """
    p = monic(trim(p))
    if len(p) <= 1:
        return []
    out = []
    dp = deriv(p)
    a = gcd(p, dp)
    b = exact_div(p, a)
    c = exact_div(dp, a)
    d = sub(c, deriv(b))
    k = 1
    while len(b) > 1:
        a = gcd(b, d)
        if len(a) > 1:
            out.append((a, k))
        b = exact_div(b, a)
        c = exact_div(d, a)
        d = sub(c, deriv(b))
        k += 1
    return out


def is_squarefree(p: Sequence[Any]) -> bool:
    return len(gcd(p, deriv(p))) <= 1
