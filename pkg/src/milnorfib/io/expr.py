"""Exact expression strings: ``"s*t^2 + i*s^3"``, ``"3/2*t^4"``, ``"(s - t)^2"``.

Parsing reuses Python's own expression grammar (``^`` is read as a power)
and walks the tree allowing only ``+ - * / ^``, integer literals and the
declared names.  Floating-point literals are rejected.
"""

from __future__ import annotations

import ast
from typing import Any, Callable, Mapping

from ..errors import SchemaError

_BINOPS: dict[type, Callable[[Any, Any], Any]] = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
}


def parse_expression(text: str, names: Mapping[str, Any], field) -> Any:
    """Evaluate ``text`` with the objects in ``names`` (e.g. polynomials or series).

    ``field`` supplies exact constants; division is allowed by nonzero
    constants only.  Returns either an object from the ``names`` algebra or a
    field element for constant expressions.
    """
    if not isinstance(text, str):
        raise SchemaError(f"expression must be a string, got {text!r}")
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise SchemaError(f"cannot parse expression {text!r}: {exc.msg}") from None

    def const_value(node) -> Any | None:
        """The field value of a constant subexpression, else ``None``."""
        val = walk(node)
        return val if _is_field_element(val, field) else None

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise SchemaError(f"only integer literals are allowed, got {node.value!r} in {text!r}")
            return field(node.value)
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise SchemaError(f"unknown symbol {node.id!r} in {text!r}")
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = walk(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                base = walk(node.left)
                exp = node.right
                if isinstance(exp, ast.UnaryOp) or not (isinstance(exp, ast.Constant) and type(exp.value) is int):
                    raise SchemaError(f"exponents must be non-negative integer literals in {text!r}")
                return base ** exp.value
            if isinstance(node.op, ast.Div):
                num = walk(node.left)
                den = const_value(node.right)
                if den is None:
                    raise SchemaError(f"division only by constants is allowed in {text!r}")
                if den.is_zero():
                    raise SchemaError(f"division by zero in {text!r}")
                return num * den.inverse()
            op = _BINOPS.get(type(node.op))
            if op is None:
                raise SchemaError(f"operator {type(node.op).__name__} not allowed in {text!r}")
            left, right = walk(node.left), walk(node.right)
            # constants on the left: let the polynomial/series operand drive the operation
            if _is_field_element(left, field) and not _is_field_element(right, field):
                left, right = right, left
                if isinstance(node.op, ast.Sub):
                    return -(left - right)
            return op(left, right)
        raise SchemaError(f"unsupported syntax {type(node).__name__} in {text!r}")

    return walk(tree)


def _is_field_element(val, field) -> bool:
    from ..algebra.fields import FieldElement

    return isinstance(val, FieldElement)


def parse_bivariate(text: str, field, generator: str | None = None):
    """A :class:`BivariatePolynomial` in ``s, t`` over ``field``."""
    from ..algebra.bipoly import BivariatePolynomial

    names: dict[str, Any] = {"s": BivariatePolynomial.s(field), "t": BivariatePolynomial.t(field)}
    if generator:
        names[generator] = field.gen
    val = parse_expression(text, names, field)
    if not isinstance(val, BivariatePolynomial):
        val = BivariatePolynomial.constant(field, val)
    return val


def parse_univariate(text: str, variable: str) -> list:
    """Integer/rational coefficients (lowest degree first) of a polynomial in one variable."""
    from ..algebra.fields import QQ
    from ..algebra.series import Series

    tau = Series.monomial(QQ, QQ.one, 1)
    val = parse_expression(text, {variable: tau}, QQ)
    if not isinstance(val, Series):
        val = Series(QQ, [val])
    return [c.to_fraction() for c in val.coeffs]


def parse_series(text: str, field, generator: str | None = None, parameter: str = "t"):
    """An exact series (polynomial) in the branch parameter."""
    from ..algebra.series import Series

    names: dict[str, Any] = {parameter: Series.monomial(field, field.one, 1)}
    if generator:
        names[generator] = field.gen
    val = parse_expression(text, names, field)
    if not isinstance(val, Series):
        val = Series(field, [val])
    return val


def parse_branch_literal(spec: Mapping[str, str], field, generator: str | None = None):
    """Branch from ``{ s = "...", t = "..." }`` with parameter ``t``."""
    from ..branches import Branch

    try:
        s_text, t_text = spec["s"], spec["t"]
    except (KeyError, TypeError):
        raise SchemaError("a branch literal needs both 's' and 't' entries") from None
    s = parse_series(s_text, field, generator)
    t = parse_series(t_text, field, generator)
    return Branch.from_parametrization(field, s, t)
