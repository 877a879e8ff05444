import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from milnorfib.algebra.bipoly import BivariatePolynomial, squarefree_check
from milnorfib.algebra.factor import adjoin_root, factor_over, factor_rational, split_polynomial
from milnorfib.algebra.fields import QQ, NumberField, field_add, field_inv, field_mul
from milnorfib.algebra.intlinalg import (
    AbelianGroup,
    determinant,
    is_negative_definite,
    matmul,
    smith_normal_form,
    solve_integer_linear,
)
from milnorfib.algebra.series import Series, evaluate_bivariate
from milnorfib.errors import NonIntegralSolution, SingularMatrix, UnsupportedDegree

QI = NumberField("i", [1, 0, 1])
QZETA = NumberField("z", [1, 1, 1])


# -- number fields -------------------------------------------------------------


def test_field_examples():
    i = QI.gen
    assert field_mul(i, i) == -1
    assert field_add(QQ(Fraction(2, 3)), QQ(Fraction(1, 6))) == QQ(Fraction(5, 6))
    z = QZETA.gen
    assert field_mul(z, z**2) == 1
    assert field_mul(field_inv(1 + i), 1 + i) == 1


def test_reducible_minpoly_rejected():
    with pytest.raises(ValueError):
        NumberField("a", [-1, 0, 1])


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        field_inv(QI.zero)


_elements = st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=20), min_size=3, max_size=3)


@settings(max_examples=60, deadline=None)
@given(_elements, _elements, _elements)
def test_field_ring_axioms(a, b, c):
    field = NumberField("w", [-2, 0, 0, 1])  # Q(2^(1/3))
    x, y, z = field.from_poly(a), field.from_poly(b), field.from_poly(c)
    assert x + y == y + x and x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if not x.is_zero():
        assert x * x.inverse() == 1


def test_factor_rational_and_over_extension():
    factors = factor_rational([Fraction(-2), 0, 0, 1])
    assert factors == [([Fraction(-2), 0, 0, 1], 1)]
    # x^2 + 1 splits over Q(i)
    parts = factor_over([QI.one, QI.zero, QI.one], QI)
    assert len(parts) == 2 and all(len(p) == 2 for p in parts)


def test_adjoin_cube_root_splitting_field():
    field, emb, roots = split_polynomial([QQ(-2), QQ(0), QQ(0), QQ(1)], QQ)
    assert field.degree == 6
    assert len(roots) == 3
    for r, mult in roots:
        assert mult == 1 and r**3 == 2


def test_adjoin_sqrt2_over_gaussian():
    field, emb, root = adjoin_root(QI, [QI(-2), QI(0), QI(1)])
    assert field.degree == 4
    assert root * root == 2
    assert emb(QI.gen) ** 2 == -1


def test_degree_cap(monkeypatch):
    monkeypatch.setenv("MILNOR_MAX_DEGREE", "2")
    with pytest.raises(UnsupportedDegree):
        split_polynomial([QQ(-2), QQ(0), QQ(0), QQ(1)], QQ)


# -- integer linear algebra ----------------------------------------------------------


def _diag(s):
    return [s[k][k] for k in range(min(len(s), len(s[0]) if s else 0))]


def test_smith_examples():
    s, _, _ = smith_normal_form([[2, 0], [0, 3]])
    assert _diag(s) == [1, 6]
    s, _, _ = smith_normal_form([[0]])
    assert s == [[0]]
    s, _, _ = smith_normal_form([[-1, 0], [0, -6]])
    assert _diag(s) == [1, 6]


def test_smith_random_invariants():
    rng = random.Random(11)
    for _ in range(1000):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        a = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        s, u, v = smith_normal_form(a)
        assert matmul(matmul(u, a), v) == s
        assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
        d = _diag(s)
        assert all(x >= 0 for x in d)
        assert all(s[i][j] == 0 for i in range(rows) for j in range(cols) if i != j)
        nonzero = [x for x in d if x]
        assert d[: len(nonzero)] == nonzero
        assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


def test_solve_integer_linear():
    assert solve_integer_linear([[-1]], [-1]) == [1]
    assert solve_integer_linear([[1, 0], [0, 1]], [4, -3]) == [4, -3]
    assert solve_integer_linear([[-2, 1], [1, -1]], [0, -1]) == [1, 2]
    with pytest.raises(NonIntegralSolution):
        solve_integer_linear([[2]], [1])
    with pytest.raises(SingularMatrix):
        solve_integer_linear([[1, 1], [1, 1]], [0, 0])


def test_abelian_group_from_cokernel():
    assert AbelianGroup.cokernel([[-1, 0], [0, -6]], extra_free=1) == AbelianGroup(1, (6,))
    assert str(AbelianGroup(1, (6,))) == "Z + Z/6"
    assert str(AbelianGroup.cokernel([[-4]])) == "Z/4"
    assert str(AbelianGroup.cokernel([[0]])) == "Z"
    assert str(AbelianGroup(0, ())) == "0"
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 6))


def test_negative_definite():
    assert is_negative_definite([[-2, 1], [1, -1]])
    assert not is_negative_definite([[-1, 1], [1, -1]])


# -- series and bivariate polynomials ----------------------------------------------------


def test_series_precision_tracking():
    a = Series(QQ, [1, 1], prec=5)  # 1 + τ + O(τ^5)
    b = Series.monomial(QQ, 1, 2)
    assert (a * b).prec == 7
    inv = a.inverse(cap=5)
    assert (inv * a).agrees_with(Series(QQ, [1]), upto=5)
    assert Series(QQ, [0, 0, 3]).valuation() == 2


def test_evaluate_bivariate():
    s, t = BivariatePolynomial.s(QQ), BivariatePolynomial.t(QQ)
    d = s**3 + t**4
    tau = Series.monomial(QQ, 1, 1)
    val = evaluate_bivariate(d, tau**4 * -1, tau**3)
    assert val.is_zero()


@pytest.mark.parametrize(
    "expr, expected",
    [
        (lambda s, t: t**2 + s**2, True),
        (lambda s, t: (t - s) ** 2, False),
        (lambda s, t: s * (t**2 + s**4), True),
        (lambda s, t: s**2 * (t**2 + s), False),
        (lambda s, t: (s + t**2) * (s - t**2), True),
        (lambda s, t: (s + t**2) * (s + t**2 + s**2) ** 2, False),
    ],
)
def test_squarefree_check(expr, expected):
    s, t = BivariatePolynomial.s(QQ), BivariatePolynomial.t(QQ)
    assert squarefree_check(expr(s, t)) is expected


def test_bivariate_format():
    s, t = BivariatePolynomial.s(QQ), BivariatePolynomial.t(QQ)
    assert str(s * t**2 - 2 * s**3) == "-2*s^3 + s*t^2"
    assert (s * t**2).format(("x", "y")) == "x*y^2"
