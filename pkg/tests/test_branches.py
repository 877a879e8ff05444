from fractions import Fraction

import pytest

from milnorfib.algebra.bipoly import BivariatePolynomial
from milnorfib.algebra.fields import QQ, NumberField
from milnorfib.algebra.series import Series, evaluate_bivariate
from milnorfib.branches import (
    Branch,
    apply_involution,
    branch_multiplicity,
    branches_equal,
    characteristic_exponents,
    intersection_multiplicity,
)
from milnorfib.errors import NotSquareFree, NotVanishingAtOrigin
from milnorfib.io.expr import parse_bivariate
from milnorfib.newton_puiseux import expand

QI = NumberField("i", [1, 0, 1])
I = QI.gen


def tau(field, n=1, c=1):
    return Series.monomial(field, c, n)


def branch(field, s, t):
    return Branch.from_parametrization(field, s, t)


def zero(field):
    return Series.zero(field)


def test_multiplicity_examples():
    assert branch_multiplicity(branch(QI, tau(QI), tau(QI, 1, I))) == 1
    assert branch_multiplicity(branch(QQ, tau(QQ, 4, -1), tau(QQ, 3))) == 3
    assert branch_multiplicity(branch(QQ, zero(QQ), tau(QQ))) == 1


def test_intersection_with_polynomials():
    s, t = BivariatePolynomial.s(QI), BivariatePolynomial.t(QI)
    assert intersection_multiplicity(branch(QI, tau(QI), tau(QI, 1, I)), t + I * s) == 1
    for n in (1, 2, 5):
        b = branch(QI, tau(QI), tau(QI, n, I))
        assert intersection_multiplicity(b, t + I * s**n) == n
    assert intersection_multiplicity(branch(QQ, zero(QQ), tau(QQ)), BivariatePolynomial.t(QQ)) == 1
    for k in (1, 2, 3):
        assert intersection_multiplicity(branch(QI, tau(QI, k, I), tau(QI)), t) == 1


def test_intersection_between_branches_is_symmetric():
    for n in (1, 2, 3):
        a = branch(QI, tau(QI), tau(QI, n, I))
        b = branch(QI, tau(QI), tau(QI, n, -I))
        assert intersection_multiplicity(a, b) == intersection_multiplicity(b, a) == n
    axis = branch(QQ, zero(QQ), tau(QQ))
    cusp = branch(QQ, tau(QQ, 2), tau(QQ, 3))
    assert intersection_multiplicity(axis, cusp) == intersection_multiplicity(cusp, axis) == 2


def test_involution_and_equality():
    smooth = branch(QI, tau(QI), tau(QI, 1, I))
    flipped = apply_involution(smooth)
    assert flipped.t().coefficient(1) == -I
    assert not branches_equal(smooth, flipped)
    assert branches_equal(smooth, branch(QI, tau(QI), tau(QI, 1, I)))

    axis = branch(QQ, zero(QQ), tau(QQ))
    assert branches_equal(apply_involution(axis), axis)
    assert branches_equal(axis, branch(QQ, zero(QQ), tau(QQ, 1, -1)))

    for k, self_paired in ((2, True), (3, False), (4, True)):
        b = branch(QI, tau(QI, k, I), tau(QI))
        assert branches_equal(apply_involution(b), b) is self_paired


def test_characteristic_exponents():
    assert characteristic_exponents(branch(QI, tau(QI), tau(QI, 3, I))) == []
    assert characteristic_exponents(branch(QQ, tau(QQ, 3), tau(QQ, 4, -1))) == [Fraction(4, 3)]
    assert characteristic_exponents(branch(QQ, zero(QQ), tau(QQ))) == []
    two_pair = branch(QQ, tau(QQ, 4), tau(QQ, 6) + tau(QQ, 7))
    assert characteristic_exponents(two_pair) == [Fraction(3, 2), Fraction(7, 4)]


# -- Newton–Puiseux -----------------------------------------------------------------------


def _check_roots(d, bs, order=12):
    """Every branch is a root of d to the certified precision."""
    for b in bs:
        b.ensure(order)
        dd = d.map_field(bs.embedding) if bs.embedding is not None else d
        val = evaluate_bivariate(dd, b.s(), b.t())
        assert val.is_zero() or val.valuation() is None or val.valuation() >= order


def test_expand_s1():
    d = parse_bivariate("t^2 + s^2", QQ)
    bs = expand(d)
    assert len(bs) == 2
    assert bs.field.degree == 2
    assert sorted(branch_multiplicity(b) for b in bs) == [1, 1]
    _check_roots(d, bs)


def test_expand_axis():
    bs = expand(parse_bivariate("s", QQ))
    assert len(bs) == 1
    b = bs[0]
    assert b.s().is_zero() and b.t().valuation() == 1


def test_expand_f4_needs_cube_roots():
    d = parse_bivariate("s^3 + t^4", QQ)
    bs = expand(d)
    assert len(bs) == 1
    b = bs[0]
    assert branch_multiplicity(b) == 3
    assert b.t().valuation() == 3 and b.s().valuation() == 4
    _check_roots(d, bs)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_expand_c_odd(n):
    d = parse_bivariate(f"s*(t^2 + s^{2 * n})", QQ)
    bs = expand(d)
    assert len(bs) == 3
    axes = [b for b in bs if b.s().is_zero()]
    assert len(axes) == 1
    others = [b for b in bs if not b.s().is_zero()]
    assert intersection_multiplicity(others[0], others[1]) == n
    _check_roots(d, bs)


def test_expand_total_multiplicity_matches_order():
    for text in ["s^5 + t^2*s + t^6", "s^2 - t^6 + t^8", "(s - t^2)*(s + t^2)*(s^2 + t^2)", "s^3 - t^4*s + t^8"]:
        d = parse_bivariate(text, QQ)
        bs = expand(d)
        assert sum(branch_multiplicity(b) for b in bs) == d.order(), text
        _check_roots(d, bs)


def test_expand_rejects_bad_input():
    with pytest.raises(NotVanishingAtOrigin):
        expand(parse_bivariate("1 + s", QQ))
    with pytest.raises(NotSquareFree):
        expand(parse_bivariate("(s - t)^2", QQ))


def test_intersections_match_noether_formula_on_two_pair_curve():
    # two branches with characteristic exponents (3/2, 7/4) that separate at x^(7/4)
    a = branch(QQ, tau(QQ, 4), tau(QQ, 6) + tau(QQ, 7))
    b = branch(QQ, tau(QQ, 4), tau(QQ, 6) + tau(QQ, 7, 2))
    # conjugates of a: ord_tau differences 7, 6, 7, 6
    assert intersection_multiplicity(a, b) == intersection_multiplicity(b, a)
    assert intersection_multiplicity(a, b) == 26


def test_reparametrized_copy_is_identical():
    a = branch(QQ, tau(QQ, 4), tau(QQ, 6) + tau(QQ, 7))
    b = branch(QQ, tau(QQ, 4), tau(QQ, 6) - tau(QQ, 7))  # τ ↦ −τ
    assert branches_equal(a, b)
