from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from sqorbits.curves import (
    AT_INFINITY,
    INFINITY,
    ECPoint,
    LongWeierstrass,
    QuarticModel,
    QuarticPoint,
    ec_add,
    ec_mul,
    mazur_infinite_order,
    pullback_parameter,
    quartic_to_weierstrass,
    torsion_order,
)
from sqorbits.errors import ExceptionalPointError, NotOnCurveError, SingularCurveError
from sqorbits.families import family_quartic

E80 = LongWeierstrass(0, 0, 0, 80, 0)
P19 = ECPoint(1, 9)
T00 = ECPoint(0, 0)


def H(beta):
    beta = F(beta)
    return QuarticModel(beta * beta, -2 * beta, 0, -2 * beta, -beta * beta, QuarticPoint(None, beta))


def test_add_examples():
    assert ec_add(E80, P19, INFINITY) == P19
    assert ec_add(E80, P19, ECPoint(1, -9)) == INFINITY
    D = ec_add(E80, P19, P19)
    assert D == ECPoint(F(6241, 324), F(-543599, 5832)) and E80.contains(D)


def test_mul_examples():
    assert ec_mul(E80, 1, P19) == P19
    assert ec_mul(E80, 2, T00) == INFINITY
    assert ec_mul(E80, 2, P19) == ec_add(E80, P19, P19)
    assert ec_mul(E80, 0, P19) == INFINITY
    assert ec_mul(E80, -3, P19) == E80.negate(ec_mul(E80, 3, P19))


def test_off_curve_and_singular():
    with pytest.raises(NotOnCurveError):
        ec_add(E80, ECPoint(1, 1), P19)
    with pytest.raises(SingularCurveError):
        LongWeierstrass(0, 0, 0, 0, 0)


def test_mazur_examples():
    assert mazur_infinite_order(E80, P19)
    assert not mazur_infinite_order(E80, T00)
    assert torsion_order(E80, T00) == 2
    with pytest.raises(ValueError):
        mazur_infinite_order(E80, INFINITY)


def _points():
    pts = [INFINITY, T00]
    for k in range(-3, 4):
        pts.append(ec_mul(E80, k, P19))
        pts.append(ec_add(E80, ec_mul(E80, k, P19), T00))
    return pts


POINTS = _points()
pt_index = st.integers(0, len(POINTS) - 1)


@given(pt_index, pt_index, pt_index)
def test_group_axioms(i, j, k):
    P, Q, R = POINTS[i], POINTS[j], POINTS[k]
    assert ec_add(E80, P, Q) == ec_add(E80, Q, P)
    assert ec_add(E80, ec_add(E80, P, Q), R) == ec_add(E80, P, ec_add(E80, Q, R))
    assert ec_add(E80, P, INFINITY) == P
    assert ec_add(E80, P, E80.negate(P)) == INFINITY


def test_group_axioms_long_form():
    # y^2 + y = x^3 - x^2 (conductor 11): (0, 0) has order 5
    E = LongWeierstrass(0, -1, 1, 0, 0)
    assert torsion_order(E, ECPoint(0, 0)) == 5
    # all five coefficients nonzero, through (1, 2) and (-1, 1)
    E = LongWeierstrass(3, -2, 5, F(15, 2), F(27, 2))
    P, Q = ECPoint(1, 2), ECPoint(-1, 1)
    R = ec_add(E, P, Q)
    assert ec_add(E, ec_add(E, P, Q), R) == ec_add(E, P, ec_add(E, Q, R))
    assert ec_add(E, ec_mul(E, 2, P), Q) == ec_add(E, P, ec_add(E, P, Q))
    assert ec_add(E, R, E.negate(R)) == INFINITY


@given(st.integers(-8, 8), st.integers(-8, 8))
def test_mul_is_additive(m, n):
    assert ec_mul(E80, m + n, P19) == ec_add(E80, ec_mul(E80, m, P19), ec_mul(E80, n, P19))


def test_j_of_h2():
    E, _ = quartic_to_weierstrass(H(2))
    assert E.j_invariant == 1728


@pytest.mark.parametrize("beta", [1, -1, 2, -2, 3, -3, F(1, 2), F(3, 2), F(5, 2), F(-1, 2), F(1, 3), F(2, 3),
                                  4, -4, 5, F(7, 2), F(3, 4), F(-5, 3), 6, F(7, 5)])
def test_j_matches_reference_model(beta):
    E, corr = quartic_to_weierstrass(H(beta))
    beta = F(beta)
    ref = LongWeierstrass(0, 0, 0, 4 * beta ** 4 + 4 * beta ** 2, 0)
    assert E.j_invariant == ref.j_invariant
    base = corr.forward(corr.base)
    assert mazur_infinite_order(E, base)
    assert mazur_infinite_order(E, ec_mul(E, 2, base))


def test_round_trip_h2():
    E, corr = quartic_to_weierstrass(H(2))
    base = corr.forward(corr.base)
    seen = 0
    for k in range(-7, 8):
        P = ec_mul(E, k, base)
        pt = corr.backward(P)
        assert corr.model.contains(pt)
        assert corr.forward(pt) == P
        seen += 1
    assert seen == 15


@given(st.fractions(min_value=-40, max_value=40, max_denominator=40))
def test_round_trip_on_random_u(u):
    # points of v^2 = u^4 + 2u^3 + u^2 + u that happen to be rational
    model = QuarticModel(1, 2, 1, 1, 0, QuarticPoint(0, 0))
    _, corr = quartic_to_weierstrass(model)
    for k in range(-3, 4):
        P = ec_mul(corr.curve, k, corr.forward(corr.base))
        assert corr.forward(corr.backward(P)) == P


def test_pullback_2p_examples():
    E, corr = quartic_to_weierstrass(H(2))
    assert pullback_parameter(corr, ec_mul(E, 2, corr.forward(corr.base))) == F(-65, 72)
    assert pullback_parameter(corr, corr.forward(corr.base)) is AT_INFINITY
    with pytest.raises(ExceptionalPointError):
        pullback_parameter(corr, corr.forward(corr.base), allow_infinity=False)
    E, corr = quartic_to_weierstrass(family_quartic("xaxb", 1))
    assert pullback_parameter(corr, ec_mul(E, 2, corr.forward(corr.base))) == F(-3, 4)


def test_origin_maps_to_identity():
    _, corr = quartic_to_weierstrass(H(3))
    assert corr.forward(corr.origin) == INFINITY
    assert corr.backward(INFINITY) == corr.origin
    for P, pt in corr.exceptional_points:
        assert corr.model.contains(pt)


def test_x0_zero_quartic_image_has_order_three():
    model = QuarticModel(1, 2, 1, 1, 0, QuarticPoint(0, 0))
    assert model.is_nonsingular()
    E, corr = quartic_to_weierstrass(model)
    P = corr.forward(QuarticPoint(0, 0))
    assert not mazur_infinite_order(E, P)
    assert torsion_order(E, P) == 3


def test_translate_route_alpha2():
    E, corr = quartic_to_weierstrass(family_quartic("xax_minus_a", 2))
    assert corr.route == "translate"
    assert pullback_parameter(corr, ec_mul(E, 2, corr.forward(corr.base))) == 3


def test_bad_quartics():
    with pytest.raises(ValueError):
        QuarticModel(0, 0, 1, 0, 1, QuarticPoint(0, 1))
    with pytest.raises(ValueError):
        QuarticModel(1, 0, -2, 0, 1, QuarticPoint(0, 1))
    with pytest.raises(ValueError):
        QuarticModel(1, 0, 0, 0, 1, QuarticPoint(0, 2))


def test_point_json():
    for P in (INFINITY, P19):
        assert ECPoint.from_dict(P.to_dict()) == P
    assert LongWeierstrass.from_dict(E80.to_dict()) == E80
