from fractions import Fraction

import pytest

from kappaforms import C_TEST_SET, Coefficient, closure_detect
from kappaforms.closure import solve_gaussian, span_coefficients


def g(re, im=0):
    return (Fraction(re), Fraction(im))


def test_solve_gaussian_unique():
    # (1+i) z = 2  ->  z = 1 - i
    sol, unique = solve_gaussian([[g(1, 1), g(2)]], 1)
    assert unique and sol == [g(1, -1)]


def test_solve_gaussian_inconsistent_and_free():
    assert solve_gaussian([[g(1), g(1)], [g(1), g(2)]], 1) == (None, False)
    sol, unique = solve_gaussian([[g(1), g(1), g(3)]], 2)
    assert not unique and sol == [g(3), g(0)]


@pytest.mark.parametrize("c", C_TEST_SET)
def test_d1_constants(realize, c):
    r = realize(3, 4, "d1", c)
    res = closure_detect(r)
    ia0 = Coefficient({3: 1}, 4)
    assert res.closed and res.unique
    assert res.constants[0, 0] == ({0: ia0 * c} if c else {})
    assert res.constants[1, 0] == {1: -ia0}
    assert res.constants[0, 1] == {}


@pytest.mark.parametrize("c", C_TEST_SET)
def test_d2_constants(realize, c):
    r = realize(3, 4, "d2", c)
    res = closure_detect(r)
    ia0 = Coefficient({3: 1}, 4)
    assert res.closed
    assert res.constants[0, 2] == ({2: ia0 * c} if c else {})
    assert res.constants[2, 0] == ({2: ia0 * (c - 1)} if c != 1 else {})


def test_sitarz_not_closed_without_thetap(realize):
    r = realize(3, 4, "sitarz")
    res = closure_detect(r)
    assert not res.closed and (0, 0) in res.failures
    ext = closure_detect(r, include_thetap=True)
    ia0 = Coefficient({3: 1}, 4)
    assert ext.closed
    assert ext.constants[1, 1] == {"thetap": -ia0}
    with pytest.raises(ValueError):
        closure_detect(realize(3, 4, "d1", 1), include_thetap=True)


def test_span_coefficients_rejects_nonconstant(realize):
    r = realize(2, 3, "d1", 1)
    target = r.xhat[0] * r.xi[0]
    consts, _ = span_coefficients(target, {0: r.xi[0], 1: r.xi[1]}, 3)
    assert consts is None
