from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kappaforms import (
    AlgebraError,
    Coefficient,
    Context,
    ContextMismatch,
    OrderError,
    act_on_vacuum,
    anticommutator,
    commutator,
    divide_by_a0,
    equals_up_to_order,
    gcomm,
    jacobi_residual,
    multiply,
    series_exp,
    shift_power,
)

import oracle
from strategies import CTX, coefficients, elements, homogeneous, letters, monomial_words

ctx = Context(4, 4)
x, d, dx, q = ctx.x, ctx.d, ctx.dx, ctx.q


def test_context_validation():
    with pytest.raises(AlgebraError):
        Context(1, 2)
    with pytest.raises(AlgebraError):
        Context(2, -1)
    with pytest.raises(AlgebraError):
        ctx.x(4)
    assert ctx.metric == (-1, 1, 1, 1)


def test_multiply_examples():
    assert d(1) * x(1) == x(1) * d(1) + 1
    assert d(0) * x(0) * x(0) == x(0) * x(0) * d(0) - 2 * x(0)
    assert q(0) * dx(0) == -(dx(0) * q(0)) - 1
    assert dx(2) * dx(1) == -(dx(1) * dx(2))
    assert dx(1) * dx(1) == ctx.zero()
    assert q(2) * q(2) == ctx.zero()


def test_normal_form_text():
    assert str(d(0) * x(0) * x(0)) == "-2*x[0] + x[0]*x[0]*del[0]"
    assert str(q(0) * dx(0)) == "-1 - dx[0]*q[0]"
    assert str(ctx.zero()) == "0"


def test_graded_commutator_examples():
    assert gcomm(d(0), x(0)) == ctx.scalar(-1)
    assert gcomm(dx(0), dx(1)).is_zero()
    # even-degree left argument: ordinary commutator, oracle from the swap rules
    assert gcomm(dx(0) * q(1), dx(1)) == dx(0)
    assert anticommutator(q(1), dx(1)) == ctx.one()


def test_vacuum_examples():
    assert act_on_vacuum(x(1) * d(0)).is_zero()
    ia0 = ctx.i * ctx.a0
    assert act_on_vacuum(x(0) + ia0 * x(1) * d(1)) == x(0)
    assert act_on_vacuum(dx(0) - ia0 * q(1)) == dx(0)


def test_divide_by_a0():
    ia0 = ctx.i * ctx.a0
    out = divide_by_a0(ia0 * x(1))
    assert out == (ctx.i * x(1)).truncate(ctx.order - 1)
    assert out.order == ctx.order - 1
    with pytest.raises(AlgebraError):
        divide_by_a0(ctx.one())


def test_divide_shift_quotient():
    # (1 - exp(-i a0 d0)) / a0 = i d0 + (1/2) a0 d0^2 - ... known to N-1
    z = series_exp(-(ctx.i * ctx.a0 * d(0)))
    got = divide_by_a0(ctx.one() - z)
    expect = ctx.zero()
    term = ctx.one()
    fact = 1
    for k in range(1, ctx.order + 1):
        term = term * (-(ctx.i * d(0)))
        fact *= k
        expect = expect - ctx.scalar(Fraction(1, fact)) * term * _a0_power(k - 1)
    assert got.order == ctx.order - 1
    assert got == expect.truncate(ctx.order - 1)


def _a0_power(k):
    e = ctx.one()
    for _ in range(k):
        e = e * ctx.a0
    return e


def test_equals_up_to_order():
    z, zinv = shift_power(1, ctx), shift_power(-1, ctx)
    assert equals_up_to_order(z * zinv, ctx.one(), ctx.order)
    assert equals_up_to_order(x(0) + _a0_power(2) * x(1), x(0), 1)
    assert not equals_up_to_order(x(0) + _a0_power(2) * x(1), x(0), 2)
    with pytest.raises(OrderError):
        equals_up_to_order(x(0), x(0), ctx.order + 1)


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        x(0) * Context(3, 4).x(0)


def test_jacobi_examples(realize):
    r = realize(4, 6, "d1", 1)
    assert jacobi_residual(r.xhat[0], r.xhat[1], r.xhat[2]).is_zero()
    assert jacobi_residual(dx(0), dx(0), x(0)).is_zero()
    assert jacobi_residual(r.xi[0], r.xhat[0], r.xhat[1]).is_zero()


def test_nested_commutator_value():
    assert gcomm(d(0), gcomm(d(0), x(0) * x(0))) == ctx.scalar(2)


def test_truncate_and_recast():
    e = x(0) + _a0_power(3) * x(1)
    assert e.truncate(2) == x(0).truncate(2)
    with pytest.raises(OrderError):
        e.truncate(5)
    low = e.recast(Context(4, 2))
    assert low.order == 2 and str(low) == "x[0]"
    with pytest.raises(OrderError):
        low.recast(ctx)


def test_coefficient_arithmetic():
    i = Coefficient.I(3)
    assert i * i == Coefficient({0: -1}, 3)
    a = Coefficient.A0(3)
    assert (a * a * a * a).is_zero()  # beyond the known order
    assert Coefficient.gaussian(1, 2).part(0) == (1, 2)
    with pytest.raises(AlgebraError):
        Coefficient({0: 1}, 2).divide_by_a0()
    with pytest.raises(TypeError):
        ctx.scalar(0.5)


# Property tests.

@given(st.lists(letters(), max_size=6))
def test_multiply_matches_swap_oracle(word):
    assert oracle.product(CTX, word) == oracle.to_element(CTX, oracle.normal_order(word)).truncate(CTX.order)


@given(elements(), elements(), elements())
def test_associativity(u, v, w):
    assert (u * v) * w == u * (v * w)


@given(elements(), elements(), elements())
def test_distributivity(u, v, w):
    assert u * (v + w) == u * v + u * w


@given(elements())
def test_normal_form_idempotent(u):
    assert u * CTX.one() == u
    assert CTX.one() * u == u
    assert type(u)(CTX, dict(u.terms), u.order) == u


@given(homogeneous(), homogeneous())
def test_degree_additivity_mod_2(u, v):
    # q dx contracts to a scalar, so only the parity is additive
    parities = {k & 1 for k in (u * v).degrees()}
    assert parities <= {(u.degree() + v.degree()) & 1}


@given(homogeneous(), homogeneous())
def test_graded_antisymmetry(u, v):
    s = -1 if (u.degree() * v.degree()) & 1 else 1
    assert gcomm(u, v) == -s * gcomm(v, u)


@given(homogeneous(), homogeneous())
def test_gcomm_matches_definition(u, v):
    s = -1 if (u.degree() * v.degree()) & 1 else 1
    assert gcomm(u, v) == u * v - s * (v * u)


@given(elements(max_len=2), elements(max_len=2), elements(max_len=2))
def test_graded_jacobi(u, v, w):
    assert jacobi_residual(u, v, w).is_zero()


@given(elements(), elements())
def test_commutator_is_derivation(u, v):
    g = CTX.d(1)
    assert commutator(g, u * v) == commutator(g, u) * v + u * commutator(g, v)


@given(monomial_words(), elements())
def test_vacuum_multiplicative_on_symbols(u, v):
    u = act_on_vacuum(u)
    assert act_on_vacuum(u * v) == u * act_on_vacuum(v)


@given(elements(), elements())
def test_vacuum_linear(u, v):
    assert act_on_vacuum(u + v) == act_on_vacuum(u) + act_on_vacuum(v)


@given(coefficients(), coefficients(), coefficients())
def test_coefficient_ring(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(elements())
def test_multiply_function_equals_operator(u):
    assert multiply(u, CTX.x(1)) == u * CTX.x(1)
