from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kappaforms import C_TEST_SET, FAMILIES, MUTATIONS, Context, build_realization, commutator, gcomm
from kappaforms.realizations import build_exterior_derivative, build_xhat
from kappaforms.series import series_sqrt_one_plus, shift_power


def test_noncovariant_coordinates(realize):
    r = realize(4, 6, "d1", 1)
    ctx = r.ctx
    ia0 = ctx.i * ctx.a0
    assert commutator(r.xhat[0], r.xhat[1]) == ia0 * r.xhat[1]
    assert commutator(r.xhat[1], r.xhat[2]).is_zero()
    assert r.xhat[0] == ctx.x(0) + ia0 * sum((ctx.x(k) * ctx.d(k) for k in range(1, 4)), ctx.zero())
    assert r.xhat[2] == ctx.x(2)


def test_natural_coordinates_and_shift(realize):
    r = realize(4, 6, "sitarz")
    ctx = r.ctx
    ia0 = ctx.i * ctx.a0
    assert r.Z * r.xhat[0] * r.Zinv - r.xhat[0] == ia0
    # Z^-1 = i a0 D0 + sqrt(1 + a0^2 D^2), D^2 = -D0^2 + sum Dk^2
    dd = -(ctx.d(0) * ctx.d(0)) + sum((ctx.d(k) * ctx.d(k) for k in range(1, 4)), ctx.zero())
    assert r.Zinv == ia0 * ctx.d(0) + series_sqrt_one_plus(ctx.a0 * ctx.a0 * dd)
    assert r.xhat[1] == ctx.x(1) * r.Zinv - ia0 * ctx.x(0) * ctx.d(1)


def test_build_xhat_variants():
    ctx = Context(3, 4)
    nat = build_xhat(ctx, "natural")
    assert nat[0].classical() == ctx.x(0)
    with pytest.raises(ValueError):
        build_xhat(ctx, "other")


def test_exterior_derivative_examples(realize):
    r = realize(4, 6, "sitarz")
    ctx = r.ctx
    spatial = sum((ctx.dx(k) * ctx.d(k) for k in range(1, 4)), ctx.zero())
    assert r.d == -(ctx.dx(0) * ctx.d(0)) + spatial * r.Z
    d1 = realize(4, 6, "d1", 1)
    assert gcomm(d1.d, d1.xhat[0]) == d1.ctx.dx(0) * d1.Z
    for fam in FAMILIES:
        rf = realize(3, 4, fam, Fraction(1, 2))
        c = rf.ctx
        classical = -(c.dx(0) * c.d(0)) + c.dx(1) * c.d(1) + c.dx(2) * c.d(2)
        assert rf.d.classical() == classical


def test_d1_c0_limit_form():
    ctx = Context(3, 4)
    d = build_exterior_derivative(ctx, "d1", 0)
    spatial = ctx.dx(1) * ctx.d(1) + ctx.dx(2) * ctx.d(2)
    assert d == -(ctx.dx(0) * ctx.d(0)) + spatial * shift_power(-1, ctx)


def test_one_form_examples(realize):
    r = realize(4, 6, "d1", 2)
    ctx = r.ctx
    assert r.xi[0] == ctx.dx(0) * shift_power(2, ctx)
    assert r.xi[3] == ctx.dx(3) * shift_power(-1, ctx)
    r2 = realize(4, 6, "d2", Fraction(1, 2))
    c = Fraction(1, 2)
    spatial = sum((ctx.dx(k) * ctx.d(k) for k in range(1, 4)), ctx.zero())
    ia0 = ctx.i * ctx.a0
    assert r2.xi[0] == ctx.dx(0) * shift_power(c, ctx) + ia0 * c * spatial * shift_power(c - 1, ctx)
    rs = realize(4, 6, "sitarz")
    assert rs.xi[2] == ctx.dx(2) - ia0 * ctx.dx(0) * ctx.d(2)
    assert rs.thetap == ctx.dx(0) * rs.Zinv
    assert rs.theta == rs.xi[0] - rs.thetap


def test_frozen_low_order_one_form():
    # dx0 Z^2 to order 2: exp(-2 i a0 del0) = 1 - 2i a0 del0 - 2 a0^2 del0^2
    r = build_realization(2, 2, "d1", 2)
    assert str(r.xi[0]) == "dx[0] - 2*i*a0*dx[0]*del[0] - 2*a0*a0*dx[0]*del[0]*del[0]"


def test_lorentz_examples(realize):
    r = realize(4, 6, "d1", 1)
    ctx = r.ctx
    assert r.M1[1, 0] == ctx.dx(1) * ctx.q(0) - ctx.dx(0) * ctx.q(1)
    assert r.Phi[2] == ctx.d(2)
    assert r.Mt[2, 1] == r.M[2, 1] + r.M1[2, 1]
    assert r.M[2, 1] == ctx.x(2) * ctx.d(1) - ctx.x(1) * ctx.d(2)
    for (mu, nu), m in r.M.items():
        assert m.classical() == ctx.x(mu) * ctx.d(nu) - ctx.x(nu) * ctx.d(mu)


def test_sitarz_has_no_lorentz_but_thetap(realize):
    r = realize(3, 4, "sitarz")
    assert not r.has_lorentz and r.thetap is not None
    assert realize(3, 4, "d2", 1).thetap is None


def test_shift_method(realize):
    r = realize(3, 4, "d1", 1)
    assert r.shift(Fraction(1, 2)) * r.shift(Fraction(1, 2)) == r.Z
    rs = realize(3, 4, "sitarz")
    assert rs.shift(-2) == rs.Zinv * rs.Zinv
    with pytest.raises(ValueError):
        rs.shift(Fraction(1, 2))


def test_builder_errors():
    with pytest.raises(ValueError):
        build_realization(2, 2, "d3")
    with pytest.raises(ValueError):
        build_realization(2, 2, "d1", mutation="nope")
    assert len(MUTATIONS) >= 5


def test_to_text_is_deterministic():
    a = build_realization(2, 2, "d2", Fraction(1, 2)).to_text()
    b = build_realization(2, 2, "d2", Fraction(1, 2)).to_text()
    assert a == b
    assert a.startswith("# realization family=d2 n=2 order=2 c=1/2\n")
    assert "xi[0] = " in a


@settings(max_examples=12)
@given(st.sampled_from(FAMILIES), st.sampled_from(C_TEST_SET), st.integers(2, 3), st.integers(1, 3))
def test_truncation_monotonicity(family, c, n, order):
    lo = build_realization(n, order, family, c)
    hi = build_realization(n, order + 2, family, c)
    for name, e in lo.table.items():
        assert hi.table[name].recast(lo.ctx) == e, name


@settings(max_examples=12)
@given(st.sampled_from(FAMILIES), st.sampled_from(C_TEST_SET), st.integers(2, 3))
def test_classical_limits(family, c, n):
    r = build_realization(n, 3, family, c)
    ctx = r.ctx
    for mu in range(n):
        assert r.xhat[mu].classical() == ctx.x(mu)
        assert r.xi[mu].classical() == ctx.dx(mu)
    assert r.Z.classical() == ctx.one()
