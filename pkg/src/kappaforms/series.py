"""Truncated series calculus in the commuting subalgebra of derivatives."""
from __future__ import annotations

from math import factorial

from ._rational import rational
from .algebra import AlgebraError, Element


def _require_series(s: Element):
    if not s.is_deriv_only():
        raise AlgebraError("series functions need an argument built from derivatives only")


def _require_nilpotent(s: Element):
    for c in s.terms.values():
        if any(code < 2 for code in c):
            raise AlgebraError("series argument must have zero a0**0 part")


def _power_sum(s: Element, coefficients):
    """sum_k coefficients[k] * s**k for k = 0..order (s nilpotent modulo a0**(order+1))."""
    ctx = s.ctx
    total = ctx.one().truncate(s.order) if s.order < ctx.order else ctx.one()
    power = total
    for k in range(1, s.order + 1):
        power = power * s
        if power.is_zero():
            break
        total = total + coefficients(k) * power
    return total


def series_exp(s: Element) -> Element:
    _require_series(s)
    _require_nilpotent(s)
    return _power_sum(s, lambda k: rational(1, factorial(k)))


def _binomial_half(k):
    # C(1/2, k)
    out = rational(1)
    for j in range(k):
        out = out * (rational(1, 2) - j) / (j + 1)
    return out


def series_sqrt_one_plus(s: Element) -> Element:
    """(1 + s) ** (1/2) as a binomial series."""
    _require_series(s)
    _require_nilpotent(s)
    return _power_sum(s, _binomial_half)


def series_inverse(s: Element) -> Element:
    """Multiplicative inverse of a series whose a0**0 part is exactly 1."""
    _require_series(s)
    if not (s.a0_part(0) - s.ctx.one()).is_zero():
        raise AlgebraError("series_inverse needs constant part equal to 1")
    t = s - s.ctx.one()
    return _power_sum(t, lambda k: rational(-1 if k & 1 else 1))


def expm1_over(s: Element, c) -> Element:
    """(exp(c*s) - 1) / c as sum_{k>=1} c**(k-1) s**k / k!; at c = 0 this is s."""
    _require_series(s)
    _require_nilpotent(s)
    c = rational(c)
    total = s.ctx.zero().truncate(s.order)
    power = None
    for k in range(1, s.order + 1):
        power = s if power is None else power * s
        if power.is_zero():
            break
        total = total + (c ** (k - 1) / factorial(k)) * power
    return total


def shift_generator(ctx) -> Element:
    """A = -i a0 del_0."""
    return -(ctx.i * ctx.a0 * ctx.d(0))


def shift_power(c, ctx) -> Element:
    """Z**c = exp(c A) with A = -i a0 del_0."""
    c = rational(c)
    if c == 0:
        return ctx.one()
    return series_exp(c * shift_generator(ctx))
