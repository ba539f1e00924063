"""Builders for the operator realizations of kappa-Minkowski calculi.

Three families share one generator namespace (x, del, dx, q):

* ``sitarz`` -- natural realization of the coordinates with the five-form
  exterior derivative and the extra form ``thetap``;
* ``d1`` / ``d2`` -- noncovariant coordinates with the two one-parameter
  families of exterior derivatives (parameter ``c``), together with the
  Lorentz generators and their Grassmann extension.

Everything containing an a0-quotient is built at order N+2 and truncated to N.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ._rational import rational
from .algebra import AlgebraError, Context, Element, gcomm
from .series import expm1_over, series_exp, series_inverse, series_sqrt_one_plus, shift_generator, shift_power

FAMILIES = ("sitarz", "d1", "d2")
C_TEST_SET = tuple(rational(c) for c in ("-1", "0", "1/2", "1", "2"))

# Single-term mutations used as sensitivity controls for the verifier.
MUTATIONS = {
    "noncov_drop_xhat0_tail": ("d1", "x^_0 loses its i*a0*sum x_k del_k term"),
    "natural_drop_shift_term": ("sitarz", "natural x^_mu loses -i*a0*x_0*del_mu"),
    "sitarz_thetap_wrong_power": ("sitarz", "thetap built with Z instead of Z^-1"),
    "d1_spatial_power_flip": ("d1", "d1 spatial part uses Z instead of Z^-1"),
    "d2_spatial_power_shift": ("d2", "d2 spatial part uses Z^c instead of Z^(c-1)"),
    "lorentz_drop_sinh": ("d1", "boost generator loses its sinh^2 term"),
    "lorentz_drop_laplacian": ("d1", "boost generator loses its (i*a0/2)*Laplacian term"),
    "grassmann_sign_flip": ("d1", "M1_{mu nu} = dx_mu q_nu + dx_nu q_mu"),
}


def _over_ia0(u: Element) -> Element:
    # u / (i a0) = -i * (u / a0)
    return -(u.ctx.i * u.divide_by_a0())


def _spatial_sum(ctx, f):
    total = ctx.zero()
    for k in range(1, ctx.n):
        total = total + f(k)
    return total


def natural_coordinates(ctx, mutation=None):
    """Natural realization: returns (xhat, Z, Zinv)."""
    a0, i = ctx.a0, ctx.i
    box = -(ctx.d(0) * ctx.d(0)) + _spatial_sum(ctx, lambda k: ctx.d(k) * ctx.d(k))
    zinv = i * a0 * ctx.d(0) + series_sqrt_one_plus(a0 * a0 * box)
    z = series_inverse(zinv)
    xhat = []
    for mu in range(ctx.n):
        e = ctx.x(mu) * zinv
        if mutation != "natural_drop_shift_term":
            e = e - i * a0 * ctx.x(0) * ctx.d(mu)
        xhat.append(e)
    return tuple(xhat), z, zinv


def noncovariant_coordinates(ctx, mutation=None):
    x0 = ctx.x(0)
    if mutation != "noncov_drop_xhat0_tail":
        x0 = x0 + ctx.i * ctx.a0 * _spatial_sum(ctx, lambda k: ctx.x(k) * ctx.d(k))
    return (x0,) + tuple(ctx.x(k) for k in range(1, ctx.n))


def build_xhat(ctx, variant="noncovariant", mutation=None):
    if variant == "natural":
        hi = ctx.with_order(ctx.order + 2)
        xhat, _, _ = natural_coordinates(hi, mutation)
        return tuple(e.recast(ctx) for e in xhat)
    if variant == "noncovariant":
        return noncovariant_coordinates(ctx, mutation)
    raise ValueError(f"unknown coordinate variant {variant!r}")


def time_quotient(ctx, c):
    """(Z**c - 1) / (i a0 c), with its c -> 0 limit -del_0."""
    return _over_ia0(expm1_over(shift_generator(ctx), c))


def build_exterior_derivative(ctx, family, c=1, mutation=None):
    """Exterior derivative of ``family`` at ``ctx.order`` (built internally at order+2)."""
    hi = ctx.with_order(ctx.order + 2)
    return _exterior_derivative(hi, family, rational(c), mutation, _shifts(hi, family, rational(c))).recast(ctx)


def _shifts(ctx, family, c):
    if family == "sitarz":
        _, z, zinv = natural_coordinates(ctx)
        return {"Z": z, "Zinv": zinv}
    return {"Z": shift_power(1, ctx), "Zinv": shift_power(-1, ctx)}


def _exterior_derivative(ctx, family, c, mutation, shifts):
    spatial = _spatial_sum(ctx, lambda k: ctx.dx(k) * ctx.d(k))
    if family == "sitarz":
        return -(ctx.dx(0) * ctx.d(0)) + spatial * shifts["Z"]
    time_part = ctx.dx(0) * time_quotient(ctx, c)
    if family == "d1":
        power = shifts["Z"] if mutation == "d1_spatial_power_flip" else shifts["Zinv"]
        return time_part + spatial * power
    if family == "d2":
        power = shift_power(c if mutation == "d2_spatial_power_shift" else c - 1, ctx)
        return time_part + spatial * power
    raise ValueError(f"unknown family {family!r}")


def lorentz_generators(ctx, mutation=None):
    """Noncovariant Lorentz generators.

    Returns ``(M, M1, Mt, Phi)``; the three generator maps cover every ordered
    index pair (antisymmetric, zero on the diagonal).
    """
    n = ctx.n
    a = shift_generator(ctx)
    z = series_exp(a)
    laplacian = _spatial_sum(ctx, lambda k: ctx.d(k) * ctx.d(k))
    sinh2 = (series_exp(a) + series_exp(-a) - 2) * rational(1, 4)
    phi0 = _over_ia0(ctx.one() - z)
    if mutation != "lorentz_drop_laplacian":
        phi0 = phi0 + rational(1, 2) * ctx.i * ctx.a0 * laplacian
    if mutation != "lorentz_drop_sinh":
        phi0 = phi0 - 2 * _over_ia0(sinh2 * z)
    xhat0 = ctx.x(0) + ctx.i * ctx.a0 * _spatial_sum(ctx, lambda k: ctx.x(k) * ctx.d(k))
    phi = (phi0,) + tuple(ctx.d(k) for k in range(1, n))
    zero = ctx.zero()
    M, M1 = {}, {}
    for mu in range(n):
        for nu in range(n):
            if mu == nu:
                M[mu, nu] = M1[mu, nu] = zero
                continue
            if nu == 0:
                M[mu, nu] = ctx.x(mu) * phi0 - xhat0 * ctx.d(mu)
            elif mu == 0:
                M[mu, nu] = -(ctx.x(nu) * phi0 - xhat0 * ctx.d(nu))
            else:
                M[mu, nu] = ctx.x(mu) * ctx.d(nu) - ctx.x(nu) * ctx.d(mu)
            g1 = ctx.dx(mu) * ctx.q(nu)
            g2 = ctx.dx(nu) * ctx.q(mu)
            M1[mu, nu] = g1 + g2 if mutation == "grassmann_sign_flip" else g1 - g2
    Mt = {k: M[k] + M1[k] for k in M}
    return M, M1, Mt, phi


@dataclass(frozen=True)
class Realization:
    ctx: Context
    family: str
    c: object
    xhat: tuple
    xi: tuple
    d: Element
    Z: Element
    Zinv: Element
    p: tuple
    thetap: Optional[Element] = None
    theta: Optional[Element] = None
    M: dict = field(default_factory=dict)
    M1: dict = field(default_factory=dict)
    Mt: dict = field(default_factory=dict)
    Phi: tuple = ()
    mutation: Optional[str] = None

    @property
    def n(self):
        return self.ctx.n

    @property
    def order(self):
        return self.ctx.order

    @property
    def has_lorentz(self):
        return bool(self.M)

    def shift(self, c):
        """Z**c in this realization's shift operator."""
        if self.family == "sitarz":
            c = rational(c)
            if c.denominator != 1:
                raise AlgebraError("the natural shift operator only supports integer powers")
            base = self.Z if c > 0 else self.Zinv
            out = self.ctx.one()
            for _ in range(abs(int(c))):
                out = out * base
            return out
        return shift_power(c, self.ctx)

    @property
    def table(self):
        """Symbol name -> Element, in a fixed order."""
        t = {}
        for mu, e in enumerate(self.xhat):
            t[f"xhat[{mu}]"] = e
        for mu, e in enumerate(self.xi):
            t[f"xi[{mu}]"] = e
        t["d"] = self.d
        if self.thetap is not None:
            t["thetap"] = self.thetap
            t["theta"] = self.theta
        t["Z"] = self.Z
        t["Zinv"] = self.Zinv
        for mu, e in enumerate(self.p):
            t[f"p[{mu}]"] = e
        for name, gens in (("M", self.M), ("M1", self.M1), ("Mt", self.Mt)):
            for (mu, nu), e in sorted(gens.items()):
                if mu > nu:
                    t[f"{name}[{mu},{nu}]"] = e
        for mu, e in enumerate(self.Phi):
            t[f"Phi[{mu}]"] = e
        return t

    def to_text(self):
        head = f"# realization family={self.family} n={self.n} order={self.order} c={self.c}"
        return "\n".join([head] + [f"{k} = {v}" for k, v in self.table.items()]) + "\n"


def build_one_forms(ctx, d, xhat):
    return tuple(gcomm(d, x) for x in xhat)


def build_lorentz(ctx, mutation=None):
    hi = ctx.with_order(ctx.order + 2)
    M, M1, Mt, phi = lorentz_generators(hi, mutation)
    rc = lambda g: {k: v.recast(ctx) for k, v in g.items()}  # noqa: E731
    return rc(M), rc(M1), rc(Mt), tuple(e.recast(ctx) for e in phi)


def build_realization(n=4, order=6, family="d1", c=1, mutation=None) -> Realization:
    """Assemble the full operator table for one (n, order, family, c)."""
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {family!r}")
    if mutation is not None and mutation not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutation!r}")
    c = rational(c)
    ctx = Context(n, order)
    hi = ctx.with_order(order + 2)
    shifts = _shifts(hi, family, c)
    if family == "sitarz":
        xhat_hi, _, _ = natural_coordinates(hi, mutation)
    else:
        xhat_hi = noncovariant_coordinates(hi, mutation)
    d_hi = _exterior_derivative(hi, family, c, mutation, shifts)
    xhat = tuple(e.recast(ctx) for e in xhat_hi)
    d = d_hi.recast(ctx)
    xi = build_one_forms(ctx, d, xhat)
    Z, Zinv = shifts["Z"].recast(ctx), shifts["Zinv"].recast(ctx)
    p = tuple(-(ctx.i * ctx.d(mu)) for mu in range(n))
    extra = {}
    if family == "sitarz":
        power = Z if mutation == "sitarz_thetap_wrong_power" else Zinv
        thetap = ctx.dx(0) * power
        extra.update(thetap=thetap, theta=xi[0] - thetap)
    else:
        M, M1, Mt, phi = build_lorentz(ctx, mutation)
        extra.update(M=M, M1=M1, Mt=Mt, Phi=phi)
    return Realization(ctx=ctx, family=family, c=c, xhat=xhat, xi=xi, d=d, Z=Z, Zinv=Zinv, p=p, mutation=mutation, **extra)
