"""Exact arithmetic in the Weyl super-algebra generated by x_mu, del_mu, dx_mu, q_mu.

Relations (eta = diag(-1, 1, ..., 1)):

    [del_mu, x_nu] = eta_{mu nu},    {q_mu, dx_nu} = eta_{mu nu},
    x, del commute among themselves and with dx, q;  dx, q anticommute among themselves.

Elements are finite sums of canonical monomials ``x^a dx_S q_T del^b`` whose
coefficients are polynomials in the formal symbol a0 over the Gaussian
rationals, truncated above a known order.
"""
from __future__ import annotations

from dataclasses import dataclass
from . import _kernels as K
from ._kernels import Monomial
from ._rational import rational


class AlgebraError(ValueError):
    """Raised when an operation's precondition is violated."""


class ContextMismatch(AlgebraError):
    pass


class OrderError(AlgebraError):
    pass


@dataclass(frozen=True)
class Context:
    """Dimension ``n`` (indices 0..n-1) and truncation order ``order`` in a0."""

    n: int
    order: int

    def __post_init__(self):
        if self.n < 2:
            raise AlgebraError("dimension n must be at least 2")
        if self.order < 0:
            raise AlgebraError("truncation order must be nonnegative")

    @property
    def metric(self):
        return tuple(K.eta(mu) for mu in range(self.n))

    def with_order(self, order):
        return Context(self.n, order)

    def _index(self, mu):
        if not 0 <= mu < self.n:
            raise AlgebraError(f"index {mu} out of range for n={self.n}")
        return mu

    def _unit_exps(self, mu):
        e = [0] * self.n
        e[self._index(mu)] = 1
        return tuple(e)

    @property
    def unit_monomial(self):
        z = (0,) * self.n
        return Monomial(z, (), (), z)

    # Generators.
    def x(self, mu):
        return Element(self, {Monomial(self._unit_exps(mu), (), (), (0,) * self.n): {0: rational(1)}})

    def d(self, mu):
        return Element(self, {Monomial((0,) * self.n, (), (), self._unit_exps(mu)): {0: rational(1)}})

    def dx(self, mu):
        z = (0,) * self.n
        return Element(self, {Monomial(z, (self._index(mu),), (), z): {0: rational(1)}})

    def q(self, mu):
        z = (0,) * self.n
        return Element(self, {Monomial(z, (), (self._index(mu),), z): {0: rational(1)}})

    def scalar(self, value):
        if isinstance(value, Element):
            return value
        c = Coefficient.coerce(value, self.order)
        return Element(self, {self.unit_monomial: dict(c.terms)} if c.terms else {}, min(c.order, self.order))

    def one(self):
        return self.scalar(1)

    def zero(self):
        return Element(self, {})

    @property
    def i(self):
        return self.scalar(Coefficient.I(self.order))

    @property
    def a0(self):
        return self.scalar(Coefficient.A0(self.order))


class Coefficient:
    """Truncated polynomial in a0 over Q(i).

    ``terms`` maps ``code = 2*k + e`` to a rational, meaning ``r * a0**k * i**e``.
    ``order`` is the highest a0 power known exactly.
    """

    __slots__ = ("terms", "order")

    def __init__(self, terms, order):
        self.order = order
        self.terms = {c: v for c, v in terms.items() if v and (c >> 1) <= order}

    @classmethod
    def coerce(cls, value, order):
        if isinstance(value, Coefficient):
            return value
        if isinstance(value, complex):
            raise TypeError("floats are not accepted; build Gaussian values with Coefficient.gaussian")
        return cls({0: rational(value)}, order)

    @classmethod
    def gaussian(cls, re, im=0, power=0, order=0):
        return cls({2 * power: rational(re), 2 * power + 1: rational(im)}, max(order, power))

    @classmethod
    def I(cls, order):
        return cls({1: rational(1)}, order)

    @classmethod
    def A0(cls, order):
        return cls({2: rational(1)}, order)

    def __add__(self, other):
        other = Coefficient.coerce(other, self.order)
        out = dict(self.terms)
        for c, v in other.terms.items():
            out[c] = out.get(c, 0) + v
        return Coefficient(out, min(self.order, other.order))

    __radd__ = __add__

    def __neg__(self):
        return Coefficient({c: -v for c, v in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-Coefficient.coerce(other, self.order))

    def __rsub__(self, other):
        return Coefficient.coerce(other, self.order) - self

    def __mul__(self, other):
        if isinstance(other, Element):
            return NotImplemented
        try:
            other = Coefficient.coerce(other, self.order)
        except TypeError:
            return NotImplemented
        order = min(self.order, other.order)
        return Coefficient(K.coeff_mul(self.terms, other.terms, order), order)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Coefficient):
            try:
                other = Coefficient.coerce(other, self.order)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def part(self, k):
        """(real, imaginary) rationals of the a0**k coefficient."""
        return self.terms.get(2 * k, rational(0)), self.terms.get(2 * k + 1, rational(0))

    def constant_term(self):
        return Coefficient({c: v for c, v in self.terms.items() if c < 2}, self.order)

    def divide_by_a0(self):
        if any(c < 2 for c in self.terms):
            raise AlgebraError("coefficient has a nonzero a0**0 term; cannot divide by a0")
        return Coefficient({c - 2: v for c, v in self.terms.items()}, self.order - 1)

    def truncate(self, order):
        return Coefficient(self.terms, min(order, self.order))

    def __repr__(self):
        return f"Coefficient({format_coefficient(self.terms) or '0'}, order={self.order})"


def _coerce_pair(u, v):
    if not isinstance(v, Element):
        v = u.ctx.scalar(v)
    if u.ctx != v.ctx:
        raise ContextMismatch(f"context mismatch: {u.ctx} vs {v.ctx}")
    return v


class Element:
    """Immutable finite combination of canonical monomials.

    ``order`` is the known truncation order (a0 powers above it are unknown).
    """

    __slots__ = ("ctx", "terms", "order")

    def __init__(self, ctx, terms, order=None):
        self.ctx = ctx
        self.order = ctx.order if order is None else order
        o = self.order
        clean = {}
        for m, c in terms.items():
            c = {code: v for code, v in c.items() if v and (code >> 1) <= o}
            if c:
                clean[Monomial(*m) if not isinstance(m, Monomial) else m] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ctx, terms, order):
        # terms already canonical and pruned
        e = object.__new__(cls)
        e.ctx = ctx
        e.terms = terms
        e.order = order
        return e

    # Arithmetic.
    def __add__(self, other):
        other = _coerce_pair(self, other)
        out = {m: dict(c) for m, c in self.terms.items()}
        for m, c in other.terms.items():
            slot = out.setdefault(m, {})
            for code, v in c.items():
                slot[code] = slot.get(code, 0) + v
        return Element(self.ctx, out, min(self.order, other.order))

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return Element._raw(self.ctx, {m: {k: -v for k, v in c.items()} for m, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-_coerce_pair(self, other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return multiply(self, other)

    def __rmul__(self, other):
        return multiply(self.ctx.scalar(other), self)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.ctx == other.ctx and self.order == other.order and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def coefficient(self, m):
        return Coefficient(self.terms.get(Monomial(*m), {}), self.order)

    # Structure.
    def degrees(self):
        return sorted({m.degree for m in self.terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        ds = self.degrees()
        if len(ds) > 1:
            raise AlgebraError("element is not homogeneous")
        return ds[0] if ds else 0

    def homogeneous_components(self):
        comps = {}
        for m, c in self.terms.items():
            comps.setdefault(m.degree, {})[m] = c
        return {d: Element._raw(self.ctx, t, self.order) for d, t in sorted(comps.items())}

    def parity_components(self):
        comps = {}
        for m, c in self.terms.items():
            comps.setdefault(m.degree & 1, {})[m] = c
        return {p: Element._raw(self.ctx, t, self.order) for p, t in sorted(comps.items())}

    def truncate(self, order):
        if order > self.order:
            raise OrderError(f"cannot truncate to {order}: only known to order {self.order}")
        return Element(self.ctx, self.terms, order)

    def recast(self, ctx):
        """Move to ``ctx`` (same n), truncating to ``ctx.order``."""
        if ctx.n != self.ctx.n:
            raise ContextMismatch("recast requires the same dimension")
        if self.order < ctx.order:
            raise OrderError(f"element known to order {self.order} < target order {ctx.order}")
        return Element(ctx, self.terms, ctx.order)

    def a0_part(self, k):
        """Element formed by the a0**k coefficients (with i kept)."""
        out = {}
        for m, c in self.terms.items():
            sub = {code & 1: v for code, v in c.items() if code >> 1 == k}
            if sub:
                out[m] = sub
        return Element._raw(self.ctx, out, self.order)

    def classical(self):
        return self.a0_part(0)

    def is_deriv_only(self):
        return all(m.deriv_only for m in self.terms)

    def vacuum(self):
        return act_on_vacuum(self)

    def divide_by_a0(self):
        return divide_by_a0(self)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({self}, order={self.order})"


def multiply(u: Element, v: Element) -> Element:
    """Normal-ordered product, truncated at the smaller known order."""
    v = _coerce_pair(u, v)
    order = min(u.order, v.order)
    return Element._raw(u.ctx, K.bilinear(u.terms, v.terms, order, K.mono_mul), order)


def graded_commutator(u: Element, v: Element) -> Element:
    """[[u, v]] = uv - (-1)^{|u||v|} vu, extended bilinearly over homogeneous parts."""
    v = _coerce_pair(u, v)
    order = min(u.order, v.order)
    return Element._raw(u.ctx, K.bilinear(u.terms, v.terms, order, K.mono_gcomm), order)


def commutator(u, v):
    v = _coerce_pair(u, v)
    return multiply(u, v) - multiply(v, u)


def anticommutator(u, v):
    v = _coerce_pair(u, v)
    return multiply(u, v) + multiply(v, u)


gcomm = graded_commutator


def act_on_vacuum(u: Element) -> Element:
    """Drop every monomial ending in a derivative or a form-derivative (u acting on 1)."""
    return Element._raw(u.ctx, {m: c for m, c in u.terms.items() if not m.annihilates_vacuum}, u.order)


def divide_by_a0(u: Element) -> Element:
    out = {}
    for m, c in u.terms.items():
        if any(code < 2 for code in c):
            raise AlgebraError("element has a nonzero a0**0 part; cannot divide by a0")
        out[m] = {code - 2: v for code, v in c.items()}
    return Element._raw(u.ctx, out, u.order - 1)


def jacobi_residual(u: Element, v: Element, w: Element) -> Element:
    """Graded Jacobi cyclic sum; zero iff the identity holds to the common order.

    The signs only see degrees mod 2, so inputs are split by parity.
    """
    total = None
    for du, uu in u.parity_components().items():
        for dv, vv in v.parity_components().items():
            for dw, ww in w.parity_components().items():
                s1 = -1 if du * dw & 1 else 1
                s2 = -1 if dv * du & 1 else 1
                s3 = -1 if dw * dv & 1 else 1
                part = (
                    s1 * gcomm(uu, gcomm(vv, ww))
                    + s2 * gcomm(vv, gcomm(ww, uu))
                    + s3 * gcomm(ww, gcomm(uu, vv))
                )
                total = part if total is None else total + part
    if total is None:
        order = min(u.order, v.order, w.order)
        return Element(u.ctx, {}, order)
    return total


def equals_up_to_order(u: Element, v: Element, k: int) -> bool:
    v = _coerce_pair(u, v)
    if k > min(u.order, v.order):
        raise OrderError(f"order {k} exceeds known order {min(u.order, v.order)}")
    diff = u - v
    return all((code >> 1) > k for c in diff.terms.values() for code in c)


# Canonical text form.


def _rational_text(q):
    return str(q)


def _monomial_factors(m):
    out = []
    for mu, e in enumerate(m.coords):
        out.extend([f"x[{mu}]"] * e)
    out.extend(f"dx[{mu}]" for mu in m.forms)
    out.extend(f"q[{mu}]" for mu in m.formderivs)
    for mu, e in enumerate(m.derivs):
        out.extend([f"del[{mu}]"] * e)
    return out


def monomial_sort_key(m):
    return (m.degree, sum(m.coords) + sum(m.derivs), m.coords, m.forms, m.formderivs, m.derivs)


def format_terms(items):
    """Join (sign-carrying rational, factor list) pairs into canonical text."""
    pieces = []
    for q, factors in items:
        neg = q < 0
        mag = -q if neg else q
        body = list(factors)
        if mag != 1 or not body:
            body.insert(0, _rational_text(mag))
        text = "*".join(body)
        if not pieces:
            pieces.append(("-" if neg else "") + text)
        else:
            pieces.append((" - " if neg else " + ") + text)
    return "".join(pieces) if pieces else "0"


def coefficient_factors(code):
    k, e = code >> 1, code & 1
    return (["i"] if e else []) + ["a0"] * k


def format_coefficient(terms):
    items = [(terms[c], coefficient_factors(c)) for c in sorted(terms)]
    return format_terms(items) if items else ""


def format_element(u: Element) -> str:
    items = []
    for m in sorted(u.terms, key=monomial_sort_key):
        c = u.terms[m]
        fac = _monomial_factors(m)
        for code in sorted(c):
            items.append((c[code], coefficient_factors(code) + fac))
    return format_terms(items)
