"""Representation-independent expressions in the generators x^_mu and xi^_mu.

Words are kept in a PBW-style basis: spatial x^'s sorted by index, then the
x^_0 power, then the one-forms in increasing index order.  Rewriting uses

    x^_0 x^_j = x^_j x^_0 + i a0 x^_j,
    xi^_mu x^_nu = x^_nu xi^_mu + sum_alpha K^alpha_{mu nu} xi^_alpha,
    xi^_mu xi^_nu = -xi^_nu xi^_mu,

with the constants K supplied by the differential algebra.
"""
from __future__ import annotations

from typing import NamedTuple

from . import _kernels as K
from ._rational import rational
from .algebra import AlgebraError, Coefficient, format_terms, coefficient_factors


class NCError(AlgebraError):
    pass


class Word(NamedTuple):
    """PBW word: exponents of x^_mu (length n) and increasing xi^ indices."""

    xexp: tuple
    forms: tuple

    @property
    def degree(self):
        return sum(self.xexp) + len(self.forms)

    @property
    def parity(self):
        return len(self.forms) & 1

    def letters(self):
        out = []
        for mu in range(1, len(self.xexp)):
            out.extend([(0, mu)] * self.xexp[mu])
        out.extend([(0, 0)] * self.xexp[0])
        out.extend((1, mu) for mu in self.forms)
        return tuple(out)


class NCAlgebra:
    """PBW normalizer for one differential algebra.

    ``xi_x`` maps ``(mu, nu)`` to ``{alpha: Coefficient}`` giving
    ``[xi^_mu, x^_nu]``.  With ``xi_x=None`` only coordinate words are allowed.
    """

    def __init__(self, n, order, xi_x=None):
        self.n = n
        self.order = order
        self.xi_x = None
        if xi_x is not None:
            self.xi_x = {key: {a: dict(c.terms) for a, c in row.items()} for key, row in xi_x.items()}
        self._memo = {}

    def compatible(self, other):
        """Same dimension, order and rewriting rules (possibly a different instance)."""
        return self is other or (self.n == other.n and self.order == other.order and self.xi_x == other.xi_x)

    def _xrank(self, mu):
        return self.n if mu == 0 else mu

    def _out_of_order(self, a, b):
        if a[0] == 0 and b[0] == 0:
            return self._xrank(a[1]) > self._xrank(b[1])
        if a[0] == 1 and b[0] == 0:
            return True
        if a[0] == 1 and b[0] == 1:
            return a[1] >= b[1]
        return False

    def word_of(self, letters):
        xexp = [0] * self.n
        forms = []
        for kind, mu in letters:
            if kind == 0:
                xexp[mu] += 1
            else:
                forms.append(mu)
        return Word(tuple(xexp), tuple(forms))

    def normalize(self, letters):
        """Letter sequence -> {Word: coded coefficient}."""
        letters = tuple(letters)
        hit = self._memo.get(letters)
        if hit is not None:
            return hit
        out = self._normalize(letters)
        self._memo[letters] = out
        return out

    def _normalize(self, seq):
        for i in range(len(seq) - 1):
            a, b = seq[i], seq[i + 1]
            if not self._out_of_order(a, b):
                continue
            head, tail = seq[:i], seq[i + 2 :]
            pieces = []
            if a[0] == 0:
                pieces.append(({0: rational(1)}, head + (b, a) + tail))
                if a[1] == 0:
                    pieces.append(({3: rational(1)}, head + (b,) + tail))
            elif b[0] == 0:
                pieces.append(({0: rational(1)}, head + (b, a) + tail))
                if self.xi_x is None:
                    raise NCError("one-form relations are not available for this algebra")
                for alpha, coeff in self.xi_x[a[1], b[1]].items():
                    pieces.append((coeff, head + ((1, alpha),) + tail))
            else:
                if a[1] == b[1]:
                    return {}
                pieces.append(({0: rational(-1)}, head + (b, a) + tail))
            acc = {}
            for coeff, s in pieces:
                for w, c in self.normalize(s).items():
                    prod = K.coeff_mul(coeff, c, self.order)
                    slot = acc.setdefault(w, {})
                    for code, v in prod.items():
                        slot[code] = slot.get(code, 0) + v
            return {w: c for w, c in K.prune(acc).items()}
        return {self.word_of(seq): {0: rational(1)}}

    # Constructors.
    def expr(self, terms, order=None):
        return NCExpression(self, terms, self.order if order is None else order)

    def one(self):
        return self.expr({Word((0,) * self.n, ()): {0: rational(1)}})

    def zero(self):
        return self.expr({})

    def scalar(self, value):
        if isinstance(value, NCExpression):
            return value
        c = Coefficient.coerce(value, self.order)
        return self.expr({Word((0,) * self.n, ()): dict(c.terms)} if c.terms else {}, min(c.order, self.order))

    def _check(self, mu):
        if not 0 <= mu < self.n:
            raise NCError(f"index {mu} out of range for n={self.n}")
        return mu

    def xhat(self, mu):
        return self.expr(self.normalize(((0, self._check(mu)),)))

    def xi(self, mu):
        return self.expr(self.normalize(((1, self._check(mu)),)))

    def word(self, letters):
        return self.expr(self.normalize(letters))


class NCExpression:
    __slots__ = ("alg", "terms", "order")

    def __init__(self, alg, terms, order):
        self.alg = alg
        self.order = order
        self.terms = {}
        for w, c in terms.items():
            c = {code: v for code, v in c.items() if v and (code >> 1) <= order}
            if c:
                self.terms[w] = c

    def _coerce(self, other):
        if not isinstance(other, NCExpression):
            other = self.alg.scalar(other)
        if not self.alg.compatible(other.alg):
            raise NCError("expressions belong to different algebras")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        out = {w: dict(c) for w, c in self.terms.items()}
        for w, c in other.terms.items():
            slot = out.setdefault(w, {})
            for code, v in c.items():
                slot[code] = slot.get(code, 0) + v
        return NCExpression(self.alg, out, min(self.order, other.order))

    __radd__ = __add__

    def __neg__(self):
        return NCExpression(self.alg, {w: {k: -v for k, v in c.items()} for w, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        order = min(self.order, other.order)
        out = {}
        for w1, c1 in self.terms.items():
            l1 = w1.letters()
            for w2, c2 in other.terms.items():
                cc = K.coeff_mul(c1, c2, order)
                if not cc:
                    continue
                for w, cw in self.alg.normalize(l1 + w2.letters()).items():
                    prod = K.coeff_mul(cc, cw, order)
                    slot = out.setdefault(w, {})
                    for code, v in prod.items():
                        slot[code] = slot.get(code, 0) + v
        return NCExpression(self.alg, out, order)

    def __rmul__(self, other):
        return self.alg.scalar(other) * self

    def __eq__(self, other):
        if not isinstance(other, NCExpression):
            return NotImplemented
        return self.alg.compatible(other.alg) and (self - other).is_zero()

    __hash__ = None

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def max_degree(self):
        return max((w.degree for w in self.terms), default=0)

    def is_pure_coordinate(self):
        return all(not w.forms for w in self.terms)

    def is_pure_form(self):
        return all(not any(w.xexp) for w in self.terms)

    def parity_components(self):
        comps = {}
        for w, c in self.terms.items():
            comps.setdefault(w.parity, {})[w] = c
        return {p: NCExpression(self.alg, t, self.order) for p, t in sorted(comps.items())}

    def __str__(self):
        return format_nc(self)

    def __repr__(self):
        return f"NCExpression({self})"


def nc_commutator(u, v):
    return u * v - v * u


def nc_anticommutator(u, v):
    return u * v + v * u


def nc_gcomm(u, v):
    total = u.alg.zero()
    for pu, uu in u.parity_components().items():
        for pv, vv in v.parity_components().items():
            total = total + (nc_anticommutator(uu, vv) if pu & pv else nc_commutator(uu, vv))
    return total


def _word_factors(w):
    return [("xhat" if kind == 0 else "xi") + f"[{mu}]" for kind, mu in w.letters()]


def format_nc(e: NCExpression) -> str:
    items = []
    for w in sorted(e.terms, key=lambda w: (w.degree, len(w.forms), w.letters())):
        c = e.terms[w]
        for code in sorted(c):
            items.append((c[code], coefficient_factors(code) + _word_factors(w)))
    return format_terms(items)
