"""Hot inner kernels: normal ordering of monomial products and truncated
coefficient products.

A monomial is a 4-tuple ``(coords, forms, formderivs, derivs)``:

* ``coords`` / ``derivs`` -- exponent tuples of length n for x_mu / del_mu,
* ``forms`` / ``formderivs`` -- strictly increasing index tuples for dx_mu / q_mu.

Coefficients are dicts ``code -> rational`` with ``code = 2*k + e`` standing
for ``a0**k * i**e`` (e in {0, 1}).  Keeping i as a parity bit means every
coefficient product is a single rational multiplication.
"""
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import NamedTuple


class Monomial(NamedTuple):
    """Canonical word: Coord-block, Form-block, FormDeriv-block, Deriv-block."""

    coords: tuple
    forms: tuple
    formderivs: tuple
    derivs: tuple

    @property
    def degree(self):
        return len(self.forms) + len(self.formderivs)

    @property
    def annihilates_vacuum(self):
        return bool(self.formderivs) or any(self.derivs)

    @property
    def deriv_only(self):
        return not any(self.coords) and not self.forms and not self.formderivs


def eta(mu):
    return -1 if mu == 0 else 1


@lru_cache(maxsize=None)
def _contractions(b, g, mu):
    """del_mu**b x_mu**g = sum over k of (weight, k) * x_mu**(g-k) del_mu**(b-k)."""
    e = eta(mu)
    return tuple((comb(b, k) * comb(g, k) * factorial(k) * e**k, k) for k in range(min(b, g) + 1))


@lru_cache(maxsize=1 << 18)
def boson_mul(alpha, beta, gamma, delta):
    """Normal-order (x^alpha del^beta)(x^gamma del^delta).

    Returns a tuple of ``(coords, derivs, weight)``.
    """
    if not any(b and g for b, g in zip(beta, gamma)):
        return ((tuple(a + g for a, g in zip(alpha, gamma)), tuple(b + d for b, d in zip(beta, delta)), 1),)
    per_index = [_contractions(b, g, mu) for mu, (b, g) in enumerate(zip(beta, gamma))]
    out = []
    for choice in product(*per_index):
        w = 1
        coords = []
        derivs = []
        for mu, (wk, k) in enumerate(choice):
            w *= wk
            coords.append(alpha[mu] + gamma[mu] - k)
            derivs.append(beta[mu] + delta[mu] - k)
        out.append((tuple(coords), tuple(derivs), w))
    return tuple(out)


def wedge(a, b):
    """Merge two strictly increasing index tuples of anticommuting symbols.

    Returns ``(sign, merged)`` or ``None`` when an index repeats.
    """
    if not a:
        return 1, b
    if not b:
        return 1, a
    if set(a) & set(b):
        return None
    inversions = sum(1 for x in a for y in b if x > y)
    return (-1 if inversions & 1 else 1), tuple(sorted(a + b))


@lru_cache(maxsize=1 << 16)
def q_times_dx(t, u):
    """Normal-order q_t dx_u (t, u increasing index tuples) as sum of sign*dx_u' q_t'."""
    terms = {(u, ()): 1}
    for idx in reversed(t):
        new = {}
        for (up, tp), s in terms.items():
            if idx in up:
                j = up.index(idx)
                key = (up[:j] + up[j + 1 :], tp)
                val = s * eta(idx) * (-1 if j & 1 else 1)
                new[key] = new.get(key, 0) + val
            if idx not in tp:
                below = sum(1 for y in tp if y < idx)
                s2 = s * (-1 if (len(up) + below) & 1 else 1)
                key = (up, tuple(sorted(tp + (idx,))))
                new[key] = new.get(key, 0) + s2
        terms = {k: v for k, v in new.items() if v}
    return tuple((up, tp, s) for (up, tp), s in terms.items())


@lru_cache(maxsize=1 << 18)
def fermi_mul(s1, t1, s2, t2):
    """Normal-order (dx_s1 q_t1)(dx_s2 q_t2) as sum of sign*dx_s q_t."""
    if not t1 or not s2:
        left = wedge(s1, s2)
        right = wedge(t1, t2)
        if left is None or right is None:
            return ()
        return ((left[1], right[1], left[0] * right[0]),)
    out = {}
    for up, tp, s in q_times_dx(t1, s2):
        left = wedge(s1, up)
        if left is None:
            continue
        right = wedge(tp, t2)
        if right is None:
            continue
        key = (left[1], right[1])
        out[key] = out.get(key, 0) + s * left[0] * right[0]
    return tuple((a, b, v) for (a, b), v in out.items() if v)


@lru_cache(maxsize=1 << 20)
def mono_mul(m1, m2):
    """Product of two canonical monomials as a tuple of ``(monomial, weight)``."""
    fermi = fermi_mul(m1[1], m1[2], m2[1], m2[2])
    if not fermi:
        return ()
    boson = boson_mul(m1[0], m1[3], m2[0], m2[3])
    return tuple(
        (Monomial(coords, forms, fderivs, derivs), wb * wf)
        for coords, derivs, wb in boson
        for forms, fderivs, wf in fermi
    )


def parity(m):
    return (len(m[1]) + len(m[2])) & 1


@lru_cache(maxsize=1 << 20)
def mono_gcomm(m1, m2):
    """Graded commutator m1 m2 - (-1)^{|m1||m2|} m2 m1 of two monomials."""
    sign = -1 if parity(m1) & parity(m2) else 1
    acc = {}
    for m, w in mono_mul(m1, m2):
        acc[m] = acc.get(m, 0) + w
    for m, w in mono_mul(m2, m1):
        acc[m] = acc.get(m, 0) - sign * w
    return tuple((m, w) for m, w in acc.items() if w)


def coeff_mul(c1, c2, order):
    """Product of two coded coefficients truncated above a0**order."""
    out = {}
    for a, x in c1.items():
        ka = a >> 1
        for b, y in c2.items():
            k = ka + (b >> 1)
            if k > order:
                continue
            v = x * y
            if a & b & 1:
                v = -v
            code = (k << 1) | ((a ^ b) & 1)
            out[code] = out.get(code, 0) + v
    return out


def min_power(c):
    return min(c) >> 1


def bilinear(u_terms, v_terms, order, mono_op):
    """Shared loop for products and graded commutators of term maps."""
    out = {}
    v_items = sorted(v_terms.items(), key=lambda kv: min_power(kv[1]))
    v_min = [min_power(c) for _, c in v_items]
    for m1, c1 in u_terms.items():
        p1 = min_power(c1)
        if p1 > order:
            continue
        for (m2, c2), p2 in zip(v_items, v_min):
            if p1 + p2 > order:
                break
            prods = mono_op(m1, m2)
            if not prods:
                continue
            cc = coeff_mul(c1, c2, order)
            if not cc:
                continue
            for m, w in prods:
                slot = out.get(m)
                if slot is None:
                    slot = out[m] = {}
                for code, val in cc.items():
                    slot[code] = slot.get(code, 0) + w * val
    return prune(out)


def prune(terms):
    out = {}
    for m, c in terms.items():
        c = {k: v for k, v in c.items() if v}
        if c:
            out[m] = c
    return out
