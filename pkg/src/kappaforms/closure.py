"""Closure detection: express [xi^_mu, x^_nu] in the constant span of a one-form basis.

The unknown structure constants are truncated series in a0 with Gaussian
rational coefficients.  Writing each as ``sum_k K_k a0**k`` turns the problem
into an exact linear system over Q(i), one equation per (monomial, a0 order).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ._rational import rational
from .algebra import Coefficient, commutator


def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gsub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _ginv(a):
    n = a[0] * a[0] + a[1] * a[1]
    return (a[0] / n, -a[1] / n)


def _nonzero(a):
    return bool(a[0]) or bool(a[1])


def _gaussian_at(c, k):
    zero = rational(0)
    return (c.get(2 * k, zero), c.get(2 * k + 1, zero))


def solve_gaussian(rows, ncols):
    """Exact Gauss-Jordan over Q(i).

    ``rows`` are lists of length ncols+1 (augmented).  Returns ``(solution,
    unique)`` or ``(None, False)`` when inconsistent; free variables are 0.
    """
    rows = [list(r) for r in rows if any(_nonzero(v) for v in r)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if _nonzero(rows[i][col])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = _ginv(rows[r][col])
        rows[r] = [_gmul(v, inv) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and _nonzero(rows[i][col]):
                f = rows[i][col]
                rows[i] = [_gsub(v, _gmul(f, w)) for v, w in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(rows)):
        if _nonzero(rows[i][ncols]):
            return None, False
    zero = (rational(0), rational(0))
    sol = [zero] * ncols
    for i, col in enumerate(pivots):
        sol[col] = rows[i][ncols]
    return sol, len(pivots) == ncols


@dataclass
class ClosureResult:
    closed: bool
    constants: dict = field(default_factory=dict)  # (mu, nu) -> {basis name: Coefficient}
    unique: bool = True
    failures: list = field(default_factory=list)

    def coefficient(self, mu, nu, name):
        return self.constants[mu, nu].get(name)


def span_coefficients(target, basis, order):
    """Solve target = sum_a K_a basis[a] with K_a constant series; None if impossible."""
    names = list(basis)
    ncols = len(names) * (order + 1)
    keys = set(target.terms)
    for b in basis.values():
        keys |= set(b.terms)
    zero = (rational(0), rational(0))
    rows = []
    for m in keys:
        tc = target.terms.get(m, {})
        bcs = [basis[nm].terms.get(m, {}) for nm in names]
        for j in range(order + 1):
            row = [zero] * (ncols + 1)
            for a, bc in enumerate(bcs):
                if not bc:
                    continue
                for k in range(j + 1):
                    row[a * (order + 1) + k] = _gaussian_at(bc, j - k)
            row[ncols] = _gaussian_at(tc, j)
            rows.append(row)
    sol, unique = solve_gaussian(rows, ncols)
    if sol is None:
        return None, False
    out = {}
    for a, nm in enumerate(names):
        terms = {}
        for k in range(order + 1):
            re, im = sol[a * (order + 1) + k]
            if re:
                terms[2 * k] = re
            if im:
                terms[2 * k + 1] = im
        c = Coefficient(terms, order)
        if not c.is_zero():
            out[nm] = c
    return out, unique


def closure_detect(r, include_thetap=None) -> ClosureResult:
    """Structure constants of [xi^_mu, x^_nu] over span{xi^} (plus thetap for Sitarz)."""
    if include_thetap is None:
        include_thetap = False
    basis = {alpha: e for alpha, e in enumerate(r.xi)}
    if include_thetap:
        if r.thetap is None:
            raise ValueError("thetap is only defined for the Sitarz family")
        basis["thetap"] = r.thetap
    result = ClosureResult(closed=True)
    for mu in range(r.n):
        for nu in range(r.n):
            target = commutator(r.xi[mu], r.xhat[nu])
            consts, unique = span_coefficients(target, basis, min(target.order, r.order))
            if consts is None:
                result.closed = False
                result.failures.append((mu, nu))
                continue
            result.unique &= unique
            result.constants[mu, nu] = consts
    return result
