"""Identity checks over realizations, reported as CheckReports.

Every check is an exact equality at the truncation order.  ``finding.*``
checks record experimental outcomes and never affect the suite verdict.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field

from ._rational import rational, to_fraction
from .action import ActionEngine, lorentz_coproduct
from .algebra import Coefficient, anticommutator, commutator, gcomm, jacobi_residual
from .closure import closure_detect
from .nc import Word
from .realizations import C_TEST_SET, FAMILIES, MUTATIONS, build_realization
from .series import shift_power

PASS, FAIL = "pass", "fail"
DEFAULT_SAMPLES = 200
JACOBI_MAX_COST = 2000


def _eta(mu):
    return -1 if mu == 0 else 1


def _eta2(mu, nu):
    return _eta(mu) if mu == nu else 0


def _delta(a, b):
    return 1 if a == b else 0


def format_c(c):
    f = to_fraction(rational(c))
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


@dataclass
class CheckReport:
    check_id: str
    params: dict
    status: str
    residual: object = None
    instance: str = ""
    paper_anchor: str = ""
    note: str = ""

    @property
    def passed(self):
        return self.status == PASS

    @property
    def is_finding(self):
        return self.check_id.startswith("finding.")

    def residual_text(self):
        parts = []
        if self.instance:
            parts.append(self.instance)
        if self.residual is not None:
            parts.append(str(self.residual))
        text = ": ".join(parts)
        if self.note:
            text = f"{text} ({self.note})" if text else self.note
        return text or None

    def to_record(self):
        return {
            "check_id": self.check_id,
            "params": self.params,
            "status": self.status,
            "residual": self.residual_text(),
            "paper_anchor": self.paper_anchor,
        }

    def sort_key(self):
        return self.check_id, json.dumps(self.params, sort_keys=True)

    def to_text(self):
        p = self.params
        head = f"{self.status.upper():4} {self.check_id} [n={p['n']} N={p['N']} family={p['family']} c={p['c']}]"
        res = self.residual_text()
        return f"{head} -- {res}" if res and (not self.passed or self.note) else head


class _Check:
    """Accumulates cases; the first failing case becomes the report residual."""

    def __init__(self, check_id, r, anchor, **params):
        self.check_id = check_id
        self.anchor = anchor
        self.params = {"n": r.n, "N": r.order, "family": r.family, "c": format_c(r.c)}
        if r.mutation:
            self.params["mutation"] = r.mutation
        self.params.update(params)
        self.order = r.order
        self.failure = None
        self.cases = 0

    def zero(self, label, residual):
        self.cases += 1
        self.order = min(self.order, residual.order)
        if self.failure is None and not residual.is_zero():
            self.failure = (label, residual)
        return residual.is_zero()

    def equal(self, label, lhs, rhs):
        return self.zero(label, lhs - rhs)

    def truth(self, label, ok, residual=None):
        self.cases += 1
        if self.failure is None and not ok:
            self.failure = (label, residual)
        return ok

    def report(self, note=""):
        params = dict(self.params, effective_order=self.order)
        if self.failure is None:
            return CheckReport(self.check_id, params, PASS, paper_anchor=self.anchor, note=note)
        label, res = self.failure
        return CheckReport(self.check_id, params, FAIL, res, label, self.anchor, note)


def _spatial(r):
    return range(1, r.n)


def _pairs(n):
    return [(mu, nu) for mu in range(n) for nu in range(mu)]


# Realization-level checks.

def check_classical_limit(r):
    ch = _Check(f"{r.family}.classical_limit", r, "classical limit of the realization")
    ctx = r.ctx
    for mu in range(r.n):
        ch.equal(f"xhat[{mu}]", r.xhat[mu].classical(), ctx.x(mu))
        ch.equal(f"xi[{mu}]", r.xi[mu].classical(), ctx.dx(mu))
    classical_d = -(ctx.dx(0) * ctx.d(0))
    for k in _spatial(r):
        classical_d = classical_d + ctx.dx(k) * ctx.d(k)
    ch.equal("d", r.d.classical(), classical_d)
    ch.equal("Z", r.Z.classical(), ctx.one())
    if r.thetap is not None:
        ch.equal("thetap", r.thetap.classical(), ctx.dx(0))
    for (mu, nu), m in r.M.items():
        ch.equal(f"M[{mu},{nu}]", m.classical(), ctx.x(mu) * ctx.d(nu) - ctx.x(nu) * ctx.d(mu))
    return ch.report()


def check_kappa_minkowski(r):
    ch = _Check(f"{r.family}.kappa_minkowski", r, "kappa-Minkowski Lie algebra type commutation relations")
    ia0 = r.ctx.i * r.ctx.a0
    for j in _spatial(r):
        ch.equal(f"[xhat[0],xhat[{j}]]", commutator(r.xhat[0], r.xhat[j]), ia0 * r.xhat[j])
        for i in range(1, j):
            ch.zero(f"[xhat[{i}],xhat[{j}]]", commutator(r.xhat[i], r.xhat[j]))
    return ch.report()


def check_shift_law(r):
    ch = _Check(f"{r.family}.shift_law", r, "conjugation of the coordinates by the shift operator Z")
    ia0 = r.ctx.i * r.ctx.a0
    ch.equal("Z*Zinv", r.Z * r.Zinv, r.ctx.one())
    for mu in range(r.n):
        rhs = r.xhat[mu] + (ia0 if mu == 0 else 0)
        ch.equal(f"Z*xhat[{mu}]*Zinv", r.Z * r.xhat[mu] * r.Zinv, rhs)
    return ch.report()


def expected_one_forms(r):
    """Closed forms of xi^_mu (and thetap) for the realization's family."""
    ctx, c = r.ctx, r.c
    ia0 = ctx.i * ctx.a0
    spatial = ctx.zero()
    for k in _spatial(r):
        spatial = spatial + ctx.dx(k) * ctx.d(k)
    out = {}
    if r.family == "sitarz":
        out["xi[0]"] = ctx.dx(0) * (r.Zinv - ia0 * ctx.d(0)) + ia0 * spatial * r.Z
        for k in _spatial(r):
            out[f"xi[{k}]"] = ctx.dx(k) - ia0 * ctx.dx(0) * ctx.d(k)
        out["thetap"] = ctx.dx(0) * r.Zinv
        return out
    zc = shift_power(c, ctx)
    if r.family == "d1":
        out["xi[0]"] = ctx.dx(0) * zc
        spatial_power = shift_power(-1, ctx)
    else:
        spatial_power = shift_power(c - 1, ctx)
        out["xi[0]"] = ctx.dx(0) * zc + ia0 * c * spatial * spatial_power
    for k in _spatial(r):
        out[f"xi[{k}]"] = ctx.dx(k) * spatial_power
    return out


def check_one_forms(r):
    ch = _Check(f"{r.family}.one_forms", r, "one-forms from the graded commutator with the exterior derivative")
    table = r.table
    for name, expected in expected_one_forms(r).items():
        ch.equal(name, table[name], expected)
    if r.theta is not None:
        ch.equal("theta", r.theta, r.xi[0] - r.thetap)
    return ch.report()


def check_sitarz_algebra(r):
    ch = _Check("sitarz.sitarz_algebra", r, "five-dimensional differential algebra with the extra form thetap")
    ia0 = r.ctx.i * r.ctx.a0
    xi, x, tp = r.xi, r.xhat, r.thetap
    ch.equal("thetap = dx[0]*Zinv", tp, r.ctx.dx(0) * r.Zinv)
    ch.equal("[xi[0],xhat[0]]", commutator(xi[0], x[0]), -ia0 * tp + ia0 * xi[0])
    ch.equal("[thetap,xhat[0]]", commutator(tp, x[0]), -ia0 * tp)
    for j in _spatial(r):
        ch.equal(f"[xi[0],xhat[{j}]]", commutator(xi[0], x[j]), ia0 * xi[j])
        ch.zero(f"[xi[{j}],xhat[0]]", commutator(xi[j], x[0]))
        ch.zero(f"[thetap,xhat[{j}]]", commutator(tp, x[j]))
        for i in _spatial(r):
            ch.equal(f"[xi[{i}],xhat[{j}]]", commutator(xi[i], x[j]), -_delta(i, j) * ia0 * tp)
    return ch.report()


def expected_structure_constants(r):
    """[xi^_mu, x^_nu] = sum K^alpha xi^_alpha for the one-parameter families."""
    c = r.c
    ia0 = Coefficient({3: rational(1)}, r.order)
    out = {(mu, nu): {} for mu in range(r.n) for nu in range(r.n)}
    if r.family == "d1":
        out[0, 0] = {0: ia0 * c}
        for k in _spatial(r):
            out[k, 0] = {k: -ia0}
    elif r.family == "d2":
        for mu in range(r.n):
            out[0, mu] = {mu: ia0 * c}
        for k in _spatial(r):
            out[k, 0] = {k: ia0 * (c - 1)}
    elif r.family == "sitarz":
        out[0, 0] = {0: ia0, "thetap": -ia0}
        for j in _spatial(r):
            out[0, j] = {j: ia0}
            for i in _spatial(r):
                if i == j:
                    out[i, j] = {"thetap": -ia0}
    return {k: {a: v for a, v in row.items() if not v.is_zero()} for k, row in out.items()}


def check_family_relations(r):
    ch = _Check(f"{r.family}.family_relations", r, f"commutation relations of the differential algebra {r.family}")
    for (mu, nu), row in expected_structure_constants(r).items():
        rhs = r.ctx.zero()
        for alpha, k in row.items():
            rhs = rhs + k * r.xi[alpha]
        ch.equal(f"[xi[{mu}],xhat[{nu}]]", commutator(r.xi[mu], r.xhat[nu]), rhs)
    return ch.report()


def check_closure(r):
    ch = _Check(f"{r.family}.closure", r, "closure of the differential algebra (constant structure constants)")
    res = closure_detect(r)
    expected = expected_structure_constants(r)
    if r.family == "sitarz":
        ch.truth("span{xi} must not close", not res.closed)
        ext = closure_detect(r, include_thetap=True)
        ch.truth("span{xi, thetap} must close", ext.closed)
        if ext.closed:
            for key, row in expected.items():
                ch.truth(f"K{key}", ext.constants[key] == row)
        return ch.report(note="not closed over span{xi}; closed with thetap")
    ch.truth("closed over span{xi}", res.closed)
    if res.closed:
        ch.truth("unique solution", res.unique)
        for key, row in expected.items():
            ch.truth(f"K{key} = {row}", res.constants[key] == row)
    return ch.report()


def compatibility_residuals(r):
    """Residuals of the printed and index-corrected compatibility conditions."""
    ia0 = r.ctx.i * r.ctx.a0
    a = lambda mu: ia0 if mu == 0 else 0  # noqa: E731 - i*a_mu
    printed, corrected = [], []
    for mu in range(r.n):
        for nu in range(r.n):
            lhs = commutator(r.xi[mu], r.xhat[nu]) - commutator(r.xi[nu], r.xhat[mu])
            printed.append(((mu, nu), lhs - (a(mu) * r.xhat[nu] - a(nu) * r.xi[mu])))
            corrected.append(((mu, nu), lhs - (a(mu) * r.xi[nu] - a(nu) * r.xi[mu])))
    return printed, corrected


def check_compatibility(r):
    """Exactly one of the two readings has to hold; also returns the finding."""
    printed, corrected = compatibility_residuals(r)
    bad_printed = [(k, v) for k, v in printed if not v.is_zero()]
    bad_corrected = [(k, v) for k, v in corrected if not v.is_zero()]
    ch = _Check(f"{r.family}.compatibility", r, "compatibility condition between one-forms and coordinates")
    ch.truth("exactly one variant holds", bool(bad_printed) != bool(bad_corrected),
             (bad_corrected or bad_printed or [(None, None)])[0][1])
    holds = "corrected" if not bad_corrected else ("printed" if not bad_printed else "neither")
    main = ch.report(note=f"{holds} variant holds")
    fd = _Check("finding.compatibility", r, "compatibility condition, printed form i(a_mu x^_nu - a_nu xi^_mu)")
    for k, v in printed:
        fd.zero(f"printed form at (mu,nu)={k}", v)
    fd.order = min(fd.order, main.params["effective_order"])
    finding = fd.report(note=f"{holds} variant holds")
    return [main, finding]


def check_heisenberg(r):
    ch = _Check(f"{r.family}.heisenberg", r, "deformed Heisenberg algebra with p = -i del")
    ctx, p, x = r.ctx, r.p, r.xhat
    i, ia0 = ctx.i, ctx.i * ctx.a0
    for mu in range(r.n):
        for nu in range(mu):
            ch.zero(f"[p[{mu}],p[{nu}]]", commutator(p[mu], p[nu]))
        ch.equal(f"[p[0],xhat[{mu}]]", commutator(p[0], x[mu]), i * _delta(0, mu))
    for k in _spatial(r):
        ch.equal(f"[p[{k}],xhat[0]]", commutator(p[k], x[0]), ia0 * p[k])
        for j in _spatial(r):
            ch.equal(f"[p[{k}],xhat[{j}]]", commutator(p[k], x[j]), -i * _delta(k, j))
    return ch.report()


def _lorentz_rhs(gens, mu, nu, lam, rho):
    g = lambda a, b: gens[a, b]  # noqa: E731
    return (_eta2(nu, lam) * g(mu, rho) - _eta2(mu, lam) * g(nu, rho)
            - _eta2(nu, rho) * g(mu, lam) + _eta2(mu, rho) * g(nu, lam))


def check_lorentz_closure(r):
    ch = _Check("lorentz.closure", r, "undeformed so(1,n-1) relations for M, M1 and Mt, and [M, M1] = 0")
    pairs = _pairs(r.n)
    for name in ("M", "M1", "Mt"):
        gens = getattr(r, name)
        for (mu, nu), (lam, rho) in itertools.product(pairs, repeat=2):
            ch.equal(f"[{name}[{mu},{nu}],{name}[{lam},{rho}]]",
                     commutator(gens[mu, nu], gens[lam, rho]), _lorentz_rhs(gens, mu, nu, lam, rho))
    for (mu, nu), (lam, rho) in itertools.product(pairs, repeat=2):
        ch.zero(f"[M[{mu},{nu}],M1[{lam},{rho}]]", commutator(r.M[mu, nu], r.M1[lam, rho]))
    for mu in range(r.n):
        for nu in range(r.n):
            ch.equal(f"M[{mu},{nu}] antisymmetric", r.M[mu, nu], -r.M[nu, mu])
    return ch.report()


def check_cross_relations(r):
    ch = _Check("lorentz.cross_relations", r, "commutators of Lorentz generators with kappa-Minkowski coordinates")
    ia0 = r.ctx.i * r.ctx.a0
    M, x = r.M, r.xhat
    for i in _spatial(r):
        ch.equal(f"[M[{i},0],xhat[0]]", commutator(M[i, 0], x[0]), -x[i] + ia0 * M[i, 0])
        for k in _spatial(r):
            ch.equal(f"[M[{i},0],xhat[{k}]]", commutator(M[i, 0], x[k]), -_delta(i, k) * x[0] + ia0 * M[i, k])
        for j in _spatial(r):
            if i == j:
                continue
            ch.zero(f"[M[{i},{j}],xhat[0]]", commutator(M[i, j], x[0]))
            for k in _spatial(r):
                ch.equal(f"[M[{i},{j}],xhat[{k}]]", commutator(M[i, j], x[k]),
                         _delta(j, k) * x[i] - _delta(i, k) * x[j])
    return ch.report()


def check_phi_identity(r):
    ch = _Check("finding.phi_identity", r, "[M, xi^] = [x^_mu, xi^]Phi_nu - [x^_nu, xi^]Phi_mu")
    for mu, nu in _pairs(r.n):
        for lam in range(r.n):
            lhs = commutator(r.M[mu, nu], r.xi[lam])
            rhs = commutator(r.xhat[mu], r.xi[lam]) * r.Phi[nu] - commutator(r.xhat[nu], r.xi[lam]) * r.Phi[mu]
            ch.equal(f"(mu,nu,lambda)=({mu},{nu},{lam})", lhs, rhs)
    note = "holds" if ch.failure is None else "does not hold"
    for mu, phi in enumerate(r.Phi):
        ch.truth(f"Phi[{mu}] has no constant term", all(any(m.derivs) for m in phi.terms))
    return ch.report(note=f"identity {note} for family={r.family} c={format_c(r.c)}")


def _words(n, max_len):
    for length in range(1, max_len + 1):
        yield from itertools.product(range(n), repeat=length)


def check_form_properties(r, max_degree=3):
    ch = _Check(f"{r.family}.form_properties", r, "undeformed Leibniz rule, closed and anticommuting one-forms")
    realized = {(): r.ctx.one()}
    for w in _words(r.n, max_degree):
        realized[w] = realized[w[:-1]] * r.xhat[w[-1]]
    dw = {w: gcomm(r.d, e) for w, e in realized.items() if w}
    for w in dw:
        for cut in range(1, len(w)):
            f, g = w[:cut], w[cut:]
            ch.equal(f"Leibniz f={f} g={g}", dw[w], dw[f] * realized[g] + realized[f] * dw[g])
    for mu in range(r.n):
        ch.zero(f"[[d,xi[{mu}]]]", gcomm(r.d, r.xi[mu]))
        for nu in range(mu + 1):
            ch.zero(f"{{xi[{mu}],xi[{nu}]}}", anticommutator(r.xi[mu], r.xi[nu]))
    return ch.report()


def generator_pool(r):
    """Named generators entering the Jacobi suite."""
    pool = [(f"xhat[{mu}]", e) for mu, e in enumerate(r.xhat)]
    pool += [(f"xi[{mu}]", e) for mu, e in enumerate(r.xi)]
    if r.thetap is not None:
        pool.append(("thetap", r.thetap))
    for name in ("M", "Mt"):
        gens = getattr(r, name)
        pool += [(f"{name}[{mu},{nu}]", gens[mu, nu]) for mu, nu in _pairs(r.n) if gens]
    pool += [(f"p[{mu}]", e) for mu, e in enumerate(r.p)]
    return pool


def _jacobi_from_cache(u, v, w, cache, names):
    # graded Jacobi sum reusing cached inner commutators
    pu, pv, pw = (names[k][1] for k in (u, v, w))
    inner = lambda a, b: cache[a, b] if (a, b) in cache else _flip(cache[b, a], names[a][1], names[b][1])  # noqa: E731
    s = lambda p, q: -1 if p & q else 1  # noqa: E731
    A, B, C = names[u][0], names[v][0], names[w][0]
    return (s(pu, pw) * gcomm(A, inner(v, w)) + s(pv, pu) * gcomm(B, inner(w, u))
            + s(pw, pv) * gcomm(C, inner(u, v)))


def _flip(e, pa, pb):
    return e if pa & pb else -e


def _parity(e):
    degs = e.degrees()
    return (next(iter(degs)) & 1) if degs else 0


def jacobi_suite(r, samples=DEFAULT_SAMPLES, seed=0, max_cost=JACOBI_MAX_COST):
    """All generator triples, then ``samples`` seeded random triples of products.

    Random members are products of 1-3 pool generators; triples whose term
    count product exceeds ``max_cost`` are redrawn to keep the run interactive.
    """
    ch = _Check(f"{r.family}.jacobi", r, "graded Jacobi identities", seed=seed, samples=samples, max_cost=max_cost)
    pool = generator_pool(r)
    names = [(e, _parity(e)) for _, e in pool]
    cache = {}
    for a, b in itertools.combinations_with_replacement(range(len(pool)), 2):
        cache[a, b] = gcomm(names[a][0], names[b][0])
    for u, v, w in itertools.combinations_with_replacement(range(len(pool)), 3):
        ch.zero(f"generators ({pool[u][0]}, {pool[v][0]}, {pool[w][0]})", _jacobi_from_cache(u, v, w, cache, names))
    rng = random.Random(seed)

    def sample():
        k = rng.randint(1, 3)
        picks = [rng.randrange(len(pool)) for _ in range(k)]
        e = r.ctx.one()
        for idx in picks:
            e = e * pool[idx][1]
        return "*".join(pool[idx][0] for idx in picks), e

    done = redrawn = 0
    while done < samples:
        (lu, u), (lv, v), (lw, w) = sample(), sample(), sample()
        if u.is_zero() or v.is_zero() or w.is_zero() or len(u) * len(v) * len(w) > max_cost:
            redrawn += 1
            continue
        ch.zero(f"random ({lu}, {lv}, {lw})", jacobi_residual(u, v, w))
        done += 1
    return ch.report(note=f"{ch.cases - samples} generator triples, {samples} random triples, {redrawn} redrawn")


# Action checks.

def _engine(r, engine=None):
    return engine if engine is not None else ActionEngine(r)


def check_action_coordinates(r, engine=None):
    E = _engine(r, engine)
    ch = _Check("actions.coordinates", r, "Lorentz action on kappa-Minkowski coordinates")
    x = E.alg.xhat
    for mu in range(r.n):
        for nu in range(r.n):
            if mu == nu:
                continue
            for lam in range(r.n):
                rhs = _eta2(nu, lam) * x(mu) - _eta2(mu, lam) * x(nu)
                for gen in ("M", "Mt"):
                    ch.equal(f"{gen}[{mu},{nu}] |> xhat[{lam}]", E.lorentz_act((gen, mu, nu), x(lam)), rhs)
    return ch.report()


def cross_relation_action(E, gen, word):
    """M |> word from the abstract cross relations alone (independent of the engine).

    Uses [M, x^ w] = [M, x^] w + x^ [M, w] with [M, x^] = X + i a0 M' and
    M' |> 1 = 0, recursing on the word letters.
    """
    alg = E.alg
    ia0 = Coefficient({3: rational(1)}, alg.order)
    x = alg.xhat
    _, mu, nu = gen
    if mu == nu or not word:
        return alg.zero()
    if mu == 0:
        return -cross_relation_action(E, ("M", nu, mu), word)
    head, tail = word[0], word[1:]
    rest = alg.word(tuple((0, t) for t in tail)) if tail else alg.one()
    if nu == 0:
        if head == 0:
            plain = -x(mu)
            shifted = ("M", mu, 0)
        else:
            plain = -_delta(mu, head) * x(0)
            shifted = ("M", mu, head)
    else:
        plain = (_delta(nu, head) * x(mu) - _delta(mu, head) * x(nu)) if head else alg.zero()
        shifted = None
    out = plain * rest + x(head) * cross_relation_action(E, gen, tail)
    if shifted is not None:
        out = out + ia0 * cross_relation_action(E, shifted, tail)
    return out


def printed_order2(E, i, j, k, l):
    """The six displayed order-two results, in their printed form."""
    alg = E.alg
    x = alg.xhat
    ia0 = Coefficient({3: rational(1)}, alg.order)
    d = _delta
    out = {}
    if i:
        out["M_i0 |> x0 xk"] = (("M", i, 0), (0, k), -(x(i) * x(k)) - ia0 * d(i, k) * x(0) - d(i, k) * x(0) * x(0))
        out["M_i0 |> xk x0"] = (("M", i, 0), (k, 0), -(x(k) * x(i)) - d(i, k) * x(0) * x(0))
        out["M_i0 |> xk xl"] = (("M", i, 0), (k, l), d(i, k) * x(0) * x(l) - d(i, l) * x(k) * x(0)
                                + ia0 * (d(k, l) * x(i) - d(i, l) * x(k)))
    if i and j and i != j:
        out["M_ij |> x0 xk"] = (("M", i, j), (0, k), d(j, k) * x(0) * x(i) - d(i, k) * x(0) * x(j))
        out["M_ij |> xk x0"] = (("M", i, j), (k, 0), d(j, k) * x(i) * x(0) - d(i, k) * x(j) * x(0))
        out["M_ij |> xk xl"] = (("M", i, j), (k, l), d(j, k) * x(i) * x(l) - d(i, k) * x(j) * x(l)
                                + d(j, k) * x(k) * x(i) - d(i, l) * x(k) * x(j))
    return out


def corrected_order2(E, i, j, k, l):
    """Printed lines with the two index/sign repairs applied."""
    alg = E.alg
    x = alg.xhat
    ia0 = Coefficient({3: rational(1)}, alg.order)
    d = _delta
    out = printed_order2(E, i, j, k, l)
    if i:
        out["M_i0 |> xk xl"] = (("M", i, 0), (k, l), -d(i, k) * x(0) * x(l) - d(i, l) * x(k) * x(0)
                                + ia0 * (d(k, l) * x(i) - d(i, l) * x(k)))
    if i and j and i != j:
        out["M_ij |> xk xl"] = (("M", i, j), (k, l), d(j, k) * x(i) * x(l) - d(i, k) * x(j) * x(l)
                                + d(j, l) * x(k) * x(i) - d(i, l) * x(k) * x(j))
    return out


def _spatial_quads(n):
    sp = range(1, n)
    return itertools.product(sp, sp, sp, sp)


def _word_expr(E, word):
    return E.alg.word(tuple((0, t) for t in word))


def check_action_order2(r, engine=None):
    """Engine action on every degree-two word versus the cross-relation oracle."""
    E = _engine(r, engine)
    ch = _Check("actions.order2", r, "Lorentz action on monomials of order two")
    for mu in range(r.n):
        for nu in range(r.n):
            if mu == nu:
                continue
            for word in itertools.product(range(r.n), repeat=2):
                gen = ("M", mu, nu)
                got = E.lorentz_act(gen, _word_expr(E, word))
                ch.equal(f"M[{mu},{nu}] |> {word}", got, cross_relation_action(E, gen, word))
    for i, j, k, l in _spatial_quads(r.n):
        for label, (gen, word, rhs) in corrected_order2(E, i, j, k, l).items():
            ch.equal(f"{label} (i,j,k,l)=({i},{j},{k},{l})", E.lorentz_act(gen, _word_expr(E, word)), rhs)
    return ch.report()


def order2_printed_status(r, engine=None):
    """Per printed line: does it match the engine for every index choice?"""
    E = _engine(r, engine)
    status, first = {}, {}
    for i, j, k, l in _spatial_quads(r.n):
        for label, (gen, word, rhs) in printed_order2(E, i, j, k, l).items():
            res = E.lorentz_act(gen, _word_expr(E, word)) - rhs
            ok = res.is_zero()
            status[label] = status.get(label, True) and ok
            if not ok and label not in first:
                first[label] = ((i, j, k, l), res)
    return status, first


def check_order2_printed(r, engine=None):
    status, first = order2_printed_status(r, engine)
    ch = _Check("finding.order2_printed", r, "printed order-two action list")
    for label, ok in status.items():
        idx, res = first.get(label, (None, None))
        ch.truth(f"{label} at (i,j,k,l)={idx}", ok, res)
    bad = sorted(k for k, v in status.items() if not v)
    return ch.report(note="printed lines differing from the computed action: " + (", ".join(bad) or "none"))


def check_action_round_trip(r, engine=None, max_x=3, max_forms=2):
    E = _engine(r, engine)
    ch = _Check("actions.round_trip", r, "symbol and unrealize maps are inverse on PBW words")
    alg = E.alg
    for deg in range(max_x + 1):
        for xexp in itertools.product(range(deg + 1), repeat=r.n):
            if sum(xexp) != deg:
                continue
            for nf in range(max_forms + 1):
                for forms in itertools.combinations(range(r.n), nf):
                    w = alg.expr({Word(xexp, forms): {0: rational(1)}})
                    ch.equal(f"word {xexp} {forms}", E.unrealize(E.symbol_of(w), max_x + max_forms), w)
    return ch.report()


def check_action_consistency(r, engine=None):
    """Acting on x^_0 x^_k and on its rewritten form x^_k x^_0 + i a0 x^_k agrees."""
    E = _engine(r, engine)
    ch = _Check("actions.consistency", r, "action respects the kappa-Minkowski relations")
    x = E.alg.xhat
    ia0 = Coefficient({3: rational(1)}, r.order)
    for mu in range(r.n):
        for nu in range(r.n):
            if mu == nu:
                continue
            for k in _spatial(r):
                gen = ("M", mu, nu)
                a = E.lorentz_act(gen, E.alg.word(((0, 0), (0, k))))
                b = E.lorentz_act(gen, E.alg.word(((0, k), (0, 0)))) + ia0 * E.lorentz_act(gen, x(k))
                ch.equal(f"M[{mu},{nu}] on x0 x{k}", a, b)
    return ch.report()


def check_coproduct(r, engine=None):
    E = _engine(r, engine)
    ch = _Check("coproduct.degree2", r, "action through the coproduct agrees with the commutator action")
    n = r.n
    for mu in range(n):
        for nu in range(n):
            if mu == nu:
                continue
            for lam, rho in itertools.product(range(n), repeat=2):
                via = E.coproduct_act_deg2(mu, nu, lam, rho)
                direct = E.lorentz_act(("M", mu, nu), E.alg.xhat(lam) * E.alg.xhat(rho))
                ch.equal(f"M[{mu},{nu}] on xhat[{lam}]*xhat[{rho}]", via, direct)
    rule = lorentz_coproduct(1, 0, n, r.order)
    ch.truth("M_i0 has the shift leg", any(leg[1] == ("shift",) for leg in rule.legs))
    return ch.report()


def check_leibniz_like(r, engine=None):
    E = _engine(r, engine)
    ch = _Check("actions.leibniz_like", r, "Leibniz-like rule for Mt on products f1(x^) f2(xi^)")
    alg = E.alg
    f1s = [((), alg.one())] + [((lam,), alg.xhat(lam)) for lam in range(r.n)]
    f1s += [((a, b), alg.xhat(a) * alg.xhat(b)) for a in range(r.n) for b in range(r.n) if a <= b]
    f2s = [((), alg.one())] + [((rho,), alg.xi(rho)) for rho in range(r.n)]
    f2s += [((a, b), alg.xi(a) * alg.xi(b)) for a, b in itertools.combinations(range(r.n), 2)]
    x, xi = alg.xhat, alg.xi
    for mu, nu in _pairs(r.n):
        mt, m, m1 = ("Mt", mu, nu), ("M", mu, nu), ("M1", mu, nu)
        m_on = {k: E.lorentz_act(m, f) for k, f in f1s}
        m1_on = {k: E.lorentz_act(m1, f) for k, f in f2s}
        for (k1, f1), (k2, f2) in itertools.product(f1s, f2s):
            ch.equal(f"Mt[{mu},{nu}] on x{k1} xi{k2}", E.lorentz_act(mt, f1 * f2), m_on[k1] * f2 + f1 * m1_on[k2])
        mt_on = {k: E.lorentz_act(mt, f) for k, f in f2s if len(k) == 1}
        for a in range(r.n):
            for b in range(r.n):
                ch.equal(f"Mt[{mu},{nu}] on xi[{a}]*xi[{b}]", E.lorentz_act(mt, xi(a) * xi(b)),
                         mt_on[a,] * xi(b) + xi(a) * mt_on[b,])
        for lam in range(r.n):
            for rho in range(r.n):
                rhs = ((_eta2(nu, lam) * x(mu) - _eta2(mu, lam) * x(nu)) * xi(rho)
                       + x(lam) * (_eta2(nu, rho) * xi(mu) - _eta2(mu, rho) * xi(nu)))
                ch.equal(f"Mt[{mu},{nu}] on xhat[{lam}]*xi[{rho}]", E.lorentz_act(mt, x(lam) * xi(rho)), rhs)
                if mu != nu:
                    ch.equal(f"Mt[{nu},{mu}] on xhat[{lam}]*xi[{rho}]",
                             E.lorentz_act(("Mt", nu, mu), x(lam) * xi(rho)), -rhs)
    return ch.report()


def check_covariance_on_forms(r, engine=None):
    """Mt is covariant on constant one-forms; plain M reproduces the known mismatch."""
    E = _engine(r, engine)
    ch = _Check("actions.covariance", r, "Lorentz covariance of the action on constant one-forms")
    wit = _Check("actions.covariance_plain_witness", r, "plain M action is not covariant on one-forms")
    x, xi = E.alg.xhat, E.alg.xi
    for mu in range(r.n):
        for nu in range(r.n):
            if mu == nu:
                continue
            for lam in range(r.n):
                expected = _eta2(nu, lam) * xi(mu) - _eta2(mu, lam) * xi(nu)
                mt_xi = E.lorentz_act(("Mt", mu, nu), xi(lam))
                ch.equal(f"Mt[{mu},{nu}] |> xi[{lam}] = d(Mt |> xhat)", mt_xi, E.exterior(E.lorentz_act(("Mt", mu, nu), x(lam))))
                ch.equal(f"Mt[{mu},{nu}] |> xi[{lam}] vector-like", mt_xi, expected)
                m_xi = E.lorentz_act(("M", mu, nu), xi(lam))
                d_side = E.exterior(E.lorentz_act(("M", mu, nu), x(lam)))
                wit.zero(f"M[{mu},{nu}] |> xi[{lam}] = 0", m_xi)
                wit.equal(f"d(M[{mu},{nu}] |> xhat[{lam}])", d_side, expected)
                mismatch = not (m_xi - d_side).is_zero()
                wit.truth(f"mismatch at ({mu},{nu},{lam})", mismatch == (not expected.is_zero()))
    return [ch.report(), wit.report(note="expected mismatch reproduced" if wit.failure is None else "")]


# Suites.

def realization_checks(r):
    reports = [check_classical_limit(r), check_kappa_minkowski(r), check_shift_law(r), check_one_forms(r),
               check_closure(r), check_form_properties(r)]
    reports += check_compatibility(r)
    if r.family == "sitarz":
        reports.append(check_sitarz_algebra(r))
    else:
        reports += [check_family_relations(r), check_heisenberg(r)]
    return reports


def lorentz_checks(r):
    return [check_lorentz_closure(r), check_cross_relations(r)]


def action_checks(r, engine=None):
    E = _engine(r, engine)
    out = [check_action_coordinates(r, E), check_action_order2(r, E), check_order2_printed(r, E),
           check_action_round_trip(r, E), check_action_consistency(r, E), check_leibniz_like(r, E)]
    out += check_covariance_on_forms(r, E)
    return out


def phi_checks(n, order, cs=C_TEST_SET):
    return [check_phi_identity(build_realization(n, order, fam, c)) for fam in ("d1", "d2") for c in cs]


def mutation_suite(r):
    """Checks that can see a mutation of ``r``; errors count as failures."""
    suite = [check_kappa_minkowski, check_shift_law, check_one_forms, check_classical_limit]
    if r.family == "sitarz":
        suite.append(check_sitarz_algebra)
    else:
        suite += [check_family_relations, check_heisenberg, check_lorentz_closure, check_cross_relations]
    return suite


def check_sensitivity(n=4, order=6, mutations=None):
    reports = []
    for name in mutations or sorted(MUTATIONS):
        family, desc = MUTATIONS[name]
        r = build_realization(n, order, family, 1, mutation=name)
        caught = None
        for fn in mutation_suite(r):
            rep = run_safely(fn, r)
            if not rep.passed:
                caught = rep
                break
        ch = _Check(f"sensitivity.{name}", r, f"negative control: {desc}")
        ch.truth("some check must fail", caught is not None)
        reports.append(ch.report(note=f"caught by {caught.check_id}" if caught else "not caught"))
    return reports


def prefix_mismatches(lo, hi):
    """Table entries of ``hi`` whose truncation differs from ``lo``."""
    bad = []
    for name, e in lo.table.items():
        if e.terms != hi.table[name].recast(lo.ctx).terms:
            bad.append(name)
    return bad


def stability_suite(r):
    """Everything except the sampled Jacobi suite."""
    reports = list(realization_checks(r))
    if r.has_lorentz:
        reports += lorentz_checks(r) + action_checks(r) + [check_coproduct(r)]
    return reports


def order_stability(n=4, family="d1", c=1, orders=(4, 6, 8), suite=stability_suite):
    """Checks passing at the lowest order keep passing, and truncated prefixes agree."""
    rs = [build_realization(n, N, family, c) for N in orders]
    ch = _Check(f"{family}.order_stability", rs[0], "identities hold order by order", orders=list(orders))
    status = {}
    for r in rs:
        for rep in _flatten(run_safely(suite, r)):
            status.setdefault(rep.check_id, []).append(rep.passed)
    for cid, flags in sorted(status.items()):
        if not cid.startswith("finding."):
            ch.truth(f"{cid} at N={list(orders)}: {flags}", not flags[0] or all(flags))
    for lo, hi in zip(rs, rs[1:]):
        bad = prefix_mismatches(lo, hi)
        ch.truth(f"prefix N={hi.order} -> N={lo.order} differs for {bad}", not bad)
    return ch.report(note=f"{len(status)} checks compared")


def _as_list(x):
    return x if isinstance(x, list) else [x]


def run_safely(fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except Exception as exc:  # surfaced as a failing report
        r = args[0]
        name = getattr(fn, "__name__", "check").removeprefix("check_")
        ch = _Check(f"{r.family}.{name}", r, "check raised an error")
        ch.truth(f"error: {type(exc).__name__}: {exc}", False)
        return ch.report()


SUITE_NAMES = ("all", "sitarz", "d1", "d2", "lorentz", "actions", "coproduct", "jacobi", "phi")


@dataclass
class SuiteConfig:
    n: int = 4
    order: int = 6
    family: str = "d1"
    c: object = 1
    seed: int = 0
    samples: int = DEFAULT_SAMPLES
    extras: dict = field(default_factory=dict)


def run_suite(name, cfg: SuiteConfig):
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITE_NAMES}")
    n, N, c = cfg.n, cfg.order, cfg.c
    lorentz_family = cfg.family if cfg.family in ("d1", "d2") else "d1"
    cache = {}

    def real(fam):
        if fam not in cache:
            cache[fam] = build_realization(n, N, fam, c)
        return cache[fam]

    reports = []
    names = SUITE_NAMES[1:] if name == "all" else (name,)
    for s in names:
        if s in FAMILIES:
            reports += _flatten(run_safely(realization_checks, real(s)))
        elif s == "lorentz":
            reports += _flatten(run_safely(lorentz_checks, real(lorentz_family)))
        elif s == "actions":
            reports += _flatten(run_safely(action_checks, real(lorentz_family)))
        elif s == "coproduct":
            reports += _flatten(run_safely(check_coproduct, real(lorentz_family)))
        elif s == "jacobi":
            for fam in FAMILIES:
                reports += _flatten(run_safely(jacobi_suite, real(fam), cfg.samples, cfg.seed))
        elif s == "phi":
            reports += [run_safely(check_phi_identity, real(fam)) for fam in ("d1", "d2")]
    if name == "all":
        reports += check_sensitivity(n, N)
    return sorted(reports, key=CheckReport.sort_key)


def _flatten(x):
    out = []
    for item in _as_list(x):
        out.extend(_as_list(item))
    return out


def suite_passed(reports):
    return all(r.passed for r in reports if not r.is_finding)
