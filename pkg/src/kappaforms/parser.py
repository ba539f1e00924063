"""Expression front end.

Concrete generators ``x del dx q`` and realized operators (``p M Mt M1 Z
thetap dS d1 d2``) evaluate to Elements; expressions built only from
``xhat``/``xi`` and scalars evaluate to representation-free NCExpressions.
As soon as a realized operator appears, ``xhat``/``xi`` are realized too.
Concrete generators and ``xhat``/``xi`` may not be mixed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from ._rational import rational
from .algebra import Coefficient, anticommutator, commutator, gcomm
from .nc import NCExpression, nc_anticommutator, nc_commutator, nc_gcomm

CONCRETE = {"x", "del", "dx", "q"}
ABSTRACT = {"xhat", "xi"}
REALIZED_INDEXED = {"p": 1, "M": 2, "Mt": 2, "M1": 2}
DERIVATIVES = {"dS": "sitarz", "d1": "d1", "d2": "d2"}
CALLS = {"comm", "acomm", "gcomm"}

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*/^(),\[\]]))")


class ParseError(ValueError):
    def __init__(self, message, position=None):
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}", len(text) - len(text[pos:].lstrip()))
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


# AST nodes are plain tuples: ("num", q) ("sym", name, indices, pos) ("Z", q)
# ("neg", a) ("add", a, b) ("sub", a, b) ("mul", a, b) ("call", name, a, b).


class _Parser:
    def __init__(self, text, n):
        self.toks = tokenize(text)
        self.i = 0
        self.n = n

    @property
    def tok(self):
        return self.toks[self.i]

    def take(self, text=None, kind=None):
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(t.text) if t.kind != "end" else "end of input"
            raise ParseError(f"expected {want}, found {got}", t.pos)
        self.i += 1
        return t

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return node

    def expr(self):
        node = self.term()
        while self.tok.text in ("+", "-"):
            op = self.take().text
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok.text == "*":
            self.take()
            node = ("mul", node, self.unary())
        return node

    def unary(self):
        if self.tok.text == "-":
            self.take()
            return ("neg", self.unary())
        if self.tok.text == "+":
            self.take()
            return self.unary()
        return self.atom()

    def rational(self):
        sign = -1 if self.tok.text == "-" else 1
        if self.tok.text in ("-", "+"):
            self.take()
        num = int(self.take(kind="num").text)
        den = 1
        if self.tok.text == "/":
            self.take()
            t = self.take(kind="num")
            den = int(t.text)
            if den == 0:
                raise ParseError("zero denominator", t.pos)
        return rational(sign * num, den)

    def index(self):
        t = self.take(kind="num")
        mu = int(t.text)
        if not 0 <= mu < self.n:
            raise ParseError(f"index {mu} out of range 0..{self.n - 1}", t.pos)
        return mu

    def indices(self, count, name, pos):
        self.take("[")
        idx = [self.index()]
        while self.tok.text == ",":
            self.take()
            idx.append(self.index())
        self.take("]")
        if len(idx) != count:
            raise ParseError(f"{name} takes {count} index(es), got {len(idx)}", pos)
        return tuple(idx)

    def atom(self):
        t = self.tok
        if t.kind == "num":
            return ("num", self.rational())
        if t.text == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if t.kind != "name":
            got = repr(t.text) if t.kind != "end" else "end of input"
            raise ParseError(f"unexpected {got}", t.pos)
        name = self.take().text
        if name in CALLS:
            self.take("(")
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take(")")
            return ("call", name, a, b)
        if name in ("i", "a0", "thetap") or name in DERIVATIVES:
            return ("sym", name, (), t.pos)
        if name == "Z":
            if self.tok.text != "^":
                return ("Z", rational(1))
            self.take()
            self.take("(")
            q = self.rational()
            self.take(")")
            return ("Z", q)
        if name in CONCRETE or name in ABSTRACT:
            return ("sym", name, self.indices(1, name, t.pos), t.pos)
        if name in REALIZED_INDEXED:
            return ("sym", name, self.indices(REALIZED_INDEXED[name], name, t.pos), t.pos)
        raise ParseError(f"unknown symbol {name!r}", t.pos)


def parse_ast(text, n):
    return _Parser(text, n).parse()


def _symbols(node, acc):
    tag = node[0]
    if tag == "sym":
        acc.append((node[1], node[3]))
    elif tag == "Z":
        acc.append(("Z", None))
    elif tag in ("neg",):
        _symbols(node[1], acc)
    elif tag in ("add", "sub", "mul"):
        _symbols(node[1], acc)
        _symbols(node[2], acc)
    elif tag == "call":
        _symbols(node[2], acc)
        _symbols(node[3], acc)
    return acc


def classify(node):
    """('nc' | 'element', derivative family or None) for an AST."""
    syms = _symbols(node, [])
    names = {s for s, _ in syms}
    concrete = [(s, p) for s, p in syms if s in CONCRETE]
    abstract = [(s, p) for s, p in syms if s in ABSTRACT]
    if concrete and abstract:
        raise ParseError("cannot mix concrete generators (x, del, dx, q) with xhat/xi", abstract[0][1])
    fams = {DERIVATIVES[s] for s in names if s in DERIVATIVES}
    if "sitarz" in fams and len(fams) > 1:
        pos = next(p for s, p in syms if s in DERIVATIVES)
        raise ParseError("dS cannot be combined with d1/d2", pos)
    realized = names & ({"thetap", "Z"} | set(REALIZED_INDEXED) | set(DERIVATIVES))
    family = "sitarz" if "sitarz" in fams else (next(iter(fams)) if len(fams) == 1 else None)
    if realized and abstract and not concrete:
        return "element", family
    if abstract:
        return "nc", family
    return "element", family


class Evaluator:
    """Evaluate ASTs against a realization source.

    ``realize(family)`` returns a Realization, ``engine(family)`` an
    ActionEngine (used for NC evaluation).
    """

    def __init__(self, ctx, family, c, realize, engine):
        self.ctx = ctx
        self.family = family
        self.c = c
        self._realize = realize
        self._engine = engine

    def evaluate(self, node):
        mode, fam = classify(node)
        # a named exterior derivative selects the realization for everything else
        fam = fam or self.family
        if mode == "nc":
            alg = self._engine(fam).alg
            return self._eval(node, lambda n: self._nc_sym(n, alg), alg.scalar)
        r = self._realize(fam)
        return self._eval(node, lambda n: self._el_sym(n, r), self.ctx.scalar)

    def _nc_sym(self, node, alg):
        name, idx = node[1], node[2]
        if name == "i":
            return alg.scalar(Coefficient({1: rational(1)}, alg.order))
        if name == "a0":
            return alg.scalar(Coefficient({2: rational(1)}, alg.order))
        if name == "xhat":
            return alg.xhat(idx[0])
        return alg.xi(idx[0])

    def _el_sym(self, node, r):
        if node[0] == "Z":
            try:
                return r.shift(node[1])
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        name, idx, pos = node[1], node[2], node[3]
        ctx = self.ctx
        if name == "i":
            return ctx.i
        if name == "a0":
            return ctx.a0
        simple = {"x": ctx.x, "del": ctx.d, "dx": ctx.dx, "q": ctx.q, "xhat": lambda m: r.xhat[m],
                  "xi": lambda m: r.xi[m], "p": lambda m: r.p[m]}
        if name in simple:
            return simple[name](idx[0])
        if name == "thetap":
            if r.thetap is None:
                raise ParseError("thetap exists only in the Sitarz family", pos)
            return r.thetap
        if name in DERIVATIVES:
            return r.d if r.family == DERIVATIVES[name] else self._realize(DERIVATIVES[name]).d
        table = {"M": r.M, "Mt": r.Mt, "M1": r.M1}[name]
        if not table:
            raise ParseError(f"{name} is not available for family {r.family}", pos)
        return table[idx]

    def _eval(self, node, sym, scalar):
        tag = node[0]
        if tag == "num":
            return scalar(node[1])
        if tag in ("sym", "Z"):
            return sym(node)
        ev = lambda a: self._eval(a, sym, scalar)  # noqa: E731
        if tag == "neg":
            return -ev(node[1])
        if tag == "add":
            return ev(node[1]) + ev(node[2])
        if tag == "sub":
            return ev(node[1]) - ev(node[2])
        if tag == "mul":
            return ev(node[1]) * ev(node[2])
        if tag == "call":
            a, b = ev(node[2]), ev(node[3])
            if isinstance(a, NCExpression):
                return {"comm": nc_commutator, "acomm": nc_anticommutator, "gcomm": nc_gcomm}[node[1]](a, b)
            return {"comm": commutator, "acomm": anticommutator, "gcomm": gcomm}[node[1]](a, b)
        raise ParseError(f"bad node {tag}")  # pragma: no cover


def parse(text, ctx, family="d1", c=1, cache=None):
    """Parse and evaluate ``text``; returns an Element or an NCExpression."""
    from .action import ActionEngine
    from .realizations import build_realization

    cache = {} if cache is None else cache

    def realize(fam):
        key = ("r", fam)
        if key not in cache:
            cache[key] = build_realization(ctx.n, ctx.order, fam, c)
        return cache[key]

    def engine(fam):
        key = ("e", fam)
        if key not in cache:
            cache[key] = ActionEngine(realize(fam))
        return cache[key]

    node = parse_ast(text, ctx.n)
    return Evaluator(ctx, family, rational(c), realize, engine).evaluate(node)
