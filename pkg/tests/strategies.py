"""Hypothesis strategies for small Weyl super-algebra elements."""
from hypothesis import strategies as st

from kappaforms import Coefficient, Context

CTX = Context(2, 3)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def coefficients(draw, order=CTX.order):
    terms = draw(st.dictionaries(st.integers(0, 2 * order + 1), rationals, max_size=3))
    return Coefficient(terms, order)


def letters(ctx=CTX):
    n = ctx.n
    return st.sampled_from([("x", m) for m in range(n)] + [("d", m) for m in range(n)]
                           + [("dx", m) for m in range(n)] + [("q", m) for m in range(n)])


def _gen(ctx, letter):
    kind, mu = letter
    return getattr(ctx, kind)(mu)


@st.composite
def monomial_words(draw, ctx=CTX, max_len=3):
    word = draw(st.lists(letters(ctx), max_size=max_len))
    e = ctx.one()
    for letter in word:
        e = e * _gen(ctx, letter)
    return e


@st.composite
def elements(draw, ctx=CTX, max_terms=3, max_len=3):
    total = ctx.zero()
    for _ in range(draw(st.integers(0, max_terms))):
        c = draw(coefficients(ctx.order))
        total = total + ctx.scalar(c) * draw(monomial_words(ctx, max_len))
    return total


@st.composite
def homogeneous(draw, ctx=CTX, max_len=3):
    """Element homogeneous in total degree."""
    e = draw(elements(ctx, max_len=max_len))
    comps = e.homogeneous_components()
    if not comps:
        return e
    return draw(st.sampled_from(list(comps.values())))
