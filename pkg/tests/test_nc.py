import pytest
from hypothesis import given, settings, strategies as st

from kappaforms import ActionEngine, Coefficient, NCAlgebra, NCError, Word, build_realization
from kappaforms.nc import nc_anticommutator, nc_commutator, nc_gcomm

R = build_realization(3, 4, "d1", 1)
E = ActionEngine(R)
ALG = E.alg

letter = st.tuples(st.integers(0, 1), st.integers(0, 2))
words = st.lists(letter, max_size=3)


def expr_of(ws):
    total = ALG.zero()
    for w in ws:
        total = total + ALG.word(tuple(w))
    return total


def test_coordinate_relations():
    alg = NCAlgebra(3, 4)
    x = alg.xhat
    ia0 = Coefficient({3: 1}, 4)
    assert x(0) * x(1) == x(1) * x(0) + ia0 * x(1)
    assert x(2) * x(1) == x(1) * x(2)
    assert str(x(0) * x(1)) == "i*a0*xhat[1] + xhat[1]*xhat[0]"
    assert (x(0) * x(1)).terms == {Word((1, 1, 0), ()): {0: 1}, Word((0, 1, 0), ()): {3: 1}}


def test_forms_need_closure_constants():
    alg = NCAlgebra(2, 2)
    with pytest.raises(NCError):
        alg.xi(0) * alg.xhat(0)
    with pytest.raises(NCError):
        alg.xhat(2)


def test_one_form_relations_from_closure():
    xi, x = ALG.xi, ALG.xhat
    ia0 = Coefficient({3: 1}, 4)
    # d1 at c=1: [xi0, x0] = i a0 xi0, [xk, x0] = -i a0 xk
    assert nc_commutator(xi(0), x(0)) == ia0 * xi(0)
    assert nc_commutator(xi(1), x(0)) == -ia0 * xi(1)
    assert nc_commutator(xi(1), x(2)).is_zero()
    assert nc_anticommutator(xi(0), xi(1)).is_zero()
    assert (xi(2) * xi(2)).is_zero()
    assert nc_gcomm(xi(0), xi(0)).is_zero()


def test_mixed_algebras_rejected():
    other = NCAlgebra(3, 4)
    with pytest.raises(NCError):
        ALG.xi(0) + other.xhat(0)


@settings(max_examples=30)
@given(st.lists(words, max_size=2), st.lists(words, max_size=2), st.lists(words, max_size=2))
def test_associativity(a, b, c):
    u, v, w = expr_of(a), expr_of(b), expr_of(c)
    assert (u * v) * w == u * (v * w)


@settings(max_examples=30)
@given(st.lists(words, max_size=2), st.lists(words, max_size=2))
def test_realization_is_a_homomorphism(a, b):
    # independent oracle: the Weyl super-algebra product of the realized operators
    u, v = expr_of(a), expr_of(b)
    assert E.realize(u * v) == E.realize(u) * E.realize(v)


@given(words)
def test_normal_form_is_pbw(w):
    for word in ALG.word(tuple(w)).terms:
        assert list(word.forms) == sorted(set(word.forms))
