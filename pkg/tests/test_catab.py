from fractions import Fraction

import pytest
from hypothesis import given

from hbjacobi import corpus
from hbjacobi.catab import (TruncationError, antipode, casimir, casimir_from_element, chord, compose, compose_all,
                            conv_exp, conv_inverse, conv_unit, convolve, delta, element_from_casimir, epsilon,
                            eta, eval_normal_form, generator, identity, mu, normal_form, pair_compose,
                            r_element, symmetry, tensor)
from hbjacobi.diagcore import DiagLin, comultiply, eq_mod_relations, homotopy_class
from hbjacobi.fgroup import hom_compose

from conftest import rngs


def eq(a, b):
    return eq_mod_relations(a, b).equal


@given(rngs)
def test_identity_laws(rng):
    d = corpus.random_diagram(rng, 2, 2)
    assert compose(identity(2), d) == d
    assert compose(d, identity(2)) == d


def test_unit_and_antipode_axioms():
    assert compose(mu(2), tensor(eta(2), eta(2))) == eta(2)
    lhs = compose_all(mu(2), tensor(identity(1), antipode(2)), delta(2))
    assert eq(lhs, compose(eta(2), epsilon(2)))


def test_tensor_examples():
    ee = tensor(eta(2), eta(2))
    assert (ee.m, ee.n) == (0, 2)
    assert tensor(identity(1), identity(1)) == identity(2)
    c3 = tensor(casimir(2), eta(2))
    assert c3 == chord(3, 1, 2, 2)


def test_truncation_mismatch():
    with pytest.raises(TruncationError):
        compose(identity(1, 2), identity(1, 3))


def test_symmetry():
    assert symmetry(0, 2) == identity(2)
    P = symmetry(1, 1)
    assert compose(P, P) == identity(2)


@given(rngs)
def test_symmetry_natural(rng):
    U = corpus.random_diagram(rng, 1, 1)
    V = corpus.random_diagram(rng, 1, 1)
    lhs = compose(tensor(V, U), symmetry(1, 1))
    rhs = compose(symmetry(1, 1), tensor(U, V))
    assert eq(lhs, rhs)


def test_generator_axioms():
    I, D = identity(1), delta(2)
    assert eq(compose(tensor(epsilon(2), I), D), I)
    assert eq(compose(symmetry(1, 1), D), D)
    assert eq(compose(symmetry(1, 1), casimir(2)), casimir(2))
    assert generator("r", 2) == compose(mu(2), casimir(2)).scale(Fraction(1, 2))
    with pytest.raises(ValueError):
        generator("nope", 2)


def test_convolution():
    f = casimir(2)
    assert convolve(conv_unit(0, 2, 2), f) == f
    cc = convolve(f, f)
    assert len(cc) == 1 and next(iter(cc.terms)).degree == 2
    c12, c13, c23 = chord(3, 1, 2, 2), chord(3, 1, 3, 2), chord(3, 2, 3, 2)
    assert eq(convolve(c12 + c13, c23), convolve(c23, c12 + c13))


def test_conv_inverse():
    u = conv_unit(0, 2, 2)
    assert conv_inverse(u) == u
    half = casimir(2).scale(Fraction(1, 2))
    assert conv_inverse(conv_exp(half)) == conv_exp(-half)
    assert conv_inverse(u.scale(2)) == u.scale(Fraction(1, 2))
    with pytest.raises(ValueError):
        conv_inverse(casimir(2))


def test_normal_form_examples():
    nf = normal_form(eta(2))
    assert [(t.q, t.k) for t in nf.terms] == [((0,), 0)]
    nf = normal_form(casimir(2))
    (t,) = nf.terms
    assert (t.k, sum(t.p), t.q, t.sigma) == (1, 0, (1, 1), (1, 2))


@given(rngs)
def test_normal_form_round_trip(rng):
    d = corpus.random_diagram(rng, rng.randint(0, 2), rng.randint(1, 2), 2, 2)
    assert eq(eval_normal_form(normal_form(d)), d)


def test_casimir_correspondence():
    c = casimir(2)
    assert eq(casimir_from_element(element_from_casimir(c)), c)
    r = r_element(2)
    assert eq(element_from_casimir(casimir_from_element(r)), r)
    assert not element_from_casimir(DiagLin.zero(0, 2, 2))


@given(rngs)
def test_compose_associative(rng):
    a = corpus.random_diagram(rng, 1, 2, 1, 2)
    b = corpus.random_diagram(rng, 2, 1, 1, 2)
    c = corpus.random_diagram(rng, 1, 2, 1, 2)
    assert eq(compose(compose(c, b), a), compose(c, compose(b, a)))


@given(rngs)
def test_degree_and_homotopy_grading(rng):
    t1 = corpus.random_word(rng, 1, 2, rng.randint(0, 1), 2)
    t2 = corpus.random_word(rng, 2, 1, rng.randint(0, 1), 2)
    d1, d2 = DiagLin.single(t1, 4), DiagLin.single(t2, 4)
    out = compose(d2, d1)
    for t in out.terms:
        assert t.degree == t1.degree + t2.degree
        assert homotopy_class(t) == hom_compose(homotopy_class(t1), homotopy_class(t2))
    for t in tensor(d1, d2).terms:
        assert t.degree == t1.degree + t2.degree


@given(rngs)
def test_compose_is_coalgebra_map(rng):
    d1 = corpus.random_diagram(rng, 1, 2, 2, 2)
    d2 = corpus.random_diagram(rng, 2, 1, 2, 2)
    assert comultiply(compose(d2, d1)) == pair_compose(comultiply(d2), comultiply(d1))
