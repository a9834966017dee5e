from fractions import Fraction

from conftest import rngs
from hypothesis import given

from hbjacobi.atkont import anomaly, to_xn
from hbjacobi.catab import casimir, conv_unit, convolve, delta, eta, mu
from hbjacobi.corpus import random_diagram
from hbjacobi.diagcore import eq_mod_relations
from hbjacobi.hphi import (
    anomaly_formula,
    build_hphi,
    check_quasihopf,
    g_element,
    general_fact,
    transmute_delta,
    transmute_mu,
)
from hbjacobi.zb import diagram, z_gen


def test_n0_components_are_units():
    h = build_hphi(None, 0)
    assert h.phi == conv_unit(0, 3, 0)
    assert h.R == conv_unit(0, 2, 0)
    for x in (h.r_elt, h.nu, h.alpha, h.beta):
        assert x == eta(0)


def test_nu_shape():
    h = build_hphi(None, 2)
    assert not any(t.degree == 1 for t in h.nu.terms)
    wheel = diagram(0, [[("u", "p"), ("u", "q")]], wheels=[("p", "q")])
    expected = eta(2) + wheel.scale(Fraction(1, 48))
    assert eq_mod_relations(h.nu, expected).equal


def test_R_exponential():
    h = build_hphi(None, 2)
    c = casimir(2)
    expected = conv_unit(0, 2) + c.scale(Fraction(1, 2)) + convolve(c, c).scale(Fraction(1, 8))
    assert h.R == expected


def test_quasihopf_default_passes():
    rep = check_quasihopf(build_hphi(None, 2))
    assert rep.passed, rep.failures()


def test_quasihopf_n0_passes():
    assert check_quasihopf(build_hphi(None, 0)).passed


def test_trivial_R_breaks_hexagon_only():
    h = build_hphi(None, 2).with_R(conv_unit(0, 2))
    res = check_quasihopf(h).results
    assert res["R_conjugates_delta"].equal
    assert not res["hexagon_left"].equal


@given(rngs)
def test_general_fact(rng):
    n = rng.randint(1, 3)
    x = random_diagram(rng, 0, n, max_degree=2)
    assert general_fact(x).equal


def test_transmutation_n0():
    h = build_hphi(None, 0)
    assert eq_mod_relations(transmute_mu(h), mu(0)).equal
    assert eq_mod_relations(transmute_delta(h), delta(0)).equal


def test_transmutation_n2():
    h = build_hphi(None, 2)
    assert eq_mod_relations(transmute_mu(h), z_gen("mu", 2)).equal
    assert eq_mod_relations(transmute_delta(h), z_gen("Delta", 2)).equal


def test_g_element_is_anomaly():
    h = build_hphi(None, 2)
    assert eq_mod_relations(g_element(h), anomaly_formula(h)).equal
    assert eq_mod_relations(g_element(h), to_xn(anomaly("(++)", 2))).equal
