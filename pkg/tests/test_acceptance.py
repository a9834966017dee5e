"""One test per acceptance criterion, all exact, all at N=2 unless stated."""
import random
from fractions import Fraction

from hbjacobi import atkont, corpus, hphi, kdassoc, weights
from hbjacobi.catab import (
    casimir,
    casimir_from_element,
    compose,
    element_from_casimir,
    eval_normal_form,
    identity,
    normal_form,
    pair_compose,
    r_element,
    tensor,
    tensor_words,
)
from hbjacobi.cli import Config, run_suite
from hbjacobi.diagcore import DiagLin, PairLin, comultiply, eq_mod_relations, four_t_relations, stu_resolve
from hbjacobi.zb import (
    Assoc,
    TABLE_NAMES,
    assoc_table,
    check_grouplike,
    diagram,
    homotopy_check,
    parse_magword,
    table_terms,
    table_value,
    z_eval,
    z_gen,
)

N = 2


def equal(a, b) -> bool:
    return eq_mod_relations(a, b).equal


def test_c01_coefficient_tables():
    for name in TABLE_NAMES:
        assert equal(z_gen(name), table_value(name)), name
    coeffs = {n: [c for c, _ in table_terms(n)[1:]] for n in TABLE_NAMES}
    F = Fraction
    assert coeffs["mu"] == [F(1, 24), F(1, 48), F(-1, 48), F(-1, 48)]
    assert coeffs["Delta"] == [F(-1, 2), F(1, 8), F(1, 48), F(-1, 12), F(1, 24), F(1, 24), F(1, 24)]
    assert coeffs["S"] == [F(1, 2), F(-1, 2), F(1, 8), F(-1, 4), F(1, 8)]
    assert coeffs["S-"] == [F(-1, 2), F(1, 2), F(1, 8), F(-1, 4), F(1, 8)]
    assert coeffs["psi"] == [F(1, 2), F(1, 8)] and coeffs["psi-"] == [F(-1, 2), F(1, 8)]
    assert coeffs["r-"] == [F(1, 2), F(1, 8)] and coeffs["r+"] == [F(-1, 2), F(1, 8)]
    dot = parse_magword(".")
    for sign in (1, -1):
        assert equal(z_gen(Assoc.of(dot, dot, dot, sign)), assoc_table(1, 1, 1, sign))


def test_c02_nu():
    nu = hphi.build_hphi(None, N).nu
    assert not nu.degree_part(1).terms
    wheel = diagram(0, [[("u", "p"), ("u", "q")]], wheels=[("p", "q")], N=N)
    assert wheel.terms
    assert equal(nu.degree_part(2), wheel.scale(Fraction(1, 48)))


def test_c03_associator_equations():
    rep = kdassoc.check_associator(kdassoc.default_associator(N), N)
    assert rep.results["pentagon"] and rep.results["hexagon1"] and rep.results["hexagon2"]
    triv = kdassoc.check_associator(kdassoc.trivial_series(N), N)
    assert not (triv.results["hexagon1"] and triv.results["hexagon2"])


def test_c04_hopf_casimir_suite():
    checks = run_suite("hopf", Config(N=N))
    assert "four_term_convolution" in {c.name for c in checks}
    assert all(c.passed for c in checks), [c.name for c in checks if not c.passed]


def test_c05_casimir_round_trips():
    c = casimir(N)
    r = r_element(N)
    assert equal(casimir_from_element(element_from_casimir(c)), c)
    assert equal(element_from_casimir(casimir_from_element(r)), r)


def test_c06_quasihopf_suite():
    rep = hphi.check_quasihopf(hphi.build_hphi(None, N))
    assert "S_ribbon" in rep.results and "delta_ribbon" in rep.results
    assert rep.passed, rep.failures()


def test_c07_transmutation():
    h = hphi.build_hphi(None, N)
    assert equal(hphi.transmute_mu(h), z_gen("mu", h=h))
    assert equal(hphi.transmute_delta(h), z_gen("Delta", h=h))


def test_c08_cube_route():
    for name in ("psi", "psi-", "mu", "Delta", "S", "S-", "r+", "r-", "eta", "eps"):
        assert equal(atkont.shipped(name).evaluate(N), z_gen(name)), name


def _combo(combo, n):
    total = DiagLin.zero(0, n, 3)
    for c, g in combo:
        total = total + stu_resolve(g, 3).scale(c)
    return total


def test_c09_stu_implies_as_ihx():
    rng = random.Random(9)
    for i in range(50):
        n = rng.randint(1, 3)
        combo = corpus.random_as(rng, n) if i % 2 == 0 else corpus.random_ihx(rng, n)
        assert equal(_combo(combo, n), DiagLin.zero(0, n, 3)), i
    for i in range(20):
        g = corpus.random_graph(rng, rng.randint(1, 3))
        assert equal(stu_resolve(g, 3), stu_resolve(g, 3, choose=lambda legs: len(legs) - 1)), i


def _pair_tensor(p: PairLin, q: PairLin) -> PairLin:
    """``(a (x) b) (x) (a' (x) b')`` regrouped as ``(a (x) a') (x) (b (x) b')``."""
    terms = {}
    for (a, b), c in p.terms.items():
        for (u, v), d in q.terms.items():
            key = (tensor_words(a, u), tensor_words(b, v))
            terms[key] = terms.get(key, 0) + c * d
    left = (p.left[0] + q.left[0], p.left[1] + q.left[1])
    return PairLin(left, left, min(p.N, q.N), terms)


def test_c10_coalgebra_enrichment():
    rng = random.Random(10)
    for _ in range(20):
        m, k, n = rng.randint(0, 2), rng.randint(1, 2), rng.randint(1, 2)
        d1 = corpus.random_diagram(rng, m, k)
        d2 = corpus.random_diagram(rng, k, n)
        assert comultiply(compose(d2, d1)) == pair_compose(comultiply(d2), comultiply(d1))
        a, b = corpus.random_diagram(rng, m, k), corpus.random_diagram(rng, k, n)
        assert comultiply(tensor(a, b)) == _pair_tensor(comultiply(a), comultiply(b))
    for _ in range(20):
        assert check_grouplike(z_eval(corpus.random_expr(rng)))


def test_c11_homotopy_grading():
    rng = random.Random(11)
    for _ in range(20):
        assert homotopy_check(corpus.random_expr(rng))


def test_c12_anomaly_recursion():
    h = hphi.build_hphi(None, N)
    for f in (("(++)", "+"), ("(+-)", "+")):
        lhs, rhs = atkont.anomaly_recursion_sides("(++)", f, N, h)
        assert atkont.eq_at(lhs, rhs).equal, f
    assert atkont.eq_at(atkont.anomaly("(++)", N, h), atkont.from_xn(hphi.anomaly_formula(h))).equal


def test_c13_weight_system():
    L = weights.sl2_data()
    rng = random.Random(13)
    for _ in range(10):
        t = corpus.random_word(rng, 0, rng.randint(1, 3), 3, beads=0)
        for rel in four_t_relations(t):
            assert weights.is_zero(weights.weight_combination([(c, u) for u, c in rel], L))
    for i in range(10):
        n = rng.randint(1, 3)
        combo = corpus.random_as(rng, n) if i % 2 == 0 else corpus.random_ihx(rng, n)
        assert weights.is_zero(weights.weight_combination(combo, L))
        g = corpus.random_graph(rng, rng.randint(1, 3))
        assert weights.weight_graph(g, L) == weights.weight_eval(stu_resolve(g, 4), L)
    assert weights.weight_eval(casimir(N), L) == weights.casimir_matrix(L)
    Y = corpus.tree_graph(((("u", 0, 0),), (("u", 1, 0),), (("u", 2, 0),)), 0, (0, 1, 2))
    assert weights.weight_graph(Y, L) == weights.cartan_trivector(L)


def test_c14_normal_form_round_trip():
    rng = random.Random(14)
    for _ in range(30):
        d = corpus.random_diagram(rng, rng.randint(0, 3), rng.randint(1, 3), max_degree=2)
        assert equal(eval_normal_form(normal_form(d)), d)
    assert equal(eval_normal_form(normal_form(identity(2))), identity(2))
