import json
from fractions import Fraction

import pytest
from conftest import rngs
from hypothesis import given

from hbjacobi.catab import casimir, compose, eta, mu, tensor_all
from hbjacobi.corpus import random_as, random_diagram, random_graph, random_ihx, random_word, tree_graph
from hbjacobi.diagcore import DiagLin, TensorWord, eq_mod_relations, four_t_relations, gauge_chord, stu_resolve
from hbjacobi.fgroup import FreeWord
from hbjacobi.weights import (
    LieData,
    ad_invariance_defect,
    cartan_trivector,
    casimir_matrix,
    is_zero,
    kron,
    load_lie,
    mat,
    mat_add,
    mat_identity,
    mat_mul,
    mat_scale,
    save_lie,
    sl2_data,
    weight_combination,
    weight_eval,
    weight_graph,
)

L = sl2_data()
# elements of SL2, so the Casimir is invariant under conjugation by them
PROBES = [mat([[1, 1], [0, 1]]), mat([[1, 0], [2, 1]]), mat([[2, 1], [1, 1]])]
SWAP = mat([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])


def test_bracket_e_f():
    e, h, f = range(3)
    assert L.bracket(e, f) == (0, 1, 0)
    assert L.bracket(h, e) == (2, 0, 0)


def test_casimir_invariant():
    assert all(x == 0 for plane in ad_invariance_defect(L) for row in plane for x in row)


def test_casimir_matrix_by_hand():
    # e (x) f + f (x) e + h (x) h / 2 on C^2 (x) C^2 is the swap minus half the identity
    want = mat_add(SWAP, mat_identity(4), Fraction(-1, 2))
    assert casimir_matrix(L) == want
    assert weight_eval(casimir(), L) == want
    assert weight_eval(compose(mu(), casimir()), L) == mat_scale(mat_identity(2), Fraction(3, 2))


def test_unit_is_identity():
    assert weight_eval(eta(), L) == mat_identity(2)


def _tripod():
    return tree_graph(((("u", 0, 0),), (("u", 1, 0),), (("u", 2, 0),)), 0, (0, 1, 2))


def test_tripod_is_cartan_trivector():
    T = cartan_trivector(L)
    assert not is_zero(T)
    assert weight_graph(_tripod(), L) == T
    assert weight_eval(stu_resolve(_tripod()), L) == T
    # totally antisymmetric: swapping the first two factors changes the sign
    P12 = kron(SWAP, mat_identity(2))
    assert mat_mul(mat_mul(P12, T), P12) == mat_scale(T, -1)


@given(rngs)
def test_four_term_vanishes(rng):
    m = rng.randint(0, 2)
    t = random_word(rng, m, rng.randint(1, 3), rng.randint(2, 3), beads=2)
    args = PROBES[:m]
    for rel in four_t_relations(t):
        assert is_zero(weight_combination([(c, u) for u, c in rel], L, args))


@given(rngs)
def test_as_ihx_vanish(rng):
    n = rng.randint(1, 3)
    assert is_zero(weight_combination(random_as(rng, n), L))
    assert is_zero(weight_combination(random_ihx(rng, n), L))


@given(rngs)
def test_stu_preserves_weight(rng):
    g = random_graph(rng, rng.randint(1, 3))
    assert weight_graph(g, L) == weight_eval(stu_resolve(g, 4), L)


@given(rngs)
def test_gauge_invariance(rng):
    m, n = rng.randint(1, 2), rng.randint(1, 2)
    t = random_word(rng, m, n, rng.randint(1, 2), beads=2)
    g = FreeWord.from_powers(m, [(rng.randint(1, m), rng.choice((1, -1))) for _ in range(2)])
    raw = lambda u: DiagLin(m, n, 2, {u: 1}, normalized=True)
    args = PROBES[:m]
    assert weight_eval(raw(t), L, args) == weight_eval(raw(gauge_chord(t, 1, g)), L, args)


@given(rngs)
def test_oracle_soundness(rng):
    m, n = rng.randint(0, 2), rng.randint(1, 2)
    v = random_diagram(rng, m, n, beads=2)
    t = random_word(rng, m, n, 2, beads=2)
    rels = four_t_relations(t)
    w = v
    if rels:
        w = v + DiagLin(m, n, 2, dict(rels[0]), normalized=True).scale(rng.randint(1, 3))
    assert eq_mod_relations(v, w).equal
    assert weight_eval(v, L, PROBES[:m]) == weight_eval(w, L, PROBES[:m])


def _single_use(rng, m, n):
    """A word in which each bead ``x_i`` occurs exactly once, positively."""
    t = random_word(rng, m, n, rng.randint(0, 2), beads=0)
    strands = [list(s) for s in t.strands]
    for i in range(1, m + 1):
        s = strands[rng.randrange(n)]
        s.insert(rng.randint(0, len(s)), ("b", i, 1))
    return TensorWord(m, tuple(tuple(s) for s in strands))


@given(rngs)
def test_functoriality_probe(rng):
    m, n = rng.randint(1, 2), rng.randint(1, 2)
    # N is large enough that the composite loses nothing to truncation
    N = 4
    d2 = DiagLin(m, n, N, {_single_use(rng, m, n): 1})
    # one-strand elements are central, so their weights are scalars; keep them away from zero
    parts = [eta(N) + random_diagram(rng, 0, 1, max_degree=1, N=N, beads=0).scale(Fraction(1, 7)) for _ in range(m)]
    d1 = tensor_all(*parts)
    probes = [weight_eval(p, L) for p in parts]
    assert weight_eval(compose(d2, d1), L) == weight_eval(d2, L, probes)


def test_json_round_trip(tmp_path):
    assert LieData.from_json(json.loads(json.dumps(L.to_json()))) == L
    path = tmp_path / "sl2.json"
    save_lie(L, path)
    assert load_lie(path) == L


def test_bad_lie_data():
    obj = L.to_json()
    obj["casimir"][0][1] = "5"
    with pytest.raises(ValueError, match="symmetric"):
        LieData.from_json(obj)
    with pytest.raises(ValueError, match="malformed"):
        LieData.from_json({"dim": 3})


def test_probe_errors():
    v = DiagLin(1, 1, 2, {TensorWord(1, ((("b", 1, 1),),)): 1})
    with pytest.raises(ValueError, match="singular"):
        weight_eval(v, L, [mat([[1, 1], [1, 1]])])
    with pytest.raises(ValueError, match="dimension"):
        weight_eval(v, L, [mat_identity(3)])
    with pytest.raises(ValueError, match="expected 1"):
        weight_eval(v, L, [])
