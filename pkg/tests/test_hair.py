from fractions import Fraction

import pytest
from conftest import rngs
from hypothesis import given

from hbjacobi.catab import antipode, chord, identity
from hbjacobi.corpus import random_diagram, random_word
from hbjacobi.diagcore import DiagLin, four_t_relations, gauge_chord, project_trivial
from hbjacobi.fgroup import FreeWord
from hbjacobi.hair import LabeledJacobi, eq_labeled, hair_chi, hair_linearity_check, leg


def labeled(v: DiagLin) -> LabeledJacobi:
    return LabeledJacobi(v.m, v.n, v.N, {t.strands: c for t, c in v.terms.items()})


def raw(t, m, n, N=2, c=1) -> DiagLin:
    return DiagLin(m, n, N, {t: c}, normalized=True)


def test_beadless_is_unchanged():
    v = chord(2, 1, 2)
    assert hair_chi(v) == labeled(v)


def test_identity_gets_hair():
    got = hair_chi(identity(1, 2))
    want = LabeledJacobi(1, 1, 2, {((),): 1, ((leg(1),),): 1, ((leg(1), leg(1)),): Fraction(1, 2)})
    assert got == want


def test_antipode_gets_negative_hair():
    got = hair_chi(antipode(1))
    assert got == LabeledJacobi(1, 1, 1, {((),): 1, ((leg(1),),): -1})


def test_rejects_polarized_skeleton():
    from hbjacobi.atkont import at_identity

    with pytest.raises(ValueError):
        hair_chi(at_identity("+").lin)


@given(rngs)
def test_gauge_pairs_agree(rng):
    m, n = rng.randint(1, 2), rng.randint(1, 2)
    t = random_word(rng, m, n, rng.randint(1, 2), beads=2)
    g = FreeWord.from_powers(m, [(rng.randint(1, m), rng.choice((1, -1))) for _ in range(rng.randint(1, 2))])
    u = gauge_chord(t, 1, g)
    assert eq_labeled(hair_chi(raw(t, m, n)), hair_chi(raw(u, m, n))).equal


@given(rngs)
def test_four_t_combinations_vanish(rng):
    m, n = rng.randint(1, 2), rng.randint(1, 3)
    t = random_word(rng, m, n, 2, beads=2)
    zero = LabeledJacobi(m, n, 2)
    for rel in four_t_relations(t):
        combo = DiagLin(m, n, 2, dict(rel), normalized=True)
        assert eq_labeled(hair_chi(combo), zero).equal


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_linearity(seed):
    import random

    rng = random.Random(seed)
    m, n = rng.randint(1, 2), rng.randint(1, 2)
    assert hair_linearity_check(random_diagram(rng, m, n), random_diagram(rng, m, n))


@given(rngs)
def test_forget_legs_on_bead_free(rng):
    m, n = rng.randint(1, 2), rng.randint(1, 3)
    v = random_diagram(rng, m, n, beads=0)
    assert hair_chi(v).forget_legs() == labeled(project_trivial(v))


def test_label_range_checked():
    with pytest.raises(ValueError):
        LabeledJacobi(1, 1, 2, {((leg(2),),): 1})
