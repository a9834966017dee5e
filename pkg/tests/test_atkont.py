from fractions import Fraction
from pathlib import Path

import pytest
from conftest import rngs
from hypothesis import given

from hbjacobi.atkont import (
    ShapeError,
    anomaly,
    anomaly_recursion_sides,
    associator_value,
    at_compose,
    at_identity,
    at_tensor,
    cable,
    cap,
    crossing,
    eq_at,
    from_xn,
    load_cube,
    parse_cube,
    parse_signword,
    parse_slice_line,
    r_rotate,
    SlicedTangle,
    shipped,
    z_slice,
    z_tangle,
)
from hbjacobi.catab import chord, identity
from hbjacobi.corpus import random_diagram
from hbjacobi.diagcore import eq_mod_relations
from hbjacobi.hphi import anomaly_formula, build_hphi
from hbjacobi.zb import z_gen

DATA = Path(__file__).with_name("data")


def tangle(source, lines):
    return SlicedTangle(parse_signword(source), tuple(parse_slice_line(x) for x in lines))


def test_cable_singletons_is_identity():
    d = crossing(1, "++", 2)
    assert cable(d, ["+", "+"]) == d


def test_cable_doubling_one_chord():
    d = from_xn(chord(2, 1, 2, 1))
    out = cable(d, ["++", "+"]).degree_part(1)
    assert len(out.lin.terms) == 2
    assert all(c == 1 for c in out.lin.terms.values())


def test_cable_delete_legless_strand():
    d = at_tensor(from_xn(chord(2, 1, 2)), at_identity("+"))
    assert cable(d, ["+", "+", ""]) == from_xn(chord(2, 1, 2))


WORDS = ("+", "-", "++", "+-", "")


@given(rngs)
def test_cable_functoriality(rng):
    n = rng.randint(1, 2)
    a = from_xn(random_diagram(rng, 0, n, max_degree=2, beads=0))
    b = from_xn(random_diagram(rng, 0, n, max_degree=2, beads=0))
    f = [rng.choice(WORDS) for _ in range(n)]
    lhs = cable(at_compose(a, b), f)
    rhs = at_compose(cable(a, f), cable(b, f))
    assert eq_at(lhs, rhs).equal


def test_z_slice_examples():
    c = z_slice(parse_slice_line("left= piece=Cap(+-) right="))
    assert c == cap("+-")
    assert dict(c.items()) == {((),): 1}
    x = crossing(1, "++", 1)
    assert dict(x.items()) == {((), ()): 1, ((("e", 1, 0),), (("e", 1, 1),)): Fraction(1, 2)}
    a = associator_value(["+", "+", "+"], 1)
    c12, c23 = from_xn(chord(3, 1, 2)), from_xn(chord(3, 2, 3))
    # products read top to bottom: [c12, c23] = c12 over c23 minus c23 over c12
    bracket = at_compose(c23, c12) - at_compose(c12, c23)
    assert eq_at(a, at_identity("+++") + bracket.scale(Fraction(1, 24))).equal


def test_z_tangle_examples():
    assert z_tangle(tangle("(++)", [])) == at_identity("++")
    t = tangle("(++)", ["left= piece=X+[++] right=", "left= piece=X-[++] right="])
    assert eq_at(z_tangle(t), at_identity("++")).equal
    zigzag = tangle("+", ["left=(+ piece=Cap(-+) right=)", "left= piece=Assoc(+,-,+)+ right=",
                          "left=( piece=Cup(+-) right=+)"])
    assert eq_at(z_tangle(zigzag), at_identity("+")).equal


def test_closed_component_rejected():
    loop = tangle("", ["left= piece=Cap(+-) right=", "left= piece=Cup(+-) right="])
    with pytest.raises(ShapeError, match="closes a component"):
        z_tangle(loop)


def test_slice_mismatch_rejected():
    with pytest.raises(ShapeError, match="slice 2"):
        tangle("(++)", ["left= piece=X+[++] right=", "left= piece=X+[+-] right="])


def test_anomaly_examples():
    assert anomaly("+") == at_identity("+")
    h = build_hphi(None, 2)
    assert eq_at(anomaly("(++)"), from_xn(anomaly_formula(h))).equal
    for w in ("(++)", "(+-)", "((++)+)"):
        a = anomaly(w)
        assert a.degree_part(0) == at_identity(a.source)


@pytest.mark.parametrize("w,f", [("(++)", ("+", "+")), ("(++)", ("(++)", "+")), ("(++)", ("(+-)", "+")),
                                 ("(+-)", ("(++)", "+"))])
def test_anomaly_recursion(w, f):
    lhs, rhs = anomaly_recursion_sides(w, f)
    assert eq_at(lhs, rhs).equal


def test_rotation_is_involution():
    d = anomaly("(+-)")
    assert r_rotate(r_rotate(d)) == d


def test_cube_examples():
    assert shipped("id1").evaluate() == identity(1)
    for name in ("psi", "mu"):
        assert eq_mod_relations(shipped(name).evaluate(), z_gen(name)).equal


@pytest.mark.parametrize("alt,name", [("mu_alt", "mu"), ("Delta_alt", "Delta")])
def test_cube_alternate_presentations(alt, name):
    a = load_cube(DATA / f"{alt}.slices").evaluate()
    assert eq_mod_relations(a, shipped(name).evaluate()).equal


def test_cube_parse_errors():
    with pytest.raises(ShapeError, match="line 2"):
        parse_cube("v=(..) words=+,+\nleft= piece=Foo right=\n")
    with pytest.raises(ShapeError, match="line 1"):
        parse_cube("v=(..) words=+\n")
    with pytest.raises(ShapeError, match="missing header"):
        parse_cube("left= piece=X+ right=\n")
