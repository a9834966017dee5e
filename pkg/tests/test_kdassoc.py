from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hbjacobi.catab import chord, conv_unit, convolve
from hbjacobi.diagcore import eq_mod_relations
from hbjacobi.kdassoc import (
    XY,
    AssociatorSpec,
    TruncNCSeries,
    check_associator,
    default_associator,
    is_grouplike,
    is_primitive,
    iota,
    parse_associator,
    subst,
    trivial_series,
    utn,
)

T3 = ("t12", "t13", "t23")


def monomials(alphabet, N):
    return st.lists(st.sampled_from(alphabet), max_size=N).map(tuple)


def free_series(alphabet, N):
    return st.dictionaries(monomials(alphabet, N), st.integers(-3, 3), max_size=4).map(
        lambda d: TruncNCSeries(alphabet, N, d))


def test_default_associator_examples():
    assert default_associator(0).series.coeffs == {(): 1}
    assert default_associator(1).series.coeffs == {(): 1}
    c = default_associator(2).series.coeffs
    assert c[("X", "Y")] == Fraction(1, 24)
    assert c[("Y", "X")] == Fraction(-1, 24)
    assert len(c) == 3
    with pytest.raises(ValueError):
        default_associator(3)


def test_default_associator_grouplike():
    s = default_associator(2).series
    assert is_grouplike(s)
    assert is_primitive(s.log())


def test_utn_small_dimensions():
    for N in range(4):
        u2 = utn(2, N)
        assert all(u2.dim(k) == 1 for k in range(N + 1))
    assert utn(3, 2).dim(1) == 3


def _rank(rows):
    rows = [dict(r) for r in rows]
    rank = 0
    pivots = []
    for r in rows:
        for p, pr in pivots:
            if p in r:
                c = r[p] / pr[p]
                for k, v in pr.items():
                    r[k] = r.get(k, 0) - c * v
                r = {k: v for k, v in r.items() if v}
        if r:
            p = min(r)
            pivots.append((p, r))
            rank += 1
    return rank


def test_utn3_degree2_against_bruteforce():
    # [t_ij, t_ik + t_jk] = 0 for each choice of (i, j) and k, written out by hand
    def comm(a, bs):
        out = {}
        for b in bs:
            out[(a, b)] = out.get((a, b), 0) + Fraction(1)
            out[(b, a)] = out.get((b, a), 0) - Fraction(1)
        return {k: v for k, v in out.items() if v}

    rels = [comm("t12", ["t13", "t23"]), comm("t13", ["t12", "t23"]), comm("t23", ["t12", "t13"])]
    expected = 9 - _rank(rels)
    assert expected == 7
    assert utn(3, 2).dim(2) == expected


@given(free_series(T3, 2), free_series(T3, 2))
def test_utn_projection_is_multiplicative(a, b):
    alg = utn(3, 2)
    lhs = alg.element(a.coeffs) * alg.element(b.coeffs)
    assert lhs == alg.element((a * b).coeffs)


def test_subst_examples():
    u3 = utn(3, 2)
    one = TruncNCSeries.one(XY, 2)
    a = u3.gen("t12")
    b = u3.gen("t23")
    assert subst(one, [a, b]) == u3.one()
    assert subst(TruncNCSeries.gen(XY, 2, "X"), [a, b]) == a
    with pytest.raises(ValueError):
        subst(one, [a])
    c12, c23 = chord(3, 1, 2), chord(3, 2, 3)
    got = subst(default_associator(2).series, [c12, c23])
    want = conv_unit(0, 3) + (convolve(c12, c23) - convolve(c23, c12)).scale(Fraction(1, 24))
    assert eq_mod_relations(got, want).equal


@given(free_series(XY, 2), free_series(XY, 2))
def test_subst_is_multiplicative(s, t):
    u3 = utn(3, 2)
    args = [u3.gen("t12") + u3.gen("t13"), u3.gen("t23")]
    assert subst(s * t, args) == subst(s, args) * subst(t, args)


def test_check_associator_examples():
    assert check_associator(default_associator(2), 2).passed
    bad = check_associator(trivial_series(2), 2).results
    assert bad["pentagon"]
    assert not (bad["hexagon1"] and bad["hexagon2"])
    perturbed = dict(default_associator(2).series.coeffs)
    perturbed[("X", "X", "Y")] = Fraction(5, 7)
    phi = AssociatorSpec(TruncNCSeries(XY, 3, perturbed), "user-supplied")
    assert check_associator(phi, 2).passed


def test_iota_examples():
    assert iota(TruncNCSeries.one(T3, 2), 3) == conv_unit(0, 3)
    assert iota(TruncNCSeries.gen(T3, 2, "t12"), 3) == chord(3, 1, 2)
    with pytest.raises(ValueError):
        iota(TruncNCSeries.gen(XY, 2, "X"), 3)


@given(free_series(T3, 2), free_series(T3, 2))
def test_iota_multiplicative(u, v):
    lhs = iota(u * v, 3)
    rhs = convolve(iota(u, 3), iota(v, 3))
    assert eq_mod_relations(lhs, rhs).equal


def test_parse_associator():
    text = "# default\n0 1 1\n2 XY 1/24\n2 YX -1/24\n"
    assert parse_associator(text).series == default_associator(2).series
    assert parse_associator(text, 1).series == default_associator(1).series
    for bad, msg in (("0 1 1\n2 XZ 1\n", "line 2"), ("0 1 1\n3 XY 1\n", "line 2"),
                     ("0 1 1\n1 X\n", "line 2"), ("2 XY 1\n", "constant term")):
        with pytest.raises(ValueError, match=msg):
            parse_associator(bad)
