import pytest
from conftest import rngs
from hypothesis import given

from hbjacobi.catab import casimir, conv_unit, epsilon, eta, identity
from hbjacobi.corpus import random_expr
from hbjacobi.diagcore import eq_mod_relations
from hbjacobi.fgroup import GroupHom
from hbjacobi.zb import (
    DOT,
    EMPTY,
    RELATIONS,
    TABLE_NAMES,
    Assoc,
    ExprParseError,
    ExprTypeError,
    Id,
    check_grouplike,
    expected_homotopy,
    homotopy_check,
    parse_expr,
    parse_magword,
    table_terms,
    table_value,
    z_eval,
    z_gen,
)


def test_magword_parse():
    assert parse_magword("") == EMPTY
    assert parse_magword(".") == DOT
    assert parse_magword("(..)") == DOT * DOT
    assert parse_magword("((..).)").length == 3
    for bad in ("(.", "(.x)", ".)"):
        with pytest.raises(ValueError):
            parse_magword(bad)


def test_parse_expr_structure():
    e = parse_expr("mu . (id[.] (x) S) . Delta")
    assert (e.source, e.target) == (DOT, DOT)
    a = parse_expr("assoc(.;.;.)")
    assert isinstance(a, Assoc) and a.source == parse_magword("((..).)")
    assert parse_expr("assoc-(.;.;.)").source == parse_magword("(.(..))")


@pytest.mark.parametrize("text,col", [("mu . (S", 8), ("mu . foo", 6), ("id[(.]", 1), ("mu mu", 4),
                                      ("assoc(.;.)", 1), ("", 1)])
def test_parse_errors_carry_column(text, col):
    with pytest.raises(ExprParseError) as info:
        parse_expr(text)
    assert info.value.column == col
    assert str(info.value).startswith(f"column {col}:")


def test_type_errors():
    for text in ("mu . mu", "S . eta (x) eta", "Delta . psi"):
        with pytest.raises(ExprTypeError):
            parse_expr(text)


@given(rngs)
def test_print_parse_round_trip(rng):
    e = random_expr(rng)
    assert parse_expr(str(e)) == e


@pytest.mark.parametrize("name", TABLE_NAMES)
def test_tables(name):
    assert eq_mod_relations(z_gen(name), table_value(name)).equal


def test_table_coefficients():
    coeffs = {n: [str(c) for c, _ in table_terms(n)[1:]] for n in TABLE_NAMES}
    assert coeffs["mu"] == ["1/24", "1/48", "-1/48", "-1/48"]
    assert coeffs["Delta"] == ["-1/2", "1/8", "1/48", "-1/12", "1/24", "1/24", "1/24"]
    assert coeffs["S"] == ["1/2", "-1/2", "1/8", "-1/4", "1/8"]
    assert coeffs["S-"] == ["-1/2", "1/2", "1/8", "-1/4", "1/8"]
    assert coeffs["psi"] == ["1/2", "1/8"] and coeffs["psi-"] == ["-1/2", "1/8"]
    assert coeffs["r-"] == ["1/2", "1/8"] and coeffs["r+"] == ["-1/2", "1/8"]


def test_z_gen_units():
    assert z_gen("eta") == eta()
    assert z_gen("eps") == epsilon()
    assert z_eval(Id.of(parse_magword("((..).)"))) == identity(3)


@pytest.mark.parametrize("name,lhs,rhs", RELATIONS, ids=[r[0] for r in RELATIONS])
def test_relation_invariance(name, lhs, rhs):
    assert eq_mod_relations(z_eval(parse_expr(lhs)), z_eval(parse_expr(rhs))).equal


def test_grouplike_examples():
    assert check_grouplike(identity(2))
    assert check_grouplike(z_gen("psi"))
    assert not check_grouplike(conv_unit(0, 2) + casimir())


@given(rngs)
def test_grouplike_random(rng):
    assert check_grouplike(z_eval(random_expr(rng)))


def test_homotopy_examples():
    assert expected_homotopy(parse_expr("mu")) == GroupHom.from_strings(2, ["x1 x2"])
    assert expected_homotopy(parse_expr("id[(..)]")) == GroupHom.identity(2)
    assert expected_homotopy(parse_expr("S . S")) == GroupHom.identity(1)
    for text in ("mu", "S . S", "psi", "Delta", "mu . (id[.] (x) S) . Delta"):
        assert homotopy_check(parse_expr(text))


@given(rngs)
def test_homotopy_random(rng):
    assert homotopy_check(random_expr(rng))
