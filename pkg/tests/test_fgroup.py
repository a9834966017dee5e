import pytest
from hypothesis import given, strategies as st

from hbjacobi.fgroup import (FreeWord, GroupHom, RankError, fg_inv, fg_mul, fg_pow, format_word,
                             hom_apply, hom_compose, hom_tensor, parse_word)

letters = st.lists(st.tuples(st.integers(1, 3), st.sampled_from((1, -1))), max_size=8)
words = letters.map(lambda ls: FreeWord(3, tuple(ls)))


def test_reduction():
    assert parse_word("x1 x2 x2^-1 x1^-1", 2).is_identity()
    assert parse_word("x1^3", 1).letters == ((1, 1),) * 3
    assert format_word(parse_word("x2^-1 x1", 2)) == "x2^-1 x1"


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_word("y1")
    with pytest.raises(RankError):
        parse_word("x3", 2)


@given(words, words, words)
def test_group_axioms(a, b, c):
    assert fg_mul(fg_mul(a, b), c) == fg_mul(a, fg_mul(b, c))
    assert fg_mul(a, fg_inv(a)).is_identity()
    assert fg_mul(FreeWord.identity(3), a) == a


@given(words)
def test_format_round_trip(a):
    assert parse_word(format_word(a), 3) == a


@given(words, st.integers(-3, 3))
def test_powers(a, k):
    assert fg_mul(fg_pow(a, k), fg_pow(a, -k)).is_identity()


def test_hom_compose_and_tensor():
    m = GroupHom.from_strings(2, ["x1 x2"])
    d = GroupHom.from_strings(1, ["x1", "x1"])
    # d after m sends x1 to x1 x2 and then to x1 x1
    assert hom_compose(d, m).images == (parse_word("x1^2", 1),)
    t = hom_tensor(GroupHom.identity(1), GroupHom.identity(1))
    assert t == GroupHom.identity(2)
    assert hom_apply(m, parse_word("x1^-1", 1)) == parse_word("x2^-1 x1^-1", 2)
