import pytest
from hypothesis import given

from conftest import W, words
from freesub.words import RankMismatch, Word, all_reduced_words, inv, mul, reduce


X, XI, Y, YI = 1, -1, 2, -2


def test_reduce_examples():
    assert reduce([X, XI, Y], 2) == W("y")
    assert reduce([X, Y], 2) == W("xy")
    assert reduce([X, Y, YI, X], 2) == W("xx")


def test_reduce_rejects_out_of_range():
    with pytest.raises(ValueError):
        reduce([3], 2)
    with pytest.raises(ValueError):
        reduce([0], 2)


def test_word_rejects_unreduced_letters():
    with pytest.raises(ValueError):
        Word(2, (1, -1))


def test_mul_examples():
    assert mul(W("xy"), W("Yx")) == W("xx")
    w = W("xyXXy")
    assert mul(w, inv(w)) == Word(2)
    assert mul(Word(2), w) == w


def test_mul_rank_mismatch():
    with pytest.raises(RankMismatch):
        mul(Word(2, (1,)), Word(3, (1,)))


def test_inv_examples():
    assert inv(W("xy")) == W("YX")
    assert inv(Word(2)) == Word(2)
    assert inv(W("x")) == W("X")


def test_operators():
    w = W("xy")
    assert w * ~w == Word(2)
    assert w ** 2 == W("xyxy")
    assert w ** -1 == ~w
    assert len(w) == 2


def test_reduced_word_count():
    # 1 + 4 + 12 + 36 in F_2
    assert sum(1 for _ in all_reduced_words(2, 3)) == 53


@given(words())
def test_reduce_idempotent(w):
    assert reduce(w.letters, 2) == w


@given(words(), words(), words())
def test_mul_associative(u, v, w):
    assert mul(mul(u, v), w) == mul(u, mul(v, w))


@given(words(), words())
def test_inverse_of_product(u, v):
    assert inv(mul(u, v)) == mul(inv(v), inv(u))
    assert len(mul(u, v)) <= len(u) + len(v)


@given(words(rank=3))
def test_double_inverse(w):
    assert inv(inv(w)) == w
