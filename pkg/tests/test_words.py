import hypothesis.strategies as st
from hypothesis import given

from invcoh.words import (
    Dual,
    DualGen,
    Gen,
    Tensor,
    UNIT,
    is_inverse_restricted,
    letters,
    max_generator,
    multidegree,
    num_letters,
    power_word,
    to_text,
)

leaves = st.sampled_from(
    [UNIT, Gen(1), Gen(2), Gen(3), DualGen(1), DualGen(2), DualGen(3)]
)
words = st.recursive(
    leaves,
    lambda w: st.tuples(w, w).map(lambda p: Tensor(*p)) | w.map(Dual),
    max_leaves=12,
)


def test_letter_list_of_mixed_word():
    w = Tensor(Gen(1), Dual(Tensor(Gen(1), Tensor(Gen(2), Gen(2)))))
    ls = letters(w)
    assert [(l.generator, l.sign) for l in ls] == [
        (1, 1),
        (1, -1),
        (2, -1),
        (2, -1),
    ]
    assert [l.ordinal for l in ls] == [0, 1, 2, 3]


def test_unit_has_no_letters():
    assert letters(UNIT) == []
    assert num_letters(UNIT) == 0


@given(words)
def test_dual_flips_signs_keeps_order(w):
    inner = letters(w)
    outer = letters(Dual(w))
    assert [l.generator for l in inner] == [l.generator for l in outer]
    assert [l.sign for l in outer] == [-l.sign for l in inner]


@given(words, words)
def test_multidegree_additive(u, v):
    n = 3
    du, dv = multidegree(u, n), multidegree(v, n)
    assert multidegree(Tensor(u, v), n) == tuple(x + y for x, y in zip(du, dv))


@given(words)
def test_multidegree_of_dual_negates(w):
    n = 3
    assert multidegree(Dual(w), n) == tuple(-x for x in multidegree(w, n))


@given(st.tuples(*[st.integers(-3, 3)] * 3))
def test_power_word_realizes_its_degree(a):
    w = power_word(a)
    assert multidegree(w, 3) == a
    assert is_inverse_restricted(w)


def test_power_word_shape():
    w = power_word((2, 3, 1))
    assert to_text(w) == "((X1 * X1) * ((X2 * (X2 * X2)) * X3))"
    assert power_word((0, 0)) is UNIT


def test_inverse_restricted_rejects_dual_nodes():
    assert is_inverse_restricted(Tensor(Gen(1), DualGen(2)))
    assert not is_inverse_restricted(Tensor(Gen(1), Dual(Gen(2))))


@given(words)
def test_max_generator_bounds_letters(w):
    m = max_generator(w)
    assert all(l.generator <= m for l in letters(w))
