import random
from collections import Counter

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from invcoh import composites as comp
from invcoh import kl
from invcoh.sampling import random_closed_composite, random_word
from invcoh.words import DualGen, Gen, Tensor, UNIT, multidegree, power_word, to_text


def tr_id(i=1, n=1):
    return comp.FormalComposite(
        UNIT,
        (comp.alpha(i), comp.twist(DualGen(i), Gen(i)), comp.alphahat(i)),
        n,
    )


def test_apply_move_basics():
    w = Tensor(Tensor(Gen(1), Gen(2)), Gen(1))
    assert comp.apply_move(w, comp.assoc()) == Tensor(
        Gen(1), Tensor(Gen(2), Gen(1))
    )
    assert comp.apply_move(w, comp.twist(w.left, w.right)) == Tensor(
        Gen(1), Tensor(Gen(1), Gen(2))
    )
    with pytest.raises(comp.MoveError):
        comp.apply_move(Gen(1), comp.assoc())
    with pytest.raises(comp.MoveError):
        comp.apply_move(w, comp.unitor("left"))


def test_twist_matches_operands_exactly():
    w = Tensor(Gen(1), Gen(2))
    with pytest.raises(comp.MoveError):
        comp.apply_move(w, comp.twist(Gen(2), Gen(1)))
    # inverted twist applies at (v * u)
    assert comp.apply_move(w, comp.twist(Gen(2), Gen(1), inverted=True)) == Tensor(
        Gen(2), Gen(1)
    )


def test_trace_of_identity_evaluates_to_one():
    assert comp.evaluate(tr_id()) == (1,)


def test_mixed_twist_contributes_nothing():
    c = comp.FormalComposite(
        Tensor(Gen(1), Gen(2)), (comp.twist(Gen(1), Gen(2)),), 2
    )
    assert comp.evaluate(c) == (0, 0)


def test_twist_exponent_is_degree_product():
    u = Tensor(Gen(1), Gen(1))
    v = Tensor(Gen(1), Gen(2))
    c = comp.FormalComposite(Tensor(u, v), (comp.twist(u, v),), 2)
    # deg_1(u) deg_1(v) = 2, deg_2 product = 0
    assert comp.evaluate(c) == (0, 0)
    c2 = comp.FormalComposite(
        Tensor(Gen(1), v), (comp.twist(Gen(1), v),), 2
    )
    assert comp.evaluate(c2) == (1, 0)


def test_equal_verdicts():
    c = tr_id()
    ident = comp.FormalComposite(UNIT, (), 1)
    assert comp.equal(c, c) == "forced-equal"
    assert comp.equal(c, ident) == "not-forced"
    off = comp.FormalComposite(Gen(1), (), 1)
    with pytest.raises(comp.EndpointMismatch):
        comp.equal(c, off)


def test_inverse_reverses_and_cancels():
    c = tr_id()
    back = c.inverse()
    assert comp.target_word(back) is UNIT
    round_trip = c.then(back)
    assert comp.evaluate(round_trip) == (0,)
    assert comp.equal(round_trip, comp.FormalComposite(UNIT, (), 1)) == "forced-equal"


word_seeds = st.integers(0, 10**6)


@settings(max_examples=60, deadline=None)
@given(word_seeds)
def test_canonical_phi_lands_in_the_power_word(seed):
    rng = random.Random(seed)
    w = random_word(rng, 2, 6)
    n = 2
    c = comp.canonical_phi(w, n)
    assert c.source == w
    assert comp.target_word(c) == power_word(multidegree(w, n))
    assert comp.evaluate(c) == (0, 0)


@settings(max_examples=40, deadline=None)
@given(word_seeds, word_seeds)
def test_canonical_paths_agree(seed, path_seed):
    rng = random.Random(seed)
    w = random_word(rng, 2, 6)
    det = comp.canonical_phi(w, 2)
    rnd = comp.canonical_phi(w, 2, rng=random.Random(path_seed))
    assert comp.evaluate(rnd) == (0, 0)
    assert comp.equal(det, rnd) == "forced-equal"


def test_canonical_phi_rejects_dual_nodes():
    from invcoh.words import Dual

    with pytest.raises(ValueError):
        comp.canonical_phi(Dual(Gen(1)), 1)


def test_compile_tracks_substitutions():
    c = tr_id()
    m, s = comp.compile_to_kl(c)
    assert dict(m.loops) == {1: 1}
    assert s == (0,)
    # the inverse direction rewrites both structure maps
    m2, s2 = comp.compile_to_kl(c.inverse())
    assert dict(m2.loops) == {1: 1}
    assert s2 == (2,)


@settings(max_examples=50, deadline=None)
@given(word_seeds)
def test_closed_composite_parity_identity(seed):
    rng = random.Random(seed)
    c = random_closed_composite(rng, 2, max_letters=6, steps=8)
    m, s = comp.compile_to_kl(c)
    assert m.src is UNIT and m.dst is UNIT
    loops = Counter(dict(m.loops))
    e = comp.evaluate(c)
    for i in range(1, 3):
        assert e[i - 1] == (loops[i] + s[i - 1]) % 2


def test_close_up_produces_an_endocomposite_of_the_unit():
    c = comp.FormalComposite(
        Tensor(Gen(1), Gen(1)), (comp.twist(Gen(1), Gen(1)),), 1
    )
    closed = comp.close_up(c)
    assert closed.source is UNIT
    assert comp.target_word(closed) is UNIT
    assert comp.evaluate(closed) == (1,)


def test_expand_twists_preserves_endpoints_and_evaluation():
    w = Tensor(Tensor(Gen(1), Gen(2)), Gen(1))
    c = comp.FormalComposite(w, (comp.twist(w.left, w.right),), 2)
    ex = comp.expand_twists(c)
    assert ex.source == c.source
    assert comp.target_word(ex) == comp.target_word(c)
    assert comp.evaluate(ex) == comp.evaluate(c)
    from invcoh.words import num_letters

    for m in ex.moves:
        if m.kind == "twist":
            assert num_letters(m.u) == 1 and num_letters(m.v) == 1
