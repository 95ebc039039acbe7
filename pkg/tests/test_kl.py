import random
from collections import Counter

import pytest

from invcoh import kl
from invcoh.sampling import random_kl_chain
from invcoh.words import DualGen, Gen, Tensor, UNIT


def x(i=1):
    return Gen(i)


def xinv(i=1):
    return DualGen(i)


def test_identity_is_neutral():
    rng = random.Random(7)
    for _ in range(50):
        (f,) = random_kl_chain(rng, 3, 6, 1)
        assert kl.compose(f, kl.identity(f.src)) == f
        assert kl.compose(kl.identity(f.dst), f) == f


def test_compose_requires_matching_words():
    f = kl.cup(1)
    g = kl.cap(1)
    with pytest.raises(ValueError):
        kl.compose(g, f)  # cup lands in X^-1 * X, cap eats X * X^-1


def test_cap_of_crossed_cup_closes_one_loop():
    m = kl.compose(kl.cap(1), kl.cup_crossed(1))
    assert m.src is UNIT and m.dst is UNIT
    assert dict(m.loops) == {1: 1}
    assert m.edges == frozenset()


def test_cap_of_cup_closes_one_loop_too():
    # any middle-only composition S -> w -> S closes every strand
    m = kl.compose(kl.cap_crossed(1), kl.cup(1))
    assert dict(m.loops) == {1: 1}
    with pytest.raises(ValueError):
        kl.compose(kl.cap(1), kl.cup(1))  # cap eats X * X^-1, cup makes X^-1 * X


def test_symmetry_squares_to_identity():
    u = Tensor(x(1), x(2))
    v = xinv(1)
    s = kl.symmetry(u, v)
    s2 = kl.symmetry(v, u)
    assert kl.compose(s2, s) == kl.identity(Tensor(u, v))


def test_trace_counts_closed_components():
    w3 = Tensor(x(), Tensor(x(), x()))
    assert dict(kl.trace_kl(kl.identity(w3)).loops) == {1: 3}
    # the twist on X * X closes into a single loop
    tw = kl.symmetry(x(), x())
    assert dict(kl.trace_kl(tw).loops) == {1: 1}


def test_associativity_and_loop_oracle():
    rng = random.Random(20)
    for _ in range(60):
        h, g, f = random_kl_chain(rng, 3, 6, 3)[::-1]
        left = kl.compose(h, kl.compose(g, f))
        right = kl.compose(kl.compose(h, g), f)
        assert left == right
        # loop multiset agrees with the union-find component oracle
        direct = kl.compose(g, f)
        assert Counter(dict(direct.loops)) == kl.loops_via_components(g, f)


def test_interchange():
    rng = random.Random(31)
    for _ in range(40):
        g1, f1 = random_kl_chain(rng, 2, 5, 2)[::-1]
        g2, f2 = random_kl_chain(rng, 2, 5, 2)[::-1]
        lhs = kl.compose(kl.tensor(g1, g2), kl.tensor(f1, f2))
        rhs = kl.tensor(kl.compose(g1, f1), kl.compose(g2, f2))
        assert lhs == rhs


def test_tensor_with_unit_identity_keeps_edges():
    f = kl.cup(2)
    t = kl.tensor(f, kl.identity(x(1)))
    assert t.src == Tensor(UNIT, x(1))
    assert len(t.edges) == len(f.edges) + 1


def test_record_is_stable():
    m = kl.compose(kl.cap(1), kl.cup_crossed(1))
    assert kl.to_record(m) == (
        "src: S\ndst: S\ndom: \ncod: \nedges: \nloops: X1:1\n"
    )


def test_validate_rejects_sign_mismatch():
    with pytest.raises(ValueError):
        kl._morphism(x(1), x(1), [(("d", 0), ("d", 0))], Counter())
