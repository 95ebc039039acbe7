import itertools
import random

import numpy as np
import pytest

from invcoh import cohomology as coh
from invcoh.cohomology import (
    ClassificationProblem,
    Cochain,
    CohomologyError,
    bar_delta,
    classify_rings,
    comparison_to_bar,
    em_cohomology,
    em_cocycle_generators,
    em_d_matrix,
    em_homology,
    is_em_cocycle_pair,
    trivialize,
    two_torsion_homs,
)
from invcoh.models import FiniteAbelianGroup

GROUPS = ["Z/2", "Z/3", "Z/4", "Z/2 x Z/2", "Z/6"]


def G(text):
    return FiniteAbelianGroup.parse(text)


@pytest.mark.parametrize("name", GROUPS)
def test_differential_squares_to_zero(name):
    A = G(name)
    for k in (2, 3, 4):
        d_k = em_d_matrix(A, k)
        d_prev = em_d_matrix(A, k - 1)
        assert not (d_prev @ d_k).any()


@pytest.mark.parametrize(
    "name,h3",
    [("Z/2", [2]), ("Z/3", []), ("Z/4", [2]), ("Z/2 x Z/2", [2, 2]), ("Z/6", [2])],
)
def test_homology_of_the_extended_complex(name, h3):
    A = G(name)
    # degree 1 recovers the group, degree 2 vanishes, degree 3 is A/2A
    assert em_homology(A, 1) == (0, list(A.moduli))
    assert em_homology(A, 2) == (0, [])
    assert em_homology(A, 3) == (0, h3)


def test_bar_delta_squares_to_zero():
    A = G("Z/4")
    N = G("Z/2")
    rng = random.Random(3)
    for k in (1, 2):
        table = {
            t: (rng.randrange(2),)
            for t in itertools.product(A.elements(), repeat=k)
        }
        c = Cochain(A, N, k, table)
        dd = bar_delta(bar_delta(c))
        assert all(
            dd(*t) == N.zero()
            for t in itertools.product(A.elements(), repeat=k + 2)
        )


def test_both_normalized_two_cochains_on_z2_are_cocycles():
    A = N = G("Z/2")
    for v in (0, 1):
        table = {
            t: ((v,) if all(x != (0,) for x in t) else (0,))
            for t in itertools.product(A.elements(), repeat=2)
        }
        d = bar_delta(Cochain(A, N, 2, table))
        assert all(
            d(*t) == N.zero()
            for t in itertools.product(A.elements(), repeat=3)
        )


@pytest.mark.parametrize(
    "an,nn", [("Z/2", "Z/2"), ("Z/2", "Z/4"), ("Z/2 x Z/2", "Z/2"), ("Z/4", "Z/2")]
)
def test_degree_three_cohomology_matches_two_torsion_homs(an, nn):
    A, N = G(an), G(nn)
    invs, reps = em_cohomology(A, N, 3)
    order = 1
    for d in invs:
        order *= d
    assert order == len(two_torsion_homs(A, N))
    # representatives really are cocycles
    basis = coh.em_basis(A, 3)
    for rep in reps:
        alpha = {t: v for (tag, t), v in rep.items() if tag == "b"}
        beta = {t: v for (tag, t), v in rep.items() if tag == "s"}
        assert is_em_cocycle_pair(A, N, alpha, beta)


def test_cocycle_generators_generate_cocycles():
    A, N = G("Z/2 x Z/2"), G("Z/2")
    gens = em_cocycle_generators(A, N)
    assert gens
    for alpha, beta, order in gens:
        assert order > 1
        assert is_em_cocycle_pair(A, N, alpha, beta)


@pytest.mark.parametrize(
    "an,nn", [("Z/2", "Z/2"), ("Z/2", "Z/4"), ("Z/2 x Z/2", "Z/2"), ("Z/4", "Z/2")]
)
def test_every_em_cocycle_alpha_part_is_a_coboundary(an, nn):
    rep = comparison_to_bar(G(an), G(nn))
    assert rep["alpha_always_coboundary"]
    assert rep["diagonal_map_surjective"]


def test_trivialize_recovers_a_coset():
    A, N = G("Z/4"), G("Z/2")
    rng = random.Random(11)
    zero = A.zero()
    sigma0 = {
        (a, b): ((rng.randrange(2) if a != zero and b != zero else 0),)
        for a in A.elements()
        for b in A.elements()
    }
    c = Cochain(A, N, 2, sigma0)
    alpha = bar_delta(c).table
    res = trivialize(A, N, alpha)
    assert res["solvable"]
    # the solution set is sigma0 + Z^2_norm: same size, contains sigma0
    sparse0 = {k: v for k, v in sigma0.items() if v != N.zero()}
    assert sparse0 in res["solutions"]
    assert len(res["solutions"]) == res["z2_order"]


def test_trivialize_rejects_a_nontrivial_class():
    A = N = G("Z/2")
    alpha = {((1,), (1,), (1,)): (1,)}
    assert not trivialize(A, N, alpha)["solvable"]


@pytest.mark.parametrize(
    "an,nn,count",
    [
        ("Z/2", "Z/2", 2),
        ("Z/2", "Z/4", 2),
        ("Z/4", "Z/2", 2),
        ("Z/3", "Z/3", 3),
        ("Z/2 x Z/2", "Z/2", 8),
    ],
)
def test_classification_counts_match_h2(an, nn, count):
    res = classify_rings(ClassificationProblem(G(an), G(nn)))
    assert res["class_count"] == count
    assert res["h2_order"] == count
    assert res["consistent"]
    # witnesses certify same-class membership
    for cls in res["classes"]:
        for member in cls["members"]:
            assert member["witness_u"] is not None


def test_classify_raises_on_untrivializable_alpha():
    A = N = G("Z/2")
    alpha = {((1,), (1,), (1,)): (1,)}
    with pytest.raises(CohomologyError):
        classify_rings(ClassificationProblem(A, N, alpha))


def test_degree_bounds_are_enforced():
    A = G("Z/2")
    with pytest.raises(CohomologyError):
        em_homology(A, 4)
    with pytest.raises(CohomologyError):
        em_cohomology(A, A, 4)
