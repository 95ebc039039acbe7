import hypothesis.strategies as st
import pytest
from hypothesis import given

from invcoh import signs
from invcoh.models import FiniteAbelianGroup
from invcoh.signs import (
    CommuterGroup,
    GradedExpression,
    GradedSymbol,
    SignError,
    lr_correction,
    motivic_skew,
    multiply,
    realization_correction,
    tau,
)

vec2 = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


@given(vec2, vec2)
def test_tau_is_symmetric(a, b):
    assert tau(a, b) == tau(b, a)


@given(vec2, vec2, vec2)
def test_tau_bilinear(a, b, c):
    g = CommuterGroup(2)
    ab = tuple(x + y for x, y in zip(a, b))
    assert tau(ab, c) == g.mul(tau(a, c), tau(b, c))


@given(vec2)
def test_tau_values_are_two_torsion(a):
    g = CommuterGroup(2)
    assert g.mul(tau(a, a), tau(a, a)) == g.identity()


def test_show_renders_monomials():
    g = CommuterGroup(3)
    assert g.show((1, 0, 1)) == "t1*t3"
    assert g.show((0, 0, 0)) == "1"


def test_declared_target_must_be_two_torsion():
    N = FiniteAbelianGroup((4,))
    with pytest.raises(SignError):
        CommuterGroup(1, target=N, images=((1,),))
    g = CommuterGroup(1, target=N, images=((2,),))
    assert tau((1,), (1,), g) == (2,)


def test_lr_rules():
    a, b, c, d = (2,), (1,), (3,), (1,)
    assert lr_correction("a", a, b) == tau(b, (1,))
    assert lr_correction("b", a, b, c) == (0,)
    assert lr_correction("d", a, b, c) == (0,)
    assert lr_correction("c", a, b, c) == tau((1,), c)
    assert lr_correction("e", a, b, c, flavor="l") == tau((1,), c)
    assert lr_correction("f", a, b, c, d, flavor="r") == (0,)
    assert lr_correction("f", a, b, c, d, flavor="l") == tau((1,), (2,))
    assert lr_correction("g", a, b, c, d, flavor="r") == tau((1,), d)
    assert lr_correction("g", a, b, c, d, flavor="l") == tau(b, (2,))
    with pytest.raises(SignError):
        lr_correction("z", a, b)
    with pytest.raises(SignError):
        lr_correction("a", a, None)


def test_graded_expression_commutation():
    g = CommuterGroup(2)
    f = GradedExpression.from_symbol(GradedSymbol("f", (1, 0)), g)
    h = GradedExpression.from_symbol(GradedSymbol("h", (1, 1)), g)
    fh = multiply(f, h)
    hf = multiply(h, f)
    # hf carries the extra commuter from one transposition
    (syms1, fac1, c1), = fh.terms
    (syms2, fac2, c2), = hf.terms
    assert syms1 == syms2 and c1 == c2 == 1
    assert g.mul(fac1, tau((1, 0), (1, 1))) == fac2


def test_module_symbols_stay_rightmost():
    g = CommuterGroup(1)
    r = GradedExpression.from_symbol(GradedSymbol("r", (1,)), g)
    m = GradedExpression.from_symbol(GradedSymbol("a", (1,), module=True), g)
    rm = multiply(r, m)
    mr = multiply(m, r)
    (syms, _, _), = rm.terms
    assert syms[-1].module
    (syms2, fac2, _), = mr.terms
    assert syms2[-1].module and fac2 == tau((1,), (1,))
    with pytest.raises(SignError):
        multiply(m, m)


def test_addition_collects_terms():
    g = CommuterGroup(1)
    f = GradedExpression.from_symbol(GradedSymbol("f", (1,)), g)
    two_f = f.add(f)
    assert two_f.terms[0][2] == 2
    minus = GradedExpression(g, (((GradedSymbol("f", (1,)),), g.identity(), -2),))
    assert two_f.add(minus).terms == ()


def test_trace_relations():
    g = CommuterGroup(2)
    assert signs.d_of_trace_relations((1, 1), "D-to-trace") == (1, 1)
    assert signs.d_of_trace_relations((2, 1), "trace-squared") == (0, 0)
    assert signs.d_of_trace_relations((2, 1), "tau-is-D-of-twist") == tau(
        (2, 1), (2, 1)
    )


def test_motivic_skew_examples():
    assert motivic_skew(2, 1, 3, 1) == (0, 1)
    assert motivic_skew(1, 1, 1, 1) == (0, 1)
    # with no second coordinate the classical sign survives
    assert motivic_skew(1, 0, 1, 0) == (1, 0)
    assert motivic_skew(2, 0, 3, 0) == (0, 0)


def test_realization_conventions():
    assert realization_correction("X1=S^{1,0}", b=1, c=2, d=1) == -1
    assert realization_correction("X1=S^{1,0}", b=0, c=2, d=1) == 1
    assert realization_correction("X1=S^{1,1}", a=2, b=1, s=1) == -1
    with pytest.raises(SignError):
        realization_correction("X1=S^{1,0}", b=1)
    with pytest.raises(SignError):
        realization_correction("nope", b=1, c=1, d=1)
