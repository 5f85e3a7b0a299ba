import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lagflow import expr
from lagflow.expr import Add, Call, Const, Div, Mul, Neg, Pow, Var


def test_identity_tree():
    assert expr.parse("eta") == Var()


def test_polynomial_value():
    tree = expr.parse("2*eta^2+1")
    v, d1, d2 = expr.eval_d2(tree, 3.0)
    assert v == 19.0
    assert d1 == 12.0
    assert d2 == 4.0


def test_pole_is_domain_error():
    tree = expr.parse("exp(-eta)/eta")
    with pytest.raises(expr.ExprDomainError):
        expr.eval_d2(tree, 0.0)


def test_exp_at_zero():
    assert expr.eval_d2(expr.parse("exp(eta)"), 0.0) == (1.0, 1.0, 1.0)


def test_sqrt_hand_derivatives():
    v, d1, d2 = expr.eval_d2(expr.parse("sqrt(2*eta+1)"), 4.0)
    assert v == pytest.approx(3.0, abs=1e-15)
    assert d1 == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert d2 == pytest.approx(-1.0 / 27.0, abs=1e-15)


def test_power_rules():
    assert expr.eval_d2(expr.parse("eta^2"), 3.0) == (9.0, 6.0, 2.0)
    assert expr.eval_d2(expr.parse("eta^-1"), 2.0) == (0.5, -0.25, 0.25)
    with pytest.raises(expr.ExprDomainError):
        expr.eval_d2(expr.parse("eta^-1"), 0.0)


def test_trig_derivatives():
    v, d1, d2 = expr.eval_d2(expr.parse("sin(eta)"), 0.7)
    assert v == pytest.approx(math.sin(0.7))
    assert d1 == pytest.approx(math.cos(0.7))
    assert d2 == pytest.approx(-math.sin(0.7))


def test_ln_non_positive():
    with pytest.raises(expr.ExprDomainError):
        expr.eval_d2(expr.parse("ln(eta)"), -1.0)
    with pytest.raises(expr.ExprDomainError):
        expr.eval_d2(expr.parse("sqrt(eta)"), 0.0)


def test_syntax_error_offset():
    with pytest.raises(expr.ExprSyntaxError) as err:
        expr.parse("2*eta +* 3")
    assert err.value.offset == 7


def test_unknown_identifier():
    with pytest.raises(expr.ExprSyntaxError) as err:
        expr.parse("2*zeta")
    assert "zeta" in str(err.value)


def test_trailing_input():
    with pytest.raises(expr.ExprSyntaxError):
        expr.parse("eta)")


def test_precedence():
    assert expr.eval_d2(expr.parse("1+2*3^2"), 0.0)[0] == 19.0
    assert expr.eval_d2(expr.parse("-eta^2"), 3.0)[0] == -9.0
    assert expr.eval_d2(expr.parse("6/2/3"), 0.0)[0] == 1.0
    assert expr.eval_d2(expr.parse("1-2-3"), 0.0)[0] == -4.0


def test_is_constant():
    assert expr.is_constant(expr.parse("1+sin(2)"))
    assert not expr.is_constant(expr.parse("1+sin(eta)"))


# hypothesis strategy over the parser's image: constants are nonnegative
# (negative values come from Neg, matching what parsing can produce)

_consts = st.one_of(
    st.integers(min_value=0, max_value=9).map(float),
    st.floats(min_value=0.0, max_value=100.0, allow_nan=False, allow_infinity=False),
)


def _trees(max_depth=4):
    base = st.one_of(_consts.map(Const), st.just(Var()))

    def extend(children):
        return st.one_of(
            st.tuples(children, children).map(lambda ab: Add(*ab)),
            st.tuples(children, children).map(lambda ab: Mul(*ab)),
            st.tuples(children, children).map(lambda ab: Div(*ab)),
            children.map(Neg),
            st.tuples(children, st.integers(min_value=-3, max_value=4)).map(
                lambda an: Pow(*an)),
            st.tuples(st.sampled_from(["exp", "ln", "sqrt", "sin", "cos"]),
                      children).map(lambda fa: Call(*fa)),
        )

    return st.recursive(base, extend, max_leaves=25)


@given(_trees())
@settings(max_examples=200)
def test_pretty_roundtrip(tree):
    assert expr.parse(expr.pretty(tree)) == tree


@given(st.lists(st.floats(min_value=-3, max_value=3), min_size=1, max_size=5),
       st.floats(min_value=-2, max_value=2))
@settings(max_examples=100)
def test_polynomial_derivatives_match_finite_differences(coeffs, eta):
    text = " + ".join(f"{c!r}*eta^{n}" for n, c in enumerate(coeffs))
    tree = expr.parse(text)
    h = 1e-5
    v, d1, d2 = expr.eval_d2(tree, eta)
    vp = expr.eval_d2(tree, eta + h)[0]
    vm = expr.eval_d2(tree, eta - h)[0]
    fd1 = (vp - vm) / (2 * h)
    fd2 = (vp - 2 * v + vm) / (h * h)
    assert abs(fd1 - d1) / max(1.0, abs(d1)) < 1e-8
    # second differences lose ~6 digits to cancellation at this step size
    assert abs(fd2 - d2) < 1e-3 * max(1.0, abs(v), abs(d2))
