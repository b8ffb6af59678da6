"""Two-variable differential operators and the projective operator action."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from svpsido.halfint import h
from svpsido.psido import R, Symbol
from svpsido.ring import CoeffFn, GaussRat, I_M, Scalar
from svpsido.diffop2 import (
    DiffOp2,
    d_pi,
    dop_bracket,
    dop_from_r_symbol,
    dop_mul,
    free_evolution_op,
)
from svpsido.svalgebra import SvElement, phase_mode, shift_mode, sv_bracket, time_mode


def test_leibniz_single_step():
    # d_r o r = r d_r + 1
    got = dop_mul(DiffOp2.d_r(), DiffOp2.function(CoeffFn.x_pow(1)))
    assert got == DiffOp2({(0, 1): CoeffFn.x_pow(1), (0, 0): CoeffFn.one()})


def test_leibniz_double_step():
    # d_t d_r o (t r) expands through both variables
    d = dop_mul(DiffOp2.d_t(), DiffOp2.d_r())
    f = DiffOp2.function(CoeffFn.t_pow(1) * CoeffFn.x_pow(1))
    got = dop_mul(d, f)
    tr = CoeffFn.t_pow(1) * CoeffFn.x_pow(1)
    expect = DiffOp2(
        {
            (1, 1): tr,
            (1, 0): CoeffFn.t_pow(1),
            (0, 1): CoeffFn.x_pow(1),
            (0, 0): CoeffFn.one(),
        }
    )
    assert got == expect


def test_negative_slots_rejected():
    with pytest.raises(ValueError):
        DiffOp2({(-1, 0): CoeffFn.one()})


def test_free_evolution_op_shape():
    op = free_evolution_op()
    assert op.coeff(1, 0) == CoeffFn.const(Scalar.m_pow(1, GaussRat(0, -2)))
    assert op.coeff(0, 2) == CoeffFn.const(-1)


coef = st.integers(min_value=-3, max_value=3)


def ops():
    def build(c1, i1, j1, c2, i2, j2, tp, xp):
        fn = CoeffFn.mono(tp, xp, c1)
        return DiffOp2({(i1, j1): fn, (i2, j2): CoeffFn.const(c2)})

    slots = st.integers(min_value=0, max_value=2)
    degs = st.integers(min_value=0, max_value=2)
    return st.builds(build, coef, slots, slots, coef, slots, slots, degs, degs)


@given(ops(), ops(), ops())
def test_mul_associative(a, b, c):
    assert dop_mul(dop_mul(a, b), c) == dop_mul(a, dop_mul(b, c))


@given(ops(), ops(), ops())
def test_bracket_jacobi(a, b, c):
    total = (
        dop_bracket(a, dop_bracket(b, c))
        + dop_bracket(b, dop_bracket(c, a))
        + dop_bracket(c, dop_bracket(a, b))
    )
    assert total.is_zero()


class TestOperatorAction:
    """d_pi intertwines the algebra bracket with the operator bracket."""

    def test_shift_pair_closes_on_phase(self):
        # the bracket of the two lowest shift operators is the constant iM
        mu = Scalar.zero()
        a = d_pi(mu, SvElement(g=CoeffFn.t_pow(1)))
        b = d_pi(mu, SvElement(g=CoeffFn.one()))
        got = dop_bracket(a, b)
        assert got == DiffOp2({(0, 0): CoeffFn.const(I_M)})
        assert got == d_pi(mu, phase_mode(0))

    @pytest.mark.parametrize("mu", [Fraction(0), Fraction(1, 4), Fraction(1)])
    def test_representation_property(self, mu):
        mus = Scalar.of(mu)
        basis = [
            time_mode(-1),
            time_mode(0),
            time_mode(2),
            shift_mode(h("-1/2")),
            shift_mode(h("3/2")),
            phase_mode(1),
        ]
        for X in basis:
            for Y in basis:
                lhs = dop_bracket(d_pi(mus, X), d_pi(mus, Y))
                rhs = d_pi(mus, sv_bracket(X, Y))
                assert lhs == rhs, (str(X), str(Y))

    def test_mu_term_present(self):
        # the weight enters only through the time part
        mu = Scalar.of(Fraction(1, 4))
        op = d_pi(mu, time_mode(1))  # f = t^2, f' = 2t
        zero_wt = d_pi(Scalar.zero(), time_mode(1))
        diff = op - zero_wt
        assert diff == DiffOp2({(0, 0): CoeffFn.t_pow(1, Fraction(-1, 2))})


def test_embedding_of_space_symbols():
    sym = Symbol(R, {h(2): CoeffFn.x_pow(1), h(0): CoeffFn.t_pow(1)})
    op = dop_from_r_symbol(sym)
    assert op == DiffOp2({(0, 2): CoeffFn.x_pow(1), (0, 0): CoeffFn.t_pow(1)})
    with pytest.raises(ValueError):
        dop_from_r_symbol(Symbol(R, {h(-1): CoeffFn.one()}))
