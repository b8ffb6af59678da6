"""Bracket relations of the symmetry algebra in its loop-function form."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from svpsido.halfint import h
from svpsido.ring import CoeffFn, Scalar
from svpsido.svalgebra import (
    SvElement,
    phase_mode,
    shift_mode,
    sv_basis,
    sv_bracket,
    time_mode,
)


def lin(*pairs):
    """Loop function sum(c * t^n for (c, n) in pairs)."""
    out = CoeffFn.zero()
    for c, n in pairs:
        out = out + CoeffFn.t_pow(n, c)
    return out


class TestModeRelations:
    # index grids chosen to cross zero and mix signs
    @pytest.mark.parametrize("n", [-2, -1, 0, 1, 2])
    @pytest.mark.parametrize("p", [-1, 0, 1, 3])
    def test_time_time(self, n, p):
        got = sv_bracket(time_mode(n), time_mode(p))
        assert got == time_mode(n + p).scale(Scalar.of(n - p))

    @pytest.mark.parametrize("n", [-1, 0, 1, 2])
    @pytest.mark.parametrize("twm", [-3, -1, 1, 3])
    def test_time_shift(self, n, twm):
        m = h(Fraction(twm, 2))
        got = sv_bracket(time_mode(n), shift_mode(m))
        coeff = Fraction(n, 2) - m.as_fraction()
        assert got == shift_mode(m + n).scale(Scalar.of(coeff))

    @pytest.mark.parametrize("n", [-1, 0, 2])
    @pytest.mark.parametrize("p", [-2, 0, 1])
    def test_time_phase(self, n, p):
        got = sv_bracket(time_mode(n), phase_mode(p))
        assert got == phase_mode(n + p).scale(Scalar.of(-p))

    @pytest.mark.parametrize("twm", [-3, -1, 1])
    @pytest.mark.parametrize("twp", [-1, 1, 3])
    def test_shift_shift(self, twm, twp):
        m = h(Fraction(twm, 2))
        p = h(Fraction(twp, 2))
        got = sv_bracket(shift_mode(m), shift_mode(p))
        coeff = m.as_fraction() - p.as_fraction()
        assert got == phase_mode((m + p).as_int()).scale(Scalar.of(coeff))

    def test_shift_phase_and_phase_phase_vanish(self):
        assert sv_bracket(shift_mode(h("1/2")), phase_mode(1)).is_zero()
        assert sv_bracket(phase_mode(0), phase_mode(2)).is_zero()


def test_shift_mode_rejects_integer_index():
    with pytest.raises(ValueError):
        shift_mode(h(1))


def test_element_shape_guards():
    with pytest.raises(ValueError):
        SvElement(f=CoeffFn.x_pow(1))  # space dependence is not a loop function
    with pytest.raises(TypeError):
        SvElement(g="t")


def test_basis_inventory():
    basis = sv_basis(3)
    kinds = [k for (k, _, _) in basis]
    assert len(basis) == 20
    assert kinds.count("time") == 7
    assert kinds.count("shift") == 6
    assert kinds.count("phase") == 7
    # indices come out sorted within each family
    sh = [i for (k, i, _) in basis if k == "shift"]
    assert all(sh[j] < sh[j + 1] for j in range(len(sh) - 1))


small = st.integers(min_value=-3, max_value=3)
coeffs = st.integers(min_value=-4, max_value=4)


def elements():
    def build(cf, nf, cg, ng, ch, nh):
        return SvElement(
            f=lin((cf, nf)), g=lin((cg, ng)), h=lin((ch, nh))
        )

    return st.builds(build, coeffs, small, coeffs, small, coeffs, small)


@given(elements(), elements())
def test_antisymmetry(x, y):
    assert sv_bracket(x, y) == sv_bracket(y, x).scale(Scalar.of(-1))


@given(elements(), elements(), elements())
def test_jacobi(x, y, z):
    total = (
        sv_bracket(x, sv_bracket(y, z))
        + sv_bracket(y, sv_bracket(z, x))
        + sv_bracket(z, sv_bracket(x, y))
    )
    assert total.is_zero()


@given(elements(), elements(), elements())
def test_bilinearity_in_first_slot(x, y, z):
    assert sv_bracket(x + y, z) == sv_bracket(x, z) + sv_bracket(y, z)
