import gmpy2
import pytest
from gmpy2 import mpc, mpfr

from ellverify.numerics import (
    DEFAULT_CONTEXT,
    NumericContext,
    balanced_product,
    check_finite,
    cval,
    is_finite,
    rel_error,
    EvaluationError,
)


def test_defaults():
    c = DEFAULT_CONTEXT
    assert c.precision_bits == 256
    assert c.theta_epsilon == 1e-60
    assert c.pole_delta == 1e-3
    assert c.rel_tolerance == 1e-30


@pytest.mark.parametrize("bits", [32, 63])
def test_precision_floor(bits):
    with pytest.raises(ValueError):
        NumericContext(precision_bits=bits)


def test_epsilon_cannot_beat_precision():
    with pytest.raises(ValueError):
        NumericContext(precision_bits=64, theta_epsilon=1e-60)


def test_for_precision_scales_epsilon():
    c = NumericContext.for_precision(512)
    assert c.precision_bits == 512
    assert c.theta_epsilon == pytest.approx(1e-120)
    assert NumericContext.for_precision(512, rel_tolerance=1e-50).rel_tolerance == 1e-50


def test_activate_sets_and_restores_precision():
    before = gmpy2.get_context().precision
    with NumericContext.for_precision(512).activate():
        assert gmpy2.get_context().precision == 512
    assert gmpy2.get_context().precision == before


def test_rel_error_is_symmetric_and_floored():
    assert rel_error(1, 1) == 0
    assert rel_error(2, 1) == rel_error(1, 2) == mpfr("0.5")
    # both tiny: denominator is floored at 1
    assert rel_error(mpc("1e-40"), mpc("2e-40")) == pytest.approx(1e-40)


def test_cval_accepts_common_inputs():
    assert cval(2) == mpc(2)
    assert cval(0.5 + 1j) == mpc(0.5 + 1j)
    assert cval("1.5") == mpc("1.5")
    assert cval(mpfr(3)) == mpc(3)


def test_finite_checks():
    with DEFAULT_CONTEXT.activate():
        bad = mpc(1) / mpc(0)
    assert not is_finite(bad)
    assert is_finite(mpc(1))
    with pytest.raises(EvaluationError):
        check_finite(bad)


def test_balanced_product_survives_extreme_ranges():
    with DEFAULT_CONTEXT.activate():
        big, small = mpc("1e200"), mpc("1e-200")
        out = balanced_product([big, big, small, small, mpc(3)], 256)
    assert rel_error(out, 3) < 1e-70
