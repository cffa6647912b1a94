import cmath

import pytest
from gmpy2 import mpc
from hypothesis import given, settings
from hypothesis import strategies as st

from ellverify.numerics import DEFAULT_CONTEXT, DomainError, NumericContext, rel_error
from ellverify.theta import FactorialArgs, Kernel, qp_factorial, qp_factorial_multi, theta, truncation_depth

# theta(a; p) at 256 bits; agrees with mpmath's qp(a, p) qp(p/a, p) to ~1e-63
FROZEN_THETA = [
    (0.3 + 0.2j, 0.1,
     "0.5361764204051398025344866434961718815167167930500148363967574882-"
     "0.04638092582236110551414179027101093847317135384579993527767635j"),
    (1.7 - 0.4j, 0.25j,
     "-0.4536872520325346832552547388543987316542932661977156409337346+"
     "0.8389716901584022904005861345001136276233023228697700247463177912j"),
    (-0.8 + 1.1j, 0.2 - 0.1j,
     "1.778859302955045898559381670381505549464405758407444660710276701-"
     "2.001242631486376499304704419164973664062855266965695573026701106j"),
]


def polar_st(lo, hi):
    return st.builds(lambda r, t: complex(cmath.rect(r, t)),
                     st.floats(lo, hi), st.floats(0.0, 2 * cmath.pi))


args = polar_st(0.3, 3.0)
nomes = polar_st(0.01, 0.5)


@pytest.mark.parametrize("a,p,expected", FROZEN_THETA)
def test_frozen_values(a, p, expected):
    assert rel_error(theta(a, p), mpc(expected, 256)) < 1e-55


def test_against_mpmath_product():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 80
    a, p = 0.9 - 1.3j, 0.31 + 0.1j
    ref = mpmath.qp(mpmath.mpc(a), mpmath.mpc(p)) * mpmath.qp(mpmath.mpc(p) / mpmath.mpc(a), mpmath.mpc(p))
    got = theta(a, p)
    assert abs(complex(got) - complex(ref)) < 1e-14
    with DEFAULT_CONTEXT.activate():
        assert rel_error(got, mpc(mpmath.nstr(ref.real, 75)) + 1j * mpc(mpmath.nstr(ref.imag, 75))) < 1e-55


def test_zero_nome_is_linear():
    assert theta(0.25 + 0.5j, 0) == 1 - mpc(0.25 + 0.5j)
    # continuous extension to a = 0 when p = 0
    assert theta(0, 0) == 1


def test_domain_errors():
    with pytest.raises(DomainError):
        theta(0, 0.1)
    with pytest.raises(DomainError):
        theta(0.5, 1.0)
    with pytest.raises(DomainError):
        theta(0.5, 1.2j)


def test_theta_vanishes_at_one():
    assert abs(theta(1, 0.2)) == 0


@settings(max_examples=60, deadline=None)
@given(args, nomes)
def test_inversion(a, p):
    with DEFAULT_CONTEXT.activate():
        a = mpc(a)
        assert rel_error(theta(a, p), -a * theta(1 / a, p)) < 1e-50


@settings(max_examples=60, deadline=None)
@given(args, nomes)
def test_quasi_periodicity(a, p):
    with DEFAULT_CONTEXT.activate():
        a, p = mpc(a), mpc(p)
        assert rel_error(theta(p * a, p), -theta(a, p) / a) < 1e-50


@settings(max_examples=40, deadline=None)
@given(args, polar_st(0.7, 1.4), nomes, st.integers(0, 6), st.integers(0, 6))
def test_factorial_splitting(a, q, p, n, m):
    with DEFAULT_CONTEXT.activate():
        a, q = mpc(a), mpc(q)
        whole = qp_factorial(FactorialArgs(a, q, p, n + m))
        split = qp_factorial(FactorialArgs(a, q, p, n)) * qp_factorial(FactorialArgs(a * q**n, q, p, m))
        assert rel_error(whole, split) < 1e-50


def test_factorial_is_product_of_thetas():
    a, q, p = mpc(0.5 + 0.5j), mpc(0.9 - 0.1j), mpc(0.15)
    with DEFAULT_CONTEXT.activate():
        direct = theta(a, p) * theta(a * q, p) * theta(a * q * q, p)
    assert rel_error(qp_factorial(FactorialArgs(a, q, p, 3)), direct) < 1e-70
    assert qp_factorial(FactorialArgs(a, q, p, 0)) == 1


def test_multi_factorial():
    q, p = 0.9 - 0.1j, 0.15
    single = [qp_factorial(FactorialArgs(x, q, p, 4)) for x in (0.5j, 1.5)]
    with DEFAULT_CONTEXT.activate():
        assert rel_error(qp_factorial_multi([0.5j, 1.5], q, p, 4), single[0] * single[1]) < 1e-70


def test_negative_length_rejected_in_public_api():
    with pytest.raises(ValueError):
        FactorialArgs(0.5, 0.9, 0.1, -1)
    with pytest.raises(ValueError):
        qp_factorial_multi([0.5], 0.9, 0.1, -1)


def test_kernel_negative_length_inverts_backwards_product(ctx):
    with ctx.activate():
        K = Kernel(ctx)
        x, q, p = mpc(0.7 + 0.1j), mpc(1.1j), mpc(0.2)
        assert rel_error(K.fac(x, q, p, -1), 1 / theta(x / q, p)) < 1e-70
        assert rel_error(K.fac(x, q, p, -2) * theta(x / q, p) * theta(x / (q * q), p), 1) < 1e-70


def test_kernel_caches_and_tracks_poles(ctx):
    with ctx.activate():
        K = Kernel(ctx)
        q, p = mpc(0.8), mpc(0.1)
        K.fac(mpc(0.5), q, p, 5)
        calls = K.theta_calls
        K.fac(mpc(0.5), q, p, 3)
        assert K.theta_calls == calls
        assert K.min_den == float("inf")
        K.dfac(mpc(0.5), q, p, 5)
        assert K.min_den == pytest.approx(min(abs(complex(theta(0.5 * 0.8**j, 0.1))) for j in range(5)))
        K.reset_poles()
        K.dth(mpc(1.0001), p)
        assert K.min_den < 1e-3


def test_truncation_depth_grows_with_precision():
    shallow = truncation_depth(mpc(1.5), mpc(0.3), NumericContext().log_theta_epsilon)
    deep = truncation_depth(mpc(1.5), mpc(0.3), NumericContext.for_precision(512).log_theta_epsilon)
    assert deep > shallow > 4
    assert truncation_depth(mpc(2), mpc(0), -100.0) == 1


def test_precision_512_matches_256():
    a, p = 1.3 - 0.2j, 0.27 + 0.05j
    hi = theta(a, p, NumericContext.for_precision(512))
    assert rel_error(hi, theta(a, p)) < 1e-58
