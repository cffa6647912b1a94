"""Precision policy, complex values and the comparison metric."""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, Union

import gmpy2
from gmpy2 import mpc, mpfr

CValue = mpc
Number = Union[mpc, mpfr, complex, float, int, str]


class EllVerifyError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(EllVerifyError, ValueError):
    """An argument lies outside the domain of a theta-type function."""


class EvaluationError(EllVerifyError, ArithmeticError):
    """A computed quantity is not finite."""


class DivisionByZero(EllVerifyError, ZeroDivisionError):
    pass


@dataclass(frozen=True)
class NumericContext:
    """Arithmetic and comparison policy shared by one verification run.

    ``theta_epsilon`` is the relative tail target for the truncated infinite
    products, ``pole_delta`` the smallest modulus a denominator theta factor
    may have, and ``rel_tolerance`` the pass threshold for identity checks.
    """

    precision_bits: int = 256
    theta_epsilon: float = 1e-60
    pole_delta: float = 1e-3
    rel_tolerance: float = 1e-30

    def __post_init__(self) -> None:
        if int(self.precision_bits) != self.precision_bits or self.precision_bits < 64:
            raise ValueError(f"precision_bits must be an integer >= 64, got {self.precision_bits}")
        if not self.theta_epsilon > 0:
            raise ValueError("theta_epsilon must be positive")
        if self.theta_epsilon < 2.0 ** (-self.precision_bits):
            raise ValueError(
                f"theta_epsilon={self.theta_epsilon:g} is below the resolution "
                f"of {self.precision_bits}-bit arithmetic"
            )
        if not self.pole_delta > 0:
            raise ValueError("pole_delta must be positive")
        if not self.rel_tolerance > 0:
            raise ValueError("rel_tolerance must be positive")

    @classmethod
    def for_precision(cls, bits: int, **overrides) -> "NumericContext":
        # keep the 256-bit truncation/precision ratio (1e-60 at 256 bits)
        eps = 10.0 ** (-60.0 * bits / 256.0)
        eps = max(eps, 2.0 ** (-bits))
        return cls(precision_bits=bits, theta_epsilon=eps, **overrides)

    def with_(self, **changes) -> "NumericContext":
        return replace(self, **changes)

    @contextmanager
    def activate(self) -> Iterator[None]:
        """Make this context's precision the active gmpy2 precision."""
        with gmpy2.context(gmpy2.get_context(), precision=self.precision_bits):
            yield

    @property
    def log_theta_epsilon(self) -> float:
        return math.log(self.theta_epsilon)


DEFAULT_CONTEXT = NumericContext()


def cval(x: Number) -> mpc:
    """Convert ``x`` to a complex value at the active precision."""
    if isinstance(x, mpc):
        return x
    if isinstance(x, str):
        return mpc(x.replace(" ", ""))
    return mpc(x)


def is_finite(x: Number) -> bool:
    return bool(gmpy2.is_finite(cval(x)))


def check_finite(x: mpc, what: str = "value") -> mpc:
    if not gmpy2.is_finite(x):
        raise EvaluationError(f"{what} is not finite: {x}")
    return x


def rel_error(x: Number, y: Number) -> mpfr:
    """``|x - y| / max(|x|, |y|, 1)``.

    The floor of 1 keeps the metric meaningful when both sides are tiny,
    e.g. for sums that vanish identically.
    """
    x = cval(x)
    y = cval(y)
    scale = max(abs(x), abs(y), mpfr(1))
    return abs(x - y) / scale


def as_float(x) -> float:
    """Lossy conversion of an mpfr to float for reporting."""
    return float(x)


def modulus_log2(x: mpc) -> float:
    if x == 0:
        return -math.inf
    return float(gmpy2.log2(abs(x)))


def balanced_product(factors: Iterable[mpc], precision_bits: int) -> mpc:
    """Multiply ``factors``; reorder by magnitude if the running product drifts.

    The plain running product is used unless its modulus leaves
    ``[2^(-P/2), 2^(P/2)]``, in which case the factors are re-multiplied in
    an order that alternates large and small magnitudes.
    """
    factors = list(factors)
    bound = precision_bits / 2
    acc = mpc(1)
    drifted = False
    for f in factors:
        acc *= f
        if acc == 0:
            return acc
        e = modulus_log2(acc)
        if e > bound or e < -bound:
            drifted = True
    if not drifted:
        return acc
    ordered = sorted(factors, key=modulus_log2)
    acc = mpc(1)
    lo, hi = 0, len(ordered) - 1
    while lo <= hi:
        if modulus_log2(acc) > 0:
            acc *= ordered[lo]
            lo += 1
        else:
            acc *= ordered[hi]
            hi -= 1
    return acc
