"""High-precision numerical verification of elliptic hypergeometric identities."""

from .numerics import DEFAULT_CONTEXT, DivisionByZero, DomainError, EllVerifyError, EvaluationError, NumericContext
from .registry import eval_side, get, limit_consistency, list_identities
from .theta import FactorialArgs, Kernel, qp_factorial, theta
from .verifier import SampleConfig, verify_all, verify_identity

__all__ = [
    "DEFAULT_CONTEXT",
    "DivisionByZero",
    "DomainError",
    "EllVerifyError",
    "EvaluationError",
    "FactorialArgs",
    "Kernel",
    "NumericContext",
    "SampleConfig",
    "eval_side",
    "get",
    "limit_consistency",
    "list_identities",
    "qp_factorial",
    "theta",
    "verify_all",
    "verify_identity",
]
