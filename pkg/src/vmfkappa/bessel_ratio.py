"""Ratios of modified Bessel functions of the first kind.

Everything here works with

    rho_nu(x) = I_nu(x) / I_{nu-1}(x),

which solves the three-term recurrence ``1/rho_nu = 2 nu / x + rho_{nu+1}``
and therefore has the continued fraction

    rho_nu(x) = 1 / (b_0 + 1 / (b_1 + 1 / (b_2 + ...))),   b_k = 2 (nu + k) / x.

No Bessel function value is ever formed, so nothing overflows for large x.
The normalized Turanian

    T_nu(x) = S_nu(x) / I_nu(x)**2 = 1 - rho_{nu+1}(x) / rho_nu(x),

with S_nu = I_nu**2 - I_{nu-1} I_{nu+1}, and the fixed-point map
``phi(x) = rbar * x / rho_nu(x)`` together with its derivative
``rbar * x * T_nu(x)`` are built on top of the ratio.

Only the ``math`` module is used.
"""

import math
import numbers
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

TINY = 1e-300
CF_TOL = 1e-15
CF_MAX_TERMS = 10_000

# Absolute slack, in units of the summands, allowed by the recurrence
# self-check on top of the relative tolerance.
_RECURRENCE_RTOL = 1e-12
_RECURRENCE_ULPS = 8


@dataclass(frozen=True)
class RatioPoint:
    """A validated (order, argument) pair with ``nu > 0`` and finite ``x > 0``."""

    nu: float
    x: float

    def __post_init__(self):
        nu, x = self.nu, self.x
        if not (isinstance(nu, numbers.Real) and math.isfinite(nu) and nu > 0):
            raise DomainError(f"order nu must be finite and > 0, got {nu!r}")
        if not (isinstance(x, numbers.Real) and math.isfinite(x) and x > 0):
            raise DomainError(f"argument x must be finite and > 0, got {x!r}")


@dataclass(frozen=True)
class PhiEvaluation:
    value: float
    derivative: float
    rbar: float


def _check_rbar(rbar):
    if not (isinstance(rbar, numbers.Real) and 0.0 < rbar < 1.0):
        raise DomainError(f"rbar must lie strictly inside (0, 1), got {rbar!r}")


def cf_depth(nu, x):
    """Number of partial denominators after ``b_0`` needed for convergence.

    Forward modified Lentz on ``b_0 + 1/(b_1 + 1/(b_2 + ...))``; stops once
    consecutive convergents agree to ``CF_TOL`` relative.
    """
    f = 2.0 * nu / x
    if f == 0.0:
        f = TINY
    c, d = f, 0.0
    for k in range(1, CF_MAX_TERMS + 1):
        b = 2.0 * (nu + k) / x
        d = b + d
        if d == 0.0:
            d = TINY
        c = b + 1.0 / c
        if c == 0.0:
            c = TINY
        d = 1.0 / d
        delta = c * d
        if abs(delta - 1.0) < CF_TOL:
            return k
    raise ConvergenceError(
        f"continued fraction for rho_{nu}({x}) did not converge in "
        f"{CF_MAX_TERMS} terms"
    )


def backward_depth(nu, x):
    """Truncation depth used for backward evaluation.

    Lentz stops once ``rho`` itself has settled to ``CF_TOL``; the padding
    also settles ``1 - rho``, which is O(1/x) and otherwise keeps a
    truncation error of order ``CF_TOL * x`` relative.
    """
    return cf_depth(nu, x) * 5 // 4 + 2


def _tail(nu, x, depth):
    # Backward evaluation of 1/(b_1 + 1/(b_2 + ... + 1/b_depth)), i.e. the
    # depth-truncated rho_{nu+1}.  Backward order keeps the error near 1 ulp
    # where the forward Lentz product drifts by tens of ulps at large x.
    t = 0.0
    for k in range(depth, 0, -1):
        t = 1.0 / (2.0 * (nu + k) / x + t)
    return t


def _tail_with_deficit(nu, x, depth):
    # Same recursion as _tail, also carrying d = 1 - t without forming 1 - t:
    # 1 - 1/(b + t') = (b - d') / (b + 1 - d').
    t, d = 0.0, 1.0
    for k in range(depth, 0, -1):
        b = 2.0 * (nu + k) / x
        t, d = 1.0 / (b + t), (b - d) / (b + 1.0 - d)
    return t, d


def _pair_depth(nu, x):
    return max(backward_depth(nu, x), backward_depth(nu + 1.0, x) + 1)


def ratio_pair(nu, x):
    """Return ``(rho_nu(x), rho_{nu+1}(x))`` from a single continued fraction.

    Both values come from the same truncation, so they satisfy the recurrence
    ``1/rho_nu - rho_{nu+1} = 2 nu / x`` up to rounding of the last step.
    """
    RatioPoint(nu, x)
    b0 = 2.0 * nu / x
    if math.isinf(b0):
        # x is subnormal: the leading series terms are exact in double.
        return x / (2.0 * nu), x / (2.0 * (nu + 1.0))
    t = _tail(nu, x, _pair_depth(nu, x))
    return 1.0 / (b0 + t), t


def ratio(nu, x):
    """Bessel ratio ``I_nu(x) / I_{nu-1}(x)`` for ``nu > 0``, ``x > 0``.

    >>> round(ratio(0.5, 1.0), 12)   # tanh(1)
    0.761594155956
    """
    RatioPoint(nu, x)
    b0 = 2.0 * nu / x
    if math.isinf(b0):
        return x / (2.0 * nu)
    return 1.0 / (b0 + _tail(nu, x, backward_depth(nu, x)))


def recurrence_residual(nu, x):
    """``1/rho_nu(x) - rho_{nu+1}(x) - 2 nu / x`` using independent evaluations."""
    return 1.0 / ratio(nu, x) - ratio(nu + 1.0, x) - 2.0 * nu / x


def turanian_normalized(nu, x):
    """Normalized Turanian ``S_nu(x) / I_nu(x)**2`` computed from ratios only.

    Mathematically ``1 - rho_{nu+1} / rho_nu``.  With ``t = rho_{nu+1}``,
    ``d = 1 - t`` and ``1/rho_nu = 2 nu / x + t`` this is
    ``d (2 - d) - (2 nu / x) t``, which is evaluated instead because the
    quotient form loses about ``log10(x)`` digits to cancellation once both
    ratios approach 1.
    """
    RatioPoint(nu, x)
    b0 = 2.0 * nu / x
    if math.isinf(b0):
        return 1.0 / (nu + 1.0)
    t, d = _tail_with_deficit(nu, x, _pair_depth(nu, x))
    r0 = 1.0 / (b0 + t)
    lhs = 1.0 / r0 - t
    slack = _RECURRENCE_RTOL * b0 + _RECURRENCE_ULPS * math.ulp(1.0 / r0)
    if not abs(lhs - b0) <= slack:
        raise ConvergenceError(
            f"recurrence self-check failed at nu={nu}, x={x}: "
            f"1/rho_nu - rho_nu+1 = {lhs!r}, expected {b0!r}"
        )
    return d * (2.0 - d) - b0 * t


def phi(nu, x, rbar):
    """Fixed-point map ``rbar * x * I_{nu-1}(x) / I_nu(x)``."""
    _check_rbar(rbar)
    return rbar * x / ratio(nu, x)


def phi_prime(nu, x, rbar):
    """Derivative of :func:`phi`, equal to ``rbar * x * T_nu(x)``."""
    _check_rbar(rbar)
    return rbar * x * turanian_normalized(nu, x)


def evaluate_phi(nu, x, rbar):
    return PhiEvaluation(phi(nu, x, rbar), phi_prime(nu, x, rbar), rbar)
