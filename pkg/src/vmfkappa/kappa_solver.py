"""Maximum-likelihood concentration of the von Mises-Fisher distribution.

The estimate solves ``I_nu(k) / I_{nu-1}(k) = rbar`` with ``nu = p / 2``.
Two independent routes are provided:

* :func:`solve_fixed_point` iterates ``k <- phi(k) = rbar * k / rho_nu(k)``.
  The map is a contraction for ``nu >= 1/2`` (``0 < phi' < 1``) so any
  positive start converges to the unique fixed point.
* :func:`solve_bracket` brackets the single sign change of
  ``rho_nu(k) - rbar`` and refines it with secant steps safeguarded by
  bisection.  It works for every ``nu > 0``, including ``0 < nu < 1/2``
  where ``rho_nu`` is unimodal rather than increasing.
"""

import logging
import math
import numbers
from dataclasses import dataclass, field

from . import bessel_ratio
from .errors import ConvergenceError, DomainError

log = logging.getLogger(__name__)

FIXED_POINT = "fixed_point"
BRACKET = "bracket"

BRACKET_CAP = 1e308
# Once a step is this many ulps of the iterate, rounding in phi dominates and
# further iterations cannot improve the estimate.
_NOISE_ULPS = 4


@dataclass(frozen=True)
class EstimationProblem:
    """Order ``nu`` (or dimension ``p``, giving ``nu = p/2``) and ``rbar``.

    Exactly one of ``p`` and ``nu`` must be supplied.
    """

    rbar: float
    p: int | None = None
    nu: float | None = None

    def __post_init__(self):
        if (self.p is None) == (self.nu is None):
            raise DomainError("give exactly one of p and nu")
        if self.p is not None:
            p = self.p
            if isinstance(p, bool) or not isinstance(p, numbers.Integral) or p < 2:
                raise DomainError(f"dimension p must be an integer >= 2, got {p!r}")
            object.__setattr__(self, "nu", p / 2.0)
        nu = self.nu
        if not (isinstance(nu, numbers.Real) and math.isfinite(nu) and nu > 0):
            raise DomainError(f"order nu must be finite and > 0, got {nu!r}")
        r = self.rbar
        if not isinstance(r, numbers.Real) or math.isnan(r):
            raise DomainError(f"rbar must be a real number, got {r!r}")
        if r <= 0.0:
            raise DomainError(
                f"rbar = {r!r}: no positive solution (the estimate would be 0)"
            )
        if r >= 1.0:
            raise DomainError(
                f"rbar = {r!r}: no finite solution (the estimate would be infinite)"
            )


@dataclass(frozen=True)
class SolverOptions:
    """Tolerances and iteration cap.

    ``x0=None`` selects the heuristic starting point, otherwise ``x0`` is
    used verbatim by the fixed-point solver (and as the first bracket probe).
    """

    tol_x: float = 1e-12
    tol_residual: float = 1e-12
    max_iter: int = 500
    x0: float | None = None

    def __post_init__(self):
        for name in ("tol_x", "tol_residual"):
            v = getattr(self, name)
            if not (isinstance(v, numbers.Real) and v > 0 and math.isfinite(v)):
                raise DomainError(f"{name} must be a finite positive number, got {v!r}")
        if isinstance(self.max_iter, bool) or not isinstance(self.max_iter, numbers.Integral) \
                or self.max_iter < 1:
            raise DomainError(f"max_iter must be an integer >= 1, got {self.max_iter!r}")
        if self.x0 is not None and not (
            isinstance(self.x0, numbers.Real) and math.isfinite(self.x0) and self.x0 > 0
        ):
            raise DomainError(f"x0 must be a finite positive number, got {self.x0!r}")


@dataclass(frozen=True)
class SolveResult:
    kappa_hat: float
    method: str
    iterations: int
    trace: tuple = field(repr=False)
    residual: float
    nu: float
    rbar: float

    def to_dict(self, include_trace=False):
        d = {
            "nu": self.nu,
            "rbar": self.rbar,
            "kappa_hat": self.kappa_hat,
            "method": self.method,
            "iterations": self.iterations,
            "residual": self.residual,
        }
        if include_trace:
            d["trace"] = list(self.trace)
        return d


def initial_guess(nu, rbar):
    """Closed-form approximation ``rbar (2 nu - rbar^2) / (1 - rbar^2)``."""
    return rbar * (2.0 * nu - rbar * rbar) / (1.0 - rbar * rbar)


def _start(prob, opts):
    if opts.x0 is not None:
        return float(opts.x0)
    x0 = initial_guess(prob.nu, prob.rbar)
    # for nu < 1/2 and small rbar the approximation can go non-positive
    return x0 if x0 > 0 else prob.rbar * 2.0 * prob.nu


def _residual(nu, x, rbar):
    return abs(bessel_ratio.ratio(nu, x) - rbar)


def solve_fixed_point(prob, opts=SolverOptions()):
    """Fixed-point iteration ``x_{k+1} = rbar * x_k / rho_nu(x_k)``.

    Only admitted for ``nu >= 1/2``, where the map is a contraction.

    Stops when the contraction error bound ``q/(1-q) * |x_{k+1} - x_k|``
    (``q`` the observed step ratio, floored at 1) is below ``tol_x * x_{k+1}``
    and the residual ``|rho_nu(x) - rbar|`` is below ``tol_residual``.
    """
    nu, rbar = prob.nu, prob.rbar
    if nu < 0.5:
        raise DomainError(
            f"fixed-point iteration needs nu >= 1/2 (got nu={nu}); use solve_bracket"
        )
    x = _start(prob, opts)
    trace = [x]
    prev_step = None
    for it in range(1, opts.max_iter + 1):
        x_new = bessel_ratio.phi(nu, x, rbar)
        step = abs(x_new - x)
        trace.append(x_new)
        x = x_new
        q = step / prev_step if prev_step else 0.0
        gain = q / (1.0 - q) if q < 1.0 else math.inf
        bound = max(1.0, gain) * step
        prev_step = step
        if bound <= opts.tol_x * x or step <= _NOISE_ULPS * math.ulp(x):
            res = _residual(nu, x, rbar)
            if res <= opts.tol_residual:
                log.debug("fixed point nu=%g rbar=%g: %d iterations", nu, rbar, it)
                return SolveResult(x, FIXED_POINT, it, tuple(trace), res, nu, rbar)
    raise ConvergenceError(
        f"fixed-point iteration did not converge in {opts.max_iter} iterations "
        f"(nu={nu}, rbar={rbar}, last iterate {x!r})"
    )


def _bracket(f, x0):
    lo = hi = x0
    flo = fhi = f(x0)
    if fhi <= 0.0:
        while fhi <= 0.0:
            lo, flo = hi, fhi
            hi *= 2.0
            if hi > BRACKET_CAP:
                raise ConvergenceError("bracket expansion exceeded 1e308; rbar too close to 1")
            fhi = f(hi)
    else:
        while flo > 0.0:
            hi, fhi = lo, flo
            lo *= 0.5
            if lo == 0.0:
                raise ConvergenceError("bracket contraction reached 0")
            flo = f(lo)
    return lo, flo, hi, fhi


def solve_bracket(prob, opts=SolverOptions()):
    """Root of ``rho_nu(x) - rbar`` by bracketing, secant and bisection steps.

    ``rho_nu - rbar`` is negative left of the root and positive right of it
    for every ``nu > 0``: increasing to the asymptote 1 for ``nu >= 1/2``,
    and for ``nu < 1/2`` rising above 1 before descending back towards it.
    """
    nu, rbar = prob.nu, prob.rbar

    def f(x):
        try:
            return bessel_ratio.ratio(nu, x) - rbar
        except ConvergenceError as exc:
            raise ConvergenceError(
                f"cannot evaluate rho_{nu} at x={x!r} while bracketing; "
                f"rbar={rbar} is too close to 1"
            ) from exc

    lo, flo, hi, fhi = _bracket(f, _start(prob, opts))
    trace = []
    bisect = False
    width = hi - lo
    for it in range(1, opts.max_iter + 1):
        m = None
        if not bisect:
            m = hi - fhi * (hi - lo) / (fhi - flo)
            if not lo < m < hi:
                m = None
        if m is None:
            m = 0.5 * (lo + hi)
        fm = f(m)
        trace.append(m)
        if fm < 0.0:
            lo, flo = m, fm
        elif fm > 0.0:
            hi, fhi = m, fm
        else:
            lo = hi = m
        new_width = hi - lo
        # force a bisection after any secant step that fails to halve the bracket
        bisect = new_width > 0.5 * width
        width = new_width
        if abs(fm) <= opts.tol_residual and (
            width <= opts.tol_x * m or width <= _NOISE_ULPS * math.ulp(m)
        ):
            log.debug("bracket nu=%g rbar=%g: %d iterations", nu, rbar, it)
            return SolveResult(m, BRACKET, it, tuple(trace), abs(fm), nu, rbar)
    raise ConvergenceError(
        f"bracketing did not converge in {opts.max_iter} iterations (nu={nu}, rbar={rbar})"
    )


def solve(prob, opts=SolverOptions(), method=None):
    """Dispatch to the fixed-point solver for ``nu >= 1/2``, else bracketing."""
    if method is None:
        method = FIXED_POINT if prob.nu >= 0.5 else BRACKET
    if method == FIXED_POINT:
        return solve_fixed_point(prob, opts)
    if method == BRACKET:
        return solve_bracket(prob, opts)
    raise DomainError(f"unknown method {method!r}")


def cross_validate(prob, opts=SolverOptions()):
    """Absolute difference between the fixed-point and bracketing estimates."""
    a = solve_fixed_point(prob, opts)
    b = solve_bracket(prob, opts)
    return abs(a.kappa_hat - b.kappa_hat)
