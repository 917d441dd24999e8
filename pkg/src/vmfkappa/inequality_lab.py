"""Numerical sweeps of Turan-type inequalities for modified Bessel functions.

All inequalities are compared in normalized form, i.e. divided by
``I_nu(x)**2``, so the left-hand side is always ``T_nu(x)`` from
:func:`vmfkappa.bessel_ratio.turanian_normalized`:

=====================  ===================================================
``turan_left_positive``  ``0 < T_nu(x)``
``eq2_right``            ``T_nu(x) < 1 / (nu + x)``          (invalid bound)
``eq4``                  ``T_nu(x) < 1 / x``                  (nu >= 1/2)
``baricz_upper``         ``T_nu(x) < 1 / sqrt(x^2 + nu^2 - 1/4)`` (nu >= 1/2)
``segura_lower``         ``1 / (nu + 1/2 + sqrt(x^2 + (nu + 1/2)^2)) < T_nu(x)``
``tn_upper``             ``T_nu(x) < 1 / (nu + 1)``           (informational)
=====================  ===================================================
"""

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bessel_ratio import ratio, turanian_normalized
from .errors import ClassificationError, DomainError

UPPER = "upper"
LOWER = "lower"


@dataclass(frozen=True)
class Inequality:
    id: str
    kind: str
    nu_min: float
    strict_nu_min: bool
    bound: object
    asserted: bool = True

    def admits(self, nu):
        return nu > self.nu_min if self.strict_nu_min else nu >= self.nu_min


INEQUALITIES = {
    ineq.id: ineq
    for ineq in (
        Inequality("turan_left_positive", LOWER, 0.0, True, lambda nu, x: 0.0),
        Inequality("eq2_right", UPPER, 0.0, True, lambda nu, x: 1.0 / (nu + x), asserted=False),
        Inequality("eq4", UPPER, 0.5, False, lambda nu, x: 1.0 / x),
        Inequality(
            "baricz_upper", UPPER, 0.5, False,
            lambda nu, x: 1.0 / math.sqrt(x * x + (nu - 0.5) * (nu + 0.5)),
        ),
        Inequality(
            "segura_lower", LOWER, 0.0, False,
            lambda nu, x: 1.0 / (nu + 0.5 + math.hypot(x, nu + 0.5)),
        ),
        Inequality("tn_upper", UPPER, 0.0, True, lambda nu, x: 1.0 / (nu + 1.0), asserted=False),
    )
}

# Sweeps whose records must all hold for a verification run to pass.
ASSERTED = ("turan_left_positive", "eq4", "baricz_upper", "segura_lower")
# Sweeps expected to produce counterexamples.
REFUTED = ("eq2_right",)

DEFAULT_NU = (0.1, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 5.0, 10.0, 50.0)


def log_grid(x_min=1e-4, x_max=1e4, per_decade=40):
    decades = math.log10(x_max) - math.log10(x_min)
    n = int(round(decades * per_decade)) + 1
    return tuple(float(v) for v in np.logspace(math.log10(x_min), math.log10(x_max), n))


@dataclass(frozen=True)
class SweepGrid:
    nu_values: tuple
    x_values: tuple

    def __post_init__(self):
        nus = tuple(float(v) for v in self.nu_values)
        xs = tuple(float(v) for v in self.x_values)
        if not nus or not xs:
            raise DomainError("sweep grid must be non-empty")
        if any(not (math.isfinite(v) and v > 0) for v in nus):
            raise DomainError("all nu values must be finite and > 0")
        if any(not (math.isfinite(v) and v > 0) for v in xs):
            raise DomainError("all x values must be finite and > 0")
        object.__setattr__(self, "nu_values", tuple(sorted(nus)))
        object.__setattr__(self, "x_values", tuple(sorted(xs)))

    @classmethod
    def default(cls):
        return cls(DEFAULT_NU, log_grid())

    def restrict(self, nu_min=0.0, nu_max=math.inf):
        nus = tuple(v for v in self.nu_values if nu_min <= v <= nu_max)
        return SweepGrid(nus, self.x_values)


@dataclass(frozen=True)
class InequalityRecord:
    nu: float
    x: float
    lhs: float
    rhs: float
    margin: float

    @property
    def holds(self):
        return self.margin > 0


@dataclass
class SweepReport:
    inequality_id: str
    records: list = field(default_factory=list)

    @property
    def counterexamples(self):
        return [r for r in self.records if not r.holds]

    def summary(self):
        worst = min(self.records, key=lambda r: r.margin)
        return {
            "inequality_id": self.inequality_id,
            "points": len(self.records),
            "counterexamples": len(self.counterexamples),
            "min_margin": worst.margin,
            "argmin": {"nu": worst.nu, "x": worst.x},
        }

    def write_csv(self, fh, header=True):
        w = csv.writer(fh, lineterminator="\n")
        if header:
            w.writerow(["inequality_id", "nu", "x", "lhs", "rhs", "margin", "holds"])
        for r in self.records:
            w.writerow([self.inequality_id, repr(r.nu), repr(r.x), repr(r.lhs),
                        repr(r.rhs), repr(r.margin), str(r.holds).lower()])

    def to_csv(self):
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()

    def to_json(self):
        return json.dumps(self.summary())


def _record(ineq, nu, x):
    t = turanian_normalized(nu, x)
    bound = ineq.bound(nu, x)
    if ineq.kind == UPPER:
        return InequalityRecord(nu, x, t, bound, bound - t)
    return InequalityRecord(nu, x, t, bound, t - bound)


def sweep(inequality_id, grid=None, workers=None):
    """Evaluate one inequality at every grid point, in grid order.

    ``workers`` > 1 spreads the rows over a thread pool; the merge order is
    always nu-major, x-minor.
    """
    try:
        ineq = INEQUALITIES[inequality_id]
    except KeyError:
        raise DomainError(
            f"unknown inequality {inequality_id!r}; choose from {sorted(INEQUALITIES)}"
        ) from None
    grid = grid or SweepGrid.default()
    bad = [nu for nu in grid.nu_values if not ineq.admits(nu)]
    if bad:
        op = ">" if ineq.strict_nu_min else ">="
        raise DomainError(
            f"{inequality_id} requires nu {op} {ineq.nu_min}; grid contains {bad}"
        )

    def row(nu):
        return [_record(ineq, nu, x) for x in grid.x_values]

    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(row, grid.nu_values))
    else:
        rows = [row(nu) for nu in grid.nu_values]
    return SweepReport(inequality_id, [r for rs in rows for r in rs])


def asymptote_check(nu, x_large):
    """``x * T_nu(x)`` at a large argument.

    For ``nu >= 1/2`` the value lies in ``(1 - 2 (nu + 1/2) / x, 1)`` and tends
    to 1, which is why no contraction constant below 1 bounds ``phi'``.
    """
    if not nu >= 0.5:
        raise DomainError(f"asymptote_check needs nu >= 1/2, got {nu!r}")
    if not x_large >= 100.0 * (nu + 1.0):
        raise DomainError(
            f"asymptote_check needs x_large >= 100 (nu + 1) = {100.0 * (nu + 1.0)}, "
            f"got {x_large!r}"
        )
    return x_large * turanian_normalized(nu, x_large)


def asymptote_window(nu, x_large):
    return 1.0 - 2.0 * (nu + 0.5) / x_large, 1.0


@dataclass(frozen=True)
class MonotonicityProfile:
    shape: str  # "increasing" or "unimodal"
    argmax: float | None
    max_value: float
    tail_value: float

    @property
    def tail_side(self):
        """Side of the asymptote 1 the last grid value lies on."""
        if self.tail_value < 1.0:
            return "below"
        if self.tail_value > 1.0:
            return "above"
        return "on"


def monotonicity_profile(nu, grid_x=None):
    """Classify the forward-difference sign pattern of ``x -> rho_nu(x)``.

    ``increasing`` means every forward difference is positive; ``unimodal``
    means exactly one change from positive to negative differences.  Any
    other pattern raises :class:`ClassificationError`.
    """
    if not nu > 0:
        raise DomainError(f"nu must be > 0, got {nu!r}")
    xs = log_grid(1e-3, 1e3) if grid_x is None else tuple(float(v) for v in grid_x)
    if len(xs) < 3:
        raise DomainError("grid_x needs at least 3 points")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise DomainError("grid_x must be strictly increasing")
    if xs[0] > 1e-3 or xs[-1] < 1e3:
        raise DomainError("grid_x must span at least [1e-3, 1e3]")

    values = [ratio(nu, x) for x in xs]
    signs = [(b > a) - (b < a) for a, b in zip(values, values[1:])]
    imax = max(range(len(values)), key=values.__getitem__)
    if all(s > 0 for s in signs):
        return MonotonicityProfile("increasing", None, values[-1], values[-1])
    # one + -> - change: strictly rising up to the peak, strictly falling after
    if 0 < imax < len(values) - 1 and all(s > 0 for s in signs[:imax]) \
            and all(s < 0 for s in signs[imax:]):
        return MonotonicityProfile("unimodal", xs[imax], values[imax], values[-1])
    raise ClassificationError(
        f"rho_{nu} shows neither an increasing nor a unimodal pattern on the grid "
        f"(signs of forward differences: {''.join('+-0'[(s < 0) + 2 * (s == 0)] for s in signs)})"
    )
