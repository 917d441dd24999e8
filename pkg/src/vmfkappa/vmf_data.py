"""Unit-vector samples: loading, mean resultant, MLE fit and vMF sampling."""

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from . import kappa_solver
from .errors import DegenerateDataError, DomainError, NormError, ParseError, SaturatedDataError

NORM_TOL = 1e-8
# rbar this close to 1 is indistinguishable from perfectly aligned data.
_SATURATION_ULPS = 8


@dataclass(frozen=True)
class SampleSet:
    """``n`` unit vectors in ``R^p`` stored as an ``(n, p)`` float array."""

    vectors: np.ndarray

    def __post_init__(self):
        v = np.array(self.vectors, dtype=float)
        if v.ndim != 2:
            raise DomainError(f"samples must be a 2-d array, got shape {v.shape}")
        n, p = v.shape
        if n < 1:
            raise DomainError("need at least one sample")
        if p < 2:
            raise DomainError(f"dimension must be >= 2, got {p}")
        if not np.all(np.isfinite(v)):
            raise DomainError("samples contain non-finite values")
        norms = np.linalg.norm(v, axis=1)
        bad = np.flatnonzero(np.abs(norms - 1.0) > NORM_TOL)
        if bad.size:
            raise NormError(int(bad[0]), float(norms[bad[0]]))
        v.flags.writeable = False
        object.__setattr__(self, "vectors", v)

    @property
    def n(self):
        return self.vectors.shape[0]

    @property
    def p(self):
        return self.vectors.shape[1]

    @classmethod
    def from_rows(cls, rows, normalize=False):
        v = np.array(rows, dtype=float)
        if normalize and v.ndim == 2:
            norms = np.linalg.norm(v, axis=1)
            zero = np.flatnonzero(norms == 0)
            if zero.size:
                raise NormError(int(zero[0]), 0.0)
            v = v / norms[:, None]
        return cls(v)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in self.vectors:
            w.writerow([repr(float(c)) for c in row])
        return buf.getvalue()

    def to_json(self):
        return json.dumps(self.vectors.tolist())


@dataclass(frozen=True)
class MleFit:
    mu_hat: np.ndarray
    kappa_hat: float
    rbar: float
    n: int
    p: int
    iterations: int
    method: str

    def to_dict(self):
        return {
            "p": self.p,
            "n": self.n,
            "rbar": self.rbar,
            "mu_hat": [float(c) for c in self.mu_hat],
            "kappa_hat": self.kappa_hat,
            "iterations": self.iterations,
            "method": self.method,
        }


def mean_resultant(s):
    """Return ``(rbar, mu_hat)`` with ``rbar = ||sum x_i|| / n``."""
    total = s.vectors.sum(axis=0)
    norm = float(np.linalg.norm(total))
    if norm == 0.0:
        raise DegenerateDataError("degenerate data: zero resultant")
    return min(norm / s.n, 1.0), total / norm


def fit_mle(s, opts=kappa_solver.SolverOptions(), method=kappa_solver.FIXED_POINT):
    """Maximum-likelihood ``(mu, kappa)`` for a vMF sample.

    ``kappa_hat`` solves ``I_{p/2}(k) / I_{p/2-1}(k) = rbar``; since
    ``p/2 >= 1`` the fixed-point iteration is always admissible.
    """
    rbar, mu_hat = mean_resultant(s)
    if rbar >= 1.0 - _SATURATION_ULPS * np.finfo(float).eps:
        raise SaturatedDataError(
            "saturated data: all samples coincide (rbar = 1), kappa is unbounded"
        )
    prob = kappa_solver.EstimationProblem(rbar, p=s.p)
    res = kappa_solver.solve(prob, opts, method)
    return MleFit(mu_hat, res.kappa_hat, rbar, s.n, s.p, res.iterations, res.method)


def _tangent_directions(mu, rng, n):
    # uniform on the unit sphere orthogonal to mu
    g = rng.standard_normal((n, mu.size))
    g -= np.outer(g @ mu, mu)
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def _sample_cosines(kappa, p, n, rng):
    """Wood's rejection sampler for ``w = mu . x``."""
    m1 = p - 1.0
    b = m1 / (2.0 * kappa + math.sqrt(4.0 * kappa * kappa + m1 * m1))
    x0 = (1.0 - b) / (1.0 + b)
    c = kappa * x0 + m1 * math.log(1.0 - x0 * x0)
    out = np.empty(n)
    filled = 0
    while filled < n:
        batch = max(16, int(1.3 * (n - filled)))
        z = rng.beta(m1 / 2.0, m1 / 2.0, size=batch)
        u = rng.uniform(size=batch)
        w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z)
        ok = kappa * w + m1 * np.log1p(-x0 * w) - c >= np.log(u)
        take = w[ok][: n - filled]
        out[filled:filled + take.size] = take
        filled += take.size
    return out


def sample_vmf(mu, kappa, n, seed):
    """Draw ``n`` samples from vMF(mu, kappa); identical output for equal seeds."""
    mu = np.asarray(mu, dtype=float)
    if mu.ndim != 1 or mu.size < 2:
        raise DomainError("mu must be a vector of dimension >= 2")
    if abs(np.linalg.norm(mu) - 1.0) > 1e-12:
        raise DomainError(f"mu must be a unit vector, has norm {np.linalg.norm(mu)!r}")
    if not (math.isfinite(kappa) and kappa > 0):
        raise DomainError(f"kappa must be finite and > 0, got {kappa!r}")
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    rng = np.random.default_rng(seed)
    w = _sample_cosines(float(kappa), mu.size, int(n), rng)
    v = _tangent_directions(mu, rng, int(n))
    x = w[:, None] * mu + np.sqrt(np.maximum(0.0, 1.0 - w * w))[:, None] * v
    # renormalize away the last-bit drift of the tangent-normal combination
    return SampleSet(x / np.linalg.norm(x, axis=1, keepdims=True))


def _rows_from_csv(text, skip_header):
    rows = []
    lines = text.splitlines()
    start = 1 if skip_header else 0
    for lineno, line in enumerate(lines[start:], start=start + 1):
        if not line.strip():
            continue
        try:
            rows.append([float(tok) for tok in line.split(",")])
        except ValueError:
            raise ParseError(f"line {lineno}: cannot parse {line!r} as numbers") from None
    return rows


def _rows_from_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ParseError("JSON samples must be an array of arrays of numbers")
    for i, r in enumerate(data):
        if not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in r):
            raise ParseError(f"row {i}: non-numeric entry")
    return data


def load_samples(source, fmt="csv", normalize=False, skip_header=False):
    """Parse samples from a file object, ``bytes`` or ``str`` payload.

    ``fmt`` is ``"csv"`` (one sample per line, comma separated) or ``"json"``
    (array of arrays).  Without ``normalize`` every row must already have
    unit norm to within ``NORM_TOL``.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError:
            raise ParseError("input is not valid UTF-8") from None
    if fmt == "csv":
        rows = _rows_from_csv(source, skip_header)
    elif fmt == "json":
        rows = _rows_from_json(source)
    else:
        raise DomainError(f"unknown format {fmt!r}")
    if not rows:
        raise ParseError("no samples found")
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            raise ParseError(f"row {i} has {len(r)} columns, expected {width}")
    return SampleSet.from_rows(rows, normalize=normalize)
