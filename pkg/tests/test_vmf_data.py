import io
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vmfkappa import bessel_ratio
from vmfkappa.errors import DegenerateDataError, DomainError, NormError, ParseError, SaturatedDataError
from vmfkappa.kappa_solver import BRACKET, SolverOptions
from vmfkappa.vmf_data import SampleSet, fit_mle, load_samples, mean_resultant, sample_vmf

from oracles import bessel_ratio_mp, bisect

KAPPA_P3_HALF = 1.7967559847237130
# root of I_1(k)/I_0(k) = sqrt(2)/2, frozen from mpmath bisection
KAPPA_P2_E1E2 = 2.058215395908354


def _rbar_half_p3():
    # two unit vectors at 120 degrees: |a + b| = 1, so rbar = 1/2 exactly
    return SampleSet([[1.0, 0.0, 0.0], [-0.5, math.sqrt(3) / 2, 0.0]])


def _rotation(p, seed=0):
    q, r = np.linalg.qr(np.random.default_rng(seed).standard_normal((p, p)))
    return q * np.sign(np.diag(r))


class TestSampleSet:

    def test_read_only_copy(self):
        src = np.eye(3)
        s = SampleSet(src)
        assert src.flags.writeable
        with pytest.raises(ValueError):
            s.vectors[0, 0] = 2.0
        assert (s.n, s.p) == (3, 3)

    @pytest.mark.parametrize("rows", [[1.0, 0.0], [[1.0]], np.zeros((0, 3)), [[math.nan, 1.0]]])
    def test_shape_errors(self, rows):
        with pytest.raises(DomainError):
            SampleSet(rows)

    def test_norm_error_names_row(self):
        with pytest.raises(NormError) as exc:
            SampleSet([[1.0, 0.0], [0.5, 0.0]])
        assert exc.value.to_dict()["row"] == 1
        assert exc.value.to_dict()["norm"] == 0.5

    def test_norm_tolerance(self):
        SampleSet([[1.0 + 5e-9, 0.0]])
        with pytest.raises(NormError):
            SampleSet([[1.0 + 5e-8, 0.0]])

    def test_float32_rounded_rows_need_normalizing(self):
        # float32 rounding moves norms by up to ~6e-8, past the 1e-8 tolerance
        v = sample_vmf([0.0, 0.0, 1.0], 3.0, 50, 2).vectors.astype(np.float32).astype(float)
        with pytest.raises(NormError):
            SampleSet(v)
        assert SampleSet.from_rows(v, normalize=True).n == 50


class TestMeanResultant:

    def test_aligned(self):
        rbar, mu = mean_resultant(SampleSet([[1.0, 0.0, 0.0]] * 5))
        assert rbar == 1.0
        assert mu.tolist() == [1.0, 0.0, 0.0]

    def test_antipodal(self):
        with pytest.raises(DegenerateDataError, match="degenerate data: zero resultant"):
            mean_resultant(SampleSet([[1.0, 0.0], [-1.0, 0.0]]))

    def test_orthogonal_pair(self):
        rbar, mu = mean_resultant(SampleSet([[1.0, 0.0], [0.0, 1.0]]))
        assert rbar == pytest.approx(math.sqrt(2) / 2, rel=1e-15)
        assert mu == pytest.approx([math.sqrt(2) / 2] * 2, rel=1e-15)

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), p=st.integers(2, 6), n=st.integers(1, 40))
    def test_rbar_in_unit_interval(self, seed, p, n):
        g = np.random.default_rng(seed).standard_normal((n, p))
        s = SampleSet.from_rows(g, normalize=True)
        try:
            rbar, mu = mean_resultant(s)
        except DegenerateDataError:
            return
        assert 0.0 <= rbar <= 1.0
        assert abs(np.linalg.norm(mu) - 1.0) <= 1e-12


class TestFit:

    def test_rbar_half(self):
        fit = fit_mle(_rbar_half_p3())
        assert fit.rbar == pytest.approx(0.5, rel=1e-15)
        assert fit.kappa_hat == pytest.approx(KAPPA_P3_HALF, rel=1e-10)
        assert fit.p == 3 and fit.n == 2

    def test_p2_oracle(self):
        ref = bisect(lambda k: bessel_ratio_mp(1, k) - math.sqrt(0.5), "0.5", "10")
        assert float(ref) == pytest.approx(KAPPA_P2_E1E2, rel=1e-14)
        fit = fit_mle(SampleSet([[1.0, 0.0], [0.0, 1.0]]))
        assert fit.kappa_hat == pytest.approx(KAPPA_P2_E1E2, rel=1e-10)

    def test_solves_equation(self):
        fit = fit_mle(sample_vmf([1.0, 0.0, 0.0, 0.0], 4.0, 500, 11))
        assert bessel_ratio.ratio(2.0, fit.kappa_hat) == pytest.approx(fit.rbar, abs=1e-12)
        assert abs(np.linalg.norm(fit.mu_hat) - 1) <= 1e-12

    def test_saturated(self):
        with pytest.raises(SaturatedDataError):
            fit_mle(SampleSet([[0.0, 1.0]] * 3))

    def test_saturated_is_degenerate(self):
        assert issubclass(SaturatedDataError, DegenerateDataError)

    def test_bracket_method(self):
        fit = fit_mle(_rbar_half_p3(), method=BRACKET)
        assert fit.method == BRACKET
        assert fit.kappa_hat == pytest.approx(KAPPA_P3_HALF, rel=1e-12)

    def test_json_keys(self):
        d = fit_mle(_rbar_half_p3()).to_dict()
        assert list(d) == ["p", "n", "rbar", "mu_hat", "kappa_hat", "iterations", "method"]
        json.dumps(d)


class TestSampler:

    def test_deterministic(self):
        a = sample_vmf([0.0, 1.0, 0.0], 5.0, 200, 42).vectors
        b = sample_vmf([0.0, 1.0, 0.0], 5.0, 200, 42).vectors
        assert a.tobytes() == b.tobytes()
        c = sample_vmf([0.0, 1.0, 0.0], 5.0, 200, 43).vectors
        assert not np.array_equal(a, c)

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_population_rbar(self, p):
        mu = np.eye(p)[0]
        rbar, _ = mean_resultant(sample_vmf(mu, 10.0, 100_000, 3))
        assert abs(rbar - bessel_ratio.ratio(p / 2, 10.0)) < 0.01

    def test_concentrated_in_hemisphere(self):
        s = sample_vmf([1.0, 0.0, 0.0], 100.0, 100, 5)
        assert np.all(s.vectors[:, 0] > 0)
        assert s.vectors[:, 0].min() > 0.9

    @pytest.mark.parametrize("p", [2, 3, 5])
    @pytest.mark.parametrize("kappa", [0.5, 2.0, 10.0])
    def test_round_trip(self, p, kappa):
        mu = np.eye(p)[-1]
        fit = fit_mle(sample_vmf(mu, kappa, 100_000, 1), SolverOptions(max_iter=20_000))
        assert abs(fit.kappa_hat - kappa) / kappa <= 0.05
        assert fit.mu_hat @ mu > 0.99

    @pytest.mark.parametrize("kw", [
        {"mu": [1.0, 1.0]}, {"mu": [1.0]}, {"kappa": 0.0}, {"kappa": math.inf},
        {"n": 0}, {"n": 2.0}, {"n": True},
    ])
    def test_preconditions(self, kw):
        args = {"mu": [1.0, 0.0], "kappa": 1.0, "n": 10, "seed": 0} | kw
        with pytest.raises(DomainError):
            sample_vmf(**args)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rotation_equivariance(p):
    s = sample_vmf(np.eye(p)[0], 3.0, 2000, 9)
    q = _rotation(p, seed=p)
    a = fit_mle(s)
    b = fit_mle(SampleSet(s.vectors @ q.T))
    assert np.max(np.abs(q @ a.mu_hat - b.mu_hat)) <= 1e-10
    assert b.rbar == pytest.approx(a.rbar, rel=1e-12)
    assert b.kappa_hat == pytest.approx(a.kappa_hat, rel=1e-12)


class TestLoader:

    def test_csv(self):
        s = load_samples("1,0,0\n0,1,0")
        assert (s.n, s.p) == (2, 3)

    def test_bytes_and_file(self):
        assert load_samples(b"1,0\n0,1\n").n == 2
        assert load_samples(io.BytesIO(b"1,0\n")).n == 1
        assert load_samples(io.StringIO("0,1\n")).p == 2

    def test_norm_error(self):
        with pytest.raises(NormError) as exc:
            load_samples("1,0,0\n0.5,0,0\n")
        assert exc.value.to_dict()["row"] == 1

    def test_normalize(self):
        s = load_samples("1,0,0\n0.5,0,0\n", normalize=True)
        assert s.vectors[1].tolist() == [1.0, 0.0, 0.0]

    def test_normalize_zero_row(self):
        with pytest.raises(NormError):
            load_samples("0,0\n", normalize=True)

    def test_header(self):
        assert load_samples("x,y\n1,0\n", skip_header=True).n == 1
        with pytest.raises(ParseError, match="line 1"):
            load_samples("x,y\n1,0\n")

    @pytest.mark.parametrize("text", ["1,0\n1,0,0\n", "1,a\n", "", "\n\n", b"\xff\xfe"])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            load_samples(text)

    def test_json(self):
        s = load_samples("[[1, 0], [0, 1]]", fmt="json")
        assert s.vectors.tolist() == [[1.0, 0.0], [0.0, 1.0]]

    @pytest.mark.parametrize("text", ["{", "{\"a\": 1}", "[[1, \"x\"]]", "[[true, 0]]", "[1, 0]"])
    def test_json_errors(self, text):
        with pytest.raises(ParseError):
            load_samples(text, fmt="json")

    def test_unknown_format(self):
        with pytest.raises(DomainError):
            load_samples("1,0", fmt="xml")

    def test_csv_round_trip_is_exact(self):
        s = sample_vmf([0.0, 0.6, 0.8], 2.0, 100, 4)
        assert np.array_equal(load_samples(s.to_csv()).vectors, s.vectors)
        assert np.array_equal(load_samples(s.to_json(), fmt="json").vectors, s.vectors)
