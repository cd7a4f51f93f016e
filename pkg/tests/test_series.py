import math

import numpy as np
import pytest

from oracles import arma_direct
from saruma.errors import CsvParseError, NonInvertibleMA, SeriesTooShort
from saruma.model import ExpandedModel, build_from_pacf, expand
from saruma.poly import FilterPoly, roots
from saruma.series import (
    ResidualSet,
    TimeSeries,
    read_csv,
    residuals,
    simulate,
    simulate_with_innovations,
    write_csv,
)

AIRLINE = FilterPoly([1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 1])
WHITE = ExpandedModel(FilterPoly())
RANDOM_WALK = ExpandedModel(FilterPoly([1, -1]))


def transient_skip(model, floor=1e-12):
    """Residual index after which the zero-presample MA transient is negligible."""
    if model.ma_full.degree == 0:
        return 0
    rho = float(np.min(np.abs(roots(model.ma_full))))
    return int(math.ceil(math.log(floor) / -math.log(rho))) + 10 * model.ma_full.degree


class TestSimulate:
    def test_zero_sigma(self, kernels):
        y = simulate(ExpandedModel(AIRLINE, FilterPoly([1, 0.4])), 200, sigma=0.0, seed=3)
        assert np.all(y.values == 0)

    def test_random_walk_is_cumsum(self, kernels):
        y, e = simulate_with_innovations(RANDOM_WALK, 300, seed=11)
        np.testing.assert_allclose(y.values, np.cumsum(e), rtol=1e-12, atol=1e-12)

    def test_ma1_is_convolution(self, kernels):
        model = ExpandedModel(FilterPoly(), FilterPoly([1, 0.5]))
        y, e = simulate_with_innovations(model, 100, seed=5)
        expected = e.copy()
        expected[1:] += 0.5 * e[:-1]
        np.testing.assert_allclose(y.values, expected, rtol=0, atol=1e-15)

    def test_matches_direct_recursion(self, kernels):
        model = expand(build_from_pacf([1, 0.3, -0.2], [0.4, 0.1], [0.5], [-0.3], s=4, check=False))
        y, e = simulate_with_innovations(model, 150, seed=1)
        ref = arma_direct(model.ar_full.to_list(), model.ma_full.to_list(), list(e))
        np.testing.assert_allclose(y.values, ref, rtol=1e-12, atol=1e-10)

    def test_burn_in_discards_prefix(self):
        full, e_full = simulate_with_innovations(RANDOM_WALK, 50, seed=9, burn_in=0)
        part, e_part = simulate_with_innovations(RANDOM_WALK, 40, seed=9, burn_in=10)
        np.testing.assert_array_equal(e_part, e_full[10:])
        np.testing.assert_allclose(part.values, full.values[10:])

    def test_deterministic(self):
        a = simulate(RANDOM_WALK, 20, seed=4)
        b = simulate(RANDOM_WALK, 20, seed=4)
        np.testing.assert_array_equal(a.values, b.values)

    def test_overflow_detected(self):
        explosive = ExpandedModel(FilterPoly([1, -10]))
        with pytest.raises(OverflowError):
            simulate(explosive, 1000, seed=0)


class TestResiduals:
    def test_first_differences(self, kernels):
        y = np.array([1.0, 3.0, 2.5, 7.0])
        r = residuals(RANDOM_WALK, TimeSeries(y))
        np.testing.assert_allclose(r.residuals, np.diff(y))
        assert r.effective_n == 3

    def test_white_noise(self, kernels, rng):
        y = rng.normal(size=50)
        r = residuals(WHITE, y)
        np.testing.assert_array_equal(r.residuals, y)
        assert r.sum_sq == pytest.approx(float(np.sum(y**2)), rel=1e-14)

    def test_airline_differencing_exact(self, kernels, rng):
        y = rng.normal(size=80).cumsum()
        r = residuals(ExpandedModel(AIRLINE), y)
        t = np.arange(13, 80)
        expected = y[t] - y[t - 1] - y[t - 12] + y[t - 13]
        np.testing.assert_array_equal(r.residuals, expected)

    def test_innovation_recovery(self, kernels):
        model = expand(build_from_pacf([0.6, -0.3], [0.5], [0.4], [-0.3], s=4))
        y, e = simulate_with_innovations(model, 800, seed=21, burn_in=50)
        r = residuals(model, y)
        k = model.ar_full.degree
        skip = transient_skip(model)
        assert np.max(np.abs(r.residuals[skip:] - e[k + skip :])) <= 1e-8

    def test_ar_only_exact_from_start(self, kernels):
        model = expand(build_from_pacf([1, 0.5, -0.2], check=False))
        y, e = simulate_with_innovations(model, 200, seed=2)
        r = residuals(model, y)
        np.testing.assert_allclose(r.residuals, e[model.ar_full.degree :], atol=1e-9)

    def test_too_short(self):
        with pytest.raises(SeriesTooShort):
            residuals(ExpandedModel(AIRLINE), np.zeros(13))

    def test_non_invertible(self):
        with pytest.raises(NonInvertibleMA):
            residuals(ExpandedModel(FilterPoly(), FilterPoly([1, -1])), np.zeros(10))

    def test_labels_do_not_matter(self, rng):
        y = rng.normal(size=30)
        a = residuals(RANDOM_WALK, TimeSeries(y))
        b = residuals(RANDOM_WALK, TimeSeries(y, labels=[f"t{i}" for i in range(30)]))
        assert a.sum_sq == b.sum_sq

    def test_json(self):
        r = residuals(RANDOM_WALK, [1.0, 2.0, 4.0])
        back = ResidualSet.from_dict(r.to_dict())
        np.testing.assert_array_equal(back.residuals, r.residuals)
        assert (back.sum_sq, back.effective_n) == (5.0, 2)


class TestCsv:
    def test_plain(self, tmp_path):
        p = tmp_path / "a.csv"
        p.write_text("1.0\n2.0\n")
        np.testing.assert_array_equal(read_csv(p).values, [1.0, 2.0])

    def test_header(self, tmp_path):
        p = tmp_path / "a.csv"
        p.write_text("value\n1.5\n")
        np.testing.assert_array_equal(read_csv(p).values, [1.5])

    def test_round_trip(self, tmp_path, rng):
        ts = TimeSeries(rng.normal(size=100) * 10.0 ** rng.integers(-5, 5, 100))
        write_csv(ts, tmp_path / "b.csv")
        np.testing.assert_array_equal(read_csv(tmp_path / "b.csv").values, ts.values)

    def test_labels_round_trip(self, tmp_path):
        ts = TimeSeries([0.1, 0.2], labels=["2020-01", "2020-02"])
        write_csv(ts, tmp_path / "c.csv")
        back = read_csv(tmp_path / "c.csv")
        assert back.labels == ts.labels

    def test_parse_error_line(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("value\n1.0\nabc\n")
        with pytest.raises(CsvParseError) as info:
            read_csv(p)
        assert info.value.line == 3
