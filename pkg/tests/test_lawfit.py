import math

import numpy as np
import pytest

from ltg import (
    AnalysisConfig,
    AutocorrelationCurve,
    DegenerateFit,
    EmbeddingTable,
    InsufficientPositiveLags,
    LagSelection,
    TextTooShort,
    ZeroDenominator,
    analyze_text,
    fit_exponential_law,
    fit_power_law,
    gapelmaper,
    geometric_lag_grid,
    select_fit_lags,
)


def reference_grid(tau_min, tau_max):
    """Independent enumeration of the 20-per-decade grid."""
    seen = []
    for j in range(10_000):
        lag = round(tau_min * 10 ** (j / 20))
        if lag > tau_max:
            break
        if lag not in seen:
            seen.append(lag)
    return seen


def curve_from_law(fn, lags, n_source=1_000_000):
    lags = np.asarray(lags, dtype=np.int64)
    return AutocorrelationCurve(lags, fn(lags.astype(float)), n_source)


def full_grid_curve(fn, tau_min=10, tau_max=10_000):
    return curve_from_law(fn, geometric_lag_grid(tau_min, tau_max))


class TestSelectFitLags:
    def test_default_geometric_grid_has_61_lags(self):
        curve = full_grid_curve(lambda t: 2 * t**-0.5)
        sel = select_fit_lags(curve, 10, 10_000, "geometric20")
        expected = reference_grid(10, 10_000)
        assert sel.lags.tolist() == expected
        assert len(sel) == 61
        assert sel.lags[0] == 10 and sel.lags[1] == 11 and sel.lags[2] == 13
        assert sel.lags[-1] == 10_000
        assert sel.dropped_nonpositive_fraction == 0.0

    def test_all_mode_range(self):
        lags = np.arange(1, 201)
        curve = curve_from_law(lambda t: 0.9 * t**-0.1, lags)
        sel = select_fit_lags(curve, 10, 100, "all")
        assert sel.lags.tolist() == list(range(10, 101))
        assert len(sel) == 91

    def test_nonpositive_lags_removed_and_counted(self):
        lags = np.array(geometric_lag_grid(10, 10_000))
        values = 2 * lags.astype(float) ** -0.5
        values[::4] = -0.01  # knock out every 4th grid point
        curve = AutocorrelationCurve(lags, values, 10**6)
        sel = select_fit_lags(curve, 10, 10_000)
        assert np.all(curve.values_at(sel.lags) > 0)
        assert sel.dropped_nonpositive_fraction == pytest.approx(16 / 61)

    def test_all_nonpositive(self):
        curve = curve_from_law(lambda t: -0.1 + 0 * t, geometric_lag_grid(10, 10_000))
        with pytest.raises(InsufficientPositiveLags):
            select_fit_lags(curve, 10, 10_000)

    def test_span_below_one_decade(self):
        lags = np.array(geometric_lag_grid(10, 10_000))
        values = np.where(lags <= 90, 0.5, -0.5)
        curve = AutocorrelationCurve(lags, values, 10**6)
        with pytest.raises(InsufficientPositiveLags):
            select_fit_lags(curve, 10, 10_000)

    def test_tau_max_beyond_curve(self):
        curve = full_grid_curve(lambda t: t**-0.5, 10, 1000)
        with pytest.raises(ValueError):
            select_fit_lags(curve, 10, 5000)


class TestFits:
    def test_power_law_recovered_exactly(self):
        curve = full_grid_curve(lambda t: 2 * t**-0.5)
        sel = select_fit_lags(curve, 10, 10_000)
        fit = fit_power_law(curve, sel)
        assert fit.law == "power"
        assert fit.slope == pytest.approx(-0.5, abs=1e-9)
        assert fit.intercept == pytest.approx(math.log(2), abs=1e-9)
        assert fit.mape < 1e-9
        assert fit.n_points == 61

    def test_exponential_law_recovered_exactly(self):
        curve = full_grid_curve(lambda t: 0.5 * np.exp(-0.001 * t))
        sel = select_fit_lags(curve, 10, 10_000)
        fit = fit_exponential_law(curve, sel)
        assert fit.law == "exponential"
        assert fit.slope == pytest.approx(-0.001, abs=1e-9)
        assert fit.intercept == pytest.approx(math.log(0.5), abs=1e-9)
        assert fit.mape < 1e-9

    def test_wrong_law_fits_poorly(self):
        power_curve = full_grid_curve(lambda t: 2 * t**-0.5)
        exp_curve = full_grid_curve(lambda t: 0.5 * np.exp(-t / 500))
        sel_p = select_fit_lags(power_curve, 10, 10_000)
        sel_e = select_fit_lags(exp_curve, 10, 10_000)
        assert fit_exponential_law(power_curve, sel_p).mape > 0.05
        assert fit_power_law(exp_curve, sel_e).mape > 0.05

    def test_single_lag_selection_is_degenerate(self):
        curve = full_grid_curve(lambda t: t**-0.5)
        single = LagSelection(np.array([100]), "geometric20", 0.0)
        with pytest.raises(DegenerateFit):
            fit_power_law(curve, single)
        with pytest.raises(DegenerateFit):
            fit_exponential_law(curve, single)

    def test_prediction_matches_parameters(self):
        curve = full_grid_curve(lambda t: 0.8 * t**-0.3)
        sel = select_fit_lags(curve, 10, 10_000)
        fit = fit_power_law(curve, sel)
        lags = sel.lags.astype(float)
        np.testing.assert_allclose(
            fit.predict(sel.lags), np.exp(fit.intercept) * lags**fit.slope, rtol=1e-12
        )

    def test_scaling_moves_intercept_only(self):
        rng = np.random.default_rng(8)
        lags = np.array(geometric_lag_grid(10, 10_000))
        noise = np.exp(0.05 * rng.standard_normal(lags.size))
        base_values = 0.5 * lags.astype(float) ** -0.4 * noise
        scale = 0.37
        base = AutocorrelationCurve(lags, base_values, 10**6)
        scaled = AutocorrelationCurve(lags, base_values * scale, 10**6)
        sel = select_fit_lags(base, 10, 10_000)
        for fitter in (fit_power_law, fit_exponential_law):
            f0 = fitter(base, sel)
            f1 = fitter(scaled, sel)
            assert f1.slope == pytest.approx(f0.slope, rel=1e-12, abs=1e-15)
            assert f1.intercept - f0.intercept == pytest.approx(math.log(scale), rel=1e-12)
            assert f1.mape == pytest.approx(f0.mape, rel=1e-9)


class TestGapelmaper:
    def test_ratio_uses_same_floating_operands(self):
        curve = full_grid_curve(lambda t: 0.6 * t**-0.35 + 0.01)
        sel = select_fit_lags(curve, 10, 10_000)
        p, e = fit_power_law(curve, sel), fit_exponential_law(curve, sel)
        report = gapelmaper(p, e)
        assert report.gapelmaper == report.mape_power / report.mape_exp
        assert report.degenerate is False

    def test_equal_mapes_give_one(self):
        from ltg.lawfit import LawFit

        power = LawFit("power", 0.0, -0.5, 0.3, 61)
        exp = LawFit("exponential", 0.0, -0.001, 0.3, 61)
        assert gapelmaper(power, exp).gapelmaper == 1.0

    def test_zero_denominator(self):
        from ltg.lawfit import LawFit

        power = LawFit("power", 0.0, -0.5, 0.3, 61)
        exp = LawFit("exponential", 0.0, -0.001, 0.0, 61)
        with pytest.raises(ZeroDenominator):
            gapelmaper(power, exp)

    def test_both_zero_is_degenerate(self):
        from ltg.lawfit import LawFit

        power = LawFit("power", 0.0, 0.0, 0.0, 61)
        exp = LawFit("exponential", 0.0, 0.0, 0.0, 61)
        report = gapelmaper(power, exp)
        assert report.gapelmaper == 1.0
        assert report.degenerate is True

    def test_argument_order_enforced(self):
        from ltg.lawfit import LawFit

        power = LawFit("power", 0.0, -0.5, 0.3, 61)
        exp = LawFit("exponential", 0.0, -0.001, 0.2, 61)
        with pytest.raises(ValueError):
            gapelmaper(exp, power)

    def test_mismatched_selections_rejected(self):
        from ltg.lawfit import LawFit

        power = LawFit("power", 0.0, -0.5, 0.3, 61)
        exp = LawFit("exponential", 0.0, -0.001, 0.2, 42)
        with pytest.raises(ValueError):
            gapelmaper(power, exp)


class TestAnalyzeText:
    def test_repeated_word_is_degenerate(self):
        table = EmbeddingTable("one", ["word"], [[3.0, 4.0]])
        report = analyze_text("word " * 1000, table)
        assert report.gapelmaper == 1.0
        assert report.degenerate is True
        assert report.n_tokens == report.n_vectors == 1000
        assert report.tau_max == 500

    def test_short_text_rejected(self, toy_table):
        text = " ".join(f"w{i % 30:02d}" for i in range(150))
        with pytest.raises(TextTooShort):
            analyze_text(text, toy_table)

    def test_report_provenance(self, toy_table):
        rng = np.random.default_rng(2)
        words = [f"w{int(i):02d}" for i in rng.integers(0, 30, size=3000)]
        text = " ".join(words + ["unknownword"] * 30)
        report = analyze_text(text, toy_table)
        assert report.n_tokens == 3030
        assert report.n_vectors == 3000
        assert report.dropped_oov_fraction == pytest.approx(30 / 3030)
        assert report.embedding_name == "toy-8d"
        assert report.tau_min == 10
        assert report.tau_max == 1500
        assert report.grid_mode == "geometric20"
        assert report.gapelmaper == report.mape_power / report.mape_exp

    def test_custom_config_tau_cap(self, toy_table):
        rng = np.random.default_rng(3)
        text = " ".join(f"w{int(i):02d}" for i in rng.integers(0, 30, size=1000))
        report = analyze_text(text, toy_table, AnalysisConfig(tau_max=300))
        assert report.tau_max == 300

    def test_config_validation(self):
        with pytest.raises(ValueError):
            AnalysisConfig(tau_min=100, tau_max=100)
        with pytest.raises(ValueError):
            AnalysisConfig(grid_mode="cubic")

    def test_to_dict_field_order(self, toy_table):
        rng = np.random.default_rng(4)
        text = " ".join(f"w{int(i):02d}" for i in rng.integers(0, 30, size=500))
        report = analyze_text(text, toy_table)
        assert list(report.to_dict()) == [
            "mape_power", "mape_exp", "gapelmaper", "degenerate",
            "n_tokens", "n_vectors", "tau_min", "tau_max", "grid_mode",
            "dropped_oov_fraction", "dropped_nonpositive_fraction",
            "embedding_name",
        ]
