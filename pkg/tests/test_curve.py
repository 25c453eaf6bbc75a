"""Segment-to-curve normalization: smoothing, resampling, scaling, routing."""

import numpy as np
import pytest

from accelerograph import (
    AxisClass,
    CurveExtractor,
    SynthConfig,
    curve_from_segment,
    detect_axis,
    gen_stream,
    scale_unit_square,
    segment_trace,
)
from accelerograph.curve import (
    GestureCurve,
    SmoothingConfig,
    principal_axes,
    principal_series,
    resample_100,
    smooth_axis,
)
from accelerograph.errors import DegenerateSegment
from tests.conftest import curves_for


def line_points(angle_deg, n=100, noise=0.0, seed=0):
    rng = np.random.default_rng(seed)
    s = np.linspace(0, 1, n)
    a = np.deg2rad(angle_deg)
    pts = np.column_stack([s * np.cos(a), s * np.sin(a)])
    if noise:
        pts += rng.normal(0, noise, (n, 2))
    return pts


class TestSmoothAxis:
    def test_duplicate_times_collapsed_to_mean(self):
        t = [0.0, 1.0, 1.0, 2.0, 3.0, 4.0]
        y = [0.0, 2.0, 4.0, 3.0, 3.0, 3.0]
        fit = smooth_axis(t, y, lam=1e-12)
        # the doubled knot at t=1 becomes a single observation of 3.0
        assert fit(1.0) == pytest.approx(3.0, abs=1e-5)

    def test_plain_passthrough(self):
        t = np.arange(10.0)
        fit = smooth_axis(t, 2 * t, spar=1.0)
        assert np.allclose(fit.fitted, 2 * t, atol=1e-9)


class TestResample:
    def test_constant_splines(self):
        const = lambda g: np.full(len(np.atleast_1d(g)), 7.0)
        pts = resample_100(const, const, (0.0, 5.0))
        assert pts.shape == (100, 2)
        assert np.all(pts == 7.0)

    def test_grid_endpoints_and_spacing(self):
        grids = []
        grab = lambda g: grids.append(np.asarray(g)) or np.zeros(len(g))
        resample_100(grab, grab, (2.0, 4.0))
        g = grids[0]
        assert g[0] == 2.0 and g[-1] == 4.0
        assert np.allclose(np.diff(g), g[1] - g[0])

    def test_monotone_spline_stays_monotone(self):
        t = np.arange(12.0)
        fit = smooth_axis(t, t**1.5, spar=0.5)
        dense = fit(np.linspace(0, 11, 10_000))
        assert (np.diff(dense) > -1e-12).all()
        pts = resample_100(fit, fit, (0.0, 11.0))
        assert (np.diff(pts[:, 0]) > -1e-12).all()


class TestScaleUnitSquare:
    def test_dominant_axis_spans_unit(self):
        pts = np.column_stack(
            [np.linspace(2, 4, 100), np.linspace(10, 10.5, 100)]
        )
        out = scale_unit_square(pts)
        assert out[:, 0].min() == 0.0 and out[:, 0].max() == 1.0
        assert out[:, 1].min() == 0.0
        assert out[:, 1].max() == pytest.approx(0.25)

    def test_idempotent(self, rng):
        pts = rng.uniform(-5, 5, (100, 2))
        once = scale_unit_square(pts)
        twice = scale_unit_square(once)
        assert np.allclose(once, twice, atol=1e-12)

    def test_aspect_ratio_preserved(self, rng):
        pts = rng.uniform(0, 1, (100, 2)) * [4.0, 1.0]
        out = scale_unit_square(pts)
        ratio_in = np.ptp(pts[:, 1]) / np.ptp(pts[:, 0])
        ratio_out = np.ptp(out[:, 1]) / np.ptp(out[:, 0])
        assert ratio_out == pytest.approx(ratio_in, rel=1e-9)

    def test_motionless_segment_rejected(self):
        with pytest.raises(DegenerateSegment):
            scale_unit_square(np.full((100, 2), 3.3))

    def test_zero_range_on_one_axis_is_fine(self):
        pts = np.column_stack([np.linspace(0, 2, 100), np.full(100, 5.0)])
        out = scale_unit_square(pts)
        assert np.all(out[:, 1] == 0.0)
        assert out[:, 0].max() == 1.0


class TestPrincipalAxes:
    def test_pure_x_line(self):
        pve, e1 = principal_axes(line_points(0))
        assert pve == pytest.approx(1.0)
        assert abs(e1[0]) == pytest.approx(1.0)

    def test_matches_numpy_eigendecomposition(self, rng):
        for _ in range(25):
            pts = rng.normal(0, 1, (100, 2)) @ rng.normal(0, 1, (2, 2))
            pve, e1 = principal_axes(pts)
            w, v = np.linalg.eigh(np.cov(pts.T, bias=True))
            assert pve == pytest.approx(w[1] / w.sum(), abs=1e-10)
            lead = v[:, 1]
            assert abs(abs(lead @ e1) - 1.0) < 1e-9

    def test_pve_at_least_half(self, rng):
        for _ in range(50):
            pve, _ = principal_axes(rng.uniform(0, 1, (100, 2)))
            assert pve >= 0.5


class TestDetectAxis:
    def test_x_line_routes_to_x(self):
        curve = detect_axis(line_points(0))
        assert curve.axis_class is AxisClass.X_AXIS
        assert curve.pve == pytest.approx(1.0)
        assert curve.principal_series is not None

    def test_y_line_routes_to_y(self):
        curve = detect_axis(line_points(90))
        assert curve.axis_class is AxisClass.Y_AXIS

    def test_l_shape_routes_to_both(self):
        # equal-arm right angle: continuum eigenvalues give pve = 4/5
        # exactly (var 5/48 each, covariance -1/16), comfortably under
        # the 0.92 routing cutoff
        arm = np.linspace(0, 1, 50)
        pts = np.concatenate(
            [
                np.column_stack([np.zeros(50), arm[::-1]]),
                np.column_stack([arm, np.zeros(50)]),
            ]
        )
        curve = detect_axis(pts)
        assert curve.axis_class is AxisClass.BOTH_AXES
        assert curve.pve == pytest.approx(0.8, abs=0.01)
        assert curve.principal_series is None
        assert np.array_equal(curve.points, pts)

    def test_noisy_single_axis_pve_high(self):
        curve = detect_axis(line_points(0, noise=0.02, seed=3))
        assert curve.axis_class is AxisClass.X_AXIS
        assert curve.pve > 0.97

    def test_boundary_pve_goes_to_both(self):
        pts = line_points(30)
        pve, _ = principal_axes(pts)
        at_boundary = detect_axis(pts, pve_cutoff=pve)
        assert at_boundary.axis_class is AxisClass.BOTH_AXES
        below_boundary = detect_axis(pts, pve_cutoff=pve - 1e-9)
        assert below_boundary.axis_class is not AxisClass.BOTH_AXES

    def test_principal_series_rescaled_to_unit(self):
        curve = detect_axis(line_points(5, noise=0.005, seed=4))
        ps = curve.principal_series
        assert ps.min() == 0.0 and ps.max() == 1.0

    def test_deterministic_rerun(self):
        pts = line_points(8, noise=0.01, seed=6)
        a = detect_axis(pts)
        b = detect_axis(pts)
        assert np.array_equal(a.principal_series, b.principal_series)
        assert a.pve == b.pve

    def test_sign_convention_fixes_reflection(self):
        # the same shape mirrored through the dominant axis yields the
        # same orientation of the principal series, not its reverse
        pts = line_points(6, noise=0.01, seed=7)
        flipped = pts * [1.0, -1.0]
        a = detect_axis(pts)
        b = detect_axis(flipped)
        assert a.axis_class is b.axis_class is AxisClass.X_AXIS
        assert np.allclose(a.principal_series, b.principal_series, atol=0.05)

    def test_translation_and_scale_invariance(self):
        pts = line_points(12, noise=0.01, seed=8)
        moved = pts * 37.0 + [5.0, -11.0]
        a = detect_axis(pts)
        b = detect_axis(moved)
        assert a.axis_class is b.axis_class
        assert a.pve == pytest.approx(b.pve, abs=1e-12)


class TestPrincipalSeries:
    def test_requires_single_axis_mode(self):
        with pytest.raises(ValueError):
            principal_series(line_points(0), AxisClass.BOTH_AXES)

    def test_x_line_series_is_the_x_coordinate(self):
        pts = line_points(0)
        ps = principal_series(pts, AxisClass.X_AXIS)
        assert np.allclose(ps, np.linspace(0, 1, 100), atol=1e-9)


class TestGestureCurve:
    def test_validates_point_count(self):
        with pytest.raises(ValueError):
            GestureCurve(np.zeros((50, 2)), AxisClass.BOTH_AXES, 0.8)

    def test_series_presence_tied_to_class(self):
        pts = np.zeros((100, 2))
        with pytest.raises(ValueError):
            GestureCurve(pts, AxisClass.X_AXIS, 0.99)  # missing series
        with pytest.raises(ValueError):
            GestureCurve(pts, AxisClass.BOTH_AXES, 0.8, np.zeros(100))

    def test_smoothing_config_validation(self):
        with pytest.raises(ValueError):
            SmoothingConfig(spar=2.0)
        with pytest.raises(ValueError):
            SmoothingConfig(pve_cutoff=1.5)
        with pytest.raises(ValueError):
            SmoothingConfig(n_eval=50)
        assert SmoothingConfig().spar == 0.5


class TestEndToEnd:
    def test_b_curve_is_x_dominant(self):
        curve = curves_for("B", seed=321, noise_sd=0.0)[0]
        assert curve.axis_class is AxisClass.X_AXIS
        assert curve.points[:, 0].max() == 1.0
        assert np.ptp(curve.points[:, 1]) < 0.5

    def test_expected_families_on_clean_letters(self, alphabet_curves):
        from accelerograph.alphabet import LETTERS, expected_axis_class

        for letter in LETTERS:
            assert (
                alphabet_curves[letter].axis_class is expected_axis_class(letter)
            ), letter

    def test_curve_from_segment_deterministic(self):
        trace, _ = gen_stream("S", SynthConfig(seed=77))
        seg_a = segment_trace(trace)[0][0]
        seg_b = segment_trace(trace)[0][0]
        a = curve_from_segment(seg_a)
        b = curve_from_segment(seg_b)
        assert np.array_equal(a.points, b.points)


class TestCurveExtractor:
    def test_transform(self):
        trace, _ = gen_stream("ON", SynthConfig(seed=13))
        segments, _, _ = segment_trace(trace)
        curves = CurveExtractor().fit().transform(segments)
        assert len(curves) == 2
        assert all(isinstance(c, GestureCurve) for c in curves)

    def test_params_round_trip(self):
        est = CurveExtractor(spar=0.7, pve_cutoff=0.9)
        params = est.get_params()
        assert params["spar"] == 0.7
        est.set_params(spar=0.4)
        assert est.get_params()["spar"] == 0.4
