"""Three-slit far-field model: geometry, snapshot phases, intensity curves."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polpath.diffraction import (
    CURVE_CSV_HEADER,
    FIELD_CASES,
    PRESET_X_UM,
    PRESETS,
    ScanCurve,
    SlitGeometry,
    averaged_scan,
    curve_csv,
    default_detector_grid,
    detector_scan,
    detector_scan_amplitudes,
    normalized_average,
    path_lengths,
    peak_normalized,
    phase_shifter_effect,
    plate_pattern,
    separation_point,
    slit_offset,
)

A6 = PRESETS["a6"]
A7 = PRESETS["a7"]


class TestGeometry:
    def test_side_slit_offset_near_paraxial(self):
        paraxial = 0.5 * A6.lambda_um * A6.d1_um / A6.a_um
        assert abs(A6.b_um - paraxial) / paraxial < 1e-3
        assert abs(A6.b_um - 125.0000634765464) < 1e-9

    def test_offset_scales_linearly_for_small_wavelength(self):
        b1 = SlitGeometry(lambda_um=0.05, a_um=2000.0, d1_um=1e6, d2_um=1e5).b_um
        b2 = SlitGeometry(lambda_um=0.005, a_um=2000.0, d1_um=1e6, d2_um=1e5).b_um
        assert abs(b1 / b2 - 10.0) < 0.01

    def test_offset_defines_destructive_source_legs(self):
        # side slits sit where the two in-phase sources arrive exactly
        # (m + 1/2) wavelengths apart
        p = path_lengths(A6, 123.0)
        assert abs((p.l3 - p.l1) - (A6.m + 0.5) * A6.lambda_um) < 1e-9
        assert p.l4 == p.l3 and p.l6 == p.l1 and p.l5 == p.l2

    def test_midline_detector_legs(self):
        p = path_lengths(A6, 0.0)
        assert p.l8 == A6.d2_um
        assert p.l7 == p.l9 == math.hypot(A6.d2_um, A6.b_um)

    def test_imaginary_offset_rejected(self):
        with pytest.raises(ValueError):
            SlitGeometry(lambda_um=1.0, a_um=0.4, d1_um=100.0, d2_um=100.0)

    def test_nonpositive_lengths_rejected(self):
        with pytest.raises(ValueError):
            SlitGeometry(lambda_um=0.5, a_um=-1.0, d1_um=1e6, d2_um=1e5)
        with pytest.raises(ValueError):
            SlitGeometry(lambda_um=0.5, a_um=2000.0, d1_um=1e6, d2_um=1e5, m=-1)

    def test_slit_offset_matches_geometry_field(self):
        assert slit_offset(A6) == A6.b_um


class TestSnapshotModel:
    def test_shifter_periodic_in_one_wavelength(self):
        from polpath.diffraction import snapshot_amplitudes

        for x in (0.0, 55.5, -200.0):
            s0 = snapshot_amplitudes(A6, x, 0.0, "a")
            s1 = snapshot_amplitudes(A6, x, A6.lambda_um, "a")
            assert abs(s0 - s1) < 1e-9

    def test_two_setting_effect_reference(self):
        e = phase_shifter_effect(A7, PRESET_X_UM["a7"], 0.3, 0.0)
        assert abs(e - 2.466990518) < 1e-6

    def test_same_setting_effect_is_one(self):
        assert phase_shifter_effect(A7, PRESET_X_UM["a7"], 0.3, 0.3) == 1.0

    def test_effect_is_a_ratio(self):
        x = PRESET_X_UM["a7"]
        fwd = phase_shifter_effect(A7, x, 0.3, 0.0)
        rev = phase_shifter_effect(A7, x, 0.0, 0.3)
        assert abs(fwd * rev - 1.0) < 1e-12

    def test_invalid_subcase_rejected(self):
        from polpath.diffraction import snapshot_amplitudes

        with pytest.raises(ValueError):
            snapshot_amplitudes(A6, 0.0, 0.0, "c")


class TestPlatePattern:
    def test_in_phase_peak_and_nulls(self):
        c = plate_pattern(A6, np.array([0.0, A6.b_um, -A6.b_um]))
        assert abs(c.intensity[0] - 4.0) < 1e-12
        assert abs(c.intensity[1]) < 1e-9
        assert abs(c.intensity[2]) < 1e-9

    def test_antiphase_is_complementary(self):
        x = default_detector_grid(A6, 501)
        i0 = plate_pattern(A6, x).intensity
        ipi = plate_pattern(A6, x, math.pi).intensity
        assert np.abs(i0 + ipi - 4.0).max() < 1e-9
        assert abs(ipi[len(x) // 2]) < 1e-9


class TestDetectorScans:
    def test_in_phase_pair_feeds_only_central_slit(self):
        # both side slits sit on nulls of the in-phase drive, so the
        # scan is flat at the single-slit level
        c = detector_scan(A6, "II_a_45", default_detector_grid(A6))
        assert np.ptp(c.intensity) < 1e-9
        assert abs(c.intensity.mean() - 2.0) < 1e-9

    def test_antiphase_pair_keeps_true_nulls(self):
        c = detector_scan(A6, "II_b_45", default_detector_grid(A6))
        assert c.intensity.min() < 1e-9
        assert c.intensity.max() > 1.0

    def test_single_output_cases_mirror_each_other(self):
        x = default_detector_grid(A6)
        ca = detector_scan(A6, "II_a_90", x)
        cb = detector_scan(A6, "II_b_90", x)
        assert np.abs(ca.intensity - cb.intensity[::-1]).max() < 1e-9

    def test_unknown_case_rejected(self):
        with pytest.raises(ValueError):
            detector_scan(A6, "II_c_45", np.array([0.0]))

    def test_raw_pointwise_average_hides_the_setting(self):
        x = default_detector_grid(A6)
        raw45 = averaged_scan(
            detector_scan(A6, "II_a_45", x), detector_scan(A6, "II_b_45", x)
        )
        raw90 = averaged_scan(
            detector_scan(A6, "II_a_90", x), detector_scan(A6, "II_b_90", x)
        )
        assert np.abs(raw45.intensity - raw90.intensity).max() < 1e-12

    @given(st.floats(0.0, math.pi, allow_nan=False))
    @settings(max_examples=25, deadline=None)
    def test_raw_average_setting_independent_for_any_angle(self, alpha):
        # subcase source pairs for an arbitrary measurement angle; their
        # unnormalized mean matches the 90-degree mean everywhere
        x = np.linspace(-500.0, 500.0, 201)
        sa = (math.sin(alpha), math.cos(alpha))
        sb = (math.cos(alpha), -math.sin(alpha))
        mean_any = 0.5 * (
            detector_scan_amplitudes(A6, sa, x).intensity
            + detector_scan_amplitudes(A6, sb, x).intensity
        )
        mean_90 = 0.5 * (
            detector_scan_amplitudes(A6, (1.0, 0.0), x).intensity
            + detector_scan_amplitudes(A6, (0.0, -1.0), x).intensity
        )
        assert np.abs(mean_any - mean_90).max() < 1e-12

    def test_normalized_averages_do_separate(self):
        x = default_detector_grid(A6)
        n45 = normalized_average(A6, ("II_a_45", "II_b_45"), x)
        n90 = normalized_average(A6, ("II_a_90", "II_b_90"), x)
        mid = len(x) // 2
        assert abs(n45.intensity[mid] - 0.5) < 1e-12
        assert abs(n90.intensity[mid] - 0.18750555522296136) < 1e-12

    def test_separation_point_frozen(self):
        x_star, gap = separation_point(A6)
        assert x_star == 0.0
        assert abs(gap - 0.31249444477703864) < 1e-12
        assert gap > 0.1


class TestCurveUtilities:
    def test_scan_curve_shape_validation(self):
        with pytest.raises(ValueError):
            ScanCurve(np.array([0.0, 1.0]), np.array([1.0]))

    def test_averaged_scan_grid_mismatch(self):
        a = ScanCurve(np.array([0.0, 1.0]), np.array([1.0, 1.0]))
        b = ScanCurve(np.array([0.0, 2.0]), np.array([1.0, 1.0]))
        with pytest.raises(ValueError):
            averaged_scan(a, b)

    def test_peak_normalized_needs_positive_peak(self):
        flat = ScanCurve(np.array([0.0, 1.0]), np.array([0.0, 0.0]))
        with pytest.raises(ValueError):
            peak_normalized(flat)

    def test_peak_normalized_unit_maximum(self):
        c = detector_scan(A6, "II_b_45", default_detector_grid(A6, 301))
        assert peak_normalized(c).intensity.max() == 1.0

    def test_csv_round_trip_shape(self):
        c = ScanCurve(np.array([0.0, 0.5]), np.array([1.0, 2.0]))
        text = curve_csv(c)
        lines = text.splitlines()
        assert lines[0] == CURVE_CSV_HEADER == "x_um,intensity"
        assert len(lines) == 3
        assert text.endswith("\n")

    def test_field_case_table(self):
        assert set(FIELD_CASES) == {"II_a_45", "II_b_45", "II_a_90", "II_b_90"}
        r = math.sqrt(0.5)
        assert FIELD_CASES["II_a_45"].source_amplitudes == (r, r)
        assert FIELD_CASES["II_b_90"].source_amplitudes == (0.0, -1.0)

    def test_default_grid_is_symmetric(self):
        x = default_detector_grid(A6)
        assert len(x) == 2001
        assert x[0] == -x[-1]
        assert x[len(x) // 2] == 0.0
