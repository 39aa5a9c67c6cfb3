"""State-vector layer: construction, rebasing, optical elements."""

from __future__ import annotations

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polpath.quantum_core import (
    Comp,
    Path,
    PolLabel,
    StateVector,
    apply_5050_splitter,
    apply_bshv,
    apply_pi_combiner,
    apply_polarizer,
    bell_pair,
    canon_angle_deg,
    inner,
    is_entangled,
    ket,
    measure_branch_A,
    mode,
    rotate_polarization_basis,
    states_equal_up_to_phase,
)

SQRT_HALF = math.sqrt(0.5)


def b_only(path: Path, angle: float, comp: Comp, amp: complex = 1.0) -> StateVector:
    return StateVector({ket(mode("B", path, angle, comp)): amp})


class TestAngles:
    def test_canonical_values(self):
        assert canon_angle_deg(180.0) == 0.0
        assert canon_angle_deg(270.0) == 90.0
        assert canon_angle_deg(-45.0) == 135.0
        assert canon_angle_deg(0.0) == 0.0

    @given(st.floats(-720.0, 720.0, allow_nan=False))
    @settings(max_examples=50, deadline=None)
    def test_canonical_idempotent_and_in_range(self, angle):
        c = canon_angle_deg(angle)
        assert 0.0 <= c < 180.0
        assert canon_angle_deg(c) == c

    def test_perp_absolute_angle(self):
        assert PolLabel(30.0, Comp.PERP).abs_angle_deg == 120.0
        assert PolLabel(30.0, Comp.PAR).abs_angle_deg == 30.0


class TestLabels:
    def test_ket_rejects_duplicate_particle(self):
        with pytest.raises(ValueError):
            ket(mode("B", Path.B1, 0.0, Comp.PAR), mode("B", Path.B2, 0.0, Comp.PAR))

    def test_source_paths_are_particle_bound(self):
        with pytest.raises(ValueError):
            mode("B", Path.SRC_A, 0.0, Comp.PAR)
        with pytest.raises(ValueError):
            mode("A", Path.SRC_B, 0.0, Comp.PAR)

    def test_prob_on_paths_is_float_even_when_empty(self):
        p = StateVector({}, normalized=False).prob_on_paths({Path.BX})
        assert isinstance(p, float) and p == 0.0


class TestBellPair:
    def test_two_equal_terms(self):
        s = bell_pair()
        assert len(s.terms) == 2
        for amp in s.terms.values():
            assert abs(abs(amp) - SQRT_HALF) < 1e-12
        assert abs(s.norm_sq() - 1.0) < 1e-12

    def test_entangled_with_half_determinant(self):
        flag, det = is_entangled(bell_pair())
        assert flag
        assert abs(abs(det) - 0.5) < 1e-12

    def test_identity_rotation_is_identity(self):
        s = bell_pair()
        assert rotate_polarization_basis(s, "A", 0.0).terms == s.terms

    def test_joint_rotation_keeps_two_aligned_terms(self):
        # rotating both particles into any shared basis keeps the
        # two-term matched-component form
        s = bell_pair()
        r = rotate_polarization_basis(rotate_polarization_basis(s, "A", 37.0), "B", 37.0)
        assert len(r.terms) == 2
        for k, amp in r.terms.items():
            comps = {m.pol.comp for m in k}
            assert len(comps) == 1
            assert abs(abs(amp) - SQRT_HALF) < 1e-12
        assert states_equal_up_to_phase(s, r)


class TestRotation:
    def test_vertical_into_diagonal_basis_signs(self):
        s = b_only(Path.B1, 0.0, Comp.PAR)
        r = rotate_polarization_basis(s, "B", 45.0)
        par = r.amplitude(ket(mode("B", Path.B1, 45.0, Comp.PAR)))
        perp = r.amplitude(ket(mode("B", Path.B1, 45.0, Comp.PERP)))
        assert abs(par - SQRT_HALF) < 1e-12
        assert abs(perp - (-SQRT_HALF)) < 1e-12

    @given(st.floats(0.0, 180.0, allow_nan=False))
    @settings(max_examples=40, deadline=None)
    def test_rebase_roundtrip(self, theta):
        s = bell_pair()
        r = rotate_polarization_basis(rotate_polarization_basis(s, "A", theta), "A", 0.0)
        assert states_equal_up_to_phase(s, r)

    def test_rebasing_preserves_physical_state(self):
        s = bell_pair()
        r = rotate_polarization_basis(s, "A", 25.0)
        assert abs(inner(s, r) - 1.0) < 1e-12


class TestSplitStage:
    def test_bell_routes_components_to_paths(self):
        s = apply_bshv(bell_pair())
        a_par_b2 = s.amplitude(
            ket(mode("A", Path.SRC_A, 0.0, Comp.PAR), mode("B", Path.B2, 0.0, Comp.PAR))
        )
        a_perp_b1 = s.amplitude(
            ket(mode("A", Path.SRC_A, 0.0, Comp.PERP), mode("B", Path.B1, 0.0, Comp.PERP))
        )
        assert abs(a_par_b2 - SQRT_HALF) < 1e-12
        assert abs(a_perp_b1 - SQRT_HALF) < 1e-12
        assert len(s.terms) == 2

    def test_pure_vertical_single_photon_takes_b2(self):
        s = b_only(Path.SRC_B, 0.0, Comp.PAR)
        out = apply_bshv(s)
        assert abs(out.amplitude(ket(mode("B", Path.B2, 0.0, Comp.PAR))) - 1.0) < 1e-12

    def test_rejects_rotated_input_basis(self):
        with pytest.raises(ValueError):
            apply_bshv(b_only(Path.SRC_B, 30.0, Comp.PAR))

    def test_split_state_flagged_entangled(self):
        flag, det = is_entangled(apply_bshv(bell_pair()))
        assert flag
        assert abs(abs(det) - 0.5) < 1e-12


class TestPolarizer:
    def test_half_passes_and_diagonal_form(self):
        s = apply_bshv(bell_pair())
        post, prob = apply_polarizer(s, {Path.B1, Path.B2}, 45.0)
        assert abs(prob - 0.5) < 1e-12
        # expressing particle A in the same diagonal basis exposes the
        # four-term form with amplitudes +-1/2
        four = rotate_polarization_basis(post, "A", 45.0)
        amps = sorted(four.terms.values(), key=lambda a: a.real)
        assert len(amps) == 4
        assert sum(1 for a in amps if abs(a + 0.5) < 1e-12) == 1
        assert sum(1 for a in amps if abs(a - 0.5) < 1e-12) == 3
        flag, det = is_entangled(four)
        assert flag and abs(abs(det) - 0.5) < 1e-12

    def test_aligned_input_passes_whole(self):
        s = b_only(Path.B1, 45.0, Comp.PAR)
        post, prob = apply_polarizer(s, {Path.B1}, 45.0)
        assert abs(prob - 1.0) < 1e-12
        assert states_equal_up_to_phase(s, post)

    def test_blocked_input_raises(self):
        s = b_only(Path.B1, 135.0, Comp.PAR)
        with pytest.raises(ValueError):
            apply_polarizer(s, {Path.B1}, 45.0)

    def test_measured_subcase_coefficients_survive(self):
        # transmitted subcase at 30 degrees keeps its (cos, sin) split
        # across the two arms after the diagonal polarizer
        a = math.radians(30.0)
        sub = measure_branch_A(apply_bshv(bell_pair()), 30.0)[0][2]
        post, prob = apply_polarizer(sub, {Path.B1, Path.B2}, 45.0)
        assert abs(prob - 0.5) < 1e-12
        b2 = [amp for k, amp in post.terms.items() if any(m.path is Path.B2 for m in k)]
        b1 = [amp for k, amp in post.terms.items() if any(m.path is Path.B1 for m in k)]
        ratio = abs(b2[0]) / abs(b1[0])
        assert abs(ratio - math.cos(a) / math.sin(a)) < 1e-12


class TestMeasurement:
    def test_generic_angle_subcases(self):
        a = math.radians(30.0)
        outcomes = measure_branch_A(apply_bshv(bell_pair()), 30.0)
        (lt, pt, st_), (lb, pb, sb) = outcomes
        assert (lt, lb) == ("transmitted", "absorbed")
        assert abs(pt - 0.5) < 1e-12 and abs(pb - 0.5) < 1e-12
        # transmitted keeps the projected A factor
        t_b2 = [amp for k, amp in st_.terms.items() if any(m.path is Path.B2 for m in k)]
        t_b1 = [amp for k, amp in st_.terms.items() if any(m.path is Path.B1 for m in k)]
        assert abs(abs(t_b2[0]) - math.cos(a)) < 1e-12
        assert abs(abs(t_b1[0]) - math.sin(a)) < 1e-12
        assert all(any(m.particle == "A" for m in k) for k in st_.terms)
        # absorbed deletes the A photon
        assert all(all(m.particle == "B" for m in k) for k in sb.terms)
        b_b2 = sb.amplitude(ket(mode("B", Path.B2, 0.0, Comp.PAR)))
        b_b1 = sb.amplitude(ket(mode("B", Path.B1, 0.0, Comp.PERP)))
        assert abs(b_b2 - (-math.sin(a))) < 1e-12
        assert abs(b_b1 - math.cos(a)) < 1e-12

    def test_axis_aligned_angles(self):
        t0 = measure_branch_A(apply_bshv(bell_pair()), 0.0)[0][2]
        assert abs(t0.amplitude(ket(mode("A", Path.SRC_A, 0.0, Comp.PAR),
                                    mode("B", Path.B2, 0.0, Comp.PAR))) - 1.0) < 1e-12
        out90 = measure_branch_A(apply_bshv(bell_pair()), 90.0)
        t90 = out90[0][2]
        b90 = out90[1][2]
        (k_t,) = t90.terms
        assert any(m.path is Path.B1 for m in k_t)
        assert abs(b90.amplitude(ket(mode("B", Path.B2, 0.0, Comp.PAR))) + 1.0) < 1e-12

    def test_requires_particle_a(self):
        with pytest.raises(ValueError):
            measure_branch_A(b_only(Path.B1, 0.0, Comp.PAR), 45.0)


class TestSplitterCombiner:
    def test_split_amplitudes(self):
        a = math.radians(30.0)
        sub = measure_branch_A(apply_bshv(bell_pair()), 30.0)[0][2]
        post, _ = apply_polarizer(sub, {Path.B1, Path.B2}, 45.0)
        s1 = apply_5050_splitter(post, Path.B1, Path.BC1, Path.BX1)
        s2 = apply_5050_splitter(s1, Path.B2, Path.BC2, Path.BX2)
        bx1 = [amp for k, amp in s2.terms.items() if any(m.path is Path.BX1 for m in k)]
        bx2 = [amp for k, amp in s2.terms.items() if any(m.path is Path.BX2 for m in k)]
        assert abs(abs(bx1[0]) - math.sin(a) * SQRT_HALF) < 1e-12
        assert abs(abs(bx2[0]) - math.cos(a) * SQRT_HALF) < 1e-12

    def test_split_on_empty_path_is_identity(self):
        s = b_only(Path.B2, 0.0, Comp.PAR)
        assert apply_5050_splitter(s, Path.B1, Path.BC1, Path.BX1).terms == s.terms

    def test_four_branch_coefficients(self):
        # polarizer output is renormalized, so each of the four
        # split branches carries amplitude 1/2
        post, _ = apply_polarizer(apply_bshv(bell_pair()), {Path.B1, Path.B2}, 45.0)
        s1 = apply_5050_splitter(post, Path.B1, Path.BC1, Path.BX1)
        s2 = apply_5050_splitter(s1, Path.B2, Path.BC2, Path.BX2)
        assert len(s2.terms) == 4
        for amp in s2.terms.values():
            assert abs(abs(amp) - 0.5) < 1e-12

    def test_combiner_difference_amplitude(self):
        a = math.radians(30.0)
        s = StateVector(
            {
                ket(mode("B", Path.BX1, 45.0, Comp.PAR)): math.sin(a) * SQRT_HALF,
                ket(mode("B", Path.BX2, 45.0, Comp.PAR)): math.cos(a) * SQRT_HALF,
            },
            normalized=False,
        )
        out = apply_pi_combiner(s)
        amp = out.amplitude(ket(mode("B", Path.BX, 45.0, Comp.PAR)))
        assert abs(amp - (math.cos(a) - math.sin(a)) / 2.0) < 1e-12
        d_x = out.prob_on_paths({Path.BX})
        assert abs(d_x - 0.25 * (1.0 - math.sin(2.0 * a))) < 1e-12

    def test_equal_inputs_cancel(self):
        s = StateVector(
            {
                ket(mode("B", Path.BX1, 45.0, Comp.PAR)): SQRT_HALF,
                ket(mode("B", Path.BX2, 45.0, Comp.PAR)): SQRT_HALF,
            }
        )
        assert apply_pi_combiner(s).terms == {}

    def test_mixed_bases_rejected(self):
        s = StateVector(
            {
                ket(mode("B", Path.BX1, 45.0, Comp.PAR)): SQRT_HALF,
                ket(mode("B", Path.BX2, 0.0, Comp.PAR)): SQRT_HALF,
            }
        )
        with pytest.raises(ValueError):
            apply_pi_combiner(s)


class TestEntanglementCheck:
    def test_product_state_det_zero(self):
        s = StateVector(
            {
                ket(
                    mode("A", Path.SRC_A, 0.0, Comp.PAR),
                    mode("B", Path.SRC_B, 0.0, Comp.PAR),
                ): 1.0
            }
        )
        flag, det = is_entangled(s)
        assert not flag
        assert abs(det) < 1e-12

    def test_single_particle_state_rejected(self):
        with pytest.raises(ValueError):
            is_entangled(b_only(Path.B1, 0.0, Comp.PAR))


class TestPhaseComparison:
    def test_global_phase_ignored(self):
        s = bell_pair()
        phased = StateVector(
            {k: a * cmath.exp(1j * 0.7) for k, a in s.terms.items()}
        )
        assert states_equal_up_to_phase(s, phased)

    def test_different_states_differ(self):
        s = bell_pair()
        other = StateVector(
            {
                ket(
                    mode("A", Path.SRC_A, 0.0, Comp.PAR),
                    mode("B", Path.SRC_B, 0.0, Comp.PAR),
                ): 1.0
            }
        )
        assert not states_equal_up_to_phase(s, other)
