"""Self-check harness: every closed-form result the package claims,
evaluated in one run.

run_all writes the canonical data files, evaluates the ten numbered
checks, and repeats the file generation twice with the same seed to
confirm byte identity.  Each check carries a pass/fail line; the
informational notes report numerical observations that are worth
seeing but are deliberately not gated.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import diffraction, hom, is_gate, nogo, pipeline, protocol, quantum_core

ALPHA_GRID_181 = np.linspace(0.0, 180.0, 181)

PHASE_EFFECT_REFERENCE = 2.466990518
SEPARATION_GATE = 0.1


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str

    @property
    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number:02d} {status} {self.name}: {self.detail}"


@dataclass(frozen=True)
class VerifyReport:
    results: tuple[CriterionResult, ...]
    notes: tuple[str, ...]
    out_dir: str

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> list[str]:
        return [r.line for r in self.results]


def _json_line(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _transmit_plan(seed: int) -> protocol.TransmissionPlan:
    bits = tuple(int(b) for b in np.random.default_rng(seed).integers(0, 2, 64))
    return protocol.TransmissionPlan(
        bits=bits, photons_per_window=1000, windows_per_bit=3
    )


def write_data_files(out_dir, seed: int = protocol.DEFAULT_SEED) -> dict[str, str]:
    """Generate the full data-file set; returns name -> sha256."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    files: dict[str, str] = {}

    files["figure2.csv"] = pipeline.figure2_csv(ALPHA_GRID_181)

    gap = nogo.verify_nogo(n_samples=100, alpha_grid=ALPHA_GRID_181, seed=seed)
    files["nogo.json"] = _json_line(
        {"max_gap": gap, "n_modifier_pairs": 100, "n_alpha": 181, "seed": seed}
    )

    geom = diffraction.PRESETS["a6"]
    grid = diffraction.default_detector_grid(geom)
    navg45 = diffraction.normalized_average(geom, ("II_a_45", "II_b_45"), grid)
    navg90 = diffraction.normalized_average(geom, ("II_a_90", "II_b_90"), grid)
    files["slits_navg45.csv"] = diffraction.curve_csv(navg45)
    files["slits_navg90.csv"] = diffraction.curve_csv(navg90)

    plate0 = diffraction.plate_pattern(geom, grid, relative_phase=0.0)
    plate_pi = diffraction.plate_pattern(geom, grid, relative_phase=math.pi)
    plate_lines = ["x_um,i_zero,i_pi"]
    for x, i0, ip in zip(grid, plate0.intensity, plate_pi.intensity):
        plate_lines.append(f"{x:.12g},{i0:.12g},{ip:.12g}")
    files["plate.csv"] = "\n".join(plate_lines) + "\n"

    geom7 = diffraction.PRESETS["a7"]
    x7 = diffraction.PRESET_X_UM["a7"]
    effect = diffraction.phase_shifter_effect(geom7, x7, 0.3, 0.0)
    files["phase_effect.json"] = _json_line(
        {"preset": "a7", "x_um": x7, "dl1_um": 0.3, "dl2_um": 0.0, "effect": effect}
    )

    hom_obj = {}
    for case_id, n in (("deg90", 100_000), ("deg45", 100_000)):
        st = hom.simulate_hom(case_id, n, seed=seed)
        hom_obj[case_id] = {
            "n": st.n_pulse_pairs,
            "coincidence_rate": st.coincidence_rate,
            "identical_fraction": st.identical_fraction,
            "non_identical_fraction": st.non_identical_fraction,
            "epsilon": st.epsilon,
        }
    files["hom.json"] = _json_line(hom_obj)

    files["is.json"] = _json_line(
        {c: is_gate.run_is_case(c) for c in is_gate.CASE_IDS}
    )

    plan = _transmit_plan(seed)
    for gate in ("pibs", "is", "slits"):
        res = protocol.transmit(plan, gate=gate, seed=seed)
        files[f"transmit_{gate}.json"] = _json_line(res.to_json_dict())

    hashes: dict[str, str] = {}
    for name, text in files.items():
        data = text.encode()
        (out / name).write_bytes(data)
        hashes[name] = hashlib.sha256(data).hexdigest()
    return hashes


def informational_notes() -> tuple[str, ...]:
    """Numerical observations reported alongside the checks.  These
    document where the construction's own conventions, not this
    implementation, set the numbers."""
    state = quantum_core.apply_bshv(quantum_core.bell_pair())
    _, det = quantum_core.is_entangled(state)

    geom = diffraction.PRESETS["a6"]
    b = diffraction.slit_offset(geom)

    grid = diffraction.default_detector_grid(geom)
    raw45 = diffraction.averaged_scan(
        diffraction.detector_scan(geom, "II_a_45", grid),
        diffraction.detector_scan(geom, "II_b_45", grid),
    )
    raw90 = diffraction.averaged_scan(
        diffraction.detector_scan(geom, "II_a_90", grid),
        diffraction.detector_scan(geom, "II_b_90", grid),
    )
    raw_gap = float(np.max(np.abs(raw45.intensity - raw90.intensity)))

    return (
        "the two-path state after the splitting stage is sometimes "
        "described as product-form, but its pairing determinant is "
        f"{abs(det):.3g}, so the run's own entanglement criterion "
        "flags it as entangled",
        f"the large-geometry side-slit offset evaluates to {b:.6f} um; "
        "a nominal reference quotes 70 um for the same inputs, which "
        "the offset formula does not reproduce",
        "the raw flux-weighted averages of the two subcase curves are "
        f"setting-independent (max gap {raw_gap:.3g}); the separation "
        "gated below exists only after each subcase curve is rescaled "
        "to unit peak, matching how the curves are usually presented",
        "a nominal reference quotes the scaled-gate transmitted-subcase "
        "share at modifiers (0.3, 0.8) and a 30-degree setting as "
        "approximately 0.14713; its own formula evaluates to "
        f"{nogo.symmetric_ns(nogo.SymmetricModifiers(0.3, 0.8), 'IIa', 30.0):.12g}",
    )


def _run_criteria(out_dir: Path, seed: int) -> list[CriterionResult]:
    results: list[CriterionResult] = []

    # 1: constant ratio without a far measurement, and fast
    t0 = time.perf_counter()
    rows = pipeline.figure2_data(ALPHA_GRID_181)
    dt = time.perf_counter() - t0
    err1 = max(abs(r[1] - 0.5) for r in rows)
    ok1 = len(rows) == 181 and err1 < 1e-12 and dt < 1.0
    results.append(
        CriterionResult(
            1,
            "constant detection ratio without far measurement",
            ok1,
            f"max |n_s - 0.5| = {err1:.3g} over {len(rows)} points in {dt:.3f}s",
        )
    )

    # 2: subcase curves and their mean
    err_a = max(
        abs(r[2] - 0.5 * (1.0 - math.sin(2.0 * math.radians(r[0])))) for r in rows
    )
    err_b = max(
        abs(r[3] - 0.5 * (1.0 + math.sin(2.0 * math.radians(r[0])))) for r in rows
    )
    err_mean = max(abs(0.5 * (r[2] + r[3]) - 0.5) for r in rows)
    ok2 = err_a < 1e-12 and err_b < 1e-12 and err_mean < 1e-12
    results.append(
        CriterionResult(
            2,
            "far-measurement subcase curves",
            ok2,
            f"max errors: transmitted {err_a:.3g}, absorbed {err_b:.3g}, "
            f"mean {err_mean:.3g}",
        )
    )

    # 3: scaled-gate average identity
    gap = nogo.verify_nogo(n_samples=100, alpha_grid=ALPHA_GRID_181, seed=seed)
    results.append(
        CriterionResult(
            3,
            "scaled-gate average identity",
            gap < 1e-12,
            f"max gap {gap:.3g} over 100 modifier pairs x 181 angles",
        )
    )

    # 4: shifter two-setting ratio on the large preset
    effect = diffraction.phase_shifter_effect(
        diffraction.PRESETS["a7"], diffraction.PRESET_X_UM["a7"], 0.3, 0.0
    )
    err4 = abs(effect - PHASE_EFFECT_REFERENCE)
    results.append(
        CriterionResult(
            4,
            "shifter two-setting detection ratio",
            err4 < 1e-6,
            f"effect {effect:.9f}, off reference by {err4:.3g}",
        )
    )

    # 5: measure/split order independence on a 1-degree grid
    bad = [a for a in ALPHA_GRID_181 if not pipeline.order_independence_check(a)]
    results.append(
        CriterionResult(
            5,
            "measure/split order independence",
            not bad,
            "post-states agree up to phase at all 181 angles"
            if not bad
            else f"disagreement at {len(bad)} angles, first {bad[0]:g}",
        )
    )

    # 6: normalized averaged-curve separation + plate complementarity
    geom = diffraction.PRESETS["a6"]
    grid = diffraction.default_detector_grid(geom)
    navg45 = diffraction.normalized_average(geom, ("II_a_45", "II_b_45"), grid)
    navg90 = diffraction.normalized_average(geom, ("II_a_90", "II_b_90"), grid)
    l_inf = float(np.max(np.abs(navg45.intensity - navg90.intensity)))
    plate0 = diffraction.plate_pattern(geom, grid, relative_phase=0.0)
    plate_pi = diffraction.plate_pattern(geom, grid, relative_phase=math.pi)
    comp = float(np.max(np.abs(plate0.intensity + plate_pi.intensity - 4.0)))
    ok6 = l_inf > SEPARATION_GATE and comp < 1e-9
    results.append(
        CriterionResult(
            6,
            "averaged-curve separation and plate complementarity",
            ok6,
            f"L-inf {l_inf:.4f} (gate {SEPARATION_GATE}), "
            f"complement deviation {comp:.3g}",
        )
    )

    # 7: pulsed-interference statistics
    st = hom.simulate_hom("deg90", 100_000, seed=seed)
    sigma = math.sqrt(0.25 * 0.75 / st.n_pulse_pairs)
    rate_ok = abs(st.coincidence_rate - 0.25) <= 4.0 * sigma
    ident_ok = st.identical_fraction == 1.0
    a9 = hom.hom_transform((1.0, 0.0), (0.0, 1.0))
    a9_ok = (
        abs(a9.amp_33 - (-hom.SQRT_HALF)) < 1e-12
        and abs(a9.amp_44 - hom.SQRT_HALF) < 1e-12
        and abs(a9.amp_34) < 1e-12
    )
    case_d = hom.hom_transform(hom.SPATIAL_45["b"], hom.SPATIAL_45["a"])
    d_ok = case_d.amp_34 == -1.0 and case_d.amp_33 == 0.0 and case_d.amp_44 == 0.0
    ok7 = rate_ok and ident_ok and a9_ok and d_ok
    results.append(
        CriterionResult(
            7,
            "pulsed-interference statistics",
            ok7,
            f"rate {st.coincidence_rate:.5f} (4-sigma band {4*sigma:.5f}), "
            f"identical fraction {st.identical_fraction}, "
            f"cross-input amplitudes {'exact' if a9_ok else 'off'}, "
            f"opposed-pair output {'exact' if d_ok else 'off'}",
        )
    )

    # 8: arm-interference gate yields, bitwise
    ns90 = is_gate.run_is_case("deg90")
    ns45 = is_gate.run_is_case("deg45")
    ok8 = ns90 == 1.0 and ns45 == 0.5
    results.append(
        CriterionResult(
            8,
            "arm-interference gate yields",
            ok8,
            f"n_s(deg90) = {ns90!r}, n_s(deg45) = {ns45!r}",
        )
    )

    # 9: link-layer bit error rates
    plan = _transmit_plan(seed)
    t0 = time.perf_counter()
    ber_pibs = protocol.transmit(plan, gate="pibs", seed=seed).ber
    ber_is = protocol.transmit(plan, gate="is", seed=seed).ber
    ber_slits = protocol.transmit(plan, gate="slits", seed=seed).ber
    dt9 = time.perf_counter() - t0
    ok9 = (
        0.35 <= ber_pibs <= 0.65
        and ber_is == 0.0
        and ber_slits < 0.01
        and dt9 < 30.0
    )
    results.append(
        CriterionResult(
            9,
            "link-layer bit error rates",
            ok9,
            f"symmetric-gate BER {ber_pibs:.4f}, arm-interference BER "
            f"{ber_is}, slits BER {ber_slits} in {dt9:.2f}s",
        )
    )

    # 10: repeat-run byte identity of the data files
    h1 = write_data_files(out_dir / "run1", seed=seed)
    h2 = write_data_files(out_dir / "run2", seed=seed)
    same = h1 == h2
    results.append(
        CriterionResult(
            10,
            "repeat-run byte identity",
            same,
            f"{len(h1)} data files, hashes {'match' if same else 'differ'}",
        )
    )
    return results


def _maybe_svg(out_dir: Path) -> None:
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        return

    rows = pipeline.figure2_data(ALPHA_GRID_181)
    alphas = [r[0] for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(alphas, [r[1] for r in rows], label="no measurement")
    ax.plot(alphas, [r[2] for r in rows], label="transmitted subcase")
    ax.plot(alphas, [r[3] for r in rows], label="absorbed subcase")
    ax.plot(alphas, [r[4] for r in rows], "--", label="subcase mix")
    ax.set_xlabel("far measurement angle (deg)")
    ax.set_ylabel("crossing share n_s")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_dir / "figure2.svg")
    plt.close(fig)

    geom = diffraction.PRESETS["a6"]
    grid = diffraction.default_detector_grid(geom)
    navg45 = diffraction.normalized_average(geom, ("II_a_45", "II_b_45"), grid)
    navg90 = diffraction.normalized_average(geom, ("II_a_90", "II_b_90"), grid)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(navg45.x_um, navg45.intensity, label="45-degree pair")
    ax.plot(navg90.x_um, navg90.intensity, label="90-degree pair")
    ax.set_xlabel("detector position (um)")
    ax.set_ylabel("normalized averaged intensity")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_dir / "slits_navg.svg")
    plt.close(fig)


def run_all(
    out_dir, seed: int = protocol.DEFAULT_SEED, svg: bool = False
) -> VerifyReport:
    """Evaluate all ten checks, writing data files under out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_data_files(out, seed=seed)
    results = _run_criteria(out, seed)
    if svg:
        _maybe_svg(out)
    return VerifyReport(
        results=tuple(results),
        notes=informational_notes(),
        out_dir=str(out),
    )
