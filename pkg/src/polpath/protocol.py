"""Windowed statistical link layer over the branch detectors.

A sender encodes each bit as an action on the far branch (measure at
some angle, or do nothing) held for a fixed number of time windows.
The receiver sees only its own detector counts: per window it
estimates the crossing-to-confirmation click ratio and decodes the
window against a threshold; per bit it takes a majority over the
bit's windows.

The channel behind the estimate is selectable: the polarizing
recombination pipeline (pibs), the three-slit interferometer (slits),
the pulsed two-photon interference gate (hom), or the arm-interference
gate (is).  With the symmetric pibs gate every action produces the
same ratio and the decoded bits are coin flips; the other channels
separate the default action pair cleanly.

Click model: each photon pair yields at most one confirmation-side
click and at most one crossing-side click, drawn as independent
Bernoulli trials with the analytic probabilities.  The ratio estimator
then converges to the analytic crossing share for every channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import diffraction, hom, is_gate, pipeline

DEFAULT_SEED = 46
GATE_KINDS = ("pibs", "slits", "hom", "is")

# fraction of a boundary window still filled by the previous action
# when sender and receiver clocks are offset
DEFAULT_CLOCK_OFFSET = 0.3


@dataclass(frozen=True)
class SenderAction:
    """What the far side does during a window: kind "measure" with an
    angle, or kind "none"."""

    kind: str
    alpha_deg: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("measure", "none"):
            raise ValueError("kind must be 'measure' or 'none'")
        if self.kind == "measure" and self.alpha_deg is None:
            raise ValueError("a measurement action needs an angle")
        if self.kind == "none" and self.alpha_deg is not None:
            raise ValueError("'none' takes no angle")

    @property
    def label(self) -> str:
        if self.kind == "none":
            return "none"
        return f"measure({self.alpha_deg:g})"


NO_MEASURE = SenderAction("none")


def measure(alpha_deg: float) -> SenderAction:
    return SenderAction("measure", float(alpha_deg))


def default_action_map() -> dict[int, SenderAction]:
    """Bit alphabet used unless the caller supplies one.  The mapping
    is a protocol convention, not physics; any two actions the chosen
    gate separates will do."""
    return {0: measure(90.0), 1: measure(45.0)}


@dataclass(frozen=True)
class TransmissionPlan:
    bits: tuple[int, ...]
    action_map: dict[int, SenderAction] = field(default_factory=default_action_map)
    windows_per_bit: int = 3
    photons_per_window: int = 1000

    def __post_init__(self) -> None:
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")
        if set(self.action_map) < {0, 1}:
            raise ValueError("action_map must cover both symbols 0 and 1")
        if self.windows_per_bit < 1:
            raise ValueError("windows_per_bit must be >= 1")
        if self.photons_per_window < 1:
            raise ValueError("photons_per_window must be >= 1")


@dataclass(frozen=True)
class WindowReport:
    """decoded_symbol is 0/1 once decoded, "ambiguous" when the window
    carries no usable estimate (no confirmation clicks, or a marked
    action boundary), and None when sampling was run without a
    decoding threshold."""

    window_index: int
    bit_index: int | None
    d_c_clicks: int
    d_x_clicks: int
    estimated_n_s: float | None
    decoded_symbol: int | str | None

    def __post_init__(self) -> None:
        if self.d_c_clicks > 0:
            want = self.d_x_clicks / self.d_c_clicks
            if self.estimated_n_s is None or abs(self.estimated_n_s - want) > 1e-12:
                raise ValueError("estimated_n_s must equal d_x_clicks/d_c_clicks")


# per-channel analytic statistics ------------------------------------

_SLITS_GEOM = diffraction.PRESETS["a6"]


@lru_cache(maxsize=1)
def _slits_reference() -> tuple[np.ndarray, int]:
    """Detector grid and the index of the separation point on it."""
    grid = diffraction.default_detector_grid(_SLITS_GEOM)
    x_star, _ = diffraction.separation_point(_SLITS_GEOM, grid)
    idx = int(np.argmin(np.abs(grid - x_star)))
    return grid, idx


def _slits_crossing_share(amps: tuple[complex, complex]) -> float:
    """Peak-normalized intensity at the separation point for one
    subcase amplitude pair."""
    grid, idx = _slits_reference()
    curve = diffraction.peak_normalized(
        diffraction.detector_scan_amplitudes(_SLITS_GEOM, amps, grid)
    )
    return float(curve.intensity[idx])


@lru_cache(maxsize=512)
def _channel_stats(
    gate: str, action: SenderAction, combiner: pipeline.CombinerGate | None
) -> tuple[tuple[float, float, float], ...]:
    """(weight, p_confirm, p_cross) per subcase for one action.

    Weights sum to 1; both click probabilities are per photon pair.
    The optional combiner modifier pair only applies to the pibs
    channel, where it scales the crossing-arm amplitudes."""
    if gate not in GATE_KINDS:
        raise ValueError(f"gate must be one of {GATE_KINDS}")
    if combiner is not None and gate != "pibs":
        raise ValueError("combiner modifiers only apply to the pibs channel")

    alpha = action.alpha_deg if action.kind == "measure" else None

    if gate == "pibs":
        g = pipeline.PI_COMBINER if combiner is None else combiner
        return pipeline.subcase_detector_probs(alpha, g)

    if gate == "is":
        if alpha is None:
            # the unmeasured state decomposes into the two equal-weight
            # diagonal subcases
            table = is_gate.SPATIAL_45
        else:
            table = is_gate.subcase_spatial(alpha)
        return tuple(
            (0.5, 0.5, 0.5 * is_gate.is_transform(sp).p_forward)
            for sp in table.values()
        )

    if gate == "slits":
        if alpha is None:
            pairs = [
                diffraction.FIELD_CASES["II_a_45"].source_amplitudes,
                diffraction.FIELD_CASES["II_b_45"].source_amplitudes,
            ]
        else:
            pairs = list(is_gate.subcase_spatial(alpha).values())
        return tuple((0.5, 0.5, 0.5 * _slits_crossing_share(p)) for p in pairs)

    # hom: every pulse pair is a confirmed trial; the crossing-side
    # statistic is the coincidence rate
    return ((1.0, 1.0, hom.expected_coincidence_rate(alpha)),)


def analytic_symbol_value(
    gate: str, action: SenderAction, combiner: pipeline.CombinerGate | None = None
) -> float:
    """Expected crossing-to-confirmation ratio for one action."""
    stats = _channel_stats(gate, action, combiner)
    num = sum(w * dx for w, _, dx in stats)
    den = sum(w * dc for w, dc, _ in stats)
    return num / den


# sampling ------------------------------------------------------------


def _draw_clicks(
    stats: tuple[tuple[float, float, float], ...],
    n_photons: int,
    rng: np.random.Generator,
) -> tuple[int, int]:
    if n_photons == 0:
        return 0, 0
    weights = [w for w, _, _ in stats]
    counts = rng.multinomial(n_photons, weights)
    n_c = 0
    n_x = 0
    for n_k, (_, d_c, d_x) in zip(counts, stats):
        n_c += int(rng.binomial(n_k, d_c))
        n_x += int(rng.binomial(n_k, d_x))
    return n_c, n_x


def sample_window(
    action: SenderAction,
    gate: str = "pibs",
    photons_per_window: int = 1000,
    seed=DEFAULT_SEED,
    *,
    combiner: pipeline.CombinerGate | None = None,
    threshold: float | None = None,
    high_bit: int = 1,
    window_index: int = 0,
    bit_index: int | None = None,
) -> WindowReport:
    """Monte-Carlo one window under a fixed action.

    Draws the subcase of each photon pair, then one Bernoulli click
    per detector side.  Decodes against the threshold when one is
    given; with no confirmation clicks the window is ambiguous."""
    if photons_per_window < 1:
        raise ValueError("photons_per_window must be >= 1")
    rng = np.random.default_rng(seed)
    stats = _channel_stats(gate, action, combiner)
    n_c, n_x = _draw_clicks(stats, photons_per_window, rng)
    est = n_x / n_c if n_c > 0 else None
    if est is None:
        decoded: int | str | None = "ambiguous"
    elif threshold is None:
        decoded = None
    else:
        decoded = high_bit if est > threshold else 1 - high_bit
    return WindowReport(
        window_index=window_index,
        bit_index=bit_index,
        d_c_clicks=n_c,
        d_x_clicks=n_x,
        estimated_n_s=est,
        decoded_symbol=decoded,
    )


# transmission --------------------------------------------------------


@dataclass(frozen=True)
class TransmissionResult:
    plan: TransmissionPlan
    gate: str
    decoded_bits: tuple[int, ...]
    ber: float
    threshold: float | None
    high_bit: int | None
    window_reports: tuple[WindowReport, ...]
    seed: int

    def to_json_dict(self) -> dict:
        plan = self.plan
        return {
            "gate": self.gate,
            "bits_sent": list(plan.bits),
            "action_map": {
                str(k): plan.action_map[k].label for k in sorted(plan.action_map)
            },
            "windows_per_bit": plan.windows_per_bit,
            "photons_per_window": plan.photons_per_window,
            "seed": self.seed,
            "threshold": self.threshold,
            "decoded_bits": list(self.decoded_bits),
            "ber": self.ber,
            "windows": [
                {
                    "window_index": w.window_index,
                    "bit_index": w.bit_index,
                    "d_c_clicks": w.d_c_clicks,
                    "d_x_clicks": w.d_x_clicks,
                    "estimated_n_s": w.estimated_n_s,
                    "decoded_symbol": w.decoded_symbol,
                }
                for w in self.window_reports
            ],
        }


WINDOW_CSV_HEADER = "window_index,estimated_n_s"


def window_csv(result: TransmissionResult) -> str:
    """Per-window estimate table; ambiguous windows leave the value
    empty."""
    lines = [WINDOW_CSV_HEADER]
    for w in result.window_reports:
        val = "" if w.estimated_n_s is None else f"{w.estimated_n_s:.12g}"
        lines.append(f"{w.window_index},{val}")
    return "\n".join(lines) + "\n"


def transmit(
    plan: TransmissionPlan,
    gate: str = "pibs",
    decoder_threshold: float | None = None,
    seed: int = DEFAULT_SEED,
    *,
    clock_offset: float = DEFAULT_CLOCK_OFFSET,
    combiner: pipeline.CombinerGate | None = None,
) -> TransmissionResult:
    """Run the plan end to end and decode.

    Sender and receiver clocks are offset by a fixed fraction of a
    window, so the first window of every bit still carries that
    fraction of the previous bit's photons.  Windows on an action
    boundary are marked ambiguous; each bit is then decoded by
    majority over its remaining windows (ties and all-ambiguous slots
    fall back to 0).  The default threshold is the midpoint of the two
    analytic symbol values."""
    if not 0.0 <= clock_offset < 1.0:
        raise ValueError("clock_offset must be in [0, 1)")
    if not plan.bits:
        return TransmissionResult(
            plan=plan,
            gate=gate,
            decoded_bits=(),
            ber=0.0,
            threshold=decoder_threshold,
            high_bit=None,
            window_reports=(),
            seed=seed,
        )

    v0 = analytic_symbol_value(gate, plan.action_map[0], combiner)
    v1 = analytic_symbol_value(gate, plan.action_map[1], combiner)
    threshold = decoder_threshold if decoder_threshold is not None else 0.5 * (v0 + v1)
    high_bit = 1 if v1 >= v0 else 0

    wpb = plan.windows_per_bit
    n_win = len(plan.bits) * wpb
    streams = np.random.SeedSequence(seed).spawn(n_win)

    reports: list[WindowReport] = []
    decoded: list[int] = []
    for i, bit in enumerate(plan.bits):
        action = plan.action_map[bit]
        stats = _channel_stats(gate, action, combiner)
        prev_action = plan.action_map[plan.bits[i - 1]] if i > 0 else None
        on_boundary = prev_action is not None and prev_action != action

        votes: list[int] = []
        for w in range(wpb):
            idx = i * wpb + w
            rng = np.random.default_rng(streams[idx])
            blurred = w == 0 and on_boundary and clock_offset > 0.0
            if blurred:
                n_prev = round(clock_offset * plan.photons_per_window)
                prev_stats = _channel_stats(gate, prev_action, combiner)
                c1, x1 = _draw_clicks(prev_stats, n_prev, rng)
                c2, x2 = _draw_clicks(
                    stats, plan.photons_per_window - n_prev, rng
                )
                n_c, n_x = c1 + c2, x1 + x2
            else:
                n_c, n_x = _draw_clicks(stats, plan.photons_per_window, rng)
            est = n_x / n_c if n_c > 0 else None
            if est is None or blurred:
                symbol: int | str = "ambiguous"
            else:
                symbol = high_bit if est > threshold else 1 - high_bit
                votes.append(symbol)
            reports.append(
                WindowReport(
                    window_index=idx,
                    bit_index=i,
                    d_c_clicks=n_c,
                    d_x_clicks=n_x,
                    estimated_n_s=est,
                    decoded_symbol=symbol,
                )
            )
        ones = sum(votes)
        decoded.append(1 if ones > len(votes) - ones else 0)

    errors = sum(d != b for d, b in zip(decoded, plan.bits))
    return TransmissionResult(
        plan=plan,
        gate=gate,
        decoded_bits=tuple(decoded),
        ber=errors / len(plan.bits),
        threshold=threshold,
        high_bit=high_bit,
        window_reports=tuple(reports),
        seed=seed,
    )


# source-kind classification ------------------------------------------


def _single_source_stats(
    gate: str, alpha_deg: float
) -> tuple[tuple[float, float, float], ...]:
    """Detector statistics when the source emits lone photons
    polarized at alpha_deg instead of pairs: every trial follows the
    transmitted subcase of a far-side measurement at that angle."""
    if gate == "pibs":
        _, d_c, d_x = pipeline.subcase_detector_probs(alpha_deg)[0]
        return ((1.0, d_c, d_x),)
    if gate == "is":
        sp = is_gate.subcase_spatial(alpha_deg)["a"]
        return ((1.0, 0.5, 0.5 * is_gate.is_transform(sp).p_forward),)
    if gate == "slits":
        amps = is_gate.subcase_spatial(alpha_deg)["a"]
        return ((1.0, 0.5, 0.5 * _slits_crossing_share(amps)),)
    raise ValueError(
        "source classification needs a per-pair ratio statistic; the "
        "pulsed interference channel only defines pair coincidences"
    )


def meta_info_scenario(
    source_kind: str,
    gate: str = "pibs",
    n_photons: int = 10_000,
    seed: int = DEFAULT_SEED,
    alpha_deg: float = 45.0,
) -> int:
    """Classify what kind of source is feeding the channel.

    source_kind ("entangled" or "single") selects the simulated truth:
    pair emission with no far-side action, or lone photons polarized
    at alpha_deg.  The estimate is classified against the midpoint of
    the two analytic values.  Returns 1 when the statistics look like
    pair emission (the far side could signal here), 0 when they look
    like lone photons (it could not)."""
    if source_kind not in ("entangled", "single"):
        raise ValueError("source_kind must be 'entangled' or 'single'")
    if n_photons < 1:
        raise ValueError("n_photons must be >= 1")

    single_stats = _single_source_stats(gate, alpha_deg)
    ent_stats = _channel_stats(gate, NO_MEASURE, None)

    def ratio(stats) -> float:
        num = sum(w * dx for w, _, dx in stats)
        den = sum(w * dc for w, dc, _ in stats)
        return num / den

    v_single = ratio(single_stats)
    v_ent = ratio(ent_stats)
    if abs(v_single - v_ent) < 1e-9:
        raise ValueError(
            "unclassifiable: both source kinds give the same statistic "
            f"at alpha={alpha_deg:g}"
        )

    rng = np.random.default_rng(seed)
    stats = ent_stats if source_kind == "entangled" else single_stats
    n_c, n_x = _draw_clicks(stats, n_photons, rng)
    if n_c == 0:
        raise ValueError("no confirmation clicks; increase n_photons")
    est = n_x / n_c
    return 1 if abs(est - v_ent) <= abs(est - v_single) else 0


# calibration ----------------------------------------------------------


@dataclass(frozen=True)
class CalibrationResult:
    gate: str
    best_setting: tuple[float, float] | float
    separation: float


def calibration_sweep(
    gate: str,
    grid=None,
    combiner: pipeline.CombinerGate | None = None,
) -> CalibrationResult:
    """Search the one knob the receiver can turn without an auxiliary
    channel.

    For the measurement-angle channels the grid holds candidate far
    angles; the result is the angle pair maximizing the analytic
    symbol gap (ties resolve to the earliest grid points).  For the
    slits channel the grid holds shifter retardations on the large
    preset geometry, and the score is how far the two-setting
    detection ratio moves from 1."""
    if gate not in GATE_KINDS:
        raise ValueError(f"gate must be one of {GATE_KINDS}")

    if gate == "slits":
        geom = diffraction.PRESETS["a7"]
        x_um = diffraction.PRESET_X_UM["a7"]
        dl_grid = (
            np.linspace(0.0, geom.lambda_um, 71) if grid is None else np.asarray(grid)
        )
        if dl_grid.size == 0:
            raise ValueError("grid must be nonempty")
        scores = np.array(
            [
                abs(diffraction.phase_shifter_effect(geom, x_um, dl, 0.0) - 1.0)
                for dl in dl_grid
            ]
        )
        i = int(np.argmax(scores))
        return CalibrationResult(
            gate=gate, best_setting=float(dl_grid[i]), separation=float(scores[i])
        )

    alpha_grid = np.arange(0.0, 180.0, 5.0) if grid is None else np.asarray(grid)
    if alpha_grid.size == 0:
        raise ValueError("grid must be nonempty")
    values = np.array(
        [
            analytic_symbol_value(gate, measure(float(a)), combiner)
            for a in alpha_grid
        ]
    )
    i_hi = int(np.argmax(values))
    i_lo = int(np.argmin(values))
    return CalibrationResult(
        gate=gate,
        best_setting=(float(alpha_grid[i_hi]), float(alpha_grid[i_lo])),
        separation=float(values[i_hi] - values[i_lo]),
    )
