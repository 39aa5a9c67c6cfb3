"""Pulsed two-photon interference gate.

The two branch arms meet on a pi-shift splitter with outputs read by
photon-number-resolving detectors.  The source emits one photon per
period; the second arm carries a one-period delay, so the photon of
pulse k on the delayed arm can meet the photon of pulse k+1 on the
direct arm.  Only coincidences (two detections at the same resolved
time) are processed, split into identical-output (both photons on one
detector) and non-identical-output (one on each) kinds.

With the far photon measured at 90 degrees each photon rides exactly
one arm, the arrival-time table is {dt, dt, 2dt, 0} over the four
subcase pairs, and the only coincidence, the (delayed, direct) pair,
bunches with certainty: identical output, rate 1/4.  At 45 degrees
every photon straddles both arms, detection times smear over a full
period, and coincidences survive only inside a window epsilon*dt
around equality, at rate epsilon^2/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SQRT_HALF = math.sqrt(0.5)
SQRT2 = math.sqrt(2.0)

# spatial amplitude pairs (direct arm, delayed arm) per subcase;
# a = transmitted far outcome, b = absorbed
SPATIAL_45 = {"a": (SQRT_HALF, -SQRT_HALF), "b": (SQRT_HALF, SQRT_HALF)}
SPATIAL_90 = {"a": (1.0, 0.0), "b": (0.0, 1.0)}

CASE_IDS = ("deg90", "deg45")


@dataclass(frozen=True)
class TimedPhoton:
    """One photon: emission time in pulse periods plus its spatial
    amplitude pair over (direct arm, delayed arm)."""

    emit_time: float
    spatial: tuple[complex, complex]

    def __post_init__(self) -> None:
        n2 = abs(self.spatial[0]) ** 2 + abs(self.spatial[1]) ** 2
        if abs(n2 - 1.0) > 1e-9:
            raise ValueError("spatial amplitudes must be normalized")


@dataclass(frozen=True)
class TwoPhotonOut:
    """Two-photon output amplitudes over the unordered occupation
    patterns: both photons on port 3, both on port 4, one on each."""

    amp_33: complex
    amp_44: complex
    amp_34: complex

    @property
    def p_identical(self) -> float:
        return abs(self.amp_33) ** 2 + abs(self.amp_44) ** 2

    @property
    def p_non_identical(self) -> float:
        return abs(self.amp_34) ** 2


@dataclass(frozen=True)
class CoincidenceRecord:
    """kind is "none" unless the two detections were simultaneous at
    detector resolution; dt is the resolved time difference (window
    separations below the coincidence resolution are recorded as 0)."""

    kind: str
    dt: float


def hom_transform(
    p1_spatial: tuple[complex, complex], p2_spatial: tuple[complex, complex]
) -> TwoPhotonOut:
    """Two simultaneous photons through the pi-shift splitter.

    Single-photon map: direct arm -> (-|3> + |4>)/sqrt(2), delayed arm
    -> (|3> + |4>)/sqrt(2).  The product state is symmetrized, with
    sqrt(2) enhancement on doubly occupied patterns; the overall norm
    is fixed by the overlap of the two input states, so the three
    output probabilities sum to 1 for any normalized inputs."""
    c1a, c2a = p1_spatial
    c1b, c2b = p2_spatial
    d3a = (c2a - c1a) / SQRT2
    d4a = (c1a + c2a) / SQRT2
    d3b = (c2b - c1b) / SQRT2
    d4b = (c1b + c2b) / SQRT2
    overlap = complex(c1a).conjugate() * c1b + complex(c2a).conjugate() * c2b
    norm = 1.0 / math.sqrt(1.0 + abs(overlap) ** 2)
    return TwoPhotonOut(
        amp_33=SQRT2 * d3a * d3b * norm,
        amp_44=SQRT2 * d4a * d4b * norm,
        amp_34=(d3a * d4b + d4a * d3b) * norm,
    )


def _arrival(subcase: str, emit_time: float, delta_t: float) -> float:
    # at 90 degrees subcase b rides the delayed arm
    return emit_time + (delta_t if subcase == "b" else 0.0)


def _classify_simultaneous(spatial_1, spatial_2) -> str:
    out = hom_transform(spatial_1, spatial_2)
    p_cross = out.p_non_identical
    if p_cross < 1e-12:
        return "identical_output"
    if p_cross > 1.0 - 1e-12:
        return "non_identical_output"
    raise ValueError(
        "coincidence kind is not deterministic for these inputs; "
        "draw it from TwoPhotonOut probabilities instead"
    )


def classify_pulse_pair(
    case_id: str,
    subcases: tuple[str, str],
    delta_t: float = 1.0,
    rng: np.random.Generator | None = None,
    epsilon: float = 0.01,
) -> CoincidenceRecord:
    """Timing + output classification for one consecutive pulse pair.

    subcases = (first pulse, second pulse), each "a" or "b"; the second
    pulse is emitted delta_t after the first.  The 90-degree case is
    fully deterministic.  The 45-degree case draws each detection time
    uniformly over its one-period uncertainty window (rng required) and
    calls anything closer than epsilon*delta_t a coincidence."""
    if case_id not in CASE_IDS:
        raise ValueError(f"case_id must be one of {CASE_IDS}")
    s1, s2 = subcases
    if s1 not in ("a", "b") or s2 not in ("a", "b"):
        raise ValueError("subcases must be 'a' or 'b'")

    if case_id == "deg90":
        t1 = _arrival(s1, 0.0, delta_t)
        t2 = _arrival(s2, delta_t, delta_t)
        dt = abs(t2 - t1)
        if dt > 0.0:
            return CoincidenceRecord(kind="none", dt=dt)
        kind = _classify_simultaneous(SPATIAL_90[s1], SPATIAL_90[s2])
        return CoincidenceRecord(kind=kind, dt=0.0)

    if rng is None:
        raise ValueError("the 45-degree case needs an rng for detection timing")
    t1 = rng.uniform(0.0, delta_t)
    t2 = delta_t + rng.uniform(0.0, delta_t)
    dt = abs(t2 - t1)
    if dt > epsilon * delta_t:
        return CoincidenceRecord(kind="none", dt=dt)
    kind = _classify_simultaneous(SPATIAL_45[s1], SPATIAL_45[s2])
    return CoincidenceRecord(kind=kind, dt=0.0)


@dataclass(frozen=True)
class HomStats:
    case_id: str
    n_pulse_pairs: int
    coincidence_rate: float
    identical_fraction: float
    non_identical_fraction: float
    n_coincidences: int
    epsilon: float


def simulate_hom(
    case_id: str,
    n_pulse_pairs: int,
    seed: int = 0,
    delta_t: float = 1.0,
    epsilon: float = 0.01,
) -> HomStats:
    """Monte-Carlo over independent consecutive pulse pairs, subcases
    drawn 50/50 per pulse.  Fractions are taken among realized
    coincidences (0.0 when there were none)."""
    if n_pulse_pairs < 1:
        raise ValueError("need at least one pulse pair")
    if case_id not in CASE_IDS:
        raise ValueError(f"case_id must be one of {CASE_IDS}")
    rng = np.random.default_rng(seed)
    # 0 = subcase a, 1 = subcase b
    subs = rng.integers(0, 2, size=(n_pulse_pairs, 2))

    if case_id == "deg90":
        coinc = (subs[:, 0] == 1) & (subs[:, 1] == 0)
        n_co = int(coinc.sum())
        # the only simultaneous pairing bunches deterministically
        n_identical = n_co
    else:
        t1 = rng.uniform(0.0, delta_t, size=n_pulse_pairs)
        t2 = delta_t + rng.uniform(0.0, delta_t, size=n_pulse_pairs)
        coinc = np.abs(t2 - t1) <= epsilon * delta_t
        n_co = int(coinc.sum())
        same = subs[:, 0] == subs[:, 1]
        n_identical = int((coinc & same).sum())

    rate = n_co / n_pulse_pairs
    ident = n_identical / n_co if n_co else 0.0
    non_ident = (n_co - n_identical) / n_co if n_co else 0.0
    return HomStats(
        case_id=case_id,
        n_pulse_pairs=n_pulse_pairs,
        coincidence_rate=rate,
        identical_fraction=ident,
        non_identical_fraction=non_ident,
        n_coincidences=n_co,
        epsilon=epsilon,
    )


def expected_coincidence_rate(alpha_deg: float | None, epsilon: float = 0.01) -> float:
    """Analytic per-pair coincidence probability for a far-side
    measurement at alpha_deg (None = no measurement, which leaves the
    near photon smeared over both arms exactly like the 45 setting).
    Arm-pure angles give the deterministic 1/4; anything else only the
    boundary-window rate."""
    if alpha_deg is not None:
        rel = alpha_deg % 90.0
        if min(rel, 90.0 - rel) < 1e-9:
            return 0.25
    return 0.5 * epsilon ** 2
