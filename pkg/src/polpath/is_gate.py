"""Arm-interference gate with a reflective back channel.

The two branch arms feed a balanced recombiner whose forward port goes
to the crossing detector and whose other port reflects back toward the
source.  A photon confined to a single arm passes forward untouched; a
photon split across both arms interferes, sending the symmetric
combination forward and the antisymmetric one back.

The gate therefore separates the two far-side settings without any
timing hardware: with the far photon measured at 90 degrees every
near photon is arm-pure and always goes forward (n_s = 1), while at
45 degrees half the subcase weight lands in the back port and the
forward yield drops to 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SQRT_HALF = math.sqrt(0.5)

CASE_IDS = ("deg90", "deg45")

# spatial amplitude pairs (arm 1, arm 2) per subcase at the two
# reference settings; a = transmitted far outcome, b = absorbed
SPATIAL_45 = {"a": (SQRT_HALF, SQRT_HALF), "b": (SQRT_HALF, -SQRT_HALF)}
SPATIAL_90 = {"a": (1.0, 0.0), "b": (0.0, -1.0)}


@dataclass(frozen=True)
class ISOutcome:
    """Amplitudes on the forward (crossing-detector) and back
    (source-reflected) ports."""

    forward_amp: complex
    back_amp: complex

    @property
    def p_forward(self) -> float:
        return abs(self.forward_amp) ** 2

    @property
    def p_back(self) -> float:
        return abs(self.back_amp) ** 2


def is_transform(
    spatial: tuple[complex, complex], purity_eps: float = 1e-12
) -> ISOutcome:
    """Map one photon's arm amplitudes through the recombiner.

    Arm-pure inputs (one amplitude below purity_eps) pass forward
    with their full amplitude; split inputs produce forward
    (c1 + c2)/sqrt(2) and back (c1 - c2)/sqrt(2)."""
    c1, c2 = spatial
    if abs(c2) < purity_eps:
        return ISOutcome(forward_amp=c1, back_amp=0.0)
    if abs(c1) < purity_eps:
        return ISOutcome(forward_amp=c2, back_amp=0.0)
    root2 = math.sqrt(2.0)
    return ISOutcome(
        forward_amp=(c1 + c2) / root2,
        back_amp=(c1 - c2) / root2,
    )


def run_is_case(case_id: str) -> float:
    """Forward yield n_s averaged over the two equal-weight subcases
    of a reference setting."""
    if case_id not in CASE_IDS:
        raise ValueError(f"case_id must be one of {CASE_IDS}")
    table = SPATIAL_90 if case_id == "deg90" else SPATIAL_45
    total = 0.0
    for spatial in table.values():
        total += 0.5 * is_transform(spatial).p_forward
    return total


def subcase_spatial(alpha_deg: float) -> dict[str, tuple[float, float]]:
    """Arm amplitudes of the near photon for a far-side measurement at
    alpha_deg: a = transmitted subcase, b = absorbed subcase."""
    rad = math.radians(alpha_deg)
    s, c = math.sin(rad), math.cos(rad)
    return {"a": (s, c), "b": (c, -s)}


def n_s_alpha(alpha_deg: float) -> float:
    """Forward yield as a function of the far setting.

    Jumps to 1.0 exactly at arm-pure angles (multiples of 90 degrees)
    where the recombiner is bypassed, and sits at 0.5 everywhere else;
    the discontinuity is the gate's signal."""
    table = subcase_spatial(alpha_deg)
    total = 0.0
    for spatial in table.values():
        out = is_transform(spatial)
        total += 0.5 * out.p_forward
    return total
