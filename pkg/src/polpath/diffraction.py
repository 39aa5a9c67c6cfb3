"""Scalar interference model for the slit-sampling gate.

Two branch outputs act as point emitters a distance `a_um` apart.  A
plate at distance `d1_um` carries three infinitesimal slits: one on the
midline, two at the first minima of the in-phase two-source pattern
(offset `b_um`, solved exactly, no paraxial rounding).  A detector line
sits a further `d2_um` behind the plate; an optional phase shifter
retards the central-slit path by `delta_lambda_um`.

Intensities use unit-amplitude point re-emitters with no obliquity or
1/r decay.  Phases are evaluated as path-length *differences* against
the central legs, with differences of squares factored algebraically,
so side-slit extinction in the in-phase subcase survives at the 1e-15
level instead of drowning in catastrophic cancellation.

Two amplitude conventions coexist deliberately:

  - `detector_scan` is a complex-phasor intensity model (used for the
    curve figures and the decoding statistic);
  - `snapshot_amplitudes` is an instantaneous real sum of sines in
    degree phases (used by `phase_shifter_effect`, whose reference
    value depends on that literal form).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

SQRT_HALF = math.sqrt(0.5)


def _offset_from(lambda_um: float, a_um: float, d1_um: float, m: int) -> float:
    big_m = m + 0.5
    ml = big_m * lambda_um
    denom = 4.0 * a_um ** 2 - 4.0 * ml ** 2
    if denom <= 0.0:
        raise ValueError("side-slit offset is imaginary: need (m + 0.5) * lambda < a")
    num = 4.0 * ml ** 2 * d1_um ** 2 - ml ** 4 + ml ** 2 * a_um ** 2
    return math.sqrt(num / denom)


@dataclass(frozen=True)
class SlitGeometry:
    """All lengths in micrometers; m indexes which minimum pair carries
    the side slits (m = 0 is the innermost)."""

    lambda_um: float
    a_um: float
    d1_um: float
    d2_um: float
    m: int = 0
    b_um: float = field(init=False)

    def __post_init__(self) -> None:
        for name in ("lambda_um", "a_um", "d1_um", "d2_um"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        if self.m < 0:
            raise ValueError("m must be a nonnegative integer")
        object.__setattr__(
            self, "b_um", _offset_from(self.lambda_um, self.a_um, self.d1_um, self.m)
        )


def slit_offset(geom: SlitGeometry) -> float:
    """Side-slit offset b: the distance from the midline at which the
    in-phase two-source pattern has its (m+1)-th minimum on the plate,
    from the exact (non-paraxial) closed form."""
    return _offset_from(geom.lambda_um, geom.a_um, geom.d1_um, geom.m)


@dataclass(frozen=True)
class PathSet:
    """The nine source-to-slit and slit-to-detector path lengths.
    l1/l2/l3 run from the first output to slits 1/2/3, l4/l5/l6 from
    the second output; by mirror symmetry l4 = l3 and l6 = l1.
    l7/l8/l9 run from slits 1/2/3 to the detector point."""

    l1: float
    l2: float
    l3: float
    l4: float
    l5: float
    l6: float
    l7: float
    l8: float
    l9: float


def path_lengths(geom: SlitGeometry, x_um: float) -> PathSet:
    b = geom.b_um
    half_a = 0.5 * geom.a_um
    l1 = math.hypot(geom.d1_um, b - half_a)
    l2 = math.hypot(geom.d1_um, half_a)
    l3 = math.hypot(geom.d1_um, b + half_a)
    l7 = math.hypot(geom.d2_um, x_um + b)
    l8 = math.hypot(geom.d2_um, x_um)
    l9 = math.hypot(geom.d2_um, x_um - b)
    return PathSet(l1=l1, l2=l2, l3=l3, l4=l3, l5=l2, l6=l1, l7=l7, l8=l8, l9=l9)


# ---------------------------------------------------------------------------
# snapshot model (degree phases, literal sum of sines)
# ---------------------------------------------------------------------------

def snapshot_amplitudes(
    geom: SlitGeometry, x_um: float, delta_lambda_um: float, case90: str
) -> float:
    """Instantaneous field amplitude at the detector for one 90-degree
    subcase: the sum over the three slit paths of sin(phase), phases in
    degrees as (360/lambda)(source leg + detector leg), the shifter
    subtracted on the central path only.  Subcase "a" feeds from the
    first output, "b" from the second; mirror symmetry makes their
    source legs (l1,l2,l3) and (l4,l5,l6)."""
    if case90 not in ("a", "b"):
        raise ValueError("case90 must be 'a' or 'b'")
    p = path_lengths(geom, x_um)
    legs = (p.l1, p.l2, p.l3) if case90 == "a" else (p.l4, p.l5, p.l6)
    dets = (p.l7, p.l8, p.l9)
    k = 360.0 / geom.lambda_um
    # phases are reduced mod 360 before the shifter term is subtracted,
    # so dl -> dl + lambda shifts by one exact turn
    shift = math.fmod(k * delta_lambda_um, 360.0)
    total = 0.0
    for j, (lp, ld) in enumerate(zip(legs, dets)):
        phi = math.fmod(k * (lp + ld), 360.0)
        if j == 1:
            phi -= shift
        total += math.sin(math.radians(phi))
    return total


def phase_shifter_effect(
    geom: SlitGeometry, x_um: float, dl1_um: float, dl2_um: float
) -> float:
    """Ratio of the subcase-averaged mean-square snapshot amplitude at
    shifter setting dl1 versus setting dl2."""

    def mean_square(dl: float) -> float:
        a = snapshot_amplitudes(geom, x_um, dl, "a")
        b = snapshot_amplitudes(geom, x_um, dl, "b")
        return 0.5 * (a * a + b * b)

    denom = mean_square(dl2_um)
    if denom < 1e-15:
        raise ValueError("reference mean-square amplitude is zero")
    return mean_square(dl1_um) / denom


# ---------------------------------------------------------------------------
# phasor model (complex fields, intensity curves)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldCase:
    """Signed source amplitudes (first output, second output) feeding
    the plate.  The 45-degree subcases drive both outputs, in phase or
    in antiphase; the 90-degree subcases drive exactly one."""

    case_id: str
    source_amplitudes: tuple[float, float]


FIELD_CASES = {
    "II_a_45": FieldCase("II_a_45", (SQRT_HALF, SQRT_HALF)),
    "II_b_45": FieldCase("II_b_45", (SQRT_HALF, -SQRT_HALF)),
    "II_a_90": FieldCase("II_a_90", (1.0, 0.0)),
    "II_b_90": FieldCase("II_b_90", (0.0, -1.0)),
}


@dataclass(frozen=True)
class ScanCurve:
    """Sampled intensity curve on a detector-plane grid."""

    x_um: np.ndarray
    intensity: np.ndarray

    def __post_init__(self) -> None:
        x = np.asarray(self.x_um, dtype=float)
        i = np.asarray(self.intensity, dtype=float)
        if x.shape != i.shape or x.ndim != 1:
            raise ValueError("grid and intensity must be equal-length 1-d arrays")
        object.__setattr__(self, "x_um", x)
        object.__setattr__(self, "intensity", i)


def default_detector_grid(geom: SlitGeometry, n: int = 2001) -> np.ndarray:
    """Symmetric grid spanning five geometric slit-image spacings."""
    half_width = 5.0 * geom.b_um * geom.d2_um / geom.d1_um
    return np.linspace(-half_width, half_width, n)


def plate_pattern(
    geom: SlitGeometry, x_grid_um, relative_phase: float = 0.0
) -> ScanCurve:
    """Two-source interference on the plate itself (no slits): unit
    emitters at +-a/2, optional extra phase on the second.  In-phase
    drive peaks on the midline and vanishes at +-b; a pi offset gives
    the complementary pattern."""
    x = np.asarray(x_grid_um, dtype=float)
    la = np.hypot(geom.d1_um, x + 0.5 * geom.a_um)
    lb = np.hypot(geom.d1_um, x - 0.5 * geom.a_um)
    # lb - la = -2ax/(la+lb), factored to dodge cancellation
    delta = (2.0 * math.pi / geom.lambda_um) * (-2.0 * geom.a_um * x / (la + lb))
    intensity = 2.0 + 2.0 * np.cos(delta + relative_phase)
    return ScanCurve(x_um=x, intensity=intensity)


def detector_scan_amplitudes(
    geom: SlitGeometry,
    source_amplitudes: tuple[complex, complex],
    x_grid_um,
    delta_lambda_um: float = 0.0,
) -> ScanCurve:
    """Coherent intensity curve behind the plate for one source pair.

    Per slit, the two source amplitudes add with their source-leg
    phases; the three slit fields then propagate to each detector
    point, the central one retarded by the shifter.  All phases are
    taken relative to the central legs (l2 and l8)."""
    s1, s2 = source_amplitudes
    x = np.asarray(x_grid_um, dtype=float)
    b = geom.b_um
    a = geom.a_um
    p = path_lengths(geom, 0.0)  # source legs do not depend on x
    k = 2.0 * math.pi / geom.lambda_um

    # exact leg differences: l1 - l2 = b(b-a)/(l1+l2) and so on
    da1 = b * (b - a) / (p.l1 + p.l2)
    db1 = b * (b + a) / (p.l4 + p.l2)
    da3 = b * (b + a) / (p.l3 + p.l2)
    db3 = b * (b - a) / (p.l6 + p.l2)
    f1 = s1 * np.exp(1j * k * da1) + s2 * np.exp(1j * k * db1)
    f2 = complex(s1 + s2)
    f3 = s1 * np.exp(1j * k * da3) + s2 * np.exp(1j * k * db3)

    l7 = np.hypot(geom.d2_um, x + b)
    l8 = np.hypot(geom.d2_um, x)
    l9 = np.hypot(geom.d2_um, x - b)
    d1 = b * (2.0 * x + b) / (l7 + l8)
    d3 = b * (b - 2.0 * x) / (l9 + l8)

    field = (
        f1 * np.exp(1j * k * d1)
        + f2 * np.exp(-1j * k * delta_lambda_um)
        + f3 * np.exp(1j * k * d3)
    )
    return ScanCurve(x_um=x, intensity=np.abs(field) ** 2)


def detector_scan(
    geom: SlitGeometry, case_id: str, x_grid_um, delta_lambda_um: float = 0.0
) -> ScanCurve:
    """detector_scan_amplitudes for one of the named subcases."""
    if case_id not in FIELD_CASES:
        raise ValueError(f"unknown case_id {case_id!r}")
    return detector_scan_amplitudes(
        geom, FIELD_CASES[case_id].source_amplitudes, x_grid_um, delta_lambda_um
    )


def averaged_scan(curve_a: ScanCurve, curve_b: ScanCurve) -> ScanCurve:
    """Pointwise mean of two curves on the same grid."""
    if curve_a.x_um.shape != curve_b.x_um.shape or not np.array_equal(
        curve_a.x_um, curve_b.x_um
    ):
        raise ValueError("curves are sampled on different grids")
    return ScanCurve(curve_a.x_um, 0.5 * (curve_a.intensity + curve_b.intensity))


def peak_normalized(curve: ScanCurve) -> ScanCurve:
    """Curve rescaled to unit maximum (arbitrary-units presentation)."""
    peak = float(curve.intensity.max())
    if peak <= 0.0:
        raise ValueError("curve has no positive peak")
    return ScanCurve(curve.x_um, curve.intensity / peak)


def normalized_average(
    geom: SlitGeometry,
    case_pair: tuple[str, str],
    x_grid_um,
    delta_lambda_um: float = 0.0,
) -> ScanCurve:
    """Mean of the two subcase curves after each is rescaled to unit
    peak.  This mirrors how the per-subcase curves are presented (each
    in its own arbitrary units) and is the receiver statistic that
    actually separates measurement settings; the raw (unnormalized)
    pointwise mean is provably setting-independent, which the tests
    assert separately."""
    ca = peak_normalized(detector_scan(geom, case_pair[0], x_grid_um, delta_lambda_um))
    cb = peak_normalized(detector_scan(geom, case_pair[1], x_grid_um, delta_lambda_um))
    return averaged_scan(ca, cb)


def separation_point(
    geom: SlitGeometry, x_grid_um=None, delta_lambda_um: float = 0.0
) -> tuple[float, float]:
    """Detector position that best separates the two measurement
    settings, as (x_um, gap): the grid point maximizing the absolute
    difference between the normalized averaged 45-degree and 90-degree
    curves, and the gap there."""
    x = default_detector_grid(geom) if x_grid_um is None else np.asarray(x_grid_um)
    avg45 = normalized_average(geom, ("II_a_45", "II_b_45"), x, delta_lambda_um)
    avg90 = normalized_average(geom, ("II_a_90", "II_b_90"), x, delta_lambda_um)
    diff = np.abs(avg45.intensity - avg90.intensity)
    i = int(np.argmax(diff))
    return float(x[i]), float(diff[i])


PRESETS = {
    "a6": SlitGeometry(lambda_um=0.5, a_um=2000.0, d1_um=1.0e6, d2_um=1.0e5, m=0),
    "a7": SlitGeometry(lambda_um=0.7, a_um=777.0, d1_um=3333333.0, d2_um=777777.0, m=0),
}

PRESET_X_UM = {"a6": 0.0, "a7": 333333.0}

CURVE_CSV_HEADER = "x_um,intensity"


def curve_csv(curve: ScanCurve) -> str:
    lines = [CURVE_CSV_HEADER]
    for x, i in zip(curve.x_um, curve.intensity):
        lines.append(f"{x:.12g},{i:.12g}")
    return "\n".join(lines) + "\n"
