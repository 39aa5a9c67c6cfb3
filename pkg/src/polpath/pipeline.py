"""Full apparatus runs: source, branch splitter, diagonal polarizers,
50/50 taps, recombination, detector statistics.

Two scenarios are wired up.  In the first the remote photon is left
alone; in the second it is measured in a chosen basis before the local
optics act, which splits the run into transmitted/absorbed subcases.
Each run reports the tap-detector probability d_c, the recombined-port
probability d_x and their ratio n_s = d_x / d_c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from polpath.quantum_core import (
    Path,
    StateVector,
    apply_5050_splitter,
    apply_bshv,
    apply_pi_combiner,
    apply_polarizer,
    bell_pair,
    measure_branch_A,
    rotate_polarization_basis,
    states_equal_up_to_phase,
)

POLARIZER_ANGLE_DEG = 45.0


@dataclass(frozen=True)
class CaseResult:
    """Detector statistics for one scenario run."""

    d_c: float
    d_x: float

    @property
    def n_s(self) -> float:
        return self.d_x / self.d_c


@dataclass(frozen=True)
class CombinerGate:
    """Recombination stage with per-branch amplitude modifiers.

    The plain gate is (1, 1).  Other values model a symmetric-linear
    stage that scales the two branch amplitudes before they interfere;
    the nogo module uses this as its end-to-end oracle."""

    f_bx1: float = 1.0
    f_bx2: float = 1.0


PI_COMBINER = CombinerGate()


def _scale_branch_amps(s: StateVector, factors: dict[Path, float]) -> StateVector:
    out = {}
    for k, amp in s.terms.items():
        f = 1.0
        for m in k:
            f *= factors.get(m.path, 1.0)
        out[k] = amp * f
    pure = all(v == 1.0 for v in factors.values())
    return StateVector(out, normalized=s.normalized and pure)


def _run_branch_optics(s: StateVector, gate: CombinerGate) -> CaseResult:
    """Apparatus tail for states already split onto paths B1/B2:
    diagonal polarizers, 50/50 taps, recombination."""
    s, _ = apply_polarizer(s, {Path.B1, Path.B2}, POLARIZER_ANGLE_DEG)
    s = apply_5050_splitter(s, Path.B1, Path.BC1, Path.BX1)
    s = apply_5050_splitter(s, Path.B2, Path.BC2, Path.BX2)
    d_c = s.prob_on_paths({Path.BC1, Path.BC2})
    s = _scale_branch_amps(s, {Path.BX1: gate.f_bx1, Path.BX2: gate.f_bx2})
    out = apply_pi_combiner(s, Path.BX1, Path.BX2, Path.BX)
    d_x = out.prob_on_paths({Path.BX})
    return CaseResult(d_c=d_c, d_x=d_x)


def run_case_I(gate: CombinerGate = PI_COMBINER, source_basis_deg: float = 0.0) -> CaseResult:
    """No remote measurement.  For the plain gate this returns
    d_c = 1/2, d_x = 1/4, n_s = 1/2, independent of the basis the
    source happens to be expressed in."""
    s = bell_pair()
    if source_basis_deg != 0.0:
        s = rotate_polarization_basis(s, "A", source_basis_deg)
        s = rotate_polarization_basis(s, "B", source_basis_deg)
        s = rotate_polarization_basis(s, "B", 0.0)
    return _run_branch_optics(apply_bshv(s), gate)


def run_case_II(
    alpha_deg: float, gate: CombinerGate = PI_COMBINER
) -> tuple[CaseResult, CaseResult, float]:
    """Remote measurement at alpha_deg before the local branch optics.

    Returns (transmitted subcase, absorbed subcase, mixed n_s), where
    the mix weights the two equally likely subcases 50/50.  Plain gate:
    n_s runs to (1 -+ sin 2a)/2 and the mix stays exactly 1/2."""
    outcomes = measure_branch_A(apply_bshv(bell_pair()), alpha_deg)
    by_label = {label: post for label, _, post in outcomes}
    a = _run_branch_optics(by_label["transmitted"], gate)
    b = _run_branch_optics(by_label["absorbed"], gate)
    mixed = 0.5 * (a.n_s + b.n_s)
    return a, b, mixed


def order_independence_check(alpha_deg: float) -> bool:
    """Measure-then-split versus split-then-measure.

    Both orders must give the same outcome probabilities and the same
    post-states up to a global phase (1e-12)."""
    split_first = measure_branch_A(apply_bshv(bell_pair()), alpha_deg)
    measure_first = [
        (label, p, apply_bshv(post))
        for label, p, post in measure_branch_A(bell_pair(), alpha_deg)
    ]
    for (l1, p1, s1), (l2, p2, s2) in zip(split_first, measure_first):
        if l1 != l2 or abs(p1 - p2) > 1e-12:
            return False
        if not states_equal_up_to_phase(s1, s2, tol=1e-12):
            return False
    return True


def figure2_data(
    alpha_grid, gate: CombinerGate = PI_COMBINER
) -> list[tuple[float, float, float, float, float]]:
    """Rows (alpha_deg, n_s no-measure, n_s transmitted, n_s absorbed,
    n_s mixed) over the grid."""
    grid = list(alpha_grid)
    if not grid:
        raise ValueError("alpha grid is empty")
    ns_i = run_case_I(gate).n_s
    rows = []
    for alpha in grid:
        a, b, mixed = run_case_II(float(alpha), gate)
        rows.append((float(alpha), ns_i, a.n_s, b.n_s, mixed))
    return rows


FIGURE2_CSV_HEADER = "alpha_deg,ns_case_I,ns_case_IIa,ns_case_IIb,ns_mixed"


def figure2_csv(alpha_grid, gate: CombinerGate = PI_COMBINER) -> str:
    lines = [FIGURE2_CSV_HEADER]
    for row in figure2_data(alpha_grid, gate):
        lines.append(",".join(f"{v:.12g}" for v in row))
    return "\n".join(lines) + "\n"


@lru_cache(maxsize=512)
def subcase_detector_probs(
    alpha_deg: float | None, gate: CombinerGate = PI_COMBINER
) -> tuple[tuple[float, float, float], ...]:
    """(weight, d_c, d_x) per subcase, for samplers.

    No measurement gives one subcase of weight 1; a measurement gives
    the two equally likely subcases."""
    if alpha_deg is None:
        r = run_case_I(gate)
        return ((1.0, r.d_c, r.d_x),)
    a, b, _ = run_case_II(alpha_deg, gate)
    return ((0.5, a.d_c, a.d_x), (0.5, b.d_c, b.d_x))
