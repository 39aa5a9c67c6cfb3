"""Sparse two-photon state vectors over polarization and path modes.

A mode is (particle, path, polarization label); a ket holds at most one
mode per particle, particle A first; a state is a sparse map from kets to
complex amplitudes plus a normalization flag.  All operations are pure
functions returning new states.

Conventions everything downstream relies on:

  - A polarization basis is labeled by the angle of its parallel axis,
    canonicalized to [0, 180) and binned at 1e-9 degrees.  The absolute
    angle of (basis, parallel) is the basis angle; of (basis,
    perpendicular) the basis angle plus 90.
  - Re-expressing a mode with absolute angle phi in the basis at theta
    puts cos(phi - theta) on the parallel component and sin(phi - theta)
    on the perpendicular one.
  - Amplitudes with magnitude below 1e-12 are pruned on construction.
  - States are compared physically: the overlap integral knows that
    bases at different angles describe the same plane, so "equal up to
    a global phase" is meaningful across relabelings.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

PRUNE_EPS = 1e-12
ANGLE_DECIMALS = 9
SQRT_HALF = math.sqrt(0.5)


def canon_angle_deg(angle_deg: float) -> float:
    """Canonical polarization-basis angle in [0, 180), binned at 1e-9 deg."""
    return round(angle_deg % 180.0, ANGLE_DECIMALS) % 180.0 + 0.0


class Comp(enum.Enum):
    PAR = "par"
    PERP = "perp"


class Path(enum.Enum):
    SRC_A = "SRC_A"
    SRC_B = "SRC_B"
    B1 = "B1"
    B2 = "B2"
    BC1 = "BC1"
    BC2 = "BC2"
    BX1 = "BX1"
    BX2 = "BX2"
    BX = "BX"
    BX3 = "BX3"
    BX4 = "BX4"
    FORWARD = "FORWARD"
    BACK = "BACK"


_PATH_ORDER = {p: i for i, p in enumerate(Path)}


@dataclass(frozen=True)
class PolLabel:
    angle_deg: float
    comp: Comp

    def __post_init__(self) -> None:
        object.__setattr__(self, "angle_deg", canon_angle_deg(self.angle_deg))

    @property
    def abs_angle_deg(self) -> float:
        return self.angle_deg + (90.0 if self.comp is Comp.PERP else 0.0)


@dataclass(frozen=True)
class ModeLabel:
    particle: str
    path: Path
    pol: PolLabel

    def __post_init__(self) -> None:
        if self.particle not in ("A", "B"):
            raise ValueError(f"unknown particle {self.particle!r}")
        if self.particle == "A" and self.path is not Path.SRC_A:
            raise ValueError("particle A lives on SRC_A only")
        if self.particle == "B" and self.path is Path.SRC_A:
            raise ValueError("particle B never uses SRC_A")


Ket = tuple[ModeLabel, ...]


def ket(*modes: ModeLabel) -> Ket:
    """Ket from modes, particle A first, at most one mode per particle."""
    seen = {m.particle for m in modes}
    if len(seen) != len(modes):
        raise ValueError("at most one mode per particle in a ket")
    return tuple(sorted(modes, key=lambda m: m.particle))


def mode(particle: str, path: Path, angle_deg: float, comp: Comp) -> ModeLabel:
    return ModeLabel(particle, path, PolLabel(angle_deg, comp))


@dataclass(frozen=True)
class StateVector:
    """Sparse ket -> amplitude map.  Canonical form never holds a term
    with |amplitude| < 1e-12; `normalized` records whether the writer
    claims unit norm (projective and single-output elements clear it)."""

    terms: dict[Ket, complex]
    normalized: bool = True

    def __post_init__(self) -> None:
        pruned = {k: complex(a) for k, a in self.terms.items() if abs(a) >= PRUNE_EPS}
        object.__setattr__(self, "terms", pruned)

    def norm_sq(self) -> float:
        return sum(abs(a) ** 2 for a in self.terms.values())

    def renormalized(self) -> "StateVector":
        n = math.sqrt(self.norm_sq())
        if n < 1e-15:
            raise ValueError("cannot normalize a (near) zero state")
        return StateVector({k: a / n for k, a in self.terms.items()}, normalized=True)

    def prob_on_paths(self, paths: set[Path]) -> float:
        return float(
            sum(
                abs(a) ** 2
                for k, a in self.terms.items()
                if any(m.path in paths for m in k)
            )
        )

    def amplitude(self, k: Ket) -> complex:
        return self.terms.get(k, 0.0 + 0.0j)


def _mode_overlap(m1: ModeLabel, m2: ModeLabel) -> float:
    if m1.particle != m2.particle or m1.path is not m2.path:
        return 0.0
    return math.cos(math.radians(m1.pol.abs_angle_deg - m2.pol.abs_angle_deg))


def _ket_overlap(k1: Ket, k2: Ket) -> float:
    if len(k1) != len(k2):
        return 0.0
    out = 1.0
    for m1, m2 in zip(k1, k2):
        out *= _mode_overlap(m1, m2)
        if out == 0.0:
            return 0.0
    return out


def inner(s1: StateVector, s2: StateVector) -> complex:
    """Physical overlap <s1|s2>, valid across different basis labelings."""
    total = 0.0 + 0.0j
    for k1, a1 in s1.terms.items():
        for k2, a2 in s2.terms.items():
            ov = _ket_overlap(k1, k2)
            if ov != 0.0:
                total += a1.conjugate() * a2 * ov
    return total


def states_equal_up_to_phase(s1: StateVector, s2: StateVector, tol: float = 1e-12) -> bool:
    n1, n2 = s1.norm_sq(), s2.norm_sq()
    if n1 < 1e-30 or n2 < 1e-30:
        return n1 < 1e-30 and n2 < 1e-30
    return abs(inner(s1, s2)) / math.sqrt(n1 * n2) >= 1.0 - tol


# ---------------------------------------------------------------------------
# sources and elements
# ---------------------------------------------------------------------------

def bell_pair() -> StateVector:
    """Maximally correlated pair (|par,par> + |perp,perp>)/sqrt(2) on
    paths (SRC_A, SRC_B) in the 0-degree basis."""
    par = ket(mode("A", Path.SRC_A, 0.0, Comp.PAR), mode("B", Path.SRC_B, 0.0, Comp.PAR))
    perp = ket(mode("A", Path.SRC_A, 0.0, Comp.PERP), mode("B", Path.SRC_B, 0.0, Comp.PERP))
    return StateVector({par: SQRT_HALF, perp: SQRT_HALF})


def _rebase_modes(s: StateVector, select, theta_deg: float) -> StateVector:
    """Re-express every selected mode in the basis at theta_deg."""
    theta = canon_angle_deg(theta_deg)
    out: dict[Ket, complex] = {}
    for k, amp in s.terms.items():
        pieces: list[list[tuple[ModeLabel, float]]] = []
        for m in k:
            if select(m):
                rel = math.radians(m.pol.abs_angle_deg - theta)
                pieces.append([
                    (replace(m, pol=PolLabel(theta, Comp.PAR)), math.cos(rel)),
                    (replace(m, pol=PolLabel(theta, Comp.PERP)), math.sin(rel)),
                ])
            else:
                pieces.append([(m, 1.0)])
        combos: list[tuple[list[ModeLabel], float]] = [([], 1.0)]
        for options in pieces:
            combos = [
                (modes + [m], c * w)
                for modes, c in combos
                for m, w in options
            ]
        for modes, coeff in combos:
            if coeff == 0.0:
                continue
            nk = ket(*modes)
            out[nk] = out.get(nk, 0.0 + 0.0j) + amp * coeff
    return StateVector(out, normalized=s.normalized)


def rotate_polarization_basis(s: StateVector, particle: str, theta_deg: float) -> StateVector:
    """Rewrite every mode of the given particle in the basis at theta_deg.
    Pure relabeling: norm and physical content are unchanged."""
    return _rebase_modes(s, lambda m: m.particle == particle, theta_deg)


def apply_bshv(s: StateVector) -> StateVector:
    """Route the source-B polarization components to separate branches:
    (SRC_B, parallel at 0) -> B2, (SRC_B, perpendicular at 0) -> B1.
    Amplitudes are carried over unchanged (lossless weak measurement)."""
    out: dict[Ket, complex] = {}
    for k, amp in s.terms.items():
        modes = []
        for m in k:
            if m.particle == "B" and m.path is Path.SRC_B:
                if m.pol.angle_deg != 0.0:
                    raise ValueError("source-B modes must be expressed in the 0-degree basis")
                target = Path.B2 if m.pol.comp is Comp.PAR else Path.B1
                modes.append(replace(m, path=target))
            else:
                modes.append(m)
        nk = ket(*modes)
        out[nk] = out.get(nk, 0.0 + 0.0j) + amp
    return StateVector(out, normalized=s.normalized)


def apply_polarizer(
    s: StateVector, target_paths: set[Path], pass_angle_deg: float
) -> tuple[StateVector, float]:
    """Project modes on target_paths onto the pass axis.  Returns the
    renormalized surviving state and the survival probability."""
    rebased = _rebase_modes(s, lambda m: m.path in target_paths, pass_angle_deg)
    kept = {
        k: a
        for k, a in rebased.terms.items()
        if not any(m.path in target_paths and m.pol.comp is Comp.PERP for m in k)
    }
    passed = StateVector(kept, normalized=False)
    pass_prob = passed.norm_sq()
    if pass_prob < 1e-15:
        raise ValueError("polarizer blocks the entire state")
    return passed.renormalized(), pass_prob


def measure_branch_A(
    s: StateVector, alpha_deg: float
) -> list[tuple[str, float, StateVector]]:
    """Polarization measurement on particle A at angle alpha.  Outcome
    'transmitted' keeps the projected A mode as an inert factor; outcome
    'absorbed' destroys the A photon (its mode is removed from the kets)."""
    if not any(m.particle == "A" for k in s.terms for m in k):
        raise ValueError("state contains no particle A")
    rebased = _rebase_modes(s, lambda m: m.particle == "A", alpha_deg)
    trans: dict[Ket, complex] = {}
    absorbed: dict[Ket, complex] = {}
    for k, a in rebased.terms.items():
        a_modes = [m for m in k if m.particle == "A"]
        if not a_modes:
            continue
        if a_modes[0].pol.comp is Comp.PAR:
            trans[k] = trans.get(k, 0.0 + 0.0j) + a
        else:
            nk = ket(*[m for m in k if m.particle != "A"])
            absorbed[nk] = absorbed.get(nk, 0.0 + 0.0j) + a

    outcomes = []
    for label, raw in (("transmitted", trans), ("absorbed", absorbed)):
        state = StateVector(raw, normalized=False)
        prob = state.norm_sq()
        post = state.renormalized() if prob >= 1e-15 else StateVector({}, normalized=False)
        outcomes.append((label, prob, post))
    return outcomes


def apply_5050_splitter(
    s: StateVector, in_path: Path, out_a: Path, out_b: Path
) -> StateVector:
    """Split every mode on in_path into (out_a + out_b)/sqrt(2)."""
    out: dict[Ket, complex] = {}
    for k, amp in s.terms.items():
        hit = [m for m in k if m.path is in_path]
        if not hit:
            out[k] = out.get(k, 0.0 + 0.0j) + amp
            continue
        m = hit[0]
        rest = [x for x in k if x is not m]
        for target in (out_a, out_b):
            nk = ket(*(rest + [replace(m, path=target)]))
            out[nk] = out.get(nk, 0.0 + 0.0j) + amp * SQRT_HALF
    return StateVector(out, normalized=s.normalized)


def apply_pi_combiner(
    s: StateVector,
    in_a: Path = Path.BX1,
    in_b: Path = Path.BX2,
    out: Path = Path.BX,
) -> StateVector:
    """Recombine two branches on the single kept output of a pi-shift
    splitter: out = (amp_in_b - amp_in_a)/sqrt(2) per matching ket.  The
    complementary port is discarded, so the result is unnormalized."""
    angles = {
        m.pol.angle_deg
        for k in s.terms
        for m in k
        if m.path is in_a or m.path is in_b
    }
    if len(angles) > 1:
        raise ValueError("combiner inputs must share one polarization basis")
    result: dict[Ket, complex] = {}
    for k, amp in s.terms.items():
        hit = [m for m in k if m.path is in_a or m.path is in_b]
        if not hit:
            result[k] = result.get(k, 0.0 + 0.0j) + amp
            continue
        m = hit[0]
        sign = -1.0 if m.path is in_a else 1.0
        rest = [x for x in k if x is not m]
        nk = ket(*(rest + [replace(m, path=out)]))
        result[nk] = result.get(nk, 0.0 + 0.0j) + amp * sign * SQRT_HALF
    return StateVector(result, normalized=False)


def is_entangled(s: StateVector) -> tuple[bool, float]:
    """Entanglement check on the A/B bipartition.  Collects the (path,
    polarization) labels per side, requires at most two per side, forms
    the 2x2 coefficient matrix and returns (|det| > 1e-9, det)."""
    labels_a: set[tuple] = set()
    labels_b: set[tuple] = set()
    for k in s.terms:
        by = {m.particle: m for m in k}
        if set(by) != {"A", "B"}:
            raise ValueError("state is not a two-particle product-basis state")
        labels_a.add((by["A"].path, by["A"].pol))
        labels_b.add((by["B"].path, by["B"].pol))
    if len(labels_a) > 2 or len(labels_b) > 2:
        raise ValueError("bipartition side spans more than 2 basis modes")

    def order(lbl):
        path, pol = lbl
        return (_PATH_ORDER[path], pol.angle_deg, 0 if pol.comp is Comp.PAR else 1)

    la = sorted(labels_a, key=order)
    lb = sorted(labels_b, key=order)
    mat = [[0.0 + 0.0j] * 2 for _ in range(2)]
    for k, a in s.terms.items():
        by = {m.particle: m for m in k}
        i = la.index((by["A"].path, by["A"].pol))
        j = lb.index((by["B"].path, by["B"].pol))
        mat[i][j] += a
    det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    det_real = det.real if abs(det.imag) < 1e-12 else abs(det)
    return abs(det) > 1e-9, det_real
