"""Why no symmetric-linear recombination stage can signal.

Scale the two branch amplitudes by arbitrary real modifiers (f_i on the
first branch, f_m on the second) before they interfere.  The closed
forms below then satisfy, for every modifier pair and every measurement
angle,

    n_s(no measurement) = mean(n_s(transmitted), n_s(absorbed))

so averaging over the receiver's unknowable subcases erases the angle.
`verify_nogo` hammers the identity numerically; the pipeline module
serves as an independent end-to-end oracle for the same numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

CASES = ("I", "IIa", "IIb")


@dataclass(frozen=True)
class SymmetricModifiers:
    """Real per-branch amplitude modifiers; f_i scales the branch fed
    by the absorbed-component arm (BX1), f_m the other (BX2)."""

    f_i: float
    f_m: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.f_i) and math.isfinite(self.f_m)):
            raise ValueError("modifiers must be finite")
        if self.f_i == 0.0 and self.f_m == 0.0:
            raise ValueError("modifiers must not both be zero")


def symmetric_ns(mods: SymmetricModifiers, case: str, alpha_deg: float = 0.0) -> float:
    """Closed-form n_s for a symmetric-linear gate with the given
    modifiers.  Case "I" ignores alpha_deg."""
    a = math.radians(alpha_deg)
    if case == "I":
        return 0.25 * (mods.f_m ** 2 + mods.f_i ** 2)
    if case == "IIa":
        return 0.5 * (mods.f_m * math.cos(a) - mods.f_i * math.sin(a)) ** 2
    if case == "IIb":
        return 0.5 * (-mods.f_m * math.sin(a) - mods.f_i * math.cos(a)) ** 2
    raise ValueError(f"case must be one of {CASES}, got {case!r}")


def verify_nogo(n_samples: int = 100, alpha_grid=None, seed: int = 0) -> float:
    """Max |n_s(I) - mean(n_s(IIa), n_s(IIb))| over random modifier
    pairs in [-2, 2]^2 and the whole angle grid.  Algebraically zero;
    anything above ~1e-15 would falsify the identity."""
    if n_samples < 1:
        raise ValueError("need at least one sample")
    if alpha_grid is None:
        alpha_grid = np.arange(181.0)
    alphas = np.radians(np.asarray(alpha_grid, dtype=float))
    rng = np.random.default_rng(seed)
    mods = rng.uniform(-2.0, 2.0, size=(n_samples, 2))
    f_i = mods[:, 0:1]
    f_m = mods[:, 1:2]
    c = np.cos(alphas)[None, :]
    s = np.sin(alphas)[None, :]
    ns_i = 0.25 * (f_m ** 2 + f_i ** 2)
    ns_iia = 0.5 * (f_m * c - f_i * s) ** 2
    ns_iib = 0.5 * (-f_m * s - f_i * c) ** 2
    gap = np.abs(ns_i - 0.5 * (ns_iia + ns_iib))
    return float(gap.max())
