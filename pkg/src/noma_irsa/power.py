"""Two-level transmit power design under a peak power constraint.

Every replica is sent at one of two levels, weak or strong, that split the
peak power P as weak = alpha*P and strong = (1-alpha)*P.  Choosing
alpha = (sqrt(P+1) - 1)/P makes both canonical capture cases hit the
decoding threshold exactly under unit noise: a weak replica alone in a slot
has SINR weak/1 = gamma, and a strong replica over one weak interferer has
SINR strong/(weak+1) = gamma, with gamma = weak.

Noise power is normalized to 1 throughout; this is the unique normalization
under which the two equalities above hold simultaneously, and decoding
outcomes are invariant to rescaling P (only the weak/strong labels matter).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple

NOISE_POWER = 1.0

_TOL = 1e-12


class Power(IntEnum):
    """Replica power label; the integer values are what frame arrays store."""

    WEAK = 0
    STRONG = 1


class PowerConfigError(ValueError):
    pass


class CaptureCheck(NamedTuple):
    sinr_weak_alone: float
    sinr_strong_vs_weak: float
    feasible: bool


@dataclass(frozen=True)
class NomaPowerConfig:
    peak_power: float
    alpha: float
    weak: float
    strong: float
    target_sinr: float

    def validate(self) -> "NomaPowerConfig":
        """Check the design equalities (scaled 1e-12 tolerance); raise on violation."""
        p = self.peak_power
        if p <= 0:
            raise PowerConfigError(f"peak_power must be > 0, got {p}")
        if not (0.0 < self.alpha < 0.5):
            raise PowerConfigError(f"alpha must lie in (0, 0.5), got {self.alpha}")
        checks = [
            ("weak = alpha*peak_power", self.weak, self.alpha * p),
            ("strong = (1-alpha)*peak_power", self.strong, (1.0 - self.alpha) * p),
            ("weak + strong = peak_power", self.weak + self.strong, p),
            ("alpha = (sqrt(P+1)-1)/P", self.alpha, derive_alpha(p)),
            ("target_sinr = weak", self.target_sinr, self.weak),
        ]
        for name, got, want in checks:
            if abs(got - want) > _TOL * max(1.0, abs(got), abs(want)):
                raise PowerConfigError(f"{name} violated: {got!r} vs {want!r}")
        cap = verify_capture(self)
        if not cap.feasible:
            raise PowerConfigError(f"capture infeasible: {cap}")
        return self


def derive_alpha(peak_power: float) -> float:
    """Weak-level fraction of the peak power, (sqrt(P+1) - 1)/P.

    Tends to 0.5 as P -> 0 and to 0 as P -> inf.
    """
    if peak_power <= 0:
        raise PowerConfigError(f"peak_power must be > 0, got {peak_power}")
    return (math.sqrt(peak_power + 1.0) - 1.0) / peak_power


def build_power_config(peak_power: float) -> NomaPowerConfig:
    """Derive the full two-level configuration from the peak power alone."""
    alpha = derive_alpha(peak_power)
    weak = alpha * peak_power
    strong = (1.0 - alpha) * peak_power
    return NomaPowerConfig(
        peak_power=peak_power,
        alpha=alpha,
        weak=weak,
        strong=strong,
        target_sinr=weak,
    ).validate()


def verify_capture(config: NomaPowerConfig) -> CaptureCheck:
    """SINR of the two canonical capture cases under unit noise.

    Works on any config, validated or not, so that infeasible hand-built
    level choices can be diagnosed.
    """
    sinr_weak_alone = config.weak / NOISE_POWER
    sinr_strong_vs_weak = config.strong / (config.weak + NOISE_POWER)
    gamma = config.target_sinr
    feasible = sinr_weak_alone >= gamma - _TOL and sinr_strong_vs_weak >= gamma - _TOL
    return CaptureCheck(sinr_weak_alone, sinr_strong_vs_weak, feasible)
