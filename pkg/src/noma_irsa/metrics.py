"""System-level outcome aggregation and performance metrics.

A user counts as decoded when any satellite recovers it; packet loss rate
pools (m - d) over frames.  The Wilson interval treats pooled user outcomes
as independent, which within a frame they are not, so it is a per-packet
nominal interval; bootstrap_plr_ci resamples whole frames for an interval
that respects that correlation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# two-sided 95% normal quantile
_Z95 = 1.959963984540054


@dataclass(frozen=True)
class DecodeOutcome:
    """Per-satellite decoded sets of one frame plus their union count."""

    per_satellite: tuple[frozenset[int], ...]
    union_count: int
    n_users: int

    def __post_init__(self):
        if self.union_count > self.n_users:
            raise ValueError("more decoded users than users")


def aggregate(per_satellite: Sequence[set[int]], n_users: int) -> DecodeOutcome:
    """Union the per-satellite decoded sets of one frame."""
    if not per_satellite:
        raise ValueError("need at least one satellite's decoded set")
    union: set[int] = set()
    for d in per_satellite:
        union |= d
    return DecodeOutcome(
        per_satellite=tuple(frozenset(d) for d in per_satellite),
        union_count=len(union),
        n_users=n_users,
    )


def wilson_interval(failures: int, total: int, z: float = _Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if total <= 0:
        raise ValueError("total must be positive")
    phat = failures / total
    denom = 1.0 + z * z / total
    center = (phat + z * z / (2.0 * total)) / denom
    half = z * np.sqrt(phat * (1.0 - phat) / total + z * z / (4.0 * total * total)) / denom
    # at the extremes center - half cancels to ~1e-18; pin the exact bound
    lo = 0.0 if failures == 0 else max(0.0, center - half)
    hi = 1.0 if failures == total else min(1.0, center + half)
    return float(lo), float(hi)


def plr_estimate(outcomes: Sequence[DecodeOutcome]) -> tuple[float, float, float]:
    """Pooled packet loss rate with a 95% Wilson interval.

    Returns (plr, ci_low, ci_high) where plr = sum(m - d) / sum(m).
    """
    if not outcomes:
        raise ValueError("no outcomes to estimate from")
    total = sum(o.n_users for o in outcomes)
    if total <= 0:
        raise ValueError("outcomes carry no users")
    lost = total - sum(o.union_count for o in outcomes)
    lo, hi = wilson_interval(lost, total)
    return lost / total, lo, hi


def bootstrap_plr_ci(
    n_users_per_frame: Sequence[int],
    decoded_per_frame: Sequence[int],
    n_boot: int = 1000,
    seed: int = 0,
) -> tuple[float, float]:
    """Frame-level percentile bootstrap (2.5%, 97.5%) of the pooled loss rate."""
    m = np.asarray(n_users_per_frame, dtype=np.int64)
    d = np.asarray(decoded_per_frame, dtype=np.int64)
    if m.size == 0 or m.size != d.size:
        raise ValueError("need matching, non-empty per-frame counts")
    rng = np.random.Generator(np.random.PCG64(seed))
    idx = rng.integers(0, m.size, size=(n_boot, m.size))
    tot = m[idx].sum(axis=1)
    lost = tot - d[idx].sum(axis=1)
    plrs = lost / np.maximum(tot, 1)
    lo, hi = np.percentile(plrs, [2.5, 97.5])
    return float(lo), float(hi)


def throughput(load: float, plr: float) -> float:
    """Successfully decoded users per slot: load * (1 - plr)."""
    return load * (1.0 - plr)


def avg_energy(avg_degree: float, peak_power: float, slot_duration: float) -> float:
    """Mean energy one node spends per frame.

    Weak and strong levels are equiprobable and average to peak_power/2,
    so the mean is avg_degree * peak_power * slot_duration / 2.
    """
    return avg_degree * peak_power * slot_duration / 2.0


def energy_efficiency(
    load: float, plr: float, avg_degree: float, peak_power: float, slot_duration: float
) -> float:
    """Decoded users per slot per unit of average transmit energy."""
    return 2.0 * load * (1.0 - plr) / (avg_degree * peak_power * slot_duration)
