"""MAC-frame generation: replica placement, power labels, per-satellite erasures.

A frame realization is a pure function of (master_seed, frame_index).  The
per-frame seed is derived with the splitmix64 finalizer (documented below),
the per-frame stream is PCG64, and random values are consumed in a fixed
order: replica counts, slot tuples, power labels, erasure masks.  Frames can
therefore be generated concurrently and in any order with identical results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .dist import DegreeDistribution, format_distribution, sample_degrees
from .power import NomaPowerConfig, Power, build_power_config

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """splitmix64 finalizer: xor-shift / multiply avalanche of a 64-bit word."""
    z = (x + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def frame_seed(master_seed: int, frame_index: int) -> int:
    """Per-frame seed: splitmix64 over master_seed advanced by the frame index."""
    return splitmix64((master_seed + (frame_index + 1) * _GOLDEN) & _MASK64)


class UserTx(NamedTuple):
    """One user's transmission: distinct slot indices and per-replica labels."""

    slots: tuple[int, ...]
    powers: tuple[Power, ...]


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything one Monte Carlo point needs.

    n_users is round(load * n_slots), ties to even (Python round).
    """

    n_slots: int
    load: float
    epsilon: float
    n_satellites: int
    dist: DegreeDistribution
    power: NomaPowerConfig = field(default_factory=lambda: build_power_config(1.0))
    slot_duration: float = 1.0
    max_sic_iters: int = 100
    n_frames: int = 1
    master_seed: int = 0

    def __post_init__(self):
        if self.n_slots < 1:
            raise ScenarioError(f"n_slots must be >= 1, got {self.n_slots}")
        if self.load <= 0:
            raise ScenarioError(f"load must be > 0, got {self.load}")
        if not (0.0 <= self.epsilon <= 1.0):
            raise ScenarioError(f"epsilon out of [0,1]: {self.epsilon}")
        if self.n_satellites < 1:
            raise ScenarioError(f"n_satellites must be >= 1, got {self.n_satellites}")
        if self.dist.max_degree > self.n_slots:
            raise ScenarioError(
                f"max degree {self.dist.max_degree} exceeds n_slots {self.n_slots}: "
                "replicas cannot occupy distinct slots"
            )
        if self.max_sic_iters < 1:
            raise ScenarioError(f"max_sic_iters must be >= 1, got {self.max_sic_iters}")
        if self.n_frames < 0:
            raise ScenarioError(f"n_frames must be >= 0, got {self.n_frames}")
        if self.slot_duration <= 0:
            raise ScenarioError(f"slot_duration must be > 0, got {self.slot_duration}")
        if not (0 <= self.master_seed <= _MASK64):
            raise ScenarioError("master_seed must fit in 64 bits")

    @property
    def n_users(self) -> int:
        return int(round(self.load * self.n_slots))

    @property
    def dist_id(self) -> str:
        return format_distribution(self.dist)


@dataclass(frozen=True)
class FrameRealization:
    """One frame in CSR form, immutable once built.

    user_ptr/rep_slot/rep_strong list each user's replicas contiguously;
    slot_ptr/srep_user/srep_strong index the same replicas by slot.
    erasure_masks[j, u] is True when user u's whole transmission is lost
    at satellite j.
    """

    n_slots: int
    n_users: int
    user_ptr: np.ndarray
    rep_slot: np.ndarray
    rep_strong: np.ndarray
    slot_ptr: np.ndarray
    srep_user: np.ndarray
    srep_strong: np.ndarray
    erasure_masks: np.ndarray

    @property
    def n_satellites(self) -> int:
        return self.erasure_masks.shape[0]

    def user_tx(self, user: int) -> UserTx:
        lo, hi = self.user_ptr[user], self.user_ptr[user + 1]
        return UserTx(
            slots=tuple(int(s) for s in self.rep_slot[lo:hi]),
            powers=tuple(Power(int(p)) for p in self.rep_strong[lo:hi]),
        )

    @property
    def users(self) -> list[UserTx]:
        return [self.user_tx(u) for u in range(self.n_users)]


def _draw_distinct_slot_tuples(
    rng: np.random.Generator, degrees: np.ndarray, n_slots: int
) -> np.ndarray:
    """Uniform distinct-slot tuples via whole-tuple rejection.

    Every replica position is drawn iid uniform over slots; any user whose
    tuple contains a repeat has the entire tuple redrawn next round, which
    keeps the accepted tuple uniform over ordered distinct tuples.  Redraws
    happen in flat array order, so consumption of the stream is fixed.
    """
    total = int(degrees.sum())
    owner = np.repeat(np.arange(degrees.size), degrees)
    flat = rng.integers(0, n_slots, size=total, dtype=np.int64)
    while True:
        order = np.lexsort((flat, owner))
        same_owner = owner[order][1:] == owner[order][:-1]
        same_slot = flat[order][1:] == flat[order][:-1]
        clash_users = np.unique(owner[order][1:][same_owner & same_slot])
        if clash_users.size == 0:
            return flat
        mask = np.isin(owner, clash_users)
        flat[mask] = rng.integers(0, n_slots, size=int(mask.sum()), dtype=np.int64)


def generate_frame(config: ScenarioConfig, frame_index: int) -> FrameRealization:
    """Realize frame frame_index of the scenario.

    Each user draws its replica count from the degree distribution, places
    the replicas in distinct uniformly random slots, labels each replica
    weak or strong with probability 1/2, and is erased independently per
    satellite with probability epsilon.
    """
    if frame_index < 0:
        raise ScenarioError(f"frame_index must be >= 0, got {frame_index}")
    rng = np.random.Generator(np.random.PCG64(frame_seed(config.master_seed, frame_index)))
    m = config.n_users
    n = config.n_slots
    k = config.n_satellites

    degrees = sample_degrees(config.dist, rng, m) if m else np.zeros(0, dtype=np.int64)
    user_ptr = np.zeros(m + 1, dtype=np.int64)
    np.cumsum(degrees, out=user_ptr[1:])
    rep_slot = _draw_distinct_slot_tuples(rng, degrees, n)
    rep_strong = rng.integers(0, 2, size=rep_slot.size, dtype=np.int64).astype(np.uint8)
    erasure_masks = rng.random((k, m)) < config.epsilon

    # slot-major view of the same replicas
    owner = np.repeat(np.arange(m, dtype=np.int64), degrees)
    order = np.argsort(rep_slot, kind="stable")
    slot_ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(rep_slot, minlength=n), out=slot_ptr[1:])

    frame = FrameRealization(
        n_slots=n,
        n_users=m,
        user_ptr=user_ptr,
        rep_slot=rep_slot,
        rep_strong=rep_strong,
        slot_ptr=slot_ptr,
        srep_user=owner[order],
        srep_strong=rep_strong[order],
        erasure_masks=erasure_masks,
    )
    for arr in (
        frame.user_ptr,
        frame.rep_slot,
        frame.rep_strong,
        frame.slot_ptr,
        frame.srep_user,
        frame.srep_strong,
        frame.erasure_masks,
    ):
        arr.setflags(write=False)
    return frame
