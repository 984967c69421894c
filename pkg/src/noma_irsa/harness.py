"""Monte Carlo sweep controller.

Frames are the unit of parallelism: each frame is a pure function of
(master_seed, frame_index) and union counts land in a preallocated slot
indexed by frame, so results are identical for any worker count.  The
analytical companion value for every point comes from density evolution at
the same (load, epsilon, k).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .de import density_evolution, plr_bound
from .dist import DegreeDistribution, format_distribution
from .frames import ScenarioConfig, generate_frame, splitmix64
from .kernels import sic_peel
from .metrics import bootstrap_plr_ci, energy_efficiency, throughput, wilson_interval
from .power import NomaPowerConfig, build_power_config

SIMULATE = "simulate"
ANALYZE = "analyze"

DE_MAX_ITERS = 100

_BOOTSTRAP_SALT = 0x626F6F7473747261  # "bootstra"


class SweepError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioBase:
    """Sweep-invariant scenario parameters (everything but load and k)."""

    n_slots: int
    epsilon: float
    dist: DegreeDistribution
    power: NomaPowerConfig
    slot_duration: float = 1.0
    max_sic_iters: int = 100
    n_frames: int = 0
    master_seed: Optional[int] = None


@dataclass(frozen=True)
class SweepSpec:
    base: ScenarioBase
    loads: tuple[float, ...]
    modes: tuple[str, ...]
    k_values: tuple[int, ...]

    def __post_init__(self):
        if not self.loads:
            raise SweepError("loads must be non-empty")
        if any(g <= 0 for g in self.loads):
            raise SweepError("loads must all be > 0")
        if list(self.loads) != sorted(set(self.loads)):
            raise SweepError("loads must be strictly increasing")
        if not self.k_values or any(k < 1 for k in self.k_values):
            raise SweepError("k_values must be non-empty with k >= 1")
        if not self.modes or any(m not in (SIMULATE, ANALYZE) for m in self.modes):
            raise SweepError(f"modes must be a non-empty subset of {{{SIMULATE}, {ANALYZE}}}")
        if SIMULATE in self.modes:
            if self.base.master_seed is None:
                raise SweepError("simulate mode requires a master seed")
            if self.base.n_frames < 1:
                raise SweepError("simulate mode requires n_frames >= 1")

    def scenario(self, load: float, k: int) -> ScenarioConfig:
        b = self.base
        return ScenarioConfig(
            n_slots=b.n_slots,
            load=load,
            epsilon=b.epsilon,
            n_satellites=k,
            dist=b.dist,
            power=b.power,
            slot_duration=b.slot_duration,
            max_sic_iters=b.max_sic_iters,
            n_frames=b.n_frames,
            master_seed=b.master_seed if b.master_seed is not None else 0,
        )


@dataclass(frozen=True)
class MetricsRecord:
    """One sweep point; field names match the CSV columns."""

    g: float
    k: int
    epsilon: float
    n: int
    dist: str
    frames: int
    users_total: int
    users_decoded: int
    plr: float
    plr_ci_low: float
    plr_ci_high: float
    plr_bound: float
    p_eps: float
    throughput: float
    eta: float

    @property
    def mode(self) -> str:
        return ANALYZE if self.frames == 0 else SIMULATE

    def sort_key(self) -> tuple:
        return (self.g, self.k, self.mode)


@dataclass(frozen=True)
class PointResult:
    record: MetricsRecord
    unions_per_frame: np.ndarray
    plr_boot_ci: Optional[tuple[float, float]]


def _decode_frame_union(config: ScenarioConfig, frame_index: int) -> int:
    frame = generate_frame(config, frame_index)
    slot_order = np.arange(config.n_slots, dtype=np.int64)
    union = np.zeros(config.n_users, dtype=bool)
    for j in range(config.n_satellites):
        decoded = sic_peel(
            frame.user_ptr,
            frame.rep_slot,
            frame.rep_strong,
            frame.slot_ptr,
            frame.srep_user,
            frame.srep_strong,
            frame.erasure_masks[j],
            slot_order,
            config.max_sic_iters,
            frame.n_slots,
            frame.n_users,
        )
        union |= decoded.astype(bool)
    return int(union.sum())


def _analysis_for(config: ScenarioConfig, de_perspective: str) -> tuple[float, float]:
    res = density_evolution(
        config.load,
        config.epsilon,
        config.dist,
        max_iters=DE_MAX_ITERS,
        tol=0.0,
        perspective=de_perspective,
    )
    return res.p_eps, plr_bound(res.p_eps, config.epsilon, config.n_satellites)


def run_point_detailed(
    config: ScenarioConfig,
    threads: int = 1,
    de_perspective: str = "node",
    n_boot: int = 1000,
) -> PointResult:
    """Simulate all frames of one (load, k) point and attach the DE bound."""
    if config.n_frames < 1:
        raise SweepError("run_point needs n_frames >= 1")
    m = config.n_users
    unions = np.zeros(config.n_frames, dtype=np.int64)

    def work(lo: int, hi: int):
        for i in range(lo, hi):
            unions[i] = _decode_frame_union(config, i)

    if threads <= 1:
        work(0, config.n_frames)
    else:
        step = math.ceil(config.n_frames / threads)
        bounds = [(lo, min(lo + step, config.n_frames)) for lo in range(0, config.n_frames, step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for f in [pool.submit(work, lo, hi) for lo, hi in bounds]:
                f.result()

    users_total = m * config.n_frames
    users_decoded = int(unions.sum())
    if users_total > 0:
        plr = (users_total - users_decoded) / users_total
        ci_low, ci_high = wilson_interval(users_total - users_decoded, users_total)
        boot = bootstrap_plr_ci(
            [m] * config.n_frames,
            unions,
            n_boot=n_boot,
            seed=splitmix64(config.master_seed ^ _BOOTSTRAP_SALT),
        )
    else:
        plr, ci_low, ci_high = 0.0, 0.0, 0.0
        boot = None
    p_eps, bound = _analysis_for(config, de_perspective)

    record = MetricsRecord(
        g=config.load,
        k=config.n_satellites,
        epsilon=config.epsilon,
        n=config.n_slots,
        dist=config.dist_id,
        frames=config.n_frames,
        users_total=users_total,
        users_decoded=users_decoded,
        plr=plr,
        plr_ci_low=ci_low,
        plr_ci_high=ci_high,
        plr_bound=bound,
        p_eps=p_eps,
        throughput=throughput(config.load, plr),
        eta=energy_efficiency(
            config.load,
            plr,
            config.dist.avg_degree,
            config.power.peak_power,
            config.slot_duration,
        ),
    )
    return PointResult(record=record, unions_per_frame=unions, plr_boot_ci=boot)


def run_point(config: ScenarioConfig, threads: int = 1, de_perspective: str = "node") -> MetricsRecord:
    return run_point_detailed(config, threads=threads, de_perspective=de_perspective).record


def analyze_point(config: ScenarioConfig, de_perspective: str = "node") -> MetricsRecord:
    """Asymptotic record: the k-receiver bound stands in for the loss rate.

    For k >= 2 the bound is a lower bound on the true system loss, not an
    estimate; rows are marked by frames = 0.
    """
    p_eps, bound = _analysis_for(config, de_perspective)
    return MetricsRecord(
        g=config.load,
        k=config.n_satellites,
        epsilon=config.epsilon,
        n=config.n_slots,
        dist=config.dist_id,
        frames=0,
        users_total=0,
        users_decoded=0,
        plr=bound,
        plr_ci_low=bound,
        plr_ci_high=bound,
        plr_bound=bound,
        p_eps=p_eps,
        throughput=throughput(config.load, bound),
        eta=energy_efficiency(
            config.load,
            bound,
            config.dist.avg_degree,
            config.power.peak_power,
            config.slot_duration,
        ),
    )


def run_sweep_detailed(
    spec: SweepSpec, threads: int = 1, de_perspective: str = "node"
) -> tuple[list[MetricsRecord], list[PointResult]]:
    """One record per (load, k, mode), sorted by load, then k, then mode."""
    records: list[MetricsRecord] = []
    details: list[PointResult] = []
    for g in spec.loads:
        for k in spec.k_values:
            if ANALYZE in spec.modes:
                records.append(analyze_point(spec.scenario(g, k), de_perspective))
            if SIMULATE in spec.modes:
                pr = run_point_detailed(spec.scenario(g, k), threads, de_perspective)
                records.append(pr.record)
                details.append(pr)
    records.sort(key=MetricsRecord.sort_key)
    return records, details


def run_sweep(spec: SweepSpec, threads: int = 1, de_perspective: str = "node") -> list[MetricsRecord]:
    return run_sweep_detailed(spec, threads=threads, de_perspective=de_perspective)[0]
