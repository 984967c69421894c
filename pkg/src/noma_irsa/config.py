"""JSON scenario configs for the command line.

The schema is flat on purpose: one file describes one sweep.  Unknown keys
are rejected so typos fail loudly instead of silently running defaults.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .dist import DegreeDistribution, DistributionError, parse_distribution
from .frames import ScenarioError
from .harness import ANALYZE, SIMULATE, ScenarioBase, SweepError, SweepSpec
from .power import PowerConfigError, build_power_config


class ConfigError(ValueError):
    pass


_REQUIRED = {"n_slots", "epsilon", "dist", "loads", "k_values", "n_frames"}
_OPTIONAL = {"modes", "master_seed", "peak_power", "slot_duration", "max_sic_iters"}


def _require(data: dict, key: str, kinds, pred=None, desc: str = "") -> Any:
    val = data[key]
    if isinstance(val, bool) or not isinstance(val, kinds):
        raise ConfigError(f"{key}: expected {desc or kinds}, got {val!r}")
    if pred is not None and not pred(val):
        raise ConfigError(f"{key}: invalid value {val!r}" + (f" ({desc})" if desc else ""))
    return val


def _parse_dist(raw: Union[str, list]) -> DegreeDistribution:
    try:
        if isinstance(raw, str):
            return parse_distribution(raw)
        if isinstance(raw, list):
            terms = []
            for item in raw:
                if not (isinstance(item, (list, tuple)) and len(item) == 2):
                    raise ConfigError(f"dist: each term must be a [degree, prob] pair, got {item!r}")
                terms.append((int(item[0]), float(item[1])))
            return DegreeDistribution.from_terms(terms)
    except DistributionError as exc:
        raise ConfigError(f"dist: {exc}") from exc
    raise ConfigError(f"dist: expected a polynomial string or [[degree, prob], ...], got {raw!r}")


def parse_config(data: dict, seed_override: Union[int, None] = None) -> SweepSpec:
    if not isinstance(data, dict):
        raise ConfigError(f"config root must be an object, got {type(data).__name__}")
    unknown = set(data) - _REQUIRED - _OPTIONAL
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    missing = _REQUIRED - set(data)
    if missing:
        raise ConfigError(f"missing config keys: {', '.join(sorted(missing))}")

    n_slots = _require(data, "n_slots", int, lambda v: v >= 1, "integer >= 1")
    epsilon = float(_require(data, "epsilon", (int, float), desc="number in [0, 1]"))
    if not 0.0 <= epsilon <= 1.0:
        raise ConfigError(f"epsilon out of [0,1]: {epsilon}")
    dist = _parse_dist(data["dist"])
    loads_raw = _require(data, "loads", list, lambda v: len(v) > 0, "non-empty list of numbers")
    if not all(isinstance(g, (int, float)) and not isinstance(g, bool) for g in loads_raw):
        raise ConfigError(f"loads: expected numbers, got {loads_raw!r}")
    loads = tuple(float(g) for g in loads_raw)
    ks_raw = _require(data, "k_values", list, lambda v: len(v) > 0, "non-empty list of integers")
    if not all(isinstance(k, int) and not isinstance(k, bool) for k in ks_raw):
        raise ConfigError(f"k_values: expected integers, got {ks_raw!r}")
    k_values = tuple(ks_raw)
    n_frames = _require(data, "n_frames", int, lambda v: v >= 0, "integer >= 0")

    modes_raw = data.get("modes", [SIMULATE, ANALYZE])
    if not (isinstance(modes_raw, list) and modes_raw):
        raise ConfigError(f"modes: expected a non-empty list, got {modes_raw!r}")
    for mode in modes_raw:
        if mode not in (SIMULATE, ANALYZE):
            raise ConfigError(f"modes: unknown mode {mode!r}")
    modes = tuple(dict.fromkeys(modes_raw))

    master_seed = data.get("master_seed")
    if master_seed is not None and (isinstance(master_seed, bool) or not isinstance(master_seed, int)):
        raise ConfigError(f"master_seed: expected an integer, got {master_seed!r}")
    if seed_override is not None:
        master_seed = seed_override
    peak_power = data.get("peak_power", 1.0)
    if isinstance(peak_power, bool) or not isinstance(peak_power, (int, float)):
        raise ConfigError(f"peak_power: expected a number, got {peak_power!r}")
    slot_duration = data.get("slot_duration", 1.0)
    if isinstance(slot_duration, bool) or not isinstance(slot_duration, (int, float)):
        raise ConfigError(f"slot_duration: expected a number, got {slot_duration!r}")
    max_sic_iters = data.get("max_sic_iters", 100)
    if isinstance(max_sic_iters, bool) or not isinstance(max_sic_iters, int):
        raise ConfigError(f"max_sic_iters: expected an integer, got {max_sic_iters!r}")

    try:
        power = build_power_config(float(peak_power))
    except PowerConfigError as exc:
        raise ConfigError(f"peak_power: {exc}") from exc

    try:
        base = ScenarioBase(
            n_slots=n_slots,
            epsilon=epsilon,
            dist=dist,
            power=power,
            slot_duration=float(slot_duration),
            max_sic_iters=max_sic_iters,
            n_frames=n_frames,
            master_seed=master_seed,
        )
        spec = SweepSpec(base=base, loads=loads, modes=modes, k_values=k_values)
        for g in loads:
            for k in k_values:
                spec.scenario(g, k)
    except (ScenarioError, SweepError) as exc:
        raise ConfigError(str(exc)) from exc
    return spec


def load_config(path: Union[str, Path], seed_override: Union[int, None] = None) -> SweepSpec:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return parse_config(data, seed_override=seed_override)
