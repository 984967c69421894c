"""Benchmark the jitted SIC peeling kernel against the pure-numpy fallback.

Both paths run the same function body; the jitted one pays a one-time
compile cost which is excluded by a warmup call.

Usage: python benchmarks/bench_sic.py [--frames 200] [--slots 1000] [--load 0.8]
"""

import argparse
import time

import numpy as np

from noma_irsa import ScenarioConfig, generate_frame, parse_distribution
from noma_irsa.backend import numba_available
from noma_irsa.kernels import sic_peel, sic_peel_python


def run(kernel, frames, cfg):
    slot_order = np.arange(cfg.n_slots, dtype=np.int64)
    total = 0
    t0 = time.perf_counter()
    for f in frames:
        for j in range(cfg.n_satellites):
            decoded = kernel(
                f.user_ptr,
                f.rep_slot,
                f.rep_strong,
                f.slot_ptr,
                f.srep_user,
                f.srep_strong,
                f.erasure_masks[j],
                slot_order,
                cfg.max_sic_iters,
                f.n_slots,
                f.n_users,
            )
            total += int(decoded.sum())
    return time.perf_counter() - t0, total


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--frames", type=int, default=200)
    ap.add_argument("--slots", type=int, default=1000)
    ap.add_argument("--load", type=float, default=0.8)
    ap.add_argument("--epsilon", type=float, default=0.05)
    ap.add_argument("--satellites", type=int, default=2)
    ap.add_argument("--seed", type=int, default=1234)
    args = ap.parse_args()

    cfg = ScenarioConfig(
        n_slots=args.slots,
        load=args.load,
        epsilon=args.epsilon,
        n_satellites=args.satellites,
        dist=parse_distribution("0.5465x^2+0.1623x^3+0.2912x^8"),
        n_frames=args.frames,
        master_seed=args.seed,
    )
    frames = [generate_frame(cfg, i) for i in range(args.frames)]

    if sic_peel is sic_peel_python:
        print("jitted backend not active (set NOMA_IRSA_NUMBA=1 and install numba)")
        if not numba_available():
            print("numba is not importable in this environment")
        t_py, total_py = run(sic_peel_python, frames, cfg)
        print(f"numpy fallback: {t_py:.3f}s  decoded={total_py}")
        return

    run(sic_peel, frames[:2], cfg)  # warmup, pays the compile
    t_jit, total_jit = run(sic_peel, frames, cfg)
    t_py, total_py = run(sic_peel_python, frames, cfg)
    assert total_jit == total_py, "backends disagree"
    print(f"frames={args.frames} slots={args.slots} load={args.load} "
          f"satellites={args.satellites}")
    print(f"numba kernel:   {t_jit:.3f}s")
    print(f"numpy fallback: {t_py:.3f}s")
    print(f"speedup:        {t_py / t_jit:.1f}x  (decoded={total_jit})")


if __name__ == "__main__":
    main()
