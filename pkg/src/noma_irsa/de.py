"""Asymptotic decoding analysis via density evolution.

For frames growing without bound at fixed load, iterative cancellation is
tracked by two coupled probabilities: q_i, that a user is still unresolved
entering sweep i, and p_i, that a slot is still unresolved.  Starting from
q_0 = p_0 = 1 the recursion alternates

    q_i = sum_l  L_l * p_{i-1}^(l-1)
    p_i = 1 - exp(-r*q_i) * (1 + r*q_i / 2),    r = avg_degree*load*(1-eps)

where the p-update is the closed form of a Poisson mixture over slot
degrees: a slot of degree t resolves once all but one replica cancel, or
all but two cancel and those two carry distinct power levels (hence the
r*q/2 term).  slot_update_series keeps the explicit truncated mixture as an
independent cross-check of the closed form.

The converged failure probability is p_eps = sum_l L_l * p_final^l, and
[(1-eps)*p_eps + eps]^k lower-bounds the k-receiver system loss rate
(per-satellite failures are positively correlated, never independent).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dist import DegreeDistribution


@dataclass(frozen=True)
class DEResult:
    """Density-evolution trajectory and its converged failure probability."""

    q_trace: tuple[float, ...]
    p_trace: tuple[float, ...]
    p_eps: float
    iterations_run: int
    converged: bool

    def __post_init__(self):
        if len(self.q_trace) != self.iterations_run or len(self.p_trace) != self.iterations_run:
            raise ValueError("trace lengths must equal iterations_run")


def _effective_rate(load: float, erasure_prob: float, avg_degree: float) -> float:
    # mean replicas per slot among non-erased users
    return avg_degree * load * (1.0 - erasure_prob)


def slot_unresolved_closed(q: float, rate: float) -> float:
    """Closed-form slot update: 1 - exp(-rate*q) * (1 + rate*q/2)."""
    x = rate * q
    return 1.0 - math.exp(-x) * (1.0 + 0.5 * x)


def density_evolution(
    load: float,
    erasure_prob: float,
    dist: DegreeDistribution,
    max_iters: int = 100,
    tol: float = 0.0,
    perspective: str = "node",
) -> DEResult:
    """Run the fixed-point recursion and return traces plus p_eps.

    tol = 0 runs exactly max_iters sweeps; tol > 0 stops early once
    |p_i - p_{i-1}| < tol and marks the result converged.

    perspective picks the user-side update weights: "node" uses the
    replica-count probabilities L_l directly; "edge" uses the standard
    edge-perspective weights l*L_l/avg_degree.  The two coincide for a
    single-degree distribution such as x^2.
    """
    if load <= 0:
        raise ValueError(f"load must be > 0, got {load}")
    if not (0.0 <= erasure_prob <= 1.0):
        raise ValueError(f"erasure_prob out of [0,1]: {erasure_prob}")
    if max_iters < 1:
        raise ValueError(f"max_iters must be >= 1, got {max_iters}")
    if tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol}")
    if perspective not in ("node", "edge"):
        raise ValueError(f"perspective must be 'node' or 'edge', got {perspective!r}")

    degrees = dist.degrees()
    probs = dist.probs()
    if perspective == "edge":
        weights = degrees * probs / dist.avg_degree
    else:
        weights = probs
    rate = _effective_rate(load, erasure_prob, dist.avg_degree)

    q_trace: list[float] = []
    p_trace: list[float] = []
    p_prev = 1.0
    converged = False
    for _ in range(max_iters):
        q = float(np.sum(weights * p_prev ** (degrees - 1)))
        p = slot_unresolved_closed(q, rate)
        q_trace.append(q)
        p_trace.append(p)
        if tol > 0 and abs(p - p_prev) < tol:
            p_prev = p
            converged = True
            break
        p_prev = p

    p_eps = float(np.sum(probs * p_prev**degrees))
    return DEResult(
        q_trace=tuple(q_trace),
        p_trace=tuple(p_trace),
        p_eps=p_eps,
        iterations_run=len(p_trace),
        converged=converged,
    )


def slot_edge_pmf(t: int, load: float, erasure_prob: float, avg_degree: float) -> float:
    """Probability that an edge lands in a slot holding t replicas in total.

    Poisson with the effective per-slot rate, shifted by the edge itself:
    rate^(t-1)/(t-1)! * exp(-rate).
    """
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    rate = _effective_rate(load, erasure_prob, avg_degree)
    if rate == 0.0:
        return 1.0 if t == 1 else 0.0
    return math.exp((t - 1) * math.log(rate) - rate - math.lgamma(t))


def slot_update_series(
    q: float,
    load: float,
    erasure_prob: float,
    avg_degree: float,
    t_max: int = 200,
) -> float:
    """Truncated-series slot update; independent oracle for the closed form.

    Sums over slot degrees t the probability that a degree-t slot stays
    unresolved: 1 - (1-q)^(t-1) - (t-1)/2 * q * (1-q)^(t-2) for t >= 2 and
    exactly 0 for t = 1.  Written degree-explicitly so q = 1 needs no
    special-casing (the 1/(1-q) factoring has a removable singularity
    there).  t_max = 200 keeps the Poisson tail below 1e-12 for effective
    rates up to 10.
    """
    if not (0.0 <= q <= 1.0):
        raise ValueError(f"q out of [0,1]: {q}")
    if t_max < 1:
        raise ValueError(f"t_max must be >= 1, got {t_max}")
    rate = _effective_rate(load, erasure_prob, avg_degree)
    tau = math.exp(-rate)  # tau(1); recurrence tau(t+1) = tau(t) * rate / t
    total = 0.0
    for t in range(1, t_max + 1):
        if t >= 2:
            unresolved = 1.0 - (1.0 - q) ** (t - 1) - 0.5 * (t - 1) * q * (1.0 - q) ** (t - 2)
            total += tau * unresolved
        tau *= rate / t
    return total


def plr_bound(p_eps: float, erasure_prob: float, k: int) -> float:
    """k-receiver lower bound on system loss: [(1-eps)*p_eps + eps]^k."""
    if not (0.0 <= p_eps <= 1.0):
        raise ValueError(f"p_eps out of [0,1]: {p_eps}")
    if not (0.0 <= erasure_prob <= 1.0):
        raise ValueError(f"erasure_prob out of [0,1]: {erasure_prob}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return ((1.0 - erasure_prob) * p_eps + erasure_prob) ** k


def plr_bound_binomial(p_eps: float, erasure_prob: float, k: int) -> float:
    """Binomial-expansion form of plr_bound; equal up to float rounding."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return sum(
        math.comb(k, i)
        * ((1.0 - erasure_prob) * p_eps) ** (k - i)
        * erasure_prob**i
        for i in range(k + 1)
    )
