"""Per-satellite iterative decoding with the two-level capture rule.

SINR is never evaluated numerically here.  Under the power design of
power.py the threshold test collapses to a combinatorial rule on residual
slot contents: a lone replica is decodable, a strong+weak pair is decodable
(strong first), anything else is not.  `verify_capture` documents the
arithmetic behind that equivalence.

`sic_decode` drives the array kernel; `sic_decode_reference` is a slow
list-of-multisets implementation kept deliberately independent of the
kernel as a correctness oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .frames import FrameRealization
from .kernels import sic_peel
from .power import Power


def slot_resolvable(residual: Sequence[tuple[int, int]]) -> list[int]:
    """Users decodable right now from one slot's residual replicas.

    residual holds (user, power-label) pairs.  Returns the single user of a
    singleton slot, [strong, weak] for a two-replica mixed-power slot, and
    [] otherwise (empty slot, equal-power pair, or 3+ replicas).
    """
    if len(residual) == 1:
        return [residual[0][0]]
    if len(residual) == 2:
        (u0, p0), (u1, p1) = residual
        if p0 == Power.STRONG and p1 == Power.WEAK:
            return [u0, u1]
        if p0 == Power.WEAK and p1 == Power.STRONG:
            return [u1, u0]
    return []


def sic_decode(
    frame: FrameRealization,
    satellite_index: int,
    max_iters: int = 100,
    slot_order: Optional[np.ndarray] = None,
) -> set[int]:
    """Decoded user ids at one satellite after iterative cancellation.

    slot_order overrides the per-sweep slot processing order (used to
    exercise order-independence); default is natural order.
    """
    if not (0 <= satellite_index < frame.n_satellites):
        raise IndexError(f"satellite_index {satellite_index} out of range")
    decoded = decode_flags(frame, satellite_index, max_iters, slot_order)
    return set(int(u) for u in np.nonzero(decoded)[0])


def decode_flags(
    frame: FrameRealization,
    satellite_index: int,
    max_iters: int = 100,
    slot_order: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Array variant of sic_decode: uint8 flags indexed by user id."""
    if slot_order is None:
        slot_order = np.arange(frame.n_slots, dtype=np.int64)
    else:
        slot_order = np.asarray(slot_order, dtype=np.int64)
        if sorted(slot_order.tolist()) != list(range(frame.n_slots)):
            raise ValueError("slot_order must be a permutation of range(n_slots)")
    return sic_peel(
        frame.user_ptr,
        frame.rep_slot,
        frame.rep_strong,
        frame.slot_ptr,
        frame.srep_user,
        frame.srep_strong,
        frame.erasure_masks[satellite_index],
        slot_order,
        max_iters,
        frame.n_slots,
        frame.n_users,
    )


@dataclass
class SatelliteView:
    """One satellite's working view of a frame during decoding.

    Invariants: decoded is a subset of surviving_users; a decoded user has
    no residual replicas; an undecoded survivor's residual replicas are
    exactly its original slots.
    """

    slot_contents: list[list[tuple[int, int]]]
    surviving_users: set[int]
    decoded: set[int] = field(default_factory=set)

    def residual_slots_of(self, user: int) -> list[int]:
        return [s for s, content in enumerate(self.slot_contents) if any(u == user for u, _ in content)]


def build_view(frame: FrameRealization, satellite_index: int) -> SatelliteView:
    """Erasure-filtered starting view for one satellite."""
    erased = frame.erasure_masks[satellite_index]
    slot_contents: list[list[tuple[int, int]]] = [[] for _ in range(frame.n_slots)]
    surviving = set()
    for u in range(frame.n_users):
        if erased[u]:
            continue
        surviving.add(u)
        for r in range(frame.user_ptr[u], frame.user_ptr[u + 1]):
            slot_contents[frame.rep_slot[r]].append((u, int(frame.rep_strong[r])))
    return SatelliteView(slot_contents=slot_contents, surviving_users=surviving)


def run_view_passes(view: SatelliteView, max_iters: int, slot_order: Iterable[int]) -> SatelliteView:
    """Sweep slots until a pass makes no progress or max_iters is hit."""
    order = list(slot_order)
    for _ in range(max_iters):
        progress = False
        for s in order:
            for u in slot_resolvable(view.slot_contents[s]):
                view.decoded.add(u)
                for s2 in range(len(view.slot_contents)):
                    view.slot_contents[s2] = [
                        (v, p) for v, p in view.slot_contents[s2] if v != u
                    ]
                progress = True
        if not progress:
            break
    return view


def sic_decode_reference(
    frame: FrameRealization,
    satellite_index: int,
    max_iters: int = 100,
    slot_order: Optional[Sequence[int]] = None,
) -> set[int]:
    """Oracle decoder over explicit slot multisets; mirrors sic_decode."""
    view = build_view(frame, satellite_index)
    order = range(frame.n_slots) if slot_order is None else slot_order
    return run_view_passes(view, max_iters, order).decoded
