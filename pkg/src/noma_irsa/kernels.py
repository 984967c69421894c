"""Peeling-decode inner loop, the simulator's hot kernel.

The kernel keeps two counters per slot (residual replicas, residual strong
replicas) so resolvability is O(1) to test.  A slot releases its users when
it holds a single residual replica, or exactly two with distinct power
levels, in which case the strong one is captured first and the weak one
right after.  Decoding a user cancels all of its replicas.  Slots are swept
in the given order with immediate cancellation; a sweep with no progress is
a fixed point.

The same function body runs under numba @njit or interpreted, selected in
backend.py; `sic_peel` is the configured alias and `sic_peel_python` always
the interpreted one (kept for the benchmark and parity tests).
"""

import numpy as np

from .backend import jit_if_enabled


def _sic_peel(
    user_ptr,
    rep_slot,
    rep_strong,
    slot_ptr,
    srep_user,
    srep_strong,
    erased,
    slot_order,
    max_iters,
    n_slots,
    n_users,
):
    slot_total = np.zeros(n_slots, dtype=np.int64)
    slot_strong = np.zeros(n_slots, dtype=np.int64)
    for u in range(n_users):
        if not erased[u]:
            for r in range(user_ptr[u], user_ptr[u + 1]):
                s = rep_slot[r]
                slot_total[s] += 1
                slot_strong[s] += rep_strong[r]

    decoded = np.zeros(n_users, dtype=np.uint8)
    for _ in range(max_iters):
        progress = False
        for oi in range(n_slots):
            s = slot_order[oi]
            t = slot_total[s]
            if t == 1:
                for j in range(slot_ptr[s], slot_ptr[s + 1]):
                    u = srep_user[j]
                    if decoded[u] == 0 and not erased[u]:
                        decoded[u] = 1
                        for r in range(user_ptr[u], user_ptr[u + 1]):
                            s2 = rep_slot[r]
                            slot_total[s2] -= 1
                            slot_strong[s2] -= rep_strong[r]
                        progress = True
                        break
            elif t == 2 and slot_strong[s] == 1:
                u_strong = -1
                u_weak = -1
                for j in range(slot_ptr[s], slot_ptr[s + 1]):
                    u = srep_user[j]
                    if decoded[u] == 0 and not erased[u]:
                        if srep_strong[j] == 1:
                            u_strong = u
                        else:
                            u_weak = u
                # capture the strong replica, cancel, then the weak is alone
                decoded[u_strong] = 1
                for r in range(user_ptr[u_strong], user_ptr[u_strong + 1]):
                    s2 = rep_slot[r]
                    slot_total[s2] -= 1
                    slot_strong[s2] -= rep_strong[r]
                decoded[u_weak] = 1
                for r in range(user_ptr[u_weak], user_ptr[u_weak + 1]):
                    s2 = rep_slot[r]
                    slot_total[s2] -= 1
                    slot_strong[s2] -= rep_strong[r]
                progress = True
        if not progress:
            break
    return decoded


sic_peel = jit_if_enabled(_sic_peel)
sic_peel_python = _sic_peel
