"""Kernel selection and high-level drivers for exhaustive scan checks.

The hot loops (word enumeration, ball search) live twice: compiled in
vfk._scan and in pure Python in vfk._scan_py, with identical signatures.
The compiled kernel is preferred; set VFK_PURE=1 to force the fallback.

Oracles are given behaviourally as (initial state, step, accept) over
hashable states; for exhaustive word enumeration they are first tabulated
into a finite DFA covering everything reachable within the search depth.
"""
from __future__ import annotations

import os
from array import array
from collections import deque
from dataclasses import dataclass

if os.environ.get("VFK_PURE"):
    from . import _scan_py as _impl
else:
    try:
        from . import _scan as _impl
    except ImportError:  # extension not built
        from . import _scan_py as _impl

KERNEL = _impl.kernel_kind()


@dataclass
class FlatTable:
    """Scan table flattened for the kernels (see _scan_py docstring)."""

    push_off: array
    push_flat: array
    next_rep: array
    partner: array
    m: int
    n_reps: int


def flatten(scan_table) -> FlatTable:
    m = len(scan_table.letters)
    off = [0]
    flat: list[int] = []
    nxt: list[int] = []
    for row in scan_table.entry:
        for push, rep in row:
            flat.extend(push)
            off.append(len(flat))
            nxt.append(rep)
    return FlatTable(
        push_off=array("i", off),
        push_flat=array("i", flat),
        next_rep=array("i", nxt),
        partner=array("i", scan_table.partner),
        m=m,
        n_reps=len(scan_table.reps),
    )


def _flat(p) -> FlatTable:
    cached = getattr(p, "_flat_table", None)
    if cached is None:
        cached = flatten(p._scan)
        p._flat_table = cached
    return cached


def scan_word(p, codes):
    """Kernel-backed scan; returns (prefix codes, rep index)."""
    t = _flat(p)
    stack, rep = _impl.scan(t.push_off, t.push_flat, t.next_rep, t.partner, codes)
    return tuple(stack), rep


@dataclass
class Oracle:
    """Behavioural word-problem oracle over the letter codes 0..m-1."""

    initial: object
    step: object  # (state, code) -> state
    accepts: object  # state -> bool


def tabulate_oracle(oracle: Oracle, m: int, depth: int):
    """Explore the oracle to the given depth and emit flat DFA arrays.

    States beyond the horizon are routed to a dead state that is never
    consulted by a depth-bounded search.
    """
    index = {oracle.initial: 0}
    states = [oracle.initial]
    level = {0: 0}
    nxt: dict[tuple[int, int], int] = {}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        if level[u] == depth:
            continue
        for c in range(m):
            t = oracle.step(states[u], c)
            v = index.get(t)
            if v is None:
                v = index[t] = len(states)
                states.append(t)
                level[v] = level[u] + 1
                queue.append(v)
            nxt[(u, c)] = v
    dead = len(states)
    o_next = array(
        "i",
        [nxt.get((u, c), dead) for u in range(len(states)) for c in range(m)]
        + [dead] * m,
    )
    o_acc = array("i", [1 if oracle.accepts(s) else 0 for s in states] + [0])
    return o_next, o_acc


def agree_on_all_words(p, oracle: Oracle, depth: int):
    """First word of length <= depth where the scan and the oracle disagree
    about representing the identity, or None.  Enumerates every word."""
    t = _flat(p)
    o_next, o_acc = tabulate_oracle(oracle, t.m, depth)
    witness = _impl.agree_words(
        t.push_off, t.push_flat, t.next_rep, t.partner, t.m, depth, o_next, o_acc
    )
    if witness is None:
        return None
    return tuple(p._scan.letters[c] for c in witness)


def agree_on_reachable(p, oracle: Oracle, depth: int):
    """Equivalent check via breadth-first search of reachable product states.

    A disagreement on some word of length <= depth exists iff some pair
    (scan state, oracle state) reachable in <= depth steps disagrees on
    acceptance; the search is over the product reachable set, which stays
    ball-sized instead of alphabet**depth.
    """
    t = _flat(p)
    start = ((b"", 0), oracle.initial)
    parent: dict = {start: None}
    queue = deque([(start, 0)])
    while queue:
        (scan_state, o_state), d = queue.popleft()
        stk, rep = scan_state
        scan_acc = not stk and rep == 0
        if scan_acc != bool(oracle.accepts(o_state)):
            word = []
            cur = (scan_state, o_state)
            while parent[cur] is not None:
                cur, c = parent[cur]
                word.append(c)
            return tuple(p._scan.letters[c] for c in reversed(word))
        if d == depth:
            continue
        for c in range(t.m):
            k = rep * t.m + c
            stack = list(stk)
            for i in range(t.push_off[k], t.push_off[k + 1]):
                dd = t.push_flat[i]
                if stack and stack[-1] == t.partner[dd]:
                    stack.pop()
                else:
                    stack.append(dd)
            child = ((bytes(stack), t.next_rep[k]), oracle.step(o_state, c))
            if child not in parent:
                parent[child] = ((scan_state, o_state), c)
                queue.append((child, d + 1))
    return None


def ball_states(p, radius: int, cap: int):
    """Kernel-backed BFS ball; returns (states, dist, edges) or None at cap."""
    t = _flat(p)
    return _impl.ball(
        t.push_off, t.push_flat, t.next_rep, t.partner, t.m, radius, cap
    )
