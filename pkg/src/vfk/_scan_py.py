"""Pure-Python scan kernel.

Reference implementation of the hot loops; vfk._scan is the compiled twin
with the same signatures.  All functions work on a flattened transition
table: for state ``rep`` reading letter code ``c`` the letters
``push_flat[push_off[rep*m+c] : push_off[rep*m+c+1]]`` are pushed onto the
freely reduced prefix (cancelling against ``partner``) and the state becomes
``next_rep[rep*m+c]``.  Acceptance means empty prefix in state 0.
"""
from __future__ import annotations


def kernel_kind():
    return "pure"


def scan(push_off, push_flat, next_rep, partner, codes):
    """Run the left-to-right scan; return (prefix letter codes, state)."""
    m = len(partner)
    stack = []
    rep = 0
    for c in codes:
        k = rep * m + c
        for i in range(push_off[k], push_off[k + 1]):
            d = push_flat[i]
            if stack and stack[-1] == partner[d]:
                stack.pop()
            else:
                stack.append(d)
        rep = next_rep[k]
    return list(stack), rep


def agree_words(push_off, push_flat, next_rep, partner, m, depth, o_next, o_acc):
    """Compare scan acceptance against a DFA on every word of length <= depth.

    The oracle DFA starts in state 0 with transitions o_next[state*m + c] and
    acceptance flags o_acc.  Returns the first disagreeing word in length-then
    -lexicographic DFS order as a list of letter codes, or None.
    """
    stack = []
    witness = None

    def rec(rep, ostate, remaining, word):
        nonlocal witness
        if (not stack and rep == 0) != bool(o_acc[ostate]):
            witness = list(word)
            return True
        if not remaining:
            return False
        for c in range(m):
            k = rep * m + c
            undo = []
            for i in range(push_off[k], push_off[k + 1]):
                d = push_flat[i]
                if stack and stack[-1] == partner[d]:
                    undo.append(stack.pop())
                else:
                    stack.append(d)
                    undo.append(-1)
            word.append(c)
            if rec(next_rep[k], o_next[ostate * m + c], remaining - 1, word):
                return True
            word.pop()
            for u in reversed(undo):
                if u < 0:
                    stack.pop()
                else:
                    stack.append(u)
        return False

    rec(0, 0, depth, [])
    return witness


def ball(push_off, push_flat, next_rep, partner, m, radius, cap):
    """Breadth-first ball of the scan graph from the identity.

    Returns (states, dist, edges) with states a list of (prefix bytes, rep),
    dist the BFS distance per state, and edges all triples (u, c, v) whose
    endpoints both lie in the ball.  Returns None once more than cap states
    are discovered.
    """
    start = (b"", 0)
    states = [start]
    dist = [0]
    index = {start: 0}
    frontier = [0]
    for r in range(1, radius + 1):
        nxt = []
        for u in frontier:
            stk, rep = states[u]
            for c in range(m):
                k = rep * m + c
                stack = list(stk)
                for i in range(push_off[k], push_off[k + 1]):
                    d = push_flat[i]
                    if stack and stack[-1] == partner[d]:
                        stack.pop()
                    else:
                        stack.append(d)
                key = (bytes(stack), next_rep[k])
                if key not in index:
                    if len(states) >= cap:
                        return None
                    index[key] = len(states)
                    states.append(key)
                    dist.append(r)
                    nxt.append(index[key])
        frontier = nxt
    edges = []
    for u, (stk, rep) in enumerate(states):
        for c in range(m):
            k = rep * m + c
            stack = list(stk)
            for i in range(push_off[k], push_off[k + 1]):
                d = push_flat[i]
                if stack and stack[-1] == partner[d]:
                    stack.pop()
                else:
                    stack.append(d)
            v = index.get((bytes(stack), next_rep[k]))
            if v is not None:
                edges.append((u, c, v))
    return states, dist, edges
