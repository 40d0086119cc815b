"""Pushdown automata: products, emptiness, and word-problem PDAs.

Conventions: acceptance is by final state only; the stack starts as the
single bottom marker; a transition (state, letter-or-None, top) -> (state',
push) pops the top and pushes the word `push` with push[0] ending up as the
new top.  The bottom marker is never net-popped by ordinary transitions.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .nfa import Nfa, chain_nfa, eps_closure, letter_step


class AlphabetMismatch(Exception):
    pass


@dataclass
class Pda:
    states: tuple
    input_alphabet: tuple
    stack_alphabet: tuple
    bottom: object
    transitions: dict  # (state, letter_or_None, top) -> frozenset {(dst, push)}
    initial: object
    finals: frozenset
    deterministic: bool = field(default=False, compare=False)

    def moves(self, state, letter, top):
        return self.transitions.get((state, letter, top), frozenset())

    def all_transitions(self):
        for (src, letter, top), arrivals in sorted(
            self.transitions.items(), key=lambda kv: str(kv[0])
        ):
            for dst, push in sorted(arrivals, key=str):
                yield src, letter, top, dst, push


def make_pda(states, input_alphabet, stack_alphabet, bottom, transitions,
             initial, finals, deterministic=False) -> Pda:
    states = tuple(states)
    declared = set(states)
    stack = set(stack_alphabet)
    letters = set(input_alphabet)
    if bottom not in stack:
        raise ValueError("bottom marker must be a stack symbol")
    table: dict = {}
    for src, letter, top, dst, push in transitions:
        if src not in declared or dst not in declared:
            raise ValueError(f"undeclared state in {(src, letter, top)}")
        if letter is not None and letter not in letters:
            raise ValueError(f"undeclared input letter {letter!r}")
        if top not in stack or any(s not in stack for s in push):
            raise ValueError(f"undeclared stack symbol in {(src, letter, top)}")
        table.setdefault((src, letter, top), set()).add((dst, tuple(push)))
    if deterministic:
        for (src, letter, top), arrivals in table.items():
            if len(arrivals) > 1:
                raise ValueError(f"nondeterministic fan-out at {(src, letter, top)}")
            if letter is not None and (src, None, top) in table:
                raise ValueError(f"input and epsilon moves clash at {(src, top)}")
    return Pda(
        states,
        tuple(input_alphabet),
        tuple(stack_alphabet),
        bottom,
        {k: frozenset(v) for k, v in table.items()},
        initial,
        frozenset(finals),
        deterministic,
    )


def _transition_list(p: Pda):
    return list(p.all_transitions())


def normalize_pda(p: Pda) -> Pda:
    """Split pushes longer than two through fresh intermediate states."""
    if all(len(push) <= 2 for _, _, _, _, push in p.all_transitions()):
        return p
    states = list(p.states)
    trans = []
    for idx, (src, letter, top, dst, push) in enumerate(p.all_transitions()):
        if len(push) <= 2:
            trans.append((src, letter, top, dst, push))
            continue
        # push bottom-most symbol first, then one more per epsilon move
        hops = [("push", idx, i) for i in range(len(push) - 1)]
        states.extend(hops)
        chain = [src] + hops + [dst]
        trans.append((src, letter, top, chain[1], push[-1:]))
        for i in range(len(push) - 1):
            sym = push[-(i + 1)]
            new_sym = push[-(i + 2)]
            trans.append((chain[i + 1], None, sym, chain[i + 2], (new_sym, sym)))
    return make_pda(
        states, p.input_alphabet, p.stack_alphabet, p.bottom, trans,
        p.initial, p.finals,
    )


def simulate_pda(p: Pda, w, max_stack=None, max_steps=500_000):
    """Direct bounded simulation (cross-check tool; pda_accepts is exact).

    Returns True/False when the search stayed within the stack-height and
    step budgets, None when a budget was hit without finding an accepting
    run (the answer is then unknown).
    """
    w = tuple(w)
    if max_stack is None:
        max_stack = 6 * len(w) + 8
    budget = [max_steps]
    clipped = [False]

    def closure(configs):
        seen = set(configs)
        todo = list(configs)
        while todo:
            state, stack = todo.pop()
            if not stack:
                continue
            for dst, push in p.moves(state, None, stack[0]):
                nxt = (dst, push + stack[1:])
                if len(nxt[1]) > max_stack:
                    clipped[0] = True
                    continue
                if nxt not in seen:
                    budget[0] -= 1
                    if budget[0] < 0:
                        clipped[0] = True
                        return seen
                    seen.add(nxt)
                    todo.append(nxt)
        return seen

    configs = closure({(p.initial, (p.bottom,))})
    for a in w:
        step = set()
        for state, stack in configs:
            if not stack:
                continue
            for dst, push in p.moves(state, a, stack[0]):
                nxt = (dst, push + stack[1:])
                if len(nxt[1]) > max_stack:
                    clipped[0] = True
                else:
                    step.add(nxt)
        configs = closure(step)
        if not configs:
            break
    if any(state in p.finals for state, _ in configs):
        return True
    return None if clipped[0] else False


def grammar_to_pda(g) -> Pda:
    """Standard top-down construction: expand variables, match terminals."""
    bottom = "#"
    while bottom in g.variables or bottom in g.terminals:
        bottom += "#"
    states = ["q0", "loop", "acc"]
    trans = [("q0", None, bottom, "loop", (g.start, bottom))]
    for lhs, rhs in g.prods:
        trans.append(("loop", None, lhs, "loop", rhs))
    for a in g.terminals:
        trans.append(("loop", a, a, "loop", ()))
    trans.append(("loop", None, bottom, "acc", (bottom,)))
    stack = list(g.variables) + list(g.terminals) + [bottom]
    return normalize_pda(
        make_pda(states, g.terminals, stack, bottom, trans, "q0", ["acc"])
    )


def inverse_hom(m: Pda, h: dict) -> Pda:
    """PDA for {u : h(u) in L(m)}; h maps new letters to words over m's input."""
    for a, image in h.items():
        for c in image:
            if c not in m.input_alphabet:
                raise AlphabetMismatch(f"h({a!r}) uses foreign letter {c!r}")
    suffixes = {()}
    for image in h.values():
        image = tuple(image)
        for i in range(len(image)):
            suffixes.add(image[i:])
    states = [(q, suf) for q in m.states for suf in sorted(suffixes, key=str)]
    trans = []
    for q in m.states:
        for (src, letter, top), arrivals in m.transitions.items():
            if src != q:
                continue
            for dst, push in arrivals:
                for suf in suffixes:
                    if letter is None:
                        trans.append(((q, suf), None, top, (dst, suf), push))
                    elif suf and suf[0] == letter:
                        trans.append(((q, suf), None, top, (dst, suf[1:]), push))
    for a, image in h.items():
        for q in m.states:
            for top in m.stack_alphabet:
                trans.append(((q, ()), a, top, (q, tuple(image)), (top,)))
    return make_pda(
        states,
        tuple(h),
        m.stack_alphabet,
        m.bottom,
        trans,
        (m.initial, ()),
        [(f, ()) for f in m.finals],
    )


def intersect_pda_nfa(m: Pda, n: Nfa) -> Pda:
    """Product PDA for L(m) ∩ L(n)."""
    if set(n.alphabet) != set(m.input_alphabet):
        raise AlphabetMismatch(
            f"PDA alphabet {sorted(map(str, m.input_alphabet))} != "
            f"NFA alphabet {sorted(map(str, n.alphabet))}"
        )
    arrows = {a: set() for a in n.alphabet}
    for s in n.states:
        for a in n.alphabet:
            for t in letter_step(n, {s}, a):
                arrows[a].add((s, t))
    good_finals = {s for s in n.states if eps_closure(n, {s}) & n.finals}
    init = ("init",)
    states = [init] + [(q, s) for q in m.states for s in n.states]
    trans = []
    for s in eps_closure(n, n.initials):
        trans.append((init, None, m.bottom, (m.initial, s), (m.bottom,)))
    for (src, letter, top), arrivals in m.transitions.items():
        for dst, push in arrivals:
            if letter is None:
                for s in n.states:
                    trans.append(((src, s), None, top, (dst, s), push))
            else:
                for s, t in arrows[letter]:
                    trans.append(((src, s), letter, top, (dst, t), push))
    finals = [
        (f, s) for f in m.finals for s in good_finals
    ]
    return make_pda(
        states, m.input_alphabet, m.stack_alphabet, m.bottom, trans, init, finals
    )


# ---------------------------------------------------------------------------
# emptiness via the triple grammar  [p, X, q]  ("pop X going from p to q")


def _drained(p: Pda) -> tuple:
    """Normalized PDA plus a drain state that empties the stack after a final."""
    p = normalize_pda(p)
    drain = ("drain",)
    states = list(p.states) + [drain]
    trans = _transition_list(p)
    for f in p.finals:
        for x in p.stack_alphabet:
            trans.append((f, None, x, drain, ()))
    for x in p.stack_alphabet:
        trans.append((drain, None, x, drain, ()))
    q = make_pda(
        states, p.input_alphabet, p.stack_alphabet, p.bottom, trans,
        p.initial, [drain],
    )
    return q, drain


def _generating_triples(p: Pda):
    """All generating triples [src, X, dst] of the triple grammar, by worklist.

    A triple is generating iff some input word takes src with X on top to dst
    with X popped (never touching below X).
    """
    pops = []       # (src, X, dst)
    replaces = []   # (src, X, dst, Y)
    pushes = []     # (src, X, dst, Y, Z)
    for src, letter, top, dst, push in p.all_transitions():
        if len(push) == 0:
            pops.append((src, top, dst))
        elif len(push) == 1:
            replaces.append((src, top, dst, push[0]))
        else:
            pushes.append((src, top, dst, push[0], push[1]))

    gen = set()
    by_head = {}   # (start, sym) -> set of ends
    by_end = {}    # end -> set of (start, sym)
    rep_index = {} # (dst, Y) -> list of (src, X)
    for src, x, dst, y in replaces:
        rep_index.setdefault((dst, y), []).append((src, x))
    push_by_first = {}   # (dst, Y) -> list of (src, X, Z)
    push_by_second = {}  # Z -> list of (src, X, dst, Y)
    for src, x, dst, y, z in pushes:
        push_by_first.setdefault((dst, y), []).append((src, x, z))
        push_by_second.setdefault(z, []).append((src, x, dst, y))

    queue = deque()

    def add(triple):
        if triple not in gen:
            gen.add(triple)
            a, x, b = triple
            by_head.setdefault((a, x), set()).add(b)
            by_end.setdefault(b, set()).add((a, x))
            queue.append(triple)

    for t in pops:
        add(t)
    while queue:
        a, y, b = queue.popleft()
        for src, x in rep_index.get((a, y), ()):
            add((src, x, b))
        # as first conjunct: rule needs [b, Z, q]
        for src, x, z in push_by_first.get((a, y), ()):
            for q in by_head.get((b, z), set()).copy():
                add((src, x, q))
        # as second conjunct: rule needs [dst, Y', a]
        for src, x, dst, y2 in push_by_second.get(y, ()):
            if a in by_head.get((dst, y2), set()):
                add((src, x, b))
    return gen


def trim_pda(p: Pda) -> Pda:
    """Drop states unreachable in the transition graph (stack ignored —
    a sound overapproximation of reachability)."""
    succ = {}
    for src, _, _, dst, _ in p.all_transitions():
        succ.setdefault(src, set()).add(dst)
    seen = {p.initial}
    todo = [p.initial]
    while todo:
        q = todo.pop()
        for r in succ.get(q, ()):
            if r not in seen:
                seen.add(r)
                todo.append(r)
    if len(seen) == len(p.states):
        return p
    trans = [t for t in p.all_transitions() if t[0] in seen]
    return make_pda(
        [s for s in p.states if s in seen],
        p.input_alphabet,
        p.stack_alphabet,
        p.bottom,
        trans,
        p.initial,
        [f for f in p.finals if f in seen],
        p.deterministic,
    )


def pda_empty(p: Pda) -> bool:
    """True iff the automaton accepts no word at all."""
    q, drain = _drained(trim_pda(p))
    gen = _generating_triples(q)
    return (q.initial, q.bottom, drain) not in gen


def shortest_accepted(p: Pda, max_len=None):
    """A shortest accepted word, or None if the language is empty.

    Minimum-length derivations over the triple grammar of the drained
    automaton, settled in cost order (Knuth's generalization of Dijkstra to
    grammar rules) with rules instantiated on demand, so the work stays
    proportional to the derivable triples rather than |states|^2 per rule.
    If max_len is given, returns None when every accepted word is longer.
    """
    import heapq

    q, drain = _drained(trim_pda(p))
    pops = []
    replaces = []
    pushes = []
    for src, letter, top, dst, push in q.all_transitions():
        cost = 0 if letter is None else 1
        if len(push) == 0:
            pops.append((src, top, dst, letter, cost))
        elif len(push) == 1:
            replaces.append((src, top, dst, push[0], letter, cost))
        else:
            pushes.append((src, top, dst, push[0], push[1], letter, cost))

    rep_index = {}   # (dst, Y) -> [(src, X, letter, cost)]
    for src, x, dst, y, letter, cost in replaces:
        rep_index.setdefault((dst, y), []).append((src, x, letter, cost))
    push_by_first = {}   # (dst, Y) -> [(src, X, Z, letter, cost)]
    push_by_second = {}  # Z -> [(src, X, dst, Y, letter, cost)]
    for src, x, dst, y, z, letter, cost in pushes:
        push_by_first.setdefault((dst, y), []).append((src, x, z, letter, cost))
        push_by_second.setdefault(z, []).append((src, x, dst, y, letter, cost))

    best: dict = {}
    witness: dict = {}  # triple -> (letter, child triples)
    by_head: dict = {}  # (start, sym) -> set of settled ends
    heap = []
    counter = itertools.count()

    def offer(triple, cost, letter, children):
        if triple not in best:
            heapq.heappush(heap, (cost, next(counter), triple, letter, children))

    for src, x, dst, letter, cost in pops:
        offer((src, x, dst), cost, letter, ())
    while heap:
        cost, _, triple, letter, children = heapq.heappop(heap)
        if triple in best:
            continue
        best[triple] = cost
        witness[triple] = (letter, children)
        a, y, b = triple
        by_head.setdefault((a, y), set()).add(b)
        for src, x, rl, rc in rep_index.get((a, y), ()):
            offer((src, x, b), rc + cost, rl, (triple,))
        for src, x, z, rl, rc in push_by_first.get((a, y), ()):
            for qq in by_head.get((b, z), set()).copy():
                second = (b, z, qq)
                offer(
                    (src, x, qq), rc + cost + best[second], rl, (triple, second)
                )
        for src, x, dst, y2, rl, rc in push_by_second.get(y, ()):
            if a in by_head.get((dst, y2), set()):
                first = (dst, y2, a)
                offer((src, x, b), rc + best[first] + cost, rl, (first, triple))
    goal = (q.initial, q.bottom, drain)
    if goal not in best:
        return None
    if max_len is not None and best[goal] > max_len:
        return None

    out = []
    stack = [goal]
    while stack:
        triple = stack.pop()
        letter, children = witness[triple]
        if letter is not None:
            out.append(letter)
        stack.extend(reversed(children))
    return tuple(out)


def pda_accepts(p: Pda, w) -> bool:
    """Exact acceptance: intersect with the one-word automaton, test emptiness."""
    w = tuple(w)
    for a in w:
        if a not in p.input_alphabet:
            raise AlphabetMismatch(f"letter {a!r} outside the input alphabet")
    return not pda_empty(intersect_pda_nfa(p, chain_nfa(w, p.input_alphabet)))


# ---------------------------------------------------------------------------
# the deterministic word-problem PDA of a presentation


def build_wp_pda(pres) -> Pda:
    """Deterministic PDA accepting exactly the identity words of a validated
    presentation.

    The stack mirrors the freely reduced prefix of the left-to-right scan
    (letters tagged with whether they sit directly on the bottom marker) and
    the control state carries (representative, pending letters to push,
    stack-is-empty flag).  Reading happens only with no letters pending, so
    the automaton is deterministic in the strict sense.
    """
    from ..vfpres import IDENTITY, inverse_letter

    sigma = pres.sigma
    x_letters = set(pres.x_letters)
    reps = pres.S
    bottom = "#"
    stack_syms = [bottom] + [(c, adj) for c in pres.x_letters for adj in (True, False)]

    def entry(r, a):
        if r == IDENTITY:
            if a in x_letters:
                return (a,), IDENTITY
            if a in reps:
                return (), a
        return pres.rule(r, a)

    pendings = {()}
    for r in reps:
        for a in sigma:
            word, _ = entry(r, a)
            for i in range(len(word)):
                pendings.add(tuple(word[i:]))
    states = [
        (r, suf, ef)
        for r in reps
        for suf in sorted(pendings, key=lambda s: (len(s), s))
        for ef in (True, False)
    ]
    trans = []
    for r in reps:
        for suf in pendings:
            for ef in (True, False):
                state = (r, suf, ef)
                if not suf:
                    for a in sigma:
                        word, s = entry(r, a)
                        for top in stack_syms:
                            if (top == bottom) != ef:
                                continue  # unreachable combination
                            trans.append((state, a, top, (s, tuple(word), ef), (top,)))
                else:
                    c, rest = suf[0], suf[1:]
                    cbar = inverse_letter(c)
                    for top in stack_syms:
                        if (top == bottom) != ef:
                            continue  # unreachable combination
                        if top == bottom:
                            trans.append(
                                (state, None, top, (r, rest, False), ((c, True), top))
                            )
                        elif top[0] == cbar:
                            adj = top[1]
                            trans.append((state, None, top, (r, rest, adj), ()))
                        else:
                            trans.append(
                                (state, None, top, (r, rest, False), ((c, False), top))
                            )
    finals = [(IDENTITY, (), True)]
    return make_pda(
        states, sigma, stack_syms, bottom, trans,
        (IDENTITY, (), True), finals, deterministic=True,
    )
