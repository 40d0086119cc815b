"""Nondeterministic finite automata with epsilon moves."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

EPS = None  # transition label for epsilon moves


@dataclass(frozen=True)
class Nfa:
    states: tuple
    alphabet: tuple
    transitions: tuple  # triples (src, letter-or-None, dst)
    initials: frozenset
    finals: frozenset
    _delta: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        declared = set(self.states)
        letters = set(self.alphabet)
        for src, letter, dst in self.transitions:
            if src not in declared or dst not in declared:
                raise ValueError(f"undeclared state in transition {(src, letter, dst)}")
            if letter is not EPS and letter not in letters:
                raise ValueError(f"undeclared letter {letter!r}")
        for q in self.initials | self.finals:
            if q not in declared:
                raise ValueError(f"undeclared state {q!r}")
        delta: dict = {}
        for src, letter, dst in self.transitions:
            delta.setdefault((src, letter), set()).add(dst)
        object.__setattr__(self, "_delta", delta)

    def step(self, state, letter):
        return self._delta.get((state, letter), set())


def make_nfa(states, alphabet, transitions, initials, finals) -> Nfa:
    return Nfa(
        tuple(states),
        tuple(alphabet),
        tuple((s, l, d) for s, l, d in transitions),
        frozenset(initials),
        frozenset(finals),
    )


def eps_closure(n: Nfa, states) -> frozenset:
    seen = set(states)
    todo = list(states)
    while todo:
        q = todo.pop()
        for r in n.step(q, EPS):
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return frozenset(seen)


def letter_step(n: Nfa, states, letter) -> frozenset:
    out = set()
    for q in eps_closure(n, states):
        out |= n.step(q, letter)
    return eps_closure(n, out)


def nfa_accepts(n: Nfa, word) -> bool:
    current = eps_closure(n, n.initials)
    for a in word:
        current = letter_step(n, current, a)
        if not current:
            return False
    return bool(current & n.finals)


def enumerate_nfa_words(n: Nfa, max_len: int):
    """All accepted words of length <= max_len, shortest first."""
    out = []
    queue = deque([((), eps_closure(n, n.initials))])
    while queue:
        word, current = queue.popleft()
        if current & n.finals:
            out.append(word)
        if len(word) == max_len:
            continue
        for a in n.alphabet:
            nxt = letter_step(n, current, a)
            if nxt:
                queue.append((word + (a,), nxt))
    return out


def universal_nfa(alphabet) -> Nfa:
    q = "q"
    return make_nfa([q], alphabet, [(q, a, q) for a in alphabet], [q], [q])


def empty_nfa(alphabet) -> Nfa:
    return make_nfa(["q"], alphabet, [], ["q"], [])


def chain_nfa(word, alphabet) -> Nfa:
    """Accepts exactly the one given word."""
    word = tuple(word)
    states = [f"c{i}" for i in range(len(word) + 1)]
    trans = [(states[i], a, states[i + 1]) for i, a in enumerate(word)]
    return make_nfa(states, alphabet, trans, [states[0]], [states[-1]])


def flower_nfa(words, alphabet) -> Nfa:
    """Accepts the submonoid {w1, ..., wk}* as petal loops at one center."""
    states = ["hub"]
    trans = []
    for i, word in enumerate(words):
        word = tuple(word)
        prev = "hub"
        for j, a in enumerate(word):
            nxt = "hub" if j == len(word) - 1 else f"p{i}_{j}"
            if nxt != "hub":
                states.append(nxt)
            trans.append((prev, a, nxt))
            prev = nxt
        if not word:
            pass  # empty petal adds nothing
    return make_nfa(states, alphabet, trans, ["hub"], ["hub"])


def product_nfa(n1: Nfa, n2: Nfa) -> Nfa:
    """Synchronous product accepting the intersection of the two languages."""
    if set(n1.alphabet) != set(n2.alphabet):
        raise ValueError("product of automata over different alphabets")
    trans = []
    for s1 in n1.states:
        for s2 in n2.states:
            for letter in n1.alphabet:
                for t1 in n1.step(s1, letter):
                    for t2 in n2.step(s2, letter):
                        trans.append(((s1, s2), letter, (t1, t2)))
            for t1 in n1.step(s1, EPS):
                trans.append(((s1, s2), EPS, (t1, s2)))
            for t2 in n2.step(s2, EPS):
                trans.append(((s1, s2), EPS, (s1, t2)))
    states = [(s1, s2) for s1 in n1.states for s2 in n2.states]
    initials = [(s1, s2) for s1 in n1.initials for s2 in n2.initials]
    finals = [(s1, s2) for s1 in n1.finals for s2 in n2.finals]
    return make_nfa(states, n1.alphabet, trans, initials, finals)


def prepend_word(n: Nfa, word) -> Nfa:
    """Automaton for {word · u : u in L(n)}."""
    word = tuple(word)
    chain = [("pre", i) for i in range(len(word) + 1)]
    states = list(chain) + [("n", q) for q in n.states]
    trans = [(chain[i], a, chain[i + 1]) for i, a in enumerate(word)]
    trans += [(chain[-1], EPS, ("n", q)) for q in n.initials]
    trans += [(("n", s), l, ("n", d)) for s, l, d in n.transitions]
    return make_nfa(
        states, n.alphabet, trans, [chain[0]], [("n", q) for q in n.finals]
    )


def nfa_from_dict(data) -> Nfa:
    trans = []
    for item in data.get("transitions", ()):
        src, letter, dst = item
        trans.append((src, EPS if letter in ("", None) else letter, dst))
    alphabet = data.get("alphabet")
    if alphabet is None:
        alphabet = sorted({l for _, l, _ in trans if l is not EPS})
    return make_nfa(
        data["states"], alphabet, trans, data["initials"], data["finals"]
    )


def nfa_to_dict(n: Nfa) -> dict:
    return {
        "states": list(n.states),
        "alphabet": list(n.alphabet),
        "transitions": [[s, "" if l is EPS else l, d] for s, l, d in n.transitions],
        "initials": sorted(n.initials, key=str),
        "finals": sorted(n.finals, key=str),
    }


def load_nfa(path) -> Nfa:
    with open(path, "r", encoding="utf-8") as fh:
        return nfa_from_dict(json.load(fh))
