"""Membership in rational subsets, reduced to PDA emptiness.

A rational subset is given by an NFA over the same alphabet as a
word-problem PDA.  A word w lies in the subset iff some NFA word u equals w
in the group, i.e. iff inv(w)·u is an identity word for some u in L(n); that
is an intersection-emptiness question.
"""
from __future__ import annotations

from .nfa import Nfa, prepend_word
from .pda import AlphabetMismatch, Pda, intersect_pda_nfa, pda_empty


def _check_involution(inv: dict, alphabet) -> None:
    letters = set(alphabet)
    if set(inv) != letters:
        raise ValueError("involution must cover exactly the alphabet")
    for a, b in inv.items():
        if b not in letters or inv[b] != a:
            raise ValueError(f"involution is not self-inverse at {a!r}")


def rational_member(wp: Pda, inv: dict, w, n: Nfa) -> bool:
    """Does w belong to the subset {u in L(n)} read in the group?"""
    _check_involution(inv, wp.input_alphabet)
    if set(n.alphabet) != set(wp.input_alphabet):
        raise AlphabetMismatch(
            f"NFA alphabet {sorted(map(str, n.alphabet))} != "
            f"PDA alphabet {sorted(map(str, wp.input_alphabet))}"
        )
    w = tuple(w)
    for a in w:
        if a not in inv:
            raise AlphabetMismatch(f"letter {a!r} outside the alphabet")
    wbar = tuple(inv[a] for a in reversed(w))
    shifted = prepend_word(n, wbar)
    return not pda_empty(intersect_pda_nfa(wp, shifted))
