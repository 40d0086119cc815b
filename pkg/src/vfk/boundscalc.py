"""Worst-case constants for the decomposition pipeline.

Two calibrations of the same bound set: from a context-free word-problem
grammar (doubly exponential -- five productions already give K = 2^99) and
from a rewriting presentation (polynomial in the presentation size).  All
arithmetic is on Python integers; the grammar column must never be trusted
to a fixed-width type.

The derived radii follow one rounding convention, R = ceil(3kK/2), which
agrees with the closed forms of both calibrations whenever k is even (it
always is, except for the degenerate zero-production grammar).
"""
from __future__ import annotations

from dataclasses import dataclass

from .langcore.grammar import Grammar, NotCnf, grammar_size, is_cnf
from .vfpres import VfPresentation, size


@dataclass(frozen=True)
class BoundSet:
    """N: input size; d: Cayley degree; k: triangulation constant;
    K: max weight of a minimal cut; R: max diameter of a minimal-cut
    boundary; Xi: max finite-subgroup order; Theta: max edge count of a
    reduced decomposition; Lambda: ball radius that suffices for the
    vertex groups; phi_len: max image length of a generator.

    Xi_sharp carries the tighter subgroup bound available for
    presentations (the number of coset representatives); the generic Xi
    is still what budget defaults use.
    """

    N: int
    d: int
    k: int
    K: int
    R: int
    Xi: int
    Theta: int
    Lambda: int
    phi_len: int
    source: str
    Xi_sharp: int | None = None


def _finish(N, d, k, K, Xi, Theta, source, Xi_sharp=None) -> BoundSet:
    R = -(-3 * k * K // 2)
    Lambda = 2 * (R + 1) * (Theta + 1) * Theta * Xi + Theta
    phi_len = 4 * (R + 1) * (Theta + 1) ** 2 * Xi
    return BoundSet(N, d, k, K, R, Xi, Theta, Lambda, phi_len, source, Xi_sharp)


def bounds_for_grammar(g: Grammar) -> BoundSet:
    """Bound set of a group whose word problem is the language of g.

    k doubles with every production; everything downstream is a power of
    the terminal-alphabet size d.
    """
    if not is_cnf(g):
        raise NotCnf("bounds are calibrated for CNF grammars only")
    d = len(g.terminals)
    k = 2 ** len(g.prods)
    K = d ** (3 * k + 3)
    Xi = d ** (12 * k + 10)
    Theta = d ** (12 * k + 11)
    return _finish(grammar_size(g), d, k, K, Xi, Theta, "grammar")


def bounds_for_presentation(p: VfPresentation) -> BoundSet:
    """Bound set from a rewriting presentation: polynomial in N = size(p).

    k = 2N+2, K = N^2, so R = ceil(3kK/2) = 3(N+1)N^2 exactly; the
    subgroup bound N is accompanied by the sharper coset-count bound.
    """
    N = size(p)
    return _finish(
        N,
        len(p.sigma),
        2 * N + 2,
        N * N,
        N,
        N,
        "presentation",
        Xi_sharp=len(p.S),
    )


def phi_length_bound(b: BoundSet) -> int:
    """Longest generator image a synthesized decomposition may need."""
    return 4 * (b.R + 1) * (b.Theta + 1) ** 2 * b.Xi


def bound_table(b: BoundSet) -> str:
    """The bound set as an aligned label: value listing (CLI output)."""
    rows = [
        ("source", b.source),
        ("N", b.N),
        ("d", b.d),
        ("k", b.k),
        ("K", b.K),
        ("R", b.R),
        ("Xi", b.Xi),
        ("Theta", b.Theta),
        ("Lambda", b.Lambda),
        ("phi_len", b.phi_len),
    ]
    if b.Xi_sharp is not None:
        rows.insert(7, ("Xi_sharp", b.Xi_sharp))
    width = max(len(label) for label, _ in rows)
    return "\n".join(f"{label:<{width}}  {value}" for label, value in rows)
