"""Decide whether a map from a graph of groups onto a group is an isomorphism.

Given a graph of groups, a base vertex, and images phi: Delta -> Sigma* into
a group with a decidable word problem, three checks together decide whether
phi induces an isomorphism from the fundamental group:

  homomorphism   every defining relation maps to an identity word;
  surjectivity   every generator of the target lies in the submonoid
                 generated by the images (a rational-subset membership);
  injectivity    no nonempty reduced based word maps to an identity word
                 (an emptiness check on a PDA/NFA product, since reduced
                 nonempty words are nontrivial in the fundamental group).
"""
from __future__ import annotations

from dataclasses import dataclass
import json

from .gog import GraphOfGroups, spanning_tree, vertex_symbol
from .langcore import (
    flower_nfa,
    grammar_to_pda,
    intersect_pda_nfa,
    inverse_hom,
    involution_map,
    make_nfa,
    pda_empty,
    product_nfa,
    rational_member,
    shortest_accepted,
    to_cnf,
)
from .langcore.grammar import Grammar, cyk_member
from .vfpres import VfPresentation, inverse_letter, word_problem, wp_pda


@dataclass
class WpTarget:
    """A group given by its word-problem machinery."""

    sigma: tuple
    inv: dict          # letter involution on sigma
    wp: object         # word -> bool
    pda: object        # () -> Pda, cached by the caller

    def invert(self, w):
        return tuple(self.inv[a] for a in reversed(w))


def presentation_target(p: VfPresentation) -> WpTarget:
    cache = []

    def get_pda():
        if not cache:
            cache.append(wp_pda(p))
        return cache[0]

    inv = {a: inverse_letter(a) for a in p.sigma}
    return WpTarget(p.sigma, inv, lambda w: word_problem(p, w), get_pda)


def grammar_target(g: Grammar) -> WpTarget:
    inv = involution_map(g)
    if set(inv) != set(g.terminals):
        raise ValueError("grammar target needs a total letter involution")
    cnf = to_cnf(g)
    cache = []

    def get_pda():
        if not cache:
            cache.append(grammar_to_pda(g))
        return cache[0]

    return WpTarget(tuple(g.terminals), inv, lambda w: cyk_member(cnf, w), get_pda)


@dataclass
class GogHom:
    gog: GraphOfGroups
    images: dict       # Delta symbol -> word over target.sigma
    target: WpTarget

    def __post_init__(self):
        missing = [d for d in self.gog.delta if d not in self.images]
        if missing:
            raise ValueError(f"images missing for {missing}")
        extra = [d for d in self.images if d not in set(self.gog.delta)]
        if extra:
            raise ValueError(f"images given for unknown symbols {extra}")
        sigma = set(self.target.sigma)
        self.images = {d: tuple(self.images[d]) for d in self.gog.delta}
        for d, w in self.images.items():
            bad = [a for a in w if a not in sigma]
            if bad:
                raise ValueError(f"image of {d!r} uses foreign letters {bad}")

    def of_element(self, vertex, index):
        """phi of a vertex-group element; the identity maps to the empty word."""
        if index == 0:
            return ()
        return self.images[vertex_symbol(vertex, index)]


def check_homomorphism(h: GogHom):
    """(True, None) or (False, first failing relation)."""
    g, t = h.gog, h.target

    def trivial(w):
        return t.wp(tuple(w))

    for p_name in g.vertex_order:
        table = g.vertex_tables[p_name]
        for a in range(1, table.order):
            for b in range(1, table.order):
                lhs = h.of_element(p_name, a) + h.of_element(p_name, b)
                rhs = h.of_element(p_name, table.mul(a, b))
                if not trivial(lhs + t.invert(rhs)):
                    return False, ("vertex", p_name, a, b)
    for y in g.edge_order:
        ybar = g.edge_inv[y]
        for a in range(1, g.edge_table[y].order):
            lhs = (
                h.images[ybar]
                + h.of_element(g.edge_src[y], g.inj[y].map[a])
                + h.images[y]
            )
            rhs = h.of_element(g.edge_tgt[y], g.inj[ybar].map[a])
            if not trivial(lhs + t.invert(rhs)):
                return False, ("edge", y, a)
    for y in g.edge_order:
        if not trivial(h.images[g.edge_inv[y]] + h.images[y]):
            return False, ("edge-inverse", y)
    for y in sorted(spanning_tree(g)):
        if not trivial(h.images[y]):
            return False, ("tree-edge", y)
    return True, None


def check_surjectivity(h: GogHom):
    """(True, None) or (False, first target letter outside the image)."""
    t = h.target
    petals = [w for w in h.images.values() if w]
    flower = flower_nfa(petals, t.sigma)
    for a in t.sigma:
        if not rational_member(t.pda(), t.inv, (a,), flower):
            return False, a
    return True, None


def _shape_nfa(g: GraphOfGroups, base):
    """Based closed paths: at a vertex read its own letters or leave along
    an outgoing edge."""
    trans = []
    for v in g.vertex_order:
        for i in range(1, g.vertex_tables[v].order):
            trans.append((v, vertex_symbol(v, i), v))
    for e in g.edge_order:
        trans.append((g.edge_src[e], e, g.edge_tgt[e]))
    return make_nfa(g.vertex_order, g.delta, trans, [base], [base])


def forbidden_factors(g: GraphOfGroups):
    out = []
    for v in g.vertex_order:
        n = g.vertex_tables[v].order
        for a in range(1, n):
            for b in range(1, n):
                out.append((vertex_symbol(v, a), vertex_symbol(v, b)))
    for y in g.edge_order:
        ybar = g.edge_inv[y]
        out.append((ybar, y))
        for a in range(1, g.edge_table[y].order):
            out.append((ybar, vertex_symbol(g.edge_src[y], g.inj[y].map[a]), y))
    return out


def _avoider_nfa(g: GraphOfGroups):
    """Accepts exactly the words containing no forbidden factor."""
    factors = forbidden_factors(g)
    prefixes = {()}
    for f in factors:
        for k in range(1, len(f)):
            prefixes.add(f[:k])
    forbidden = set(factors)

    def step(state, letter):
        w = state + (letter,)
        for k in (2, 3):
            if len(w) >= k and w[-k:] in forbidden:
                return None
        for k in (2, 1, 0):
            if len(w) >= k and w[len(w) - k:] in prefixes:
                return w[len(w) - k:]
        raise AssertionError("empty suffix is always a prefix")

    states = sorted(prefixes, key=lambda s: (len(s), s))
    trans = []
    for state in states:
        for letter in g.delta:
            nxt = step(state, letter)
            if nxt is not None:
                trans.append((state, letter, nxt))
    return make_nfa(states, g.delta, trans, [()], states)


def _nonempty_nfa(alphabet):
    trans = [("start", a, "seen") for a in alphabet]
    trans += [("seen", a, "seen") for a in alphabet]
    return make_nfa(["start", "seen"], alphabet, trans, ["start"], ["seen"])


def check_injectivity(h: GogHom, base):
    """(True, None) or (False, witness word or None when past the search bound).

    Emptiness of {nonempty reduced based words mapping to an identity word}
    is exact; the witness search is bounded diagnostics.
    """
    g = h.gog
    kernel_words = inverse_hom(h.target.pda(), h.images)
    shape = product_nfa(
        product_nfa(_shape_nfa(g, base), _avoider_nfa(g)), _nonempty_nfa(g.delta)
    )
    prod = intersect_pda_nfa(kernel_words, shape)
    if pda_empty(prod):
        return True, None
    return False, shortest_accepted(prod, max_len=len(prod.states) * 4)


@dataclass
class VerifyReport:
    ok: bool
    stage: str = None
    witness: object = None


def verify(h: GogHom, base) -> VerifyReport:
    ok, witness = check_homomorphism(h)
    if not ok:
        return VerifyReport(False, "homomorphism", witness)
    ok, witness = check_surjectivity(h)
    if not ok:
        return VerifyReport(False, "surjectivity", witness)
    ok, witness = check_injectivity(h, base)
    if not ok:
        return VerifyReport(False, "injectivity", witness)
    return VerifyReport(True)


# ---------------------------------------------------------------------------
# hom files


def hom_from_dict(data):
    base = data["base"]
    images = {item["sym"]: tuple(item["word"]) for item in data["images"]}
    return base, images


def hom_to_dict(base, images) -> dict:
    return {
        "base": base,
        "images": [{"sym": d, "word": list(w)} for d, w in images.items()],
    }


def load_hom(path):
    with open(path, "r", encoding="utf-8") as fh:
        return hom_from_dict(json.load(fh))
