"""Slide moves on reduced graphs of groups, and isomorphism by search.

A slide move (x, y, g) takes two distinct directed edges sourced at the
same vertex P and a conjugator g in G_P with g^-1 iota_x(G_x) g contained
in iota_y(G_y); it re-sources x at t(y) with the composed injection
iota_ybar o iota_y^-1 o conj_g o iota_x.  Slides preserve the fundamental
group, the multiset of vertex-group orders, the multiset of edge-group
orders, and the edge count, so breadth-first search over slide sequences
-- with visited states canonicalized up to equivalence -- terminates and
decides whether two reduced graphs of groups are related by slides.

Equivalence here means: a graph isomorphism together with vertex- and
edge-group isomorphisms that commute with every edge injection up to an
inner automorphism of the receiving vertex group.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .fingroup import all_isomorphisms
from .gog import GraphOfGroups, IllFormed, is_reduced_gog


class InvalidMove(ValueError):
    pass


class ResultNotReduced(ValueError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"slid graph is not reduced (edge {edge!r})")


class NotReduced(ValueError):
    def __init__(self, which, edge):
        self.which = which
        self.edge = edge
        super().__init__(f"{which} input is not reduced (edge {edge!r})")


@dataclass(frozen=True)
class SlideMove:
    x: str  # the edge being slid
    y: str  # the edge it slides along
    g: int  # conjugator in the shared source vertex group


def _check_move(gog: GraphOfGroups, m: SlideMove):
    if m.x not in gog.edge_inv or m.y not in gog.edge_inv:
        raise InvalidMove(f"unknown edge in {m}")
    if m.x == m.y or m.x == gog.edge_inv[m.y]:
        raise InvalidMove("x must differ from y and its reverse")
    src = gog.edge_src[m.x]
    if src != gog.edge_src[m.y]:
        raise InvalidMove(
            f"edges sourced at {src!r} and {gog.edge_src[m.y]!r}"
        )
    table = gog.vertex_tables[src]
    if not 0 <= m.g < table.order:
        raise InvalidMove(f"conjugator {m.g} outside the vertex group")
    image_y = set(gog.inj[m.y].map)
    for a in gog.edge_table[m.x].elements():
        if table.conjugate(m.g, gog.inj[m.x].map[a]) not in image_y:
            raise InvalidMove(
                f"g^-1 (image of G_{m.x}) g is not inside the image of G_{m.y}"
            )


def enumerate_slides(gog: GraphOfGroups) -> list:
    """Every valid move, conjugators included exhaustively."""
    out = []
    for x in gog.edge_order:
        for y in gog.edge_order:
            if y == x or y == gog.edge_inv[x]:
                continue
            if gog.edge_src[x] != gog.edge_src[y]:
                continue
            for g in gog.vertex_tables[gog.edge_src[x]].elements():
                move = SlideMove(x, y, g)
                try:
                    _check_move(gog, move)
                except InvalidMove:
                    continue
                out.append(move)
    return out


def apply_slide(gog: GraphOfGroups, m: SlideMove) -> GraphOfGroups:
    """The slid graph of groups; fully re-validated, and rejected if it
    leaves the reduced class."""
    _check_move(gog, m)
    xbar = gog.edge_inv[m.x]
    ybar = gog.edge_inv[m.y]
    table = gog.vertex_tables[gog.edge_src[m.x]]
    new_src = gog.edge_tgt[m.y]
    new_map = tuple(
        gog.inj[ybar].map[
            gog.inj[m.y].map.index(table.conjugate(m.g, gog.inj[m.x].map[a]))
        ]
        for a in gog.edge_table[m.x].elements()
    )

    vertices = [(v, gog.vertex_tables[v]) for v in gog.vertex_order]
    edges = []
    for e in gog.edge_order:
        src = new_src if e == m.x else gog.edge_src[e]
        tgt = new_src if e == xbar else gog.edge_tgt[e]
        edges.append((e, gog.edge_inv[e], src, tgt))
    pairs = []
    for e in gog.undirected_pairs():
        ebar = gog.edge_inv[e]
        into_src = new_map if e == m.x else gog.inj[e].map
        into_tgt = new_map if ebar == m.x else gog.inj[ebar].map
        pairs.append((e, ebar, gog.edge_table[e], into_src, into_tgt))
    try:
        out = GraphOfGroups(vertices, edges, pairs)
    except IllFormed as err:  # sliding cannot disconnect or unbalance
        raise InvalidMove(f"slid graph is ill-formed: {err}") from err
    ok, witness = is_reduced_gog(out)
    if not ok:
        raise ResultNotReduced(witness)
    return out


def slide_invariants(gog: GraphOfGroups) -> tuple:
    """(vertex-group orders, edge-group orders, undirected edge count);
    unchanged by every slide move."""
    return (
        tuple(sorted(gog.vertex_tables[v].order for v in gog.vertex_order)),
        tuple(sorted(gog.edge_table[e].order for e in gog.undirected_pairs())),
        len(gog.undirected_pairs()),
    )


# ---------------------------------------------------------------------------
# equivalence


def _directed_ok(g1, g2, theta, d, image_d, eta):
    """theta_{s(d)} o iota_d == inn_h o iota_{image_d} o eta for some h."""
    t2 = g2.vertex_tables[g2.edge_src[image_d]]
    th = theta[g1.edge_src[d]]
    for h in t2.elements():
        if all(
            th.map[g1.inj[d].map[a]]
            == t2.conjugate(h, g2.inj[image_d].map[eta.map[a]])
            for a in g1.edge_table[d].elements()
        ):
            return True
    return False


def _pair_ok(g1, g2, theta, e, f):
    """Some edge-group isomorphism works for the pair e -> f jointly with
    its reverse."""
    ebar, fbar = g1.edge_inv[e], g2.edge_inv[f]
    for eta in all_isomorphisms(g1.edge_table[e], g2.edge_table[f]):
        if _directed_ok(g1, g2, theta, e, f, eta) and _directed_ok(
            g1, g2, theta, ebar, fbar, eta
        ):
            return True
    return False


def _pair_images(g1, g2, sigma, pairs1):
    """All matchings of undirected pairs compatible with the vertex map,
    orientation included."""
    pairs2 = g2.undirected_pairs()
    if not pairs1:
        yield {}
        return
    for assignment in itertools.permutations(pairs2):
        matching = {}
        for e, f in zip(pairs1, assignment):
            for cand in (f, g2.edge_inv[f]):
                if (
                    sigma[g1.edge_src[e]] == g2.edge_src[cand]
                    and sigma[g1.edge_tgt[e]] == g2.edge_tgt[cand]
                ):
                    matching[e] = cand
                    break
            else:
                break
        if len(matching) == len(pairs1):
            yield matching


def gog_equivalent(g1: GraphOfGroups, g2: GraphOfGroups) -> bool:
    """Exhaustive search for an equivalence (see module docstring)."""
    if slide_invariants(g1) != slide_invariants(g2):
        return False
    order1 = g1.vertex_order
    pairs1 = g1.undirected_pairs()
    for perm in itertools.permutations(g2.vertex_order):
        sigma = dict(zip(order1, perm))
        if any(
            g1.vertex_tables[v].order != g2.vertex_tables[sigma[v]].order
            for v in order1
        ):
            continue
        theta_choices = [
            list(all_isomorphisms(g1.vertex_tables[v], g2.vertex_tables[sigma[v]]))
            for v in order1
        ]
        if any(not c for c in theta_choices):
            continue
        for thetas in itertools.product(*theta_choices):
            theta = dict(zip(order1, thetas))
            for matching in _pair_images(g1, g2, sigma, pairs1):
                if all(_pair_ok(g1, g2, theta, e, f) for e, f in matching.items()):
                    return True
    return False


# ---------------------------------------------------------------------------
# the decision procedure


@dataclass
class Verdict:
    kind: str                 # "iso" | "not-iso" | "inconclusive"
    moves: tuple = ()         # witness slide sequence when kind == "iso"
    detail: str = ""
    explored: tuple = ()      # pairwise non-equivalent states the search saw
    rejected: tuple = field(default=(), repr=False)  # moves leaving the reduced class


def iso_decide(g1: GraphOfGroups, g2: GraphOfGroups, max_depth=None) -> Verdict:
    """Breadth-first search over slide sequences from g1.

    iso: g2 reached (witness sequence).  not-iso: an invariant separates
    the inputs, or the finite reachable set is exhausted.  inconclusive:
    the depth bound cut the search off with frontier states left.
    """
    for which, g in (("first", g1), ("second", g2)):
        ok, witness = is_reduced_gog(g)
        if not ok:
            raise NotReduced(which, witness)
    inv1, inv2 = slide_invariants(g1), slide_invariants(g2)
    if inv1 != inv2:
        return Verdict(
            "not-iso", detail=f"invariant obstruction: {inv1} != {inv2}"
        )
    if gog_equivalent(g1, g2):
        return Verdict("iso", moves=(), explored=(g1,))
    visited = [g1]
    frontier = [(g1, ())]
    rejected = []
    depth = 0
    while frontier:
        if max_depth is not None and depth >= max_depth:
            return Verdict(
                "inconclusive",
                detail=f"depth bound {max_depth} left {len(frontier)} states unexpanded",
                explored=tuple(visited),
                rejected=tuple(rejected),
            )
        depth += 1
        fresh = []
        for state, path in frontier:
            for move in enumerate_slides(state):
                try:
                    nxt = apply_slide(state, move)
                except ResultNotReduced:
                    rejected.append(move)
                    continue
                if any(gog_equivalent(nxt, seen) for seen in visited):
                    continue
                if gog_equivalent(nxt, g2):
                    return Verdict(
                        "iso",
                        moves=path + (move,),
                        explored=tuple(visited) + (nxt,),
                        rejected=tuple(rejected),
                    )
                visited.append(nxt)
                fresh.append((nxt, path + (move,)))
        frontier = fresh
    return Verdict(
        "not-iso",
        detail="state space exhausted without reaching the second input",
        explored=tuple(visited),
        rejected=tuple(rejected),
    )
