"""Graphs of groups: structure, reduced words, and fundamental-group words.

A graph of groups is a finite connected graph with a validated finite group
at each vertex, directed edges closed under a fixed-point-free involution
e <-> ebar with s(e) = t(ebar), and one edge group per undirected pair with
injections into both endpoint vertex groups.

Words live over the alphabet Delta = (all nontrivial vertex elements,
namespaced "P.g3") + (edge names).  reduce_word implements the relations
  g * g' -> [gg']   (same vertex, by the table; identities vanish)
  ybar * a^y * y -> a^{ybar}   (edge-group element pushed through the edge)
and a nonempty word that admits neither rewrite is reduced; reduced words
are nontrivial in the fundamental group, which makes the word problem of
pi_1 a reduction check.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
import json

from .fingroup import GroupInjection, GroupTable, validate_table


class IllFormed(ValueError):
    pass


class NotBasedAtP(ValueError):
    def __init__(self, position, detail):
        self.position = position
        super().__init__(f"position {position}: {detail}")


class UnknownSymbol(KeyError):
    def __init__(self, symbol):
        self.symbol = symbol
        super().__init__(f"unknown symbol {symbol!r}")


def vertex_symbol(vertex, index):
    return f"{vertex}.g{index}"


class GraphOfGroups:
    """vertices: list of (name, GroupTable); edges: list of (name, inv,
    src, tgt); pairs: list of (y, ybar, GroupTable, into_src, into_tgt)."""

    def __init__(self, vertices, edges, pairs):
        self.vertex_tables = {}
        self.vertex_order = []
        for name, table in vertices:
            if name in self.vertex_tables:
                raise IllFormed(f"duplicate vertex {name!r}")
            self.vertex_tables[name] = table
            self.vertex_order.append(name)
        if not self.vertex_tables:
            raise IllFormed("no vertices")

        self.edge_inv = {}
        self.edge_src = {}
        self.edge_tgt = {}
        self.edge_order = []
        for name, inv, src, tgt in edges:
            if name in self.edge_inv:
                raise IllFormed(f"duplicate edge {name!r}")
            if src not in self.vertex_tables or tgt not in self.vertex_tables:
                raise IllFormed(f"edge {name!r} touches an unknown vertex")
            self.edge_inv[name] = inv
            self.edge_src[name] = src
            self.edge_tgt[name] = tgt
            self.edge_order.append(name)
        for name, inv in self.edge_inv.items():
            if inv == name:
                raise IllFormed(f"edge {name!r} is its own involution partner")
            if self.edge_inv.get(inv) != name:
                raise IllFormed(f"involution of {name!r} is not a pairing")
            if self.edge_src[name] != self.edge_tgt[inv]:
                raise IllFormed(f"s({name}) != t({inv})")

        self.edge_table = {}
        self.inj = {}  # directed edge -> GroupInjection into its source vertex
        for y, ybar, table, into_src, into_tgt in pairs:
            if self.edge_inv.get(y) != ybar:
                raise IllFormed(f"({y!r},{ybar!r}) is not an involution pair")
            if y in self.edge_table:
                raise IllFormed(f"edge group for {y!r} given twice")
            for edge, mapping in ((y, into_src), (ybar, into_tgt)):
                target = self.vertex_tables[self.edge_src[edge]]
                injection = GroupInjection(table, target, tuple(mapping))
                try:
                    injection.check()
                except ValueError as err:
                    raise IllFormed(f"bad injection along {edge!r}: {err}")
                self.edge_table[edge] = table
                self.inj[edge] = injection
        missing = set(self.edge_inv) - set(self.edge_table)
        if missing:
            raise IllFormed(f"edges without an edge group: {sorted(missing)}")

        if not self._connected():
            raise IllFormed("underlying graph is not connected")

        self.delta = []
        self._resolve = {}
        for name in self.vertex_order:
            table = self.vertex_tables[name]
            for i in range(1, table.order):
                sym = vertex_symbol(name, i)
                if sym in self._resolve:
                    raise IllFormed(f"Delta symbol {sym!r} is not unique")
                self._resolve[sym] = ("v", name, i)
                self.delta.append(sym)
        for name in self.edge_order:
            if name in self._resolve:
                raise IllFormed(f"Delta symbol {name!r} is not unique")
            self._resolve[name] = ("e", name)
            self.delta.append(name)
        self.delta = tuple(self.delta)

    def _connected(self):
        seen = {self.vertex_order[0]}
        todo = [self.vertex_order[0]]
        while todo:
            v = todo.pop()
            for e in self.edge_order:
                if self.edge_src[e] == v and self.edge_tgt[e] not in seen:
                    seen.add(self.edge_tgt[e])
                    todo.append(self.edge_tgt[e])
        return len(seen) == len(self.vertex_tables)

    def resolve(self, sym):
        try:
            return self._resolve[sym]
        except KeyError:
            raise UnknownSymbol(sym) from None

    def resolve_word(self, w):
        return tuple(self.resolve(sym) for sym in w)

    def render(self, letter):
        if letter[0] == "v":
            return vertex_symbol(letter[1], letter[2])
        return letter[1]

    def render_word(self, letters):
        return tuple(self.render(x) for x in letters)

    def undirected_pairs(self):
        """One canonical representative per {y, ybar} (first in file order)."""
        seen = set()
        out = []
        for e in self.edge_order:
            if e not in seen:
                seen.add(e)
                seen.add(self.edge_inv[e])
                out.append(e)
        return out


def is_reduced_gog(g: GraphOfGroups):
    """(True, None), or (False, witness edge) when some edge with distinct
    endpoints carries the whole source vertex group."""
    for e in g.edge_order:
        if g.edge_src[e] != g.edge_tgt[e]:
            if g.edge_table[e].order == g.vertex_tables[g.edge_src[e]].order:
                return False, e
    return True, None


def spanning_tree(g: GraphOfGroups) -> frozenset:
    """Directed-edge set of a breadth-first spanning tree (closed under the
    involution); root = lexicographically least vertex, edges by name."""
    root = min(g.vertex_order)
    seen = {root}
    tree = set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in sorted(g.edge_order):
            if g.edge_src[e] == v and g.edge_tgt[e] not in seen:
                seen.add(g.edge_tgt[e])
                tree.add(e)
                tree.add(g.edge_inv[e])
                queue.append(g.edge_tgt[e])
    return frozenset(tree)


def _merge(g, a, b):
    """Product of two same-vertex letters, or None when it is the identity."""
    table = g.vertex_tables[a[1]]
    prod = table.mul(a[2], b[2])
    if prod == 0:
        return None
    return ("v", a[1], prod)


def _find_redex(g, w):
    for i in range(len(w) - 1):
        a, b = w[i], w[i + 1]
        if a[0] == "v" and b[0] == "v" and a[1] == b[1]:
            return i, 2, () if _merge(g, a, b) is None else (_merge(g, a, b),)
        if a[0] == "e" and b[0] == "e" and g.edge_inv[a[1]] == b[1]:
            return i, 2, ()
        if (
            a[0] == "e"
            and b[0] == "v"
            and i + 2 < len(w)
            and w[i + 2][0] == "e"
            and g.edge_inv[a[1]] == w[i + 2][1]
        ):
            y = w[i + 2][1]
            if b[1] == g.edge_src[y] and b[2] in g.inj[y].image:
                a_pre = g.inj[y].map.index(b[2])
                out = g.inj[g.edge_inv[y]].map[a_pre]
                return i, 3, (("v", g.edge_tgt[y], out),)
    return None


def reduce_word(g: GraphOfGroups, w):
    """Leftmost-innermost rewriting to a reduced word (as Delta symbols)."""
    letters = list(g.resolve_word(w))
    while True:
        hit = _find_redex(g, letters)
        if hit is None:
            break
        i, span, repl = hit
        letters[i : i + span] = list(repl)
    return g.render_word(letters)


def _check_based(g, letters, base):
    current = base
    for pos, letter in enumerate(letters):
        if letter[0] == "v":
            if letter[1] != current:
                raise NotBasedAtP(
                    pos, f"letter of {letter[1]!r} while at {current!r}"
                )
        else:
            e = letter[1]
            if g.edge_src[e] != current:
                raise NotBasedAtP(
                    pos, f"edge {e!r} leaves {g.edge_src[e]!r}, not {current!r}"
                )
            current = g.edge_tgt[e]
    if current != base:
        raise NotBasedAtP(len(letters), f"path ends at {current!r}, not {base!r}")


def gog_wp(g: GraphOfGroups, base, w) -> bool:
    """Word problem of pi_1(gog, base): trivial iff the word reduces to
    nothing (reduced nonempty words are nontrivial)."""
    if base not in g.vertex_tables:
        raise UnknownSymbol(base)
    letters = g.resolve_word(w)
    _check_based(g, letters, base)
    return reduce_word(g, w) == ()


def _tree_paths(g, tree, base):
    """Directed tree path from base to every vertex, as edge-name tuples."""
    paths = {base: ()}
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for e in sorted(tree):
            if g.edge_src[e] == v and g.edge_tgt[e] not in paths:
                paths[g.edge_tgt[e]] = paths[v] + (e,)
                queue.append(g.edge_tgt[e])
    return paths


def _tree_hop(g, paths, u, v):
    """The reduced tree path u -> v: climb to the common ancestor, descend."""
    pu, pv = paths[u], paths[v]
    k = 0
    while k < len(pu) and k < len(pv) and pu[k] == pv[k]:
        k += 1
    up = tuple(g.edge_inv[e] for e in reversed(pu[k:]))
    return up + pv[k:]


def to_based_form(g: GraphOfGroups, base, w):
    """Rewrite an arbitrary Delta-word into a pi_1(gog, base) word by
    splicing in spanning-tree paths (tree edges map to 1, so the image in
    pi_1(gog, T) is unchanged)."""
    if base not in g.vertex_tables:
        raise UnknownSymbol(base)
    tree = spanning_tree(g)
    paths = _tree_paths(g, tree, base)
    letters = g.resolve_word(w)
    out = []
    current = base
    for letter in letters:
        want = letter[1] if letter[0] == "v" else g.edge_src[letter[1]]
        out.extend(("e", e) for e in _tree_hop(g, paths, current, want))
        out.append(letter)
        current = want if letter[0] == "v" else g.edge_tgt[letter[1]]
    out.extend(("e", e) for e in _tree_hop(g, paths, current, base))
    return g.render_word(out)


# ---------------------------------------------------------------------------
# file format


def gog_from_dict(data) -> GraphOfGroups:
    try:
        vertices = [
            (v["id"], validate_table(v["table"], name=str(v["id"])))
            for v in data["vertices"]
        ]
        edges = [(e["id"], e["inv"], e["src"], e["tgt"]) for e in data["edges"]]
        pairs = []
        for item in data["edge_groups"]:
            y, ybar = item["pair"]
            table = validate_table(item["table"], name=f"G_{y}")
            pairs.append((y, ybar, table, item["into_src"], item["into_tgt"]))
    except (KeyError, TypeError) as err:
        raise IllFormed(f"malformed graph-of-groups data: {err}")
    except ValueError as err:
        raise IllFormed(str(err))
    return GraphOfGroups(vertices, edges, pairs)


def gog_to_dict(g: GraphOfGroups) -> dict:
    verts = [
        {"id": name, "table": [list(r) for r in g.vertex_tables[name].table]}
        for name in g.vertex_order
    ]
    edges = [
        {"id": e, "inv": g.edge_inv[e], "src": g.edge_src[e], "tgt": g.edge_tgt[e]}
        for e in g.edge_order
    ]
    groups = []
    for y in g.undirected_pairs():
        ybar = g.edge_inv[y]
        groups.append(
            {
                "pair": [y, ybar],
                "table": [list(r) for r in g.edge_table[y].table],
                "into_src": list(g.inj[y].map),
                "into_tgt": list(g.inj[ybar].map),
            }
        )
    return {"vertices": verts, "edges": edges, "edge_groups": groups}


def load_gog(path) -> GraphOfGroups:
    with open(path, "r", encoding="utf-8") as fh:
        return gog_from_dict(json.load(fh))
