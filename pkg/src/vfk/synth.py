"""Guess-and-verify synthesis of finite-vertex-group decompositions.

Candidates are enumerated deterministically in increasing size -- vertex
count, then undirected edge count, then the sum of vertex-group orders,
then the total image length -- and the first one the verifier accepts is
returned.  No answer within a budget says nothing about existence; the
worst-case budgets reported by the bound calculators are astronomically
beyond enumeration and are deliberately never used as defaults here.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fingroup import GroupTable, all_monomorphisms, cyclic, dihedral
from .gog import GraphOfGroups, IllFormed, is_reduced_gog
from .langcore.grammar import Grammar
from .verify import GogHom, grammar_target, presentation_target, verify
from .vfpres import VfPresentation


class BudgetExhausted(Exception):
    def __init__(self, tried):
        self.tried = tried
        super().__init__(f"no candidate verified ({tried} tried)")


def default_catalog(max_order: int) -> tuple:
    """All cyclic groups up to max_order, then the dihedral ones."""
    tables = [cyclic(n) for n in range(1, max_order + 1)]
    tables += [dihedral(n) for n in range(2, max_order // 2 + 1)]
    return tuple(sorted(tables, key=lambda t: (t.order, t.name)))


@dataclass(frozen=True)
class SynthBudget:
    max_vertices: int
    max_group_order: int
    max_edges: int
    max_image_length: int
    catalog: tuple = ()  # GroupTables; empty means default_catalog

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_group_order < 1:
            raise ValueError("need at least one vertex and the trivial group")
        if self.max_edges < 0 or self.max_image_length < 0:
            raise ValueError("edge and image budgets cannot be negative")
        tables = self.catalog or default_catalog(self.max_group_order)
        for t in tables:
            if not isinstance(t, GroupTable):
                raise ValueError(f"catalog entry {t!r} is not a group table")
        usable = tuple(t for t in tables if t.order <= self.max_group_order)
        object.__setattr__(self, "catalog", usable)


def _connected(n, slots):
    if n == 1:
        return True
    seen = {0}
    grew = True
    while grew:
        grew = False
        for i, j in slots:
            if (i in seen) != (j in seen):
                seen.update((i, j))
                grew = True
    return len(seen) == n


def _graph_shapes(budget):
    """(vertex count, undirected slot multiset) in enumeration order."""
    for n in range(1, budget.max_vertices + 1):
        places = [(i, j) for i in range(n) for j in range(i, n)]
        low = n - 1  # connectivity needs a spanning tree
        for e in range(low, budget.max_edges + 1):
            for slots in itertools.combinations_with_replacement(places, e):
                if _connected(n, slots):
                    yield n, slots


def _words_by_length(sigma, max_len):
    return [
        [tuple(w) for w in itertools.product(sigma, repeat=k)]
        for k in range(max_len + 1)
    ]


def _image_assignments(delta, sigma, max_len):
    """All image dicts, ordered by total length (then pointwise)."""
    if not delta:
        yield {}
        return
    by_len = _words_by_length(sigma, max_len)
    n = len(delta)
    for total in range(max_len * n + 1):
        for lens in itertools.product(range(max_len + 1), repeat=n):
            if sum(lens) != total:
                continue
            for words in itertools.product(*(by_len[k] for k in lens)):
                yield dict(zip(delta, words))


def _decorated_graphs(budget, catalog):
    """Reduced graphs of groups over the shapes, in enumeration order."""
    for n, slots in _graph_shapes(budget):
        assignments = sorted(
            itertools.product(catalog, repeat=n),
            key=lambda tup: (sum(t.order for t in tup),
                             tuple(t.name for t in tup)),
        )
        for vertex_tables in assignments:
            per_slot = []
            for i, j in slots:
                cap = min(vertex_tables[i].order, vertex_tables[j].order)
                options = []
                for t in catalog:
                    if t.order > cap:
                        continue
                    for into_i in all_monomorphisms(t, vertex_tables[i]):
                        for into_j in all_monomorphisms(t, vertex_tables[j]):
                            options.append((t, into_i.map, into_j.map))
                per_slot.append(options)
            for decor in itertools.product(*per_slot):
                vertices = [(f"P{i}", vertex_tables[i]) for i in range(n)]
                edges = []
                pairs = []
                for k, ((i, j), (t, mi, mj)) in enumerate(zip(slots, decor)):
                    y, ybar = f"y{k}", f"y{k}bar"
                    edges.append((y, ybar, f"P{i}", f"P{j}"))
                    edges.append((ybar, y, f"P{j}", f"P{i}"))
                    pairs.append((y, ybar, t, mi, mj))
                try:
                    gog = GraphOfGroups(vertices, edges, pairs)
                except IllFormed:
                    continue
                if is_reduced_gog(gog)[0]:
                    yield gog


def enumerate_candidates(budget: SynthBudget, sigma):
    """Deterministic stream of (gog, images) pairs within the budget."""
    for gog in _decorated_graphs(budget, budget.catalog):
        for images in _image_assignments(
            gog.delta, tuple(sigma), budget.max_image_length
        ):
            yield gog, images


def synthesize(group, budget: SynthBudget, strict=False):
    """First (gog, verified hom) the enumeration yields, else None.

    With strict=True an exhausted budget raises BudgetExhausted carrying
    the number of candidates tried.
    """
    if isinstance(group, VfPresentation):
        target = presentation_target(group)
    elif isinstance(group, Grammar):
        target = grammar_target(group)
    else:
        raise TypeError(f"cannot synthesize against {type(group).__name__}")
    tried = 0
    for gog, images in enumerate_candidates(budget, target.sigma):
        tried += 1
        h = GogHom(gog, images, target)
        if verify(h, gog.vertex_order[0]).ok:
            return gog, h
    if strict:
        raise BudgetExhausted(tried)
    return None
