"""Finite groups as explicit multiplication tables.

Elements are the integers 0..n-1 and index 0 is always the identity;
input files must conform.  Subgroups are passed around as explicit
element subsets (frozensets), matching how edge-group images live inside
vertex groups elsewhere in the package.  All algorithms are exhaustive —
orders stay small (double digits) in every intended use.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence


class TableError(ValueError):
    """A candidate multiplication table is not a group."""


class NoIdentity(TableError):
    def __init__(self, row: int):
        self.row = row
        super().__init__(f"index 0 is not an identity (first violating row/column: {row})")


class NotCancellative(TableError):
    def __init__(self, kind: str, index: int):
        self.kind = kind
        self.index = index
        super().__init__(f"{kind} {index} is not a permutation of the elements")


class NotAssociative(TableError):
    def __init__(self, a: int, b: int, c: int):
        self.triple = (a, b, c)
        super().__init__(f"(a*b)*c != a*(b*c) for (a,b,c) = ({a},{b},{c})")


class NotASubgroup(ValueError):
    def __init__(self, which: str, detail: str):
        self.which = which
        super().__init__(f"{which} is not a subgroup: {detail}")


@dataclass(frozen=True)
class GroupTable:
    """A validated finite group: ``table[a][b]`` is the product a*b."""

    table: tuple[tuple[int, ...], ...]
    name: str = "G"

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.table[a].index(0)

    def elements(self) -> range:
        return range(len(self.table))

    def order_of(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def element_orders(self) -> tuple[int, ...]:
        return tuple(sorted(self.order_of(a) for a in self.elements()))

    def conjugate(self, g: int, a: int) -> int:
        """g^-1 * a * g."""
        return self.mul(self.mul(self.inv(g), a), g)

    def __repr__(self) -> str:
        return f"GroupTable({self.name}, order={self.order})"


def validate_table(candidate: Sequence[Sequence[int]], name: str = "G") -> GroupTable:
    """Check that ``candidate`` is a group table with identity at index 0.

    Raises NoIdentity / NotCancellative / NotAssociative with the first
    violating row or triple, or a plain ValueError for shape problems.
    """
    n = len(candidate)
    if n == 0:
        raise ValueError("empty table")
    rows = []
    for row in candidate:
        if len(row) != n:
            raise ValueError(f"table is not square: row of length {len(row)} in a {n}-element table")
        for v in row:
            if not (0 <= int(v) < n):
                raise ValueError(f"entry {v} out of range [0,{n})")
        rows.append(tuple(int(v) for v in row))
    table = tuple(rows)

    for a in range(n):
        if table[0][a] != a or table[a][0] != a:
            raise NoIdentity(a)
    everything = frozenset(range(n))
    for a in range(n):
        if frozenset(table[a]) != everything:
            raise NotCancellative("row", a)
        if frozenset(table[b][a] for b in range(n)) != everything:
            raise NotCancellative("column", a)
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            row_a = table[a]
            for c in range(n):
                if table[ab][c] != row_a[table[b][c]]:
                    raise NotAssociative(a, b, c)
    return GroupTable(table, name)


def is_subgroup(g: GroupTable, subset: frozenset[int]) -> Optional[str]:
    """None if ``subset`` is a subgroup of g, else a description of why not."""
    if not all(0 <= a < g.order for a in subset):
        return "contains out-of-range elements"
    if 0 not in subset:
        return "missing the identity"
    for a in subset:
        if g.inv(a) not in subset:
            return f"not closed under inversion (element {a})"
        for b in subset:
            if g.mul(a, b) not in subset:
                return f"not closed under multiplication ({a}*{b})"
    return None


def subgroup_generated(g: GroupTable, gens: Sequence[int]) -> frozenset[int]:
    seen = {0}
    frontier = [0]
    while frontier:
        a = frontier.pop()
        for x in gens:
            b = g.mul(a, x)
            if b not in seen:
                seen.add(b)
                frontier.append(b)
    return frozenset(seen)


def is_subgroup_conjugate_into(
    g: GroupTable, a_set: frozenset[int], b_set: frozenset[int]
) -> Optional[int]:
    """Some c with c^-1 * a_set * c contained in b_set, or None.

    Exhaustive over all elements of g, in index order (so the identity is
    returned whenever a_set is already inside b_set).
    """
    for which, subset in (("a_set", a_set), ("b_set", b_set)):
        problem = is_subgroup(g, subset)
        if problem is not None:
            raise NotASubgroup(which, problem)
    for c in g.elements():
        if all(g.conjugate(c, a) in b_set for a in a_set):
            return c
    return None


@dataclass(frozen=True)
class GroupInjection:
    """An injective homomorphism between group tables, as an index map."""

    source: GroupTable
    target: GroupTable
    map: tuple[int, ...]

    def check(self) -> None:
        m = self.map
        if len(m) != self.source.order:
            raise ValueError("map length != source order")
        if m[0] != 0:
            raise ValueError("map does not fix the identity")
        if len(set(m)) != len(m):
            raise ValueError("map is not injective")
        for a in self.source.elements():
            for b in self.source.elements():
                if m[self.source.mul(a, b)] != self.target.mul(m[a], m[b]):
                    raise ValueError(f"not a homomorphism at ({a},{b})")

    def apply(self, a: int) -> int:
        return self.map[a]

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def is_bijective(self) -> bool:
        return len(self.map) == self.target.order


def _generating_sequence(g: GroupTable) -> list[int]:
    """A short generating sequence, greedily: keep adjoining the least
    element outside the closure so far."""
    gens: list[int] = []
    closure = frozenset({0})
    while len(closure) < g.order:
        a = min(set(g.elements()) - closure)
        gens.append(a)
        closure = subgroup_generated(g, gens)
    return gens


def _close_map(g1: GroupTable, g2: GroupTable, gens: list[int], images: list[int]) -> Optional[list[int]]:
    """Extend generator images to a full homomorphism g1 -> g2 by closure.

    Returns the full map as a list indexed by g1 elements, or None if the
    images are inconsistent.  The returned map is a homomorphism whenever
    it is total (closure defines every product consistently).
    """
    m: dict[int, int] = {0: 0}
    for a, b in zip(gens, images):
        if m.get(a, b) != b:
            return None
        m[a] = b
    frontier = list(m)
    while frontier:
        a = frontier.pop()
        for x, y in zip(gens, images):
            ax = g1.mul(a, x)
            img = g2.mul(m[a], y)
            if ax in m:
                if m[ax] != img:
                    return None
            else:
                m[ax] = img
                frontier.append(ax)
    if len(m) != g1.order:
        return None  # gens did not generate (cannot happen for _generating_sequence)
    full = [m[a] for a in g1.elements()]
    # closure guarantees consistency on products by generators only; do the
    # full quadratic check to be safe at these sizes.
    for a in g1.elements():
        for b in g1.elements():
            if full[g1.mul(a, b)] != g2.mul(full[a], full[b]):
                return None
    return full


def all_monomorphisms(g1: GroupTable, g2: GroupTable) -> Iterator[GroupInjection]:
    """All injective homomorphisms g1 -> g2, in a deterministic order."""
    if g2.order % g1.order != 0:
        return
    gens = _generating_sequence(g1)
    candidates = []
    for x in gens:
        ox = g1.order_of(x)
        candidates.append([y for y in g2.elements() if g2.order_of(y) == ox])
    for images in itertools.product(*candidates):
        full = _close_map(g1, g2, gens, list(images))
        if full is not None and len(set(full)) == g1.order:
            yield GroupInjection(g1, g2, tuple(full))


def all_isomorphisms(g1: GroupTable, g2: GroupTable) -> Iterator[GroupInjection]:
    if g1.order != g2.order or g1.element_orders() != g2.element_orders():
        return
    yield from all_monomorphisms(g1, g2)


def find_isomorphism(g1: GroupTable, g2: GroupTable) -> Optional[GroupInjection]:
    """A bijective homomorphism g1 -> g2, or None.

    Exhaustive over generator images, pruned by element orders.
    """
    return next(all_isomorphisms(g1, g2), None)


# Factories for the handful of families the tests and synthesis catalogs use.

def trivial() -> GroupTable:
    return GroupTable(((0,),), "1")


def cyclic(n: int) -> GroupTable:
    if n < 1:
        raise ValueError("n must be >= 1")
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return GroupTable(table, f"Z/{n}" if n > 1 else "1")


def dihedral(n: int) -> GroupTable:
    """Symmetries of the regular n-gon (order 2n), n >= 2.

    Element 2i is rotation by i, element 2i+1 is the reflection r^i s.
    """
    if n < 2:
        raise ValueError("n must be >= 2")

    def code(rot: int, ref: int) -> int:
        return 2 * (rot % n) + ref

    table = []
    for a in range(2 * n):
        i, e = divmod(a, 2)
        row = []
        for b in range(2 * n):
            j, f = divmod(b, 2)
            # (r^i s^e)(r^j s^f): s r^j = r^-j s
            rot = (i + j) % n if e == 0 else (i - j) % n
            row.append(code(rot, e ^ f))
        table.append(tuple(row))
    return GroupTable(tuple(table), f"D{n}")


def direct_product(g1: GroupTable, g2: GroupTable) -> GroupTable:
    n1, n2 = g1.order, g2.order
    table = []
    for a in range(n1 * n2):
        a1, a2 = divmod(a, n2)
        row = []
        for b in range(n1 * n2):
            b1, b2 = divmod(b, n2)
            row.append(g1.mul(a1, b1) * n2 + g2.mul(a2, b2))
        table.append(tuple(row))
    return GroupTable(tuple(table), f"{g1.name}x{g2.name}")
