"""Desk-scale Cayley-graph laboratory.

Finite balls of the Cayley graph on the scan alphabet, prefix cuts and
their edge/vertex boundaries, the components outside a ball, and
k-triangulations of closed vertex sequences.  Everything here works on a
finite window B(r) onto the (usually infinite) graph; the operations
either certify that the window was large enough or refuse loudly.

Vertices are normal-form words (tuples over sigma); the identity is the
empty tuple.  Edges are directed (g, a, nf(g a)) triples and come in
involution pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .vfpres import (
    IDENTITY,
    NormalForm,
    VfPresentation,
    format_word,
    inverse_letter,
    is_freely_reduced,
    normal_form,
    _as_word,
)
from . import scankernel

Word = tuple

DEFAULT_CAP = 50_000


class ExplosionGuard(RuntimeError):
    """Ball construction hit the vertex cap before reaching the radius."""

    def __init__(self, radius, cap):
        super().__init__(f"ball of radius {radius} exceeds {cap} vertices")
        self.radius = radius
        self.cap = cap


class NotStabilized(RuntimeError):
    """Boundary still growing at the verification radius; increase r."""

    def __init__(self, radius):
        super().__init__(f"cut boundary not stabilized at radius {radius}")
        self.radius = radius


class NotATree(ValueError):
    pass


class StepTooLong(ValueError):
    def __init__(self, index, dist, k):
        super().__init__(f"step {index} has length {dist} > {k}")
        self.index = index


class VertexOutsideBall(ValueError):
    def __init__(self, vertex):
        super().__init__(f"vertex {format_word(vertex)} is outside the ball")
        self.vertex = vertex


# ---------------------------------------------------------------------------
# balls


class Ball:
    """B(r): every group element at distance <= r from 1, plus all edges
    between them.  `vertices` is in BFS discovery order; `distance` maps a
    vertex word to its exact word length |g| w.r.t. sigma."""

    def __init__(self, radius, sigma, vertices, distance, edges):
        self.radius = radius
        self.sigma = sigma
        self.vertices = vertices
        self.distance = distance
        self.edges = edges
        adj: dict = {v: [] for v in vertices}
        for g, _a, h in edges:
            adj[g].append(h)
        # collapse parallel edges for path purposes, keep discovery order
        self._adj = {g: tuple(dict.fromkeys(ns)) for g, ns in adj.items()}
        self._bfs_cache: dict = {}

    def __contains__(self, w):
        return tuple(w) in self.distance

    def __len__(self):
        return len(self.vertices)

    def sphere(self, d):
        return tuple(v for v in self.vertices if self.distance[v] == d)

    def neighbors(self, g):
        return self._adj[tuple(g)]

    def distances_from(self, g):
        """BFS distances within the ball (>= the true graph distance when a
        geodesic leaves the window)."""
        g = tuple(g)
        if g not in self.distance:
            raise VertexOutsideBall(g)
        if g not in self._bfs_cache:
            dist = {g: 0}
            frontier = [g]
            while frontier:
                nxt = []
                for u in frontier:
                    for v in self._adj[u]:
                        if v not in dist:
                            dist[v] = dist[u] + 1
                            nxt.append(v)
                frontier = nxt
            self._bfs_cache[g] = dist
        return self._bfs_cache[g]

    def dist_between(self, g, h):
        h = tuple(h)
        d = self.distances_from(g)
        if h not in self.distance:
            raise VertexOutsideBall(h)
        return d.get(h, float("inf"))

    def diameter_of(self, ws):
        """Max pairwise in-ball distance over a vertex set (inf if the set
        is split across the window)."""
        ws = [tuple(w) for w in ws]
        best = 0
        for i, g in enumerate(ws):
            d = self.distances_from(g)
            for h in ws[i + 1 :]:
                best = max(best, d.get(h, float("inf")))
        return best


def _state_word(scan, stk, rep_i) -> Word:
    free = scan.decode(stk)
    rep = scan.reps[rep_i]
    return free if rep == IDENTITY else free + (rep,)


def build_ball(p: VfPresentation, r: int, cap: int = DEFAULT_CAP) -> Ball:
    """Exact BFS ball of radius r around the identity."""
    if r < 0:
        raise ValueError("radius must be >= 0")
    res = scankernel.ball_states(p, r, cap)
    if res is None:
        raise ExplosionGuard(r, cap)
    states, dist, edges = res
    words = tuple(_state_word(p._scan, stk, rep) for stk, rep in states)
    distance = {w: d for w, d in zip(words, dist)}
    out = tuple((words[u], p.sigma[c], words[v]) for u, c, v in edges)
    return Ball(r, p.sigma, words, distance, out)


# ---------------------------------------------------------------------------
# prefix cuts and boundaries


@dataclass(frozen=True)
class PrefixCut:
    """C_x = { y s : s a rep, x a prefix of y }, for x a freely reduced
    nonempty word over the free letters."""

    x: Word

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        if not self.x:
            raise ValueError("prefix must be nonempty")
        if not is_freely_reduced(self.x):
            raise ValueError("prefix must be freely reduced")

    def contains(self, nf: NormalForm) -> bool:
        return nf.free_part[: len(self.x)] == self.x

    def __str__(self):
        return f"C[{format_word(self.x)}]"


def prefix_cut(p: VfPresentation, x) -> PrefixCut:
    x = _as_word(x)
    bad = [a for a in x if a not in p.x_letters]
    if bad:
        raise ValueError(f"prefix letter {bad[0]!r} is not a free letter of p")
    return PrefixCut(x)


@dataclass(frozen=True)
class CutReport:
    """Certified directed edge boundary of a prefix cut.

    dedges lists every (g, a, h) with g in C and h = nf(g a) outside C;
    inner is the inner vertex boundary (the sources), beta the two-sided
    vertex boundary restricted to B(r)."""

    cut: PrefixCut
    radius: int
    dedges: tuple
    inner: frozenset
    beta: frozenset

    @property
    def weight(self) -> int:
        return len(self.dedges)


def cut_boundary(p: VfPresentation, c: PrefixCut, r: int, cap: int = DEFAULT_CAP) -> CutReport:
    """Compute the full boundary of C_x, certifying completeness by
    stabilization: the boundary collected from sources in B(r-1) must equal
    the one from B(r).  Sources of boundary edges have normal forms of
    length at most |x| + (longest rule word) + 1, so once r is past that
    horizon a stable layer cannot regrow further out."""
    if r < 1:
        raise NotStabilized(r)
    ball = build_ball(p, r, cap)
    memb: dict = {}

    def in_cut(w):
        if w not in memb:
            memb[w] = c.contains(normal_form(p, w))
        return memb[w]

    def layer(rho):
        found = set()
        for g in ball.vertices:
            if ball.distance[g] > rho or not in_cut(g):
                continue
            for a in p.sigma:
                h = normal_form(p, g + (a,)).as_word()
                if not in_cut(h):
                    found.add((g, a, h))
        return found

    full = layer(r)
    if layer(r - 1) != full:
        raise NotStabilized(r)
    dedges = tuple(sorted(full, key=lambda e: (ball.distance[e[0]], e)))
    inner = frozenset(g for g, _a, _h in full)
    beta = inner | frozenset(h for _g, _a, h in full if h in ball.distance)
    return CutReport(c, r, dedges, inner, beta)


_NESTINGS = {
    "equal": "C1 = C2",
    "c2 in c1": "C2 ⊆ C1",
    "c1 in c2": "C1 ⊆ C2",
    "disjoint": "C1 ⊆ complement of C2",
}


def cuts_nested(c1: PrefixCut, c2: PrefixCut) -> str:
    """Which of the four nesting inclusions holds.  Prefix cuts are always
    nested: C_y is contained in C_x exactly when x is a prefix of y, and
    two prefix-incomparable cuts are disjoint (their members' free parts
    diverge before either prefix ends)."""
    x, y = c1.x, c2.x
    if x == y:
        return "equal"
    if y[: len(x)] == x:
        return "c2 in c1"
    if x[: len(y)] == y:
        return "c1 in c2"
    return "disjoint"


# ---------------------------------------------------------------------------
# components outside a ball


@dataclass(frozen=True)
class ComponentCut:
    """A component of the graph minus B(r), seen inside the window
    B(r+probe) and touching its outer sphere."""

    vertices: tuple
    boundary: tuple  # inner vertex boundary: component vertices adjacent to B(r)
    diam: float = field(compare=False)


def component_cuts(p: VfPresentation, r: int, probe: int, cap: int = DEFAULT_CAP):
    """Components of the graph beyond the open ball {d < r}, within the
    window B(r+probe); each component contains its sphere-r seeds.

    Only components that reach the outer sphere are reported (the bounded
    leftovers, if any, are window artifacts).  Each comes with its inner
    vertex boundary, which is exact: a window vertex adjacent to the core
    is boundary no matter how the component continues outside, and a
    vertex at depth r+probe cannot neighbour the core at all.  diam is
    measured by BFS inside the full window, an upper bound on the graph
    distance."""
    if probe < 1:
        raise ValueError("probe must be >= 1")
    window = build_ball(p, r + probe, cap)
    core = {v for v in window.vertices if window.distance[v] < r}
    ring = [v for v in window.vertices if v not in core]
    ringset = set(ring)
    seen: set = set()
    out = []
    for seed in ring:
        if seed in seen:
            continue
        comp = [seed]
        seen.add(seed)
        i = 0
        while i < len(comp):
            for n in window.neighbors(comp[i]):
                if n in ringset and n not in seen:
                    seen.add(n)
                    comp.append(n)
            i += 1
        if not any(window.distance[v] == r + probe for v in comp):
            continue
        boundary = tuple(
            sorted(
                (v for v in comp if any(n in core for n in window.neighbors(v))),
                key=lambda w: (window.distance[w], w),
            )
        )
        out.append(
            ComponentCut(
                vertices=tuple(sorted(comp, key=lambda w: (window.distance[w], w))),
                boundary=boundary,
                diam=window.diameter_of(boundary),
            )
        )
    out.sort(key=lambda c: c.vertices[:1])
    return out


# ---------------------------------------------------------------------------
# k-triangulations of closed sequences


def _undirected_edge_count(ball: Ball) -> int:
    # each undirected edge appears as an involution pair of directed ones
    return len(ball.edges) // 2


def is_tree(ball: Ball) -> bool:
    return _undirected_edge_count(ball) == len(ball) - 1


def _seq_words(ball: Ball, seq):
    words = [_as_word(w) for w in seq]
    for w in words:
        if w not in ball.distance:
            raise VertexOutsideBall(w)
    return words


def triangulate_tree_sequence(ball: Ball, seq, k: int):
    """Triangulate the closed sequence v_0 ... v_n = v_0 (consecutive
    vertices at distance <= k) by repeatedly removing a vertex farthest
    from v_0 and joining its polygon neighbours by a chord.  On a tree the
    chord between the neighbours of a farthest vertex again has length
    <= k, so the procedure never degrades the step bound.

    Returns the chords as (i, j) index pairs into the polygon v_0..v_{n-1}.
    """
    if not is_tree(ball):
        raise NotATree("the ball is not a tree")
    words = _seq_words(ball, seq)
    if len(words) < 2 or words[0] != words[-1]:
        raise ValueError("sequence must be closed (v_0 = v_n)")
    n = len(words) - 1
    for i in range(n):
        d = ball.dist_between(words[i], words[i + 1])
        if d > k:
            raise StepTooLong(i, d, k)
    if n < 3:
        return []
    dist0 = {j: ball.dist_between(words[j], words[0]) for j in range(n)}
    live = list(range(n))
    chords = []
    while len(live) > 3:
        pick = max(live, key=lambda j: (dist0[j], -j))
        pos = live.index(pick)
        a = live[pos - 1]
        b = live[(pos + 1) % len(live)]
        d = ball.dist_between(words[a], words[b])
        assert d <= k, "farthest-vertex removal left a long chord on a tree"
        chords.append((min(a, b), max(a, b)))
        live.remove(pick)
    return chords


def check_triangulation(ball: Ball, seq, chords, k: int) -> bool:
    """Is `chords` a k-triangulation of the closed sequence?  Checks that
    the chords are genuine pairwise non-crossing diagonals, that there are
    n-3 of them (which forces all faces to be triangles), and that each
    chord's endpoints are at ball distance <= k."""
    words = _seq_words(ball, seq)
    if len(words) < 2 or words[0] != words[-1]:
        return False
    n = len(words) - 1
    norm = sorted({(min(i, j), max(i, j)) for i, j in chords})
    if len(norm) != len(chords):
        return False
    if n < 3:
        return norm == []
    if len(norm) != n - 3:
        return False
    for i, j in norm:
        if not (0 <= i < j <= n - 1):
            return False
        if j - i == 1 or (i == 0 and j == n - 1):
            return False  # polygon side, not a diagonal
        if ball.dist_between(words[i], words[j]) > k:
            return False
    for a, b in norm:
        for c, d in norm:
            if a < c < b < d:
                return False
    return True


def search_triangulation(ball: Ball, seq, k: int, max_n: int = 8):
    """Exhaustive k-triangulation search for small polygons (n <= max_n):
    walks every triangulation of the convex n-gon and returns the first
    whose chords all satisfy the distance bound, or None."""
    words = _seq_words(ball, seq)
    if len(words) < 2 or words[0] != words[-1]:
        raise ValueError("sequence must be closed (v_0 = v_n)")
    n = len(words) - 1
    if n < 3:
        return []
    if n > max_n:
        raise ValueError(f"exhaustive search is capped at n = {max_n}")

    def interval(i, j):
        # chord sets triangulating the sub-polygon i, i+1, ..., j
        if j - i < 2:
            yield ()
            return
        for m in range(i + 1, j):
            here = ()
            if m - i >= 2:
                here += ((i, m),)
            if j - m >= 2:
                here += ((m, j),)
            for left in interval(i, m):
                for right in interval(m, j):
                    yield here + left + right

    for chords in interval(0, n - 1):
        fits = all(ball.dist_between(words[i], words[j]) <= k for i, j in chords)
        if fits:
            return sorted(chords)
    return None


# ---------------------------------------------------------------------------
# output


def to_dot(ball: Ball, name: str = "ball") -> str:
    """Undirected DOT text; one line per involution pair of edges, so
    parallel generators show up as parallel lines."""
    lines = [f'graph "{name}" {{']
    for v in ball.vertices:
        lines.append(f'  "{format_word(v)}" [dist={ball.distance[v]}];')
    seen = set()
    for g, a, h in ball.edges:
        key = tuple(sorted([(g, a), (h, inverse_letter(a))]))
        if key in seen:
            continue
        seen.add(key)
        lines.append(f'  "{format_word(g)}" -- "{format_word(h)}" [label="{a}"];')
    lines.append("}")
    return "\n".join(lines)
