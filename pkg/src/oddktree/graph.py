"""Graphs, k-tree recognition, addition orderings and the odd-coloring verifier."""

from __future__ import annotations

import heapq
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    InternalInvariantError,
    NotKTreeError,
    NotProperError,
    OutOfRangeError,
    SelfLoopError,
    TooSmallError,
)

FAIL = "FAIL"
EXEMPT = "EXEMPT"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the strictly increasing tuple of neighbors of ``v``; two
    graphs compare equal iff they have the same vertex count and edge set.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    duplicates_collapsed: bool = field(default=False, compare=False)

    @cached_property
    def nbrs(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbrs[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        nb = self.nbrs
        return all(vs[j] in nb[vs[i]] for i in range(len(vs)) for j in range(i + 1, len(vs)))

    def adjacency_sets(self) -> dict[int, set[int]]:
        """Mutable copy of the adjacency, for algorithms that delete vertices."""
        return {v: set(a) for v, a in enumerate(self.adj)}

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph relabelled to ``0..len-1``; returns it with the old ids."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        edges = [(index[u], index[w]) for u in old for w in self.adj[u] if w in index and u < w]
        return build_graph(len(old), edges), old


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Build the canonical graph on ``n`` vertices from an edge list.

    Duplicate edges (in either orientation) are collapsed; the returned graph
    then has ``duplicates_collapsed`` set and a warning is emitted.
    """
    if n < 0:
        raise OutOfRangeError(f"negative vertex count {n}")
    nb: list[set[int]] = [set() for _ in range(n)]
    dup = False
    for e in edge_list:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRangeError(f"edge ({u}, {v}) has an id outside [0, {n})")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        if v in nb[u]:
            dup = True
            continue
        nb[u].add(v)
        nb[v].add(u)
    if dup:
        warnings.warn("duplicate edges collapsed", stacklevel=2)
    return Graph(n, tuple(tuple(sorted(s)) for s in nb), dup)


def graph_from_sets(adj: dict[int, set[int]] | Sequence[Iterable[int]], n: int | None = None) -> Graph:
    """Graph from an adjacency mapping whose keys are ``0..n-1``."""
    if n is None:
        n = len(adj)
    items = adj.items() if isinstance(adj, dict) else enumerate(adj)
    rows: list[tuple[int, ...]] = [()] * n
    for v, s in items:
        rows[v] = tuple(sorted(s))
    return Graph(n, tuple(rows))


# --------------------------------------------------------------------------
# addition orderings


@dataclass(frozen=True)
class AdditionOrdering:
    """Vertex sequence certifying that a graph is a k-tree.

    ``back_cliques[i]`` is ``N(order[i]) ∩ order[:i]`` for 0-based positions
    ``i >= k + 1`` and ``None`` for the base clique positions.
    """

    order: tuple[int, ...]
    k: int
    back_cliques: tuple[frozenset[int] | None, ...]

    @cached_property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def __len__(self) -> int:
        return len(self.order)


def _ordering_from(g: Graph, order: Sequence[int], k: int) -> AdditionOrdering:
    pos = {v: i for i, v in enumerate(order)}
    back: list[frozenset[int] | None] = []
    for i, v in enumerate(order):
        if i <= k:
            back.append(None)
        else:
            back.append(frozenset(w for w in g.adj[v] if pos[w] < i))
    ao = AdditionOrdering(tuple(order), k, tuple(back))
    check_addition_ordering(g, ao)
    return ao


def check_addition_ordering(g: Graph, ao: AdditionOrdering) -> None:
    """Raise NotKTreeError unless ``ao`` is a valid addition ordering of ``g``."""
    k, order = ao.k, ao.order
    if sorted(order) != list(range(g.n)):
        raise NotKTreeError(k, "ordering is not a permutation of the vertices")
    if len(order) < k + 1:
        raise NotKTreeError(k, "fewer than k+1 vertices")
    pos = ao.position
    if not g.is_clique(order[: k + 1]):
        raise NotKTreeError(k, "first k+1 vertices are not a clique")
    for i in range(k + 1, len(order)):
        v = order[i]
        back = [w for w in g.adj[v] if pos[w] < i]
        if len(back) != k:
            raise NotKTreeError(k, f"vertex {v} at position {i} has {len(back)} earlier neighbors")
        if ao.back_cliques[i] != frozenset(back):
            raise NotKTreeError(k, f"stale back-clique at position {i}")
        if not g.is_clique(back):
            raise NotKTreeError(k, f"earlier neighbors of {v} are not a clique")


def rebuild_from_ordering(ao: AdditionOrdering, n: int | None = None) -> Graph:
    """Replay an ordering: base clique plus each vertex joined to its back-clique."""
    order, k = ao.order, ao.k
    edges = [(order[i], order[j]) for i in range(k + 1) for j in range(i + 1, k + 1)]
    for i in range(k + 1, len(order)):
        edges.extend((order[i], w) for w in ao.back_cliques[i])
    return build_graph(len(order) if n is None else n, edges)


def _is_simplicial(adj: dict[int, set[int]], v: int) -> bool:
    nb = list(adj[v])
    for i, a in enumerate(nb):
        row = adj[a]
        for b in nb[i + 1 :]:
            if b not in row:
                return False
    return True


def _eliminate(g: Graph, k: int, keep: frozenset[int] = frozenset()) -> tuple[list[int], list[int]]:
    """Remove simplicial degree-k vertices (smallest id first) until k+1 remain.

    Vertices in ``keep`` are never removed. Returns (elimination order, residue).
    """
    adj = g.adjacency_sets()
    heap = [v for v in range(g.n) if len(adj[v]) == k and v not in keep]
    heapq.heapify(heap)
    removed: list[int] = []
    alive = g.n
    dead = [False] * g.n
    while alive > k + 1:
        while heap:
            v = heapq.heappop(heap)
            if not dead[v] and len(adj[v]) == k and _is_simplicial(adj, v):
                break
        else:
            raise NotKTreeError(k, f"no simplicial vertex of degree {k} with {alive} vertices left")
        dead[v] = True
        removed.append(v)
        alive -= 1
        for w in adj.pop(v):
            adj[w].discard(v)
            if len(adj[w]) == k and w not in keep:
                heapq.heappush(heap, w)
    return removed, sorted(adj)


def recognize_ktree(g: Graph, k: int) -> AdditionOrdering:
    """Certify that ``g`` is a k-tree; raise NotKTreeError otherwise."""
    if k < 1:
        raise ValueError("k must be positive")
    if g.n < k + 1:
        raise TooSmallError(f"{g.n} vertices cannot form a {k}-tree")
    if g.m != k * (k + 1) // 2 + (g.n - k - 1) * k:
        raise NotKTreeError(k, f"edge count {g.m} does not match")
    removed, residue = _eliminate(g, k)
    if not g.is_clique(residue):
        raise NotKTreeError(k, "residue is not a complete graph")
    return _ordering_from(g, residue + removed[::-1], k)


def is_ktree(g: Graph, k: int) -> bool:
    try:
        recognize_ktree(g, k)
    except (NotKTreeError, TooSmallError):
        return False
    return True


def detect_k(g: Graph) -> int:
    """The unique k for which ``g`` could be a k-tree (from its minimum degree)."""
    if g.n == 0:
        raise TooSmallError("empty graph")
    if g.n == 1:
        raise NotKTreeError(1, "a single vertex is not a k-tree for k >= 1")
    return min(len(a) for a in g.adj)


def good_addition_ordering(g: Graph, k: int) -> AdditionOrdering:
    """Addition ordering whose first vertex has degree exactly k.

    A simplicial degree-k vertex ``s`` is fixed; the other vertices are peeled
    from outside ``N[s]`` and the order is reversed with ``s`` placed first.
    A k-tree on at least k+2 vertices always has two non-adjacent simplicial
    vertices, so the peeling never stalls on a valid input.
    """
    recognize_ktree(g, k)
    if g.n == k + 1:
        return _ordering_from(g, list(range(g.n)), k)
    s = min(v for v in range(g.n) if g.degree(v) == k)
    closed = frozenset(g.adj[s]) | {s}
    try:
        removed, residue = _eliminate(g, k, keep=closed)
    except NotKTreeError as exc:
        raise InternalInvariantError(f"good ordering stalled: {exc.reason}") from exc
    if set(residue) != closed:
        raise InternalInvariantError("good ordering residue differs from N[s]")
    order = [s] + sorted(closed - {s}) + removed[::-1]
    return _ordering_from(g, order, k)


# --------------------------------------------------------------------------
# colorings and verification


@dataclass(frozen=True)
class Coloring:
    """Total map vertex -> color in ``1..palette``."""

    colors: tuple[int, ...]
    palette: int

    def __post_init__(self):
        if any(c < 1 or c > self.palette for c in self.colors):
            raise ValueError(f"colors must lie in [1, {self.palette}]")

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)

    @property
    def used(self) -> int:
        return len(set(self.colors))


@dataclass(frozen=True)
class OddReport:
    """Per-vertex witness color, or ``FAIL`` / ``EXEMPT`` (isolated vertex)."""

    entries: tuple[int | str, ...]

    @property
    def ok(self) -> bool:
        return FAIL not in self.entries

    @property
    def failures(self) -> list[int]:
        return [v for v, e in enumerate(self.entries) if e == FAIL]


def verify_proper(g: Graph, c: Coloring | Sequence[int]) -> tuple[bool, tuple[int, int] | None]:
    colors = c.colors if isinstance(c, Coloring) else c
    if len(colors) != g.n:
        raise ValueError("coloring is not total on the vertex set")
    for u in range(g.n):
        cu = colors[u]
        for v in g.adj[u]:
            if u < v and colors[v] == cu:
                return False, (u, v)
    return True, None


def class_counts(g: Graph, colors: Sequence[int], v: int) -> dict[int, int]:
    counts: dict[int, int] = {}
    for w in g.adj[v]:
        counts[colors[w]] = counts.get(colors[w], 0) + 1
    return counts


def odd_condition_witness(g: Graph, c: Coloring | Sequence[int], v: int) -> int | None:
    """Smallest color appearing an odd number of times around ``v``, or None."""
    colors = c.colors if isinstance(c, Coloring) else c
    counts = class_counts(g, colors, v)
    if sum(counts.values()) != g.degree(v):
        raise InternalInvariantError("degree identity violated")
    odd = [col for col, cnt in counts.items() if cnt % 2]
    return min(odd) if odd else None


def verify_odd(g: Graph, c: Coloring | Sequence[int]) -> OddReport:
    proper, edge = verify_proper(g, c)
    if not proper:
        raise NotProperError(edge)
    entries: list[int | str] = []
    for v in range(g.n):
        if not g.adj[v]:
            entries.append(EXEMPT)
            continue
        w = odd_condition_witness(g, c, v)
        entries.append(FAIL if w is None else w)
    return OddReport(tuple(entries))


def is_odd_coloring(g: Graph, c: Coloring | Sequence[int], max_colors: int | None = None) -> bool:
    colors = c.colors if isinstance(c, Coloring) else c
    if max_colors is not None and max(colors, default=0) > max_colors:
        return False
    if not verify_proper(g, colors)[0]:
        return False
    return verify_odd(g, colors).ok


def lower_bound_construction(k: int) -> tuple[Graph, dict[str, int]]:
    """The k-tree on 2k+1 vertices that has no odd (k+1)-coloring.

    Vertices ``v1..vk`` and ``u0`` form a clique and each ``uj`` (j >= 1) is
    joined to ``u0`` and every ``vi`` with ``i != j``. Returns the graph and a
    role -> id map.
    """
    roles = {f"v{i}": i - 1 for i in range(1, k + 1)}
    roles["u0"] = k
    for j in range(1, k + 1):
        roles[f"u{j}"] = k + j
    clique = [roles[f"v{i}"] for i in range(1, k + 1)] + [roles["u0"]]
    edges = [(a, b) for i, a in enumerate(clique) for b in clique[i + 1 :]]
    for j in range(1, k + 1):
        uj = roles[f"u{j}"]
        edges.append((uj, roles["u0"]))
        edges.extend((uj, roles[f"v{i}"]) for i in range(1, k + 1) if i != j)
    return build_graph(2 * k + 1, edges), roles
