"""Ground truth: exact odd-coloring search, k-tree generators and the (k+2) probe."""

from __future__ import annotations

import enum
import itertools
import json
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Iterator

import networkx as nx

from ._parity import ParityTracker
from .graph import AdditionOrdering, Coloring, Graph, build_graph, _ordering_from


class Status(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    BUDGET_EXCEEDED = "budget"


INFEASIBLE = Status.INFEASIBLE
BUDGET_EXCEEDED = Status.BUDGET_EXCEEDED


@dataclass(frozen=True)
class SearchConfig:
    max_colors: int = 12
    node_budget: int | None = None
    symmetry_breaking: bool = True


@dataclass(frozen=True)
class GenSpec:
    n: int
    k: int
    seed: int = 0
    attachment_bias: float = 0.5
    shuffle: bool = True

    def __post_init__(self):
        if self.k < 1 or self.n < self.k + 1:
            raise ValueError(f"need k >= 1 and n >= k+1 (got n={self.n}, k={self.k})")
        if not 0.0 <= self.attachment_bias <= 1.0:
            raise ValueError("attachment_bias must lie in [0, 1]")


# --------------------------------------------------------------------------
# exact search


def _greedy_clique(g: Graph) -> list[int]:
    if g.n == 0:
        return []
    start = max(range(g.n), key=lambda v: (g.degree(v), -v))
    clique = [start]
    cands = set(g.adj[start])
    while cands:
        v = max(cands, key=lambda x: (len(cands & g.nbrs[x]), -x))
        clique.append(v)
        cands &= g.nbrs[v]
    return clique


def search_order(g: Graph, seed_clique: list[int]) -> list[int]:
    """Seed clique first, then repeatedly the vertex with most colored neighbors."""
    placed = set(seed_clique)
    order = list(seed_clique)
    back = [0] * g.n
    for v in seed_clique:
        for w in g.adj[v]:
            back[w] += 1
    rest = set(range(g.n)) - placed
    while rest:
        v = max(rest, key=lambda x: (back[x], g.degree(x), -x))
        rest.discard(v)
        order.append(v)
        for w in g.adj[v]:
            back[w] += 1
    return order


@dataclass
class SearchStats:
    nodes: int = 0


def exists_odd_coloring(
    g: Graph, c: int, cfg: SearchConfig | None = None, stats: SearchStats | None = None
) -> Coloring | Status:
    """Depth-first search for an odd coloring using colors 1..c.

    A vertex whose whole neighborhood is colored must already have an odd
    class; the last neighbor to be colored is only offered colors that keep
    it so. Returns a Coloring, INFEASIBLE, or BUDGET_EXCEEDED.
    """
    cfg = cfg or SearchConfig(max_colors=c)
    stats = stats if stats is not None else SearchStats()
    if g.n == 0:
        return Coloring((), max(c, 1))
    if c < 1:
        return INFEASIBLE
    clique = _greedy_clique(g) if cfg.symmetry_breaking else []
    if len(clique) > c:
        return INFEASIBLE
    order = search_order(g, clique)
    tr = ParityTracker(g.adj)
    left = [g.degree(v) for v in range(g.n)]
    pinned = len(clique)

    def ok_after(v: int, col: int) -> bool:
        for w in g.adj[v]:
            if left[w] == 1 and not tr.would_witness(w, col):
                return False
        return True

    def put(v: int, col: int) -> None:
        tr.assign(v, col)
        for w in g.adj[v]:
            left[w] -= 1

    def take(v: int) -> None:
        tr.unassign(v)
        for w in g.adj[v]:
            left[w] += 1

    for i, v in enumerate(clique):
        if not ok_after(v, i + 1):
            for u in reversed(clique[:i]):
                take(u)
            return INFEASIBLE
        put(v, i + 1)
    top = [0] * (g.n + 1)  # highest color used among order[:i]
    top[pinned] = pinned

    def candidates(i: int) -> list[int]:
        v = order[i]
        hi = min(c, top[i] + 1) if cfg.symmetry_breaking else c
        return [col for col in range(1, hi + 1) if tr.is_proper_choice(v, col) and ok_after(v, col)]

    if pinned == g.n:
        return Coloring(tuple(tr.color[v] for v in range(g.n)), c)
    stack: list[list[int]] = [candidates(pinned)]
    i = pinned
    budget = cfg.node_budget
    while stack:
        opts = stack[-1]
        v = order[i]
        if v in tr.color:
            take(v)
        if not opts:
            stack.pop()
            i -= 1
            continue
        col = opts.pop(0)
        stats.nodes += 1
        if budget is not None and stats.nodes > budget:
            return BUDGET_EXCEEDED
        put(v, col)
        top[i + 1] = max(top[i], col)
        if i + 1 == g.n:
            return Coloring(tuple(tr.color[x] for x in range(g.n)), c)
        i += 1
        stack.append(candidates(i))
    return INFEASIBLE


@dataclass(frozen=True)
class ExactResult:
    """Odd chromatic number, or an interval when the budget ran out."""

    lower: int
    upper: int | None
    witness: Coloring | None

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    @property
    def value(self) -> int | None:
        return self.lower if self.exact else None


def odd_chromatic_exact(g: Graph, cfg: SearchConfig | None = None) -> ExactResult:
    cfg = cfg or SearchConfig()
    if g.n == 0:
        return ExactResult(0, 0, Coloring((), 1))
    lo = max(1, len(_greedy_clique(g)))
    unresolved = False
    for c in range(lo, cfg.max_colors + 1):
        res = exists_odd_coloring(g, c, cfg)
        if isinstance(res, Coloring):
            return ExactResult(lo, c, res)
        if res is BUDGET_EXCEEDED:
            unresolved = True
        elif not unresolved:
            lo = c + 1
    return ExactResult(lo, None, None)


# --------------------------------------------------------------------------
# generators


def random_ktree(spec: GenSpec) -> tuple[Graph, AdditionOrdering]:
    """Random k-tree grown by attaching each new vertex to a recorded k-clique.

    Clique index is floor(L * u ** ((1 - b) / b)) over the L cliques so far,
    so b = 0.5 is uniform, larger b favors recent cliques (long and thin),
    smaller b favors old ones (bushy).
    """
    rng = random.Random(spec.seed)
    n, k, b = spec.n, spec.k, spec.attachment_bias
    cliques = [tuple(x for x in range(k + 1) if x != y) for y in range(k + 1)]
    back: list[tuple[int, ...]] = []
    for v in range(k + 1, n):
        L = len(cliques)
        u = rng.random()
        if b <= 0.0:
            idx = 0
        elif b >= 1.0:
            idx = L - 1
        else:
            idx = min(L - 1, int(L * u ** ((1.0 - b) / b)))
        q = cliques[idx]
        back.append(q)
        for i in range(k):
            cliques.append(q[:i] + q[i + 1 :] + (v,))
    label = list(range(n))
    if spec.shuffle:
        rng.shuffle(label)
    edges = [(label[a], label[c]) for a in range(k + 1) for c in range(a + 1, k + 1)]
    for i, q in enumerate(back):
        v = k + 1 + i
        edges.extend((label[v], label[w]) for w in q)
    g = build_graph(n, edges)
    return g, _ordering_from(g, label, k)


def _k_cliques(g: Graph, k: int) -> list[tuple[int, ...]]:
    out = set()
    for q in nx.find_cliques(to_networkx(g)):
        if len(q) >= k:
            for sub in itertools.combinations(sorted(q), k):
                out.add(sub)
    return sorted(out)


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(to_networkx(g), header=False).decode().strip()


def from_graph6(s: str) -> Graph:
    h = nx.from_graph6_bytes(s.encode())
    return build_graph(h.number_of_nodes(), h.edges())


def enumerate_small_ktrees(n: int, k: int) -> Iterator[Graph]:
    """All k-trees on n vertices, one per isomorphism class.

    Grown level by level from K_{k+1}; each level is deduplicated with a
    Weisfeiler-Lehman hash bucket followed by an exact isomorphism test.
    """
    if n < k + 1:
        return
    level = [build_graph(k + 1, itertools.combinations(range(k + 1), 2))]
    for m in range(k + 2, n + 1):
        buckets: dict[str, list[nx.Graph]] = {}
        nxt: list[Graph] = []
        for g in level:
            for q in _k_cliques(g, k):
                h = build_graph(m, g.edges() + [(m - 1, w) for w in q])
                hn = to_networkx(h)
                key = nx.weisfeiler_lehman_graph_hash(hn, iterations=3)
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(hn, other) for other in bucket):
                    continue
                bucket.append(hn)
                nxt.append(h)
        level = nxt
    yield from level


# --------------------------------------------------------------------------
# conjecture probe


@dataclass
class ProbeEntry:
    n: int
    graph6: str
    status: str
    nodes: int
    seed: int | None = None


@dataclass
class ProbeReport:
    k: int
    palette: int
    mode: str
    entries: list[ProbeEntry] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def counterexamples(self) -> list[ProbeEntry]:
        return [e for e in self.entries if e.status == Status.INFEASIBLE.value]

    @property
    def unresolved(self) -> list[ProbeEntry]:
        return [e for e in self.entries if e.status == Status.BUDGET_EXCEEDED.value]

    def summary(self) -> str:
        return (
            f"k={self.k} palette={self.palette} mode={self.mode} instances={len(self.entries)} "
            f"counterexamples={len(self.counterexamples)} budget_exceeded={len(self.unresolved)}"
        )

    def to_json(self) -> str:
        d = asdict(self)
        d["counterexamples"] = [asdict(e) for e in self.counterexamples]
        d["summary"] = self.summary()
        return json.dumps(d, indent=1, sort_keys=True)


def probe_conjecture(
    k: int,
    n_max: int,
    trials: int | None = None,
    cfg: SearchConfig | None = None,
    seed: int = 0,
    n_min: int | None = None,
) -> ProbeReport:
    """Look for k-trees with no odd (k+2)-coloring.

    With ``trials`` unset every k-tree up to isomorphism with n <= n_max is
    checked; otherwise ``trials`` random k-trees per order are sampled.
    Infeasible instances are reported with their graph6 string.
    """
    cfg = cfg or SearchConfig(max_colors=k + 2)
    palette = k + 2
    report = ProbeReport(k, palette, "exhaustive" if trials is None else "sampled")
    t0 = time.perf_counter()
    lo = n_min if n_min is not None else k + 1
    for n in range(lo, n_max + 1):
        if trials is None:
            items = [(g, None) for g in enumerate_small_ktrees(n, k)]
        else:
            items = [
                (random_ktree(GenSpec(n, k, seed=seed * 100003 + n * 1009 + t))[0], seed * 100003 + n * 1009 + t)
                for t in range(trials)
            ]
        for g, s in items:
            st = SearchStats()
            res = exists_odd_coloring(g, palette, cfg, st)
            status = Status.FEASIBLE.value if isinstance(res, Coloring) else res.value
            report.entries.append(ProbeEntry(g.n, graph6(g), status, st.nodes, s))
    report.seconds = time.perf_counter() - t0
    return report
