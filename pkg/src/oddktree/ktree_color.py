"""Odd (k + 2*floor(log2 k) + 3)-coloring of k-trees for k >= 7.

One good addition ordering drives the whole reduction. Each vertex after the
base clique hangs below its latest back-neighbor, and the interior of the
branch at a position is exactly that vertex's subtree. Removing a subtree
keeps the rest of the ordering valid (and good), so the heavy branches of
successive levels are found in a single descending scan.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ._parity import ParityTracker
from .errors import InternalInvariantError, KTooSmallError
from .graph import AdditionOrdering, Coloring, Graph, good_addition_ordering


def log_rounds(k: int) -> int:
    """r = floor(log2 k) + 1."""
    return k.bit_length()


def ktree_palette(k: int) -> int:
    return k + 2 * log_rounds(k) + 1


@dataclass
class ReductionFrame:
    """One heavy-branch step, filled in while the coloring is replayed."""

    t: int
    W: tuple[int, ...]
    interior: tuple[int, ...]
    r: int
    U: tuple[int, ...] = ()
    W0: tuple[int, ...] = ()
    Wbar: tuple[int, ...] = ()
    sigma: dict[int, int] = field(default_factory=dict)
    C: tuple[int, ...] = ()
    halving: tuple[tuple[int, ...], ...] = ()
    colors: dict[int, int] = field(default_factory=dict)
    permutation: tuple[int, ...] = ()

    def problems(self) -> list[str]:
        """Violations of the injection and halving-chain properties."""
        out = []
        targets = list(self.sigma.values())
        if len(set(targets)) != len(targets):
            out.append("sigma is not injective")
        if set(self.sigma) != set(self.Wbar):
            out.append("sigma domain differs from W-bar")
        if len(self.Wbar) > self.r:
            out.append("|W-bar| exceeds r")
        if len(self.halving) != self.r + 1:
            out.append("halving chain has the wrong length")
        for i in range(1, len(self.halving)):
            if not set(self.halving[i]) <= set(self.halving[i - 1]):
                out.append(f"W_{i} is not contained in W_{i - 1}")
            if len(self.halving[i]) > len(self.halving[i - 1]) // 2:
                out.append(f"|W_{i}| exceeds half of |W_{i - 1}|")
        if self.halving and self.halving[-1]:
            out.append("W_r is not empty")
        return out

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "W": list(self.W),
            "Wbar": list(self.Wbar),
            "sigma": {str(w): u for w, u in self.sigma.items()},
            "C": list(self.C),
            "halving": [list(h) for h in self.halving],
            "colors": {str(v): c for v, c in self.colors.items()},
            "permutation": list(self.permutation),
        }


def _tree(ao: AdditionOrdering) -> list[int | None]:
    """Parent of each vertex: its latest back-neighbor (None for the base clique)."""
    pos = ao.position
    parent: list[int | None] = [None] * len(ao.order)
    for i in range(ao.k + 1, len(ao.order)):
        parent[ao.order[i]] = max(ao.back_cliques[i], key=pos.__getitem__)
    return parent


def select_heavy_branch(g: Graph, ordering: AdditionOrdering, k: int, r: int) -> int:
    """Largest 0-based position t >= k whose branch has at least k + r + 1 vertices."""
    parent = _tree(ordering)
    size = {v: 1 for v in ordering.order}
    for i in range(len(ordering.order) - 1, ordering.k, -1):
        v = ordering.order[i]
        size[parent[v]] += size[v]
    for i in range(len(ordering.order) - 1, k - 1, -1):
        if size[ordering.order[i]] >= r + 1:
            return i
    raise InternalInvariantError("no heavy branch exists")


def build_injection(nb, Wbar: Sequence[int], U: Sequence[int]) -> dict[int, int]:
    """Map each w to the first u_j (1-based along U) not adjacent to it."""
    sigma: dict[int, int] = {}
    hit: dict[int, int] = {}
    for w in Wbar:
        j = next((i for i, u in enumerate(U) if w not in nb[u]), None)
        if j is None:
            raise InternalInvariantError(f"{w} is adjacent to all of U but is not in W0")
        if U[j] in hit:
            raise InternalInvariantError(f"sigma collision at {U[j]} for {hit[U[j]]} and {w}")
        hit[U[j]] = w
        sigma[w] = U[j]
    return sigma


def halving_assignment(
    tracker: ParityTracker, U: Sequence[int], W0: Sequence[int], reserved: Sequence[int], spare: Sequence[int]
) -> list[tuple[int, ...]]:
    """Color U so every vertex of W0 ends with an odd class among ``reserved``.

    ``reserved[i]`` is c_{i+1}; ``spare[i]`` is the alternative color for
    u_{i+1}. Ties keep the odd side and assign the reserved color.
    """
    chain = [tuple(W0)]
    cur = list(W0)
    for u, c, alt in zip(U, reserved, spare):
        odd = [w for w in cur if tracker.count(w, c) % 2]
        even = [w for w in cur if not tracker.count(w, c) % 2]
        if len(odd) <= len(even):
            col, cur = c, odd
        else:
            col, cur = alt, even
        if not tracker.is_proper_choice(u, col):
            raise InternalInvariantError(f"halving color {col} clashes at {u}")
        tracker.assign(u, col)
        chain.append(tuple(cur))
    return chain


def choose_color_avoiding(
    tracker: ParityTracker, v: int, candidates, constrained: Sequence[int]
) -> int:
    """Smallest proper candidate that keeps every constrained neighbor witnessed."""
    try:
        return tracker.choose(v, candidates, constrained)
    except InternalInvariantError as exc:
        raise InternalInvariantError(f"color counting failed at {v}: {exc}") from exc


def color_ktree(g: Graph, k: int, trace: list | None = None) -> Coloring:
    """Odd coloring with at most k + 2*floor(log2 k) + 3 colors (k >= 7)."""
    if k < 7:
        raise KTooSmallError(f"k={k}; this construction needs k >= 7")
    ao = good_addition_ordering(g, k)
    r = log_rounds(k)
    palette = k + 2 * r + 1
    order = ao.order
    n = g.n
    parent = _tree(ao)
    children: dict[int, list[int]] = {v: [] for v in order}
    size = {v: 1 for v in order}
    for i in range(n - 1, k, -1):
        v = order[i]
        children[parent[v]].append(v)
        size[parent[v]] += size[v]

    removed = [False] * n
    alive = n
    frames: list[ReductionFrame] = []
    j = n - 1
    while alive > palette:
        if j < k:
            raise InternalInvariantError("scan ran past the base clique")
        v = order[j]
        if not removed[v] and size[v] >= r + 1:
            sub = []
            stack = [v]
            while stack:
                x = stack.pop()
                if removed[x]:
                    continue
                sub.append(x)
                stack.extend(children[x])
            pos = ao.position
            sub.sort(key=pos.__getitem__)
            W = ao.back_cliques[j] if j > k else frozenset(order[:k])
            frames.append(ReductionFrame(j, tuple(sorted(W)), tuple(sub), r))
            for x in sub:
                removed[x] = True
            alive -= len(sub)
            p = parent[v]
            while p is not None:
                size[p] -= len(sub)
                p = parent[p]
        j -= 1

    tracker = ParityTracker(g.adj)
    base = [v for v in order if not removed[v]]
    for c, v in enumerate(base, start=1):
        tracker.assign(v, c)

    nb = g.nbrs
    for fr in reversed(frames):
        _replay(tracker, nb, fr, k, r, palette)
    if trace is not None:
        trace.extend(reversed(frames))
    return Coloring(tuple(tracker.color[v] for v in range(n)), palette)


def _replay(tracker: ParityTracker, nb, fr: ReductionFrame, k: int, r: int, palette: int) -> None:
    seq = fr.interior
    if len(seq) < r + 1:
        raise InternalInvariantError("heavy branch is too small")
    U = seq[1 : r + 1]
    u0 = seq[0]
    W = fr.W
    W0 = tuple(w for w in W if all(w in nb[u] for u in U))
    Wbar = tuple(w for w in W if w not in W0)
    sigma = build_injection(nb, Wbar, U)

    canon_w = list(Wbar) + list(W0)
    wcolors = [tracker.color[w] for w in canon_w]
    rest = sorted(set(range(1, palette + 1)) - set(wcolors))
    perm = wcolors + rest  # perm[c - 1] is the actual color of canonical c
    inv = {u: canon_w.index(w) + 1 for w, u in sigma.items()}
    reserved = [perm[inv[u] - 1] if u in inv else perm[k + i - 1] for i, u in enumerate(U, start=1)]
    spare = [perm[k + r + i - 1] for i in range(1, r + 1)]
    C = set(reserved)

    chain = halving_assignment(tracker, U, W0, reserved, spare)
    allowed = [c for c in range(1, palette + 1) if c not in C]
    choose_color_avoiding(tracker, u0, allowed, Wbar)
    wset = set(W)
    for u in seq[r + 1 :]:
        constrained = [x for x in nb[u] if x == u0 or x in wset]
        choose_color_avoiding(tracker, u, allowed, constrained)

    for u in seq[1:]:
        d = sum(tracker.counts[u].values())
        if d >= 2 * k:
            raise InternalInvariantError(f"interior vertex {u} has degree {d} >= 2k")
    for x in list(W) + list(seq):
        if not tracker.witnessed(x):
            raise InternalInvariantError(f"vertex {x} left without a witness")

    fr.U, fr.W0, fr.Wbar, fr.sigma = tuple(U), W0, Wbar, sigma
    fr.C = tuple(reserved)
    fr.halving = tuple(chain)
    fr.colors = {v: tracker.color[v] for v in seq}
    fr.permutation = tuple(perm)
    bad = fr.problems()
    if bad:
        raise InternalInvariantError("; ".join(bad))
