"""Plant configurations on colored host k-trees and replay a single reduction frame."""

from __future__ import annotations

import itertools
import random
from collections import Counter

from oddktree._parity import ParityTracker
from oddktree._reduce import Ext, Frame, replay_frame, snapshot
from oddktree.branch import (
    DOUBLE_HAT,
    EAR2,
    EAR3,
    HAT,
    ONE_HAT,
    ONE_HAT_PLUS,
    SPECIAL_2,
    SPECIAL_3,
    TEMPLATES,
    ConfigMatch,
    is_excluded_h,
    match_h,
    match_t,
)
from oddktree.graph import Graph, graph_from_sets
from oddktree.oracle import GenSpec, random_ktree


def shapes(kinds):
    """(kind, root permutation) pairs giving every distinct placement of a special branch."""
    out = []
    for kind in kinds:
        k = 2 if kind in SPECIAL_2 else 3
        perms = [p for p in itertools.permutations(range(k))]
        if kind in (EAR2, EAR3):
            perms = perms[:1]
        elif kind == ONE_HAT:
            perms = [(0, 1, 2), (0, 2, 1), (1, 2, 0)]
        elif kind in (HAT, DOUBLE_HAT):
            perms = [(0, 1), (1, 0)]
        out.extend((kind, p) for p in perms)
    return out


def add_branch(adj: dict[int, set[int]], kind: str, root: list[int]) -> dict[str, int]:
    """Attach a copy of ``kind`` with template roots v1.. mapped onto ``root``."""
    roles = {f"v{i + 1}": v for i, v in enumerate(root)}
    for role in TEMPLATES[kind]:
        roles[role] = max(adj) + 1
        adj[roles[role]] = set()
    for role, nbrs in TEMPLATES[kind].items():
        for r in nbrs:
            adj[roles[role]].add(roles[r])
            adj[roles[r]].add(roles[role])
    return roles


class Host:
    """A colored random k-tree with one of its k-cliques chosen as the root."""

    def __init__(self, k: int, n: int, seed: int, colorer):
        rng = random.Random(seed)
        g, _ = random_ktree(GenSpec(n, k, seed=seed, attachment_bias=rng.random()))
        self.k = k
        self.coloring = colorer(g).colors
        self.adj = g.adjacency_sets()
        cliques = [q for q in itertools.combinations(range(n), k) if g.is_clique(q)]
        self.root = list(rng.choice(cliques))
        rng.shuffle(self.root)


def plant_h(host: Host, sides) -> tuple[dict, ConfigMatch | None]:
    """Attach an apex on the root plus the given side branches, face by face."""
    adj = {v: set(s) for v, s in host.adj.items()}
    root = host.root
    u0 = max(adj) + 1
    adj[u0] = set()
    for v in root:
        adj[u0].add(v)
        adj[v].add(u0)
    faces = [(root[0],), (root[1],)] if host.k == 2 else [
        (root[0], root[1]), (root[1], root[2]), (root[2], root[0])
    ]
    for face, side in zip(faces, sides):
        if side is None:
            continue
        kind, perm = side
        base = list(face) + [u0]
        add_branch(adj, kind, [base[i] for i in perm])
    specials = SPECIAL_2 if host.k == 2 else SPECIAL_3
    m = match_h(adj, tuple(root), u0, specials)
    if not isinstance(m, ConfigMatch) or is_excluded_h(m, adj):
        return adj, None
    return adj, m


def plant_t(host: Host, first, second) -> tuple[dict, ConfigMatch | None]:
    adj = {v: set(s) for v, s in host.adj.items()}
    apexes = []
    for kind, perm in (first, second):
        roles = add_branch(adj, kind, [host.root[i] for i in perm])
        apexes.append(roles["u0"])
    specials = SPECIAL_2 if host.k == 2 else SPECIAL_3
    m = match_t(adj, tuple(host.root), apexes[0], apexes[1], specials)
    return adj, (m if isinstance(m, ConfigMatch) else None)


def replay_planted(host: Host, adj: dict, m: ConfigMatch, tag: str, ext_cls, apply, palette: int, spare=()) -> Frame:
    """Extend the host coloring over the planted configuration with its recipe."""
    g: Graph = graph_from_sets(adj)
    tr = ParityTracker(g.adj)
    for v, c in enumerate(host.coloring):
        tr.assign(v, c)
    fr = Frame(tag, m, snapshot(adj, m.vertices()), tuple(spare))
    replay_frame(tr, fr, palette, ext_cls, apply, Counter())
    return fr
