"""Incremental per-vertex color-class parity bookkeeping for partial colorings."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import InternalInvariantError, RecipeFailure


class ParityTracker:
    """Partial coloring on an adjacency map with O(deg) assign/unassign.

    For each vertex we keep the multiset of colors on its colored neighbors
    and the set of colors that currently occur an odd number of times.
    """

    def __init__(self, adj: Mapping[int, Iterable[int]] | Sequence[Iterable[int]]):
        items = adj.items() if isinstance(adj, Mapping) else enumerate(adj)
        self.adj: dict[int, tuple[int, ...]] = {v: tuple(ns) for v, ns in items}
        self.color: dict[int, int] = {}
        self.counts: dict[int, dict[int, int]] = {v: {} for v in self.adj}
        self.odd: dict[int, set[int]] = {v: set() for v in self.adj}

    def _bump(self, w: int, c: int, delta: int) -> None:
        cnt = self.counts[w]
        new = cnt.get(c, 0) + delta
        if new:
            cnt[c] = new
        else:
            del cnt[c]
        if new % 2:
            self.odd[w].add(c)
        else:
            self.odd[w].discard(c)

    def assign(self, v: int, c: int) -> None:
        if v in self.color:
            raise InternalInvariantError(f"vertex {v} already colored")
        self.color[v] = c
        for w in self.adj[v]:
            self._bump(w, c, 1)

    def unassign(self, v: int) -> None:
        c = self.color.pop(v)
        for w in self.adj[v]:
            self._bump(w, c, -1)

    def load(self, colors: Mapping[int, int]) -> None:
        for v, c in colors.items():
            self.assign(v, c)

    def witnessed(self, v: int) -> bool:
        return bool(self.odd[v])

    def count(self, v: int, c: int) -> int:
        return self.counts[v].get(c, 0)

    def used_around(self, v: int) -> set[int]:
        return set(self.counts[v])

    def is_proper_choice(self, v: int, c: int) -> bool:
        return self.counts[v].get(c, 0) == 0

    def forbidden_by(self, x: int) -> int | None:
        """The one color whose addition to N(x) would leave x unwitnessed.

        Returns None when no single new neighbor color can break x.
        """
        odd = self.odd[x]
        if len(odd) == 1:
            return next(iter(odd))
        return None

    def would_witness(self, x: int, c: int) -> bool:
        """Whether x stays/becomes witnessed after one more neighbor of color c."""
        odd = self.odd[x]
        if c in odd:
            return len(odd) > 1
        return True

    def choose(
        self,
        v: int,
        candidates: Iterable[int],
        fix: Iterable[int] = (),
        what: str = "",
    ) -> int:
        """Assign the smallest proper candidate that leaves every vertex of ``fix`` witnessed."""
        fix = tuple(fix)
        near = set(self.adj[v])
        if any(x not in near for x in fix):
            raise InternalInvariantError(f"vertex {v} cannot influence non-neighbors {fix}")
        for c in sorted(candidates):
            if not self.is_proper_choice(v, c):
                continue
            if all(self.would_witness(x, c) for x in fix):
                self.assign(v, c)
                return c
        raise RecipeFailure(f"no valid color for vertex {v} {what}".rstrip())

    def snapshot(self) -> dict[int, int]:
        return dict(self.color)
