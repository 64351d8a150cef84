"""Shared machinery for the configuration-reduction colorers (2- and 3-trees)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

from ._parity import ParityTracker
from .branch import ConfigMatch
from .errors import InternalInvariantError

UNDISPATCHED = "UNDISPATCHED"


class LocalView(dict):
    """Neighbor sets frozen at reduction time; unknown vertices look isolated."""

    def __missing__(self, key):
        return frozenset()


@dataclass
class Frame:
    tag: str
    match: ConfigMatch
    view: LocalView
    spare: tuple[int, ...] = ()
    colors: dict[int, int] = field(default_factory=dict)
    fallback: bool = False
    notes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "tag": self.tag,
            "match": self.match.to_dict(),
            "colors": {str(v): c for v, c in sorted(self.colors.items())},
            "fallback": self.fallback,
        }
        if self.spare:
            d["spare"] = list(self.spare)
        if self.notes:
            d["notes"] = {k: list(v) if isinstance(v, tuple) else v for k, v in self.notes.items()}
        return d


class Ext:
    """Recipe helper: canonical colors plus checked assignments."""

    def __init__(self, tr: ParityTracker, view, palette: int):
        self.tr = tr
        self.view = view
        self.palette = palette
        self.notes: dict = {}

    def color(self, v: int) -> int:
        return self.tr.color[v]

    def canon(self, *fixed: int) -> list[int]:
        """Index c -> actual color of canonical c; ``fixed`` get 1, 2, ... in order."""
        first = [self.tr.color[v] for v in fixed]
        return [0] + first + [c for c in range(1, self.palette + 1) if c not in first]

    def put(self, v: int, c: int) -> None:
        if not self.tr.is_proper_choice(v, c):
            raise InternalInvariantError(f"color {c} is not proper at {v}")
        self.tr.assign(v, c)

    def pick(self, v: int, options, *fix: int) -> int:
        return self.tr.choose(v, options, fix)

    def even(self, v: int, c: int) -> bool:
        return self.tr.count(v, c) % 2 == 0


def exhaustive_extend(tr: ParityTracker, interior: list[int], check: list[int], palette: int) -> bool:
    """Backtracking completion of ``interior``; every vertex of ``check`` must end witnessed."""
    check_set = set(check)

    def go(i: int) -> bool:
        if i == len(interior):
            return all(tr.witnessed(x) for x in check)
        v = interior[i]
        for c in range(1, palette + 1):
            if not tr.is_proper_choice(v, c):
                continue
            tr.assign(v, c)
            # A checked vertex whose last region neighbor was just colored must be witnessed.
            dead = any(
                x in check_set and not tr.witnessed(x) and all(y in tr.color for y in tr.adj[x])
                for x in tr.adj[v]
            )
            if not dead and go(i + 1):
                return True
            tr.unassign(v)
        return False

    return go(0)


def replay_frame(
    tr: ParityTracker,
    fr: Frame,
    palette: int,
    ext_cls: type[Ext],
    apply: Callable[[Ext, Frame], None],
    stats: Counter | None = None,
) -> None:
    """Extend over one frame with its recipe, falling back to search if it misfires."""
    interior = sorted(fr.match.interior())
    region = sorted(fr.match.vertices())
    ok = False
    if fr.tag != UNDISPATCHED:
        ext = ext_cls(tr, fr.view, palette)
        try:
            apply(ext, fr)
            fr.notes = ext.notes
            ok = all(tr.witnessed(x) for x in region) and all(v in tr.color for v in interior)
        except InternalInvariantError:
            ok = False
    if not ok:
        for v in interior:
            if v in tr.color:
                tr.unassign(v)
        if not exhaustive_extend(tr, interior, region, palette):
            raise InternalInvariantError(f"no extension exists for {fr.tag}")
        fr.fallback = True
        if stats is not None:
            stats["fallback"] += 1
    fr.colors = {v: tr.color[v] for v in interior}


def delete_interior(R: dict[int, set[int]], vertices) -> None:
    for v in vertices:
        for w in R.pop(v):
            if w in R:
                R[w].discard(v)


def snapshot(R: dict[int, set[int]], vertices) -> LocalView:
    return LocalView({v: frozenset(R[v]) for v in vertices})


def near(R: dict[int, set[int]], vertices, radius: int) -> set[int]:
    """Vertices within ``radius`` of ``vertices`` in R."""
    out = set(vertices)
    frontier = set(vertices)
    for _ in range(radius):
        frontier = {w for v in frontier for w in R[v]} - out
        out |= frontier
    return out


def load_partial(g, inside: set[int], partial) -> ParityTracker:
    """Tracker holding ``partial`` on every vertex outside ``inside``."""
    colors = getattr(partial, "colors", partial)
    items = enumerate(colors) if isinstance(colors, (tuple, list)) else colors.items()
    tr = ParityTracker(g.adj)
    for v, c in items:
        if v not in inside and c:
            tr.assign(v, c)
    missing = [v for v in range(g.n) if v not in inside and v not in tr.color]
    if missing:
        raise ValueError(f"partial coloring misses vertices outside the branch: {missing[:5]}")
    return tr
