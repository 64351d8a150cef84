"""Odd 4-coloring of 2-trees.

The graph is reduced one configuration at a time: a good hat if there is
one, otherwise an H- or T-family member found by degree-2 peeling. The
reductions are then replayed in reverse, each extending the coloring of the
smaller graph with a fixed recipe. Recipes are written against canonical
colors 1..4 where the root of the configuration gets 1 and 2; the actual
colors are whatever the smaller graph assigned.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations

from ._parity import ParityTracker
from ._reduce import UNDISPATCHED, Ext, Frame, LocalView, delete_interior, load_partial, near, replay_frame, snapshot
from .branch import (
    DOUBLE_HAT,
    EAR2,
    H2,
    HAT,
    SPECIAL_2,
    T2,
    ConfigMatch,
    is_excluded_h,
    match_h,
    match_special,
    match_t,
    relabel,
)
from .errors import CaseDispatchExhausted, InternalInvariantError, TooSmallError
from .graph import Coloring, Graph, recognize_ktree

PALETTE = 4

GOOD_HAT = "GOOD_HAT"
H100 = "H100"
H101_OR_H002 = "H101_OR_H002"
T200 = "T200"
T_B = "T_B>=1"
T_C = "T_C>=1"


# --------------------------------------------------------------------------
# finding configurations


def _good_hat_at(nb, x: int) -> ConfigMatch | None:
    """A hat with apex x whose first root vertex has degree 4 or odd degree."""
    if len(nb[x]) != 4:
        return None
    ns = sorted(nb[x])
    if sum(len(nb[y]) == 2 for y in ns) < 2:
        return None
    for a, b in combinations(ns, 2):
        if b not in nb[a]:
            continue
        m = match_special(nb, (HAT,), (a, b), x)
        if m is None:
            continue
        for v in m.root:
            d = len(nb[v])
            if d == 4 or d % 2:
                return relabel(nb, m, (v,))
    return None


def find_good_hat(nb, known_bad: set[int] | None = None) -> ConfigMatch | None:
    """Good hat with the smallest apex; apexes in ``known_bad`` are skipped and failures added."""
    # the apex of a hat is adjacent to a degree-2 vertex
    cands = {x for v in nb if len(nb[v]) == 2 for x in nb[v] if len(nb[x]) == 4}
    if known_bad is not None:
        cands -= known_bad
    for x in sorted(cands):
        m = _good_hat_at(nb, x)
        if m is not None:
            return m
        if known_bad is not None:
            known_bad.add(x)
    return None


def _t_on_root(nb, root: tuple[int, int], apexes) -> ConfigMatch | None:
    for u, w in combinations(sorted(apexes), 2):
        m = match_t(nb, root, u, w, SPECIAL_2)
        if isinstance(m, ConfigMatch):
            return m
    return None


def scan_2tree(nb) -> ConfigMatch | None:
    """Exhaustive search for a non-hat, non-double-hat H- or T-family member."""
    for a in sorted(nb):
        for b in sorted(nb[a]):
            if b < a:
                continue
            common = sorted(nb[a] & nb[b])
            for x in common:
                m = match_h(nb, (a, b), x, SPECIAL_2)
                if isinstance(m, ConfigMatch) and not is_excluded_h(m, nb):
                    return m
            t = _t_on_root(nb, (a, b), common)
            if t is not None:
                return t
    return None


def peeling_levels(nb, degree: int = 2, depth: int = 3) -> list[set[int]]:
    """V_0..V_depth: repeatedly peel the vertices of the given residual degree.

    When exactly ``degree`` vertices remain they form the last level; fewer
    remaining vertices give empty levels.
    """
    rest = set(nb)
    levels = []
    for i in range(depth + 1):
        if i > 0 and len(rest) == degree:
            lvl = set(rest)
        elif i > 0 and len(rest) < degree:
            lvl = set()
        else:
            lvl = {v for v in rest if sum(1 for w in nb[v] if w in rest) == degree}
        levels.append(lvl)
        rest -= lvl
    return levels


def find_unavoidable_2tree(nb) -> ConfigMatch:
    """Non-hat, non-double-hat member of the H- or T-family of a 2-tree."""
    if isinstance(nb, Graph):
        nb = {v: set(s) for v, s in enumerate(nb.nbrs)}
    if len(nb) < 4:
        raise TooSmallError("need at least 4 vertices")
    peeled: set[int] = set()
    rest = set(nb)
    lvl: set[int] = set()
    via = "scan"
    for i in range(4):
        if i > 0:
            if len(rest) == 2:
                a, b = sorted(rest)
                t = _t_on_root(nb, (a, b), nb[a] & nb[b] & peeled)
                if t is not None:
                    return _with_via(t, f"level{i}-root")
                break
            if not rest:
                # the levels used up the graph; its shape is fixed and a small search settles it
                via = f"level{i}-exhausted"
                break
        if i == 0:
            lvl = {v for v in rest if len(nb[v]) == 2}
        else:
            # residual degrees only drop next to the previous level
            near = {w for v in lvl for w in nb[v] if w in rest}
            lvl = {v for v in near if sum(1 for w in nb[v] if w in rest) == 2}
        if i > 0:
            for v in sorted(lvl):
                xy = [w for w in nb[v] if w in rest]
                if len(xy) != 2:
                    continue
                side = [len(peeled & nb[v] & nb[w]) for w in xy]
                x, y = (xy[0], xy[1]) if (side[0], -xy[0]) >= (side[1], -xy[1]) else (xy[1], xy[0])
                dup = [u for u in sorted(peeled & nb[v] & nb[x]) if {w for w in nb[u] if w in rest} == {v, x}]
                if len(dup) >= 2:
                    t = _t_on_root(nb, (v, x), dup)
                    if t is not None:
                        return _with_via(t, f"level{i}-pair")
                m = match_h(nb, (x, y), v, SPECIAL_2)
                if isinstance(m, ConfigMatch) and not is_excluded_h(m, nb):
                    return _with_via(m, f"level{i}")
        peeled |= lvl
        rest -= lvl
    m = scan_2tree(nb)
    if m is not None:
        return _with_via(m, via)
    raise InternalInvariantError("no unavoidable configuration found")


def _with_via(m: ConfigMatch, via: str) -> ConfigMatch:
    return ConfigMatch(m.kind, m.labels, m.root, m.abc, m.parts, via)


def case_of(m: ConfigMatch) -> str:
    if m.kind == HAT:
        return GOOD_HAT
    if m.kind == H2:
        if m.abc == (1, 0, 0):
            return H100
        if m.abc in ((1, 0, 1), (0, 0, 2)):
            return H101_OR_H002
        raise CaseDispatchExhausted(f"H2{m.abc} always contains a good hat")
    if m.kind == T2:
        if m.abc == (2, 0, 0):
            return T200
        if m.abc[1] >= 1:
            return T_B
        return T_C
    raise CaseDispatchExhausted(f"unexpected configuration {m.kind}")


# --------------------------------------------------------------------------
# extension recipes


class _Ext(Ext):
    def pick(self, v: int, options, fix: int) -> int:
        return self.tr.choose(v, options, (fix,))

    def near_odd(self, m: ConfigMatch, spare: int) -> None:
        """Extend over an ear, hat or double hat; all but ``spare`` end witnessed."""
        m = relabel(self.view, m, (spare,))
        L = m.label
        c = self.canon(L["v1"], L["v2"])
        if m.kind == EAR2:
            self.pick(L["u0"], (c[3], c[4]), L["v2"])
        elif m.kind == HAT:
            self.put(L["u0"], c[3])
            self.pick(L["u2"], (c[1], c[4]), L["v2"])
            self.pick(L["u1"], (c[2], c[4]), L["u0"])
        elif m.kind == DOUBLE_HAT:
            self.put(L["u0"], c[3])
            self.put(L["u1"], c[4])
            self.put(L["u2"], c[4])
            self.pick(L["u6"], (c[1], c[3]), L["v2"])
            self.pick(L["u5"], (c[1], c[2]), L["u2"])
            self.pick(L["u4"], (c[1], c[2]), L["u0"])
            self.pick(L["u3"], (c[2], c[3]), L["u1"])
        else:
            raise InternalInvariantError(f"{m.kind} is not a special branch")


def _sides(m: ConfigMatch) -> tuple[int, int, ConfigMatch | None, ConfigMatch | None]:
    return m.root[0], m.root[1], m.parts[0], m.parts[1]


def apply_case(ext: _Ext, fr: Frame) -> None:
    tag, m, view = fr.tag, fr.match, ext.view
    if tag == GOOD_HAT:
        L = m.label
        v1 = L["v1"]
        ext.notes["branch"] = "odd-degree" if len(view[v1]) % 2 else "degree-4"
        if len(view[v1]) % 2:
            ext.near_odd(m, v1)
            return
        c = ext.canon(v1, L["v2"])
        ext.put(L["u0"], c[3])
        ext.put(L["u1"], c[4])
        ext.pick(L["u2"], (c[1], c[4]), L["v2"])
        return
    if tag == H100:
        v1, v2, s1, s2 = _sides(m)
        if s1 is None:
            v1, v2, s1, s2 = v2, v1, s2, s1
        u0, u1 = m["u0"], s1["u0"]
        c = ext.canon(v1, v2)
        ext.pick(u0, (c[3], c[4]), v2)
        ext.pick(u1, (c[2], c[3], c[4]), v1)
        return
    if tag == H101_OR_H002:
        v1, v2, s1, s2 = _sides(m)
        if s1 is None or s1.kind != DOUBLE_HAT:
            v1, v2, s1, s2 = v2, v1, s2, s1
        u0 = m["u0"]
        d = relabel(view, s1, (v1, u0)).label
        u1, u3, u4, u5, u6 = d["u0"], d["u1"], d["u2"], d["u3"], d["u4"]
        c = ext.canon(v1, v2)
        ext.put(u1, c[2])
        ext.put(u3, c[3])
        ext.put(u5, c[4])
        ext.pick(u0, (c[3], c[4]), v1)
        ext.near_odd(s2, u0)
        hat = match_special(view, (HAT,), (u1, u0), u4)
        ext.near_odd(hat, u1)
        ear = match_special(view, (EAR2,), (u3, u1), u6)
        ext.near_odd(ear, u3)
        return
    if tag == T200:
        c = ext.canon(*m.root)
        ext.put(m["u0"], c[3])
        ext.put(m["w0"], c[3])
        return
    if tag in (T_B, T_C):
        want = HAT if tag == T_B else DOUBLE_HAT
        b1, b2 = m.parts
        if b1.kind != want:
            b1, b2 = b2, b1
        v1, v2 = m.root
        L = relabel(view, b1, (v1,)).label
        c = ext.canon(v1, v2)
        if tag == T_B:
            ext.put(L["u0"], c[3])
            ext.put(L["u1"], c[4])
            ext.near_odd(b2, v2)
            ext.pick(L["u2"], (c[1], c[4]), v2)
        else:
            ext.put(L["u0"], c[3])
            ext.put(L["u1"], c[4])
            ext.put(L["u3"], c[2])
            ext.near_odd(b2, v2)
            inner = match_special(view, (HAT,), (L["u0"], v2), L["u2"])
            ext.near_odd(inner, L["u0"])
            ext.pick(L["u4"], (c[1], c[2]), L["u0"])
        return
    raise CaseDispatchExhausted(f"no recipe for {tag}")


def extend_near_odd_2tree(g: Graph, b: ConfigMatch, partial) -> Coloring:
    """Extend a coloring of g minus the interior of an ear, hat or double hat.

    ``partial`` maps every vertex outside the branch interior to its color
    (a mapping, a sequence with 0 for the interior, or a Coloring whose
    interior entries are ignored). Every vertex except possibly b's v1
    ends witnessed.
    """
    if b.kind not in SPECIAL_2:
        raise ValueError(f"{b.kind} is not an ear, hat or double hat")
    tr = load_partial(g, b.interior(), partial)
    view = LocalView({v: g.nbrs[v] for v in b.vertices()})
    _Ext(tr, view, PALETTE).near_odd(b, b["v1"])
    return Coloring(tuple(tr.color[v] for v in range(g.n)), PALETTE)


# --------------------------------------------------------------------------
# driver


def reduce_2tree(g: Graph, stats: Counter | None = None) -> tuple[list[Frame], list[int]]:
    """Reduction frames (in removal order) and the vertices left at the end."""
    R: dict[int, set[int]] = g.adjacency_sets()
    frames: list[Frame] = []
    bad: set[int] = set()
    while len(R) >= 5:
        m = find_good_hat(R, bad)
        if m is None:
            m = find_unavoidable_2tree(R)
            if stats is not None:
                stats[f"via:{m.via.split('-')[0]}"] += 1
        try:
            tag = case_of(m)
        except CaseDispatchExhausted:
            tag = UNDISPATCHED
        if stats is not None:
            stats[tag] += 1
        frames.append(Frame(tag, m, snapshot(R, m.vertices())))
        bad -= near(R, m.interior(), 2)
        delete_interior(R, m.interior())
    return frames, sorted(R)


def color_2tree(g: Graph, trace: list | None = None, stats: Counter | None = None) -> Coloring:
    """Odd coloring of a 2-tree with at most 4 colors."""
    recognize_ktree(g, 2)
    frames, base = reduce_2tree(g, stats)
    tr = ParityTracker(g.adj)
    for c, v in enumerate(base, start=1):
        tr.assign(v, c)
    for fr in reversed(frames):
        replay_frame(tr, fr, PALETTE, _Ext, apply_case, stats)
    if trace is not None:
        trace.extend(reversed(frames))
    return Coloring(tuple(tr.color[v] for v in range(g.n)), PALETTE)
