"""Odd 5-coloring of 3-trees.

Same shape as the 2-tree colorer: reduce by a good one-hat (or one-hat
plus) when one exists, otherwise by an H- or T-family member found through
degree-3 peeling, then replay the reductions in reverse. Recipes use
canonical colors 1..5: the root triangle gets 1, 2, 3 in the order the
recipe names it, and 4, 5 are the two colors left over.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations, permutations

from ._parity import ParityTracker
from ._reduce import UNDISPATCHED, Ext, Frame, LocalView, delete_interior, load_partial, near, replay_frame, snapshot
from .branch import (
    EAR3,
    H3,
    ONE_HAT,
    ONE_HAT_PLUS,
    SPECIAL_3,
    T3,
    ConfigMatch,
    is_excluded_h,
    match_h,
    match_special,
    match_t,
)
from .errors import CaseDispatchExhausted, InternalInvariantError, RecipeFailure, TooSmallError
from .graph import Coloring, Graph, recognize_ktree

PALETTE = 5

GOOD_HAT = "GOOD_HAT"
H_C = "H_C>=1"
H200 = "H200"
H300 = "H300"
H110 = "H110"
H210 = "H210"
H020 = "H020"
H120_H030 = "H120_OR_H030"
T_C = "T_C>=1"
T200 = "T200"
T110 = "T110"
T020 = "T020"


# --------------------------------------------------------------------------
# finding configurations


def _good_at(nb, x: int) -> tuple[ConfigMatch, int] | None:
    """One-hat or one-hat plus with apex x and a root vertex of degree 4 or odd degree."""
    d = len(nb[x])
    if d not in (4, 6):
        return None
    deg3 = [y for y in nb[x] if len(nb[y]) == 3]
    if d == 4:
        kind = ONE_HAT
        roots = [nb[x] - {y} for y in deg3]
    else:
        kind = ONE_HAT_PLUS
        deg4 = [y for y in nb[x] if len(nb[y]) == 4]
        roots = [nb[x] - {a, b, c} for a in deg4 for b, c in combinations(deg3, 2)]
    for root in roots:
        m = match_special(nb, (kind,), root, x)
        if m is None:
            continue
        for y in m.root:
            dy = len(nb[y])
            if dy == 4 or dy % 2:
                return m, y
    return None


def find_good_hat3(nb, known_bad: set[int] | None = None) -> tuple[ConfigMatch, int] | None:
    """Good one-hat or one-hat plus with the smallest apex, plus its low-degree root vertex."""
    cands = {x for v in nb if len(nb[v]) == 3 for x in nb[v] if len(nb[x]) in (4, 6)}
    if known_bad is not None:
        cands -= known_bad
    for x in sorted(cands):
        hit = _good_at(nb, x)
        if hit is not None:
            return hit
        if known_bad is not None:
            known_bad.add(x)
    return None


def _t_on_root(nb, root: tuple[int, ...], apexes) -> ConfigMatch | None:
    for u, w in combinations(sorted(apexes), 2):
        m = match_t(nb, root, u, w, SPECIAL_3)
        if isinstance(m, ConfigMatch):
            return m
    return None


def _triangles(nb):
    for a in sorted(nb):
        for b in sorted(w for w in nb[a] if w > a):
            for c in sorted(w for w in nb[a] & nb[b] if w > b):
                yield a, b, c


def scan_3tree(nb) -> ConfigMatch | None:
    """Exhaustive search for a non-one-hat, non-one-hat-plus H- or T-family member."""
    for root in _triangles(nb):
        common = sorted(nb[root[0]] & nb[root[1]] & nb[root[2]])
        for x in common:
            m = match_h(nb, root, x, SPECIAL_3)
            if isinstance(m, ConfigMatch) and not is_excluded_h(m, nb):
                return m
        t = _t_on_root(nb, root, common)
        if t is not None:
            return t
    return None


def _with_via(m: ConfigMatch, via: str) -> ConfigMatch:
    return ConfigMatch(m.kind, m.labels, m.root, m.abc, m.parts, via)


def find_unavoidable_3tree(nb) -> ConfigMatch:
    """Non-one-hat, non-one-hat-plus member of the H- or T-family of a 3-tree."""
    if isinstance(nb, Graph):
        nb = {v: set(s) for v, s in enumerate(nb.nbrs)}
    if len(nb) < 5:
        raise TooSmallError("need at least 5 vertices")
    peeled: set[int] = set()
    rest = set(nb)
    lvl: set[int] = set()
    via = "scan"
    for i in range(4):
        if i > 0:
            if len(rest) == 3:
                a, b, c = sorted(rest)
                t = _t_on_root(nb, (a, b, c), nb[a] & nb[b] & nb[c] & peeled)
                if t is not None:
                    return _with_via(t, f"level{i}-root")
                break
            if not rest:
                # the levels used up the graph; its shape is fixed and a small search settles it
                via = f"level{i}-exhausted"
                break
        if i == 0:
            lvl = {v for v in rest if len(nb[v]) == 3}
        else:
            around = {w for v in lvl for w in nb[v] if w in rest}
            lvl = {v for v in around if sum(1 for w in nb[v] if w in rest) == 3}
        if i > 0:
            for v in sorted(lvl):
                found = _at_level_vertex(nb, v, rest, peeled)
                if found is not None:
                    return _with_via(found, f"level{i}")
        peeled |= lvl
        rest -= lvl
    m = scan_3tree(nb)
    if m is not None:
        return _with_via(m, via)
    raise InternalInvariantError("no unavoidable configuration found")


def _at_level_vertex(nb, v: int, rest: set[int], peeled: set[int]) -> ConfigMatch | None:
    xyz = sorted(w for w in nb[v] if w in rest)
    if len(xyz) != 3:
        return None
    below = peeled & nb[v]

    def shared(a: int, b: int) -> int:
        return len(below & nb[a] & nb[b])

    # x, y span the most populated face, and the yz face beats the zx face
    best = max(
        (p for p in permutations(xyz)),
        key=lambda p: (shared(p[0], p[1]), shared(p[1], p[2]), [-q for q in p]),
    )
    x, y, z = best
    dup = [u for u in sorted(below & nb[x] & nb[y]) if {w for w in nb[u] if w not in peeled} == {v, x, y}]
    if len(dup) >= 2:
        t = _t_on_root(nb, (v, x, y), dup)
        if t is not None:
            return _with_via(t, "pair")
    m = match_h(nb, (x, y, z), v, SPECIAL_3)
    if isinstance(m, ConfigMatch) and not is_excluded_h(m, nb):
        return m
    return None


def case_of(m: ConfigMatch) -> str:
    if m.kind in (ONE_HAT, ONE_HAT_PLUS):
        return GOOD_HAT
    if m.kind == H3:
        a, b, c = m.abc
        if c >= 1:
            return H_C
        tag = {(2, 0): H200, (3, 0): H300, (1, 1): H110, (2, 1): H210, (0, 2): H020,
               (1, 2): H120_H030, (0, 3): H120_H030}.get((a, b))
        if tag is None:
            raise CaseDispatchExhausted(f"H3{m.abc} always contains a good one-hat")
        return tag
    if m.kind == T3:
        if m.abc[2] >= 1:
            return T_C
        return {(2, 0, 0): T200, (1, 1, 0): T110, (0, 2, 0): T020}[m.abc]
    raise CaseDispatchExhausted(f"unexpected configuration {m.kind}")


# --------------------------------------------------------------------------
# extension recipes


def _kinds(h: ConfigMatch) -> tuple:
    return tuple(None if p is None else p.kind for p in h.parts)


def _gain(view, p: ConfigMatch | None, x: int) -> int:
    """Interior vertices of side branch p adjacent to x."""
    return 0 if p is None else len(view[x] & p.interior())


def _pair(p: ConfigMatch) -> set[int]:
    """Root vertices of a one-hat adjacent to its hat vertex."""
    return {p["v1"], p["v2"]}


class _Ext3(Ext):
    def orient(self, m: ConfigMatch, want) -> ConfigMatch:
        """Re-match an H-family member with the first root order satisfying ``want``."""
        for perm in permutations(m.root):
            h = match_h(self.view, perm, m["u0"], SPECIAL_3)
            if isinstance(h, ConfigMatch) and want(h):
                self.notes["root"] = h.root
                return h
        raise RecipeFailure(f"no orientation of {m.kind}{m.abc} fits")

    def pick_pair(self, a: int, b: int, options, fix) -> None:
        """First (color of a, color of b) that is proper and leaves ``fix`` witnessed."""
        for ca, cb in options:
            if not self.tr.is_proper_choice(a, ca):
                continue
            self.tr.assign(a, ca)
            if self.tr.is_proper_choice(b, cb) and all(self.tr.would_witness(x, cb) for x in fix):
                self.tr.assign(b, cb)
                return
            self.tr.unassign(a)
        raise RecipeFailure(f"no color pair for {a}, {b}")

    def smallest(self, v: int) -> None:
        self.pick(v, range(1, self.palette + 1))

    def near_odd(self, m: ConfigMatch, spare: tuple[int, ...]) -> None:
        """Extend over an ear, one-hat or one-hat plus.

        Every vertex of the branch ends witnessed except those in ``spare``.
        An ear spares two root vertices; the hats spare only ``spare[0]``.
        """
        L = m.label
        if m.kind == EAR3:
            c = self.canon(*m.root)
            self.pick(L["u0"], (c[4], c[5]), *[v for v in m.root if v not in spare])
        elif m.kind == ONE_HAT:
            s = spare[0]
            if s in _pair(m):
                q = L["v2"] if s == L["v1"] else L["v1"]
                c = self.canon(s, q, L["v3"])
                self.pick(L["u0"], (c[4], c[5]), L["v3"])
                self.pick(L["u1"], (c[3], c[4], c[5]), q)
            elif s == L["v3"]:
                c = self.canon(L["v1"], L["v2"], s)
                self.pick_pair(L["u0"], L["u1"], ((c[4], c[3]), (c[4], c[5]), (c[5], c[3])), (L["v1"], L["v2"]))
            else:
                raise RecipeFailure(f"{s} is not a root vertex")
        elif m.kind == ONE_HAT_PLUS:
            s = spare[0]
            v1, v2, v3, u0 = L["v1"], L["v2"], L["v3"], L["u0"]
            c = self.canon(v1, v2, v3)
            inner = match_special(self.view, (ONE_HAT,), (v1, v2, u0), L["u1"])
            if inner is None:
                raise RecipeFailure("inner one-hat missing")
            self.put(u0, c[4])
            if s in (v1, v2):
                self.pick(L["u2"], (c[1], c[5]), v3)
                self.near_odd(inner, (s,))
            elif s == v3:
                self.put(L["u2"], c[5])
                self.near_odd(inner, (u0,))
            else:
                raise RecipeFailure(f"{s} is not a root vertex")
        else:
            raise InternalInvariantError(f"{m.kind} is not a special branch")


def apply_case(ext: _Ext3, fr: Frame) -> None:
    tag, m, view = fr.tag, fr.match, ext.view
    if tag == GOOD_HAT:
        ext.notes["branch"] = m.kind
        ext.near_odd(m, fr.spare)
    elif tag in _H_RECIPES:
        _H_RECIPES[tag](ext, m, view)
    elif tag in _T_RECIPES:
        _T_RECIPES[tag](ext, m, view)
    else:
        raise CaseDispatchExhausted(f"no recipe for {tag}")


def _h200(ext: _Ext3, m, view) -> None:
    h = ext.orient(m, lambda h: _kinds(h) == (EAR3, EAR3, None))
    v1, v2, v3 = h.root
    u0, u1, u2 = h["u0"], h["u1"], h["u2"]
    c = ext.canon(v1, v2, v3)
    ext.notes["branch"] = next((f"v{i + 1}-even" for i in (1, 0, 2) if ext.even(h.root[i], c[4])), "all-odd")
    if ext.even(v2, c[4]):
        ext.put(u0, c[4])
        ext.pick(u1, (c[3], c[5]), v1)
        ext.pick(u2, (c[1], c[5]), v3)
    elif ext.even(v1, c[4]):
        ext.put(u0, c[4])
        ext.pick(u2, (c[1], c[5]), v3)
        ext.pick(u1, (c[3], c[5]), v2)
    elif ext.even(v3, c[4]):
        ext.put(u0, c[4])
        ext.pick(u1, (c[3], c[5]), v1)
        ext.pick(u2, (c[1], c[5]), v2)
    else:
        ext.put(u0, c[5])
        ext.put(u1, c[3])
        ext.put(u2, c[1])


def _h300(ext: _Ext3, m, view) -> None:
    c = ext.canon(*m.root)
    even = [v for v in m.root if ext.even(v, c[4])]
    ext.notes["branch"] = "rotated" if even else "all-odd"
    if not even:
        ext.put(m["u0"], c[5])
        for role in ("u1", "u2", "u3"):
            ext.put(m[role], c[4])
        return
    h = ext.orient(m, lambda h: h.root[0] == even[0])
    v1, v2, v3 = h.root
    c = ext.canon(v1, v2, v3)
    ext.put(h["u0"], c[4])
    ext.put(h["u1"], c[5])
    ext.pick(h["u2"], (c[1], c[5]), v2)
    ext.pick(h["u3"], (c[2], c[5]), v3)


def _h110(ext: _Ext3, m, view) -> None:
    h = ext.orient(m, lambda h: _kinds(h) == (ONE_HAT, EAR3, None))
    v1, v2, v3 = h.root
    c = ext.canon(v1, v2, v3)
    ext.put(h["u0"], c[4])
    ext.pick(h["u2"], (c[1], c[5]), v3)
    ext.near_odd(h.parts[0], (h["u0"],))


def _h210(ext: _Ext3, m, view) -> None:
    h = ext.orient(m, lambda h: _kinds(h) == (ONE_HAT, EAR3, EAR3))
    v1, v2, v3 = h.root
    c = ext.canon(v1, v2, v3)
    ext.put(h["u0"], c[4])
    ext.put(h["u2"], c[5])
    ext.pick(h["u3"], (c[2], c[5]), v3)
    ext.near_odd(h.parts[0], (h["u0"],))


def _h020(ext: _Ext3, m, view) -> None:
    h = ext.orient(
        m,
        lambda h: _kinds(h) == (ONE_HAT, ONE_HAT, None) and _pair(h.parts[0]) == {h.root[0], h.root[1]},
    )
    v1, v2, v3 = h.root
    b1, b2 = h.parts[0], h.parts[1]
    c = ext.canon(v1, v2, v3)
    ext.put(h["u0"], c[4])
    ext.put(h["u1"], c[5])
    ext.pick(b1["u1"], (c[3], c[4]), v1)
    ext.near_odd(b2, (h["u0"],))


def _h120_h030(ext: _Ext3, m, view) -> None:
    u0 = m["u0"]
    d = len(view[u0])
    if d == 6:
        h = ext.orient(m, lambda h: _kinds(h)[:2] == (ONE_HAT, ONE_HAT))
    elif d == 8:
        h = ext.orient(
            m,
            lambda h: _kinds(h)[:2] == (ONE_HAT, ONE_HAT)
            and _gain(view, h.parts[0], u0) == 2
            and _gain(view, h.parts[1], u0) == 2,
        )
    else:
        raise RecipeFailure(f"apex degree {d} belongs to the good one-hat case")
    v1, v2, v3 = h.root
    b1, b2, b3 = h.parts
    c = ext.canon(v1, v2, v3)

    def prefix() -> None:
        ext.put(u0, c[4])
        ext.put(b3["u0"], c[5])
        if b3.kind == ONE_HAT:
            ext.put(b3["u1"], c[2])

    ext.notes["branch"] = "apex-degree-6" if d == 6 else next(
        (f"v{i + 1}-even" for i in (0, 2, 1) if ext.even(h.root[i], c[4])), "all-odd"
    )
    if d == 6:
        prefix()
        ext.near_odd(b1, (u0,))
        ext.near_odd(b2, (u0,))
    elif ext.even(v1, c[4]):
        prefix()
        ext.near_odd(b2, (u0,))
        ext.near_odd(b1, (v1,))
    elif ext.even(v3, c[4]):
        prefix()
        ext.near_odd(b1, (u0,))
        ext.near_odd(b2, (v3,))
    elif ext.even(v2, c[4]):
        prefix()
        ext.near_odd(b1, (v2,))
        ext.near_odd(b2, (v2,))
    else:
        ext.put(u0, c[5])
        for b in (b1, b2, b3):
            ext.put(b["u0"], c[4])
        for b in (b1, b2, b3):
            if b.kind == ONE_HAT:
                ext.smallest(b["u1"])


def _h_c(ext: _Ext3, m, view) -> None:
    u0 = m["u0"]
    sub = [p for p in m.parts if p is not None and p.kind == ONE_HAT_PLUS and p["v3"] == u0]
    if sub:
        _h_c_apex_low(ext, m, view, sub[0])
    else:
        _h_c_main(ext, m, view)


def _h_c_apex_low(ext: _Ext3, m, view, b: ConfigMatch) -> None:
    """The one-hat plus has the apex in its two-neighbor root slot."""
    u0 = m["u0"]
    h = ext.orient(m, lambda h: h.parts[0] is not None and h.parts[0]["u0"] == b["u0"])
    v1, v2, v3 = h.root
    L = b.label
    c = ext.canon(v1, v2, v3)
    ext.put(u0, c[4])
    ext.put(L["u0"], c[5])
    ext.put(L["u2"], c[3])
    sides = [(p, o) for p, o in ((h.parts[1], v2), (h.parts[2], v1)) if p is not None]
    ext.notes["branch"] = "low-apex-degree>=8" if len(view[u0]) >= 8 else "low-apex-degree<=7"
    if len(view[u0]) >= 8:
        # the last side must also settle the apex
        sides.sort(key=lambda s: s[0].kind != EAR3)
        for p, o in sides[:-1]:
            ext.near_odd(p, (u0, o))
        p, o = sides[-1]
        ext.near_odd(p, (o,))
    else:
        for p, o in sides:
            ext.near_odd(p, (u0, o))
    inner = match_special(view, (ONE_HAT,), (L["v1"], L["v2"], L["u0"]), L["u1"])
    if inner is None:
        raise RecipeFailure("inner one-hat missing")
    ext.near_odd(inner, (L["u0"],))


def _h_c_main(ext: _Ext3, m, view) -> None:
    """The one-hat plus on face v1 v2 has v2 in its two-neighbor root slot."""
    h = ext.orient(
        m,
        lambda h: h.parts[0] is not None and h.parts[0].kind == ONE_HAT_PLUS and h.parts[0]["v3"] == h.root[1],
    )
    v1, v2, v3 = h.root
    u0 = h["u0"]
    L = h.parts[0].label
    U0, U1, U2, U3, V1 = L["u0"], L["u1"], L["u2"], L["u3"], L["v1"]
    b2, b3 = h.parts[1], h.parts[2]
    c = ext.canon(v1, v2, v3)
    inner = match_special(view, (ONE_HAT,), (L["v1"], L["v2"], U0), U1)
    if inner is None:
        raise RecipeFailure("inner one-hat missing")
    ext.notes["branch"] = {(False, False): "two-triangles", (True, True): "no-triangle",
                           (True, False): "triangle-b3", (False, True): "triangle-b2"}[(b2 is not None, b3 is not None)]
    if b2 is None and b3 is None:
        a = ext.pick(u0, (c[4], c[5]), v3)
        ext.put(U0, c[5] if a == c[4] else c[4])
        ext.pick(U2, range(1, ext.palette + 1), v2)
        ext.near_odd(inner, (u0,))
    elif b2 is not None and b3 is not None:
        ext.put(u0, c[4])
        ext.put(U0, c[5])
        ext.put(U2, c[3])
        ext.near_odd(b2, (u0, v3))
        ext.near_odd(b3, (u0, v1))
        ext.near_odd(inner, (U0,))
    elif b2 is not None:
        ext.put(u0, c[4])
        ext.put(U0, c[5])
        ext.put(U2, c[3])
        ext.near_odd(b2, (u0,))
        ext.near_odd(inner, (U0,))
    else:
        ext.put(u0, c[4])
        ext.put(U0, c[5])
        ext.put(U1, c[3])
        ext.pick(U2, range(1, ext.palette + 1), v2)
        ext.near_odd(b3, (V1,))
        ext.pick(U3, (c[1], c[2], c[4]), V1)


_H_RECIPES = {
    H200: _h200,
    H300: _h300,
    H110: _h110,
    H210: _h210,
    H020: _h020,
    H120_H030: _h120_h030,
    H_C: _h_c,
}


def _t_c(ext: _Ext3, m, view) -> None:
    p, q = m.parts
    if p.kind != ONE_HAT_PLUS:
        p, q = q, p
    L = p.label
    v1, v2, v3 = L["v1"], L["v2"], L["v3"]
    c = ext.canon(v1, v2, v3)
    ext.put(L["u0"], c[4])
    ext.put(L["u2"], c[5])
    ext.near_odd(q, (v1, v2))
    inner = match_special(view, (ONE_HAT,), (v1, v2, L["u0"]), L["u1"])
    if inner is None:
        raise RecipeFailure("inner one-hat missing")
    ext.near_odd(inner, (L["u0"],))


def _t200(ext: _Ext3, m, view) -> None:
    c = ext.canon(*m.root)
    ext.put(m["u0"], c[4])
    ext.put(m["w0"], c[4])


def _t110(ext: _Ext3, m, view) -> None:
    p, q = m.parts
    if p.kind != ONE_HAT:
        p, q = q, p
    L = p.label
    c = ext.canon(L["v1"], L["v2"], L["v3"])
    # the apexes share a color, so they cannot disturb any parity
    h = ext.pick(L["u1"], (c[3], c[4], c[5]), L["v1"], L["v2"])
    j = c[4] if h != c[4] else c[5]
    ext.put(p["u0"], j)
    ext.put(q["u0"], j)


def _t020(ext: _Ext3, m, view) -> None:
    p, q = m.parts
    ext.notes["branch"] = "same-pair" if _pair(p) == _pair(q) else "split-pair"
    if _pair(p) == _pair(q):
        c = ext.canon(*m.root)
        ext.put(p["u0"], c[4])
        ext.put(q["u0"], c[4])
        ext.put(p["u1"], c[5])
        ext.put(q["u1"], c[5])
        return
    (v2,) = _pair(p) & _pair(q)
    (v1,) = _pair(p) - {v2}
    (v3,) = _pair(q) - {v2}
    c = ext.canon(v1, v2, v3)
    ext.put(p["u0"], c[4])
    for col in (c[4], c[5]):
        ext.put(q["u0"], col)
        if not ext.even(v1, c[4]):
            break
        ext.tr.unassign(q["u0"])
    else:
        raise RecipeFailure("no apex color gives an odd count")
    ext.pick(q["u1"], (c[1], c[4], c[5]), v3)
    ext.pick(p["u1"], (c[3], c[5]), v2)


_T_RECIPES = {T_C: _t_c, T200: _t200, T110: _t110, T020: _t020}


def extend_near_odd_3tree(g: Graph, b: ConfigMatch, partial, spare_index: int) -> Coloring:
    """Extend a coloring of g minus the interior of an ear, one-hat or one-hat plus.

    With i = ``spare_index`` in 1..3 the spared set is {v_i, v_(i+1)} for
    an ear (indices cyclic) and {v_i} for the hats; every other vertex
    ends witnessed. ``partial`` is read as in ``extend_near_odd_2tree``.
    """
    if b.kind not in SPECIAL_3:
        raise ValueError(f"{b.kind} is not an ear, one-hat or one-hat plus")
    if spare_index not in (1, 2, 3):
        raise ValueError("spare_index must be 1, 2 or 3")
    tr = load_partial(g, b.interior(), partial)
    view = LocalView({v: g.nbrs[v] for v in b.vertices()})
    first = b[f"v{spare_index}"]
    spare = (first, b[f"v{spare_index % 3 + 1}"]) if b.kind == EAR3 else (first,)
    _Ext3(tr, view, PALETTE).near_odd(b, spare)
    return Coloring(tuple(tr.color[v] for v in range(g.n)), PALETTE)


# --------------------------------------------------------------------------
# driver


def reduce_3tree(g: Graph, stats: Counter | None = None) -> tuple[list[Frame], list[int]]:
    """Reduction frames (in removal order) and the at most five vertices left."""
    R: dict[int, set[int]] = g.adjacency_sets()
    frames: list[Frame] = []
    bad: set[int] = set()
    while len(R) >= 6:
        hit = find_good_hat3(R, bad)
        spare: tuple[int, ...] = ()
        if hit is not None:
            m, y = hit
            spare = (y,)
        else:
            m = find_unavoidable_3tree(R)
            if stats is not None:
                stats[f"via:{m.via.split('-')[0]}"] += 1
        try:
            tag = case_of(m)
        except CaseDispatchExhausted:
            tag = UNDISPATCHED
        if stats is not None:
            stats[tag] += 1
        frames.append(Frame(tag, m, snapshot(R, m.vertices()), spare))
        bad -= near(R, m.interior(), 2)
        delete_interior(R, m.interior())
    return frames, sorted(R)


def color_3tree(g: Graph, trace: list | None = None, stats: Counter | None = None) -> Coloring:
    """Odd coloring of a 3-tree with at most 5 colors."""
    recognize_ktree(g, 3)
    frames, base = reduce_3tree(g, stats)
    tr = ParityTracker(g.adj)
    for c, v in enumerate(base, start=1):
        tr.assign(v, c)
    for fr in reversed(frames):
        replay_frame(tr, fr, PALETTE, _Ext3, apply_case, stats)
    if trace is not None:
        trace.extend(reversed(frames))
    return Coloring(tuple(tr.color[v] for v in range(g.n)), PALETTE)
