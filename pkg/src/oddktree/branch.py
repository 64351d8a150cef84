"""Branches B(V, u), their interior orderings, and the special small configurations.

Everything here works on a neighbor view ``nb`` where ``nb[v]`` is a set of
neighbors: either ``Graph.nbrs`` or a mutable ``dict[int, set[int]]`` that a
reduction loop shrinks as it deletes vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .errors import (
    ApexNotCommonNeighborError,
    InternalInvariantError,
    RootNotCliqueError,
)
from .graph import AdditionOrdering, Graph

EAR2 = "EAR2"
HAT = "HAT"
DOUBLE_HAT = "DOUBLE_HAT"
EAR3 = "EAR3"
ONE_HAT = "ONE_HAT"
ONE_HAT_PLUS = "ONE_HAT_PLUS"
H2 = "H2"
T2 = "T2"
H3 = "H3"
T3 = "T3"

# Exact neighborhoods (in G) of the interior roles of each special branch.
TEMPLATES: dict[str, dict[str, tuple[str, ...]]] = {
    EAR2: {"u0": ("v1", "v2")},
    HAT: {
        "u0": ("v1", "v2", "u1", "u2"),
        "u1": ("v1", "u0"),
        "u2": ("v2", "u0"),
    },
    DOUBLE_HAT: {
        "u0": ("v1", "v2", "u1", "u2", "u4", "u5"),
        "u1": ("v1", "u0", "u3", "u4"),
        "u2": ("v2", "u0", "u5", "u6"),
        "u3": ("v1", "u1"),
        "u4": ("u0", "u1"),
        "u5": ("u0", "u2"),
        "u6": ("v2", "u2"),
    },
    EAR3: {"u0": ("v1", "v2", "v3")},
    ONE_HAT: {
        "u0": ("v1", "v2", "v3", "u1"),
        "u1": ("v1", "v2", "u0"),
    },
    ONE_HAT_PLUS: {
        "u0": ("v1", "v2", "v3", "u1", "u2", "u3"),
        "u1": ("v1", "v2", "u0", "u3"),
        "u2": ("v2", "v3", "u0"),
        "u3": ("v1", "u0", "u1"),
    },
}
SPECIAL_2 = (EAR2, HAT, DOUBLE_HAT)
SPECIAL_3 = (EAR3, ONE_HAT, ONE_HAT_PLUS)
# Contribution of a side branch to the degree of its parent apex.
APEX_GAIN = {EAR2: 1, HAT: 2, DOUBLE_HAT: 3, EAR3: 1, ONE_HAT: 2, ONE_HAT_PLUS: 3}


def _view(g) -> Sequence[frozenset[int]] | Mapping[int, set[int]]:
    return g.nbrs if isinstance(g, Graph) else g


# --------------------------------------------------------------------------
# branches


@dataclass(frozen=True)
class Branch:
    root: frozenset[int]
    apex: int
    interior: frozenset[int]
    induced_graph: Graph | None = field(default=None, compare=False)
    vertex_ids: tuple[int, ...] = field(default=(), compare=False)

    @property
    def vertices(self) -> frozenset[int]:
        return self.root | self.interior


@dataclass(frozen=True)
class BranchOrdering:
    """Interior vertices u_0..u_s in addition order (u_0 is the apex)."""

    sequence: tuple[int, ...]


def branch_interior(nb, root: Iterable[int], apex: int) -> set[int]:
    """Component of G - root containing apex."""
    root = set(root)
    seen = {apex}
    todo = deque([apex])
    while todo:
        x = todo.popleft()
        for y in nb[x]:
            if y not in seen and y not in root:
                seen.add(y)
                todo.append(y)
    return seen


def extract_branch(g, root: Iterable[int], apex: int, with_graph: bool = True) -> Branch:
    nb = _view(g)
    root = frozenset(root)
    rl = sorted(root)
    for i, a in enumerate(rl):
        for b in rl[i + 1 :]:
            if b not in nb[a]:
                raise RootNotCliqueError(f"root vertices {a} and {b} are not adjacent")
    if apex in root or any(apex not in nb[v] for v in root):
        raise ApexNotCommonNeighborError(f"{apex} is not a common neighbor of {rl}")
    interior = frozenset(branch_interior(nb, root, apex))
    induced = None
    ids: tuple[int, ...] = ()
    if with_graph and isinstance(g, Graph):
        induced, old = g.induced(root | interior)
        ids = tuple(old)
    return Branch(root, apex, interior, induced, ids)


def branch_ordering(g: Graph, ordering: AdditionOrdering, i: int) -> tuple[Branch, BranchOrdering]:
    """Branch rooted at the back-clique of the vertex at 0-based position ``i``."""
    k = ordering.k
    if i < k + 1 or i >= len(ordering.order):
        raise ValueError(f"position {i} has no back-clique")
    v = ordering.order[i]
    root = ordering.back_cliques[i]
    b = extract_branch(g, root, v)
    pos = ordering.position
    seq = tuple(sorted(b.interior, key=pos.__getitem__))
    bo = BranchOrdering(seq)
    problems = check_branch_ordering(g, b, bo, k)
    if problems:
        raise InternalInvariantError("; ".join(problems))
    return b, bo


def check_branch_ordering(g, b: Branch, bo: BranchOrdering, k: int) -> list[str]:
    """Problems with the three interior-ordering properties (empty if none)."""
    nb = _view(g)
    seq = bo.sequence
    out: list[str] = []
    if not seq or seq[0] != b.apex:
        out.append("first interior vertex is not the apex")
        return out
    if set(seq) != set(b.interior):
        out.append("ordering does not cover the interior")
    placed = set(b.root) | {seq[0]}
    common = set(b.root) & set(nb[seq[0]])
    for j in range(1, len(seq)):
        u = seq[j]
        back = [x for x in nb[u] if x in placed]
        if len(back) != k:
            out.append(f"u_{j} has {len(back)} earlier neighbors, expected {k}")
        new_common = common & set(nb[u])
        if len(new_common) < len(common) - 1:
            out.append(f"root intersection drops by more than one at u_{j}")
        common = new_common
        placed.add(u)
    return out


# --------------------------------------------------------------------------
# configuration matches


@dataclass(frozen=True)
class ConfigMatch:
    """A located configuration with role labels.

    For the special branches ``labels`` maps template roles to vertices. For
    H-family members ``parts`` holds the side branch of each root face (None
    when absent); for T-family members it holds the two paired branches.
    """

    kind: str
    labels: tuple[tuple[str, int], ...]
    root: tuple[int, ...]
    abc: tuple[int, int, int] | None = None
    parts: tuple["ConfigMatch | None", ...] = ()
    via: str = ""

    @property
    def label(self) -> dict[str, int]:
        return dict(self.labels)

    def __getitem__(self, role: str) -> int:
        return self.label[role]

    def interior(self) -> set[int]:
        if self.kind in TEMPLATES:
            return {v for r, v in self.labels if r.startswith("u")}
        out: set[int] = set()
        if self.kind in (H2, H3):
            out.add(self["u0"])
        for p in self.parts:
            if p is not None:
                out |= p.interior()
        return out

    def vertices(self) -> set[int]:
        return set(self.root) | self.interior()

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind, "root": list(self.root), "labels": dict(self.labels)}
        if self.abc is not None:
            d["abc"] = list(self.abc)
        if self.parts:
            d["parts"] = [None if p is None else p.to_dict() for p in self.parts]
        if self.via:
            d["via"] = self.via
        return d


@dataclass(frozen=True)
class Other:
    """Classification miss, with the first failed condition."""

    diagnostic: str


def _roots_of(kind: str) -> tuple[str, ...]:
    return ("v1", "v2") if kind in SPECIAL_2 else ("v1", "v2", "v3")


def match_template(nb, kind: str, root: Sequence[int], apex: int) -> dict[str, int] | None:
    """Label the branch at (ordered root, apex) as ``kind``, or None.

    Role names of the root follow the given order, so callers pick the root
    order to fix which vertex plays v1, v2 (and v3).
    """
    tmpl = TEMPLATES[kind]
    rr = _roots_of(kind)
    if len(root) != len(rr):
        return None
    assign = dict(zip(rr, root))
    assign["u0"] = apex
    if len(nb[apex]) != len(tmpl["u0"]):
        return None
    roles = [r for r in tmpl if r != "u0"]
    used = set(assign.values())
    if len(used) != len(rr) + 1:
        return None

    def extend(idx: int) -> bool:
        if idx == len(roles):
            return all(
                set(nb[assign[r]]) == {assign[x] for x in tmpl[r]} for r in tmpl
            )
        r = roles[idx]
        want = tmpl[r]
        anchors = [assign[x] for x in want if x in assign]
        if not anchors:
            raise InternalInvariantError(f"template role {r} has no placed neighbor")
        cands = set(nb[anchors[0]])
        for a in anchors[1:]:
            cands &= nb[a]
        for c in sorted(cands):
            if c in used or len(nb[c]) != len(want):
                continue
            assign[r] = c
            used.add(c)
            if extend(idx + 1):
                return True
            used.discard(c)
            del assign[r]
        return False

    # Template roles are listed so each has an earlier-placed neighbor.
    if not extend(0):
        return None
    return assign


def _make(kind: str, assign: Mapping[str, int], root: Sequence[int], via: str = "") -> ConfigMatch:
    order = sorted(assign, key=lambda r: (r[0] != "v", int(r[1:])))
    return ConfigMatch(kind, tuple((r, assign[r]) for r in order), tuple(root), via=via)


def match_special(nb, kinds: Sequence[str], root: Iterable[int], apex: int) -> ConfigMatch | None:
    """First of ``kinds`` that the branch (unordered root, apex) matches."""
    root = tuple(sorted(root))
    for kind in kinds:
        for perm in permutations(root):
            a = match_template(nb, kind, perm, apex)
            if a is not None:
                return _make(kind, a, perm)
    return None


def relabel(nb, m: ConfigMatch, first: Sequence[int]) -> ConfigMatch:
    """Re-match a special branch with the given vertices at the front of the root order."""
    rest = [v for v in m.root if v not in first]
    for perm in permutations(rest):
        order = list(first) + list(perm)
        a = match_template(nb, m.kind, order, m["u0"])
        if a is not None:
            return _make(m.kind, a, order, m.via)
    raise InternalInvariantError(f"{m.kind} cannot be labelled with {list(first)} first")


def classify_branch_2tree(g, b: Branch) -> ConfigMatch | Other:
    nb = _view(g)
    if len(b.root) != 2:
        return Other("root is not an edge")
    size = len(b.interior)
    kind = {1: EAR2, 3: HAT, 7: DOUBLE_HAT}.get(size)
    if kind is None:
        return Other(f"interior has {size} vertices")
    m = match_special(nb, (kind,), b.root, b.apex)
    if m is None or m.interior() != set(b.interior):
        return Other(f"adjacency does not match {kind}")
    return m


def classify_branch_3tree(g, b: Branch) -> ConfigMatch | Other:
    nb = _view(g)
    if len(b.root) != 3:
        return Other("root is not a triangle")
    size = len(b.interior)
    kind = {1: EAR3, 2: ONE_HAT, 4: ONE_HAT_PLUS}.get(size)
    if kind is None:
        return Other(f"interior has {size} vertices")
    m = match_special(nb, (kind,), b.root, b.apex)
    if m is None or m.interior() != set(b.interior):
        return Other(f"adjacency does not match {kind}")
    return m


# --------------------------------------------------------------------------
# H- and T-families


def _abc(kinds: Iterable[str]) -> tuple[int, int, int]:
    ks = list(kinds)
    return (
        sum(k in (EAR2, EAR3) for k in ks),
        sum(k in (HAT, ONE_HAT) for k in ks),
        sum(k in (DOUBLE_HAT, ONE_HAT_PLUS) for k in ks),
    )


def _is_clique(nb, vs: Sequence[int]) -> bool:
    return all(vs[j] in nb[vs[i]] for i in range(len(vs)) for j in range(i + 1, len(vs)))


def match_h(nb, root: Sequence[int], apex: int, specials: Sequence[str]) -> ConfigMatch | Other:
    """H-family membership of B(root, apex) with root faces taken cyclically.

    For an edge root (a, b) the faces are the two root vertices; for a
    triangle (a, b, c) they are the pairs ab, bc, ca.
    """
    k = len(root)
    if not _is_clique(nb, list(root) + [apex]):
        return Other("root plus apex is not a clique")
    faces = [(root[0],), (root[1],)] if k == 2 else [
        (root[0], root[1]), (root[1], root[2]), (root[2], root[0])
    ]
    parts: list[ConfigMatch | None] = []
    labels = {f"v{i + 1}": v for i, v in enumerate(root)}
    labels["u0"] = apex
    for fi, face in enumerate(faces):
        others = [v for v in root if v not in face]
        common = set(nb[apex])
        for x in face:
            common &= nb[x]
        side = common - set(others)
        if len(side) > 1:
            return Other(f"face {fi + 1} has {len(side)} apexes")
        if not side:
            parts.append(None)
            continue
        y = side.pop()
        m = match_special(nb, specials, list(face) + [apex], y)
        if m is None:
            return Other(f"face {fi + 1} branch is not special")
        parts.append(m)
        labels[f"u{fi + 1}"] = y
    present = [p.kind for p in parts if p is not None]
    if not present:
        return Other("no side branch")
    covered = {apex} | set(root)
    for p in parts:
        if p is not None:
            covered |= p.vertices()
    if not set(nb[apex]) <= covered:
        return Other("apex has neighbors outside the configuration")
    kind = H2 if k == 2 else H3
    order = sorted(labels, key=lambda r: (r[0] != "v", int(r[1:])))
    return ConfigMatch(kind, tuple((r, labels[r]) for r in order), tuple(root), _abc(present), tuple(parts))


def match_t(nb, root: Sequence[int], u0: int, w0: int, specials: Sequence[str]) -> ConfigMatch | Other:
    if u0 == w0:
        return Other("apexes coincide")
    m1 = match_special(nb, specials, root, u0)
    if m1 is None:
        return Other("first branch is not special")
    m2 = match_special(nb, specials, root, w0)
    if m2 is None:
        return Other("second branch is not special")
    if m1.interior() & m2.interior():
        return Other("branches overlap")
    kind = T2 if len(root) == 2 else T3
    labels = {f"v{i + 1}": v for i, v in enumerate(root)}
    labels["u0"], labels["w0"] = u0, w0
    order = sorted(labels, key=lambda r: (r[0] != "v", r[0], int(r[1:])))
    return ConfigMatch(kind, tuple((r, labels[r]) for r in order), tuple(root), _abc([m1.kind, m2.kind]), (m1, m2))


def is_excluded_h(m: ConfigMatch, nb) -> bool:
    """Whether an H-family member is itself a hat/double hat (2-trees) or a one-hat/one-hat plus (3-trees)."""
    if m.kind == H2:
        return match_special(nb, (HAT, DOUBLE_HAT), m.root, m["u0"]) is not None
    if m.kind == H3:
        return match_special(nb, (ONE_HAT, ONE_HAT_PLUS), m.root, m["u0"]) is not None
    return False


# --------------------------------------------------------------------------
# structural validation


def check_match(g, m: ConfigMatch) -> list[str]:
    """Re-read a match's defining adjacency from the graph; returns problems."""
    nb = _view(g)
    out: list[str] = []
    lab = m.label
    if m.kind in TEMPLATES:
        tmpl = TEMPLATES[m.kind]
        rr = _roots_of(m.kind)
        if tuple(lab[r] for r in rr) != tuple(m.root):
            out.append("root labels disagree with root")
        if not _is_clique(nb, list(m.root)):
            out.append("root is not a clique")
        for r, want in tmpl.items():
            got = set(nb[lab[r]])
            exp = {lab[x] for x in want}
            if got != exp:
                out.append(f"{m.kind}: N({r}) = {sorted(got)} but expected {sorted(exp)}")
        if m.interior() != branch_interior(nb, m.root, lab["u0"]):
            out.append(f"{m.kind}: interior is not the full branch")
        return out
    if m.kind in (H2, H3):
        specials = SPECIAL_2 if m.kind == H2 else SPECIAL_3
        fresh = match_h(nb, m.root, lab["u0"], specials)
        if isinstance(fresh, Other):
            return [f"{m.kind}: {fresh.diagnostic}"]
        if fresh.abc != m.abc:
            out.append(f"{m.kind}: family parameters {m.abc} but found {fresh.abc}")
        for p in m.parts:
            if p is not None:
                out.extend(check_match(nb, p))
        if is_excluded_h(m, nb):
            out.append(f"{m.kind}: member is an excluded special branch")
        return out
    if m.kind in (T2, T3):
        if len(m.parts) != 2:
            return [f"{m.kind}: needs two branches"]
        for p in m.parts:
            if p is None:
                out.append(f"{m.kind}: missing branch")
                continue
            if set(p.root) != set(m.root):
                out.append(f"{m.kind}: branch root differs")
            out.extend(check_match(nb, p))
        a, b = m.parts
        if a is not None and b is not None:
            ia, ib = a.interior(), b.interior()
            if ia & ib or any(set(nb[x]) & ib for x in ia):
                out.append(f"{m.kind}: branch interiors touch")
            if _abc([a.kind, b.kind]) != m.abc:
                out.append(f"{m.kind}: family parameters disagree")
        return out
    return [f"unknown kind {m.kind}"]
