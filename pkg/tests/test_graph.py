import itertools
import random
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_proper
from oddktree.errors import NotKTreeError, NotProperError, OutOfRangeError, SelfLoopError, TooSmallError
from oddktree.graph import (
    EXEMPT,
    FAIL,
    Coloring,
    build_graph,
    check_addition_ordering,
    class_counts,
    detect_k,
    good_addition_ordering,
    is_ktree,
    is_odd_coloring,
    lower_bound_construction,
    odd_condition_witness,
    rebuild_from_ordering,
    recognize_ktree,
    verify_odd,
    verify_proper,
)
from oddktree.oracle import GenSpec, random_ktree

ktrees = st.builds(
    lambda k, extra, seed, bias: random_ktree(GenSpec(k + 1 + extra, k, seed=seed, attachment_bias=bias))[0],
    st.integers(1, 6),
    st.integers(0, 25),
    st.integers(0, 10**6),
    st.floats(0.0, 1.0),
)


def complete(n):
    return build_graph(n, itertools.combinations(range(n), 2))


# [TRIVIAL] input validation
def test_build_graph_rejects_bad_ids():
    with pytest.raises(OutOfRangeError):
        build_graph(3, [(0, 3)])
    with pytest.raises(SelfLoopError):
        build_graph(3, [(1, 1)])
    with pytest.raises(OutOfRangeError):
        build_graph(-1, [])


def test_build_graph_collapses_duplicates_with_warning():
    with pytest.warns(UserWarning):
        g = build_graph(3, [(0, 1), (1, 0), (1, 2)])
    assert g.duplicates_collapsed and g.m == 2
    assert g == build_graph(3, [(1, 2), (0, 1)])


def test_graph_is_canonical():
    g = build_graph(4, [(3, 0), (2, 1), (0, 2)])
    assert g.adj == ((2, 3), (2,), (0, 1), (0,))
    assert g.edges() == [(0, 2), (0, 3), (1, 2)]
    h, old = g.induced([0, 2, 3])
    assert old == [0, 2, 3] and h.edges() == [(0, 1), (0, 2)]


# [TRIVIAL] recognition on hand-made graphs
def test_recognize_small_cases():
    assert is_ktree(complete(4), 3)
    assert not is_ktree(complete(4), 2)
    cycle = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert not is_ktree(cycle, 1)
    assert is_ktree(build_graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (0, 3)]), 2)
    with pytest.raises(TooSmallError):
        recognize_ktree(complete(2), 2)
    with pytest.raises(NotKTreeError) as err:
        recognize_ktree(cycle, 2)
    assert err.value.k == 2


def test_recognize_rejects_right_edge_count_wrong_shape():
    # two triangles sharing a vertex plus a chord-free edge: 2n-3 edges but not a 2-tree
    g = build_graph(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5), (5, 3), (0, 5)])
    assert g.m == 2 * 6 - 3
    assert not is_ktree(g, 2)


@settings(max_examples=60, deadline=None)
@given(ktrees)
def test_recognition_roundtrip(g):
    k = detect_k(g)
    ao = recognize_ktree(g, k)
    check_addition_ordering(g, ao)
    assert rebuild_from_ordering(ao) == g
    assert g.m == k * (k + 1) // 2 + (g.n - k - 1) * k


@settings(max_examples=60, deadline=None)
@given(ktrees)
def test_good_ordering_starts_with_degree_k(g):
    k = detect_k(g)
    ao = good_addition_ordering(g, k)
    assert g.degree(ao.order[0]) == k
    assert rebuild_from_ordering(ao) == g


@settings(max_examples=30, deadline=None)
@given(ktrees, st.integers(0, 10**6))
def test_removing_an_edge_breaks_recognition(g, seed):
    k = detect_k(g)
    edges = g.edges()
    drop = random.Random(seed).randrange(len(edges))
    h = build_graph(g.n, edges[:drop] + edges[drop + 1 :])
    assert not is_ktree(h, k)


# [TRIVIAL] verifier semantics
def test_verify_proper_and_odd():
    p3 = build_graph(3, [(0, 1), (1, 2)])
    assert verify_proper(p3, [1, 2, 1]) == (True, None)
    assert verify_odd(p3, [1, 2, 1]).entries == (2, FAIL, 2)
    assert verify_odd(p3, [1, 2, 3]).ok
    assert verify_proper(p3, [1, 1, 2]) == (False, (0, 1))
    with pytest.raises(NotProperError):
        verify_odd(p3, [1, 1, 2])
    assert not is_odd_coloring(p3, [1, 2, 3], max_colors=2)
    lone = build_graph(2, [])
    assert verify_odd(lone, [1, 1]).entries == (EXEMPT, EXEMPT)
    with pytest.raises(ValueError):
        verify_proper(p3, [1, 2])


def test_coloring_range_checked():
    with pytest.raises(ValueError):
        Coloring((0, 1), 2)
    with pytest.raises(ValueError):
        Coloring((1, 3), 2)
    assert Coloring((1, 2, 1), 3).used == 2


def test_witness_is_smallest_odd_class():
    star = build_graph(5, [(0, i) for i in range(1, 5)])
    colors = [1, 2, 2, 3, 4]
    assert class_counts(star, colors, 0) == {2: 2, 3: 1, 4: 1}
    assert odd_condition_witness(star, colors, 0) == 3


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_lower_bound_construction_shape(k):
    g, roles = lower_bound_construction(k)
    assert g.n == 2 * k + 1 and is_ktree(g, k)
    assert g.degree(roles["u0"]) == 2 * k
    for j in range(1, k + 1):
        assert g.degree(roles[f"u{j}"]) == k


@settings(max_examples=80, deadline=None)
@given(ktrees, st.integers(0, 10**6))
def test_low_or_odd_degree_always_witnessed(g, seed):
    # In a k-tree any proper coloring already satisfies the odd condition at
    # vertices of odd degree or of degree below 2k.
    k = detect_k(g)
    c = random_proper(g, random.Random(seed))
    for v in range(g.n):
        d = g.degree(v)
        if d % 2 or d <= 2 * k - 1:
            assert odd_condition_witness(g, c, v) is not None


def test_even_degree_vertex_can_fail():
    g, roles = lower_bound_construction(2)
    colors = [0] * g.n
    colors[roles["v1"]], colors[roles["v2"]], colors[roles["u0"]] = 1, 2, 3
    colors[roles["u1"]], colors[roles["u2"]] = 1, 2
    assert verify_odd(g, colors).failures == [roles["u0"]]
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert not is_odd_coloring(g, colors)
