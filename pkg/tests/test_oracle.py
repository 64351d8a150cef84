import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddktree.graph import build_graph, is_ktree, is_odd_coloring, lower_bound_construction
from oddktree.oracle import (
    BUDGET_EXCEEDED,
    INFEASIBLE,
    GenSpec,
    SearchConfig,
    enumerate_small_ktrees,
    exists_odd_coloring,
    from_graph6,
    graph6,
    odd_chromatic_exact,
    probe_conjecture,
    random_ktree,
)


def brute_force_chi(g):
    """Independent reference: try every assignment with 1..c colors."""
    for c in range(1, g.n + 1):
        for colors in itertools.product(range(1, c + 1), repeat=g.n):
            if is_odd_coloring(g, colors):
                return c
    return None


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.floats(0.05, 0.9), st.integers(0, 10**6))
def test_exact_matches_brute_force(n, p, seed):
    rng = random.Random(seed)
    g = build_graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])
    res = odd_chromatic_exact(g)
    # [DERIVED] exhaustive assignment enumeration
    assert res.value == brute_force_chi(g)
    assert res.exact
    assert is_odd_coloring(g, res.witness, res.value)


# [TRIVIAL] complete graphs need n colors and n suffice
@pytest.mark.parametrize("n", [1, 2, 3, 5, 7])
def test_complete_graph(n):
    g = build_graph(n, itertools.combinations(range(n), 2))
    assert odd_chromatic_exact(g).value == n


# [PAPER] the lower-bound k-tree needs k + 2 colors
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_lower_bound_values(k):
    g, _ = lower_bound_construction(k)
    assert odd_chromatic_exact(g).value == k + 2
    assert exists_odd_coloring(g, k + 1) is INFEASIBLE


def test_budget_exceeded_reported():
    g, _ = random_ktree(GenSpec(60, 2, seed=1))
    res = exists_odd_coloring(g, 4, SearchConfig(max_colors=4, node_budget=5))
    assert res is BUDGET_EXCEEDED
    interval = odd_chromatic_exact(g, SearchConfig(max_colors=6, node_budget=5))
    assert not interval.exact and interval.value is None


def test_symmetry_breaking_does_not_change_answers():
    for g in enumerate_small_ktrees(7, 2):
        a = odd_chromatic_exact(g).value
        b = odd_chromatic_exact(g, SearchConfig(symmetry_breaking=False)).value
        assert a == b


# [PAPER] unlabeled k-tree counts (also the known OEIS sequences)
@pytest.mark.parametrize(
    "k,counts",
    [(2, [1, 1, 2, 5, 12, 39, 136]), (3, [1, 1, 2, 5, 15, 58]), (4, [1, 1, 2, 5, 15])],
)
def test_enumeration_counts(k, counts):
    got = [sum(1 for _ in enumerate_small_ktrees(n, k)) for n in range(k + 1, k + 1 + len(counts))]
    assert got == counts


def test_enumeration_gives_ktrees():
    for g in enumerate_small_ktrees(8, 2):
        assert is_ktree(g, 2)
    assert list(enumerate_small_ktrees(2, 2)) == []


def test_random_ktree_is_deterministic_and_valid():
    spec = GenSpec(50, 3, seed=9, attachment_bias=0.8)
    g1, ao1 = random_ktree(spec)
    g2, ao2 = random_ktree(spec)
    assert g1 == g2 and ao1 == ao2
    assert is_ktree(g1, 3)
    assert from_graph6(graph6(g1)) == g1
    for b in (0.0, 1.0):
        assert is_ktree(random_ktree(GenSpec(30, 2, seed=1, attachment_bias=b))[0], 2)


@pytest.mark.parametrize("kw", [dict(n=2, k=2), dict(n=5, k=0), dict(n=5, k=2, attachment_bias=1.5)])
def test_genspec_validation(kw):
    with pytest.raises(ValueError):
        GenSpec(**kw)


def test_probe_report():
    rep = probe_conjecture(2, 7)
    assert rep.mode == "exhaustive" and rep.palette == 4
    assert len(rep.entries) == 1 + 1 + 2 + 5 + 12
    assert rep.counterexamples == [] and rep.unresolved == []
    d = json.loads(rep.to_json())
    assert d["summary"] == rep.summary() and "counterexamples=0" in d["summary"]
    sampled = probe_conjecture(3, 9, trials=2, seed=1, n_min=8)
    assert sampled.mode == "sampled" and len(sampled.entries) == 4
    assert all(e.seed is not None for e in sampled.entries)
