"""Acceptance criteria, each at its stated scale and time limit.

Every test prints one PASS/FAIL line; the lines are repeated in the
terminal summary.
"""

import random
import time
from collections import Counter

import pytest

from conftest import random_proper, record
from oddktree.branch import check_match
from oddktree.graph import Coloring, is_odd_coloring, lower_bound_construction, odd_condition_witness
from oddktree.ktree_color import color_ktree, ktree_palette, log_rounds
from oddktree.oracle import (
    GenSpec,
    SearchConfig,
    enumerate_small_ktrees,
    exists_odd_coloring,
    odd_chromatic_exact,
    probe_conjecture,
    random_ktree,
)
from oddktree.threetree import color_3tree
from oddktree.twotree import color_2tree

pytestmark = pytest.mark.acceptance


def random_instances(k, count, n_max, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(k + 1, n_max)
        spec = GenSpec(n, k, seed=rng.randrange(2**31), attachment_bias=rng.random())
        out.append(random_ktree(spec)[0])
    return out


def run_constructor(colorer, k, n_exhaustive, count, n_max, seed):
    t0 = time.perf_counter()
    graphs = [g for n in range(k + 1, n_exhaustive + 1) for g in enumerate_small_ktrees(n, k)]
    graphs += random_instances(k, count, n_max, seed)
    res = {"graphs": len(graphs), "bad": [], "errors": [], "frames": [], "max_colors": 0, "stats": Counter()}
    for i, g in enumerate(graphs):
        trace = []
        try:
            c = colorer(g, trace=trace, stats=res["stats"])
        except Exception as exc:  # recorded, then judged by the criteria
            res["errors"].append((i, repr(exc)))
            continue
        res["max_colors"] = max(res["max_colors"], max(c.colors))
        if not is_odd_coloring(g, c, k + 2):
            res["bad"].append(i)
        res["frames"].append(trace)
    res["seconds"] = time.perf_counter() - t0
    return res


@pytest.fixture(scope="module")
def two_trees():
    return run_constructor(color_2tree, 2, 9, 1000, 300, seed=20240601)


@pytest.fixture(scope="module")
def three_trees():
    return run_constructor(color_3tree, 3, 8, 1000, 300, seed=20240602)


@pytest.fixture(scope="module")
def large_k():
    t0 = time.perf_counter()
    out = {"bad": [], "errors": [], "frames": [], "count": 0}
    for k in (7, 8, 11, 16):
        for i, g in enumerate(random_instances(k, 200, 400, seed=1000 + k)):
            out["count"] += 1
            trace = []
            try:
                c = color_ktree(g, k, trace=trace)
            except Exception as exc:
                out["errors"].append((k, i, repr(exc)))
                continue
            if c.palette != ktree_palette(k) or not is_odd_coloring(g, c, ktree_palette(k)):
                out["bad"].append((k, i))
            out["frames"].append((k, trace))
    out["seconds"] = time.perf_counter() - t0
    return out


def _constructor_line(res, palette, limit):
    ok = not res["bad"] and not res["errors"] and res["max_colors"] <= palette and res["seconds"] <= limit
    detail = (
        f"{res['graphs']} instances, max color {res['max_colors']} (limit {palette}), "
        f"{len(res['bad'])} invalid, {len(res['errors'])} errors, {res['seconds']:.1f}s (limit {limit}s)"
    )
    return ok, detail


def test_criterion_1_two_trees(two_trees):
    ok, detail = _constructor_line(two_trees, 4, 60)
    record(1, ok, "2-trees " + detail)
    assert ok


def test_criterion_2_three_trees(three_trees):
    ok, detail = _constructor_line(three_trees, 5, 120)
    record(2, ok, "3-trees " + detail)
    assert ok


def test_criterion_3_large_k(large_k):
    ok = not large_k["bad"] and not large_k["errors"] and large_k["seconds"] <= 300
    record(
        3,
        ok,
        f"k in 7,8,11,16: {large_k['count']} instances, {len(large_k['bad'])} invalid, "
        f"{len(large_k['errors'])} errors, {large_k['seconds']:.1f}s (limit 300s)",
    )
    assert ok


def test_criterion_4_lower_bound_oracle():
    t0 = time.perf_counter()
    values = {k: odd_chromatic_exact(lower_bound_construction(k)[0]).value for k in (2, 3)}
    dt = time.perf_counter() - t0
    ok = values == {2: 4, 3: 5} and dt <= 5
    record(4, ok, f"oracle gives {values[2]} for k=2 and {values[3]} for k=3 in {dt:.2f}s (limit 5s)")
    assert ok


def test_criterion_5_finders_and_matches(two_trees, three_trees):
    errors = two_trees["errors"] + three_trees["errors"]
    frames = problems = scans = 0
    for res in (two_trees, three_trees):
        for trace in res["frames"]:
            for fr in trace:
                frames += 1
                if check_match(fr.view, fr.match):
                    problems += 1
                if fr.match.via == "scan":
                    scans += 1
    ok = not errors and problems == 0 and scans == 0
    fallbacks = two_trees["stats"]["fallback"] + three_trees["stats"]["fallback"]
    record(
        5,
        ok,
        f"{frames} matches checked, {problems} failed check_match, {len(errors)} finder errors, "
        f"{scans} unexplained fallthroughs, {fallbacks} recipe fallbacks",
    )
    assert ok


def test_criterion_6_frame_invariants(large_k):
    frames = bad = 0
    for k, trace in large_k["frames"]:
        r = log_rounds(k)
        for fr in trace:
            frames += 1
            targets = list(fr.sigma.values())
            fine = (
                len(set(targets)) == len(targets)
                and len(fr.Wbar) <= r
                and len(fr.halving) == r + 1
                and all(
                    set(fr.halving[i]) <= set(fr.halving[i - 1])
                    and len(fr.halving[i]) <= len(fr.halving[i - 1]) // 2
                    for i in range(1, r + 1)
                )
                and fr.halving[-1] == ()
                and not fr.problems()
            )
            bad += not fine
    ok = frames > 0 and bad == 0
    record(6, ok, f"{frames} frames checked, {bad} violate injectivity, |W-bar| <= r or the halving chain")
    assert ok


def test_criterion_7_low_and_odd_degree_witnessed():
    rng = random.Random(77)
    pairs = checked = misses = 0
    t0 = time.perf_counter()
    for _ in range(10_000):
        k = rng.choice((2, 3, 4))
        g, _ = random_ktree(GenSpec(rng.randint(k + 1, 40), k, seed=rng.randrange(2**31), attachment_bias=rng.random()))
        c = random_proper(g, rng)
        pairs += 1
        for v in range(g.n):
            d = g.degree(v)
            if d % 2 or d <= 2 * k - 1:
                checked += 1
                misses += odd_condition_witness(g, c, v) is None
    ok = misses == 0
    record(
        7,
        ok,
        f"{pairs} (k-tree, proper coloring) pairs, {checked} vertices checked, {misses} unwitnessed "
        f"({time.perf_counter() - t0:.1f}s)",
    )
    assert ok


def test_criterion_8_constructors_against_oracle():
    cases = [(2, color_2tree, 9), (3, color_3tree, 8), (7, lambda g: color_ktree(g, 7), 11)]
    count = below_opt = infeasible = 0
    for k, colorer, n_max in cases:
        for n in range(k + 1, n_max + 1):
            for g in enumerate_small_ktrees(n, k):
                c = colorer(g)
                opt = odd_chromatic_exact(g, SearchConfig(max_colors=c.palette)).value
                count += 1
                below_opt += opt is None or c.used < opt
                res = exists_odd_coloring(g, c.palette)
                infeasible += not (isinstance(res, Coloring) and is_odd_coloring(g, res, c.palette))
    ok = count > 0 and below_opt == 0 and infeasible == 0
    record(
        8,
        ok,
        f"{count} exhaustive instances: {below_opt} with fewer colors than the optimum, "
        f"{infeasible} where the oracle finds no coloring at the constructor's palette",
    )
    assert ok


def test_criterion_9_probe_k4():
    t0 = time.perf_counter()
    rep = probe_conjecture(4, 9)
    dt = time.perf_counter() - t0
    ok = len(rep.entries) > 0 and dt <= 600
    detail = f"{rep.summary()} in {dt:.1f}s (limit 600s)"
    for e in rep.counterexamples:
        detail += f"; COUNTEREXAMPLE n={e.n} graph6={e.graph6}"
    record(9, ok, detail)
    assert ok
