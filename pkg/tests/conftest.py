import random

import pytest

from oddktree.graph import Coloring, Graph

ACCEPTANCE: dict[int, str] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
    ACCEPTANCE[criterion] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])


def random_proper(g: Graph, rng: random.Random, extra: int = 2) -> Coloring:
    """Greedy proper coloring in random vertex order with random admissible colors."""
    colors = [0] * g.n
    order = list(range(g.n))
    rng.shuffle(order)
    top = 1
    for v in order:
        used = {colors[w] for w in g.adj[v]}
        free = [c for c in range(1, top + extra + 1) if c not in used]
        colors[v] = rng.choice(free)
        top = max(top, colors[v])
    return Coloring(tuple(colors), max(colors))


@pytest.fixture
def rng():
    return random.Random(12345)
