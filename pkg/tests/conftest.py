import itertools
import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from untangle.core import TemporalGraph
from untangle.fileio import parse_temporal_graph, parse_timeline

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
DATA = Path(__file__).resolve().parent / "data"


def load_graph(name: str) -> TemporalGraph:
    return parse_temporal_graph((CORPUS / name).read_text())


def load_timeline(name: str):
    return parse_timeline((CORPUS / name).read_text())


@pytest.fixture
def fig1():
    return load_graph("fig1.tg")


def repeat_layer(n: int, edges, tau: int) -> TemporalGraph:
    return TemporalGraph.static(n, edges, tau=tau)


def random_graph(rng: random.Random, n: int, tau: int, p: float | None = None) -> TemporalGraph:
    p = rng.random() if p is None else p
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    return TemporalGraph(n, tau, tuple(frozenset(e for e in pairs if rng.random() < p) for _ in range(tau)))


@st.composite
def temporal_graphs(draw, max_n: int = 4, max_tau: int = 4, min_n: int = 1):
    n = draw(st.integers(min_n, max_n))
    tau = draw(st.integers(1, max_tau))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    layers = tuple(frozenset(draw(st.sets(st.sampled_from(pairs)))) if pairs else frozenset() for _ in range(tau))
    return TemporalGraph(n, tau, layers)


def all_graphs(n: int):
    """Every labeled simple graph on ``1..n``."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield frozenset(e for i, e in enumerate(pairs) if mask >> i & 1)


def brute_force_ab_coloring(n: int, edges, a: int, b: int) -> bool:
    """Every vertex gets ``b`` colors out of ``a``; adjacent vertices share none."""
    choices = [frozenset(c) for c in itertools.combinations(range(1, a + 1), b)]
    colors: dict[int, frozenset] = {}
    adj = {v: [u for e in edges for u in e if v in e and u != v] for v in range(1, n + 1)}

    def place(v: int) -> bool:
        if v > n:
            return True
        for c in choices:
            if all(not (c & colors[u]) for u in adj[v] if u in colors):
                colors[v] = c
                if place(v + 1):
                    return True
                del colors[v]
        return False

    return place(1)


def small_instances(seed: int, count: int, max_n: int = 3, max_tau: int = 4, max_k: int = 2, max_ell: int = 2):
    """``(graph, budget, ell)`` triples; budgets alternate between an int and a per-vertex tuple."""
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(1, max_n)
        tau = rng.randint(1, max_tau)
        g = random_graph(rng, n, tau)
        if i % 2:
            budget = tuple(rng.randint(0, max_k) for _ in range(n))
        else:
            budget = rng.randint(0, max_k)
        yield g, budget, rng.randint(0, max_ell)
