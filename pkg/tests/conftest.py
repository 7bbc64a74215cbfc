import numpy as np
import pytest
from hypothesis import strategies as st

from vbackbone.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph
from vbackbone.topology import GenSpec, generate, to_graph

from oracles import random_connected_gnp


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def p5():
    return path_graph(5)


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def star4():
    return star_graph(4)


@st.composite
def edge_lists(draw, max_nodes=12):
    n = draw(st.integers(1, max_nodes))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return n, edges


@st.composite
def connected_graphs(draw, max_nodes=10):
    """Connected graphs built as a random spanning tree plus extra edges."""
    n = draw(st.integers(1, max_nodes))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if pairs:
        edges |= set(draw(st.lists(st.sampled_from(pairs), max_size=2 * n)))
    return Graph(n, edges)


def geometric_corpus(count, n_values, seed0=0, radius=None):
    """Seeded connected unit-disk graphs cycling through ``n_values``."""
    out = []
    for i in range(count):
        n = n_values[i % len(n_values)]
        r = radius if radius is not None else (40.0 if n < 40 else 25.0)
        out.append(to_graph(generate(GenSpec(n=n, radius=r, seed=seed0 + i))))
    return out


def gnp_corpus(count, n_values, seed=0, p=0.35):
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = n_values[i % len(n_values)]
        out.append(Graph(n, random_connected_gnp(rng, n, p)))
    return out
