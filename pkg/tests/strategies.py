"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from graphres.graph import Graph


@st.composite
def graphs(draw, min_nodes=1, max_nodes=8, connected=False):
    L = draw(st.integers(min_nodes, max_nodes))
    pairs = list(combinations(range(1, L + 1), 2))
    if connected:
        # a random spanning tree first, then extra edges
        edges = {tuple(sorted((v, draw(st.integers(1, v - 1))))) for v in range(2, L + 1)}
        extra = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
        return Graph(L, frozenset(edges | set(extra)))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(L, frozenset(chosen))
