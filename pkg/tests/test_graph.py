from __future__ import annotations

import json
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from zdg.errors import EmptyGraph, UnsupportedFormat
from zdg.graph import (
    ZeroDivisorGraph,
    build_zdg,
    canonical_form,
    export_graph,
    recognize_structure,
    subset_degree,
)
from zdg.ring import build_ring


def zdg(desc: str) -> ZeroDivisorGraph:
    return build_zdg(build_ring(desc))


def to_nx(graph: ZeroDivisorGraph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(graph.vertex_count))
    g.add_edges_from(graph.edges())
    return g


def test_z8_is_a_path():
    g = zdg("Z8")
    assert g.vertex_labels == ("2", "4", "6")
    assert g.edges() == [(0, 1), (1, 2)]
    assert recognize_structure(g).is_star


def test_edges_follow_products():
    ring = build_ring("Z12")
    g = build_zdg(ring)
    for u in range(g.vertex_count):
        for v in range(g.vertex_count):
            x, y = g.vertex_elements[u], g.vertex_elements[v]
            assert bool(g.adjacency[u] >> v & 1) == (u != v and ring.mul(x, y) == ring.zero)


def test_field_graph_is_empty():
    g = zdg("GF(4)")
    assert g.vertex_count == 0
    with pytest.raises(EmptyGraph):
        recognize_structure(g)


def test_structures():
    assert recognize_structure(zdg("Z9")).complete_n == 2
    assert recognize_structure(zdg("Z2xZ7")).bipartite_sizes == (1, 6)
    assert recognize_structure(zdg("Z3xZ5")).bipartite_sizes == (2, 4)
    assert not recognize_structure(zdg("Z16")).is_4book


def test_book_recognition_on_a_synthetic_book():
    # centers 0 and 1, pages {2,3}, {4}, {5,6}
    edges = [(0, 1), (2, 3), (5, 6)] + [(c, v) for c in (0, 1) for v in range(2, 7)]
    rep = recognize_structure(ZeroDivisorGraph.from_edges(7, edges))
    assert rep.is_4book
    assert rep.book_centers == (0, 1) and rep.book_centers_adjacent
    assert rep.book_pages == ((2, 3), (4,), (5, 6))


def test_subset_degree():
    g = zdg("Z8")
    assert subset_degree(g, {1}, 0) == 1
    assert subset_degree(g, 0b101, 1) == 2


def test_twin_classes_partition_vertices():
    g = zdg("Z2xZ9")
    members = sorted(v for cls in g.twin_classes for v in cls)
    assert members == list(range(g.vertex_count))
    for cls in g.twin_classes:
        for u in cls:
            for v in cls:
                if u != v:
                    mask = ~((1 << u) | (1 << v))
                    assert g.adjacency[u] & mask == g.adjacency[v] & mask


def test_export_dot_and_json():
    g = zdg("Z8")
    dot = export_graph(g, "dot").decode()
    assert dot.startswith('graph "Γ(Z8)" {')
    assert '"2" -- "4";' in dot and dot.endswith("}\n")
    doc = json.loads(export_graph(g, "json"))
    assert doc == {"vertex_count": 3, "labels": ["2", "4", "6"], "edges": [[0, 1], [1, 2]], "ring_descriptor": "Z8"}
    assert export_graph(g, "dot") == export_graph(zdg("Z8"), "dot")
    with pytest.raises(UnsupportedFormat):
        export_graph(g, "gml")


def test_networkx_agrees_on_catalog_graphs():
    for desc in ["Z2xZ8", "Z3xZ4", "GF(4)[x]/(x^2)", "Z2xZ2xZ3", "Z4[x]/((2,x)^2)"]:
        g = zdg(desc)
        assert sorted(g.degrees()) == sorted(d for _, d in to_nx(g).degree())


@st.composite
def random_graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return ZeroDivisorGraph.from_edges(n, edges)


@settings(max_examples=60, deadline=None)
@given(random_graphs(), st.randoms(use_true_random=False))
def test_canonical_form_is_invariant(graph, rnd):
    perm = list(range(graph.vertex_count))
    rnd.shuffle(perm)
    relabelled = ZeroDivisorGraph.from_edges(graph.vertex_count, [(perm[u], perm[v]) for u, v in graph.edges()])
    assert canonical_form(graph) == canonical_form(relabelled)


@settings(max_examples=60, deadline=None)
@given(random_graphs(7), random_graphs(7))
def test_canonical_form_separates_like_networkx(a, b):
    same = nx.is_isomorphic(to_nx(a), to_nx(b))
    assert (canonical_form(a) == canonical_form(b)) == same


def test_canonical_form_on_ring_graphs():
    rng = random.Random(7)
    g = zdg("Z2xZ9")
    perm = list(range(g.vertex_count))
    rng.shuffle(perm)
    h = ZeroDivisorGraph.from_edges(g.vertex_count, [(perm[u], perm[v]) for u, v in g.edges()])
    assert canonical_form(g) == canonical_form(h)
    assert canonical_form(zdg("Z4[x]/((2,x)^2)")) == canonical_form(zdg("Z2[x,y]/((x,y)^2)"))
    assert canonical_form(zdg("Z16")) != canonical_form(zdg("Z2xZ4"))
