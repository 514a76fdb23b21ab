from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from zdg.alliance import (
    DEFENSIVE,
    KINDS,
    OFFENSIVE,
    brute_force_min_alliance,
    enumerate_min_alliances,
    has_smaller_alliance,
    is_alliance,
    is_defensive_alliance,
    is_offensive_alliance,
    minimum_alliance_profiles,
    solve_min_alliance,
)
from zdg.errors import EmptyGraph, EmptySubset, TooLarge
from zdg.graph import ZeroDivisorGraph, build_zdg
from zdg.ring import build_ring


def zdg(desc: str) -> ZeroDivisorGraph:
    return build_zdg(build_ring(desc))


def naive_min(graph: ZeroDivisorGraph, kind: str):
    """Textbook definition applied to every subset, smallest first."""
    n = graph.vertex_count
    nbrs = [set(graph.neighbors(v)) for v in range(n)]
    for size in range(1, n + 1):
        hits = []
        for S in itertools.combinations(range(n), size):
            s = set(S)
            if kind == OFFENSIVE:
                ok = all(2 * len(nbrs[v] & s) >= len(nbrs[v]) + 1 for v in range(n) if v not in s)
            else:
                ok = all(nbrs[v] & s for v in range(n) if v not in s) and all(
                    2 * len(nbrs[v] & s) + 1 >= len(nbrs[v]) for v in s
                )
            if ok:
                hits.append(S)
        if hits:
            return size, hits
    raise AssertionError("the whole vertex set is always an alliance")


def test_z9_offensive_and_defensive():
    g = zdg("Z9")
    res = solve_min_alliance(g, OFFENSIVE)
    assert res.number == 1 and res.witness_labels(g) == ["3"]
    assert solve_min_alliance(g, DEFENSIVE).number == 1


def test_z8_unique_alliance():
    g = zdg("Z8")
    res = enumerate_min_alliances(g, OFFENSIVE)
    assert res.all_minimum == ((1,),)
    assert res.witness_labels(g) == ["4"]


def test_predicates():
    g = zdg("Z8")
    assert is_offensive_alliance(g, {1})
    assert not is_offensive_alliance(g, {0})
    # 4 has degree 2 and no neighbour inside {4}
    assert not is_defensive_alliance(g, {1})
    assert is_defensive_alliance(g, {0, 1})
    assert is_alliance(g, 0b010, OFFENSIVE)
    with pytest.raises(EmptySubset):
        is_offensive_alliance(g, set())
    with pytest.raises(EmptyGraph):
        solve_min_alliance(zdg("Z7"))
    with pytest.raises(ValueError):
        solve_min_alliance(g, "neutral")


@pytest.mark.parametrize("desc, expected", [
    ("Z4", 1), ("Z2xZ2", 1), ("Z3xZ3", 2), ("Z16", 2), ("Z2xZ8", 3), ("Z3xZ4", 3), ("Z2xZ2xZ3", 3),
    ("Z3xZ7", 2), ("Z5xZ7", 4), ("Z2xZ4", 2),
])
def test_known_offensive_numbers(desc, expected):
    assert solve_min_alliance(zdg(desc)).number == expected


@pytest.mark.parametrize("desc", ["Z12", "Z2xZ9", "Z3xZ4", "Z2xZ2xZ3", "Z2[x,y]/((x,y)^2)", "Z18", "Z20"])
@pytest.mark.parametrize("kind", KINDS)
def test_matches_naive_definition(desc, kind):
    g = zdg(desc)
    size, hits = naive_min(g, kind)
    res = enumerate_min_alliances(g, kind, cap=10**6)
    assert res.number == size
    assert list(res.all_minimum) == hits
    assert res.witness == hits[0]


@pytest.mark.parametrize("desc", ["Z2xZ9", "Z3xZ5", "GF(4)[x]/(x^2)"])
@pytest.mark.parametrize("kind", KINDS)
def test_brute_force_lists_the_same_sets(desc, kind):
    g = zdg(desc)
    fast = enumerate_min_alliances(g, kind, cap=10**6)
    slow = brute_force_min_alliance(g, kind, cap=10**6)
    assert fast.all_minimum == slow.all_minimum


def test_minimality_certificate():
    g = zdg("Z2xZ8")
    res = solve_min_alliance(g)
    assert is_offensive_alliance(g, res.witness)
    assert not has_smaller_alliance(g, OFFENSIVE, res.number - 1)


def test_enumeration_cap():
    g = zdg("Z4xZ4")
    res = enumerate_min_alliances(g, OFFENSIVE, cap=3)
    assert res.enumeration_truncated and len(res.all_minimum) == 3
    assert res.all_minimum == brute_force_min_alliance(g, OFFENSIVE, cap=3).all_minimum


def test_brute_force_size_limit():
    with pytest.raises(TooLarge):
        brute_force_min_alliance(zdg("Z2xZ27"))


def test_profiles_with_colouring():
    ring = build_ring("Z9")
    g = build_zdg(ring)
    colouring = [ring.mul(x, x) == ring.zero for x in g.vertex_elements]
    number, classes, profiles = minimum_alliance_profiles(g, OFFENSIVE, colouring)
    assert number == 1
    assert sorted(sum(c for c in p) for p in profiles) == [1] * len(profiles)


@st.composite
def twin_heavy_graphs(draw):
    """Blow-ups of a small random graph: each vertex becomes an
    independent set or a clique, so twin reduction really matters."""
    k = draw(st.integers(1, 5))
    sizes = draw(st.lists(st.integers(1, 3), min_size=k, max_size=k))
    clique = draw(st.lists(st.booleans(), min_size=k, max_size=k))
    pairs = [(a, b) for a in range(k) for b in range(a + 1, k)]
    base = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    start = list(itertools.accumulate([0] + sizes))
    edges = []
    for a in range(k):
        block = range(start[a], start[a + 1])
        if clique[a]:
            edges += list(itertools.combinations(block, 2))
    for a, b in base:
        edges += [(u, v) for u in range(start[a], start[a + 1]) for v in range(start[b], start[b + 1])]
    return ZeroDivisorGraph.from_edges(start[-1], edges)


@settings(max_examples=150, deadline=None)
@given(twin_heavy_graphs(), st.sampled_from(KINDS))
def test_solver_equals_oracle_on_random_graphs(graph, kind):
    fast = solve_min_alliance(graph, kind)
    slow = brute_force_min_alliance(graph, kind)
    assert fast.number == slow.number
    assert fast.witness == slow.witness
    assert is_alliance(graph, fast.witness, kind)


@settings(max_examples=80, deadline=None)
@given(twin_heavy_graphs(), st.sampled_from(KINDS))
def test_enumeration_equals_oracle_on_random_graphs(graph, kind):
    fast = enumerate_min_alliances(graph, kind, cap=10**6)
    slow = brute_force_min_alliance(graph, kind, cap=10**6)
    assert fast.all_minimum == slow.all_minimum
