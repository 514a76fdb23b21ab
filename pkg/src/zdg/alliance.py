"""Global offensive and defensive alliances: predicates, an exact
branch-and-bound solver, full enumeration of minimum alliances, and an
exhaustive brute-force oracle.

A subset S of the vertices is a global offensive alliance when every
vertex outside S has strictly more neighbours in S than outside it, and a
global defensive alliance when S dominates the graph and every member has
``δ_S(v) + 1 >= δ_{S̄}(v)``.

The solver branches on twin classes instead of single vertices. Twins are
interchangeable, so the alliance predicate only depends on how many members
of each class are chosen; deciding those counts class by class (classes in
descending-degree order) is the include/exclude search with the symmetric
duplicates removed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyGraph, EmptySubset, ResourceCap, TooLarge
from .graph import ZeroDivisorGraph, from_mask, to_mask

OFFENSIVE = "offensive"
DEFENSIVE = "defensive"
KINDS = (OFFENSIVE, DEFENSIVE)

DEFAULT_ENUMERATION_CAP = 10_000
BRUTE_FORCE_LIMIT = 24
MAX_OPTIMAL_PROFILES = 200_000


@dataclass(frozen=True)
class AllianceResult:
    kind: str
    number: int
    witness: tuple[int, ...]
    all_minimum: tuple[tuple[int, ...], ...] | None = None
    enumeration_truncated: bool = False
    nodes_explored: int = 0

    def witness_labels(self, graph: ZeroDivisorGraph) -> list[str]:
        return [graph.vertex_labels[v] for v in self.witness]


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown alliance kind {kind!r}")


def _check_inputs(graph: ZeroDivisorGraph, S) -> int:
    if graph.vertex_count == 0:
        raise EmptyGraph(f"Γ({graph.ring_descriptor}) has no vertices")
    mask = to_mask(S)
    if mask == 0:
        raise EmptySubset("alliances are nonempty")
    if mask & ~graph.full_mask:
        raise ValueError("subset contains non-vertices")
    return mask


def is_offensive_alliance(graph: ZeroDivisorGraph, S) -> bool:
    mask = _check_inputs(graph, S)
    outside = graph.full_mask & ~mask
    for v in from_mask(outside):
        row = graph.adjacency[v]
        if (row & mask).bit_count() < (row & outside).bit_count() + 1:
            return False
    return True


def is_defensive_alliance(graph: ZeroDivisorGraph, S) -> bool:
    mask = _check_inputs(graph, S)
    outside = graph.full_mask & ~mask
    for v in from_mask(outside):
        if not graph.adjacency[v] & mask:
            return False
    for v in from_mask(mask):
        row = graph.adjacency[v]
        if (row & mask).bit_count() + 1 < (row & outside).bit_count():
            return False
    return True


def is_alliance(graph: ZeroDivisorGraph, S, kind: str) -> bool:
    _check_kind(kind)
    return (is_offensive_alliance if kind == OFFENSIVE else is_defensive_alliance)(graph, S)


# ---------------------------------------------------------------- solver


class _ClassModel:
    """Twin-class quotient of a graph, optionally split further by colour."""

    def __init__(self, graph: ZeroDivisorGraph, colouring=None):
        classes = []
        for members in graph.twin_classes:
            if colouring is None:
                classes.append(members)
                continue
            groups: dict = {}
            for v in members:
                groups.setdefault(colouring[v], []).append(v)
            classes.extend(tuple(g) for g in groups.values())
        degs = graph.degrees()
        # fixed branching order: descending degree, ties by smallest vertex
        classes.sort(key=lambda c: (-degs[c[0]], c[0]))
        self.members = classes
        self.size = [len(c) for c in classes]
        self.degree = [degs[c[0]] for c in classes]
        self.clique = [len(c) > 1 and bool(graph.adjacency[c[0]] >> c[1] & 1) for c in classes]
        m = len(classes)
        self.adj = [
            [j for j in range(m) if j != k and graph.adjacency[classes[k][0]] >> classes[j][0] & 1]
            for k in range(m)
        ]

    def inside(self, counts, k: int, member: bool) -> int:
        """Neighbours in S of a class-k vertex, given per-class counts."""
        s = sum(counts[j] for j in self.adj[k])
        if self.clique[k]:
            s += counts[k] - (1 if member else 0)
        return s

    def satisfied(self, counts, kind: str) -> bool:
        if not any(counts):
            return False
        for k, c in enumerate(counts):
            if c < self.size[k]:
                ins = self.inside(counts, k, False)
                if kind == OFFENSIVE and 2 * ins < self.degree[k] + 1:
                    return False
                if kind == DEFENSIVE and ins < 1:
                    return False
            if kind == DEFENSIVE and c > 0:
                if 2 * self.inside(counts, k, True) + 1 < self.degree[k]:
                    return False
        return True

    def canonical_set(self, counts) -> tuple[int, ...]:
        out = []
        for k, c in enumerate(counts):
            out.extend(self.members[k][:c])
        return tuple(sorted(out))


def _greedy(model: _ClassModel, kind: str) -> int:
    """Size of a feasible alliance built greedily on class counts, then pruned."""
    m = len(model.size)
    counts = [0] * m

    def deficit() -> int:
        total = 0
        for k in range(m):
            if counts[k] < model.size[k]:
                need = (model.degree[k] + 2) // 2 if kind == OFFENSIVE else 1
                total += (model.size[k] - counts[k]) * max(0, need - model.inside(counts, k, False))
            if kind == DEFENSIVE and counts[k]:
                ins = model.inside(counts, k, True)
                total += counts[k] * max(0, model.degree[k] - ins - 1 - ins)
        return total

    while not model.satisfied(counts, kind):
        current = deficit()
        best_k, best_gain = None, None
        for k in range(m):
            if counts[k] == model.size[k]:
                continue
            counts[k] += 1
            gain = current - deficit()
            counts[k] -= 1
            if best_gain is None or gain > best_gain:
                best_k, best_gain = k, gain
        counts[best_k] += 1
    for k in reversed(range(m)):
        while counts[k]:
            counts[k] -= 1
            if not model.satisfied(counts, kind):
                counts[k] += 1
                break
    return sum(counts)


def _optimal_profiles(model: _ClassModel, kind: str, upper: int):
    """All per-class count vectors of minimum total satisfying ``kind``.

    Returns (optimum, profiles, nodes). Every class decided as partially
    excluded is checked against the best achievable support from classes
    still undecided; the largest remaining deficit is a lower bound on
    further cost.
    """
    m = len(model.size)
    counts = [0] * m
    contrib = [0] * m  # Σ counts over decided adjacent classes
    undecided_adj = [sum(model.size[j] for j in model.adj[k]) for k in range(m)]
    best = [upper]
    profiles: list[tuple[int, ...]] = []
    nodes = [0]

    def need(k: int) -> int:
        # minimum neighbours-in-S for an excluded class-k vertex
        return (model.degree[k] + 2) // 2 if kind == OFFENSIVE else 1

    def self_part(k: int, c: int, member: bool) -> int:
        return (c - (1 if member else 0)) if model.clique[k] else 0

    def search(i: int, used: int) -> None:
        nodes[0] += 1
        if used > best[0]:
            return
        if i == m:
            if model.satisfied(counts, kind):
                if used < best[0]:
                    best[0] = used
                    profiles.clear()
                if len(profiles) >= MAX_OPTIMAL_PROFILES:
                    raise ResourceCap("too many optimal class profiles")
                profiles.append(tuple(counts))
            return
        budget = best[0] - used
        # bound: every decided class with excluded members must still be reachable
        lower = 0
        for k in range(i):
            if counts[k] < model.size[k]:
                have = contrib[k] + self_part(k, counts[k], False)
                missing = need(k) - have
                if missing > 0:
                    if missing > min(undecided_adj[k], budget):
                        return
                    lower = max(lower, missing)
            if kind == DEFENSIVE and counts[k] > 0:
                have = contrib[k] + self_part(k, counts[k], True)
                # each undecided neighbour either joins S (+1 inside) or stays out
                if 2 * (have + min(undecided_adj[k], budget)) + 1 < model.degree[k]:
                    return
        if used + lower > best[0]:
            return
        k = i
        for c in range(min(model.size[k], budget), -1, -1):
            counts[k] = c
            for j in model.adj[k]:
                contrib[j] += c
                undecided_adj[j] -= model.size[k]
            search(i + 1, used + c)
            for j in model.adj[k]:
                contrib[j] -= c
                undecided_adj[j] += model.size[k]
        counts[k] = 0

    search(0, 0)
    return best[0], profiles, nodes[0]


def _lex_enumerate(model: _ClassModel, profiles, n: int, cap: int) -> list[tuple[int, ...]]:
    """First ``cap`` minimum alliances in lexicographic order."""
    class_of = [0] * n
    for k, members in enumerate(model.members):
        for v in members:
            class_of[v] = k
    remaining = list(model.size)
    taken = [0] * len(model.size)
    chosen: list[int] = []
    out: list[tuple[int, ...]] = []

    def compatible() -> bool:
        return any(
            all(taken[k] <= p[k] <= taken[k] + remaining[k] for k in range(len(p))) for p in profiles
        )

    def walk(v: int) -> bool:
        if len(out) >= cap:
            return False
        if v == n:
            out.append(tuple(chosen))
            return True
        k = class_of[v]
        remaining[k] -= 1
        taken[k] += 1
        chosen.append(v)
        if compatible():
            walk(v + 1)
        chosen.pop()
        taken[k] -= 1
        if len(out) < cap and compatible():
            walk(v + 1)
        remaining[k] += 1
        return True

    walk(0)
    return out


def _count_alliances(model: _ClassModel, profiles) -> int:
    return sum(math.prod(math.comb(s, c) for s, c in zip(model.size, p)) for p in profiles)


def _solve(graph: ZeroDivisorGraph, kind: str, colouring=None):
    _check_kind(kind)
    if graph.vertex_count == 0:
        raise EmptyGraph(f"Γ({graph.ring_descriptor}) has no vertices; alliance numbers are undefined")
    model = _ClassModel(graph, colouring)
    upper = _greedy(model, kind)
    number, profiles, nodes = _optimal_profiles(model, kind, upper)
    return model, number, profiles, nodes


def solve_min_alliance(graph: ZeroDivisorGraph, kind: str = OFFENSIVE) -> AllianceResult:
    """Exact alliance number with the lexicographically least witness."""
    model, number, profiles, nodes = _solve(graph, kind)
    witness = min(model.canonical_set(p) for p in profiles)
    return AllianceResult(kind, number, witness, nodes_explored=nodes)


def enumerate_min_alliances(
    graph: ZeroDivisorGraph, kind: str = OFFENSIVE, cap: int = DEFAULT_ENUMERATION_CAP
) -> AllianceResult:
    """Like :func:`solve_min_alliance`, also listing every minimum alliance
    in lexicographic order (at most ``cap`` of them)."""
    if cap < 1:
        raise ValueError("cap must be positive")
    model, number, profiles, nodes = _solve(graph, kind)
    listing = _lex_enumerate(model, profiles, graph.vertex_count, cap)
    truncated = _count_alliances(model, profiles) > cap
    return AllianceResult(kind, number, listing[0], tuple(listing), truncated, nodes)


def minimum_alliance_profiles(graph: ZeroDivisorGraph, kind: str, colouring):
    """Per-class counts of all minimum alliances, classes split by ``colouring``.

    Returns ``(number, classes, profiles)`` where ``classes`` lists vertex
    tuples; every minimum alliance meets class ``k`` in exactly
    ``profile[k]`` vertices for one of the profiles, and every choice of
    that many vertices per class is a minimum alliance.
    """
    model, number, profiles, _ = _solve(graph, kind, colouring)
    return number, model.members, profiles


# ----------------------------------------------------------------- oracle


def brute_force_min_alliance(
    graph: ZeroDivisorGraph, kind: str = OFFENSIVE, cap: int = DEFAULT_ENUMERATION_CAP
) -> AllianceResult:
    """Scan every subset; independent of the branch-and-bound machinery."""
    _check_kind(kind)
    n = graph.vertex_count
    if n == 0:
        raise EmptyGraph(f"Γ({graph.ring_descriptor}) has no vertices")
    if n > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"brute force is limited to {BRUTE_FORCE_LIMIT} vertices, got {n}")
    adj = np.array([[row >> j & 1 for j in range(n)] for row in graph.adjacency], dtype=np.float32)
    deg = adj.sum(axis=1)
    shifts = np.arange(n, dtype=np.int64)
    best_size = n + 1
    best_masks: list[int] = []
    chunk = 1 << 16
    for start in range(1, 1 << n, chunk):
        masks = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        bits = ((masks[:, None] >> shifts) & 1).astype(np.float32)
        ins = bits @ adj
        member = bits > 0
        if kind == OFFENSIVE:
            ok = member | (2 * ins >= deg + 1)
        else:
            ok = np.where(member, 2 * ins + 1 >= deg, ins >= 1)
        good = ok.all(axis=1)
        valid = masks[good]
        if valid.size == 0:
            continue
        sizes = bits[good].sum(axis=1).astype(np.int64)
        smallest = int(sizes.min())
        if smallest < best_size:
            best_size, best_masks = smallest, []
        if smallest == best_size:
            best_masks.extend(int(m) for m in valid[sizes == smallest])
    sets = sorted(from_mask(m) for m in best_masks)
    return AllianceResult(kind, best_size, sets[0], tuple(sets[:cap]), len(sets) > cap, 1 << n)


def has_smaller_alliance(graph: ZeroDivisorGraph, kind: str, size: int) -> bool:
    """True if some alliance of exactly ``size`` vertices exists (direct scan)."""
    for combo in itertools.combinations(range(graph.vertex_count), size):
        if combo and is_alliance(graph, combo, kind):
            return True
    return False
