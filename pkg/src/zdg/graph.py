"""Zero-divisor graphs with bitset adjacency rows."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import EmptyGraph, UnsupportedFormat
from .ring import FiniteRing

VertexSet = "int | Iterable[int]"


def to_mask(S) -> int:
    """Accept a bitmask or an iterable of vertex indices."""
    if isinstance(S, int):
        return S
    mask = 0
    for v in S:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True, eq=False)
class ZeroDivisorGraph:
    vertex_count: int
    vertex_labels: tuple[str, ...]
    adjacency: tuple[int, ...]
    ring_descriptor: str = ""
    # ring element index of each vertex; empty for synthetic graphs
    vertex_elements: tuple[int, ...] = field(default=(), repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None, descriptor: str = "") -> "ZeroDivisorGraph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError("loops are not allowed")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        return cls(n, labels, tuple(rows), descriptor)

    @property
    def full_mask(self) -> int:
        return (1 << self.vertex_count) - 1

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adjacency]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return from_mask(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.vertex_count) for v in from_mask(self.adjacency[u]) if u < v]

    def vertex_of(self, label: str) -> int:
        key = "".join(label.split())
        try:
            return self.vertex_labels.index(key)
        except ValueError:
            raise KeyError(f"{label!r} is not a vertex of Γ({self.ring_descriptor})") from None

    def labels_of(self, S) -> list[str]:
        return [self.vertex_labels[v] for v in from_mask(to_mask(S))]

    @cached_property
    def twin_classes(self) -> tuple[tuple[int, ...], ...]:
        """Partition of the vertices into twin classes, i.e. maximal sets
        whose members have equal neighbourhoods apart from each other.
        Classes are listed by smallest member."""
        seen: dict[tuple[int, bool], list[int]] = {}
        for v in range(self.vertex_count):
            row = self.adjacency[v]
            # open twins share row; closed twins share row | self
            seen.setdefault((row, False), []).append(v)
            seen.setdefault((row | (1 << v), True), []).append(v)
        cls_of = list(range(self.vertex_count))
        for (_, _), members in seen.items():
            if len(members) > 1:
                for m in members:
                    cls_of[m] = min(cls_of[m], members[0])
        groups: dict[int, list[int]] = {}
        for v in range(self.vertex_count):
            groups.setdefault(cls_of[v], []).append(v)
        return tuple(tuple(g) for g in sorted(groups.values()))


def build_zdg(ring: FiniteRing) -> ZeroDivisorGraph:
    """Γ(R): vertices Z(R)* in element order, u ~ v iff uv = 0."""
    verts = sorted(ring.analysis.zero_divisors_star)
    pos = {x: i for i, x in enumerate(verts)}
    rows = []
    for i, x in enumerate(verts):
        row = 0
        for u in verts:
            if u != x and ring.mul_table[x, u] == ring.zero:
                row |= 1 << pos[u]
        rows.append(row)
    return ZeroDivisorGraph(
        len(verts),
        tuple(ring.label(x) for x in verts),
        tuple(rows),
        ring.descriptor,
        tuple(verts),
    )


def subset_degree(graph: ZeroDivisorGraph, S, v: int) -> int:
    """δ_S(v) = |N(v) ∩ S|."""
    return (graph.adjacency[v] & to_mask(S)).bit_count()


# ------------------------------------------------------------ structure


@dataclass(frozen=True)
class StructureReport:
    is_complete: bool
    complete_n: int | None
    is_star: bool
    star_center: int | None
    is_complete_bipartite: bool
    bipartite_sizes: tuple[int, int] | None
    is_4book: bool
    book_centers: tuple[int, int] | None
    book_pages: tuple[tuple[int, ...], ...] | None
    book_centers_adjacent: bool | None

    def summary(self, graph: ZeroDivisorGraph) -> dict:
        lab = graph.vertex_labels
        return {
            "complete": self.complete_n if self.is_complete else None,
            "star_center": lab[self.star_center] if self.is_star else None,
            "complete_bipartite": list(self.bipartite_sizes) if self.is_complete_bipartite else None,
            "four_book": {
                "centers": [lab[c] for c in self.book_centers],
                "pages": [[lab[v] for v in page] for page in self.book_pages],
                "centers_adjacent": self.book_centers_adjacent,
            }
            if self.is_4book
            else None,
        }


def _components(graph: ZeroDivisorGraph, mask: int) -> list[int]:
    comps = []
    remaining = mask
    while remaining:
        start = remaining & -remaining
        comp, frontier = start, start
        while frontier:
            nxt = 0
            for v in from_mask(frontier):
                nxt |= graph.adjacency[v] & mask
            frontier = nxt & ~comp
            comp |= nxt
        comps.append(comp)
        remaining &= ~comp
    return comps


def find_4book(graph: ZeroDivisorGraph):
    """First (v1, v2, pages) making ``graph`` a 4-book, in canonical order.

    Pages are returned without the centers; each holds one or two vertices.
    """
    n = graph.vertex_count
    full = graph.full_mask
    for v1 in range(n):
        for v2 in range(v1 + 1, n):
            rest = full & ~(1 << v1) & ~(1 << v2)
            if not rest:
                continue
            if (graph.adjacency[v1] & rest) != rest or (graph.adjacency[v2] & rest) != rest:
                continue
            comps = _components(graph, rest)
            if all(c.bit_count() <= 2 for c in comps):
                pages = tuple(sorted(from_mask(c) for c in comps))
                return v1, v2, pages
    return None


def recognize_structure(graph: ZeroDivisorGraph) -> StructureReport:
    n = graph.vertex_count
    if n == 0:
        raise EmptyGraph("structure recognition needs at least one vertex")
    degs = graph.degrees()
    complete = all(deg == n - 1 for deg in degs)

    star_center = None
    if n >= 2:
        for c in range(n):
            if degs[c] == n - 1 and all(degs[v] == 1 for v in range(n) if v != c):
                star_center = c
                break

    bip = None
    part_a = (graph.full_mask & ~graph.adjacency[0])
    part_b = graph.adjacency[0]
    if part_b and all(graph.adjacency[v] == part_b for v in from_mask(part_a)) and all(
        graph.adjacency[v] == part_a for v in from_mask(part_b)
    ):
        bip = tuple(sorted((part_a.bit_count(), part_b.bit_count())))

    book = find_4book(graph)
    return StructureReport(
        is_complete=complete,
        complete_n=n if complete else None,
        is_star=star_center is not None,
        star_center=star_center,
        is_complete_bipartite=bip is not None,
        bipartite_sizes=bip,
        is_4book=book is not None,
        book_centers=(book[0], book[1]) if book else None,
        book_pages=book[2] if book else None,
        book_centers_adjacent=bool(graph.adjacency[book[0]] >> book[1] & 1) if book else None,
    )


# --------------------------------------------------------------- export


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_graph(graph: ZeroDivisorGraph, fmt: str = "dot") -> bytes:
    """Serialize deterministically as Graphviz DOT or JSON."""
    if fmt == "dot":
        lines = [f"graph {_dot_quote('Γ(' + graph.ring_descriptor + ')')} {{"]
        for label in graph.vertex_labels:
            lines.append(f"  {_dot_quote(label)};")
        for u, v in graph.edges():
            lines.append(f"  {_dot_quote(graph.vertex_labels[u])} -- {_dot_quote(graph.vertex_labels[v])};")
        lines.append("}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "json":
        doc = {
            "vertex_count": graph.vertex_count,
            "labels": list(graph.vertex_labels),
            "edges": [list(e) for e in graph.edges()],
            "ring_descriptor": graph.ring_descriptor,
        }
        return (json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")
    raise UnsupportedFormat(f"unknown graph format {fmt!r} (expected 'dot' or 'json')")


# -------------------------------------------------------- canonical form


def _refine(graph: ZeroDivisorGraph, cells: list[list[int]]) -> list[list[int]]:
    """Colour refinement to an equitable ordered partition.

    New cell order depends only on old colours and neighbour colour counts,
    so the result is isomorphism-invariant.
    """
    while True:
        color = {}
        for ci, cell in enumerate(cells):
            for v in cell:
                color[v] = ci
        masks = [to_mask(cell) for cell in cells]
        new_cells: list[list[int]] = []
        for ci, cell in enumerate(cells):
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                sig = tuple((graph.adjacency[v] & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                new_cells.append(groups[sig])
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def canonical_form(graph: ZeroDivisorGraph) -> str:
    """Certificate equal for two graphs iff they are isomorphic.

    Individualization-refinement search; twins inside a cell are
    interchangeable, so only one representative per twin class is branched.
    """
    n = graph.vertex_count
    if n == 0:
        return "0:"
    twin_of = {}
    for cid, members in enumerate(graph.twin_classes):
        for v in members:
            twin_of[v] = cid

    best: tuple[int, ...] | None = None

    def certificate(order: list[int]) -> tuple[int, ...]:
        pos = {v: i for i, v in enumerate(order)}
        return tuple(to_mask(pos[u] for u in graph.neighbors(v)) for v in order)

    def search(cells: list[list[int]]) -> None:
        nonlocal best
        cells = _refine(graph, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            cert = certificate([c[0] for c in cells])
            if best is None or cert < best:
                best = cert
            return
        tried = set()
        for v in cells[target]:
            if twin_of[v] in tried:
                continue
            tried.add(twin_of[v])
            rest = [u for u in cells[target] if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1 :])

    degs = graph.degrees()
    start: dict[int, list[int]] = {}
    for v in range(n):
        start.setdefault(degs[v], []).append(v)
    search([start[k] for k in sorted(start)])
    bits = "".join(
        "1" if best[i] >> j & 1 else "0" for i in range(n) for j in range(i + 1, n)
    )
    return f"{n}:{int(bits, 2) if bits else 0:x}"
