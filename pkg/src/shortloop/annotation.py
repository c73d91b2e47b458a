"""Edge annotations: a Z2 vector per edge whose sum over a cycle names its H1 class.

Pick a spanning forest. Every cycle is determined by its non-tree edges, so
the cycle space has one coordinate per non-tree edge. Each triangle boundary
is a relation among at most three of those coordinates. After bringing the
relations to fully reduced echelon form, every pivot coordinate is a
combination of non-pivot ones. The annotation of an edge is its coordinate
vector rewritten that way (zero on tree edges). Two cycles are homologous
iff their annotation sums agree, and a set of cycles is independent in H1 iff
their annotation sums are linearly independent.

One elimination over the triangles serves every root, which is what makes
this cheaper than a persistence run per root.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .complex import SimplicialComplex2, iter_bits


@dataclass(frozen=True)
class Annotation:
    edge_class: tuple[int, ...]  # per edge ordinal, bits over non-tree coordinates
    coordinate_edge: tuple[int, ...]  # edge ordinal of each coordinate
    free: frozenset[int]  # non-pivot coordinates, one per H1 generator

    @property
    def rank(self) -> int:
        return len(self.free)

    def cycle_class(self, chain: int) -> int:
        c = 0
        for i in iter_bits(chain):
            c ^= self.edge_class[i]
        return c


class ClassSpan:
    """Incremental span of class vectors, keyed on the highest set bit."""

    __slots__ = ("rows",)

    def __init__(self):
        self.rows: dict[int, int] = {}

    def add(self, v: int) -> bool:
        rows = self.rows
        while v:
            p = v.bit_length() - 1
            r = rows.get(p)
            if r is None:
                rows[p] = v
                return True
            v ^= r
        return False

    def __len__(self):
        return len(self.rows)


def annotate(complex: SimplicialComplex2) -> Annotation:
    n = complex.n_vertices
    adj = complex.adjacency()
    seen = [False] * n
    tree = [False] * complex.n_edges
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v, i in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    tree[i] = True
                    queue.append(v)

    coord = [-1] * complex.n_edges
    coordinate_edge = []
    for i in range(complex.n_edges):
        if not tree[i]:
            coord[i] = len(coordinate_edge)
            coordinate_edge.append(i)

    rows: dict[int, int] = {}
    for t in complex.triangles:
        v = 0
        for key in t.edge_keys():
            c = coord[complex.edge_index(*key)]
            if c >= 0:
                v ^= 1 << c
        while v:
            p = v.bit_length() - 1
            r = rows.get(p)
            if r is None:
                rows[p] = v
                break
            v ^= r

    # Back-substitute so each row holds its pivot plus free coordinates only.
    pivot_mask = 0
    for p in sorted(rows):
        v = rows[p]
        below = v & pivot_mask
        while below:
            b = below.bit_length() - 1
            v ^= rows[b]
            below = v & pivot_mask
        rows[p] = v
        pivot_mask |= 1 << p

    edge_class = [0] * complex.n_edges
    for i, c in enumerate(coord):
        if c >= 0:
            edge_class[i] = rows[c] ^ (1 << c) if c in rows else 1 << c
    free = frozenset(c for c in range(len(coordinate_edge)) if c not in rows)
    return Annotation(tuple(edge_class), tuple(coordinate_edge), free)


def component_ranks(complex: SimplicialComplex2, ann: Annotation) -> dict[int, int]:
    """First Betti number per component, keyed by the component's smallest vertex."""
    comps = complex.components()
    out = {c: 0 for c in comps}
    for c in ann.free:
        out[comps[complex.edges[ann.coordinate_edge[c]].u]] += 1
    return out
