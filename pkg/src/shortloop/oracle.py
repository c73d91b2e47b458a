"""Brute-force ground truth for small complexes.

Everything here works on the 1-skeleton's cycle space directly and never
touches shortest-path trees or filtrations, so it can check those routes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .complex import (
    BasisResult,
    ComplexError,
    Loop,
    SimplicialComplex2,
    boundary,
    chain_traversal,
    is_cycle,
    loop_length,
)

MAX_CYCLE_RANK = 20


class EnumerationBoundError(ValueError):
    pass


class GF2Echelon:
    """Row-echelon basis over Z2 keyed by each row's highest set bit."""

    def __init__(self, rows: Iterable[int] = ()):
        self.rows: dict[int, int] = {}
        for r in rows:
            self.add(r)

    def reduce(self, vec: int) -> int:
        rows = self.rows
        while vec:
            top = vec.bit_length() - 1
            row = rows.get(top)
            if row is None:
                return vec
            vec ^= row
        return 0

    def add(self, vec: int) -> bool:
        """Insert ``vec``; returns False if it was already in the span."""
        vec = self.reduce(vec)
        if not vec:
            return False
        self.rows[vec.bit_length() - 1] = vec
        return True

    def __contains__(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def copy(self) -> "GF2Echelon":
        out = GF2Echelon()
        out.rows = dict(self.rows)
        return out


@dataclass
class CycleSpace:
    basis: list[int]
    n_components: int

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass
class BoundarySpace:
    complex: SimplicialComplex2
    echelon: GF2Echelon

    @property
    def rank(self) -> int:
        return self.echelon.rank


def cycle_space(complex: SimplicialComplex2) -> CycleSpace:
    """Fundamental cycles of a BFS spanning forest."""
    n = complex.n_vertices
    adj = complex.adjacency()
    parent_edge = [-1] * n
    parent = [-1] * n
    depth = [-1] * n
    n_comp = 0
    for s in range(n):
        if depth[s] >= 0:
            continue
        n_comp += 1
        depth[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v, i in adj[u]:
                if depth[v] < 0:
                    depth[v], parent[v], parent_edge[v] = depth[u] + 1, u, i
                    queue.append(v)
    tree = set(parent_edge) - {-1}
    basis = []
    for i, e in enumerate(complex.edges):
        if i in tree:
            continue
        chain, a, b = 1 << i, e.u, e.v
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            chain ^= 1 << parent_edge[a]
            a = parent[a]
        basis.append(chain)
    return CycleSpace(basis, n_comp)


def boundary_space(complex: SimplicialComplex2) -> BoundarySpace:
    return BoundarySpace(complex, GF2Echelon(boundary(complex, t.key) for t in complex.triangles))


def oracle_betti(complex: SimplicialComplex2) -> tuple[int, int]:
    cs = cycle_space(complex)
    return cs.n_components, cs.dimension - boundary_space(complex).rank


def homology_independent(candidate: int, selected: Iterable[int], bspace: BoundarySpace) -> bool:
    """True iff ``candidate`` is not in the span of ``selected`` plus all boundaries."""
    selected = list(selected)
    for c in [candidate, *selected]:
        if not is_cycle(bspace.complex, c):
            raise ComplexError("homology_independent expects cycles")
    span = bspace.echelon.copy()
    for c in selected:
        span.add(c)
    return candidate not in span


def brute_force_shortest_basis(
    complex: SimplicialComplex2, max_rank: int = MAX_CYCLE_RANK
) -> BasisResult:
    """Matroid greedy over every nonzero vector of the cycle space."""
    cs = cycle_space(complex)
    mu = cs.dimension
    if mu > max_rank:
        raise EnumerationBoundError(f"cycle space has dimension {mu} > {max_rank}")
    bspace = boundary_space(complex)
    beta1 = mu - bspace.rank
    vectors = []
    # Gray-code walk: each step toggles one basis cycle
    vec = 0
    for step in range(1, 1 << mu):
        vec ^= cs.basis[(step & -step).bit_length() - 1]
        vectors.append((loop_length(complex, vec), vec))
    vectors.sort()
    span = bspace.echelon.copy()
    loops = []
    for length, vec in vectors:
        if len(loops) == beta1:
            break
        if span.add(vec):
            loops.append(Loop(vec, chain_traversal(complex, vec), length))
    return BasisResult(loops)
