"""Weighted 2-dimensional simplicial complexes with Z2 chains and loops.

Chains over Z2 are plain Python ints used as bit-sets: bit ``i`` is set when
edge ordinal ``i`` belongs to the chain, and addition is ``^``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class ComplexError(ValueError):
    """Raised for malformed complexes or references to missing simplices."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    weight: float

    @property
    def key(self) -> tuple[int, int]:
        return (self.u, self.v)


@dataclass(frozen=True)
class Triangle:
    a: int
    b: int
    c: int

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def edge_keys(self) -> tuple[tuple[int, int], ...]:
        return ((self.a, self.b), (self.a, self.c), (self.b, self.c))


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class SimplicialComplex2:
    """Immutable weighted complex with vertices ``0..n_v-1``, edges and triangles.

    Edges keep the order they are given in; that order defines the edge
    ordinals used by chains and by every tie-break downstream. Each edge is
    stored with ``u < v`` and each triangle with sorted vertices.

    Construction does not reject invalid input; call :func:`validate` (or use
    ``strict=True``) to get diagnostics.
    """

    def __init__(
        self,
        n_vertices: int,
        edges: Iterable[tuple[int, int, float]] = (),
        triangles: Iterable[tuple[int, int, int]] = (),
        labels: Sequence[int] | None = None,
        strict: bool = False,
    ):
        self._n_v = int(n_vertices)
        es = []
        for u, v, w in edges:
            u, v = int(u), int(v)
            a, b = edge_key(u, v)
            es.append(Edge(a, b, float(w)))
        self._edges = tuple(es)
        self._triangles = tuple(Triangle(*sorted(int(x) for x in t)) for t in triangles)
        self._edge_index: dict[tuple[int, int], int] = {}
        for i, e in enumerate(self._edges):
            self._edge_index.setdefault(e.key, i)
        self._triangle_index: dict[tuple[int, int, int], int] = {}
        for i, t in enumerate(self._triangles):
            self._triangle_index.setdefault(t.key, i)
        self.labels = tuple(labels) if labels is not None else tuple(range(self._n_v))
        self._adjacency: list[list[tuple[int, int]]] | None = None
        if strict:
            problems = validate(self)
            if problems:
                raise ComplexError("; ".join(problems))

    @classmethod
    def from_simplices(cls, n_vertices, edges, triangles=(), labels=None, strict=True):
        """Build a complex with edges and triangles sorted into canonical storage order."""
        edges = sorted(((*edge_key(int(u), int(v)), w) for u, v, w in edges), key=lambda e: e[:2])
        triangles = sorted(tuple(sorted(t)) for t in triangles)
        return cls(n_vertices, edges, triangles, labels=labels, strict=strict)

    @property
    def n_vertices(self) -> int:
        return self._n_v

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    @property
    def n_triangles(self) -> int:
        return len(self._triangles)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def triangles(self) -> tuple[Triangle, ...]:
        return self._triangles

    @property
    def weights(self) -> list[float]:
        return [e.weight for e in self._edges]

    def edge_index(self, u: int, v: int) -> int:
        try:
            return self._edge_index[edge_key(u, v)]
        except KeyError:
            raise ComplexError(f"edge ({u}, {v}) not in complex") from None

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._edge_index

    def has_triangle(self, a: int, b: int, c: int) -> bool:
        return tuple(sorted((a, b, c))) in self._triangle_index

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per vertex, the list of ``(neighbor, edge ordinal)`` sorted by neighbor."""
        if self._adjacency is None:
            adj: list[list[tuple[int, int]]] = [[] for _ in range(self._n_v)]
            for i, e in enumerate(self._edges):
                adj[e.u].append((e.v, i))
                adj[e.v].append((e.u, i))
            for row in adj:
                row.sort()
            self._adjacency = adj
        return self._adjacency

    def components(self) -> list[int]:
        """Component id per vertex; ids are the smallest vertex of each component."""
        comp = list(range(self._n_v))

        def find(x):
            while comp[x] != x:
                comp[x] = comp[comp[x]]
                x = comp[x]
            return x

        for e in self._edges:
            ru, rv = find(e.u), find(e.v)
            if ru != rv:
                comp[max(ru, rv)] = min(ru, rv)
        return [find(x) for x in range(self._n_v)]

    def total_weight(self) -> float:
        return math.fsum(e.weight for e in self._edges)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex2):
            return NotImplemented
        return (
            self._n_v == other._n_v
            and self._edges == other._edges
            and self._triangles == other._triangles
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self._n_v, self._edges, self._triangles))

    def __repr__(self):
        return (
            f"SimplicialComplex2(n_v={self._n_v}, n_e={self.n_edges}, "
            f"n_t={self.n_triangles})"
        )


def validate(complex: SimplicialComplex2) -> list[str]:
    """Return human-readable diagnostics; an empty list means the complex is valid."""
    problems = []
    n = complex.n_vertices
    seen: set[tuple[int, int]] = set()
    for e in complex.edges:
        if e.u == e.v:
            problems.append(f"degenerate edge ({e.u}, {e.v})")
        if not (0 <= e.u < n and 0 <= e.v < n):
            problems.append(f"edge ({e.u}, {e.v}) references unknown vertex")
        if e.key in seen:
            problems.append(f"duplicate edge ({e.u}, {e.v})")
        seen.add(e.key)
        if not math.isfinite(e.weight):
            problems.append(f"non-finite weight on edge ({e.u}, {e.v})")
        elif e.weight < 0:
            problems.append(f"negative weight {e.weight:g} on edge ({e.u}, {e.v})")
    seen_t: set[tuple[int, int, int]] = set()
    for t in complex.triangles:
        if len(set(t.key)) < 3:
            problems.append(f"degenerate triangle {t.key}")
            continue
        if t.key in seen_t:
            problems.append(f"duplicate triangle {t.key}")
        seen_t.add(t.key)
        for a, b in t.edge_keys():
            if not complex.has_edge(a, b):
                problems.append(f"closure violation: triangle {t.key} missing edge ({a}, {b})")
    return problems


def boundary(complex: SimplicialComplex2, simplex: Sequence[int]) -> int | frozenset:
    """Z2 boundary of an edge or triangle.

    A triangle maps to a Chain1 (int bit-set over edge ordinals); an edge maps
    to the frozenset of its two vertices.
    """
    simplex = tuple(sorted(simplex))
    if len(simplex) == 3:
        if not complex.has_triangle(*simplex):
            raise ComplexError(f"triangle {simplex} not in complex")
        a, b, c = simplex
        return (
            (1 << complex.edge_index(a, b))
            | (1 << complex.edge_index(a, c))
            | (1 << complex.edge_index(b, c))
        )
    if len(simplex) == 2:
        if not complex.has_edge(*simplex):
            raise ComplexError(f"edge {simplex} not in complex")
        return frozenset(simplex)
    raise ComplexError(f"boundary is defined for edges and triangles, got {simplex}")


def iter_bits(chain: int):
    while chain:
        low = chain & -chain
        yield low.bit_length() - 1
        chain ^= low


def chain_from_edges(complex: SimplicialComplex2, edges: Iterable[tuple[int, int]]) -> int:
    chain = 0
    for u, v in edges:
        chain ^= 1 << complex.edge_index(u, v)
    return chain


def loop_length(complex: SimplicialComplex2, chain: int) -> float:
    if chain < 0 or chain.bit_length() > complex.n_edges:
        raise ComplexError("chain references an edge ordinal outside the complex")
    edges = complex.edges
    return math.fsum(edges[i].weight for i in iter_bits(chain))


def vertex_boundary(complex: SimplicialComplex2, chain: int) -> set[int]:
    """Vertices of odd degree in ``chain``; empty iff the chain is a cycle."""
    odd: set[int] = set()
    for i in iter_bits(chain):
        e = complex.edges[i]
        odd ^= {e.u, e.v}
    return odd


def is_cycle(complex: SimplicialComplex2, chain: int) -> bool:
    return not vertex_boundary(complex, chain)


def chain_traversal(complex: SimplicialComplex2, chain: int) -> tuple[int, ...]:
    """A closed walk covering every edge of a cycle exactly once.

    Disconnected supports give the circuits of each piece concatenated.
    """
    if not is_cycle(complex, chain):
        raise ComplexError("chain is not a cycle")
    adj: dict[int, list[tuple[int, int]]] = {}
    for i in iter_bits(chain):
        e = complex.edges[i]
        adj.setdefault(e.u, []).append((e.v, i))
        adj.setdefault(e.v, []).append((e.u, i))
    for nbrs in adj.values():
        nbrs.sort(reverse=True)
    used: set[int] = set()
    walk: list[int] = []
    for start in sorted(adj):
        if all(i in used for _, i in adj[start]):
            continue
        # Hierholzer
        stack, circuit = [start], []
        while stack:
            x = stack[-1]
            nbrs = adj[x]
            while nbrs and nbrs[-1][1] in used:
                nbrs.pop()
            if nbrs:
                y, i = nbrs.pop()
                used.add(i)
                stack.append(y)
            else:
                circuit.append(stack.pop())
        walk.extend(circuit[::-1][:-1])
    return tuple(walk)


@dataclass(frozen=True)
class Loop:
    """A Z2 1-cycle with the walk that realizes it.

    ``chain`` is authoritative for algebra; ``traversal`` is the cyclic vertex
    sequence used for export. ``root`` and ``edge`` record provenance when
    the loop came from a shortest-path tree.
    """

    chain: int
    traversal: tuple[int, ...]
    length: float
    root: int | None = None
    edge: int | None = None

    def edge_ordinals(self) -> list[int]:
        return list(iter_bits(self.chain))


@dataclass
class BasisResult:
    loops: list[Loop] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.loops)

    @property
    def lengths(self) -> list[float]:
        return [g.length for g in self.loops]

    @property
    def total_length(self) -> float:
        return math.fsum(self.lengths)


# --- text format -----------------------------------------------------------


def parse_complex(text: str) -> SimplicialComplex2:
    """Parse the ``v``/``e``/``t`` line format; ids are densified in sorted order."""
    ids: set[int] = set()
    raw_edges: list[tuple[int, int, float, int]] = []
    raw_tris: list[tuple[int, int, int, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag, args = parts[0], parts[1:]
        try:
            if tag == "v" and len(args) == 1:
                ids.add(_parse_id(args[0]))
            elif tag == "e" and len(args) == 3:
                u, v = _parse_id(args[0]), _parse_id(args[1])
                raw_edges.append((u, v, float(args[2]), lineno))
                ids.update((u, v))
            elif tag == "t" and len(args) == 3:
                a, b, c = (_parse_id(x) for x in args)
                raw_tris.append((a, b, c, lineno))
                ids.update((a, b, c))
            else:
                raise ParseError(f"cannot parse {line!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"cannot parse {line!r}: {exc}", lineno) from None
    labels = sorted(ids)
    dense = {x: i for i, x in enumerate(labels)}
    edges = [(dense[u], dense[v], w) for u, v, w, _ in raw_edges]
    tris = [(dense[a], dense[b], dense[c]) for a, b, c, _ in raw_tris]
    return SimplicialComplex2.from_simplices(len(labels), edges, tris, labels=labels, strict=False)


def _parse_id(token: str) -> int:
    value = int(token)
    if value < 0:
        raise ValueError(f"negative vertex id {value}")
    return value


def format_complex(complex: SimplicialComplex2) -> str:
    lab = complex.labels
    lines = [f"v {lab[i]}" for i in range(complex.n_vertices)]
    lines += [f"e {lab[e.u]} {lab[e.v]} {e.weight!r}" for e in complex.edges]
    lines += [f"t {lab[t.a]} {lab[t.b]} {lab[t.c]}" for t in complex.triangles]
    return "\n".join(lines) + "\n"
