"""Shortest H1 bases of weighted complexes and of Rips complexes of samples.

For every root vertex a shortest-path tree gives one canonical loop per
non-tree edge: the tree path to one endpoint, the edge, and the tree path
back. A persistence run over the tree edges followed by the non-tree edges in
canonical order (length, then edge ordinal) leaves unpaired exactly the edges
whose canonical loops form the greedy set for that root. Merging these sets
over all roots and running the global greedy, with independence decided by
coning the accepted loops and continuing the root's reduction, yields a
shortest basis.

That is the ``"persistence"`` engine. The default ``"annotation"`` engine
selects the same loops by rank tests on precomputed H1 class vectors (see
``annotation``), which replaces the per-root reduction with a single global one.
"""

from __future__ import annotations

import heapq
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .annotation import Annotation, ClassSpan, annotate, component_ranks
from .build import AugmentedComplex, build_augmented
from .complex import BasisResult, Loop, SimplicialComplex2, loop_length
from .persistence import ReductionState, persistent_h1_rank, reduce, standard_filtration


@dataclass
class ShortestPathTree:
    root: int
    dist: list[float]
    parent: list[int]
    parent_edge: list[int]
    order: list[int]  # vertices in the order Dijkstra settled them

    @property
    def tree_edges(self) -> list[int]:
        """Tree edge ordinals in discovery order."""
        return [self.parent_edge[v] for v in self.order[1:]]

    @property
    def reachable(self) -> list[int]:
        return sorted(self.order)

    def path_to_root(self, v: int) -> list[int]:
        path = [v]
        while self.parent[v] >= 0:
            v = self.parent[v]
            path.append(v)
        return path


def shortest_path_tree(complex: SimplicialComplex2, root: int) -> ShortestPathTree:
    """Dijkstra with a total tie-break on ``(distance, parent index, edge ordinal)``."""
    n = complex.n_vertices
    if not 0 <= root < n:
        raise IndexError(f"root {root} not in complex")
    adj = complex.adjacency()
    weights = complex.weights
    dist = [math.inf] * n
    parent = [-1] * n
    pedge = [-1] * n
    done = [False] * n
    order = []
    dist[root] = 0.0
    heap = [(0.0, root)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u] or d > dist[u]:
            continue
        done[u] = True
        order.append(u)
        for v, i in adj[u]:
            if done[v]:
                continue
            nd = d + weights[i]
            if (nd, u, i) < (dist[v], parent[v], pedge[v]):
                dist[v], parent[v], pedge[v] = nd, u, i
                heapq.heappush(heap, (nd, v))
    return ShortestPathTree(root, dist, parent, pedge, order)


@dataclass(frozen=True)
class CanonicalLoop:
    root: int
    edge: int  # ordinal of the defining non-tree edge; doubles as its tie-break number
    raw_length: float
    loop: Loop

    @property
    def sort_key(self) -> tuple[float, int, int]:
        return (self.raw_length, self.root, self.edge)


def canonical_loop(complex: SimplicialComplex2, spt: ShortestPathTree, edge: int) -> CanonicalLoop:
    e = complex.edges[edge]
    q1, q2 = e.u, e.v
    p1, p2 = spt.path_to_root(q1), spt.path_to_root(q2)
    # strip the shared stem; what is left is a simple cycle through the branch point
    while len(p1) > 1 and len(p2) > 1 and p1[-2] == p2[-2]:
        p1.pop()
        p2.pop()
    assert p1[-1] == p2[-1], "endpoints lie in different trees"
    chain = 1 << edge
    for path in (p1, p2):
        for v in path[:-1]:
            chain ^= 1 << spt.parent_edge[v]
    assert chain >> edge & 1, "canonical loop lost its defining edge"
    traversal = tuple(reversed(p1)) + tuple(p2[:-1])
    raw = spt.dist[q1] + e.weight + spt.dist[q2]
    loop = Loop(chain, traversal, loop_length(complex, chain), root=spt.root, edge=edge)
    return CanonicalLoop(spt.root, edge, raw, loop)


def canonical_order(spt: ShortestPathTree, complex: SimplicialComplex2) -> list[int]:
    """Non-tree edges of the root's component sorted by (raw loop length, ordinal)."""
    tree = set(spt.tree_edges)
    dist = spt.dist
    keyed = []
    for i, e in enumerate(complex.edges):
        if i in tree or math.isinf(dist[e.u]):
            continue
        keyed.append((dist[e.u] + e.weight + dist[e.v], i))
    keyed.sort()
    return [i for _, i in keyed]


@dataclass
class GreedySet:
    root: int
    loops: list[CanonicalLoop]
    tree: ShortestPathTree
    state: ReductionState | None = None

    def __len__(self):
        return len(self.loops)

    @property
    def lengths(self) -> list[float]:
        return [c.loop.length for c in self.loops]


def canon_gen(
    root: int, complex: SimplicialComplex2, keep_state: bool = True, beta1: int | None = None
) -> GreedySet:
    """Greedy set of the canonical loops at ``root``, read off a single persistence run.

    The filtration is the root's component: vertices, tree edges in discovery
    order, non-tree edges in canonical order, triangles in storage order.
    Passing the component's ``beta1`` lets the run stop once every killable
    edge is paired; the triangles left over could only be positive.
    """
    spt = shortest_path_tree(complex, root)
    nontree = canonical_order(spt, complex)
    verts = spt.reachable
    vpos = {v: i for i, v in enumerate(verts)}
    edges = complex.edges
    simplices: list[tuple[int, ...]] = [(v,) for v in verts]
    cols = [0] * len(verts)
    epos: dict[tuple[int, int], int] = {}
    for i in spt.tree_edges + nontree:
        e = edges[i]
        epos[e.key] = len(simplices)
        simplices.append(e.key)
        cols.append(1 << vpos[e.u] | 1 << vpos[e.v])
    tri_simplices, tri_cols = [], []
    for t in complex.triangles:
        if t.a in vpos:
            tri_simplices.append(t.key)
            tri_cols.append(1 << epos[t.a, t.b] | 1 << epos[t.a, t.c] | 1 << epos[t.b, t.c])
    state = ReductionState()
    state.extend_columns(simplices, cols)
    state.extend_columns(tri_simplices, tri_cols, None if beta1 is None else len(nontree) - beta1)
    loops = []
    for i in nontree:
        if state.partner[epos[edges[i].key]] < 0:
            loops.append(canonical_loop(complex, spt, i))
    return GreedySet(root, loops, spt, state if keep_state else None)


def component_betti1(complex: SimplicialComplex2) -> dict[int, int]:
    """First Betti number per component, keyed by the component's smallest vertex."""
    comps = complex.components()
    out = {c: 0 for c in comps}
    state = reduce(standard_filtration(complex))
    for i, s in enumerate(state.simplices):
        if len(s) == 2 and state.partner[i] < 0:
            out[comps[s[0]]] += 1
    return out


def _cone(state: ReductionState, loop: Loop, complex: SimplicialComplex2) -> None:
    """Cone ``loop`` off a fresh dummy vertex, appending to ``state`` in place.

    Loops from another component than the one ``state`` covers are skipped.
    """
    edges = [complex.edges[i] for i in loop.edge_ordinals()]
    if not edges or (edges[0].u,) not in state.index:
        return
    apex = state.max_vertex() + 1
    state.append((apex,))
    for a in sorted({x for e in edges for x in (e.u, e.v)}):
        state.append((a, apex))
    for e in sorted(edges, key=lambda e: e.key):
        state.append((e.u, e.v, apex))


def seal_check(
    root_state: ReductionState,
    selected: Sequence[Loop],
    candidate: CanonicalLoop,
    complex: SimplicialComplex2,
    inplace: bool = False,
) -> bool:
    """True iff ``candidate`` stays independent of ``selected`` in H1.

    Each selected loop is sealed with its own cone; the root's reduction is
    continued over the cones and the candidate's defining edge is checked for
    a partner.
    """
    if not selected:
        return True
    state = root_state if inplace else root_state.copy()
    for g in selected:
        _cone(state, g, complex)
    return state.partner[state.index[complex.edges[candidate.edge].key]] < 0


class _SealCache:
    """Per-root reductions continued over the cones of the accepted prefix.

    The accepted prefix only grows, so cones already appended for a root stay
    valid and only the new ones are added on the next check.
    """

    def __init__(self, complex: SimplicialComplex2, cache: bool, betti: dict[int, int]):
        self.complex = complex
        self.cache = cache
        self.betti = betti
        self.comps = complex.components()
        self.states: dict[int, tuple[ReductionState, int]] = {}

    def _root_state(self, root: int) -> ReductionState:
        return canon_gen(root, self.complex, beta1=self.betti[self.comps[root]]).state

    def independent(self, cand: CanonicalLoop, accepted: Sequence[Loop]) -> bool:
        if not accepted:
            return True
        if not self.cache:
            state = self._root_state(cand.root)
            return seal_check(state, accepted, cand, self.complex, inplace=True)
        if cand.root in self.states:
            state, n_sealed = self.states[cand.root]
        else:
            state, n_sealed = self._root_state(cand.root), 0
        for g in accepted[n_sealed:]:
            _cone(state, g, self.complex)
        self.states[cand.root] = (state, len(accepted))
        return state.partner[state.index[self.complex.edges[cand.edge].key]] < 0


def annotated_greedy(root: int, complex: SimplicialComplex2, ann: Annotation, beta1: int) -> list[CanonicalLoop]:
    """The root's greedy set, by rank tests on class vectors; same loops as ``canon_gen``."""
    spt = shortest_path_tree(complex, root)
    cls = ann.edge_class
    pot = [0] * complex.n_vertices
    for v in spt.order[1:]:
        pot[v] = pot[spt.parent[v]] ^ cls[spt.parent_edge[v]]
    span = ClassSpan()
    loops = []
    for i in canonical_order(spt, complex):
        if len(loops) == beta1:
            break
        e = complex.edges[i]
        if span.add(pot[e.u] ^ pot[e.v] ^ cls[i]):
            loops.append(canonical_loop(complex, spt, i))
    return loops


def _greedy_loops(args):
    root, complex, beta1, ann = args
    if ann is not None:
        return annotated_greedy(root, complex, ann, beta1)
    return canon_gen(root, complex, keep_state=False, beta1=beta1).loops


class _ClassCheck:
    def __init__(self, ann: Annotation):
        self.ann = ann
        self.span = ClassSpan()

    def independent(self, cand: CanonicalLoop, accepted: Sequence[Loop]) -> bool:
        return self.span.add(self.ann.cycle_class(cand.loop.chain))


ENGINES = ("annotation", "persistence")


@dataclass
class SPGenTrace:
    """Per-root greedy set sizes and every independence decision, for inspection."""

    greedy_sizes: list[int] = field(default_factory=list)
    decisions: list[tuple[tuple[Loop, ...], CanonicalLoop, bool]] = field(default_factory=list)


def sp_gen(
    complex: SimplicialComplex2,
    cache: bool = True,
    max_loops: int | None = None,
    n_jobs: int | None = None,
    trace: SPGenTrace | None = None,
    on_decision: Callable[[Sequence[Loop], CanonicalLoop, bool], None] | None = None,
    engine: str = "annotation",
) -> BasisResult:
    """Shortest basis of H1 of ``complex`` with Z2 coefficients.

    ``max_loops`` stops the greedy early; since loops are accepted in
    non-decreasing length, the result is then the ``max_loops`` shortest
    members of a shortest basis. ``engine`` picks how independence is
    decided; both return identical loops. ``cache`` only affects the
    persistence engine.
    """
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    n = complex.n_vertices
    if n == 0:
        raise ValueError("complex has no vertices")
    ann = annotate(complex) if engine == "annotation" else None
    betti = component_ranks(complex, ann) if ann is not None else component_betti1(complex)
    comps = complex.components()
    target = sum(betti.values())
    if max_loops is not None:
        target = min(target, max_loops)

    jobs = [(p, complex, betti[comps[p]], ann) for p in range(n)]
    if n_jobs is not None and n_jobs != 1 and n > 1:
        workers = None if n_jobs < 0 else n_jobs
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_root = list(pool.map(_greedy_loops, jobs, chunksize=max(1, n // 32)))
    else:
        per_root = [_greedy_loops(j) for j in jobs]

    for p, loops in enumerate(per_root):
        if len(loops) != betti[comps[p]]:
            raise AssertionError(f"root {p}: greedy set has {len(loops)} loops, component rank is {betti[comps[p]]}")
    if trace is not None:
        trace.greedy_sizes = [len(x) for x in per_root]

    candidates = sorted((c for loops in per_root for c in loops), key=lambda c: c.sort_key)
    sealer = _ClassCheck(ann) if ann is not None else _SealCache(complex, cache, betti)
    accepted: list[Loop] = []
    for cand in candidates:
        if len(accepted) >= target:
            break
        verdict = sealer.independent(cand, accepted)
        if on_decision is not None and accepted:
            on_decision(tuple(accepted), cand, verdict)
        if trace is not None and accepted:
            trace.decisions.append((tuple(accepted), cand, verdict))
        if verdict:
            accepted.append(cand.loop)
    if len(accepted) != target:
        raise RuntimeError(f"greedy stopped at {len(accepted)} loops, expected {target}")
    return BasisResult(accepted)


@dataclass
class ShortLoopResult(BasisResult):
    augmented: AugmentedComplex | None = None
    persistent_rank: int = 0


def short_loop(
    points, r: float, cache: bool = True, n_jobs: int | None = None, engine: str = "annotation"
) -> ShortLoopResult:
    """Shortest basis of the persistent H1 between the Rips complexes at ``r`` and ``2r``."""
    aug = build_augmented(points, r)
    k = persistent_h1_rank(aug)
    if k == 0:
        return ShortLoopResult([], aug, 0)
    basis = sp_gen(aug.complex, cache=cache, max_loops=k, n_jobs=n_jobs, engine=engine)
    if basis.rank < k:
        raise RuntimeError(f"basis has {basis.rank} loops but the persistent rank is {k}")
    for g in basis.loops:
        if any(not aug.is_small_edge(i) for i in g.edge_ordinals()):
            raise RuntimeError("a returned loop uses an edge longer than r")
    return ShortLoopResult(basis.loops[:k], aug, k)
