"""Z2 persistence by left-to-right column reduction.

Columns and rows are both indexed by filtration ordinal. A column is an int
bit-set over the ordinals of its faces, so its *low* (the youngest face) is
``col.bit_length() - 1`` and adding two columns is ``^``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .build import AugmentedComplex
from .complex import SimplicialComplex2

Simplex = tuple[int, ...]


class FiltrationError(ValueError):
    pass


def _faces(simplex: Simplex) -> list[Simplex]:
    if len(simplex) == 1:
        return []
    return [simplex[:i] + simplex[i + 1 :] for i in range(len(simplex))]


class Filtration:
    """A face-respecting total order of simplices given as sorted vertex tuples."""

    def __init__(self, simplices: Iterable[Sequence[int]]):
        self.simplices: tuple[Simplex, ...] = tuple(tuple(sorted(s)) for s in simplices)
        self.index: dict[Simplex, int] = {}
        for i, s in enumerate(self.simplices):
            if not 1 <= len(s) <= 3 or len(set(s)) != len(s):
                raise FiltrationError(f"invalid simplex {s}")
            if s in self.index:
                raise FiltrationError(f"simplex {s} appears twice")
            for f in _faces(s):
                if f not in self.index:
                    raise FiltrationError(f"face {f} of {s} does not precede it")
            self.index[s] = i

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    def __add__(self, other: Iterable[Sequence[int]]) -> "Filtration":
        return Filtration(list(self.simplices) + [tuple(s) for s in other])


def build_filtration(
    complex: SimplicialComplex2,
    edge_order: Sequence[int],
    triangle_order: Sequence[int],
    vertices: Sequence[int] | None = None,
) -> Filtration:
    """Vertices, then edges in ``edge_order``, then triangles in ``triangle_order``.

    Orders are lists of ordinals into the complex's edge and triangle storage.
    With ``vertices=None`` every simplex of the complex must appear exactly
    once; otherwise the orders must cover exactly the subcomplex induced on
    ``vertices`` (used for a single connected component).
    """
    if vertices is None:
        vertices = range(complex.n_vertices)
        want_e, want_t = set(range(complex.n_edges)), set(range(complex.n_triangles))
    else:
        vs = set(vertices)
        want_e = {i for i, e in enumerate(complex.edges) if e.u in vs}
        want_t = {i for i, t in enumerate(complex.triangles) if t.a in vs}
    edge_order, triangle_order = list(edge_order), list(triangle_order)
    if len(edge_order) != len(want_e) or set(edge_order) != want_e:
        raise FiltrationError("edge order must list every edge exactly once")
    if len(triangle_order) != len(want_t) or set(triangle_order) != want_t:
        raise FiltrationError("triangle order must list every triangle exactly once")
    simplices: list[Simplex] = [(v,) for v in vertices]
    simplices += [complex.edges[i].key for i in edge_order]
    simplices += [complex.triangles[i].key for i in triangle_order]
    return Filtration(simplices)


def standard_filtration(complex: SimplicialComplex2) -> Filtration:
    return build_filtration(complex, range(complex.n_edges), range(complex.n_triangles))


@dataclass
class PersistencePairs:
    pairs: list[tuple[int, int]]
    essential: dict[int, list[int]]


@dataclass
class ReductionState:
    """Reduced boundary matrix plus pairing; grows by appending simplices."""

    simplices: list[Simplex] = field(default_factory=list)
    index: dict[Simplex, int] = field(default_factory=dict)
    columns: list[int] = field(default_factory=list)
    low: dict[int, int] = field(default_factory=dict)
    partner: list[int] = field(default_factory=list)

    def copy(self) -> "ReductionState":
        # columns are immutable ints, so shallow list copies are deep enough
        return ReductionState(
            list(self.simplices), dict(self.index), list(self.columns), dict(self.low), list(self.partner)
        )

    snapshot = copy

    def __len__(self):
        return len(self.simplices)

    def dim(self, ordinal: int) -> int:
        return len(self.simplices[ordinal]) - 1

    def is_paired(self, ordinal: int) -> bool:
        return self.partner[ordinal] >= 0

    def is_positive(self, ordinal: int) -> bool:
        return self.columns[ordinal] == 0

    def max_vertex(self) -> int:
        return max((s[-1] for s in self.simplices), default=-1)

    def append(self, simplex: Sequence[int]) -> int:
        s = tuple(sorted(simplex))
        if s in self.index:
            raise FiltrationError(f"simplex {s} already in filtration")
        col = 0
        for f in _faces(s):
            try:
                col |= 1 << self.index[f]
            except KeyError:
                raise FiltrationError(f"face {f} of {s} is not in the filtration") from None
        j = len(self.simplices)
        self.extend_columns([s], [col])
        return j

    def extend_columns(
        self, simplices: Sequence[Simplex], boundaries: Sequence[int], max_negative: int | None = None
    ) -> int:
        """Append simplices with precomputed boundary columns (bits over ordinals).

        The caller guarantees faces precede cofaces. With ``max_negative``,
        stops right after that many columns turned out negative. Returns the
        number of simplices consumed.
        """
        low, columns, partner, index = self.low, self.columns, self.partner, self.index
        names = self.simplices
        start = j = len(names)
        negatives = 0
        for s, col in zip(simplices, boundaries):
            if max_negative is not None and negatives >= max_negative:
                break
            while col:
                pivot = col.bit_length() - 1
                other = low.get(pivot)
                if other is None:
                    low[pivot] = j
                    partner[pivot] = j
                    negatives += 1
                    break
                col ^= columns[other]
            names.append(s)
            index[s] = j
            columns.append(col)
            partner.append(pivot if col else -1)
            j += 1
        return j - start

    def pairs(self) -> PersistencePairs:
        pairs = sorted((b, d) for b, d in ((self.partner[d], d) for d in self.low.values()))
        essential: dict[int, list[int]] = {0: [], 1: [], 2: []}
        for i, s in enumerate(self.simplices):
            if self.partner[i] < 0:
                essential.setdefault(len(s) - 1, []).append(i)
        return PersistencePairs(pairs, essential)

    def essential_counts(self) -> tuple[int, int, int]:
        counts = [0, 0, 0]
        for i, s in enumerate(self.simplices):
            if self.partner[i] < 0:
                counts[len(s) - 1] += 1
        return counts[0], counts[1], counts[2]

    def is_reduced(self) -> bool:
        lows = [c.bit_length() - 1 for c in self.columns if c]
        return len(lows) == len(set(lows))

    def dump(self) -> str:
        pp = self.pairs()
        lines = [f"pair {b} {d}" for b, d in pp.pairs]
        lines += [f"essential {i}" for dim in sorted(pp.essential) for i in pp.essential[dim]]
        return "\n".join(lines) + ("\n" if lines else "")


def reduce(filtration: Iterable[Sequence[int]]) -> ReductionState:
    state = ReductionState()
    for s in filtration:
        state.append(s)
    return state


def extend_reduce(
    state: ReductionState, new_simplices: Iterable[Sequence[int]], inplace: bool = False
) -> ReductionState:
    """Continue a reduction with more simplices; the input is untouched unless ``inplace``."""
    out = state if inplace else state.copy()
    for s in new_simplices:
        out.append(s)
    return out


def homology_ranks(complex: SimplicialComplex2) -> tuple[int, int, int]:
    return reduce(standard_filtration(complex)).essential_counts()


def betti_numbers(complex: SimplicialComplex2) -> tuple[int, int]:
    b0, b1, _ = homology_ranks(complex)
    return b0, b1


def persistent_filtration(augmented: AugmentedComplex, order: str = "small-first") -> Filtration:
    """Filtration in which the scale-``r`` Rips complex is a prefix.

    ``order="small-first"`` places the small triangles before the sentinel
    edges; ``order="edges-first"`` puts every edge before every triangle.
    """
    k = augmented.complex
    n_small = augmented.small_edge_count
    if any(e.weight != augmented.sentinel for e in k.edges[n_small:]):
        raise ValueError("augmented complex has non-sentinel edges after the small block")
    mask = augmented.small_triangle_mask
    small_t = [i for i, m in enumerate(mask) if m]
    big_t = [i for i, m in enumerate(mask) if not m]
    if order == "small-first":
        simplices = [(v,) for v in range(k.n_vertices)]
        simplices += [k.edges[i].key for i in range(n_small)]
        simplices += [k.triangles[i].key for i in small_t]
        simplices += [k.edges[i].key for i in range(n_small, k.n_edges)]
        simplices += [k.triangles[i].key for i in big_t]
        return Filtration(simplices)
    if order == "edges-first":
        return build_filtration(k, range(k.n_edges), small_t + big_t)
    raise ValueError(f"unknown order {order!r}")


def persistent_h1_rank(augmented: AugmentedComplex, order: str = "small-first") -> int:
    """Rank of the image of H1 at scale r inside H1 at scale 2r."""
    filt = persistent_filtration(augmented, order)
    state = reduce(filt)
    small = {augmented.complex.edges[i].key for i in range(augmented.small_edge_count)}
    return sum(
        1
        for i, s in enumerate(state.simplices)
        if len(s) == 2 and s in small and state.partner[i] < 0
    )
