"""Rips and Čech complexes (up to triangles) from point clouds.

All distance thresholds are closed: an edge ``(p, q)`` is present when
``|p - q| <= r``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .complex import ParseError, SimplicialComplex2


@dataclass(frozen=True)
class AugmentedComplex:
    """The Rips complex at scale ``2r`` whose long edges carry a sentinel weight.

    Edges ``0..small_edge_count-1`` are the Rips edges at scale ``r`` (weighted
    by length); every later edge has weight ``sentinel``.
    """

    complex: SimplicialComplex2
    small_edge_count: int
    sentinel: float
    r: float

    def is_small_edge(self, ordinal: int) -> bool:
        return ordinal < self.small_edge_count

    @property
    def small_triangle_mask(self) -> list[bool]:
        k = self.complex
        return [
            all(k.edge_index(a, b) < self.small_edge_count for a, b in t.edge_keys())
            for t in k.triangles
        ]


def check_points(points) -> np.ndarray:
    X = np.asarray(points, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D array of points, got shape {X.shape}")
    if X.shape[0] == 0:
        raise ValueError("point cloud is empty")
    if not np.all(np.isfinite(X)):
        raise ValueError("point cloud contains non-finite coordinates")
    return X


def _check_r(r: float) -> float:
    r = float(r)
    if not r > 0 or not math.isfinite(r):
        raise ValueError(f"scale r must be a positive finite number, got {r}")
    return r


def pairwise_distances(X: np.ndarray) -> np.ndarray:
    diff = X[:, None, :] - X[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def _neighbor_edges(D: np.ndarray, r: float) -> list[tuple[int, int, float]]:
    iu, ju = np.nonzero(np.triu(D <= r, k=1))
    return [(int(i), int(j), float(D[i, j])) for i, j in zip(iu, ju)]


def _clique_triangles(n: int, edges, accept=None) -> list[tuple[int, int, int]]:
    """Triangles spanned by ``edges``, in lexicographic order.

    Each triangle is found once from its smallest edge by intersecting the
    up-neighbor sets of the two endpoints.
    """
    up: list[set[int]] = [set() for _ in range(n)]
    for u, v, _ in edges:
        up[u].add(v)
    tris = []
    for u in range(n):
        for v in sorted(up[u]):
            for w in sorted(up[u] & up[v]):
                if accept is None or accept(u, v, w):
                    tris.append((u, v, w))
    return tris


def build_rips(points, r: float) -> SimplicialComplex2:
    X = check_points(points)
    r = _check_r(r)
    D = pairwise_distances(X)
    edges = _neighbor_edges(D, r)
    tris = _clique_triangles(len(X), edges)
    return SimplicialComplex2(len(X), edges, tris)


def min_enclosing_ball_radius(p1, p2, p3) -> float:
    """Radius of the smallest ball containing three points in any dimension."""
    pts = [np.asarray(p, dtype=float).ravel() for p in (p1, p2, p3)]
    if len({p.shape for p in pts}) != 1:
        raise ValueError("points must share a dimension")
    a, b, c = pts
    sides = [(np.linalg.norm(b - c), a, b, c), (np.linalg.norm(a - c), b, a, c), (np.linalg.norm(a - b), c, a, b)]
    longest, opposite, x, y = max(sides, key=lambda s: s[0])
    half = longest / 2.0
    if np.linalg.norm(opposite - (x + y) / 2.0) <= half:
        return float(half)
    u, v = b - a, c - a
    uu, vv, uv = u @ u, v @ v, u @ v
    area2 = uu * vv - uv * uv  # (2 * area)^2
    if area2 <= 0:
        return float(half)
    ab, ac, bc = math.sqrt(uu), math.sqrt(vv), float(np.linalg.norm(c - b))
    return float(ab * ac * bc / (2.0 * math.sqrt(area2)))


def build_cech(points, r: float) -> SimplicialComplex2:
    X = check_points(points)
    r = _check_r(r)
    D = pairwise_distances(X)
    edges = _neighbor_edges(D, r)
    half = r / 2.0
    tris = _clique_triangles(
        len(X), edges, accept=lambda u, v, w: min_enclosing_ball_radius(X[u], X[v], X[w]) <= half
    )
    return SimplicialComplex2(len(X), edges, tris)


def sentinel_weight(small_lengths) -> float:
    """``1 + (n + 1) * sum`` for the ``n`` small-edge lengths; beats any basis of small loops."""
    small_lengths = list(small_lengths)
    return 1.0 + (len(small_lengths) + 1) * math.fsum(small_lengths)


def build_augmented(points, r: float) -> AugmentedComplex:
    X = check_points(points)
    r = _check_r(r)
    D = pairwise_distances(X)
    big = _neighbor_edges(D, 2 * r)
    small = [e for e in big if e[2] <= r]
    long_ = [e for e in big if e[2] > r]
    W = sentinel_weight(w for _, _, w in small)
    edges = small + [(u, v, W) for u, v, _ in long_]
    tris = _clique_triangles(len(X), big)
    return AugmentedComplex(SimplicialComplex2(len(X), edges, tris), len(small), W, r)


_SPLIT = re.compile(r"[,\s]+")


def parse_points(text: str) -> np.ndarray:
    rows: list[list[float]] = []
    dim = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = [t for t in _SPLIT.split(line) if t]
        try:
            row = [float(t) for t in tokens]
        except ValueError:
            raise ParseError(f"non-numeric coordinate in {line!r}", lineno) from None
        if not all(math.isfinite(x) for x in row):
            raise ParseError(f"non-finite coordinate in {line!r}", lineno)
        if dim is None:
            dim = len(row)
        elif len(row) != dim:
            raise ParseError(f"expected {dim} coordinates, got {len(row)}", lineno)
        rows.append(row)
    if not rows:
        raise ParseError("no points found")
    return np.array(rows, dtype=float)


def format_points(X) -> str:
    return "".join(" ".join(repr(float(x)) for x in row) + "\n" for row in np.asarray(X))
