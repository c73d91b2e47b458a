"""Shared fixtures: small hand-checkable complexes and seeded random ones."""

import itertools
import math
import random

import numpy as np

from shortloop.complex import SimplicialComplex2


def make(n, edges, triangles=()):
    return SimplicialComplex2.from_simplices(n, edges, triangles)


def theta():
    return make(4, [(0, 1, 1), (0, 2, 1), (1, 2, 1), (0, 3, 2), (1, 3, 2)])


def wedge():
    return make(5, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (0, 3, 1), (3, 4, 1), (0, 4, 1)])


def c4():
    return make(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)])


def filled_triangle():
    return make(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)], [(0, 1, 2)])


def hollow_tetrahedron():
    tris = list(itertools.combinations(range(4), 3))
    return make(4, [(u, v, 1) for u, v in itertools.combinations(range(4), 2)], tris)


def torus7():
    """Seven-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7."""
    tris = set()
    for i in range(7):
        tris.add(tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))))
        tris.add(tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))))
    return make(7, [(u, v, 1) for u, v in itertools.combinations(range(7), 2)], sorted(tris))


FIXTURES = {
    "theta": theta,
    "wedge": wedge,
    "c4": c4,
    "filled_triangle": filled_triangle,
    "hollow_tetrahedron": hollow_tetrahedron,
    "torus7": torus7,
    "two_triangles": lambda: make(6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)]),
    "tree": lambda: make(4, [(0, 1, 1), (1, 2, 3), (1, 3, 2)]),
    "empty": lambda: make(0, []),
}


def random_complex(rng, max_vertices=8, max_edges=14, max_weight=6, zero_weights=False, p_triangle=0.4):
    """Random integer-weighted complex; triangles drawn among the 3-cliques."""
    n = rng.randint(1, max_vertices)
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    chosen = pairs[: rng.randint(0, min(max_edges, len(pairs)))]
    low = 0 if zero_weights else 1
    edges = [(u, v, rng.randint(low, max_weight)) for u, v in chosen]
    present = set(chosen)
    tris = [
        t
        for t in itertools.combinations(range(n), 3)
        if all(p in present for p in itertools.combinations(t, 2)) and rng.random() < p_triangle
    ]
    return make(n, edges, tris)


def seeded_complexes(count, seed=0, max_cycle_rank=10, **kw):
    from shortloop.oracle import cycle_space

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = random_complex(rng, **kw)
        if cycle_space(k).dimension <= max_cycle_rank:
            out.append(k)
    return out


def circle_points(n):
    t = 2 * math.pi * np.arange(n) / n
    return np.c_[np.cos(t), np.sin(t)]


def random_clouds(count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, 21))
        d = int(rng.choice([2, 3]))
        yield rng.uniform(0, 1, size=(n, d)), float(rng.uniform(0.05, 0.8))


def simplex_sets(k):
    return {e.key for e in k.edges}, {t.key for t in k.triangles}


def random_filtration(rng, k):
    """Random face-respecting order of all simplices of ``k``."""
    pending = [(v,) for v in range(k.n_vertices)] + [e.key for e in k.edges] + [t.key for t in k.triangles]
    placed, order = set(), []
    while pending:
        ready = [s for s in pending if len(s) == 1 or all(s[:i] + s[i + 1:] in placed for i in range(len(s)))]
        s = rng.choice(ready)
        pending.remove(s)
        placed.add(s)
        order.append(s)
    return order
