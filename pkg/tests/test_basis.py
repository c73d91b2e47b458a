import math
import random

import numpy as np
import pytest

from helpers import FIXTURES, c4, circle_points, filled_triangle, make, random_complex, theta, wedge
from shortloop.basis import (
    SPGenTrace,
    canon_gen,
    canonical_loop,
    canonical_order,
    component_betti1,
    seal_check,
    short_loop,
    shortest_path_tree,
    sp_gen,
)
from shortloop.complex import chain_from_edges, is_cycle
from shortloop.oracle import boundary_space, brute_force_shortest_basis, homology_independent, oracle_betti
from shortloop.persistence import build_filtration, reduce


def floyd_warshall(k):
    n = k.n_vertices
    d = [[math.inf] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = 0.0
    for e in k.edges:
        d[e.u][e.v] = d[e.v][e.u] = min(d[e.u][e.v], e.weight)
    for m in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][m] + d[m][j] < d[i][j]:
                    d[i][j] = d[i][m] + d[m][j]
    return d


# --- shortest path trees ---------------------------------------------------


def test_spt_star():
    k = make(5, [(0, v, 1) for v in range(1, 5)])
    spt = shortest_path_tree(k, 0)
    assert spt.dist == [0, 1, 1, 1, 1]
    assert spt.parent[1:] == [0, 0, 0, 0]


def test_spt_square_tie_break_prefers_lower_neighbor():
    spt = shortest_path_tree(c4(), 0)
    assert spt.dist[2] == 2
    assert spt.parent[2] == 1


def test_spt_theta_direct_edge():
    spt = shortest_path_tree(theta(), 0)
    assert spt.dist[1] == 1 and spt.parent[1] == 0


def test_spt_distances_match_all_pairs_oracle():
    rng = random.Random(3)
    for _ in range(60):
        k = random_complex(rng, max_vertices=12, max_edges=30, zero_weights=True)
        d = floyd_warshall(k)
        for root in range(k.n_vertices):
            spt = shortest_path_tree(k, root)
            assert spt.dist == d[root]
            for v in spt.order[1:]:
                w = k.edges[spt.parent_edge[v]].weight
                assert spt.dist[v] == spt.dist[spt.parent[v]] + w


# --- canonical loops -------------------------------------------------------


def test_canonical_order_single_nontree_edge():
    k = c4()
    assert len(canonical_order(shortest_path_tree(k, 0), k)) == 1


def test_canonical_order_wedge_ties_use_edge_ordinal():
    k = wedge()
    order = canonical_order(shortest_path_tree(k, 0), k)
    assert [k.edges[i].key for i in order] == [(1, 2), (3, 4)]


def test_canonical_order_theta():
    k = theta()
    spt = shortest_path_tree(k, 0)
    order = canonical_order(spt, k)
    assert [canonical_loop(k, spt, i).raw_length for i in order] == [3, 5]


def test_canonical_loops_are_cycles_with_raw_length():
    rng = random.Random(5)
    for _ in range(50):
        k = random_complex(rng, max_vertices=9, max_edges=20, zero_weights=True)
        for root in range(k.n_vertices):
            spt = shortest_path_tree(k, root)
            for i in canonical_order(spt, k):
                c = canonical_loop(k, spt, i)
                e = k.edges[i]
                assert c.raw_length == spt.dist[e.u] + e.weight + spt.dist[e.v]
                assert is_cycle(k, c.loop.chain)
                assert c.loop.chain >> i & 1
                assert c.loop.length <= c.raw_length + 1e-12
                walk = c.loop.traversal
                assert chain_from_edges(k, zip(walk, walk[1:] + walk[:1])) == c.loop.chain


def test_canon_gen_examples():
    assert canon_gen(0, wedge()).lengths == [3, 3]
    assert canon_gen(1, filled_triangle()).lengths == []
    assert canon_gen(0, c4()).lengths == [4]


def test_canon_gen_size_is_component_betti():
    rng = random.Random(9)
    fixtures = [f() for name, f in FIXTURES.items() if name != "empty"]
    fixtures += [random_complex(rng, zero_weights=True) for _ in range(60)]
    for k in fixtures:
        comps = k.components()
        betti = component_betti1(k)
        assert sum(betti.values()) == oracle_betti(k)[1]
        for root in range(k.n_vertices):
            assert len(canon_gen(root, k)) == betti[comps[root]]
            assert len(canon_gen(root, k, beta1=betti[comps[root]])) == betti[comps[root]]


def test_canon_gen_agrees_with_generic_filtration_route():
    rng = random.Random(12)
    for _ in range(40):
        k = random_complex(rng, max_vertices=8, max_edges=16, p_triangle=0.5)
        for root in range(k.n_vertices):
            spt = shortest_path_tree(k, root)
            nontree = canonical_order(spt, k)
            comp = set(spt.order)
            tris = [i for i, t in enumerate(k.triangles) if t.a in comp]
            state = reduce(build_filtration(k, spt.tree_edges + nontree, tris, vertices=spt.reachable))
            unpaired = [i for i in nontree if state.partner[state.index[k.edges[i].key]] < 0]
            assert [c.edge for c in canon_gen(root, k).loops] == unpaired


def test_canon_gen_is_the_greedy_set_of_the_canonical_loops():
    """Explicit greedy over every canonical loop of a root, with a linear-algebra independence test."""
    rng = random.Random(21)
    for _ in range(60):
        k = random_complex(rng, max_vertices=8, max_edges=16, zero_weights=True)
        bs = boundary_space(k)
        for root in range(k.n_vertices):
            spt = shortest_path_tree(k, root)
            chosen = []
            for i in canonical_order(spt, k):
                c = canonical_loop(k, spt, i)
                if homology_independent(c.loop.chain, [g.loop.chain for g in chosen], bs):
                    chosen.append(c)
            assert [c.edge for c in canon_gen(root, k).loops] == [c.edge for c in chosen]


# --- sealing ---------------------------------------------------------------


def test_seal_check_on_wedge():
    k = wedge()
    g = canon_gen(0, k)
    loop_a, loop_b = g.loops
    assert seal_check(g.state, [], loop_a, k)
    assert not seal_check(g.state, [loop_a.loop], loop_a, k)
    assert seal_check(g.state, [loop_a.loop], loop_b, k)
    bs = boundary_space(k)
    assert homology_independent(loop_b.loop.chain, [loop_a.loop.chain], bs)


def test_seal_check_leaves_root_state_untouched():
    k = wedge()
    g = canon_gen(0, k)
    before = (list(g.state.partner), list(g.state.columns))
    seal_check(g.state, [g.loops[0].loop], g.loops[1], k)
    assert (g.state.partner, g.state.columns) == before


# --- SPGen -----------------------------------------------------------------


def test_sp_gen_theta():
    basis = sp_gen(theta())
    assert basis.lengths == [3, 5]
    assert basis.total_length == 8
    bs = boundary_space(theta())
    six = chain_from_edges(theta(), [(0, 2), (1, 2), (0, 3), (1, 3)])
    assert not homology_independent(six, [g.chain for g in basis.loops], bs)


def test_sp_gen_filled_triangle_and_c4():
    assert sp_gen(filled_triangle()).lengths == []
    assert sp_gen(c4()).lengths == [4]


def test_sp_gen_torus_and_disconnected():
    assert sp_gen(FIXTURES["torus7"]()).lengths == [3, 3]
    assert sp_gen(FIXTURES["two_triangles"]()).lengths == [3, 3]


def test_sp_gen_rejects_empty_complex_and_unknown_engine():
    with pytest.raises(ValueError):
        sp_gen(make(0, []))
    with pytest.raises(ValueError):
        sp_gen(theta(), engine="magic")


def test_sp_gen_provenance():
    for g in sp_gen(theta()).loops:
        assert g.root is not None and g.edge is not None
        assert g.chain >> g.edge & 1


def _random_instances(count, seed, **kw):
    rng = random.Random(seed)
    out = []
    from shortloop.oracle import cycle_space

    while len(out) < count:
        k = random_complex(rng, **kw)
        if cycle_space(k).dimension <= 11:
            out.append(k)
    return out


@pytest.mark.parametrize("engine,cache,seed", [("annotation", True, 1), ("persistence", True, 2), ("persistence", False, 3)])
def test_sp_gen_matches_brute_force(engine, cache, seed):
    for k in _random_instances(150, seed=seed, max_vertices=9, max_edges=16, zero_weights=True):
        got = sp_gen(k, cache=cache, engine=engine).lengths
        assert sorted(got) == sorted(brute_force_shortest_basis(k).lengths)


def test_sp_gen_lengths_non_decreasing():
    for k in _random_instances(80, seed=4, max_vertices=9, max_edges=16):
        lengths = sp_gen(k).lengths
        assert lengths == sorted(lengths)


def test_seal_check_agrees_with_linear_algebra():
    n_decisions = 0
    for k in _random_instances(150, seed=6, max_vertices=9, max_edges=16, zero_weights=True):
        bs = boundary_space(k)
        trace = SPGenTrace()
        sp_gen(k, trace=trace, engine="persistence")
        for prefix, cand, verdict in trace.decisions:
            n_decisions += 1
            assert verdict == homology_independent(cand.loop.chain, [g.chain for g in prefix], bs)
            root_state = canon_gen(cand.root, k).state
            assert seal_check(root_state, prefix, cand, k) == verdict
    assert n_decisions > 50


def test_sp_gen_cache_modes_and_parallel_agree():
    for k in _random_instances(8, seed=8, max_vertices=9, max_edges=16):
        a = sp_gen(k)
        assert sp_gen(k, engine="persistence").loops == a.loops
        assert sp_gen(k, engine="persistence", cache=False).loops == a.loops
        assert sp_gen(k, n_jobs=2).loops == a.loops
        assert sp_gen(k, engine="persistence", n_jobs=2).loops == a.loops


def test_sp_gen_is_deterministic():
    for k in _random_instances(20, seed=10):
        assert sp_gen(k).loops == sp_gen(k).loops


def test_sp_gen_max_loops_is_a_prefix():
    for k in _random_instances(30, seed=13, max_vertices=9, max_edges=16):
        full = sp_gen(k)
        for m in range(full.rank + 1):
            assert sp_gen(k, max_loops=m).loops == full.loops[:m]


# --- ShortLoop -------------------------------------------------------------


def test_short_loop_equilateral_small_loop_dies():
    X = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3) / 2]])
    res = short_loop(X, 1.1)
    assert res.persistent_rank == 0 and res.loops == []


def test_short_loop_scale_beyond_diameter():
    X = np.random.default_rng(0).uniform(size=(10, 2))
    assert short_loop(X, 10.0).rank == 0


def test_short_loop_circle_uses_only_small_edges():
    res = short_loop(circle_points(60), 0.25)
    assert res.persistent_rank == 1
    (g,) = res.loops
    aug = res.augmented
    assert all(aug.complex.edges[i].weight < aug.sentinel for i in g.edge_ordinals())
    assert all(aug.is_small_edge(i) for i in g.edge_ordinals())
