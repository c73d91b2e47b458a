"""Shortest one-dimensional homology bases over Z2.

Works on any weighted 2-complex, and on point samples through the Rips
complexes at scales ``r`` and ``2r``.
"""

from .annotation import Annotation, annotate
from .basis import (
    ENGINES,
    CanonicalLoop,
    GreedySet,
    ShortLoopResult,
    ShortestPathTree,
    canon_gen,
    canonical_order,
    seal_check,
    short_loop,
    shortest_path_tree,
    sp_gen,
)
from .build import AugmentedComplex, build_augmented, build_cech, build_rips, min_enclosing_ball_radius
from .complex import BasisResult, Loop, SimplicialComplex2, boundary, loop_length, validate
from .estimator import ShortestHomologyBasis, ShortLoop
from .oracle import brute_force_shortest_basis, homology_independent
from .persistence import (
    Filtration,
    ReductionState,
    betti_numbers,
    build_filtration,
    extend_reduce,
    persistent_h1_rank,
    reduce,
)

__version__ = "0.1.0"
