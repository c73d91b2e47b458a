"""scikit-learn style front ends.

``ShortLoop`` takes a point cloud; ``ShortestHomologyBasis`` takes a weighted
complex. Both follow the usual fit / fitted-attribute conventions so they sit
in pipelines and grid searches over ``r``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .basis import short_loop, sp_gen
from .complex import ComplexError, SimplicialComplex2, validate
from .oracle import brute_force_shortest_basis
from .persistence import betti_numbers


class ShortLoop(BaseEstimator):
    """Shortest basis of the persistent H1 of the Rips complexes at ``r`` and ``2r``.

    Parameters
    ----------
    r : float
        Rips scale. Loops are built from edges no longer than ``r``; only
        classes that survive to scale ``2r`` are kept.
    engine : {"annotation", "persistence"}
        How independence is decided. Both give identical loops.
    cache : bool
        Persistence engine only: keep per-root reductions between checks.
    n_jobs : int or None
        Worker processes for the per-root pass; ``None`` or 1 runs serially.

    Attributes
    ----------
    rank_ : int
        Persistent H1 rank.
    loops_ : list of ndarray
        Vertex indices of each loop as a closed walk (first vertex not repeated).
    lengths_ : ndarray of shape (rank_,)
    basis_ : ShortLoopResult
    augmented_ : AugmentedComplex
    """

    def __init__(self, r=0.2, engine="annotation", cache=True, n_jobs=None):
        self.r = r
        self.engine = engine
        self.cache = cache
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        X = check_array(X, ensure_min_samples=1, dtype=np.float64)
        if not self.r > 0:
            raise ValueError(f"r must be positive, got {self.r}")
        result = short_loop(X, self.r, cache=self.cache, n_jobs=self.n_jobs, engine=self.engine)
        self.basis_ = result
        self.augmented_ = result.augmented
        self.rank_ = result.persistent_rank
        self.loops_ = [np.array(g.traversal, dtype=int) for g in result.loops]
        self.lengths_ = np.array(result.lengths, dtype=float)
        self.n_features_in_ = X.shape[1]
        self.points_ = X
        return self

    def loop_coordinates(self):
        """Coordinates of each loop's walk, closed by repeating its first point."""
        check_is_fitted(self, "loops_")
        return [self.points_[np.r_[idx, idx[:1]]] for idx in self.loops_]


class ShortestHomologyBasis(BaseEstimator):
    """Shortest H1 basis of a weighted 2-complex.

    ``method="spgen"`` runs the shortest-path-tree algorithm; ``"brute-force"``
    enumerates the cycle space and is only feasible for tiny complexes.
    """

    def __init__(self, method="spgen", engine="annotation", cache=True, n_jobs=None):
        self.method = method
        self.engine = engine
        self.cache = cache
        self.n_jobs = n_jobs

    def fit(self, X: SimplicialComplex2, y=None):
        if not isinstance(X, SimplicialComplex2):
            raise TypeError("ShortestHomologyBasis.fit expects a SimplicialComplex2")
        problems = validate(X)
        if problems:
            raise ComplexError("; ".join(problems))
        if self.method == "spgen":
            self.basis_ = sp_gen(X, cache=self.cache, n_jobs=self.n_jobs, engine=self.engine)
        elif self.method == "brute-force":
            self.basis_ = brute_force_shortest_basis(X)
        else:
            raise ValueError(f"unknown method {self.method!r}")
        self.betti_ = betti_numbers(X)
        self.rank_ = self.basis_.rank
        self.lengths_ = np.array(self.basis_.lengths, dtype=float)
        return self
