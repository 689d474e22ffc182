"""Scikit-learn style selectors.

``fit(G)`` chooses vantage points for graph ``G`` and stores them in
``vantage_points_``.  ``predict(capacities)`` returns the reveal report of
the fitted points under a concrete capacity assignment, and ``score``
gives the number of revealed edges (or the expected number when no
capacities are passed, for the greedy selector).
"""
from __future__ import annotations

import math
import warnings

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .adaptive import (
    adaptive_tree_deterministic,
    adaptive_tree_randomized,
    grid_r_division,
    load_r_division,
    planar_adaptive,
    planar_r,
)
from .counting import expected_reveals
from .greedy import greedy_non_adaptive
from .reveal import revealed_edges
from .validation import check_capacities, check_graph, check_k


class _SelectorMixin:
    def predict(self, capacities):
        check_is_fitted(self, "vantage_points_")
        c = check_capacities(self.graph_, capacities)
        return revealed_edges(self.graph_, self.vantage_points_, c)

    def score(self, G=None, capacities=None):
        check_is_fitted(self, "vantage_points_")
        if capacities is None:
            raise ValueError("score needs a capacity assignment")
        return len(self.predict(capacities).revealed)

    @property
    def alpha_(self):
        check_is_fitted(self, "vantage_points_")
        return len(self.vantage_points_) / self.k


class GreedyVantageSelector(_SelectorMixin, BaseEstimator):
    """Greedy maximization of the expected number of revealed edges.

    Parameters
    ----------
    k : int
        Number of vantage points.
    lazy : bool
        Re-evaluate only the top of a stale-gain heap each round.
    """

    def __init__(self, k=1, lazy=False):
        self.k = k
        self.lazy = lazy

    def fit(self, G, y=None):
        G = check_graph(G)
        k = check_k(G, self.k)
        self.graph_ = G
        self.trace_ = greedy_non_adaptive(G, k, lazy=self.lazy)
        self.vantage_points_ = list(self.trace_.final_set)
        self.expected_reveals_ = self.trace_.value
        return self

    def score(self, G=None, capacities=None):
        check_is_fitted(self, "vantage_points_")
        if capacities is None:
            graph = self.graph_ if G is None else check_graph(G)
            return expected_reveals(graph, self.vantage_points_)
        return super().score(G, capacities)


class TreeVantageSelector(_SelectorMixin, BaseEstimator):
    """Cover-based selection of ``alpha * k`` points on a tree."""

    def __init__(self, k=1, alpha=1, randomized=False, random_state=None):
        self.k = k
        self.alpha = alpha
        self.randomized = randomized
        self.random_state = random_state

    def fit(self, G, y=None):
        G = check_graph(G)
        k = check_k(G, self.k)
        self.graph_ = G
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            if self.randomized:
                pts = adaptive_tree_randomized(G, k, self.alpha, self.random_state)
            else:
                pts = adaptive_tree_deterministic(G, k, self.alpha)
        self.warnings_ = [str(w.message) for w in caught]
        for msg in self.warnings_:
            warnings.warn(msg)
        self.vantage_points_ = pts
        return self


class PlanarVantageSelector(_SelectorMixin, BaseEstimator):
    """All boundary vertices of an r-division.

    Give either ``grid=(width, height)`` for a block division of a declared
    grid, or ``division`` as a path to an external division file.  ``r``
    defaults to ``ceil((n/k)**(2/3))``.
    """

    def __init__(self, k=1, grid=None, division=None, r=None):
        self.k = k
        self.grid = grid
        self.division = division
        self.r = r

    def fit(self, G, y=None):
        G = check_graph(G)
        k = check_k(G, self.k)
        r = self.r if self.r is not None else planar_r(G.n, k)
        if self.grid is not None:
            width, height = self.grid
            division = grid_r_division(G, width, height, r)
        elif self.division is not None:
            division = self.division if hasattr(self.division, "pieces") else load_r_division(G, self.division, r)
        else:
            raise ValueError("PlanarVantageSelector needs grid=(w, h) or a division")
        self.graph_ = G
        self.division_ = division
        self.r_ = r
        self.vantage_points_ = planar_adaptive(G, division, k)
        self.boundary_bound_ = 4 * G.n / math.sqrt(r)
        return self
