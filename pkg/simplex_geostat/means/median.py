#  Copyright (c) 2026 simplex-geostat authors. All rights reserved.
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.
"""Medians: the pruned minimum-spanning-tree median and the Euclidean (L1) median."""
from typing import Dict, List, Set, Tuple

import numpy as np
from loguru import logger

from simplex_geostat.core.base import CompositionalDataset, RealSimplexPoint
from simplex_geostat.core.exceptions import SolverError
from simplex_geostat.means.base import MeanEstimate, MeanMethod

L1_MAX_ITER = 10_000
L1_TOL = 1e-10
COINCIDE_TOL = 1e-12


def half_taxi_matrix(parts: np.ndarray) -> np.ndarray:
    return 0.5 * np.abs(parts[:, None, :] - parts[None, :, :]).sum(axis=-1)


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> bool:
        root_i, root_j = self.find(i), self.find(j)
        if root_i == root_j:
            return False
        self.parent[max(root_i, root_j)] = min(root_i, root_j)
        return True


def minimum_spanning_tree(distances: np.ndarray) -> List[Tuple[int, int]]:
    """Kruskal on a dense distance matrix. Edges are taken in (distance, smaller index, larger index) order."""
    n = distances.shape[0]
    edges = sorted((float(distances[i, j]), i, j) for i in range(n) for j in range(i + 1, n))
    components = _DisjointSet(n)
    tree = []
    for _, i, j in edges:
        if components.union(i, j):
            tree.append((i, j))
            if len(tree) == n - 1:
                break
    return tree


def prune_tree(n: int, tree: List[Tuple[int, int]]) -> List[int]:
    """Delete all leaves at once until one vertex or one edge is left; returns the survivors."""
    neighbours: Dict[int, Set[int]] = {v: set() for v in range(n)}
    for i, j in tree:
        neighbours[i].add(j)
        neighbours[j].add(i)
    alive = set(range(n))
    while len(alive) > 2:
        leaves = [v for v in alive if len(neighbours[v]) <= 1]
        for v in leaves:
            for u in neighbours.pop(v):
                neighbours[u].discard(v)
            alive.discard(v)
    survivors = sorted(alive)
    if len(survivors) == 2:
        assert survivors[1] in neighbours[survivors[0]], f"pruning left non-adjacent vertices {survivors}"
    return survivors


def graph_median(ds: CompositionalDataset) -> MeanEstimate:
    """Prune the half-taxi minimum spanning tree to a sample point or the midpoint of two sample points.

    Ties between equal edge lengths are broken by vertex index, so the result depends on row order.
    """
    tree = minimum_spanning_tree(half_taxi_matrix(ds.parts))
    survivors = prune_tree(ds.n, tree)
    point = ds.parts[survivors].mean(axis=0)
    method = MeanMethod("graph-median")
    return MeanEstimate(
        RealSimplexPoint(point), method.descriptor, method, diagnostics={"tree": tree, "survivors": survivors}
    )


def _l1_objective(parts: np.ndarray, m: np.ndarray) -> float:
    return float(np.linalg.norm(parts - m, axis=1).sum())


def _optimal_data_point(parts: np.ndarray) -> int:
    """Index of a data point satisfying the subgradient optimality condition, or -1."""
    for j in range(parts.shape[0]):
        diffs = parts - parts[j]
        dist = np.linalg.norm(diffs, axis=1)
        coincident = dist <= COINCIDE_TOL
        others = ~coincident
        if not np.any(others):
            return j
        pull = (diffs[others] / dist[others, None]).sum(axis=0)
        if np.linalg.norm(pull) <= coincident.sum():
            return j
    return -1


def l1_median(ds: CompositionalDataset, tol: float = L1_TOL, max_iter: int = L1_MAX_ITER) -> MeanEstimate:
    """Minimizer of sum_i ||m - x_i||_2 by Weiszfeld iteration started at the arithmetic mean.

    Data points are first tested for optimality through the subgradient condition; an iterate landing on a
    data point takes a Vardi-Zhang step. Raises `SolverError` carrying the last iterate after `max_iter` steps.
    """
    parts = ds.parts
    method = MeanMethod("l1-median")
    anchor = _optimal_data_point(parts)
    if anchor >= 0:
        logger.debug(f"l1 median is data point {anchor}")
        return MeanEstimate(
            RealSimplexPoint(parts[anchor]),
            method.descriptor,
            method,
            diagnostics={"iterations": 0, "objective": _l1_objective(parts, parts[anchor])},
        )

    m = parts.mean(axis=0)
    for iteration in range(1, max_iter + 1):
        dist = np.linalg.norm(parts - m, axis=1)
        coincident = dist <= COINCIDE_TOL
        others = ~coincident
        inv = 1.0 / dist[others]
        target = (parts[others] * inv[:, None]).sum(axis=0) / inv.sum()
        if np.any(coincident):
            pull = ((parts[others] - m) * inv[:, None]).sum(axis=0)
            r = np.linalg.norm(pull)
            share = min(1.0, coincident.sum() / r)
            m_next = (1.0 - share) * target + share * m
        else:
            m_next = target
        step = float(np.linalg.norm(m_next - m))
        m = m_next
        if step <= tol:
            logger.debug(f"l1 median converged after {iteration} Weiszfeld steps")
            # convex combination of the data, re-closed against rounding drift
            m = m / m.sum()
            return MeanEstimate(
                RealSimplexPoint(m),
                method.descriptor,
                method,
                diagnostics={"iterations": iteration, "objective": _l1_objective(parts, m)},
            )
    raise SolverError(f"Weiszfeld iteration did not converge in {max_iter} steps", last_iterate=m)
