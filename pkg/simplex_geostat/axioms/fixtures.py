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
"""Frozen witness configurations used by the axiom lab and its regression tests.

Each witness was located by a seeded search and frozen; the search functions are kept so the witnesses can be
regenerated and compared.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from simplex_geostat.core.base import CompositionalDataset, Grouping, SiteSet
from simplex_geostat.core.exceptions import SingularCovarianceError
from simplex_geostat.covariance.correlation import CorrelationFunction, correlation_matrix
from simplex_geostat.covariance.model import LMCModel, ProportionalModel
from simplex_geostat.kriging.gls import krige_mean_single
from simplex_geostat.utility.common import make_rng

# Four rows at mutual half-taxi distance 1/4 from the first. Moving the last row by 1e-6 along
# (1/2, 1/2, -1) switches the minimum spanning tree from a star to a chain.
GRAPH_MEDIAN_ROWS = (
    (0.375, 0.3125, 0.3125),
    (0.625, 0.0625, 0.3125),
    (0.375, 0.5625, 0.0625),
    (0.125, 0.5625, 0.3125),
)
GRAPH_MEDIAN_DIRECTION = (0.5, 0.5, -1.0)
GRAPH_MEDIAN_ROW = 3
GRAPH_MEDIAN_DELTA = 1e-6


def graph_median_discontinuity(delta: float = GRAPH_MEDIAN_DELTA) -> Tuple[CompositionalDataset, CompositionalDataset]:
    """(dataset, dataset with one row moved by `delta`) whose graph medians are 1/8 apart."""
    ds = CompositionalDataset.from_rows(GRAPH_MEDIAN_ROWS)
    moved = ds.parts[GRAPH_MEDIAN_ROW] + delta * np.asarray(GRAPH_MEDIAN_DIRECTION)
    return ds, ds.with_row(GRAPH_MEDIAN_ROW, moved)


def graph_median_directions() -> np.ndarray:
    directions = np.zeros((len(GRAPH_MEDIAN_ROWS), 3))
    directions[GRAPH_MEDIAN_ROW] = GRAPH_MEDIAN_DIRECTION
    return directions


@dataclass(frozen=True)
class MarginalStabilityWitness:
    rows: Tuple[Tuple[float, ...], ...]
    grouping_a: Grouping
    grouping_b: Grouping

    @property
    def dataset(self) -> CompositionalDataset:
        return CompositionalDataset.from_rows(self.rows)


def geometric_c2_witness() -> MarginalStabilityWitness:
    """Two 4-part rows, groupings {1},{2,3},{4} and {1},{2},{3,4}.

    The first grouping makes both rows (0.1, 0.8, 0.1), so the geometric first part is 0.1; under the second it
    is 0.1 / (0.1 + sqrt(0.07) + 0.4), about 0.1308.
    """
    return MarginalStabilityWitness(
        rows=((0.1, 0.1, 0.7, 0.1), (0.1, 0.7, 0.1, 0.1)),
        grouping_a=Grouping.from_one_based([[1], [2, 3], [4]], q=4),
        grouping_b=Grouping.from_one_based([[1], [2], [3, 4]], q=4),
    )


def lmc_divergence_model() -> LMCModel:
    """Two variables driven by correlation ranges 1 and 5 respectively."""
    return LMCModel(
        [
            (np.diag([1.0, 0.1]), CorrelationFunction("exponential", 1.0)),
            (np.diag([0.1, 1.0]), CorrelationFunction("exponential", 5.0)),
        ]
    )


def lmc_divergence_sites() -> SiteSet:
    return SiteSet([0.0, 1.0, 3.0])


def walvoort_datasets() -> Tuple[CompositionalDataset, CompositionalDataset]:
    """Two 2-part datasets on the LMC witness sites that differ only in the last datum."""
    sites = lmc_divergence_sites()
    rows = np.array([[0.2, 0.8], [0.5, 0.5], [0.7, 0.3]])
    changed = rows.copy()
    changed[2] = [0.1, 0.9]
    return CompositionalDataset(sites, rows), CompositionalDataset(sites, changed)


# Gaussian correlation on three equally spaced sites: the middle site is screened and gets a negative weight.
NEGATIVE_WEIGHT_SITES = (0.0, 0.5, 1.0)
NEGATIVE_WEIGHT_CORRELATION = CorrelationFunction("gaussian", 1.0)


def negative_weight_model() -> Tuple[ProportionalModel, SiteSet]:
    return ProportionalModel(np.eye(2), NEGATIVE_WEIGHT_CORRELATION), SiteSet(NEGATIVE_WEIGHT_SITES)


def search_negative_weight_triple(
    seed: int = 0, max_trials: int = 1000, rho: CorrelationFunction = NEGATIVE_WEIGHT_CORRELATION
) -> Optional[Tuple[SiteSet, np.ndarray]]:
    """First random triple of sites in [0, 2] whose GLS mean weights include a negative one.

    Each triple is a sorted uniform pair plus a third site within 0.1 of one of them.
    """
    rng = make_rng(seed, 5)
    for trial in range(max_trials):
        pair = np.sort(rng.uniform(0.0, 2.0, size=2))
        third = pair[int(rng.integers(2))] + rng.uniform(-0.1, 0.1)
        coords = np.sort(np.append(pair, third))
        if np.min(np.diff(coords)) < 1e-3:
            continue
        sites = SiteSet(coords)
        try:
            weights = krige_mean_single(correlation_matrix(rho, sites)).weights
        except SingularCovarianceError:
            continue
        if weights.min() < 0:
            logger.debug(f"negative weight triple found at trial {trial}: {coords.tolist()}")
            return sites, weights
    return None
