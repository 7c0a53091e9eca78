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
"""Means that are weighted averages in some coordinate system: arithmetic, geometric, ilr, quasi-arithmetic."""
from dataclasses import dataclass
from typing import Optional

import numpy as np
from loguru import logger

from simplex_geostat.core.base import POINT_SUM_TOL, ArrayLike, CompositionalDataset, RealSimplexPoint
from simplex_geostat.core.exceptions import DomainError
from simplex_geostat.kriging.base import KrigingSolution
from simplex_geostat.means.base import MeanEstimate, MeanMethod, resolve_weights
from simplex_geostat.transforms.generating import GeneratingFunction, quasi_arithmetic_mean
from simplex_geostat.transforms.ilr import ilr_inv_rows, ilr_rows


def _require_positive(ds: CompositionalDataset, name: str) -> None:
    if not ds.is_positive():
        row = int(np.argwhere(ds.parts <= 0)[0][0])
        raise DomainError(f"{name} needs strictly positive parts, row {row} is {ds.parts[row].tolist()}")


def weighted_arithmetic_mean(ds: CompositionalDataset, weights: Optional[ArrayLike] = None) -> MeanEstimate:
    """Componentwise sum_i w_i x_i. Leaves the simplex only when some weight is negative."""
    lam = resolve_weights(weights, ds.n)
    method = MeanMethod("arith") if weights is None else MeanMethod("arith", tuple(lam))
    point = RealSimplexPoint(lam @ ds.parts)
    if not point.in_simplex():
        logger.warning(f"weighted arithmetic mean {point.parts.tolist()} lies outside the simplex")
    return MeanEstimate(point, method.descriptor, method, weights_used=lam)


def normalized_geometric_mean(ds: CompositionalDataset) -> MeanEstimate:
    """Closure of the componentwise geometric means."""
    _require_positive(ds, "the geometric mean")
    log_means = np.log(ds.parts).mean(axis=0)
    g = np.exp(log_means - log_means.max())
    method = MeanMethod("geom")
    return MeanEstimate(RealSimplexPoint(g / g.sum()), method.descriptor, method)


def ilr_mean(ds: CompositionalDataset, weights: Optional[ArrayLike] = None) -> MeanEstimate:
    """Back-transformed weighted mean of the ilr coordinates."""
    _require_positive(ds, "the ilr mean")
    lam = resolve_weights(weights, ds.n)
    method = MeanMethod("ilr") if weights is None else MeanMethod("ilr", tuple(lam))
    centre = lam @ ilr_rows(ds.parts)
    return MeanEstimate(RealSimplexPoint(ilr_inv_rows(centre)[0]), method.descriptor, method, weights_used=lam)


@dataclass(frozen=True, eq=False)
class ComponentwiseMeans:
    """Raw componentwise quasi-arithmetic means; `total` is generally not 1."""

    values: np.ndarray
    total: float
    phi: GeneratingFunction


def quasi_arithmetic_componentwise(
    ds: CompositionalDataset, phi: GeneratingFunction, weights: Optional[ArrayLike] = None
) -> ComponentwiseMeans:
    """phi^-1(sum_i w_i phi(x_i^k)) for each part k, without renormalization."""
    lam = resolve_weights(weights, ds.n)
    values = np.array([quasi_arithmetic_mean(ds.column(k), lam, phi) for k in range(ds.p)])
    return ComponentwiseMeans(values=values, total=float(values.sum()), phi=phi)


def quasi_arithmetic_estimate(ds: CompositionalDataset, method: MeanMethod) -> MeanEstimate:
    """Closure of the raw componentwise means. The closure is recorded on the estimate, never hidden."""
    raw = quasi_arithmetic_componentwise(ds, method.phi, method.weights)
    if raw.total <= 0:
        raise DomainError(f"componentwise {method.phi} means sum to {raw.total!r}; closure undefined")
    renormalized = abs(raw.total - 1.0) > POINT_SUM_TOL
    if renormalized:
        logger.debug(f"closing componentwise {method.phi} means with sum {raw.total!r}")
    point = RealSimplexPoint(raw.values / raw.total)
    return MeanEstimate(
        point,
        method.descriptor,
        method,
        weights_used=resolve_weights(method.weights, ds.n),
        renormalized=renormalized,
        raw_sum=raw.total,
    )


def kriged_mean(ds: CompositionalDataset, solution: KrigingSolution) -> MeanEstimate:
    """Apply kriging weights to a dataset.

    A shared weight vector gives sum_i lambda_i x_i. A full (np, p) weight matrix gives
    M^k = sum_l sum_i Lambda[(l, i), k] x_i^l in variable-major order; when those estimates do not sum to 1
    the point is divided by their sum and the estimate is flagged `renormalized`.
    """
    if solution.n != ds.n:
        raise DomainError(f"solution has {solution.n} sites, dataset has {ds.n}")
    if solution.shared:
        raw = solution.shared_weights @ ds.parts
    else:
        if solution.p != ds.p:
            raise DomainError(f"solution has {solution.p} variables, dataset has {ds.p} parts")
        raw = solution.weight_matrix.T @ ds.parts.T.ravel()
    total = float(raw.sum())
    renormalized = abs(total - 1.0) > POINT_SUM_TOL
    if renormalized:
        if total <= 0:
            raise DomainError(f"kriged estimates sum to {total!r}")
        logger.warning(f"kriged estimates sum to {total!r}; reporting the closed point")
        raw = raw / total
    point = RealSimplexPoint(raw)
    if not point.in_simplex():
        logger.warning(f"kriged mean {point.parts.tolist()} lies outside the simplex")
    weights = solution.shared_weights if solution.shared else solution.weight_matrix
    return MeanEstimate(
        point, f"kriged[{solution.mode}]", None, weights_used=weights, renormalized=renormalized, raw_sum=total
    )
