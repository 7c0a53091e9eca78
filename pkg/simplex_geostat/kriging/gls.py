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
"""Generalized least squares kriging of the mean: one variable, or all p means jointly."""
from typing import Tuple

import numpy as np
from loguru import logger
from scipy.linalg import cho_factor, cho_solve

from simplex_geostat.core.base import ArrayLike, SiteSet
from simplex_geostat.core.exceptions import DomainError, SingularCovarianceError
from simplex_geostat.covariance.model import CovModel, build_block_matrix
from simplex_geostat.kriging.base import KrigingSolution


def as_covariance(C: ArrayLike) -> np.ndarray:
    arr = np.asarray(C, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise DomainError(f"covariance must be a nonempty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("covariance has non-finite entries")
    return arr


def cholesky(C: np.ndarray) -> Tuple[np.ndarray, bool]:
    try:
        return cho_factor(C, lower=True)
    except np.linalg.LinAlgError as e:
        raise SingularCovarianceError(f"Cholesky factorization of the {C.shape[0]}x{C.shape[0]} covariance failed") from e


def gls_weights(factor: Tuple[np.ndarray, bool], n: int) -> Tuple[np.ndarray, float]:
    """lambda = C^-1 1 / (1^T C^-1 1) and mu = 1 / (1^T C^-1 1) from a Cholesky factor."""
    y = cho_solve(factor, np.ones(n))
    s = float(y.sum())
    if not s > 0:
        raise SingularCovarianceError(f"1^T C^-1 1 = {s!r} is not positive")
    return y / s, 1.0 / s


def krige_mean_single(C: ArrayLike) -> KrigingSolution:
    """Kriging of the mean of one variable with data covariance `C`.

    ```python
    >> krige_mean_single([[1, 0.5], [0.5, 1]]).weights
    >> # array([0.5, 0.5])
    ```
    """
    C = as_covariance(C)
    lam, mu = gls_weights(cholesky(C), C.shape[0])
    return KrigingSolution(mode="single", n=C.shape[0], p=1, weights=lam, mu=mu, variance=mu)


def cokrige_means(model: CovModel, sites: SiteSet) -> KrigingSolution:
    """Simultaneous kriging of the p means: Lambda = C^-1 J mu with mu = (J^T C^-1 J)^-1, J = I_p kron 1_n."""
    matrix = build_block_matrix(model, sites)
    n, p = matrix.n, matrix.p
    J = np.kron(np.eye(p), np.ones((n, 1)))
    Y = cho_solve(matrix.factor, J)
    M = J.T @ Y
    M = 0.5 * (M + M.T)
    mu = cho_solve(cholesky(M), np.eye(p))
    mu = 0.5 * (mu + mu.T)
    weights = Y @ mu
    logger.debug(f"cokriging {p} means on {n} sites, unbiasedness residual {np.abs(J.T @ weights - np.eye(p)).max():.3g}")
    return KrigingSolution(mode="cokrige", n=n, p=p, weights=weights, mu=mu, variance=np.diag(mu).copy())


def cokriging_residuals(model: CovModel, sites: SiteSet, solution: KrigingSolution) -> dict:
    """Residuals of C Lambda = J mu, J^T Lambda = I_p and mu = (J^T C^-1 J)^-1 in max norm."""
    matrix = build_block_matrix(model, sites)
    n, p = matrix.n, matrix.p
    J = np.kron(np.eye(p), np.ones((n, 1)))
    lam = solution.weight_matrix
    mu = np.atleast_2d(solution.mu)
    inverse = np.linalg.inv(J.T @ np.linalg.solve(matrix.entries, J))
    return {
        "system": float(np.abs(matrix.entries @ lam - J @ mu).max() / np.abs(matrix.entries).max()),
        "unbiasedness": solution.unbiasedness_residual(),
        "mu_identity": float(np.abs(mu - inverse).max() / np.abs(mu).max()),
    }
