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
"""Kriging of the mean with nonnegative weights, and compositional kriging with per-part weights."""
from typing import Dict, List

import numpy as np
from loguru import logger

from simplex_geostat.core.base import ArrayLike, CompositionalDataset, SiteSet
from simplex_geostat.core.exceptions import DomainError, SolverError
from simplex_geostat.covariance.model import CovModel, build_block_matrix
from simplex_geostat.kriging.base import KrigingSolution
from simplex_geostat.kriging.gls import as_covariance, cholesky, gls_weights, krige_mean_single
from simplex_geostat.kriging.qp import active_set_qp

MAX_ENUMERATED_SITES = 20


def kkt_residuals(C: np.ndarray, lam: np.ndarray, mu: float, alpha: np.ndarray) -> Dict[str, float]:
    """Max-norm residuals of C lambda - mu 1 - alpha = 0, 1^T lambda = 1, lambda >= 0, alpha >= 0, alpha_i lambda_i = 0."""
    return {
        "stationarity": float(np.abs(C @ lam - mu - alpha).max()),
        "primal": float(max(abs(lam.sum() - 1.0), max(0.0, -lam.min()))),
        "dual": float(max(0.0, -alpha.min())),
        "complementarity": float(np.abs(alpha * lam).max()),
    }


def _reduced_gls(C: np.ndarray, passive: List[int]) -> np.ndarray:
    z = np.zeros(C.shape[0])
    z[passive] = gls_weights(cholesky(C[np.ix_(passive, passive)]), len(passive))[0]
    return z


def nonneg_krige_mean(C: ArrayLike) -> KrigingSolution:
    """min lambda^T C lambda subject to 1^T lambda = 1 and lambda >= 0.

    Feasible active-set iteration: start from equal weights, solve the equality-constrained problem on the free
    indices, step back to the first weight that would turn negative and fix it at zero; once the free solution is
    positive, free the fixed index with the most negative multiplier alpha = C lambda - mu 1.
    """
    C = as_covariance(C)
    n = C.shape[0]
    unconstrained = krige_mean_single(C)
    if np.all(unconstrained.weights >= 0):
        lam, mu = unconstrained.weights, unconstrained.mu
        alpha = np.zeros(n)
        return KrigingSolution(
            mode="nonneg",
            n=n,
            p=1,
            weights=lam,
            mu=mu,
            alpha=alpha,
            active_set=(),
            variance=mu,
            kkt=kkt_residuals(C, lam, mu, alpha),
        )

    alpha_tol = 1e-12 * np.abs(C).max()
    max_iter = 2 ** min(n, MAX_ENUMERATED_SITES) + n
    lam = np.full(n, 1.0 / n)
    passive = list(range(n))
    for iteration in range(1, max_iter + 1):
        z = _reduced_gls(C, passive)
        if np.all(z[passive] > 0):
            lam = z
            mu = float(lam @ C @ lam)
            alpha = C @ lam - mu
            alpha[passive] = 0.0
            fixed = [i for i in range(n) if i not in passive]
            if not fixed or alpha[fixed].min() >= -alpha_tol:
                alpha = np.maximum(alpha, 0.0)
                active = tuple(i for i in fixed if alpha[i] > alpha_tol)
                logger.debug(f"nonnegative kriging converged in {iteration} iterations, active set {active}")
                return KrigingSolution(
                    mode="nonneg",
                    n=n,
                    p=1,
                    weights=lam,
                    mu=mu,
                    alpha=alpha,
                    active_set=active,
                    variance=mu,
                    kkt=kkt_residuals(C, lam, mu, alpha),
                )
            release = fixed[int(np.argmin(alpha[fixed]))]
            logger.debug(f"nonnegative kriging: freeing weight {release} (alpha {alpha[release]:.3g})")
            passive = sorted(passive + [release])
            continue

        ratios = {i: lam[i] / (lam[i] - z[i]) if lam[i] > z[i] else 0.0 for i in passive if z[i] <= 0}
        step = min(ratios.values())
        lam = lam + step * (z - lam)
        zeroed = [i for i in passive if ratios.get(i, np.inf) <= step or lam[i] <= 0]
        lam[zeroed] = 0.0
        passive = [i for i in passive if i not in zeroed]
        logger.debug(f"nonnegative kriging: fixing weights {zeroed} at zero")
    raise SolverError(f"nonnegative kriging did not converge in {max_iter} iterations", last_iterate=lam)


def nonneg_cokrige_means(model: CovModel, sites: SiteSet) -> KrigingSolution:
    """One shared nonnegative weight vector for all p means: min sum_k lambda^T C_kk lambda."""
    matrix = build_block_matrix(model, sites)
    blocks = matrix.diagonal_blocks()
    solution = nonneg_krige_mean(sum(blocks))
    lam = solution.weights
    variances = np.array([lam @ block @ lam for block in blocks])
    return KrigingSolution(
        mode="nonneg-cokrige",
        n=matrix.n,
        p=matrix.p,
        weights=lam,
        mu=solution.mu,
        alpha=solution.alpha,
        active_set=solution.active_set,
        variance=variances,
        kkt=solution.kkt,
    )


def walvoort_compositional_krige(model: CovModel, sites: SiteSet, ds: CompositionalDataset) -> KrigingSolution:
    """Per-part weights minimizing the summed prediction variances sum_k (lambda^k)^T C_kk lambda^k.

    Constraints: 1^T lambda^k = 1 for each part, estimates (lambda^k)^T x^k summing to 1, each estimate >= 0.
    Cross-covariances between parts do not enter the objective. The weights depend on the data.
    """
    if ds.n != sites.n:
        raise DomainError(f"dataset has {ds.n} rows but {sites.n} sites")
    matrix = build_block_matrix(model, sites)
    if ds.p != matrix.p:
        raise DomainError(f"model has {matrix.p} variables but the dataset has {ds.p} parts")
    n, p = matrix.n, matrix.p
    blocks = matrix.diagonal_blocks()

    Q = np.zeros((n * p, n * p))
    for k, block in enumerate(blocks):
        Q[k * n : (k + 1) * n, k * n : (k + 1) * n] = 2.0 * block
    data = ds.parts.T.ravel()  # variable-major
    unbiased = np.kron(np.eye(p), np.ones((1, n)))
    A = np.vstack([unbiased, data[None, :]])
    b = np.ones(p + 1)
    G = -unbiased * data[None, :]
    h = np.zeros(p)
    x0 = np.full(n * p, 1.0 / n)

    result = active_set_qp(Q, np.zeros(n * p), A, b, G, h, x0)
    lam = result.x
    weights = np.zeros((n * p, p))
    for k in range(p):
        weights[k * n : (k + 1) * n, k] = lam[k * n : (k + 1) * n]
    estimates = unbiased @ (lam * data)
    slack = G @ lam - h
    z = result.inequality_multipliers
    kkt = {
        "stationarity": float(np.abs(Q @ lam + A.T @ result.equality_multipliers + G.T @ z).max()),
        "primal": float(max(np.abs(A @ lam - b).max(), max(0.0, slack.max()))),
        "dual": float(max(0.0, -z.min())),
        "complementarity": float(np.abs(z * slack).max()),
    }
    variances = np.array([lam[k * n : (k + 1) * n] @ blocks[k] @ lam[k * n : (k + 1) * n] for k in range(p)])
    return KrigingSolution(
        mode="walvoort",
        n=n,
        p=p,
        weights=weights,
        mu=result.equality_multipliers,
        alpha=z,
        active_set=tuple(i for i in result.working_set if z[i] > 0),
        variance=variances,
        kkt=kkt,
        estimates=estimates,
    )
