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
"""Primal active-set method for convex quadratic programs.

    minimize    0.5 x^T Q x + c^T x
    subject to  A x = b,  G x <= h

started from a feasible point. Working-set changes use the smallest index on ties.
"""
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger
from scipy.linalg import qr

from simplex_geostat.core.base import ArrayLike
from simplex_geostat.core.exceptions import DomainError, SolverError

STEP_TOL = 1e-13
MULTIPLIER_TOL = 1e-12
FEASIBILITY_TOL = 1e-10
RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class QPResult:
    x: np.ndarray
    equality_multipliers: np.ndarray
    inequality_multipliers: np.ndarray
    working_set: Tuple[int, ...]
    iterations: int

    def objective(self, Q: np.ndarray, c: np.ndarray) -> float:
        return float(0.5 * self.x @ Q @ self.x + c @ self.x)


def independent_rows(A: np.ndarray) -> List[int]:
    """Indices of a maximal linearly independent subset of the rows of A, in increasing order."""
    if A.shape[0] == 0:
        return []
    _, R, pivots = qr(A.T, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    rank = int(np.sum(diag > RANK_TOL * max(1.0, diag[0])))
    return sorted(int(i) for i in pivots[:rank])


def _solve_eqp(Q: np.ndarray, g: np.ndarray, M: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """min 0.5 d^T Q d + g^T d s.t. M d = 0; returns (d, w) with Q d + M^T w = -g."""
    n, m = Q.shape[0], M.shape[0]
    kkt = np.zeros((n + m, n + m))
    kkt[:n, :n] = Q
    kkt[:n, n:] = M.T
    kkt[n:, :n] = M
    rhs = np.concatenate([-g, np.zeros(m)])
    solution = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
    return solution[:n], solution[n:]


def active_set_qp(
    Q: ArrayLike,
    c: ArrayLike,
    A: ArrayLike,
    b: ArrayLike,
    G: ArrayLike,
    h: ArrayLike,
    x0: ArrayLike,
    max_iter: Optional[int] = None,
) -> QPResult:
    """Solve the convex QP from the feasible start `x0`.

    Dependent equality rows are dropped (their multipliers are reported as 0). Raises `DomainError` when `x0`
    is infeasible and `SolverError` when the working set keeps changing after `max_iter` iterations.
    """
    Q, c, x = np.asarray(Q, float), np.asarray(c, float), np.array(x0, float)
    A, b = np.atleast_2d(np.asarray(A, float)), np.asarray(b, float).ravel()
    G, h = np.atleast_2d(np.asarray(G, float)), np.asarray(h, float).ravel()
    n = x.size
    if A.size == 0:
        A = np.zeros((0, n))
    if G.size == 0:
        G = np.zeros((0, n))
    if np.abs(A @ x - b).max(initial=0.0) > FEASIBILITY_TOL or (G @ x - h).max(initial=-np.inf) > FEASIBILITY_TOL:
        raise DomainError("active-set QP needs a feasible starting point")

    keep = independent_rows(A)
    if len(keep) < A.shape[0]:
        logger.warning(f"dropping {A.shape[0] - len(keep)} dependent equality constraint(s)")
    A_ind = A[keep]
    max_iter = max_iter or 50 * (n + G.shape[0] + 1)

    working: List[int] = []
    for iteration in range(1, max_iter + 1):
        g = Q @ x + c
        M = np.vstack([A_ind, G[working]]) if working else A_ind
        d, w = _solve_eqp(Q, g, M)
        if np.abs(d).max(initial=0.0) <= STEP_TOL * max(1.0, np.abs(x).max(initial=0.0)):
            z_working = w[A_ind.shape[0] :]
            if z_working.size == 0 or z_working.min() >= -MULTIPLIER_TOL:
                eq = np.zeros(A.shape[0])
                eq[keep] = w[: A_ind.shape[0]]
                z = np.zeros(G.shape[0])
                z[working] = np.maximum(z_working, 0.0)
                logger.debug(f"active-set QP converged in {iteration} iterations, working set {sorted(working)}")
                return QPResult(x, eq, z, tuple(sorted(working)), iteration)
            drop = working[int(np.argmin(z_working))]
            logger.debug(f"active-set QP: releasing constraint {drop}")
            working.remove(drop)
            continue

        step, blocking = 1.0, None
        Gd = G @ d
        for i in range(G.shape[0]):
            if i in working or Gd[i] <= STEP_TOL:
                continue
            ratio = max(0.0, (h[i] - G[i] @ x) / Gd[i])
            if ratio < step:
                step, blocking = ratio, i
        x = x + step * d
        if blocking is not None:
            logger.debug(f"active-set QP: constraint {blocking} blocks at step {step:.3g}")
            working = sorted(working + [blocking])
    raise SolverError(f"active-set QP did not converge in {max_iter} iterations", last_iterate=x)
