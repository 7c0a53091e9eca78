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
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

UNBIASED_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class KrigingSolution:
    """Weights and multipliers of a kriging-of-the-mean solve.

    `weights` is either one shared n-vector or an (np, p) matrix Lambda in variable-major order whose column k
    holds the weights of every datum x_i^l in the estimate of mean k.

    Args:
        mode: solver that produced the solution (`single`, `cokrige`, `nonneg`, `nonneg-cokrige`, `walvoort`).
        n: number of sites.
        p: number of variables.
        weights: shared (n,) vector or (np, p) matrix.
        mu: Lagrange multipliers of the unbiasedness constraints.
        alpha: dual multipliers of the nonnegativity constraints, when present.
        active_set: indices whose nonnegativity constraint binds with a positive multiplier.
        variance: estimation variance(s).
        kkt: KKT residuals of constrained solves.
        estimates: estimated means, for solvers that see the data.
    """

    mode: str
    n: int
    p: int
    weights: np.ndarray
    mu: Union[float, np.ndarray]
    alpha: Optional[np.ndarray] = None
    active_set: Optional[Tuple[int, ...]] = None
    variance: Optional[Union[float, np.ndarray]] = None
    kkt: Dict[str, float] = field(default_factory=dict)
    estimates: Optional[np.ndarray] = None

    @property
    def shared(self) -> bool:
        return self.weights.ndim == 1

    @property
    def shared_weights(self) -> np.ndarray:
        assert self.shared, f"{self.mode} solution has per-variable weights"
        return self.weights

    @property
    def weight_matrix(self) -> np.ndarray:
        """(np, p) matrix Lambda; a shared vector lambda becomes I_p kron lambda."""
        if self.shared:
            return np.kron(np.eye(self.p), self.weights[:, None])
        return self.weights

    def variable_weights(self, k: int) -> np.ndarray:
        """Weights of the data of variable k in the estimate of mean k."""
        if self.shared:
            return self.weights
        return self.weights[k * self.n : (k + 1) * self.n, k]

    def unbiasedness_residual(self) -> float:
        """max |J^T Lambda - I_p| with J = I_p kron 1_n."""
        lam = self.weight_matrix
        sums = lam.reshape(self.p, self.n, self.p).sum(axis=1)
        return float(np.abs(sums - np.eye(self.p)).max())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mode": self.mode,
            "n": self.n,
            "p": self.p,
            "lambda": self.weights,
            "mu": self.mu,
            "alpha": self.alpha,
            "active_set": None if self.active_set is None else list(self.active_set),
            "variance": self.variance,
            "kkt_residuals": self.kkt or None,
            "estimates": self.estimates,
        }


def weights_equal_across_variables(solution: KrigingSolution, tol: float = 1e-9) -> Tuple[bool, float]:
    """True when cross-variable weight blocks vanish and all own-variable weight vectors agree within `tol`.

    Returns the verdict and the maximal deviation found.
    """
    if solution.shared or solution.p == 1:
        return True, 0.0
    n, p = solution.n, solution.p
    blocks = solution.weights.reshape(p, n, p)
    deviation = 0.0
    for k in range(p):
        for l in range(p):  # noqa: E741
            if l != k:
                deviation = max(deviation, float(np.abs(blocks[l, :, k]).max()))
    own = np.stack([blocks[k, :, k] for k in range(p)])
    for k in range(p):
        for l in range(k + 1, p):  # noqa: E741
            deviation = max(deviation, float(np.abs(own[k] - own[l]).max()))
    return deviation <= tol, deviation
