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
from typing import Any, Dict, Optional, Tuple

import numpy as np

from simplex_geostat.core.base import ArrayLike, CompositionalDataset, RealSimplexPoint
from simplex_geostat.core.exceptions import DomainError
from simplex_geostat.transforms.generating import WEIGHT_SUM_TOL, GeneratingFunction, parse_generating_function

WEIGHTED_KINDS = ("arith", "ilr", "qam")
MEAN_KINDS = ("arith", "geom", "ilr", "qam", "graph-median", "l1-median")


def resolve_weights(weights: Optional[ArrayLike], n: int) -> np.ndarray:
    """Equal weights when `weights` is None; otherwise n finite weights summing to 1 within 1e-12."""
    if weights is None:
        return np.full(n, 1.0 / n)
    arr = np.asarray(weights, dtype=float).ravel()
    if arr.size != n:
        raise DomainError(f"got {arr.size} weights for a dataset of {n} rows")
    if not np.all(np.isfinite(arr)):
        raise DomainError("weights must be finite")
    if abs(arr.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise DomainError(f"weights sum to {arr.sum()!r}, not 1")
    return arr


@dataclass(frozen=True)
class MeanMethod:
    """A compositional central-tendency estimator together with its parameters.

    Args:
        kind: one of `available_means()`.
        weights: optional n weights summing to 1 (`arith`, `ilr` and `qam` only). Equal weights when None.
        phi: generating function, required by `qam`.
    """

    kind: str
    weights: Optional[Tuple[float, ...]] = None
    phi: Optional[GeneratingFunction] = None

    def __post_init__(self):
        if self.kind not in MEAN_KINDS:
            raise NotImplementedError(f"mean {self.kind!r} not implemented! Available: {list(MEAN_KINDS)}")
        if self.weights is not None:
            if self.kind not in WEIGHTED_KINDS:
                raise DomainError(f"{self.kind} does not take weights")
            weights = tuple(float(w) for w in np.asarray(self.weights, dtype=float).ravel())
            resolve_weights(weights, len(weights))
            object.__setattr__(self, "weights", weights)
        if isinstance(self.phi, str):
            object.__setattr__(self, "phi", parse_generating_function(self.phi))
        if self.kind == "qam" and self.phi is None:
            raise DomainError("qam needs a generating function phi")
        if self.kind != "qam" and self.phi is not None:
            raise DomainError(f"{self.kind} does not take a generating function")

    @property
    def equal_weights(self) -> bool:
        return self.weights is None

    @property
    def needs_positive(self) -> bool:
        """True when the method is undefined on compositions with zero parts."""
        if self.kind in ("geom", "ilr"):
            return True
        if self.kind == "qam":
            return self.phi.domain.low == 0.0 and not self.phi.domain.closed_low
        return False

    @property
    def descriptor(self) -> str:
        name = self.kind
        if self.phi is not None:
            name += f"[{self.phi}]"
        if self.weights is not None:
            name += "(" + ",".join(f"{w:.6g}" for w in self.weights) + ")"
        return name

    def estimate(self, ds: CompositionalDataset) -> "MeanEstimate":
        from simplex_geostat.means.utils import get_mean

        return get_mean(self.kind)(ds, self)

    def with_weights(self, weights: Optional[ArrayLike]) -> "MeanMethod":
        return MeanMethod(self.kind, None if weights is None else tuple(np.asarray(weights, dtype=float)), self.phi)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "weights": None if self.weights is None else list(self.weights),
            "phi": None if self.phi is None else str(self.phi),
        }

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "MeanMethod":
        weights = data.get("weights")
        return MeanMethod(data["kind"], None if weights is None else tuple(weights), data.get("phi"))

    def __str__(self):
        return self.descriptor


@dataclass(frozen=True, eq=False)
class MeanEstimate:
    """The output of a mean. `renormalized` is True when `point` is the closure of a raw vector summing to `raw_sum`."""

    point: RealSimplexPoint
    label: str
    method: Optional[MeanMethod] = None
    weights_used: Optional[np.ndarray] = None
    renormalized: bool = False
    raw_sum: Optional[float] = None
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def parts(self) -> np.ndarray:
        return self.point.parts

    @property
    def in_simplex(self) -> bool:
        return self.point.in_simplex()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "method": self.label,
            "point": self.point.parts.tolist(),
            "in_simplex": self.in_simplex,
            "weights_used": None if self.weights_used is None else np.asarray(self.weights_used).tolist(),
            "renormalized": self.renormalized,
            "raw_sum": self.raw_sum,
        }
