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
"""Stationary isotropic correlation functions with an optional nugget."""
import math
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional

import numpy as np

from simplex_geostat.core.base import ArrayLike, SiteSet
from simplex_geostat.core.exceptions import DomainError
from simplex_geostat.utility.common import filter_list


def _exponential(t: np.ndarray) -> np.ndarray:
    return np.exp(-t)


def _gaussian(t: np.ndarray) -> np.ndarray:
    return np.exp(-(t**2))


def _spherical(t: np.ndarray) -> np.ndarray:
    return np.where(t <= 1.0, 1.0 - 1.5 * t + 0.5 * t**3, 0.0)


def _nugget(t: np.ndarray) -> np.ndarray:
    return (t == 0).astype(float)


def _cosine(t: np.ndarray) -> np.ndarray:
    return np.cos(t)


families = {
    "exponential": _exponential,
    "gaussian": _gaussian,
    "spherical": _spherical,
    "nugget": _nugget,
    "cosine-1d": _cosine,
}


# families whose behaviour at the origin is quadratic, mapped to a linear counterpart
ROUGHER_FAMILIES = {"gaussian": "exponential"}


def available_families(pattern: Optional[str] = None) -> List[str]:
    """Get available correlation families
    ```python
    >> available_families("^[eg]")
    >> # ["exponential", "gaussian"]
    ```
    """
    return filter_list(list(families.keys()), pattern)


@dataclass(frozen=True)
class CorrelationFunction:
    """rho(h) = (1 - nugget_fraction) * family(|h| / range) + nugget_fraction * 1{h = 0}.

    `cosine-1d` is a valid correlation only for one-dimensional lags.
    """

    family: str
    range: float = 1.0
    nugget_fraction: float = 0.0

    def __post_init__(self):
        if self.family not in families:
            raise NotImplementedError(f"correlation family {self.family!r} not implemented! Available: {available_families()}")
        if not (math.isfinite(self.range) and self.range > 0):
            raise DomainError(f"correlation range must be positive, got {self.range}")
        if not 0.0 <= self.nugget_fraction <= 1.0:
            raise DomainError(f"nugget_fraction must lie in [0, 1], got {self.nugget_fraction}")
        object.__setattr__(self, "range", float(self.range))
        object.__setattr__(self, "nugget_fraction", float(self.nugget_fraction))

    def check_dimension(self, d: int) -> None:
        if self.family == "cosine-1d" and d > 1:
            raise DomainError(f"cosine-1d correlation is only valid in one dimension, got d={d}")

    def of_distance(self, distance: ArrayLike) -> np.ndarray:
        """Evaluate on lag norms."""
        h = np.asarray(distance, dtype=float)
        values = families[self.family](h / self.range)
        if self.nugget_fraction > 0:
            values = np.where(h == 0, 1.0, (1.0 - self.nugget_fraction) * values)
        return values

    def to_dict(self) -> Dict[str, Any]:
        return {"family": self.family, "range": self.range, "nugget_fraction": self.nugget_fraction}

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "CorrelationFunction":
        unknown = set(data) - {"family", "range", "nugget_fraction"}
        if unknown:
            raise DomainError(f"unknown correlation fields {sorted(unknown)}")
        return CorrelationFunction(data["family"], data.get("range", 1.0), data.get("nugget_fraction", 0.0))

    def with_nugget(self, fraction: float) -> "CorrelationFunction":
        return replace(self, nugget_fraction=fraction)

    def with_range(self, range_: float) -> "CorrelationFunction":
        return replace(self, range=range_)

    def rougher(self) -> "CorrelationFunction":
        """Linear instead of quadratic behaviour at the origin; other families are returned as is."""
        return replace(self, family=ROUGHER_FAMILIES.get(self.family, self.family))


def corr_eval(rho: CorrelationFunction, h: ArrayLike) -> float:
    """rho at a single lag vector h."""
    lag = np.atleast_1d(np.asarray(h, dtype=float))
    rho.check_dimension(lag.size)
    return float(rho.of_distance(np.linalg.norm(lag)))


def correlation_matrix(rho: CorrelationFunction, sites: SiteSet) -> np.ndarray:
    """R_ij = rho(s_j - s_i)."""
    rho.check_dimension(sites.d)
    return rho.of_distance(sites.distances())
