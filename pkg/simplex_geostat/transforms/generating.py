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
"""Generating functions and quasi-arithmetic (Kolmogorov) means phi^-1(sum_i w_i phi(x_i))."""
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from simplex_geostat.core.base import ArrayLike
from simplex_geostat.core.exceptions import DomainError
from simplex_geostat.utility.common import filter_list

WEIGHT_SUM_TOL = 1e-12
SINE_MAX_AMPLITUDE = 1.0 / (2.0 * math.pi)
SINE_XTOL = 1e-15


def _check_weights(weights: np.ndarray, n: int) -> None:
    if weights.size != n:
        raise DomainError(f"got {weights.size} weights for {n} values")
    if not np.all(np.isfinite(weights)):
        raise DomainError("weights must be finite")
    if abs(weights.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise DomainError(f"weights sum to {weights.sum()!r}, not 1")


@dataclass(frozen=True)
class Interval:
    low: float
    high: float
    closed_low: bool = True
    closed_high: bool = True

    def contains(self, values: np.ndarray) -> np.ndarray:
        above = values >= self.low if self.closed_low else values > self.low
        below = values <= self.high if self.closed_high else values < self.high
        return above & below

    def __str__(self):
        return f"{'[' if self.closed_low else '('}{self.low}, {self.high}{']' if self.closed_high else ')'}"


_REAL_LINE = Interval(-math.inf, math.inf, False, False)
_POSITIVE = Interval(0.0, math.inf, False, False)
_NONNEGATIVE = Interval(0.0, math.inf, True, False)
_UNIT = Interval(0.0, 1.0)


@dataclass(frozen=True)
class GeneratingFunction:
    """A strictly monotone continuous phi on its domain.

    Args:
        kind: one of `available_generating_functions()`.
        param: the exponent for `power` (nonzero), the amplitude for `sine` (|a| < 1/(2 pi)).
    """

    kind: str
    param: Optional[float] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise NotImplementedError(
                f"generating function {self.kind!r} not implemented! Available: {available_generating_functions()}"
            )
        needs_param = self.kind in ("power", "sine")
        if needs_param and self.param is None:
            raise DomainError(f"{self.kind} needs a parameter, e.g. '{self.kind}:0.5'")
        if not needs_param and self.param is not None:
            raise DomainError(f"{self.kind} takes no parameter")
        if self.kind == "power" and (self.param == 0 or not math.isfinite(self.param)):
            raise DomainError(f"power exponent must be finite and nonzero, got {self.param}")
        if self.kind == "sine" and not abs(self.param) < SINE_MAX_AMPLITUDE:
            raise DomainError(f"sine amplitude must satisfy |a| < 1/(2 pi) for monotonicity, got {self.param}")

    @property
    def domain(self) -> Interval:
        if self.kind == "power":
            return _NONNEGATIVE if self.param > 0 else _POSITIVE
        return _KINDS[self.kind][0]

    @property
    def image(self) -> Interval:
        if self.kind == "power":
            return _NONNEGATIVE if self.param > 0 else _POSITIVE
        return _KINDS[self.kind][1]

    def __call__(self, t: ArrayLike) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.kind == "identity":
            return t
        if self.kind == "log":
            return np.log(t)
        if self.kind == "reciprocal":
            return 1.0 / t
        if self.kind == "power":
            return np.power(t, self.param)
        return t + self.param * np.sin(2.0 * np.pi * t)

    def inverse(self, y: ArrayLike) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        if self.kind == "identity":
            return y
        if self.kind == "log":
            return np.exp(y)
        if self.kind == "reciprocal":
            return 1.0 / y
        if self.kind == "power":
            return np.power(y, 1.0 / self.param)
        return np.vectorize(self._sine_inverse, otypes=[float])(y)

    def _sine_inverse(self, y: float) -> float:
        if y <= 0.0:
            return 0.0
        if y >= 1.0:
            return 1.0
        if self.param == 0:
            return y
        # phi(t) - t is bounded by |a|, so the root is bracketed by [y - |a|, y + |a|] within [0, 1]
        low, high = max(0.0, y - abs(self.param)), min(1.0, y + abs(self.param))
        return brentq(lambda t: float(self(t)) - y, low, high, xtol=SINE_XTOL, rtol=4 * np.finfo(float).eps)

    def __str__(self):
        return self.kind if self.param is None else f"{self.kind}:{self.param:g}"

    def to_dict(self) -> Dict:
        return {"kind": self.kind, "param": self.param}

    @staticmethod
    def from_dict(data: Dict) -> "GeneratingFunction":
        return GeneratingFunction(data["kind"], data.get("param"))


_KINDS: Dict[str, Tuple[Interval, Interval]] = {
    "identity": (_REAL_LINE, _REAL_LINE),
    "log": (_POSITIVE, _REAL_LINE),
    "reciprocal": (_POSITIVE, _POSITIVE),
    "power": (_NONNEGATIVE, _NONNEGATIVE),
    "sine": (_UNIT, _UNIT),
}


def available_generating_functions(pattern: Optional[str] = None) -> List[str]:
    """Get available generating-function kinds.
    Args:
        pattern: Regex pattern to filter the kinds.
    """
    return filter_list(list(_KINDS.keys()), pattern)


def parse_generating_function(text: str) -> GeneratingFunction:
    """Parse `identity`, `log`, `reciprocal`, `power:<alpha>` or `sine:<a>`."""
    kind, _, raw = text.strip().partition(":")
    kind = kind.strip().lower()
    if not raw:
        return GeneratingFunction(kind)
    try:
        param = float(raw)
    except ValueError as e:
        raise DomainError(f"cannot parse parameter {raw!r} of generating function {text!r}") from e
    return GeneratingFunction(kind, param)


def quasi_arithmetic_mean(values: ArrayLike, weights: Optional[ArrayLike], phi: GeneratingFunction) -> float:
    """phi^-1(sum_i w_i phi(x_i)); equal weights when `weights` is None.

    With phi = identity this is exactly the weighted arithmetic mean `weights @ values`.
    """
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        raise DomainError("quasi-arithmetic mean of no values")
    weights = np.full(values.size, 1.0 / values.size) if weights is None else np.asarray(weights, dtype=float).ravel()
    _check_weights(weights, values.size)

    inside = phi.domain.contains(values)
    if not np.all(inside):
        bad = values[~inside][0]
        raise DomainError(f"value {bad!r} outside the domain {phi.domain} of {phi}")
    if phi.kind == "identity":
        return float(weights @ values)

    with np.errstate(divide="ignore"):
        transformed = phi(values)
    image = float(weights @ transformed)
    if not phi.image.contains(np.asarray(image)) and not _at_unit_edge(phi, image):
        raise DomainError(f"weighted phi-average {image!r} outside the image {phi.image} of {phi}")
    return float(phi.inverse(image))


def _at_unit_edge(phi: GeneratingFunction, image: float) -> bool:
    # rounding can push a sine average a few ulps outside [0, 1]
    return phi.kind == "sine" and -1e-15 <= image <= 1.0 + 1e-15
