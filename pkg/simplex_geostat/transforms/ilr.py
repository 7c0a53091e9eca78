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
"""Isometric log-ratio coordinates for the basis u_i = ln(x_1...x_i / x_{i+1}^i) / sqrt(i(i+1))."""
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from simplex_geostat.core.base import ArrayLike, Composition
from simplex_geostat.core.exceptions import DomainError


@dataclass(frozen=True, eq=False)
class IlrCoordinates:
    """p - 1 real coordinates of a strictly positive p-part composition."""

    coords: np.ndarray

    def __init__(self, coords: ArrayLike):
        arr = np.array(coords, dtype=float).ravel()
        if arr.size < 1 or not np.all(np.isfinite(arr)):
            raise DomainError(f"ilr coordinates must be a nonempty finite vector, got {arr.tolist()}")
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    @property
    def p(self) -> int:
        return self.coords.size + 1

    def __repr__(self):
        return f"IlrCoordinates({self.coords.tolist()})"


@lru_cache(maxsize=32)
def ilr_basis(p: int) -> np.ndarray:
    """(p, p - 1) matrix V with u = V^T log(x) and x = closure(exp(V u))."""
    if p < 2:
        raise DomainError(f"ilr needs p >= 2, got {p}")
    basis = np.zeros((p, p - 1))
    for i in range(1, p):
        scale = 1.0 / np.sqrt(i * (i + 1))
        basis[:i, i - 1] = scale
        basis[i, i - 1] = -i * scale
    basis.setflags(write=False)
    return basis


def ilr_rows(parts: ArrayLike) -> np.ndarray:
    """ilr of every row of an (n, p) array of strictly positive parts."""
    arr = np.atleast_2d(np.asarray(parts, dtype=float))
    if np.any(arr <= 0):
        row = int(np.argwhere(arr <= 0)[0][0])
        raise DomainError(f"ilr needs strictly positive parts, row {row} is {arr[row].tolist()}")
    return np.log(arr) @ ilr_basis(arr.shape[1])


def ilr_inv_rows(coords: ArrayLike) -> np.ndarray:
    """Inverse of `ilr_rows` for an (n, p - 1) array."""
    arr = np.atleast_2d(np.asarray(coords, dtype=float))
    log_parts = arr @ ilr_basis(arr.shape[1] + 1).T
    # shift before exponentiating; closure is scale invariant
    exp_parts = np.exp(log_parts - log_parts.max(axis=1, keepdims=True))
    return exp_parts / exp_parts.sum(axis=1, keepdims=True)


def ilr(x: Union[Composition, ArrayLike]) -> IlrCoordinates:
    """
    ```python
    >> ilr([0.6, 0.3, 0.1])
    >> # IlrCoordinates([0.4901..., 1.1799...])
    ```
    """
    parts = x.parts if isinstance(x, Composition) else Composition(x).parts
    return IlrCoordinates(ilr_rows(parts)[0])


def ilr_inv(u: Union[IlrCoordinates, ArrayLike], p: Optional[int] = None) -> Composition:
    coords = u.coords if isinstance(u, IlrCoordinates) else np.asarray(u, dtype=float).ravel()
    if p is not None and coords.size != p - 1:
        raise DomainError(f"{coords.size} ilr coordinates cannot describe a {p}-part composition")
    if not np.all(np.isfinite(coords)):
        raise DomainError("ilr coordinates must be finite")
    return Composition(ilr_inv_rows(coords)[0])
