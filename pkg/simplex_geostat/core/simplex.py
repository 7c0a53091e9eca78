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
"""Closure, metrics, inner product and amalgamation on the simplex."""
from typing import Union

import numpy as np

from simplex_geostat.core.base import ArrayLike, Composition, CompositionalDataset, Grouping
from simplex_geostat.core.exceptions import DomainError

CompositionLike = Union[Composition, ArrayLike]


def _parts(x: CompositionLike) -> np.ndarray:
    if isinstance(x, Composition):
        return x.parts
    return Composition(x).parts


def closure(v: ArrayLike) -> Composition:
    """Scale a nonnegative vector so its parts sum to 1.

    ```python
    >> closure([2, 2, 4])
    >> # Composition([0.25, 0.25, 0.5])
    ```
    """
    arr = np.asarray(v, dtype=float).ravel()
    if arr.size < 2:
        raise DomainError(f"closure needs at least 2 parts, got {arr.size}")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise DomainError(f"closure needs finite nonnegative entries, got {arr.tolist()}")
    total = arr.sum()
    if total <= 0:
        raise DomainError("closure of an all-zero vector is undefined")
    return Composition(arr / total)


def half_taxi_distance(x: CompositionLike, y: CompositionLike) -> float:
    """d(x, y) = 0.5 * sum_k |x_k - y_k|; at most 1 on the simplex."""
    a, b = _parts(x), _parts(y)
    if a.size != b.size:
        raise DomainError(f"part counts differ: {a.size} != {b.size}")
    return 0.5 * float(np.abs(a - b).sum())


def _positive_parts(x: CompositionLike, name: str) -> np.ndarray:
    parts = _parts(x)
    if np.any(parts <= 0):
        raise DomainError(f"{name} has a zero part; log-ratios are undefined: {parts.tolist()}")
    return parts


def aitchison_inner(x: CompositionLike, y: CompositionLike) -> float:
    """Aitchison inner product in its centred log-ratio form: sum_k log(x_k/g(x)) log(y_k/g(y))."""
    a = _positive_parts(x, "x")
    b = _positive_parts(y, "y")
    if a.size != b.size:
        raise DomainError(f"part counts differ: {a.size} != {b.size}")
    clr_a = np.log(a) - np.log(a).mean()
    clr_b = np.log(b) - np.log(b).mean()
    return float(clr_a @ clr_b)


def aitchison_inner_pairwise(x: CompositionLike, y: CompositionLike) -> float:
    """Aitchison inner product in its pairwise form: (1/p) sum_{i<j} log(x_i/x_j) log(y_i/y_j)."""
    a = _positive_parts(x, "x")
    b = _positive_parts(y, "y")
    if a.size != b.size:
        raise DomainError(f"part counts differ: {a.size} != {b.size}")
    la = np.log(a)[:, None] - np.log(a)[None, :]
    lb = np.log(b)[:, None] - np.log(b)[None, :]
    upper = np.triu_indices(a.size, k=1)
    return float((la[upper] * lb[upper]).sum() / a.size)


def amalgamate(ds: CompositionalDataset, grouping: Grouping) -> CompositionalDataset:
    """Sum the parts of each row within the blocks of `grouping`. Sites are unchanged."""
    if grouping.q != ds.p:
        raise DomainError(f"grouping partitions {grouping.q} parts but the dataset has {ds.p}")
    parts = np.stack([ds.parts[:, list(block)].sum(axis=1) for block in grouping.groups], axis=1)
    return CompositionalDataset(ds.sites, parts)
