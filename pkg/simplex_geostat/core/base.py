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
"""Core compositional types. Every value is immutable after construction."""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from simplex_geostat.core.exceptions import DomainError

SUM_TOL = 1e-12  # sum-to-one tolerance of a stored Composition
RENORMALIZE_TOL = 1e-9  # larger deviations are rejected, smaller ones re-closed
POINT_SUM_TOL = 1e-10  # sum-to-one tolerance of a mean estimate

ArrayLike = Union[Sequence[float], np.ndarray]


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _close_rows(parts: np.ndarray) -> np.ndarray:
    """Validate rows of nonnegative parts and re-close rows that deviate from 1 by at most 1e-9."""
    if not np.all(np.isfinite(parts)):
        raise DomainError("compositions must have finite parts")
    if np.any(parts < 0):
        row = int(np.argwhere(parts < 0)[0][0])
        raise DomainError(f"negative part in row {row}: {parts[row].tolist()}")
    sums = parts.sum(axis=-1)
    deviation = np.abs(sums - 1.0)
    bad = deviation > RENORMALIZE_TOL
    if np.any(bad):
        row = int(np.argmax(bad))
        raise DomainError(f"parts of row {row} sum to {sums[row]!r}, deviation exceeds {RENORMALIZE_TOL}")
    loose = deviation > SUM_TOL
    if np.any(loose):
        logger.warning(f"re-closing {int(loose.sum())} composition(s) with sum deviation <= {RENORMALIZE_TOL}")
        parts = parts.copy()
        parts[loose] = parts[loose] / sums[loose, None]
    return parts


@dataclass(frozen=True, eq=False)
class Composition:
    """A point of the closed simplex: p >= 2 nonnegative parts summing to 1."""

    parts: np.ndarray

    def __init__(self, parts: ArrayLike):
        arr = np.array(parts, dtype=float).ravel()
        if arr.size < 2:
            raise DomainError(f"a composition needs at least 2 parts, got {arr.size}")
        arr = _close_rows(arr[None, :])[0]
        object.__setattr__(self, "parts", _frozen(np.array(arr)))

    @property
    def p(self) -> int:
        return self.parts.size

    def is_positive(self) -> bool:
        return bool(np.all(self.parts > 0))

    def __len__(self):
        return self.p

    def __iter__(self):
        return iter(self.parts.tolist())

    def __repr__(self):
        return f"Composition({self.parts.tolist()})"


@dataclass(frozen=True, eq=False)
class RealSimplexPoint:
    """A real vector summing to 1. Parts may be negative (superset of the simplex)."""

    parts: np.ndarray

    def __init__(self, parts: ArrayLike):
        arr = np.array(parts, dtype=float).ravel()
        if not np.all(np.isfinite(arr)):
            raise DomainError("point has non-finite parts")
        total = arr.sum()
        if abs(total - 1.0) > POINT_SUM_TOL:
            raise DomainError(f"point parts sum to {total!r}, not 1")
        object.__setattr__(self, "parts", _frozen(arr))

    @property
    def p(self) -> int:
        return self.parts.size

    def in_simplex(self, atol: float = SUM_TOL) -> bool:
        return is_in_simplex(self.parts, atol=atol)

    def to_composition(self) -> Composition:
        if not self.in_simplex():
            raise DomainError(f"point {self.parts.tolist()} lies outside the simplex")
        return Composition(np.clip(self.parts, 0.0, None))

    def __repr__(self):
        return f"RealSimplexPoint({self.parts.tolist()})"


def is_in_simplex(parts: ArrayLike, atol: float = SUM_TOL) -> bool:
    """True when every part lies in [-atol, 1 + atol] and the parts sum to 1 within `POINT_SUM_TOL`."""
    arr = np.asarray(parts, dtype=float)
    return bool(np.all(arr >= -atol) and np.all(arr <= 1.0 + atol) and abs(arr.sum() - 1.0) <= POINT_SUM_TOL)


@dataclass(frozen=True, eq=False)
class SiteSet:
    """n distinct sampling sites in R^d, stored as an (n, d) array."""

    coords: np.ndarray

    def __init__(self, coords: ArrayLike):
        arr = np.array(coords, dtype=float)
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DomainError(f"sites must be an (n, d) array with n, d >= 1, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise DomainError("site coordinates must be finite")
        if np.unique(arr, axis=0).shape[0] != arr.shape[0]:
            raise DomainError("duplicate sites: the covariance matrix would be singular")
        object.__setattr__(self, "coords", _frozen(arr))

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def d(self) -> int:
        return self.coords.shape[1]

    @staticmethod
    def line(n: int) -> "SiteSet":
        """Sites 0, 1, ..., n - 1 on a line."""
        return SiteSet(np.arange(n, dtype=float))

    def lags(self) -> np.ndarray:
        """(n, n, d) array of lag vectors s_j - s_i."""
        return self.coords[None, :, :] - self.coords[:, None, :]

    def distances(self) -> np.ndarray:
        return np.linalg.norm(self.lags(), axis=-1)

    def permuted(self, order: Sequence[int]) -> "SiteSet":
        return SiteSet(self.coords[list(order)])

    def __len__(self):
        return self.n


@dataclass(frozen=True, eq=False)
class CompositionalDataset:
    """n compositions with a common part count p, paired with n sites.

    Rows are stored as an (n, p) array; part ordering is significant and never changed.
    """

    sites: SiteSet
    parts: np.ndarray

    def __init__(self, sites: SiteSet, parts: ArrayLike):
        arr = np.array(parts, dtype=float)
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise DomainError("empty dataset")
        if arr.shape[1] < 2:
            raise DomainError(f"compositions need at least 2 parts, got {arr.shape[1]}")
        if arr.shape[0] != sites.n:
            raise DomainError(f"dataset has {arr.shape[0]} rows but {sites.n} sites")
        arr = _close_rows(arr)
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "parts", _frozen(np.array(arr)))

    @staticmethod
    def from_rows(rows: ArrayLike, sites: Optional[SiteSet] = None) -> "CompositionalDataset":
        """Dataset from rows; sites default to 0, 1, ..., n - 1 on a line."""
        arr = np.array(rows, dtype=float)
        if arr.ndim != 2 or arr.shape[0] == 0:
            raise DomainError("empty dataset")
        if sites is None:
            sites = SiteSet.line(arr.shape[0])
        return CompositionalDataset(sites, arr)

    @property
    def n(self) -> int:
        return self.parts.shape[0]

    @property
    def p(self) -> int:
        return self.parts.shape[1]

    @property
    def rows(self) -> List[Composition]:
        return [Composition(row) for row in self.parts]

    def column(self, k: int) -> np.ndarray:
        return self.parts[:, k]

    def is_positive(self) -> bool:
        return bool(np.all(self.parts > 0))

    def permuted(self, order: Sequence[int]) -> "CompositionalDataset":
        order = list(order)
        return CompositionalDataset(self.sites.permuted(order), self.parts[order])

    def with_row(self, i: int, row: ArrayLike) -> "CompositionalDataset":
        parts = np.array(self.parts)
        parts[i] = np.asarray(row, dtype=float)
        return CompositionalDataset(self.sites, parts)

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class Grouping:
    """Ordered partition of the part indices {0, ..., q - 1} into p nonempty blocks."""

    groups: Tuple[Tuple[int, ...], ...]
    q: int = field(default=-1)

    def __init__(self, groups: Sequence[Sequence[int]], q: Optional[int] = None):
        blocks = tuple(tuple(int(i) for i in block) for block in groups)
        if not blocks or any(len(block) == 0 for block in blocks):
            raise DomainError(f"grouping blocks must be nonempty: {blocks}")
        flat = [i for block in blocks for i in block]
        q = max(flat) + 1 if q is None else int(q)
        if sorted(flat) != list(range(q)):
            raise DomainError(f"grouping {blocks} is not a partition of 0..{q - 1}")
        object.__setattr__(self, "groups", blocks)
        object.__setattr__(self, "q", q)

    @staticmethod
    def from_one_based(groups: Sequence[Sequence[int]], q: Optional[int] = None) -> "Grouping":
        return Grouping([[i - 1 for i in block] for block in groups], q=q)

    @staticmethod
    def identity(q: int) -> "Grouping":
        return Grouping([[i] for i in range(q)], q=q)

    @property
    def p(self) -> int:
        return len(self.groups)

    def to_list(self) -> List[List[int]]:
        return [list(block) for block in self.groups]
