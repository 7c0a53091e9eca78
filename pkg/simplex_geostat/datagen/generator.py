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
"""Seeded synthetic sites, compositions, covariance models and Gaussian fields.

Every draw comes from `numpy.random.default_rng([seed, stream])`; identical specs give identical output.
"""
import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from simplex_geostat.core.base import CompositionalDataset, SiteSet
from simplex_geostat.core.exceptions import DomainError
from simplex_geostat.covariance.correlation import CorrelationFunction
from simplex_geostat.covariance.model import CovModel, LMCModel, ProportionalModel, build_block_matrix
from simplex_geostat.utility.common import make_rng

SITE_STREAM = 0
DATA_STREAM = 1
DEFAULT_MIN_PART = 1e-6
INTERIOR_MIN_PART = 0.01
MAX_REJECTIONS = 10_000
SWEEP_FAMILIES = ("exponential", "gaussian", "spherical", "nugget")

SITE_SCHEMES = ("uniform-box", "grid", "clustered")
DATA_SCHEMES = ("dirichlet", "gaussian-field")


@dataclass(frozen=True)
class SiteScheme:
    kind: str = "uniform-box"
    extent: float = 10.0
    spacing: float = 1.0
    pair_gap: float = 1e-2
    min_separation: float = 0.0

    def __post_init__(self):
        if self.kind not in SITE_SCHEMES:
            raise NotImplementedError(f"site scheme {self.kind!r} not implemented! Available: {list(SITE_SCHEMES)}")


@dataclass(frozen=True)
class DataScheme:
    kind: str = "dirichlet"
    concentration: float = 1.0
    min_part: float = DEFAULT_MIN_PART
    model: Optional[CovModel] = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in DATA_SCHEMES:
            raise NotImplementedError(f"data scheme {self.kind!r} not implemented! Available: {list(DATA_SCHEMES)}")
        if self.kind == "dirichlet" and not self.concentration > 0:
            raise DomainError(f"Dirichlet concentration must be positive, got {self.concentration}")
        if self.kind == "gaussian-field" and self.model is None:
            raise DomainError("gaussian-field data needs a covariance model")


@dataclass(frozen=True)
class GeneratorSpec:
    """Everything needed to reproduce a synthetic dataset bitwise."""

    seed: int = 0
    n: int = 10
    p: int = 3
    d: int = 1
    sites: SiteScheme = field(default_factory=SiteScheme)
    data: DataScheme = field(default_factory=DataScheme)

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise DomainError(f"need n >= 1 and d >= 1, got n={self.n}, d={self.d}")
        if self.p < 2:
            raise DomainError(f"need p >= 2, got {self.p}")
        if self.data.model is not None and self.data.model.p != self.p:
            raise DomainError(f"covariance model has {self.data.model.p} variables, spec asks for p={self.p}")

    def to_dict(self) -> Dict[str, Any]:
        data = {"kind": self.data.kind, "concentration": self.data.concentration, "min_part": self.data.min_part}
        if self.data.model is not None:
            data["model"] = self.data.model.to_dict()
        return {
            "seed": self.seed,
            "n": self.n,
            "p": self.p,
            "d": self.d,
            "sites": {
                "kind": self.sites.kind,
                "extent": self.sites.extent,
                "spacing": self.sites.spacing,
                "pair_gap": self.sites.pair_gap,
                "min_separation": self.sites.min_separation,
            },
            "data": data,
        }

    @staticmethod
    def from_dict(config: Dict[str, Any]) -> "GeneratorSpec":
        sites = SiteScheme(**config.get("sites", {}))
        data_config = dict(config.get("data", {}))
        if "model" in data_config:
            data_config["model"] = CovModel.from_dict(data_config["model"])
        unknown = set(config) - {"seed", "n", "p", "d", "sites", "data"}
        if unknown:
            raise DomainError(f"unknown generator fields {sorted(unknown)}")
        return GeneratorSpec(
            seed=int(config.get("seed", 0)),
            n=int(config.get("n", 10)),
            p=int(config.get("p", 3)),
            d=int(config.get("d", 1)),
            sites=sites,
            data=DataScheme(**data_config),
        )


def _far_enough(candidate: np.ndarray, placed: Sequence[np.ndarray], separation: float) -> bool:
    return all(np.linalg.norm(candidate - other) > separation for other in placed)


def _uniform_sites(rng: np.random.Generator, n: int, d: int, extent: float, separation: float, placed=None):
    placed = list(placed or [])
    attempts = 0
    while len(placed) < n:
        candidate = rng.uniform(0.0, extent, size=d)
        attempts += 1
        if attempts > MAX_REJECTIONS * n:
            raise DomainError(f"cannot place {n} sites in [0, {extent}]^{d} with separation {separation}")
        if _far_enough(candidate, placed, separation):
            placed.append(candidate)
    return np.array(placed)


def gen_sites(spec: GeneratorSpec) -> SiteSet:
    scheme, n, d = spec.sites, spec.n, spec.d
    rng = make_rng(spec.seed, SITE_STREAM)
    if scheme.kind == "grid":
        if not scheme.spacing > 0:
            raise DomainError(f"grid spacing must be positive, got {scheme.spacing}")
        side = math.ceil(round(n ** (1.0 / d), 12))
        lattice = itertools.islice(itertools.product(range(side), repeat=d), n)
        return SiteSet(np.array(list(lattice), dtype=float) * scheme.spacing)
    if scheme.kind == "uniform-box":
        return SiteSet(_uniform_sites(rng, n, d, scheme.extent, scheme.min_separation))

    if not scheme.pair_gap > 0:
        raise DomainError(f"pair gap must be positive, got {scheme.pair_gap}")
    first = rng.uniform(0.0, scheme.extent, size=d)
    if n == 1:
        return SiteSet(first[None, :])
    direction = rng.standard_normal(d)
    direction /= np.linalg.norm(direction)
    pair = [first, first + scheme.pair_gap * direction]
    separation = max(scheme.pair_gap, scheme.min_separation)
    return SiteSet(_uniform_sites(rng, n, d, scheme.extent, separation, placed=pair))


def dirichlet_rows(rng: np.random.Generator, n: int, p: int, concentration: float = 1.0, min_part: float = 0.0):
    """Symmetric Dirichlet rows from normalized unit-rate gamma draws, mixed so every part is >= `min_part`."""
    if not 0.0 <= min_part * p < 1.0:
        raise DomainError(f"min_part {min_part} is infeasible for {p} parts")
    draws = rng.gamma(concentration, 1.0, size=(n, p))
    sums = draws.sum(axis=1, keepdims=True)
    empty = sums[:, 0] <= 0
    if np.any(empty):
        draws[empty] = 1.0
        sums = draws.sum(axis=1, keepdims=True)
    rows = draws / sums
    if min_part > 0:
        rows = (1.0 - p * min_part) * rows + min_part
    return rows / rows.sum(axis=1, keepdims=True)


def sample_gaussian_field(model: CovModel, sites: SiteSet, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """(size, np) zero-mean normal samples with covariance `build_block_matrix(model, sites)`, variable-major."""
    matrix = build_block_matrix(model, sites)
    lower = np.tril(matrix.factor[0])
    return rng.standard_normal((size, matrix.n * matrix.p)) @ lower.T


def gen_compositions(spec: GeneratorSpec, sites: SiteSet) -> CompositionalDataset:
    scheme = spec.data
    rng = make_rng(spec.seed, DATA_STREAM)
    if scheme.kind == "dirichlet":
        rows = dirichlet_rows(rng, sites.n, spec.p, scheme.concentration, scheme.min_part)
        return CompositionalDataset(sites, rows)

    field_values = sample_gaussian_field(scheme.model, sites, rng)[0].reshape(spec.p, sites.n).T
    # closure of exponentials; shifting by the row maximum leaves the closure unchanged
    exp_values = np.exp(field_values - field_values.max(axis=1, keepdims=True))
    logger.debug(f"gaussian-field data: {sites.n} sites, {spec.p} parts")
    return CompositionalDataset(sites, exp_values / exp_values.sum(axis=1, keepdims=True))


def generate(spec: GeneratorSpec) -> CompositionalDataset:
    return gen_compositions(spec, gen_sites(spec))


def random_sigma(rng: np.random.Generator, p: int) -> np.ndarray:
    """Random SPD matrix A A^T / p + 0.5 I."""
    A = rng.standard_normal((p, p))
    sigma = A @ A.T / p + 0.5 * np.eye(p)
    return 0.5 * (sigma + sigma.T)


def random_correlation(rng: np.random.Generator, families: Sequence[str] = SWEEP_FAMILIES) -> CorrelationFunction:
    """A random well-conditioned correlation; gaussian draws carry a small nugget."""
    family = families[int(rng.integers(len(families)))]
    range_ = float(rng.uniform(0.3, 2.0))
    nugget = float(rng.uniform(0.01, 0.1)) if family == "gaussian" else 0.0
    return CorrelationFunction(family, range_, nugget)


def random_proportional_model(rng: np.random.Generator, p: int, families: Sequence[str] = SWEEP_FAMILIES):
    return ProportionalModel(random_sigma(rng, p), random_correlation(rng, families))


def random_lmc_model(rng: np.random.Generator, p: int) -> LMCModel:
    """Two exponential terms with well separated ranges."""
    short = CorrelationFunction("exponential", float(rng.uniform(0.5, 1.0)))
    long = CorrelationFunction("exponential", float(rng.uniform(4.0, 8.0)))
    return LMCModel([(random_sigma(rng, p), short), (random_sigma(rng, p), long)])


def random_config(rng: np.random.Generator, n_range=(2, 10), p_range=(2, 5), d_range=(1, 3)) -> Tuple[int, int, SiteSet]:
    """(p, n, sites) with sites uniform in [0, 10]^d at separation > 0.1."""
    p = int(rng.integers(p_range[0], p_range[1] + 1))
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    d = int(rng.integers(d_range[0], d_range[1] + 1))
    return p, n, SiteSet(_uniform_sites(rng, n, d, 10.0, 0.1))


def random_dataset(rng: np.random.Generator, n: int, p: int, min_part: float = INTERIOR_MIN_PART) -> CompositionalDataset:
    """Dirichlet(1) rows on sites 0..n-1, interior by default."""
    return CompositionalDataset.from_rows(dirichlet_rows(rng, n, p, 1.0, min_part))
