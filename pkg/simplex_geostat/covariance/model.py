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
"""Multivariate covariance models and the variable-major block covariance matrix."""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from loguru import logger
from scipy.linalg import cho_factor
from scipy.linalg.lapack import dpotrf

from simplex_geostat.core.base import ArrayLike, SiteSet
from simplex_geostat.core.exceptions import DomainError, InvalidModelError
from simplex_geostat.covariance.correlation import CorrelationFunction, correlation_matrix

SYMMETRY_TOL = 1e-12
PSD_TOL = 1e-10
PIVOT_RTOL = 1e-12  # minimum Cholesky pivot relative to trace / size


def _as_sigma(sigma: ArrayLike, name: str) -> np.ndarray:
    arr = np.array(sigma, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DomainError(f"{name} must be a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} has non-finite entries")
    scale = max(1.0, float(np.abs(arr).max()))
    if np.abs(arr - arr.T).max() > SYMMETRY_TOL * scale:
        raise DomainError(f"{name} is not symmetric")
    arr = 0.5 * (arr + arr.T)
    arr.setflags(write=False)
    return arr


def cholesky_pivots(matrix: np.ndarray) -> Tuple[Optional[float], Optional[int]]:
    """(smallest pivot L_ii^2, None) when Cholesky succeeds, else (None, 0-based failure index)."""
    factor, info = dpotrf(np.asarray(matrix, dtype=float), lower=1, clean=1)
    if info > 0:
        return None, int(info) - 1
    if info < 0:
        raise ValueError(f"dpotrf rejected argument {-info}")
    return float(np.min(np.diag(factor)) ** 2), None


class CovModel(ABC):
    """C(h) = sum_j sigma_j * rho_j(h): a proportional model has one term, an LMC any number."""

    variant: str = ""

    @property
    @abstractmethod
    def terms(self) -> List[Tuple[np.ndarray, CorrelationFunction]]:
        raise NotImplementedError

    @property
    def p(self) -> int:
        return self.terms[0][0].shape[0]

    @property
    def is_proportional(self) -> bool:
        return len(self.terms) == 1

    def sill(self) -> np.ndarray:
        """C(0), the p x p covariance at zero lag."""
        return sum(sigma for sigma, _ in self.terms)

    def cross_covariance(self, h: ArrayLike) -> np.ndarray:
        """p x p matrix [C_kl(h)]."""
        lag = np.atleast_1d(np.asarray(h, dtype=float))
        total = np.zeros((self.p, self.p))
        for sigma, rho in self.terms:
            rho.check_dimension(lag.size)
            total += sigma * float(rho.of_distance(np.linalg.norm(lag)))
        return total

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        raise NotImplementedError

    @abstractmethod
    def map_correlations(self, fn: Callable[[CorrelationFunction], CorrelationFunction]) -> "CovModel":
        """The same coefficient matrices with `fn` applied to every correlation function."""
        raise NotImplementedError

    def with_nugget(self, fraction: float) -> "CovModel":
        return self.map_correlations(lambda rho: rho.with_nugget(fraction))

    def with_range_factor(self, factor: float) -> "CovModel":
        if not factor > 0:
            raise DomainError(f"range factor must be positive, got {factor}")
        return self.map_correlations(lambda rho: rho.with_range(rho.range * factor))

    def rougher(self) -> "CovModel":
        return self.map_correlations(CorrelationFunction.rougher)

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "CovModel":
        if not isinstance(data, dict) or "variant" not in data:
            raise DomainError("covariance model needs a 'variant' field")
        variant = data["variant"]
        if variant == "proportional":
            return ProportionalModel(data["sigma"], CorrelationFunction.from_dict(data["rho"]))
        if variant == "lmc":
            terms = [(term["sigma"], CorrelationFunction.from_dict(term["rho"])) for term in data["terms"]]
            return LMCModel(terms)
        raise NotImplementedError(f"covariance variant {variant!r} not implemented! Available: ['proportional', 'lmc']")


class ProportionalModel(CovModel):
    """C_kl(h) = sigma_kl * rho(h) with a symmetric positive definite sigma.

    The constructor checks shape, finiteness and symmetry only. Definiteness is reported by `validate_model`
    and enforced by `build_block_matrix`, which raises `InvalidModelError`.
    """

    variant = "proportional"

    def __init__(self, sigma: ArrayLike, rho: CorrelationFunction):
        self.sigma = _as_sigma(sigma, "sigma")
        self.rho = rho

    @property
    def terms(self) -> List[Tuple[np.ndarray, CorrelationFunction]]:
        return [(self.sigma, self.rho)]

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": self.variant, "sigma": self.sigma.tolist(), "rho": self.rho.to_dict()}

    def map_correlations(self, fn: Callable[[CorrelationFunction], CorrelationFunction]) -> "ProportionalModel":
        return ProportionalModel(self.sigma, fn(self.rho))

    def __repr__(self):
        return f"ProportionalModel(sigma={self.sigma.tolist()}, rho={self.rho})"


class LMCModel(CovModel):
    """Linear model of coregionalization: sum_j sigma_j * rho_j(h), each sigma_j symmetric PSD.

    Only symmetry and matching shapes are checked here; `validate_model` and `build_block_matrix` check the
    assembled covariance.
    """

    variant = "lmc"

    def __init__(self, terms: List[Tuple[ArrayLike, CorrelationFunction]]):
        if not terms:
            raise DomainError("an LMC needs at least one term")
        self._terms = [(_as_sigma(sigma, f"sigma_{j + 1}"), rho) for j, (sigma, rho) in enumerate(terms)]
        shapes = {sigma.shape for sigma, _ in self._terms}
        if len(shapes) != 1:
            raise DomainError(f"LMC terms have different part counts: {sorted(shapes)}")

    @property
    def terms(self) -> List[Tuple[np.ndarray, CorrelationFunction]]:
        return list(self._terms)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "variant": self.variant,
            "terms": [{"sigma": sigma.tolist(), "rho": rho.to_dict()} for sigma, rho in self._terms],
        }

    def map_correlations(self, fn: Callable[[CorrelationFunction], CorrelationFunction]) -> "LMCModel":
        return LMCModel([(sigma, fn(rho)) for sigma, rho in self._terms])

    def __repr__(self):
        return f"LMCModel({len(self._terms)} terms, p={self.p})"


def with_nugget(model: CovModel, fraction: float) -> CovModel:
    """The same model with every correlation function carrying `fraction` as its nugget."""
    return model.with_nugget(fraction)


def remediate(
    model: CovModel, nugget: Optional[float] = None, range_factor: Optional[float] = None, rougher: bool = False
) -> CovModel:
    """Refit options for kriged means that leave the simplex, in any combination.

    Args:
        nugget: nugget fraction given to every correlation function.
        range_factor: multiplies every range; values below 1 shorten the correlation.
        rougher: replace quadratic behaviour at the origin by linear behaviour (gaussian becomes exponential).
    """
    if rougher:
        model = model.rougher()
    if range_factor is not None:
        model = model.with_range_factor(range_factor)
    if nugget is not None:
        model = model.with_nugget(nugget)
    logger.debug(f"remediated model: {model!r}")
    return model


@dataclass(frozen=True, eq=False)
class BlockCovMatrix:
    """np x np covariance in variable-major order: block (k, l) is [C_kl(s_j - s_i)]_ij."""

    entries: np.ndarray
    n: int
    p: int
    factor: Tuple[np.ndarray, bool] = field(repr=False, default=None)

    def block(self, k: int, l: int) -> np.ndarray:  # noqa: E741
        n = self.n
        return self.entries[k * n : (k + 1) * n, l * n : (l + 1) * n]

    def diagonal_blocks(self) -> List[np.ndarray]:
        return [self.block(k, k) for k in range(self.p)]


def assemble(model: CovModel, sites: SiteSet) -> np.ndarray:
    """sum_j sigma_j kron R_j without factorizing."""
    n, p = sites.n, model.p
    entries = np.zeros((n * p, n * p))
    for sigma, rho in model.terms:
        entries += np.kron(sigma, correlation_matrix(rho, sites))
    return entries


def build_block_matrix(model: CovModel, sites: SiteSet) -> BlockCovMatrix:
    """Assemble and Cholesky-factorize the block covariance matrix; raises `InvalidModelError` if not positive definite."""
    entries = assemble(model, sites)
    try:
        factor = cho_factor(entries, lower=True)
    except np.linalg.LinAlgError as e:
        raise InvalidModelError(f"block covariance matrix of {model!r} on {sites.n} sites is not positive definite") from e
    entries.setflags(write=False)
    return BlockCovMatrix(entries=entries, n=sites.n, p=model.p, factor=factor)


@dataclass
class ModelValidity:
    """Cholesky diagnostics of a model's coefficient matrices and, when sites are given, its block matrix."""

    valid: bool
    matrix_pivot: Optional[float] = None
    matrix_failure_index: Optional[int] = None
    sigma_checks: List[Dict[str, Any]] = field(default_factory=list)
    reasons: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "valid": self.valid,
            "matrix_pivot": self.matrix_pivot,
            "matrix_failure_index": self.matrix_failure_index,
            "sigma_checks": self.sigma_checks,
            "reasons": self.reasons,
        }


def validate_model(model: CovModel, sites: Optional[SiteSet] = None) -> ModelValidity:
    """Never raises for numerical invalidity; failures are listed in `reasons`."""
    report = ModelValidity(valid=True)
    for j, (sigma, rho) in enumerate(model.terms):
        name = "sigma" if model.is_proportional else f"sigma_{j + 1}"
        pivot, failure = cholesky_pivots(sigma)
        min_eig = float(np.linalg.eigvalsh(sigma).min())
        report.sigma_checks.append({"name": name, "min_pivot": pivot, "failure_index": failure, "min_eigenvalue": min_eig})
        if model.is_proportional and failure is not None:
            report.reasons.append(f"{name} is not positive definite (Cholesky fails at index {failure})")
        elif not model.is_proportional and min_eig < -PSD_TOL:
            report.reasons.append(f"{name} is not positive semidefinite (eigenvalue {min_eig:.3g})")
        if sites is not None:
            try:
                rho.check_dimension(sites.d)
            except DomainError as e:
                report.reasons.append(str(e))

    if sites is not None and not report.reasons:
        entries = assemble(model, sites)
        pivot, failure = cholesky_pivots(entries)
        report.matrix_pivot, report.matrix_failure_index = pivot, failure
        threshold = PIVOT_RTOL * np.trace(entries) / entries.shape[0]
        if failure is not None:
            report.reasons.append(f"block covariance matrix Cholesky fails at index {failure}")
        elif pivot <= threshold:
            report.reasons.append(f"block covariance matrix smallest pivot {pivot:.3g} <= {threshold:.3g}")
    report.valid = not report.reasons
    if not report.valid:
        logger.warning(f"invalid covariance model: {'; '.join(report.reasons)}")
    return report
