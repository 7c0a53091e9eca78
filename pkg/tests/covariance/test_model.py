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
import numpy as np
import pytest

from simplex_geostat.core.base import SiteSet
from simplex_geostat.core.exceptions import DomainError, InvalidModelError
from simplex_geostat.covariance.correlation import CorrelationFunction, correlation_matrix
from simplex_geostat.covariance.model import (
    CovModel,
    LMCModel,
    ProportionalModel,
    build_block_matrix,
    cholesky_pivots,
    remediate,
    validate_model,
    with_nugget,
)
from tests.oracles import kron_block_matrix


def test_proportional_block_matrix(proportional_model, line_sites):
    matrix = build_block_matrix(proportional_model, line_sites)
    R = correlation_matrix(proportional_model.rho, line_sites)
    np.testing.assert_allclose(matrix.entries, np.kron(proportional_model.sigma, R))
    np.testing.assert_allclose(matrix.block(0, 1), proportional_model.sigma[0, 1] * R)
    assert (matrix.n, matrix.p) == (4, 3)
    assert len(matrix.diagonal_blocks()) == 3


def test_lmc_block_matrix(lmc_model, line_sites):
    matrix = build_block_matrix(lmc_model, line_sites)
    sigmas = [sigma for sigma, _ in lmc_model.terms]
    correlations = [correlation_matrix(rho, line_sites) for _, rho in lmc_model.terms]
    np.testing.assert_allclose(matrix.entries, kron_block_matrix(sigmas, correlations))
    assert not lmc_model.is_proportional
    np.testing.assert_allclose(lmc_model.sill(), np.diag([1.1, 1.1]))


def test_cross_covariance(proportional_model):
    np.testing.assert_allclose(
        proportional_model.cross_covariance([1.5]), proportional_model.sigma * np.exp(-1.0)
    )


def test_structure_checks():
    with pytest.raises(DomainError, match="symmetric"):
        ProportionalModel([[1.0, 0.5], [0.2, 1.0]], CorrelationFunction("exponential"))
    with pytest.raises(DomainError):
        ProportionalModel([1.0, 2.0], CorrelationFunction("exponential"))
    with pytest.raises(DomainError):
        LMCModel([])
    with pytest.raises(DomainError, match="different part counts"):
        LMCModel([(np.eye(2), CorrelationFunction("exponential")), (np.eye(3), CorrelationFunction("gaussian"))])


def test_dict_round_trip(proportional_model, lmc_model):
    for model in (proportional_model, lmc_model):
        again = CovModel.from_dict(model.to_dict())
        assert again.to_dict() == model.to_dict()
    with pytest.raises(NotImplementedError):
        CovModel.from_dict({"variant": "bilinear"})
    with pytest.raises(DomainError):
        CovModel.from_dict({"sigma": [[1.0]]})


def test_indefinite_sigma_is_invalid(line_sites):
    model = ProportionalModel([[1.0, 2.0], [2.0, 1.0]], CorrelationFunction("exponential"))
    validity = validate_model(model)
    assert not validity.valid
    assert validity.sigma_checks[0]["failure_index"] == 1
    with pytest.raises(InvalidModelError):
        build_block_matrix(model, line_sites)


def test_constructors_defer_definiteness(line_sites):
    indefinite = [[1.0, 2.0], [2.0, 1.0]]
    model = LMCModel(
        [(np.eye(2), CorrelationFunction("gaussian", 2.0)), (indefinite, CorrelationFunction("exponential"))]
    )
    assert model.p == 2
    validity = validate_model(model, line_sites)
    assert not validity.valid
    assert [check["failure_index"] for check in validity.sigma_checks] == [None, 1]
    with pytest.raises(InvalidModelError):
        build_block_matrix(model, line_sites)
    with pytest.raises(DomainError, match="not symmetric"):
        LMCModel([([[1.0, 0.5], [0.0, 1.0]], CorrelationFunction("exponential"))])


def test_validate_model(proportional_model, lmc_model, line_sites):
    assert validate_model(proportional_model, line_sites).valid
    validity = validate_model(lmc_model, line_sites)
    assert validity.valid
    assert validity.matrix_pivot > 0
    assert validity.to_dict()["reasons"] == []


def test_validate_dimension():
    model = ProportionalModel(np.eye(2), CorrelationFunction("cosine-1d"))
    validity = validate_model(model, SiteSet([[0.0, 0.0], [1.0, 1.0]]))
    assert not validity.valid
    assert "one dimension" in validity.reasons[0]


def test_near_singular_block_matrix():
    # gaussian correlation on close sites: positive definite in theory, not numerically
    model = ProportionalModel(np.eye(2), CorrelationFunction("gaussian", 10.0))
    sites = SiteSet(np.linspace(0.0, 0.1, 8))
    assert not validate_model(model, sites).valid
    assert validate_model(with_nugget(model, 0.1), sites).valid


def test_remediation_options(lmc_model):
    model = ProportionalModel(np.eye(2), CorrelationFunction("gaussian", 10.0))
    sites = SiteSet(np.linspace(0.0, 0.1, 8))
    assert validate_model(remediate(model, rougher=True), sites).valid
    assert validate_model(remediate(model, range_factor=1e-3), sites).valid
    combined = remediate(model, nugget=0.1, range_factor=0.5, rougher=True)
    assert combined.rho == CorrelationFunction("exponential", 5.0, 0.1)
    np.testing.assert_array_equal(combined.sigma, model.sigma)
    assert remediate(model) is model
    with pytest.raises(DomainError):
        model.with_range_factor(0.0)
    assert [rho.range for _, rho in lmc_model.with_range_factor(0.5).terms] == [0.5, 2.5]


def test_cholesky_pivots():
    pivot, failure = cholesky_pivots(np.diag([4.0, 0.25]))
    assert (pivot, failure) == (0.25, None)
    assert cholesky_pivots(np.array([[1.0, 0.0], [0.0, -1.0]])) == (None, 1)
