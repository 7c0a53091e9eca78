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

from simplex_geostat.core.exceptions import DomainError
from simplex_geostat.covariance.correlation import CorrelationFunction
from simplex_geostat.covariance.model import ProportionalModel
from simplex_geostat.datagen.generator import (
    DataScheme,
    GeneratorSpec,
    SiteScheme,
    dirichlet_rows,
    gen_sites,
    generate,
    random_config,
    random_lmc_model,
    random_proportional_model,
    sample_gaussian_field,
)
from simplex_geostat.utility.common import make_rng


def test_generate_is_deterministic():
    spec = GeneratorSpec(seed=11, n=7, p=4, d=2)
    first, second = generate(spec), generate(spec)
    np.testing.assert_array_equal(first.parts, second.parts)
    np.testing.assert_array_equal(first.sites.coords, second.sites.coords)
    other = generate(GeneratorSpec(seed=12, n=7, p=4, d=2))
    assert not np.array_equal(first.parts, other.parts)


def test_dirichlet_min_part(rng):
    rows = dirichlet_rows(rng, 200, 5, concentration=0.1, min_part=0.01)
    assert rows.min() >= 0.01 - 1e-15
    np.testing.assert_allclose(rows.sum(axis=1), 1.0, atol=1e-15)
    with pytest.raises(DomainError):
        dirichlet_rows(rng, 1, 5, min_part=0.2)


def test_grid_sites():
    sites = gen_sites(GeneratorSpec(n=5, d=2, sites=SiteScheme("grid", spacing=2.0)))
    np.testing.assert_array_equal(sites.coords, [[0, 0], [0, 2], [0, 4], [2, 0], [2, 2]])


def test_clustered_sites():
    spec = GeneratorSpec(seed=3, n=6, d=2, sites=SiteScheme("clustered", pair_gap=1e-3))
    sites = gen_sites(spec)
    distances = sites.distances()
    assert distances[0, 1] == pytest.approx(1e-3)
    assert np.sort(distances[np.triu_indices(6, 1)])[1] > 1e-3


def test_uniform_separation():
    sites = gen_sites(GeneratorSpec(n=20, d=2, sites=SiteScheme(extent=5.0, min_separation=0.3)))
    distances = sites.distances()[np.triu_indices(20, 1)]
    assert distances.min() > 0.3
    assert sites.coords.min() >= 0 and sites.coords.max() <= 5.0
    with pytest.raises(DomainError, match="cannot place"):
        gen_sites(GeneratorSpec(n=30, d=1, sites=SiteScheme(extent=1.0, min_separation=0.5)))


def test_gaussian_field_data(proportional_model):
    spec = GeneratorSpec(seed=5, n=8, p=3, data=DataScheme("gaussian-field", model=proportional_model))
    ds = generate(spec)
    assert ds.is_positive()
    np.testing.assert_array_equal(ds.parts, generate(spec).parts)


def test_gaussian_field_covariance(proportional_model, line_sites):
    samples = sample_gaussian_field(proportional_model, line_sites, make_rng(0, 9), size=20_000)
    empirical = np.cov(samples, rowvar=False)
    expected = np.kron(proportional_model.sigma, np.exp(-line_sites.distances() / 1.5))
    np.testing.assert_allclose(empirical, expected, atol=0.05)


def test_nugget_field_sites_are_independent(proportional_model, line_sites):
    model = ProportionalModel(proportional_model.sigma, CorrelationFunction("nugget"))
    n, p = line_sites.n, model.p
    samples = sample_gaussian_field(model, line_sites, make_rng(0, 10), size=10_000)
    site = np.arange(n * p) % n
    other_site = site[:, None] != site[None, :]
    assert np.abs(np.corrcoef(samples, rowvar=False)[other_site]).max() < 0.05

    fields = np.exp(samples.reshape(-1, p, n))
    parts = fields / fields.sum(axis=1, keepdims=True)
    for k in range(p):
        r = np.corrcoef(parts[:, k, :], rowvar=False)
        assert np.abs(r[~np.eye(n, dtype=bool)]).max() < 0.05


def test_spec_validation(lmc_model):
    with pytest.raises(NotImplementedError):
        SiteScheme("hexagonal")
    with pytest.raises(NotImplementedError):
        DataScheme("logistic-normal")
    with pytest.raises(DomainError):
        DataScheme("gaussian-field")
    with pytest.raises(DomainError):
        GeneratorSpec(p=1)
    with pytest.raises(DomainError, match="variables"):
        GeneratorSpec(p=3, data=DataScheme("gaussian-field", model=lmc_model))


def test_spec_dict(proportional_model):
    spec = GeneratorSpec(seed=4, n=6, p=3, d=1, data=DataScheme("gaussian-field", model=proportional_model))
    again = GeneratorSpec.from_dict(spec.to_dict())
    assert again.to_dict() == spec.to_dict()
    np.testing.assert_array_equal(generate(again).parts, generate(spec).parts)
    with pytest.raises(DomainError, match="unknown"):
        GeneratorSpec.from_dict({"seed": 1, "size": 3})


def test_random_models():
    rng = make_rng(0, 1)
    p, n, sites = random_config(rng)
    assert 2 <= p <= 5 and 2 <= n <= 10 and sites.n == n
    assert random_proportional_model(rng, p).p == p
    lmc = random_lmc_model(rng, p)
    assert len(lmc.terms) == 2
    assert np.linalg.eigvalsh(lmc.terms[0][0]).min() >= 0.5 - 1e-12
