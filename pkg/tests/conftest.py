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
import json

import numpy as np
import pytest

from simplex_geostat.axioms.tracker import ReportTracker
from simplex_geostat.core.base import CompositionalDataset, SiteSet
from simplex_geostat.covariance.correlation import CorrelationFunction
from simplex_geostat.covariance.model import LMCModel, ProportionalModel


@pytest.fixture
def worked_example():
    """The two-sample ilr example: (0.6, 0.3, 0.1) and (0.3, 0.3, 0.4)."""
    return CompositionalDataset.from_rows([[0.6, 0.3, 0.1], [0.3, 0.3, 0.4]])


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


@pytest.fixture
def tracker():
    return ReportTracker()


@pytest.fixture
def line_sites():
    return SiteSet([0.0, 1.0, 2.5, 4.0])


@pytest.fixture
def proportional_model():
    sigma = [[1.0, -0.3, -0.2], [-0.3, 0.8, -0.1], [-0.2, -0.1, 0.6]]
    return ProportionalModel(sigma, CorrelationFunction("exponential", 1.5))


@pytest.fixture
def lmc_model():
    return LMCModel(
        [
            (np.diag([1.0, 0.1]), CorrelationFunction("exponential", 1.0)),
            (np.diag([0.1, 1.0]), CorrelationFunction("exponential", 5.0)),
        ]
    )


@pytest.fixture
def write_csv(tmp_path):
    """Write CSV text to a temporary file and return its path."""

    def _write(text: str, name: str = "data.csv") -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


@pytest.fixture
def write_json(tmp_path):
    def _write(data, name: str = "config.json") -> str:
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return _write
