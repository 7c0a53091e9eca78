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

from simplex_geostat.axioms.fixtures import (
    GRAPH_MEDIAN_ROWS,
    geometric_c2_witness,
    graph_median_discontinuity,
    lmc_divergence_model,
    negative_weight_model,
    walvoort_datasets,
)
from simplex_geostat.core.simplex import half_taxi_distance


def test_graph_median_rows():
    rows = np.array(GRAPH_MEDIAN_ROWS)
    for row in rows[1:]:
        assert half_taxi_distance(rows[0], row) == pytest.approx(0.25)
    assert half_taxi_distance(rows[2], rows[3]) == pytest.approx(0.25)

    ds, moved = graph_median_discontinuity(1e-4)
    np.testing.assert_array_equal(ds.parts[:3], moved.parts[:3])
    assert half_taxi_distance(ds.parts[3], moved.parts[3]) == pytest.approx(1e-4)
    assert half_taxi_distance(moved.parts[0], moved.parts[3]) > 0.25 > half_taxi_distance(moved.parts[2], moved.parts[3])


def test_geometric_witness():
    witness = geometric_c2_witness()
    assert witness.grouping_a.groups[0] == witness.grouping_b.groups[0] == (0,)
    assert witness.dataset.p == 4


def test_walvoort_datasets():
    first, second = walvoort_datasets()
    np.testing.assert_array_equal(first.parts[:2], second.parts[:2])
    assert not np.array_equal(first.parts[2], second.parts[2])
    assert first.p == lmc_divergence_model().p


def test_negative_weight_model():
    model, sites = negative_weight_model()
    assert model.is_proportional
    np.testing.assert_array_equal(sites.coords.ravel(), [0.0, 0.5, 1.0])
