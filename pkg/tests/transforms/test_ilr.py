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
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from simplex_geostat.core.base import Composition
from simplex_geostat.core.exceptions import DomainError
from simplex_geostat.core.simplex import aitchison_inner, closure, half_taxi_distance
from simplex_geostat.transforms.ilr import IlrCoordinates, ilr, ilr_basis, ilr_inv, ilr_inv_rows, ilr_rows


def test_worked_example():
    np.testing.assert_allclose(ilr([0.6, 0.3, 0.1]).coords, [0.490, 1.180], atol=5e-4)
    np.testing.assert_allclose(ilr([0.3, 0.3, 0.4]).coords, [0.000, -0.235], atol=5e-4)
    np.testing.assert_allclose(ilr_inv([0.245, 0.4725]).parts, [0.459, 0.325, 0.216], atol=5e-4)


def test_second_part_increase():
    """Both samples have second part 0.3, yet the back-transformed mean has 0.325 (+8.3%)."""
    mean = ilr_inv((ilr([0.6, 0.3, 0.1]).coords + ilr([0.3, 0.3, 0.4]).coords) / 2)
    assert mean.parts[1] == pytest.approx(0.325, abs=5e-4)
    assert mean.parts[1] / 0.3 - 1.0 == pytest.approx(0.083, abs=2e-3)


def test_basis_is_orthonormal_and_centred():
    for p in range(2, 7):
        V = ilr_basis(p)
        np.testing.assert_allclose(V.T @ V, np.eye(p - 1), atol=1e-14)
        np.testing.assert_allclose(V.sum(axis=0), 0.0, atol=1e-14)
    with pytest.raises(DomainError):
        ilr_basis(1)


def test_isometry():
    x, y = Composition([0.6, 0.3, 0.1]), Composition([0.2, 0.5, 0.3])
    assert ilr(x).coords @ ilr(y).coords == pytest.approx(aitchison_inner(x, y), abs=1e-12)


positive_parts = st.lists(st.floats(min_value=1e-4, max_value=1.0), min_size=2, max_size=6)


@settings(max_examples=1000, deadline=None)
@given(positive_parts)
def test_round_trip(parts):
    x = closure(parts)
    np.testing.assert_allclose(ilr_inv(ilr(x)).parts, x.parts, atol=1e-10)


@settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(positive_parts, st.data())
def test_injective(parts, data):
    x = closure(parts)
    y = closure(data.draw(st.lists(st.floats(min_value=1e-4, max_value=1.0), min_size=x.p, max_size=x.p)))
    assume(half_taxi_distance(x, y) > 1e-6)
    assert np.abs(ilr(x).coords - ilr(y).coords).max() > 1e-9


def test_rows():
    rows = np.array([[0.6, 0.3, 0.1], [0.3, 0.3, 0.4]])
    np.testing.assert_allclose(ilr_inv_rows(ilr_rows(rows)), rows, atol=1e-14)
    assert ilr_inv_rows(np.array([[800.0]])).sum() == pytest.approx(1.0)


def test_errors():
    with pytest.raises(DomainError, match="strictly positive"):
        ilr([0.0, 1.0])
    with pytest.raises(DomainError):
        ilr_inv([0.1, 0.2], p=4)
    with pytest.raises(DomainError):
        IlrCoordinates([np.inf])
    assert IlrCoordinates([0.1, 0.2]).p == 3
