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
from simplex_geostat.means.base import MeanMethod
from simplex_geostat.means.utils import available_means, get_mean


def test_available_means():
    assert available_means() == ["arith", "geom", "ilr", "qam", "graph-median", "l1-median"]
    assert available_means(".*median") == ["graph-median", "l1-median"]


def test_get_mean():
    with pytest.raises(NotImplementedError):
        get_mean("harmonic")


def test_method_validation():
    with pytest.raises(NotImplementedError):
        MeanMethod("mode")
    with pytest.raises(DomainError):
        MeanMethod("geom", (0.5, 0.5))
    with pytest.raises(DomainError):
        MeanMethod("qam")
    with pytest.raises(DomainError):
        MeanMethod("arith", phi="log")
    with pytest.raises(DomainError):
        MeanMethod("arith", (0.5, 0.6))


def test_method_descriptor_and_dict():
    method = MeanMethod("qam", (0.25, 0.75), "sine:0.1")
    assert method.descriptor == "qam[sine:0.1](0.25,0.75)"
    assert MeanMethod.from_dict(method.to_dict()) == method
    assert MeanMethod("l1-median").equal_weights
    assert MeanMethod("ilr").needs_positive
    assert not MeanMethod("qam", phi="sine:0.1").needs_positive
    assert MeanMethod("qam", phi="log").needs_positive


@pytest.mark.parametrize("kind", ["arith", "geom", "ilr", "graph-median", "l1-median"])
def test_estimate_dispatch(worked_example, kind):
    estimate = MeanMethod(kind).estimate(worked_example)
    assert estimate.parts.sum() == pytest.approx(1.0)
    assert estimate.in_simplex
    assert estimate.to_dict()["method"] == kind


def test_with_weights(worked_example):
    method = MeanMethod("ilr").with_weights([1.0, 0.0])
    np.testing.assert_allclose(method.estimate(worked_example).parts, [0.6, 0.3, 0.1], atol=1e-14)
