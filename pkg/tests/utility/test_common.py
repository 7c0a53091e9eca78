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
from dataclasses import dataclass

import numpy as np
import pytest

from simplex_geostat.utility.common import (
    default_seed,
    filter_list,
    is_ci,
    listify,
    make_rng,
    round_significant,
    to_item,
)


def test_listify():
    assert listify(None) == []
    assert listify(1) == [1]
    assert listify((1, 2)) == [1, 2]
    assert listify([1]) == [1]
    assert listify({"a": 1}) == ["a"]
    assert listify(np.arange(2)) == [0, 1]


def test_round_significant():
    assert round_significant(1 / 3) == 0.333333333333
    assert round_significant(123456.78901234567) == 123456.789012
    assert np.isinf(round_significant(np.inf))


@dataclass
class _Point:
    x: float


def test_to_item():
    assert to_item(np.float64(2 / 3)) == 0.666666666667
    assert to_item({"a": np.arange(2), "b": (np.int64(3), None)}) == {"a": [0, 1], "b": [3, None]}
    assert to_item(np.bool_(True)) is True
    assert to_item(_Point(np.float32(0.5))) == {"x": 0.5}
    assert to_item([np.array([[1.0, 2.0]])]) == [[[1.0, 2.0]]]


def test_filter_list():
    arr = ["arith", "geom", "graph-median", "l1-median"]
    assert filter_list(arr, ".*median") == arr[2:]
    assert filter_list(arr) == arr


def test_default_seed(monkeypatch):
    monkeypatch.delenv("SIMPLEX_GEOSTAT_SEED", raising=False)
    assert default_seed() == 0
    monkeypatch.setenv("SIMPLEX_GEOSTAT_SEED", "42")
    assert default_seed() == 42
    monkeypatch.setenv("SIMPLEX_GEOSTAT_SEED", "forty-two")
    with pytest.raises(ValueError):
        default_seed()


def test_is_ci(monkeypatch):
    monkeypatch.setenv("SIMPLEX_GEOSTAT_CI", "true")
    assert is_ci()
    monkeypatch.setenv("SIMPLEX_GEOSTAT_CI", "false")
    assert not is_ci()


def test_make_rng_streams():
    assert make_rng(7, 1).random() == make_rng(7, 1).random()
    assert make_rng(7, 1).random() != make_rng(7, 2).random()
    assert make_rng(7, 0, 3).random() != make_rng(7, 3, 0).random()
