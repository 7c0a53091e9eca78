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

from simplex_geostat.core.exceptions import (
    DataFormatError,
    DomainError,
    SimplexGeostatError,
    SingularCovarianceError,
    SolverError,
)


def test_domain_error_is_value_error():
    with pytest.raises(ValueError):
        raise DomainError("negative part")


def test_singular_covariance_is_linalg_error():
    with pytest.raises(np.linalg.LinAlgError):
        raise SingularCovarianceError("not positive definite")


def test_solver_error_keeps_iterate():
    error = SolverError("no convergence", last_iterate=np.array([0.5, 0.5]))
    assert isinstance(error, SimplexGeostatError)
    assert error.last_iterate.tolist() == [0.5, 0.5]


def test_data_format_error_location():
    error = DataFormatError("not a finite number", line=3, column="p2")
    assert str(error) == "not a finite number (line 3, column p2)"
    assert (error.line, error.column) == (3, "p2")
    assert str(DataFormatError("empty")) == "empty"
