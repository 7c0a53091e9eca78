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

from simplex_geostat.core.exceptions import DomainError, SolverError
from simplex_geostat.kriging.qp import active_set_qp, independent_rows

TARGET = np.array([0.8, 0.6, -0.5])


def simplex_projection(target, x0=None, max_iter=None, A=None, b=None):
    """Project `target` onto the probability simplex: min 0.5 |x - target|^2, sum x = 1, x >= 0."""
    n = target.size
    A = np.ones((1, n)) if A is None else A
    b = np.ones(1) if b is None else b
    x0 = np.full(n, 1.0 / n) if x0 is None else x0
    return active_set_qp(np.eye(n), -target, A, b, -np.eye(n), np.zeros(n), x0, max_iter=max_iter)


def test_projection():
    result = simplex_projection(TARGET)
    np.testing.assert_allclose(result.x, [0.6, 0.4, 0.0], atol=1e-12)
    assert result.working_set == (2,)
    np.testing.assert_allclose(result.equality_multipliers, [0.2], atol=1e-12)
    np.testing.assert_allclose(result.inequality_multipliers, [0.0, 0.0, 0.7], atol=1e-12)
    assert result.objective(np.eye(3), -TARGET) == pytest.approx(-0.46)


def test_interior_solution():
    target = np.array([0.5, 0.3, 0.2])
    result = simplex_projection(target)
    np.testing.assert_allclose(result.x, target, atol=1e-12)
    assert result.working_set == ()


def test_dependent_equalities():
    A = np.ones((2, 3))
    result = simplex_projection(TARGET, A=A, b=np.ones(2))
    np.testing.assert_allclose(result.x, [0.6, 0.4, 0.0], atol=1e-12)
    assert np.count_nonzero(result.equality_multipliers) == 1


def test_independent_rows():
    A = np.array([[1.0, 0.0, 0.0], [2.0, 0.0, 0.0], [0.0, 1.0, 1.0]])
    assert len(independent_rows(A)) == 2
    assert independent_rows(np.zeros((0, 3))) == []


def test_infeasible_start():
    with pytest.raises(DomainError, match="feasible"):
        simplex_projection(TARGET, x0=np.array([1.5, -0.5, 0.0]))


def test_iteration_limit():
    with pytest.raises(SolverError) as e:
        simplex_projection(TARGET, max_iter=1)
    assert e.value.last_iterate.shape == (3,)
