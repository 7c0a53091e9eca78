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

from simplex_geostat.axioms.checks import check_continuity, theorem2_linearity_probe
from simplex_geostat.axioms.fixtures import graph_median_directions, graph_median_discontinuity
from simplex_geostat.axioms.report import AxiomReport
from simplex_geostat.axioms.sweeps import (
    continuity_sweep,
    converse_summary,
    marginal_stability_sweep,
    reflexivity_sweep,
    replay,
    sum_to_one_sweep,
    symmetry_sweep,
    theorem3_sweep,
)
from simplex_geostat.covariance.correlation import CorrelationFunction
from simplex_geostat.covariance.model import ProportionalModel
from simplex_geostat.means.base import MeanMethod


def assert_reproduced(report: AxiomReport, rel: float = 1e-12):
    again = replay(report)
    assert again.verdict == report.verdict
    assert again.residual == pytest.approx(report.residual, rel=rel, abs=1e-15)


def test_sweeps_are_seeded():
    method = MeanMethod("geom")
    first = [r.to_dict() for r in marginal_stability_sweep(method, trials=10, seed=4)]
    assert first == [r.to_dict() for r in marginal_stability_sweep(method, trials=10, seed=4)]
    assert first != [r.to_dict() for r in marginal_stability_sweep(method, trials=10, seed=5)]
    assert [r["details"]["trial"] for r in first] == list(range(10))
    assert {r["seed"] for r in first} == {4}


def test_weighted_sweeps_use_weight_count():
    method = MeanMethod("ilr", (0.5, 0.25, 0.25))
    for report in reflexivity_sweep(method, trials=5):
        assert report.passed
    for report in sum_to_one_sweep(method, trials=5):
        assert report.passed


def test_replay_marginal_stability():
    reports = marginal_stability_sweep(MeanMethod("qam", phi="log"), trials=5, seed=2)
    assert all(r.failed for r in reports)
    for report in reports:
        assert_reproduced(report)
        assert_reproduced(AxiomReport.from_dict(report.to_dict()), rel=1e-6)


def test_replay_continuity():
    ds, _ = graph_median_discontinuity()
    report = check_continuity(MeanMethod("graph-median"), ds, directions=graph_median_directions(), seed=1)
    assert_reproduced(report)


def test_continuity_sweep():
    reports = continuity_sweep(MeanMethod("arith"), trials=5, seed=0)
    assert all(r.passed for r in reports)
    assert all(r.reason == "no discontinuity detected" for r in reports)


def test_replay_symmetry():
    reports = symmetry_sweep(MeanMethod("arith", (0.9, 0.1)), trials=10, seed=3)
    failed = [r for r in reports if r.failed]
    assert failed
    for report in failed:
        assert_reproduced(report)


def test_replay_sum_to_one_and_linearity():
    report = sum_to_one_sweep(MeanMethod("qam", phi="reciprocal"), trials=1, seed=0)[0]
    assert report.failed
    assert_reproduced(report)
    assert_reproduced(theorem2_linearity_probe(MeanMethod("geom"), seed=6))


def test_replay_needs_witness():
    report = reflexivity_sweep(MeanMethod("arith"), trials=1)[0]
    with pytest.raises(ValueError, match="no witness"):
        replay(report)


def test_converse_summary():
    reports = theorem3_sweep(trials=200, seed=0, converse=True)
    assert all(r.axiom == "theorem3-converse" for r in reports)
    summary = converse_summary(reports, seed=0)
    assert summary.verdict == "witness-found"
    assert 0.0 < summary.details["fraction_diverging"] <= 1.0
    assert summary.residual == max(r.details["max_deviation"] for r in reports)
    assert reports[summary.details["worst_trial"]].residual == summary.residual
    assert_reproduced(summary)
    assert converse_summary([]).passed


def test_theorem3_sweep_with_fixed_model(proportional_model):
    model = ProportionalModel(proportional_model.sigma, CorrelationFunction("cosine-1d", 2.0, 0.2))
    reports = theorem3_sweep(trials=30, seed=1, model=model)
    assert all(r.passed for r in reports)
    assert {r.details["p"] for r in reports} == {3}
    np.testing.assert_array_equal([r.details["trial"] for r in reports], np.arange(30))
