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
import pytest

from simplex_geostat.axioms.report import AxiomReport


def fail_report(residual=0.5):
    return AxiomReport("C4", "arith(0.9,0.1)", "fail", residual, {"rows": [[0.5, 0.5]]}, reason="moved")


@pytest.fixture
def reports():
    return [
        AxiomReport("C1", "geom", "pass", 1e-16),
        fail_report(0.25),
        AxiomReport("C1", "geom", "pass", 2e-16),
        fail_report(0.5),
        AxiomReport("theorem3-converse", "lmc", "witness-found", 0.1, {"sites": [[0.0]]}),
    ]


def test_summary(tracker, reports):
    tracker.track(reports)
    assert len(tracker) == 5
    summary = tracker.summary()
    assert list(summary) == [("C1", "geom"), ("C4", "arith(0.9,0.1)"), ("theorem3-converse", "lmc")]
    assert summary[("C1", "geom")] == {"trials": 2, "pass": 2, "fail": 0, "witness-found": 0, "max_residual": 2e-16}
    assert summary[("C4", "arith(0.9,0.1)")]["fail"] == 2
    assert summary[("C4", "arith(0.9,0.1)")]["max_residual"] == 0.5
    assert tracker.any_failed


def test_lookup(tracker, reports):
    tracker.track(reports)
    assert len(tracker["C1", "geom"]) == 2
    with pytest.raises(KeyError):
        tracker["C2", "geom"]


def test_first_witness(tracker, reports):
    witnesses = tracker.track(reports).first_witness()
    assert witnesses[("C4", "arith(0.9,0.1)")].residual == 0.25
    assert ("C1", "geom") not in witnesses


def test_witness_found_is_not_a_failure(tracker):
    tracker.track(AxiomReport("theorem3-converse", "lmc", "witness-found", 0.1, {"sites": [[0.0]]}))
    assert len(tracker) == 1
    assert not tracker.any_failed


def test_table_and_dict(tracker, reports):
    tracker.track(reports)
    table = tracker.create_table()
    assert table.row_count == 3
    data = tracker.to_dict()
    assert [row["axiom"] for row in data["summary"]] == ["C1", "C4", "theorem3-converse"]
    assert len(data["witnesses"]) == 2
    tracker.reset()
    assert len(tracker) == 0


def test_report_validation():
    with pytest.raises(KeyError):
        AxiomReport("C5", "arith", "pass")
    with pytest.raises(KeyError):
        AxiomReport("C1", "arith", "maybe")
    with pytest.raises(AssertionError):
        AxiomReport("C1", "arith", "fail", 1.0)


def test_report_dict():
    report = fail_report(1 / 3)
    data = report.to_dict()
    assert data["residual"] == 0.333333333333
    again = AxiomReport.from_dict(data)
    assert again.witness == report.witness
    assert again.reason == "moved"
