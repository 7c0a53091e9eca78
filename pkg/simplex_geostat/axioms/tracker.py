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
from collections import OrderedDict
from typing import Any, Dict, Iterable, List, Tuple, Union

from loguru import logger
from rich import box
from rich.table import Table

from simplex_geostat.axioms.report import AxiomReport
from simplex_geostat.utility.common import listify, to_item


class ReportTracker:
    """
    Collects axiom reports and summarizes them per (axiom, descriptor).
    """

    def __init__(self):
        self.reports: List[AxiomReport] = []

    def __len__(self):
        return len(self.reports)

    def __getitem__(self, key: Tuple[str, str]) -> List[AxiomReport]:
        """Reports of one (axiom, descriptor) pair."""
        found = [r for r in self.reports if (r.axiom, r.descriptor) == key]
        if not found:
            raise KeyError(f"key {key} is not tracked! Available: {list(self.summary())}")
        return found

    def track(self, reports: Union[AxiomReport, Iterable[AxiomReport]]) -> "ReportTracker":
        """Track a single report or an iterable of reports."""
        for report in listify(reports):
            if not report.passed:
                logger.debug(f"{report.axiom} {report.verdict} for {report.descriptor}: {report.reason}")
            self.reports.append(report)
        return self

    @property
    def any_failed(self) -> bool:
        return any(r.failed for r in self.reports)

    def summary(self) -> Dict[Tuple[str, str], Dict[str, Any]]:
        rows: Dict[Tuple[str, str], Dict[str, Any]] = OrderedDict()
        for report in self.reports:
            row = rows.setdefault(
                (report.axiom, report.descriptor),
                {"trials": 0, "pass": 0, "fail": 0, "witness-found": 0, "max_residual": 0.0},
            )
            row["trials"] += 1
            row[report.verdict] += 1
            row["max_residual"] = max(row["max_residual"], float(report.residual))
        return rows

    def first_witness(self) -> Dict[Tuple[str, str], AxiomReport]:
        """First non-passing report of every pair that has one."""
        witnesses: Dict[Tuple[str, str], AxiomReport] = OrderedDict()
        for report in self.reports:
            if not report.passed:
                witnesses.setdefault((report.axiom, report.descriptor), report)
        return witnesses

    def create_table(self) -> Table:
        headings = ["axiom", "descriptor", "trials", "pass", "fail", "witness-found", "max residual"]
        table = Table(*headings, expand=True, box=box.SIMPLE)
        for (axiom, descriptor), row in self.summary().items():
            values = [axiom, descriptor, row["trials"], row["pass"], row["fail"], row["witness-found"], row["max_residual"]]
            table.add_row(*map(lambda x: f"{x: .3e}" if isinstance(x, float) else str(x), values))
        return table

    def to_dict(self) -> Dict[str, Any]:
        return to_item(
            {
                "summary": [
                    {"axiom": axiom, "descriptor": descriptor, **row} for (axiom, descriptor), row in self.summary().items()
                ],
                "witnesses": [r.to_dict() for r in self.first_witness().values()],
            }
        )

    def reset(self):
        logger.debug("Reset ReportTracker")
        self.reports = []
