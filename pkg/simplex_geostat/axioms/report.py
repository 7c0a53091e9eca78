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
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from simplex_geostat.utility.common import to_item

AXIOMS = (
    "C1",
    "C2",
    "C3",
    "C4",
    "sum-to-one",
    "theorem2-linearity",
    "theorem3-forward",
    "theorem3-converse",
)
VERDICTS = ("pass", "fail", "witness-found")


@dataclass
class AxiomReport:
    """Verdict of one axiom or theorem check.

    Args:
        axiom: one of `AXIOMS`.
        descriptor: the method or model that was checked.
        verdict: `pass`, `fail` or `witness-found`.
        residual: the numeric quantity compared against the tolerance.
        witness: serialized inputs that reproduce the verdict with `replay`.
        seed: seed of the trial that produced the witness.
        reason: human readable explanation.
        details: extra numbers recorded by the check.
    """

    axiom: str
    descriptor: str
    verdict: str
    residual: float = 0.0
    witness: Optional[Dict[str, Any]] = None
    seed: Optional[int] = None
    reason: Optional[str] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.axiom not in AXIOMS:
            raise KeyError(f"axiom {self.axiom} is not implemented! Available: {AXIOMS}")
        if self.verdict not in VERDICTS:
            raise KeyError(f"verdict {self.verdict} is not implemented! Available: {VERDICTS}")
        if self.verdict != "pass":
            assert self.witness is not None, f"{self.verdict} report for {self.axiom} needs a witness"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def failed(self) -> bool:
        return self.verdict == "fail"

    def to_dict(self) -> Dict[str, Any]:
        return to_item(
            {
                "axiom": self.axiom,
                "descriptor": self.descriptor,
                "verdict": self.verdict,
                "residual": self.residual,
                "witness": self.witness,
                "seed": self.seed,
                "reason": self.reason,
                "details": self.details,
            }
        )

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "AxiomReport":
        return AxiomReport(
            axiom=data["axiom"],
            descriptor=data["descriptor"],
            verdict=data["verdict"],
            residual=data.get("residual", 0.0),
            witness=data.get("witness"),
            seed=data.get("seed"),
            reason=data.get("reason"),
            details=data.get("details") or {},
        )
