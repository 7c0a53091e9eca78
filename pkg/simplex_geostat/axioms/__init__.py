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
from .checks import (
    check_cokriging_weights,
    check_continuity,
    check_marginal_stability,
    check_reflexivity,
    check_sum_to_one,
    check_symmetry,
    perturbation_directions,
    standard_groupings,
    theorem2_linearity_probe,
)
from .report import AXIOMS, VERDICTS, AxiomReport
from .runner import run_trials
from .sweeps import (
    continuity_sweep,
    converse_summary,
    marginal_stability_sweep,
    reflexivity_sweep,
    replay,
    sum_to_one_sweep,
    symmetry_sweep,
    theorem3_sweep,
)
from .tracker import ReportTracker
