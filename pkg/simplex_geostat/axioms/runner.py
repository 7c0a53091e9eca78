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
"""Executes independent seeded trials, sequentially or on a ray cluster. Results are ordered by trial index."""
from typing import Callable, List, Optional

from loguru import logger
from rich.progress import BarColumn, Progress, TimeRemainingColumn

from simplex_geostat.axioms.report import AxiomReport
from simplex_geostat.utility.common import is_ci
from simplex_geostat.utility.imports import requires

CI_MAX_TRIALS = 50

Trial = Callable[[int, int], AxiomReport]


def effective_trials(trials: int) -> int:
    if trials < 0:
        raise ValueError(f"trials must be nonnegative, got {trials}")
    if is_ci() and trials > CI_MAX_TRIALS:
        logger.warning(f"SIMPLEX_GEOSTAT_CI is set: running {CI_MAX_TRIALS} of {trials} trials")
        return CI_MAX_TRIALS
    return trials


def _call(trial: Trial, seed: int, index: int) -> AxiomReport:
    return trial(seed, index)


@requires("ray")
def _run_ray(trial: Trial, trials: int, seed: int) -> List[AxiomReport]:
    import ray

    if not ray.is_initialized():
        ray.init(ignore_reinit_error=True, include_dashboard=False, log_to_driver=False)
    remote_call = ray.remote(_call)
    futures = [remote_call.remote(trial, seed, index) for index in range(trials)]
    return list(ray.get(futures))


def run_trials(
    trial: Trial, trials: int, seed: int, parallel: bool = False, progress: bool = False, description: Optional[str] = None
) -> List[AxiomReport]:
    """Run `trial(seed, index)` for index in range(trials).

    Args:
        trial: picklable callable returning one report per index.
        trials: number of trials.
        seed: master seed; each trial derives its own generator from (seed, index).
        parallel: run on ray (optional dependency).
        progress: show a rich progress bar (sequential runs only).
    """
    trials = effective_trials(trials)
    if parallel:
        logger.debug(f"running {trials} trials on ray")
        return _run_ray(trial, trials, seed)
    if not progress:
        return [trial(seed, index) for index in range(trials)]

    reports = []
    with Progress(
        "[progress.description]{task.description}",
        BarColumn(),
        "[progress.percentage]{task.percentage:>3.0f}%",
        TimeRemainingColumn(),
        transient=True,
    ) as bar:
        task = bar.add_task(f"[green]{description or 'trials'}", total=trials)
        for index in range(trials):
            reports.append(trial(seed, index))
            bar.update(task, advance=1)
    return reports
