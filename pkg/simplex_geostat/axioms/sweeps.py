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
"""Seeded sweeps of the axiom checks over random datasets and covariance configurations."""
from functools import partial
from typing import List, Optional, Sequence

import numpy as np

from simplex_geostat.axioms.checks import (
    DEFAULT_DELTAS,
    DIVERGENCE_TOL,
    check_continuity,
    check_cokriging_weights,
    check_marginal_stability,
    check_reflexivity,
    check_sum_to_one,
    check_symmetry,
    standard_groupings,
    theorem2_linearity_probe,
)
from simplex_geostat.axioms.report import AxiomReport
from simplex_geostat.axioms.runner import run_trials
from simplex_geostat.core.base import Composition, CompositionalDataset, Grouping, SiteSet
from simplex_geostat.covariance.model import CovModel
from simplex_geostat.datagen.generator import (
    DEFAULT_MIN_PART,
    INTERIOR_MIN_PART,
    dirichlet_rows,
    random_config,
    random_lmc_model,
    random_proportional_model,
)
from simplex_geostat.means.base import MeanMethod
from simplex_geostat.utility.common import make_rng

DEFAULT_ROWS = 5


def _min_part(method: MeanMethod) -> float:
    return INTERIOR_MIN_PART if method.needs_positive else DEFAULT_MIN_PART


def _rows(method: MeanMethod, n: Optional[int]) -> int:
    return len(method.weights) if method.weights is not None else (n or DEFAULT_ROWS)


def _tag(report: AxiomReport, seed: int, index: int) -> AxiomReport:
    report.seed = seed
    report.details["trial"] = index
    return report


def _dataset(rng: np.random.Generator, method: MeanMethod, n: int, p: int) -> CompositionalDataset:
    return CompositionalDataset.from_rows(dirichlet_rows(rng, n, p, 1.0, _min_part(method)))


def _reflexivity_trial(method: MeanMethod, p: int, n: Optional[int], seed: int, index: int) -> AxiomReport:
    rng = make_rng(seed, index)
    x = Composition(dirichlet_rows(rng, 1, p, 1.0, _min_part(method))[0])
    return _tag(check_reflexivity(method, x, n or 4), seed, index)


def _marginal_stability_trial(method: MeanMethod, p: int, n: Optional[int], seed: int, index: int) -> AxiomReport:
    rng = make_rng(seed, index)
    ds = _dataset(rng, method, _rows(method, n), p + 1)
    grouping_a, grouping_b = standard_groupings(p + 1)
    return _tag(check_marginal_stability(method, ds, grouping_a, grouping_b), seed, index)


def _continuity_trial(
    method: MeanMethod, p: int, n: Optional[int], deltas: Sequence[float], seed: int, index: int
) -> AxiomReport:
    rng = make_rng(seed, index)
    ds = _dataset(rng, method, _rows(method, n), p)
    return _tag(check_continuity(method, ds, deltas, seed=seed, trial=index), seed, index)


def _symmetry_trial(method: MeanMethod, p: int, n: Optional[int], permutations: int, seed: int, index: int):
    rng = make_rng(seed, index)
    ds = _dataset(rng, method, _rows(method, n), p)
    return _tag(check_symmetry(method, ds, permutations, seed=seed, trial=index), seed, index)


def _sum_to_one_trial(method: MeanMethod, p: int, n: Optional[int], seed: int, index: int) -> AxiomReport:
    rng = make_rng(seed, index)
    return _tag(check_sum_to_one(method, _dataset(rng, method, _rows(method, n), p)), seed, index)


def reflexivity_sweep(
    method: MeanMethod, p: int = 3, trials: int = 100, seed: int = 0, n: Optional[int] = None, parallel: bool = False
) -> List[AxiomReport]:
    return run_trials(partial(_reflexivity_trial, method, p, n), trials, seed, parallel)


def marginal_stability_sweep(
    method: MeanMethod, p: int = 3, trials: int = 100, seed: int = 0, n: Optional[int] = None, parallel: bool = False
) -> List[AxiomReport]:
    """Random datasets with p + 1 parts amalgamated by the two `standard_groupings`."""
    return run_trials(partial(_marginal_stability_trial, method, p, n), trials, seed, parallel)


def continuity_sweep(
    method: MeanMethod,
    p: int = 3,
    trials: int = 20,
    seed: int = 0,
    n: Optional[int] = None,
    deltas: Sequence[float] = DEFAULT_DELTAS,
    parallel: bool = False,
) -> List[AxiomReport]:
    return run_trials(partial(_continuity_trial, method, p, n, tuple(deltas)), trials, seed, parallel)


def symmetry_sweep(
    method: MeanMethod,
    p: int = 3,
    trials: int = 100,
    seed: int = 0,
    n: Optional[int] = None,
    permutations: int = 5,
    parallel: bool = False,
) -> List[AxiomReport]:
    return run_trials(partial(_symmetry_trial, method, p, n, permutations), trials, seed, parallel)


def sum_to_one_sweep(
    method: MeanMethod, p: int = 3, trials: int = 100, seed: int = 0, n: Optional[int] = None, parallel: bool = False
) -> List[AxiomReport]:
    return run_trials(partial(_sum_to_one_trial, method, p, n), trials, seed, parallel)


def _theorem3_trial(model: Optional[CovModel], converse: bool, seed: int, index: int) -> AxiomReport:
    rng = make_rng(seed, index)
    if model is None:
        # two sites are exchangeable: their cokriging weights agree under any model
        p, _, sites = random_config(rng, n_range=(3, 10) if converse else (2, 10))
        trial_model = random_lmc_model(rng, p) if converse else random_proportional_model(rng, p)
    else:
        one_dimensional = any(rho.family == "cosine-1d" for _, rho in model.terms)
        _, _, sites = random_config(rng, p_range=(model.p, model.p), d_range=(1, 1) if one_dimensional else (1, 3))
        trial_model = model
    return _tag(check_cokriging_weights(trial_model, sites, seed), seed, index)


def theorem3_sweep(
    trials: int = 500,
    seed: int = 0,
    model: Optional[CovModel] = None,
    converse: bool = False,
    parallel: bool = False,
) -> List[AxiomReport]:
    """Cokriging weights over random configurations.

    Without `model`, draws random proportional models (or two-range LMC models when `converse`, n >= 3),
    p in 2..5, n in 2..10, sites in [0, 10]^d with d in 1..3. With `model`, only the sites are random.
    """
    return run_trials(partial(_theorem3_trial, model, converse), trials, seed, parallel)


def converse_summary(reports: List[AxiomReport], seed: int = 0) -> AxiomReport:
    """Fraction of configurations whose weights diverge by more than 1e-6, with the largest divergence as witness."""
    if not reports:
        return AxiomReport("theorem3-converse", "summary", "pass", 0.0, seed=seed, reason="no trials")
    deviations = [r.details.get("max_deviation", 0.0) for r in reports]
    worst = int(np.argmax(deviations))
    fraction = float(np.mean([d > DIVERGENCE_TOL for d in deviations]))
    details = {"fraction_diverging": fraction, "trials": len(reports), "worst_trial": worst}
    if deviations[worst] > DIVERGENCE_TOL:
        return AxiomReport(
            "theorem3-converse",
            "summary",
            "witness-found",
            deviations[worst],
            reports[worst].witness,
            seed=seed,
            reason=f"{fraction:.1%} of configurations have unequal weights",
            details=details,
        )
    return AxiomReport("theorem3-converse", "summary", "pass", deviations[worst], seed=seed, details=details)


def replay(report: AxiomReport) -> AxiomReport:
    """Re-run the check that produced `report` from its stored witness."""
    witness = report.witness
    if witness is None:
        raise ValueError(f"{report.axiom} report for {report.descriptor} carries no witness")
    if report.axiom.startswith("theorem3"):
        return check_cokriging_weights(CovModel.from_dict(witness["model"]), SiteSet(witness["sites"]), report.seed)

    method = MeanMethod.from_dict(witness["method"])
    seed = report.seed or 0
    if report.axiom == "theorem2-linearity":
        return theorem2_linearity_probe(method, witness["p"], witness["trials"], seed)
    if report.axiom == "C1":
        return check_reflexivity(method, Composition(witness["x"]), witness["n"])
    ds = CompositionalDataset.from_rows(witness["rows"])
    if report.axiom == "C2":
        grouping_a, grouping_b = (Grouping(g, q=ds.p) for g in witness["groupings"])
        return check_marginal_stability(method, ds, grouping_a, grouping_b)
    if report.axiom == "C3":
        directions = np.array(witness["directions"])
        return check_continuity(method, ds, witness["deltas"], seed, directions, witness.get("trial", 0))
    if report.axiom == "C4":
        return check_symmetry(method, ds, witness["trials"], seed, witness.get("trial", 0))
    return check_sum_to_one(method, ds)
