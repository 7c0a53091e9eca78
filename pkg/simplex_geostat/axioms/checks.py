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
"""Single checks of the mean axioms and of the cokriging weight theorem.

Method errors never escape a check; they become a `fail` verdict carrying the reason.
"""
import itertools
import math
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from loguru import logger

from simplex_geostat.core.base import Composition, CompositionalDataset, Grouping, SiteSet
from simplex_geostat.core.exceptions import DomainError, SimplexGeostatError
from simplex_geostat.core.simplex import amalgamate
from simplex_geostat.covariance.correlation import correlation_matrix
from simplex_geostat.covariance.model import CovModel
from simplex_geostat.datagen.generator import dirichlet_rows, random_dataset
from simplex_geostat.kriging.base import weights_equal_across_variables
from simplex_geostat.kriging.gls import cokrige_means, cokriging_residuals, krige_mean_single
from simplex_geostat.means.arithmetic import quasi_arithmetic_componentwise
from simplex_geostat.means.base import MeanMethod
from simplex_geostat.axioms.report import AxiomReport
from simplex_geostat.utility.common import make_rng

EXACT_TOL = 1e-10  # exact-math claims
SOLVER_TOL = 1e-8  # solver-mediated claims
SYMMETRY_TOL = 1e-12
EQUAL_WEIGHTS_TOL = 1e-9
GLS_MATCH_TOL = 1e-10
DIVERGENCE_TOL = 1e-6
CONTINUITY_FACTOR = 10.0
DEFAULT_DELTAS = (1e-3, 1e-4, 1e-5, 1e-6, 1e-7)
CONTINUITY_STREAM = 3
SYMMETRY_STREAM = 4


def _half_taxi(a: np.ndarray, b: np.ndarray) -> float:
    return 0.5 * float(np.abs(np.asarray(a) - np.asarray(b)).sum())


def _method_error(axiom: str, method: MeanMethod, error: Exception, witness: Dict[str, Any]) -> AxiomReport:
    logger.debug(f"{axiom} check of {method} raised {error!r}")
    return AxiomReport(axiom, method.descriptor, "fail", float("inf"), witness, reason=f"method error: {error}")


def check_reflexivity(method: MeanMethod, x: Composition, n: int = 4) -> AxiomReport:
    """C1: the mean of n copies of x is x."""
    if method.weights is not None:
        n = len(method.weights)
    witness = {"method": method.to_dict(), "x": x.parts.tolist(), "n": n}
    ds = CompositionalDataset.from_rows(np.tile(x.parts, (n, 1)))
    try:
        point = method.estimate(ds).parts
    except SimplexGeostatError as e:
        return _method_error("C1", method, e, witness)
    residual = _half_taxi(point, x.parts)
    verdict = "pass" if residual <= EXACT_TOL else "fail"
    return AxiomReport("C1", method.descriptor, verdict, residual, witness if verdict == "fail" else None)


def check_marginal_stability(
    method: MeanMethod, ds: CompositionalDataset, grouping_a: Grouping, grouping_b: Grouping
) -> AxiomReport:
    """C2: the first part of the mean does not depend on how the remaining parts are grouped."""
    if grouping_a.groups[0] != grouping_b.groups[0]:
        raise DomainError(f"groupings must share their first block: {grouping_a.groups[0]} != {grouping_b.groups[0]}")
    witness = {
        "method": method.to_dict(),
        "rows": ds.parts.tolist(),
        "groupings": [grouping_a.to_list(), grouping_b.to_list()],
    }
    try:
        first_a = method.estimate(amalgamate(ds, grouping_a)).parts[0]
        first_b = method.estimate(amalgamate(ds, grouping_b)).parts[0]
    except SimplexGeostatError as e:
        return _method_error("C2", method, e, witness)
    residual = abs(float(first_a) - float(first_b))
    verdict = "pass" if residual <= EXACT_TOL else "fail"
    return AxiomReport(
        "C2",
        method.descriptor,
        verdict,
        residual,
        witness if verdict == "fail" else None,
        reason=None if verdict == "pass" else f"first part is {first_a!r} under one grouping and {first_b!r} under the other",
        details={"first_part": [float(first_a), float(first_b)]},
    )


def perturbation_directions(ds: CompositionalDataset, max_delta: float, seed: int = 0, trial: int = 0) -> np.ndarray:
    """Zero-sum directions of half-taxi norm 1, one per row, keeping every part positive up to `max_delta`.

    A random direction that would push a part to zero is replaced by the direction towards the centroid.
    """
    rng = make_rng(seed, trial, CONTINUITY_STREAM)
    centroid = np.full(ds.p, 1.0 / ds.p)
    directions = np.zeros_like(ds.parts)
    for i, row in enumerate(ds.parts):
        v = rng.standard_normal(ds.p)
        v -= v.mean()
        v /= 0.5 * np.abs(v).sum()
        if np.any(row + max_delta * v <= 0):
            gap = _half_taxi(centroid, row)
            v = (centroid - row) / gap if gap > max_delta else np.zeros(ds.p)
        directions[i] = v
    return directions


def check_continuity(
    method: MeanMethod,
    ds: CompositionalDataset,
    deltas: Sequence[float] = DEFAULT_DELTAS,
    seed: int = 0,
    directions: Optional[np.ndarray] = None,
    trial: int = 0,
) -> AxiomReport:
    """C3, empirically: the modulus max_i d(M(ds with row i moved by delta), M(ds)) / delta must stay bounded.

    Fails when the modulus at any delta exceeds ten times the modulus at the largest delta (or 10 when that
    is below 1). A pass only means no discontinuity was detected.
    """
    deltas = sorted((float(d) for d in deltas), reverse=True)
    if directions is None:
        directions = perturbation_directions(ds, deltas[0], seed, trial)
    directions = np.asarray(directions, dtype=float)
    witness = {
        "method": method.to_dict(),
        "rows": ds.parts.tolist(),
        "directions": directions.tolist(),
        "deltas": deltas,
        "trial": trial,
    }
    try:
        base = method.estimate(ds).parts
        moduli = []
        for delta in deltas:
            modulus = 0.0
            for i in np.flatnonzero(np.abs(directions).sum(axis=1) > 0):
                moved = ds.with_row(int(i), ds.parts[i] + delta * directions[i])
                modulus = max(modulus, _half_taxi(method.estimate(moved).parts, base) / delta)
            moduli.append(modulus)
    except SimplexGeostatError as e:
        return _method_error("C3", method, e, witness)

    bound = CONTINUITY_FACTOR * max(moduli[0], 1.0)
    worst = max(moduli)
    if worst <= bound:
        return AxiomReport(
            "C3", method.descriptor, "pass", worst, seed=seed, reason="no discontinuity detected", details={"moduli": moduli}
        )
    return AxiomReport(
        "C3",
        method.descriptor,
        "fail",
        worst,
        witness,
        seed=seed,
        reason=f"modulus grows from {moduli[0]:.3g} to {worst:.3g} as delta shrinks",
        details={"moduli": moduli},
    )


def row_orders(rng: np.random.Generator, n: int, trials: int) -> List[np.ndarray]:
    """Non-identity row orders: every one of them when there are at most `trials`, otherwise `trials` draws."""
    if math.factorial(n) - 1 <= trials:
        return [np.array(order) for order in itertools.permutations(range(n))][1:]
    identity = np.arange(n)
    orders = []
    while len(orders) < trials:
        order = rng.permutation(n)
        if not np.array_equal(order, identity):
            orders.append(order)
    return orders


def check_symmetry(
    method: MeanMethod, ds: CompositionalDataset, trials: int = 5, seed: int = 0, trial: int = 0
) -> AxiomReport:
    """C4: the mean is invariant under permutations of the rows. The identity order is never one of the trials."""
    rng = make_rng(seed, trial, SYMMETRY_STREAM)
    witness = {"method": method.to_dict(), "rows": ds.parts.tolist(), "trials": trials, "trial": trial}
    try:
        base = method.estimate(ds).parts
        residual, worst = 0.0, None
        for order in row_orders(rng, ds.n, trials):
            gap = float(np.abs(method.estimate(ds.permuted(order)).parts - base).max())
            if gap > residual:
                residual, worst = gap, order.tolist()
    except SimplexGeostatError as e:
        return _method_error("C4", method, e, witness)
    if residual <= SYMMETRY_TOL:
        return AxiomReport("C4", method.descriptor, "pass", residual, seed=seed)
    witness["permutation"] = worst
    return AxiomReport("C4", method.descriptor, "fail", residual, witness, seed=seed, reason=f"permutation {worst} moves the mean")


def check_sum_to_one(method: MeanMethod, ds: CompositionalDataset) -> AxiomReport:
    """The unnormalized output sums to 1. For `qam` this is the sum of the raw componentwise means."""
    witness = {"method": method.to_dict(), "rows": ds.parts.tolist()}
    try:
        if method.kind == "qam":
            total = quasi_arithmetic_componentwise(ds, method.phi, method.weights).total
        else:
            total = float(method.estimate(ds).parts.sum())
    except SimplexGeostatError as e:
        return _method_error("sum-to-one", method, e, witness)
    residual = abs(total - 1.0)
    if residual <= EXACT_TOL:
        return AxiomReport("sum-to-one", method.descriptor, "pass", residual, details={"sum": total})
    return AxiomReport(
        "sum-to-one", method.descriptor, "fail", residual, witness, reason=f"parts sum to {total!r}", details={"sum": total}
    )


def standard_groupings(q: int):
    """Two groupings of q >= 3 parts sharing the first block: {1},{2,3},{4},... and {1},{2},...,{q-1,q}."""
    first = [[0], [1, 2]] + [[k] for k in range(3, q)]
    second = [[k] for k in range(q - 2)] + [[q - 2, q - 1]]
    return Grouping(first, q=q), Grouping(second, q=q)


def theorem2_linearity_probe(method: MeanMethod, p: int = 3, trials: int = 20, seed: int = 0) -> AxiomReport:
    """Fit each output part as an affine function of that part's data values over random datasets.

    Reflexivity and marginal stability are checked first; when either fails the probe is not run and the
    report states the failed precondition. Passes when the fit is exact (residual <= 1e-8), the fitted weights
    do not depend on the part and sum to 1.
    """
    if p < 3:
        raise DomainError(f"the linearity probe needs p >= 3, got {p}")
    rng = make_rng(seed, 0)
    n = len(method.weights) if method.weights is not None else 3
    x = Composition(dirichlet_rows(rng, 1, p, 1.0, 0.01)[0])
    grouping_a, grouping_b = standard_groupings(p + 1)
    for report in (
        check_reflexivity(method, x, n),
        check_marginal_stability(method, random_dataset(rng, n, p + 1), grouping_a, grouping_b),
    ):
        if not report.passed:
            return AxiomReport(
                "theorem2-linearity",
                method.descriptor,
                "fail",
                report.residual,
                {"method": method.to_dict(), "p": p, "trials": trials, "precondition": report.to_dict()},
                seed=seed,
                reason=f"precondition failed: {report.axiom} does not hold",
            )

    samples = max(trials, 2 * n + 5)
    datasets = [random_dataset(rng, n, p) for _ in range(samples)]
    try:
        outputs = np.stack([method.estimate(ds).parts for ds in datasets])
    except SimplexGeostatError as e:
        return _method_error("theorem2-linearity", method, e, {"method": method.to_dict(), "p": p, "trials": trials})
    fitted, residual, intercepts = [], 0.0, []
    for k in range(p):
        design = np.column_stack([np.stack([ds.column(k) for ds in datasets]), np.ones(samples)])
        beta = np.linalg.lstsq(design, outputs[:, k], rcond=None)[0]
        residual = max(residual, float(np.abs(design @ beta - outputs[:, k]).max()))
        fitted.append(beta[:n])
        intercepts.append(float(beta[n]))
    fitted = np.array(fitted)
    spread = float(np.abs(fitted - fitted[0]).max())
    weight_sum = float(fitted[0].sum())
    details = {"weights": fitted[0].tolist(), "spread": spread, "weight_sum": weight_sum, "intercepts": intercepts}
    ok = residual <= SOLVER_TOL and spread <= SOLVER_TOL and abs(weight_sum - 1.0) <= SOLVER_TOL
    if ok:
        return AxiomReport("theorem2-linearity", method.descriptor, "pass", residual, seed=seed, details=details)
    return AxiomReport(
        "theorem2-linearity",
        method.descriptor,
        "fail",
        max(residual, spread),
        {"method": method.to_dict(), "p": p, "trials": trials},
        seed=seed,
        reason="outputs are not a common weighted average of the data",
        details=details,
    )


def check_cokriging_weights(model: CovModel, sites: SiteSet, seed: Optional[int] = None) -> AxiomReport:
    """Cokriging weights against the proportional-model prediction.

    For a proportional model the report passes when the weights are equal across variables (1e-9), equal to the
    single-variable weights on the correlation matrix (1e-10) and the kriging-system identities hold (1e-8).
    For any other model a weight deviation above 1e-6 is reported as `witness-found`.
    """
    solution = cokrige_means(model, sites)
    equal, deviation = weights_equal_across_variables(solution, EQUAL_WEIGHTS_TOL)
    residuals = cokriging_residuals(model, sites, solution)
    witness = {"model": model.to_dict(), "sites": sites.coords.tolist()}
    details = {"max_deviation": deviation, **residuals, "n": sites.n, "p": model.p}
    identities_hold = (
        residuals["system"] <= SOLVER_TOL and residuals["unbiasedness"] <= EQUAL_WEIGHTS_TOL and residuals["mu_identity"] <= SOLVER_TOL
    )
    if model.is_proportional:
        single = krige_mean_single(correlation_matrix(model.terms[0][1], sites)).weights
        gap = max(float(np.abs(solution.variable_weights(k) - single).max()) for k in range(model.p))
        details["gls_gap"] = gap
        if equal and gap <= GLS_MATCH_TOL and identities_hold:
            return AxiomReport("theorem3-forward", model.variant, "pass", deviation, seed=seed, details=details)
        return AxiomReport(
            "theorem3-forward",
            model.variant,
            "fail",
            max(deviation, gap),
            witness,
            seed=seed,
            reason="proportional model with unequal cokriging weights",
            details=details,
        )
    if deviation > DIVERGENCE_TOL:
        return AxiomReport(
            "theorem3-converse",
            model.variant,
            "witness-found",
            deviation,
            witness,
            seed=seed,
            reason=f"weights differ across variables by {deviation:.3g}",
            details=details,
        )
    return AxiomReport(
        "theorem3-converse", model.variant, "pass", deviation, seed=seed, reason="no weight divergence above 1e-6", details=details
    )
