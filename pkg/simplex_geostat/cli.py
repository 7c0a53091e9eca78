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
"""Command line entry point.

```
simplex-geostat mean data.csv --method ilr
simplex-geostat transform ilr data.csv
simplex-geostat krige --model model.json --sites sites.csv --mode cokrige
simplex-geostat check --axiom c2 --method geom --trials 100 --seed 7
simplex-geostat simulate --spec spec.json --out data.csv
simplex-geostat covmodel model.json --sites sites.csv
```

Exit codes: 0 success, 1 axiom failure or invalid model, 2 usage or input error.
"""
import argparse
import json
import sys
from dataclasses import dataclass, replace
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
from loguru import logger
from rich import box
from rich.console import Console
from rich.table import Table
from smart_open import open as smart_open

from simplex_geostat.axioms import (
    ReportTracker,
    continuity_sweep,
    converse_summary,
    marginal_stability_sweep,
    reflexivity_sweep,
    sum_to_one_sweep,
    symmetry_sweep,
    theorem3_sweep,
)
from simplex_geostat.core.base import SUM_TOL
from simplex_geostat.core.exceptions import (
    DataFormatError,
    DomainError,
    InvalidModelError,
    SimplexGeostatError,
    SingularCovarianceError,
    SolverError,
)
from simplex_geostat.covariance import CovModel, build_block_matrix, remediate, validate_model
from simplex_geostat.data import dataset_to_frame, read_coordinates, read_dataset, read_sites, write_dataset
from simplex_geostat.datagen import GeneratorSpec, generate
from simplex_geostat.kriging import (
    cokrige_means,
    krige_mean_single,
    nonneg_cokrige_means,
    walvoort_compositional_krige,
    weights_equal_across_variables,
)
from simplex_geostat.means import MeanMethod, available_means, kriged_mean
from simplex_geostat.transforms import ilr_inv_rows, ilr_rows
from simplex_geostat.utility.common import default_seed, to_item

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

KRIGE_MODES = ("single", "cokrige", "nonneg", "walvoort")
DEFAULT_TRIALS = {"c1": 100, "c2": 100, "c3": 20, "c4": 100, "sum1": 100, "thm3": 500}
SWEEPS = {
    "c1": reflexivity_sweep,
    "c2": marginal_stability_sweep,
    "c3": continuity_sweep,
    "c4": symmetry_sweep,
    "sum1": sum_to_one_sweep,
}


@dataclass
class CommandResult:
    payload: Dict[str, Any]
    exit_code: int = EXIT_OK
    table: Optional[Table] = None
    to_stdout: bool = False  # --out already consumed by the command
    to_stderr: bool = False  # stdout carries the command's own output


def _format(x: Any) -> str:
    if isinstance(x, float):
        return f"{x: .3f}"
    if isinstance(x, (list, dict)):
        return json.dumps(x)
    return str(x)


def _rows_table(headings: List[str], rows: Sequence[Sequence[Any]]) -> Table:
    table = Table(*headings, expand=True, box=box.SIMPLE)
    for row in rows:
        table.add_row(*map(_format, row))
    return table


def _record_table(record: Dict[str, Any]) -> Table:
    return _rows_table(["field", "value"], [(k, v) for k, v in record.items()])


def _parse_weights(text: Optional[str]) -> Optional[tuple]:
    if text is None:
        return None
    try:
        return tuple(float(w) for w in text.split(","))
    except ValueError as e:
        raise DataFormatError(f"weights must be comma separated numbers, got {text!r}") from e


def _read_json(path: str) -> Any:
    try:
        with smart_open(path, "r") as fr:
            text = fr.read()
    except (OSError, ValueError) as e:
        raise DataFormatError(f"cannot read {path}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DataFormatError(f"malformed JSON in {path}: {e.msg}", line=e.lineno, column=str(e.colno)) from e


def _read_model(path: str, args: argparse.Namespace) -> CovModel:
    """Load a model JSON and apply the --nugget, --range-factor and --rougher refits."""
    config = _read_json(path)
    try:
        model = CovModel.from_dict(config)
    except (KeyError, TypeError) as e:
        raise DataFormatError(f"covariance model {path} is missing field {e}") from e
    return remediate(model, nugget=args.nugget, range_factor=args.range_factor, rougher=args.rougher)


def _method(args: argparse.Namespace) -> MeanMethod:
    if args.method is None:
        raise DomainError(f"--method is required, choose from {available_means()}")
    return MeanMethod(args.method, _parse_weights(args.weights), args.phi)


def run_mean(args: argparse.Namespace) -> CommandResult:
    ds = read_dataset(args.data, strict=args.strict)
    estimate = _method(args).estimate(ds)
    payload = estimate.to_dict()
    payload["in_simplex"] = estimate.point.in_simplex(args.tol if args.tol is not None else SUM_TOL)
    headings = ["method"] + [f"p{k}" for k in range(1, ds.p + 1)] + ["in simplex"]
    table = _rows_table(headings, [[payload["method"], *estimate.parts.tolist(), payload["in_simplex"]]])
    return CommandResult(payload, table=table)


def run_transform(args: argparse.Namespace) -> CommandResult:
    if args.direction == "ilr":
        ds = read_dataset(args.data, strict=args.strict)
        rows = ilr_rows(ds.parts)
        columns = [f"u{i}" for i in range(1, rows.shape[1] + 1)]
    else:
        rows = ilr_inv_rows(read_coordinates(args.data))
        columns = [f"p{k}" for k in range(1, rows.shape[1] + 1)]
    payload = {"direction": args.direction, "columns": columns, "rows": rows}
    return CommandResult(payload, table=_rows_table(columns, rows.tolist()))


def run_krige(args: argparse.Namespace) -> CommandResult:
    model = _read_model(args.model, args)
    ds = read_dataset(args.data, strict=args.strict) if args.data else None
    if args.sites:
        sites = read_sites(args.sites)
    elif ds is not None:
        sites = ds.sites
    else:
        raise DomainError("krige needs --sites or --data")
    if ds is not None and ds.p != model.p:
        raise DomainError(f"model has {model.p} variables but the dataset has {ds.p} parts")

    if args.mode == "single":
        if not 1 <= args.variable <= model.p:
            raise DomainError(f"--variable must lie in 1..{model.p}, got {args.variable}")
        block = build_block_matrix(model, sites).block(args.variable - 1, args.variable - 1)
        solution = krige_mean_single(block)
    elif args.mode == "cokrige":
        solution = cokrige_means(model, sites)
    elif args.mode == "nonneg":
        solution = nonneg_cokrige_means(model, sites)
    else:
        if ds is None:
            raise DomainError("walvoort kriging needs --data")
        solution = walvoort_compositional_krige(model, sites, ds)

    payload = solution.to_dict()
    equal, deviation = weights_equal_across_variables(solution, args.tol if args.tol is not None else 1e-9)
    payload["weights_equal"] = equal
    payload["max_deviation"] = deviation
    if ds is not None:
        payload["mean"] = kriged_mean(ds, solution).to_dict()
    weights = solution.weights if solution.shared else solution.weight_matrix
    table = _rows_table(
        ["i"] + (["lambda"] if solution.shared else [f"lambda^{k}" for k in range(1, solution.p + 1)]),
        [[i, *np.atleast_1d(row).tolist()] for i, row in enumerate(weights)],
    )
    return CommandResult(payload, table=table)


def run_check(args: argparse.Namespace) -> CommandResult:
    if args.axiom == "thm3":
        model = _read_model(args.model, args) if args.model else None
        reports = theorem3_sweep(args.trials, args.seed, model, converse=args.converse, parallel=args.parallel)
        if args.converse or (model is not None and not model.is_proportional):
            reports.append(converse_summary(reports, args.seed))
    else:
        reports = SWEEPS[args.axiom](
            _method(args), p=args.p, trials=args.trials, seed=args.seed, n=args.n, parallel=args.parallel
        )
    tracker = ReportTracker().track(reports)
    payload = {"summary": tracker.to_dict()["summary"], "reports": [r.to_dict() for r in reports]}
    return CommandResult(payload, EXIT_FAIL if tracker.any_failed else EXIT_OK, tracker.create_table())


def run_simulate(args: argparse.Namespace) -> CommandResult:
    spec = GeneratorSpec.from_dict(_read_json(args.spec))
    if args.seed_given:
        spec = replace(spec, seed=args.seed)
    ds = generate(spec)
    payload = {"spec": spec.to_dict(), "n": ds.n, "p": ds.p, "d": ds.sites.d, "path": args.out}
    table = _record_table({k: v for k, v in payload.items() if k != "spec"})
    if args.out:
        write_dataset(ds, args.out)
        return CommandResult(payload, table=table, to_stdout=True)
    dataset_to_frame(ds).to_csv(sys.stdout, index=False, float_format="%.17g")
    return CommandResult(payload, table=table, to_stderr=True)


def run_covmodel(args: argparse.Namespace) -> CommandResult:
    model = _read_model(args.model, args)
    sites = read_sites(args.sites) if args.sites else None
    validity = validate_model(model, sites)
    payload = {"model": model.to_dict(), "validity": validity.to_dict()}
    table = _rows_table(
        ["coefficient", "min pivot", "failure index", "min eigenvalue"],
        [[c["name"], c["min_pivot"], c["failure_index"], c["min_eigenvalue"]] for c in validity.sigma_checks],
    )
    return CommandResult(payload, EXIT_OK if validity.valid else EXIT_FAIL, table)


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="master seed (default: $SIMPLEX_GEOSTAT_SEED or 0)")
    common.add_argument("--trials", type=int, default=None, help="number of sweep trials")
    common.add_argument("--tol", type=float, default=None, help="tolerance for simplex membership / equal weights")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--strict", action="store_true", help="reject rows whose parts do not sum to 1")
    return common


def _model_flags() -> argparse.ArgumentParser:
    refit = argparse.ArgumentParser(add_help=False)
    refit.add_argument("--nugget", type=float, default=None, help="add a nugget fraction to every correlation")
    refit.add_argument("--range-factor", type=float, default=None, help="multiply every correlation range")
    refit.add_argument("--rougher", action="store_true", help="linear instead of quadratic behaviour at the origin")
    return refit


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    refit = _model_flags()
    parser = argparse.ArgumentParser(prog="simplex-geostat", description="Means and kriging of compositional data.")
    commands = parser.add_subparsers(dest="command", required=True)

    mean = commands.add_parser("mean", parents=[common], help="mean of a dataset")
    mean.add_argument("data")
    mean.add_argument("--method", choices=available_means(), required=True)
    mean.add_argument("--weights", help="comma separated weights w1,...,wn")
    mean.add_argument("--phi", help="generating function for qam, e.g. log, power:0.5, sine:0.1")
    mean.set_defaults(handler=run_mean)

    transform = commands.add_parser("transform", parents=[common], help="ilr coordinates and back")
    transform.add_argument("direction", choices=("ilr", "ilr-inv"))
    transform.add_argument("data", help="dataset CSV for ilr, u1..um CSV for ilr-inv")
    transform.set_defaults(handler=run_transform)

    krige = commands.add_parser("krige", parents=[common, refit], help="kriging of the mean")
    krige.add_argument("--model", required=True)
    krige.add_argument("--sites")
    krige.add_argument("--data")
    krige.add_argument("--mode", choices=KRIGE_MODES, default="cokrige")
    krige.add_argument("--variable", type=int, default=1, help="variable kriged by --mode single")
    krige.set_defaults(handler=run_krige)

    check = commands.add_parser("check", parents=[common, refit], help="axiom and theorem checks")
    check.add_argument("--axiom", choices=tuple(DEFAULT_TRIALS), required=True)
    check.add_argument("--method", choices=available_means())
    check.add_argument("--weights")
    check.add_argument("--phi")
    check.add_argument("--model")
    check.add_argument("--p", type=int, default=3, help="part count of the random datasets")
    check.add_argument("--n", type=int, default=None, help="rows of the random datasets")
    check.add_argument("--converse", action="store_true", help="thm3 over random LMC models")
    check.add_argument("--parallel", action="store_true", help="run trials on ray")
    check.set_defaults(handler=run_check)

    simulate = commands.add_parser("simulate", parents=[common], help="synthetic dataset from a generator spec")
    simulate.add_argument("--spec", required=True)
    simulate.set_defaults(handler=run_simulate)

    covmodel = commands.add_parser("covmodel", parents=[common, refit], help="validate a covariance model")
    covmodel.add_argument("model")
    covmodel.add_argument("--sites")
    covmodel.set_defaults(handler=run_covmodel)
    return parser


def resolve_config(args: argparse.Namespace) -> Dict[str, Any]:
    """Fill defaulted values in place and return the echoed config."""
    args.seed_given = args.seed is not None
    if args.seed is None:
        args.seed = default_seed()
    if args.trials is None:
        args.trials = DEFAULT_TRIALS.get(getattr(args, "axiom", None), 100)
    return {k: v for k, v in vars(args).items() if k not in ("handler", "seed_given")}


def _emit(config: Dict[str, Any], result: CommandResult, args: argparse.Namespace) -> None:
    if not result.payload:
        return
    out = None if result.to_stdout or result.to_stderr else args.out
    stream = smart_open(out, "w") if out else (sys.stderr if result.to_stderr else sys.stdout)
    try:
        if args.format == "json":
            stream.write(json.dumps(to_item({"config": config, "result": result.payload}), indent=2) + "\n")
        else:
            console = Console(file=stream, width=120)
            console.print(_record_table(to_item(config)))
            if result.table is not None:
                console.print(result.table)
    finally:
        if out:
            stream.close()


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    handler: Callable[[argparse.Namespace], CommandResult] = args.handler
    try:
        config = resolve_config(args)
        logger.debug(f"config: {config}")
        result = handler(args)
    except (InvalidModelError, SingularCovarianceError, SolverError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (SimplexGeostatError, NotImplementedError, KeyError, OSError, ValueError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _emit(config, result, args)
    return result.exit_code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
