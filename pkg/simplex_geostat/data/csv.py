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
"""CSV format for datasets: header `s1,...,sd,p1,...,pp`, one row per sample."""
import io
import re
from typing import List, Tuple

import numpy as np
import pandas as pd
from loguru import logger
from smart_open import open as smart_open

from simplex_geostat.core.base import RENORMALIZE_TOL, CompositionalDataset, SiteSet
from simplex_geostat.core.exceptions import DataFormatError, DomainError

_SITE_COLUMN = re.compile(r"^s(\d+)$")
_PART_COLUMN = re.compile(r"^p(\d+)$")
FLOAT_FORMAT = "%.17g"


def _read_frame(path: str) -> pd.DataFrame:
    try:
        with smart_open(path, "r") as fr:
            text = fr.read()
    except (OSError, ValueError) as e:
        raise DataFormatError(f"cannot read {path}: {e}") from e
    if not text.strip():
        raise DataFormatError("empty dataset", line=1)
    try:
        return pd.read_csv(io.StringIO(text), dtype=str, skipinitialspace=True, keep_default_na=False)
    except pd.errors.ParserError as e:
        raise DataFormatError(f"malformed CSV in {path}: {e}") from e


def _split_header(columns: List[str]) -> Tuple[List[str], List[str]]:
    site_cols, part_cols = [], []
    for position, name in enumerate(columns, start=1):
        name = name.strip()
        if _SITE_COLUMN.match(name):
            if part_cols:
                raise DataFormatError(f"site column {name!r} after part columns", line=1, column=name)
            site_cols.append(name)
        elif _PART_COLUMN.match(name):
            part_cols.append(name)
        else:
            raise DataFormatError(f"unexpected header field {name!r} at position {position}", line=1, column=name)
    for prefix, cols in (("s", site_cols), ("p", part_cols)):
        expected = [f"{prefix}{i}" for i in range(1, len(cols) + 1)]
        if cols != expected:
            raise DataFormatError(f"header columns {cols} should be {expected}", line=1)
    return site_cols, part_cols


def _numeric(frame: pd.DataFrame, columns: List[str]) -> np.ndarray:
    values = np.empty((len(frame), len(columns)), dtype=float)
    for j, name in enumerate(columns):
        raw = frame[name].astype(str).str.strip()
        parsed = pd.to_numeric(raw, errors="coerce")
        bad = parsed.isna() | ~np.isfinite(parsed.to_numpy(dtype=float, na_value=np.nan))
        if bad.any():
            i = int(np.argmax(bad.to_numpy()))
            raise DataFormatError(f"not a finite number: {raw.iloc[i]!r}", line=i + 2, column=name)
        values[:, j] = parsed.to_numpy(dtype=float)
    return values


def read_dataset(path: str, strict: bool = False) -> CompositionalDataset:
    """Read a dataset CSV.

    Args:
        path: local path or any URI understood by `smart_open`.
        strict: reject rows whose parts sum deviates from 1 by more than 1e-9. Otherwise such rows are
            re-closed and a warning is logged.
    """
    frame = _read_frame(path)
    site_cols, part_cols = _split_header(list(frame.columns))
    if len(part_cols) < 2:
        raise DataFormatError(f"need at least 2 part columns p1, p2, ..., got {part_cols}", line=1)
    if frame.empty:
        raise DataFormatError("empty dataset", line=2)

    parts = _numeric(frame, part_cols)
    negative = np.argwhere(parts < 0)
    if negative.size:
        i, j = negative[0]
        raise DataFormatError(f"negative part {parts[i, j]!r}", line=int(i) + 2, column=part_cols[j])
    sums = parts.sum(axis=1)
    off = np.abs(sums - 1.0) > RENORMALIZE_TOL
    if np.any(off):
        i = int(np.argmax(off))
        if strict or sums[i] <= 0:
            raise DataFormatError(f"parts sum to {sums[i]!r}, not 1", line=i + 2)
        logger.warning(f"{path}: re-closing {int(off.sum())} row(s) whose parts do not sum to 1")
        parts[off] = parts[off] / sums[off, None]

    if site_cols:
        sites = _numeric(frame, site_cols)
    else:
        logger.info(f"{path}: no site columns, using sites 0..{len(frame) - 1} on a line")
        sites = np.arange(len(frame), dtype=float)[:, None]
    try:
        return CompositionalDataset(SiteSet(sites), parts)
    except DomainError as e:
        raise DataFormatError(str(e)) from e


def read_sites(path: str) -> SiteSet:
    """Read the `s1..sd` columns of a CSV; part columns, if any, are ignored."""
    frame = _read_frame(path)
    site_cols, _ = _split_header(list(frame.columns))
    if not site_cols:
        raise DataFormatError("no site columns s1, s2, ...", line=1)
    if frame.empty:
        raise DataFormatError("no sites", line=2)
    try:
        return SiteSet(_numeric(frame, site_cols))
    except DomainError as e:
        raise DataFormatError(str(e)) from e


def dataset_to_frame(ds: CompositionalDataset) -> pd.DataFrame:
    columns = [f"s{i}" for i in range(1, ds.sites.d + 1)] + [f"p{k}" for k in range(1, ds.p + 1)]
    return pd.DataFrame(np.hstack([ds.sites.coords, ds.parts]), columns=columns)


def write_dataset(ds: CompositionalDataset, path: str) -> None:
    """Write `ds` in the CSV format with 17 significant digits so that reading it back is exact."""
    with smart_open(path, "w") as fw:
        dataset_to_frame(ds).to_csv(fw, index=False, float_format=FLOAT_FORMAT)


def read_coordinates(path: str) -> np.ndarray:
    """Read an (n, m) array of ilr coordinates from columns `u1..um`."""
    frame = _read_frame(path)
    columns = [name.strip() for name in frame.columns]
    expected = [f"u{i}" for i in range(1, len(columns) + 1)]
    if not columns or columns != expected:
        raise DataFormatError(f"header columns {columns} should be {expected}", line=1)
    if frame.empty:
        raise DataFormatError("no coordinate rows", line=2)
    frame.columns = columns
    return _numeric(frame, columns)
