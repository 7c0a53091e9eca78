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
import dataclasses
import os
import re
import warnings
from typing import Any, Dict, List, Optional, Union

import numpy as np

SIGNIFICANT_DIGITS = 12
DEFAULT_SEED = 0


def listify(item: Any) -> List:
    """Convert any scalar value into list."""
    if item is None:
        return []
    if isinstance(item, list):
        return item
    if isinstance(item, (tuple, set)):
        return list(item)
    if isinstance(item, np.ndarray):
        return item.tolist()
    if isinstance(item, (int, float, str)):
        return [item]
    try:
        return list(item)
    except TypeError:
        return [item]


def round_significant(value: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    """Round a float to `digits` significant digits. Non-finite values pass through."""
    if not np.isfinite(value):
        return float(value)
    return float(f"{value:.{digits}g}")


def to_item(data: Any) -> Union[int, float, str, bool, None, List, Dict]:
    """
    Converts numpy values contained in any Iterable or Dictionary into JSON-ready primitives.
    Floats are rounded to 12 significant digits.
    Args:
        data: numpy array, scalar, dataclass, or a container of them.
    """
    if data is None or isinstance(data, (bool, str)):
        return data
    if isinstance(data, np.bool_):
        return bool(data)
    if isinstance(data, (int, np.integer)):
        return int(data)
    if isinstance(data, (float, np.floating)):
        return round_significant(float(data))
    if isinstance(data, np.ndarray):
        return to_item(data.tolist())
    if isinstance(data, (list, tuple, set, frozenset)):
        return [to_item(v) for v in data]
    if isinstance(data, dict):
        return {str(k): to_item(v) for k, v in data.items()}
    if hasattr(data, "to_dict"):
        return to_item(data.to_dict())
    if dataclasses.is_dataclass(data):
        return to_item(dataclasses.asdict(data))

    warnings.warn(f"to_item didn't convert value of type {type(data).__name__}.")
    return data


def filter_list(arr: List[str], pattern: Optional[str] = None) -> List[str]:
    """Filter a list of strings with given pattern
    ```python
    >> arr = ['arith', 'geom', 'graph-median', 'l1-median']
    >> filter_list(arr, ".*median")
    >> # ["graph-median", "l1-median"]
    ```
    """
    if pattern is None:
        return arr

    p = re.compile(pattern)
    return [s for s in arr if p.match(s)]


def default_seed() -> int:
    """Seed used when none is given: `SIMPLEX_GEOSTAT_SEED` if set, else 0. Never wall-clock."""
    value = os.environ.get("SIMPLEX_GEOSTAT_SEED")
    if value is None or value == "":
        return DEFAULT_SEED
    try:
        return int(value)
    except ValueError as e:
        raise ValueError(f"SIMPLEX_GEOSTAT_SEED must be an integer, got {value!r}") from e


def is_ci() -> bool:
    return os.environ.get("SIMPLEX_GEOSTAT_CI", "false").lower() == "true"


def make_rng(seed: int, *streams: int) -> np.random.Generator:
    """Independent generator for (seed, stream...). Streams never share state."""
    return np.random.default_rng([int(seed), *[int(s) for s in streams]])
