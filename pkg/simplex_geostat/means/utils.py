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
from typing import Callable, Dict, List, Optional

from simplex_geostat.core.base import CompositionalDataset
from simplex_geostat.means.arithmetic import (
    ilr_mean,
    normalized_geometric_mean,
    quasi_arithmetic_estimate,
    weighted_arithmetic_mean,
)
from simplex_geostat.means.base import MEAN_KINDS, MeanEstimate, MeanMethod
from simplex_geostat.means.median import graph_median, l1_median
from simplex_geostat.utility.common import filter_list

MeanFunction = Callable[[CompositionalDataset, MeanMethod], MeanEstimate]

means: Dict[str, MeanFunction] = {
    "arith": lambda ds, method: weighted_arithmetic_mean(ds, method.weights),
    "geom": lambda ds, method: normalized_geometric_mean(ds),
    "ilr": lambda ds, method: ilr_mean(ds, method.weights),
    "qam": quasi_arithmetic_estimate,
    "graph-median": lambda ds, method: graph_median(ds),
    "l1-median": lambda ds, method: l1_median(ds),
}
assert tuple(means) == MEAN_KINDS, "mean registry out of sync with MEAN_KINDS"


def available_means(pattern: Optional[str] = None) -> List[str]:
    """Get available means
    ```python
    >> available_means()
    >> # arith, geom, ilr, qam, graph-median, l1-median

    # Filter available means with regex pattern
    >> available_means(".*median")
    >> # ["graph-median", "l1-median"]
    ```
    """
    return filter_list(list(means.keys()), pattern)


def get_mean(kind: str) -> MeanFunction:
    if kind not in means:
        raise NotImplementedError(f"mean {kind!r} not implemented! Available: {available_means()}")
    return means[kind]
