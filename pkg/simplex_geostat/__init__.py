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

from os import environ as _environ

_environ["LOGURU_LEVEL"] = _environ.get("LOGURU_LEVEL") or _environ.get("LOG_LEVEL", "ERROR")

from simplex_geostat.core import (
    Composition,
    CompositionalDataset,
    Grouping,
    RealSimplexPoint,
    SiteSet,
    amalgamate,
    closure,
    half_taxi_distance,
)
from simplex_geostat.covariance import CorrelationFunction, CovModel, LMCModel, ProportionalModel, validate_model
from simplex_geostat.kriging import cokrige_means, krige_mean_single, nonneg_krige_mean, walvoort_compositional_krige
from simplex_geostat.means import MeanEstimate, MeanMethod, available_means, get_mean
from simplex_geostat.transforms import ilr, ilr_inv

__version__ = "0.1.0"
