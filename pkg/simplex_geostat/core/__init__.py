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
from .base import Composition, CompositionalDataset, Grouping, RealSimplexPoint, SiteSet, is_in_simplex
from .exceptions import (
    DataFormatError,
    DomainError,
    InvalidModelError,
    SimplexGeostatError,
    SingularCovarianceError,
    SolverError,
)
from .simplex import aitchison_inner, aitchison_inner_pairwise, amalgamate, closure, half_taxi_distance
