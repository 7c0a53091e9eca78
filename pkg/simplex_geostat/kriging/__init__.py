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
from .base import KrigingSolution, weights_equal_across_variables
from .constrained import kkt_residuals, nonneg_cokrige_means, nonneg_krige_mean, walvoort_compositional_krige
from .gls import cokrige_means, cokriging_residuals, krige_mean_single
from .qp import QPResult, active_set_qp
