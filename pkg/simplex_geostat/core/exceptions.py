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
from typing import Any, Optional

import numpy as np
from loguru import logger


class SimplexGeostatError(Exception):
    """Base class of every error raised by simplex_geostat."""

    def __init__(self, message: str = ""):
        super().__init__(message)
        logger.info(f"{type(self).__name__}: {message}")


class DomainError(SimplexGeostatError, ValueError):
    """An input lies outside the domain of an operation (negative part, zero part for a log-ratio, ...)."""


class InvalidModelError(SimplexGeostatError):
    """A covariance model does not yield a positive definite block matrix."""


class SingularCovarianceError(SimplexGeostatError, np.linalg.LinAlgError):
    """Cholesky factorization of a kriging covariance matrix failed."""


class SolverError(SimplexGeostatError):
    """An iterative solver stopped without meeting its convergence criterion."""

    def __init__(self, message: str = "", last_iterate: Optional[Any] = None):
        super().__init__(message)
        self.last_iterate = last_iterate


class DataFormatError(SimplexGeostatError):
    """A CSV or JSON input could not be parsed."""

    def __init__(self, message: str = "", line: Optional[int] = None, column: Optional[str] = None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if column is not None:
            location.append(f"column {column}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)
        self.line = line
        self.column = column
