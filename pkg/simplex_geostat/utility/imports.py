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
"""Optional dependencies and the extras that provide them."""
import functools
import importlib.util
from typing import Dict, Optional

# module name -> `pip install simplex-geostat[extra]`
OPTIONAL_EXTRAS: Dict[str, str] = {"ray": "parallel"}


def is_installed(module_name: str) -> bool:
    try:
        return importlib.util.find_spec(module_name) is not None
    except (AttributeError, ValueError):
        return False


def missing_message(module_name: str) -> str:
    extra = OPTIONAL_EXTRAS.get(module_name)
    hint = f"pip install simplex-geostat[{extra}]" if extra else f"pip install {module_name}"
    return f"{module_name} is required for this operation. Try `{hint}`"


def requires(module_name: str, err_msg: Optional[str] = None):
    """Decorated function raises `ModuleNotFoundError` on call while `module_name` is missing."""

    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            if not is_installed(module_name):
                raise ModuleNotFoundError(err_msg or missing_message(module_name))
            return func(*args, **kwargs)

        return wrapper

    return decorator
