# Copyright 2026 The busnoc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the busnoc simulator core."""

import csv
import io

from ._busnoc import (
    CSV_HEADER,
    CSV_SCHEMA,
    ConfigError,
    InvariantViolation,
    RunTimeout,
    config,
    event_log,
    parse_config,
    route,
    run,
    scenario,
    sweep_csv,
)

__all__ = [
    "CSV_HEADER",
    "CSV_SCHEMA",
    "ConfigError",
    "InvariantViolation",
    "RunTimeout",
    "config",
    "event_log",
    "parse_config",
    "read_results",
    "route",
    "run",
    "scenario",
    "sweep",
    "sweep_csv",
]


def read_results(text):
    """Parse results CSV text into a list of dicts, skipping `#` comments."""
    body = "".join(line for line in io.StringIO(text) if not line.startswith("#"))
    return list(csv.DictReader(io.StringIO(body)))


def sweep(**kwargs):
    """Run a sweep and return its rows as dicts keyed by CSV column."""
    return read_results(sweep_csv(timestamp=False, **kwargs))
