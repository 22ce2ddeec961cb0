# Copyright 2026 The qdeconv Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Deconvolution of single-qubit noise from Pauli expectation values."""

from ._qdeconv import (
    ConfigError,
    CorrectionOverflow,
    DegenerateFit,
    Error,
    InvalidParameter,
    NonInvertible,
    SingularAssignment,
    channel_report,
    correction,
    describe,
    fit_gate_time,
    inverse_ptm,
    mean_from_counts,
    mitigate_readout,
    ptm,
    run_decay,
    run_sweep,
)

__all__ = [
    "ConfigError",
    "CorrectionOverflow",
    "DegenerateFit",
    "Error",
    "InvalidParameter",
    "NonInvertible",
    "SingularAssignment",
    "channel_report",
    "correction",
    "describe",
    "fit_gate_time",
    "inverse_ptm",
    "mean_from_counts",
    "mitigate_readout",
    "ptm",
    "run_decay",
    "run_sweep",
]
