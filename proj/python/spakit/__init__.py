# Copyright 2026 The spa-kit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Structural physical approximations and direct entanglement detection."""

from ._core import (  # noqa: F401
    ChoiOperator,
    DimensionError,
    InvalidStateError,
    MeasurementModel,
    SpaResult,
    build_ps_model,
    choi_of_map,
    choi_R,
    eigenvalues_from_moments,
    hermitian_eig,
    informational_completeness,
    invert_ps,
    kron,
    moments,
    partial_trace,
    partial_transpose,
    simulate_expectation,
    spa_general,
    spa_partial_transpose,
    spa_rho_square,
    success_probability,
    validate_model,
    verdict_exact,
    verdict_sampled,
    werner_state,
)

__version__ = "1.0.0"
