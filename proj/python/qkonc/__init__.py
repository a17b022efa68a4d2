# Copyright 2026 The qkonc Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exponential-concentration diagnostics for quantum fidelity kernels."""

from ._qkonc import (
    AnsatzSpec,
    Circuit,
    QkoncError,
    bp_variance,
    build_ansatz,
    build_encoding,
    concentration_report,
    conditional_report,
    cost,
    fit_decay,
    gradient,
    gram,
    kernel_entry,
    kernel_entry_compiled,
    lemma_check,
    load_csv,
    load_idx,
    normalize_range,
    pca_reduce,
    run_command,
    sample_costs,
    simulate,
    spectrum_flatness,
    synthetic_uniform,
    theorem_check,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
