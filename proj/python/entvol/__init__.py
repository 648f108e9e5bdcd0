# Copyright 2026 The entvol Authors
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

"""Volume ratios of entanglement criteria, estimated by hit-and-run sampling.

Thin Python bindings over the C++ library. Matrices are NumPy complex arrays,
Bloch coordinates are NumPy float arrays.
"""

from ._core import (
    EntvolError,
    Family,
    HrChain,
    RatioEstimate,
    Verdict,
    CriterionVerdict,
    bell_slice,
    check_majorization,
    check_ppt,
    check_reduction,
    check_renyi,
    chord_radius,
    evaluate_all,
    generator_basis,
    is_state,
    partial_trace,
    partial_transpose,
    product_basis,
    renyi_entropy,
    run_experiment,
    to_bloch,
    to_matrix,
    __version__,
)

__all__ = [
    "EntvolError",
    "Family",
    "HrChain",
    "RatioEstimate",
    "Verdict",
    "CriterionVerdict",
    "bell_slice",
    "check_majorization",
    "check_ppt",
    "check_reduction",
    "check_renyi",
    "chord_radius",
    "evaluate_all",
    "generator_basis",
    "is_state",
    "partial_trace",
    "partial_transpose",
    "product_basis",
    "renyi_entropy",
    "run_experiment",
    "to_bloch",
    "to_matrix",
    "__version__",
]
