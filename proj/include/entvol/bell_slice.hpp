// Copyright 2026 The entvol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>

#include "entvol/criteria.hpp"

namespace entvol {

/// Deterministic scan of the Bell-diagonal line a = (x, -x, a_z).
struct BellSlicePoint {
  double x = 0.0;
  bool valid = false;
  CriterionVerdict verdict;  // renyi entries are {inf, 1}
};

BellSlicePoint evaluate_bell_slice(double x, double a_z = 1.0 / 3.0);

/// Largest x in [inside, outside] for which `fulfilled(x)` still holds,
/// assuming a single flip. Bisects until the bracket is below `tolerance`.
/// Throws InvalidParameter if the endpoints do not bracket a flip.
double bisect_flip(const std::function<bool(double)>& fulfilled, double inside,
                   double outside, double tolerance = 1e-13);

}  // namespace entvol
