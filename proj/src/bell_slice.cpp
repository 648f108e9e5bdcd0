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

#include "entvol/bell_slice.hpp"

#include <array>
#include <cmath>

namespace entvol {

BellSlicePoint evaluate_bell_slice(double x, double a_z) {
  static const StateFamily family = StateFamily::bell_diagonal();
  const std::array<double, 3> coords{x, -x, a_z};
  const Matrix rho = family.embed(coords);

  BellSlicePoint p;
  p.x = x;
  p.valid = min_eigenvalue(rho) >= -kPsdTolerance;
  CriteriaEvaluator evaluator(2, 2, {kInfinity, 1.0});
  evaluator.evaluate(rho, p.verdict);
  return p;
}

double bisect_flip(const std::function<bool(double)>& fulfilled, double inside,
                   double outside, double tolerance) {
  if (!fulfilled(inside) || fulfilled(outside)) {
    throw InvalidParameter("bisection endpoints do not bracket a verdict flip");
  }
  for (int it = 0; it < 200 && std::abs(outside - inside) > tolerance; ++it) {
    const double mid = 0.5 * (inside + outside);
    if (fulfilled(mid)) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return inside;
}

}  // namespace entvol
