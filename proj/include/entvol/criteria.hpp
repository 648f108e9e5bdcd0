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

#include <span>
#include <vector>

#include "entvol/states.hpp"

namespace entvol {

/// Outcome of one criterion on one state. `fulfilled` is exactly
/// `margin >= -kPsdTolerance`; negative margins mean the state is detected as
/// entangled.
struct Verdict {
  bool fulfilled = false;
  double margin = 0.0;
};

Verdict make_verdict(double margin) noexcept;

struct RenyiVerdict {
  double alpha;
  Verdict verdict;
};

struct CriterionVerdict {
  Verdict ppt;
  Verdict reduction;
  Verdict majorization;
  /// One entry per requested alpha, in request order.
  std::vector<RenyiVerdict> renyi;

  /// Throws InvalidParameter if alpha was not evaluated.
  const Verdict& renyi_at(double alpha) const;
};

/// Default alpha grid for experiments: {1, 2, 3, 5, 10, inf}.
std::vector<double> default_alphas();

/// Margin is the smallest eigenvalue of the partial transpose on A.
Verdict check_ppt(const DensityMatrix& m);

/// rho_A (x) I - rho >= 0 and I (x) rho_B - rho >= 0; margin is the smaller of
/// the two minimum eigenvalues.
Verdict check_reduction(const DensityMatrix& m);

/// lambda(rho) must be majorized by the zero-padded spectra of both
/// reductions. All n prefix sums are compared; the margin is the smallest
/// prefix difference sum(mu) - sum(lambda) over both reductions.
Verdict check_majorization(const DensityMatrix& m);

/// Renyi entropy in nats. alpha = 1 is the von Neumann entropy and
/// alpha = kInfinity gives -ln(lambda_max). Eigenvalues are clamped to [0, 1].
double renyi_entropy(const Matrix& m, double alpha);
double renyi_entropy_of_spectrum(const RealVector& spectrum, double alpha);

/// Margin is S_alpha(rho) - max(S_alpha(rho_A), S_alpha(rho_B)).
Verdict check_renyi(const DensityMatrix& m, double alpha);

/// All criteria from a single set of eigendecompositions of rho, rho_A and
/// rho_B.
CriterionVerdict evaluate_all(const DensityMatrix& m,
                              std::span<const double> alphas);

/// Reusable evaluator for the sampling loop; keeps its eigensolvers and
/// scratch matrices between calls. Not thread-safe: one per chain.
class CriteriaEvaluator {
 public:
  CriteriaEvaluator(int nA, int nB, std::vector<double> alphas);

  const std::vector<double>& alphas() const noexcept { return alphas_; }
  void evaluate(const Matrix& rho, CriterionVerdict& out);
  CriterionVerdict evaluate(const Matrix& rho);

 private:
  double min_eig(const Matrix& m);

  int nA_;
  int nB_;
  std::vector<double> alphas_;
  Eigen::SelfAdjointEigenSolver<Matrix> solver_;
  Matrix scratch_;
  Matrix rho_a_;
  Matrix rho_b_;
  RealVector spec_ab_;
  RealVector spec_a_;
  RealVector spec_b_;
};

}  // namespace entvol
