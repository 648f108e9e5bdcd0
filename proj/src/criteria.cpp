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

#include "entvol/criteria.hpp"

#include "entvol/basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace entvol {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0)) {
    throw InvalidParameter("Renyi order must be > 0, got " +
                           std::to_string(alpha));
  }
}

void reduce_into(const Matrix& rho, int nA, int nB, Matrix& rho_a,
                 Matrix& rho_b) {
  rho_a.setZero(nA, nA);
  rho_b.setZero(nB, nB);
  for (int i = 0; i < nA; ++i)
    for (int k = 0; k < nA; ++k)
      for (int j = 0; j < nB; ++j) rho_a(i, k) += rho(i * nB + j, k * nB + j);
  for (int j = 0; j < nB; ++j)
    for (int l = 0; l < nB; ++l)
      for (int i = 0; i < nA; ++i) rho_b(j, l) += rho(i * nB + j, i * nB + l);
}

// Smallest prefix difference sum(mu) - sum(lambda), both sorted descending,
// mu implicitly padded with zeros.
double majorization_margin(const RealVector& lambda_asc,
                           const RealVector& mu_asc) {
  const Eigen::Index n = lambda_asc.size();
  const Eigen::Index m = mu_asc.size();
  double sum_lambda = 0.0;
  double sum_mu = 0.0;
  double margin = kInfinity;
  for (Eigen::Index k = 0; k < n; ++k) {
    sum_lambda += lambda_asc(n - 1 - k);
    if (k < m) sum_mu += mu_asc(m - 1 - k);
    margin = std::min(margin, sum_mu - sum_lambda);
  }
  return margin;
}

}  // namespace

Verdict make_verdict(double margin) noexcept {
  return Verdict{margin >= -kPsdTolerance, margin};
}

const Verdict& CriterionVerdict::renyi_at(double alpha) const {
  for (const auto& r : renyi) {
    if (r.alpha == alpha) return r.verdict;
  }
  throw InvalidParameter("Renyi order " + std::to_string(alpha) +
                         " was not evaluated");
}

std::vector<double> default_alphas() { return {1.0, 2.0, 3.0, 5.0, 10.0, kInfinity}; }

double renyi_entropy_of_spectrum(const RealVector& spectrum, double alpha) {
  require_alpha(alpha);
  const RealVector p = spectrum.cwiseMax(0.0).cwiseMin(1.0);
  if (std::isinf(alpha)) return -std::log(p.maxCoeff());
  if (alpha == 1.0) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      if (p(i) > 0.0) s -= p(i) * std::log(p(i));
    }
    return s;
  }
  // ln sum p^a = a ln p_max + ln sum (p / p_max)^a keeps large orders finite.
  const double p_max = p.maxCoeff();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) > 0.0) sum += std::pow(p(i) / p_max, alpha);
  }
  return (alpha * std::log(p_max) + std::log(sum)) / (1.0 - alpha);
}

double renyi_entropy(const Matrix& m, double alpha) {
  require_alpha(alpha);
  return renyi_entropy_of_spectrum(eigenvalues(m), alpha);
}

CriteriaEvaluator::CriteriaEvaluator(int nA, int nB, std::vector<double> alphas)
    : nA_(nA), nB_(nB), alphas_(std::move(alphas)) {
  for (double a : alphas_) require_alpha(a);
  scratch_.resize(nA * nB, nA * nB);
}

double CriteriaEvaluator::min_eig(const Matrix& m) {
  solver_.compute(m, Eigen::EigenvaluesOnly);
  return solver_.eigenvalues()(0);
}

void CriteriaEvaluator::evaluate(const Matrix& rho, CriterionVerdict& out) {
  const int nA = nA_;
  const int nB = nB_;

  // Partial transpose on A: <ij|.|kl> = <kj|rho|il>.
  for (int i = 0; i < nA; ++i)
    for (int j = 0; j < nB; ++j)
      for (int k = 0; k < nA; ++k)
        for (int l = 0; l < nB; ++l)
          scratch_(i * nB + j, k * nB + l) = rho(k * nB + j, i * nB + l);
  out.ppt = make_verdict(min_eig(scratch_));

  reduce_into(rho, nA, nB, rho_a_, rho_b_);

  // rho_A (x) I - rho
  scratch_ = -rho;
  for (int i = 0; i < nA; ++i)
    for (int k = 0; k < nA; ++k)
      for (int j = 0; j < nB; ++j) scratch_(i * nB + j, k * nB + j) += rho_a_(i, k);
  const double red_a = min_eig(scratch_);
  // I (x) rho_B - rho
  scratch_ = -rho;
  for (int i = 0; i < nA; ++i)
    for (int j = 0; j < nB; ++j)
      for (int l = 0; l < nB; ++l) scratch_(i * nB + j, i * nB + l) += rho_b_(j, l);
  const double red_b = min_eig(scratch_);
  out.reduction = make_verdict(std::min(red_a, red_b));

  solver_.compute(rho, Eigen::EigenvaluesOnly);
  spec_ab_ = solver_.eigenvalues();
  solver_.compute(rho_a_, Eigen::EigenvaluesOnly);
  spec_a_ = solver_.eigenvalues();
  solver_.compute(rho_b_, Eigen::EigenvaluesOnly);
  spec_b_ = solver_.eigenvalues();

  out.majorization = make_verdict(std::min(majorization_margin(spec_ab_, spec_a_),
                                           majorization_margin(spec_ab_, spec_b_)));

  out.renyi.resize(alphas_.size());
  for (std::size_t i = 0; i < alphas_.size(); ++i) {
    const double a = alphas_[i];
    const double s_ab = renyi_entropy_of_spectrum(spec_ab_, a);
    const double s_a = renyi_entropy_of_spectrum(spec_a_, a);
    const double s_b = renyi_entropy_of_spectrum(spec_b_, a);
    out.renyi[i] = RenyiVerdict{a, make_verdict(s_ab - std::max(s_a, s_b))};
  }
}

CriterionVerdict CriteriaEvaluator::evaluate(const Matrix& rho) {
  CriterionVerdict out;
  evaluate(rho, out);
  return out;
}

Verdict check_ppt(const DensityMatrix& m) {
  return make_verdict(partial_transpose(m, Subsystem::A).min_eigenvalue());
}

Verdict check_reduction(const DensityMatrix& m) {
  const int nA = m.subsystem_a();
  const int nB = m.subsystem_b();
  const Matrix rho_a = partial_trace(m, Subsystem::B);
  const Matrix rho_b = partial_trace(m, Subsystem::A);
  const Matrix id_a = Matrix::Identity(nA, nA);
  const Matrix id_b = Matrix::Identity(nB, nB);
  const double a = min_eigenvalue(kron(rho_a, id_b) - m.entries());
  const double b = min_eigenvalue(kron(id_a, rho_b) - m.entries());
  return make_verdict(std::min(a, b));
}

Verdict check_majorization(const DensityMatrix& m) {
  const RealVector ab = eigenvalues(m.entries());
  const RealVector a = eigenvalues(partial_trace(m, Subsystem::B));
  const RealVector b = eigenvalues(partial_trace(m, Subsystem::A));
  return make_verdict(
      std::min(majorization_margin(ab, a), majorization_margin(ab, b)));
}

Verdict check_renyi(const DensityMatrix& m, double alpha) {
  require_alpha(alpha);
  const double s_ab = renyi_entropy(m.entries(), alpha);
  const double s_a = renyi_entropy(partial_trace(m, Subsystem::B), alpha);
  const double s_b = renyi_entropy(partial_trace(m, Subsystem::A), alpha);
  return make_verdict(s_ab - std::max(s_a, s_b));
}

CriterionVerdict evaluate_all(const DensityMatrix& m,
                              std::span<const double> alphas) {
  CriteriaEvaluator evaluator(m.subsystem_a(), m.subsystem_b(),
                              std::vector<double>(alphas.begin(), alphas.end()));
  return evaluator.evaluate(m.entries());
}

}  // namespace entvol
