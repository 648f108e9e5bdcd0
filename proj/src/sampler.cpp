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

#include "entvol/sampler.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace entvol {

void HrConfig::validate() const {
  if (thinning < 1) throw ConfigError("thinning must be >= 1");
  if (max_shrink_iterations < 1) {
    throw ConfigError("max_shrink_iterations must be >= 1");
  }
}

double chord_radius(int ambient_dimension) {
  if (ambient_dimension < 2) {
    throw InvalidDimension("ambient dimension must be >= 2");
  }
  const double n = ambient_dimension;
  return 2.0 * std::sqrt(n - 1.0) / std::sqrt(n);
}

std::uint64_t derive_chain_seed(std::uint64_t seed, std::uint64_t chain_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chain_index),
                    static_cast<std::uint32_t>(chain_index >> 32)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[1]) << 32) | words[0];
}

HrChain::HrChain(HrConfig config)
    : config_(std::move(config)),
      radius_(chord_radius(config_.family.ambient_dimension())),
      rng_(config_.seed) {
  config_.validate();
  const double n = config_.family.ambient_dimension();
  purity_bound_ = (n - 1.0) / n;
  set_current(RealVector::Zero(
      static_cast<Eigen::Index>(config_.family.dimension())));
}

void HrChain::set_current(RealVector coords) {
  current_ = std::move(coords);
  current_matrix_ = config_.family.embed(
      std::span<const double>(current_.data(), current_.size()));
}

RealVector HrChain::random_direction() {
  const auto d = static_cast<Eigen::Index>(config_.family.dimension());
  RealVector v(d);
  double norm2 = 0.0;
  do {
    for (Eigen::Index i = 0; i < d; ++i) v(i) = normal_(rng_);
    norm2 = v.squaredNorm();
  } while (norm2 == 0.0);
  return v / std::sqrt(norm2);
}

bool HrChain::accepts(const RealVector& candidate, const Matrix& direction,
                      double lambda) {
  // Points outside the purity ball cannot be states; skip the eigensolve.
  if (candidate.squaredNorm() > purity_bound_ + kPsdTolerance) return false;
  scratch_ = current_matrix_ + lambda * direction;
  solver_.compute(scratch_, Eigen::EigenvaluesOnly);
  return solver_.eigenvalues()(0) >= -kPsdTolerance;
}

const RealVector& HrChain::step() {
  const RealVector dir = random_direction();
  const Matrix dir_matrix = config_.family.direction_matrix(
      std::span<const double>(dir.data(), dir.size()));

  double lo = -radius_;
  double hi = radius_;
  RealVector candidate(current_.size());
  for (std::size_t it = 0; it < config_.max_shrink_iterations; ++it) {
    const double lambda = std::uniform_real_distribution<double>(lo, hi)(rng_);
    ++draws_;
    candidate = current_ + lambda * dir;
    if (accepts(candidate, dir_matrix, lambda)) {
      set_current(std::move(candidate));
      ++steps_taken_;
      return current_;
    }
    if (lambda < 0.0) {
      lo = lambda;
    } else {
      hi = lambda;
    }
  }
  throw ShrinkLimitExceeded(
      "hit-and-run step exceeded " +
      std::to_string(config_.max_shrink_iterations) +
      " redraws at step " + std::to_string(steps_taken_));
}

void HrChain::advance_burn_in() {
  if (burned_in_) return;
  for (std::size_t i = 0; i < config_.burn_in; ++i) step();
  burned_in_ = true;
}

std::vector<BlochVector> HrChain::sample(std::size_t count) {
  std::vector<BlochVector> out;
  out.reserve(count);
  sample(count, [&](const RealVector& coords, const Matrix&) {
    out.push_back(BlochVector{config_.family, coords});
  });
  return out;
}

std::string HrChain::save_state() const {
  std::ostringstream os;
  os << steps_taken_ << ' ' << draws_ << ' ' << (burned_in_ ? 1 : 0) << ' '
     << current_.size() << std::hexfloat;
  for (Eigen::Index i = 0; i < current_.size(); ++i) os << ' ' << current_(i);
  os << std::defaultfloat << ' ' << rng_ << ' ' << normal_;
  return os.str();
}

void HrChain::restore_state(const std::string& state) {
  std::istringstream is(state);
  std::uint64_t steps = 0;
  std::uint64_t draws = 0;
  int burned = 0;
  Eigen::Index size = 0;
  is >> steps >> draws >> burned >> size;
  if (!is || size != current_.size()) {
    throw ConfigError("chain state does not match family dimension");
  }
  RealVector coords(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    // operator>> does not parse hexfloat portably; go through strtod.
    std::string token;
    is >> token;
    coords(i) = std::strtod(token.c_str(), nullptr);
  }
  is >> rng_ >> normal_;
  if (!is) throw ConfigError("malformed chain state");
  steps_taken_ = steps;
  draws_ = draws;
  burned_in_ = burned != 0;
  set_current(std::move(coords));
}

}  // namespace entvol
