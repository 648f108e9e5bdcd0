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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "entvol/states.hpp"

namespace entvol {

struct HrConfig {
  StateFamily family;
  std::uint64_t seed = 0;
  /// Steps discarded once, before the first emitted sample.
  std::size_t burn_in = 0;
  /// Accepted steps per emitted sample.
  std::size_t thinning = 1;
  /// Redraw guard for a single step.
  std::size_t max_shrink_iterations = 10'000;

  void validate() const;
};

/// Initial chord half-length 2 sqrt(n-1) / sqrt(n) for ambient dimension n.
/// It is twice the radius of the purity ball Tr rho^2 <= 1, so every chord
/// through an interior point of any family fits in [-r, r].
double chord_radius(int ambient_dimension);

/// Per-chain seed derived from a run seed and the chain index.
std::uint64_t derive_chain_seed(std::uint64_t seed, std::uint64_t chain_index);

/// Hit-and-run walk over the state body of one family.
///
/// The chain starts at the maximally mixed state (zero coordinates). Each step
/// draws a uniform direction on the unit sphere, then draws lambda uniformly
/// on [-r, r]; a rejected lambda replaces the endpoint on its side of zero
/// and lambda is redrawn until the candidate is a state.
///
/// Random source: std::mt19937_64 seeded from HrConfig::seed, Gaussian
/// coordinates from std::normal_distribution<double>.
class HrChain {
 public:
  explicit HrChain(HrConfig config);

  const HrConfig& config() const noexcept { return config_; }
  const StateFamily& family() const noexcept { return config_.family; }
  const RealVector& current() const noexcept { return current_; }
  BlochVector current_state() const { return {config_.family, current_}; }
  /// Embedded matrix of current().
  const Matrix& current_matrix() const noexcept { return current_matrix_; }
  std::uint64_t steps_taken() const noexcept { return steps_taken_; }
  double radius() const noexcept { return radius_; }
  /// Total lambda draws including rejected ones.
  std::uint64_t draws() const noexcept { return draws_; }

  RealVector random_direction();

  /// One accepted hit-and-run move; returns the new current point.
  const RealVector& step();

  /// Emits `count` samples, honouring burn-in (once per chain lifetime) and
  /// thinning. `visit(coords, matrix)` sees each emitted point.
  template <class Visitor>
  void sample(std::size_t count, Visitor&& visit) {
    advance_burn_in();
    for (std::size_t s = 0; s < count; ++s) {
      for (std::size_t t = 0; t < config_.thinning; ++t) step();
      visit(static_cast<const RealVector&>(current_),
            static_cast<const Matrix&>(current_matrix_));
    }
  }

  std::vector<BlochVector> sample(std::size_t count);

  /// Serialized walk state (position, step counters, generator state).
  std::string save_state() const;
  void restore_state(const std::string& state);

 private:
  void advance_burn_in();
  bool accepts(const RealVector& candidate, const Matrix& direction,
               double lambda);
  void set_current(RealVector coords);

  HrConfig config_;
  double radius_;
  double purity_bound_;
  RealVector current_;
  Matrix current_matrix_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
  std::uint64_t steps_taken_ = 0;
  std::uint64_t draws_ = 0;
  bool burned_in_ = false;

  Eigen::SelfAdjointEigenSolver<Matrix> solver_;
  Matrix scratch_;
};

}  // namespace entvol
