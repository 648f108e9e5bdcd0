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

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entvol/criteria.hpp"
#include "entvol/sampler.hpp"

namespace entvol {

enum class CriterionKind { ppt, reduction, majorization, renyi };

std::string_view criterion_kind_name(CriterionKind kind);

struct CriterionId {
  CriterionKind kind = CriterionKind::ppt;
  /// Renyi order; NaN for the non-entropic criteria.
  double alpha = std::numeric_limits<double>::quiet_NaN();

  /// "ppt", "reduction", "majorization", "renyi(2)", "renyi(inf)"
  std::string label() const;

  friend bool operator==(const CriterionId& a, const CriterionId& b) noexcept {
    if (a.kind != b.kind) return false;
    return a.kind != CriterionKind::renyi || a.alpha == b.alpha;
  }
};

/// Formats an alpha the way it appears in CSV output ("1", "1.5", "inf").
std::string format_alpha(double alpha);
/// Inverse of format_alpha; accepts "inf"/"infinity". Throws InvalidParameter.
double parse_alpha(std::string_view text);

struct ExperimentConfig {
  StateFamily family = StateFamily::bell_diagonal();
  std::uint64_t total_samples = 0;
  std::size_t chains = 16;
  std::uint64_t seed = 0;
  std::vector<double> alphas = default_alphas();
  std::size_t burn_in = 0;
  std::size_t thinning = 1;
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  std::size_t threads = 0;

  /// Throws ConfigError.
  void validate() const;
  /// Even split; the remainder goes to the last chain.
  std::uint64_t samples_for_chain(std::size_t chain) const;
  /// Identity of everything that must agree for two estimates to be merged.
  std::string provenance() const;
};

struct RatioEstimate {
  CriterionId criterion;
  std::string family;
  std::string dims;
  std::string provenance;
  std::uint64_t count_fulfilled = 0;
  std::uint64_t total = 0;
  /// count_fulfilled / total.
  double ratio = 0.0;
  /// Spread of per-chain ratios divided by sqrt(chains). With a single chain
  /// the binomial error is used. Degenerate counts (no violations, or no
  /// fulfilling states) fall back to the rule-of-three bound 3 / total.
  double std_error = 0.0;
  /// sqrt(R (1 - R) / total), reported alongside.
  double binomial_error = 0.0;
  /// No violating state was sampled.
  bool inconclusive = false;
  std::vector<std::uint64_t> per_chain_counts;
  std::vector<std::uint64_t> per_chain_totals;
  std::vector<double> per_chain_ratios;
};

/// Builds an estimate from per-chain counts, computing ratio and errors.
RatioEstimate make_estimate(CriterionId criterion, std::string family,
                            std::string dims, std::string provenance,
                            std::vector<std::uint64_t> per_chain_counts,
                            std::vector<std::uint64_t> per_chain_totals);

/// Adds counts and concatenates chain lists. Throws MergeError on an empty
/// input or mismatched criterion/family/provenance.
RatioEstimate merge(std::span<const RatioEstimate> estimates);

/// Called from worker threads for every emitted sample; must be thread-safe.
using SampleObserver = std::function<void(
    std::size_t chain, const RealVector& coords, const CriterionVerdict&)>;

/// A set of independent hit-and-run chains with per-criterion tallies.
/// Resumable: checkpoint_json() captures every chain's walk state and counts.
class Experiment {
 public:
  explicit Experiment(ExperimentConfig config);

  const ExperimentConfig& config() const noexcept { return config_; }
  /// ppt, reduction, majorization, then renyi for each configured alpha.
  const std::vector<CriterionId>& criteria() const noexcept { return criteria_; }

  struct RunOptions {
    SampleObserver observer;
    /// Stop each chain after this many additional samples.
    std::uint64_t max_samples_per_chain = std::numeric_limits<std::uint64_t>::max();
    /// Incremented (relaxed) as samples are emitted.
    std::atomic<std::uint64_t>* progress = nullptr;
  };

  void run(const RunOptions& options);
  void run() { run(RunOptions{}); }

  bool finished() const noexcept;
  std::uint64_t samples_done() const noexcept;
  /// States where a larger alpha passed the entropy test and a smaller one
  /// failed. Expected to stay zero; logged rather than treated as an error.
  std::uint64_t monotonicity_violations() const noexcept;

  std::vector<RatioEstimate> estimates() const;
  /// Estimates from a single chain; merging these over all chains gives
  /// estimates().
  std::vector<RatioEstimate> chain_estimates(std::size_t chain) const;

  std::string checkpoint_json() const;
  static Experiment from_checkpoint_json(std::string_view text);
  void save_checkpoint(const std::filesystem::path& path) const;
  static Experiment load_checkpoint(const std::filesystem::path& path);

 private:
  struct Chain {
    HrChain walker;
    std::uint64_t target = 0;
    std::uint64_t done = 0;
    std::vector<std::uint64_t> counts;
    std::uint64_t monotonicity_violations = 0;
  };

  void run_chain(std::size_t index, const RunOptions& options);

  ExperimentConfig config_;
  std::vector<CriterionId> criteria_;
  std::vector<Chain> chains_;
};

/// Runs all chains to completion and returns one estimate per criterion.
std::vector<RatioEstimate> run_experiment(const ExperimentConfig& config,
                                          const SampleObserver& observer = {});

}  // namespace entvol
