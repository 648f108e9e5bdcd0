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

#include "entvol/estimator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace entvol {

namespace {

constexpr int kCheckpointVersion = 1;

std::vector<CriterionId> criteria_for(const std::vector<double>& alphas) {
  std::vector<CriterionId> out{{CriterionKind::ppt},
                               {CriterionKind::reduction},
                               {CriterionKind::majorization}};
  for (double a : alphas) out.push_back({CriterionKind::renyi, a});
  return out;
}

// Indices into the alpha list ordered by increasing alpha.
std::vector<std::size_t> alpha_order(const std::vector<double>& alphas) {
  std::vector<std::size_t> idx(alphas.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return alphas[a] < alphas[b]; });
  return idx;
}

nlohmann::json alpha_to_json(double a) {
  return std::isinf(a) ? nlohmann::json("inf") : nlohmann::json(a);
}

double alpha_from_json(const nlohmann::json& j) {
  return j.is_string() ? parse_alpha(j.get<std::string>()) : j.get<double>();
}

}  // namespace

std::string_view criterion_kind_name(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::ppt: return "ppt";
    case CriterionKind::reduction: return "reduction";
    case CriterionKind::majorization: return "majorization";
    case CriterionKind::renyi: return "renyi";
  }
  return "unknown";
}

std::string CriterionId::label() const {
  std::string out(criterion_kind_name(kind));
  if (kind == CriterionKind::renyi) out += "(" + format_alpha(alpha) + ")";
  return out;
}

std::string format_alpha(double alpha) {
  if (std::isnan(alpha)) return "";
  if (std::isinf(alpha)) return "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), alpha);
  return std::string(buf, res.ptr);
}

double parse_alpha(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return kInfinity;
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw InvalidParameter("cannot parse Renyi order '" + std::string(text) + "'");
  }
  if (!(value > 0.0)) {
    throw InvalidParameter("Renyi order must be > 0, got '" + std::string(text) + "'");
  }
  return value;
}

void ExperimentConfig::validate() const {
  if (chains < 1) throw ConfigError("chains must be >= 1");
  if (total_samples < 1) throw ConfigError("total_samples must be >= 1");
  if (total_samples < chains) {
    throw ConfigError("total_samples (" + std::to_string(total_samples) +
                      ") must be >= chains (" + std::to_string(chains) + ")");
  }
  if (thinning < 1) throw ConfigError("thinning must be >= 1");
  for (double a : alphas) {
    if (!(a > 0.0)) throw ConfigError("Renyi orders must be > 0");
  }
}

std::uint64_t ExperimentConfig::samples_for_chain(std::size_t chain) const {
  const std::uint64_t base = total_samples / chains;
  if (chain + 1 == chains) return base + total_samples % chains;
  return base;
}

std::string ExperimentConfig::provenance() const {
  std::ostringstream os;
  os << family.name() << ' ' << family.dims_label() << " burn_in=" << burn_in
     << " thinning=" << thinning;
  return os.str();
}

RatioEstimate make_estimate(CriterionId criterion, std::string family,
                            std::string dims, std::string provenance,
                            std::vector<std::uint64_t> per_chain_counts,
                            std::vector<std::uint64_t> per_chain_totals) {
  RatioEstimate e;
  e.criterion = criterion;
  e.family = std::move(family);
  e.dims = std::move(dims);
  e.provenance = std::move(provenance);
  e.count_fulfilled =
      std::accumulate(per_chain_counts.begin(), per_chain_counts.end(), std::uint64_t{0});
  e.total =
      std::accumulate(per_chain_totals.begin(), per_chain_totals.end(), std::uint64_t{0});
  e.per_chain_ratios.reserve(per_chain_counts.size());
  for (std::size_t i = 0; i < per_chain_counts.size(); ++i) {
    e.per_chain_ratios.push_back(
        per_chain_totals[i] == 0
            ? 0.0
            : static_cast<double>(per_chain_counts[i]) / per_chain_totals[i]);
  }
  e.per_chain_counts = std::move(per_chain_counts);
  e.per_chain_totals = std::move(per_chain_totals);
  if (e.total == 0) return e;

  const double n = static_cast<double>(e.total);
  e.ratio = static_cast<double>(e.count_fulfilled) / n;
  e.binomial_error = std::sqrt(e.ratio * (1.0 - e.ratio) / n);

  const auto k = e.per_chain_ratios.size();
  if (k >= 2) {
    const double mean =
        std::accumulate(e.per_chain_ratios.begin(), e.per_chain_ratios.end(), 0.0) / k;
    double ss = 0.0;
    for (double r : e.per_chain_ratios) ss += (r - mean) * (r - mean);
    e.std_error = std::sqrt(ss / (k - 1)) / std::sqrt(static_cast<double>(k));
  } else {
    e.std_error = e.binomial_error;
  }
  if (e.count_fulfilled == e.total) {
    e.inconclusive = true;
    e.std_error = 3.0 / n;
  } else if (e.count_fulfilled == 0) {
    e.std_error = 3.0 / n;
  }
  return e;
}

RatioEstimate merge(std::span<const RatioEstimate> estimates) {
  if (estimates.empty()) throw MergeError("nothing to merge");
  const RatioEstimate& first = estimates.front();
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> totals;
  for (const auto& e : estimates) {
    if (!(e.criterion == first.criterion) || e.family != first.family ||
        e.dims != first.dims || e.provenance != first.provenance) {
      throw MergeError("cannot merge " + e.criterion.label() + " [" + e.provenance +
                       "] into " + first.criterion.label() + " [" +
                       first.provenance + "]");
    }
    counts.insert(counts.end(), e.per_chain_counts.begin(), e.per_chain_counts.end());
    totals.insert(totals.end(), e.per_chain_totals.begin(), e.per_chain_totals.end());
  }
  return make_estimate(first.criterion, first.family, first.dims, first.provenance,
                       std::move(counts), std::move(totals));
}

Experiment::Experiment(ExperimentConfig config)
    : config_(std::move(config)), criteria_(criteria_for(config_.alphas)) {
  config_.validate();
  chains_.reserve(config_.chains);
  for (std::size_t i = 0; i < config_.chains; ++i) {
    HrConfig hr{config_.family, derive_chain_seed(config_.seed, i),
                config_.burn_in, config_.thinning};
    chains_.push_back(Chain{HrChain(std::move(hr)), config_.samples_for_chain(i), 0,
                            std::vector<std::uint64_t>(criteria_.size(), 0), 0});
  }
}

void Experiment::run_chain(std::size_t index, const RunOptions& options) {
  Chain& chain = chains_[index];
  const std::uint64_t remaining = chain.target - chain.done;
  const std::uint64_t todo = std::min(remaining, options.max_samples_per_chain);
  if (todo == 0) return;

  CriteriaEvaluator evaluator(config_.family.subsystem_a(),
                              config_.family.subsystem_b(), config_.alphas);
  const auto order = alpha_order(config_.alphas);
  CriterionVerdict verdict;
  chain.walker.sample(todo, [&](const RealVector& coords, const Matrix& rho) {
    evaluator.evaluate(rho, verdict);
    auto& c = chain.counts;
    c[0] += verdict.ppt.fulfilled;
    c[1] += verdict.reduction.fulfilled;
    c[2] += verdict.majorization.fulfilled;
    for (std::size_t a = 0; a < verdict.renyi.size(); ++a) {
      c[3 + a] += verdict.renyi[a].verdict.fulfilled;
    }
    // A passing larger order with a failing smaller order breaks monotonicity.
    bool seen_fail = false;
    for (std::size_t a : order) {
      const bool ok = verdict.renyi[a].verdict.fulfilled;
      if (!ok) seen_fail = true;
      if (ok && seen_fail) {
        ++chain.monotonicity_violations;
        break;
      }
    }
    ++chain.done;
    if (options.progress) options.progress->fetch_add(1, std::memory_order_relaxed);
    if (options.observer) options.observer(index, coords, verdict);
  });
}

void Experiment::run(const RunOptions& options) {
  std::size_t threads = config_.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, chains_.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= chains_.size()) return;
      try {
        run_chain(i, options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

bool Experiment::finished() const noexcept {
  return std::all_of(chains_.begin(), chains_.end(),
                     [](const Chain& c) { return c.done >= c.target; });
}

std::uint64_t Experiment::samples_done() const noexcept {
  std::uint64_t n = 0;
  for (const auto& c : chains_) n += c.done;
  return n;
}

std::uint64_t Experiment::monotonicity_violations() const noexcept {
  std::uint64_t n = 0;
  for (const auto& c : chains_) n += c.monotonicity_violations;
  return n;
}

std::vector<RatioEstimate> Experiment::chain_estimates(std::size_t chain) const {
  const Chain& c = chains_.at(chain);
  std::vector<RatioEstimate> out;
  out.reserve(criteria_.size());
  for (std::size_t k = 0; k < criteria_.size(); ++k) {
    out.push_back(make_estimate(criteria_[k], std::string(config_.family.name()),
                                config_.family.dims_label(), config_.provenance(),
                                {c.counts[k]}, {c.done}));
  }
  return out;
}

std::vector<RatioEstimate> Experiment::estimates() const {
  std::vector<RatioEstimate> out;
  out.reserve(criteria_.size());
  for (std::size_t k = 0; k < criteria_.size(); ++k) {
    std::vector<std::uint64_t> counts;
    std::vector<std::uint64_t> totals;
    for (const auto& c : chains_) {
      counts.push_back(c.counts[k]);
      totals.push_back(c.done);
    }
    out.push_back(make_estimate(criteria_[k], std::string(config_.family.name()),
                                config_.family.dims_label(), config_.provenance(),
                                std::move(counts), std::move(totals)));
  }
  return out;
}

std::string Experiment::checkpoint_json() const {
  nlohmann::json j;
  j["version"] = kCheckpointVersion;
  auto& cfg = j["config"];
  cfg["family"] = std::string(config_.family.name());
  cfg["nA"] = config_.family.subsystem_a();
  cfg["nB"] = config_.family.subsystem_b();
  cfg["total_samples"] = config_.total_samples;
  cfg["chains"] = config_.chains;
  cfg["seed"] = config_.seed;
  cfg["burn_in"] = config_.burn_in;
  cfg["thinning"] = config_.thinning;
  cfg["alphas"] = nlohmann::json::array();
  for (double a : config_.alphas) cfg["alphas"].push_back(alpha_to_json(a));

  auto& arr = j["chains"] = nlohmann::json::array();
  for (std::size_t i = 0; i < chains_.size(); ++i) {
    const Chain& c = chains_[i];
    arr.push_back({{"index", i},
                   {"target", c.target},
                   {"done", c.done},
                   {"steps_taken", c.walker.steps_taken()},
                   {"counts", c.counts},
                   {"monotonicity_violations", c.monotonicity_violations},
                   {"walker", c.walker.save_state()}});
  }
  return j.dump(2);
}

Experiment Experiment::from_checkpoint_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed checkpoint: ") + e.what());
  }
  if (j.value("version", 0) != kCheckpointVersion) {
    throw ConfigError("unsupported checkpoint version");
  }
  try {
    const auto& cfg = j.at("config");
    ExperimentConfig config;
    config.family = StateFamily::make(parse_family_kind(cfg.at("family").get<std::string>()),
                                      cfg.at("nA").get<int>(), cfg.at("nB").get<int>());
    config.total_samples = cfg.at("total_samples").get<std::uint64_t>();
    config.chains = cfg.at("chains").get<std::size_t>();
    config.seed = cfg.at("seed").get<std::uint64_t>();
    config.burn_in = cfg.at("burn_in").get<std::size_t>();
    config.thinning = cfg.at("thinning").get<std::size_t>();
    config.alphas.clear();
    for (const auto& a : cfg.at("alphas")) config.alphas.push_back(alpha_from_json(a));

    Experiment exp(std::move(config));
    const auto& arr = j.at("chains");
    if (arr.size() != exp.chains_.size()) throw ConfigError("checkpoint chain count mismatch");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Chain& c = exp.chains_[i];
      c.target = arr[i].at("target").get<std::uint64_t>();
      c.done = arr[i].at("done").get<std::uint64_t>();
      c.counts = arr[i].at("counts").get<std::vector<std::uint64_t>>();
      c.monotonicity_violations = arr[i].at("monotonicity_violations").get<std::uint64_t>();
      if (c.counts.size() != exp.criteria_.size()) {
        throw ConfigError("checkpoint criterion count mismatch");
      }
      c.walker.restore_state(arr[i].at("walker").get<std::string>());
    }
    return exp;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed checkpoint: ") + e.what());
  }
}

void Experiment::save_checkpoint(const std::filesystem::path& path) const {
  const auto tmp = std::filesystem::path(path).concat(".tmp");
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write checkpoint " + tmp.string());
    out << checkpoint_json() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

Experiment Experiment::load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read checkpoint " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_checkpoint_json(ss.str());
}

std::vector<RatioEstimate> run_experiment(const ExperimentConfig& config,
                                          const SampleObserver& observer) {
  Experiment exp(config);
  Experiment::RunOptions options;
  options.observer = observer;
  exp.run(options);
  return exp.estimates();
}

}  // namespace entvol
