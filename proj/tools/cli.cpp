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

#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "entvol/bell_slice.hpp"

#ifndef ENTVOL_VERSION
#define ENTVOL_VERSION "dev"
#endif

namespace entvol::cli {

namespace fs = std::filesystem;

std::string version() { return ENTVOL_VERSION; }

std::pair<int, int> parse_dims(std::string_view text) {
  const auto x = text.find('x');
  auto parse_int = [&](std::string_view part) {
    int value = 0;
    auto res = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || res.ec != std::errc() ||
        res.ptr != part.data() + part.size()) {
      throw UsageError("dims must look like NAxNB (e.g. 2x3), got '" +
                       std::string(text) + "'");
    }
    return value;
  };
  if (x == std::string_view::npos) {
    throw UsageError("dims must look like NAxNB (e.g. 2x3), got '" +
                     std::string(text) + "'");
  }
  const int a = parse_int(text.substr(0, x));
  const int b = parse_int(text.substr(x + 1));
  if (a < 2 || b < 2) throw UsageError("subsystem dimensions must be >= 2");
  return {a, b};
}

StateFamily resolve_family(std::string_view name,
                           const std::optional<std::string>& dims) {
  FamilyKind kind;
  try {
    kind = parse_family_kind(name);
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  if (kind == FamilyKind::general) {
    const auto [a, b] = dims ? parse_dims(*dims) : std::pair{2, 2};
    return StateFamily::general(a, b);
  }
  StateFamily family = StateFamily::make(kind);
  if (dims) {
    const auto [a, b] = parse_dims(*dims);
    if (a != family.subsystem_a() || b != family.subsystem_b()) {
      throw UsageError("family " + std::string(name) + " is fixed to " +
                       family.dims_label() + ", got --dims " + *dims);
    }
  }
  return family;
}

std::vector<double> parse_alpha_grid(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto token = text.substr(pos, comma == std::string_view::npos
                                            ? std::string_view::npos
                                            : comma - pos);
    if (token.empty()) throw UsageError("empty entry in alpha grid");
    try {
      if (token.find(':') != std::string_view::npos) {
        const auto c1 = token.find(':');
        const auto c2 = token.find(':', c1 + 1);
        if (c2 == std::string_view::npos) {
          throw UsageError("range must be start:stop:count, got '" + std::string(token) + "'");
        }
        const double start = parse_alpha(token.substr(0, c1));
        const double stop = parse_alpha(token.substr(c1 + 1, c2 - c1 - 1));
        const auto count_text = token.substr(c2 + 1);
        int count = 0;
        auto res = std::from_chars(count_text.data(),
                                   count_text.data() + count_text.size(), count);
        if (res.ec != std::errc() || res.ptr != count_text.data() + count_text.size() ||
            count < 1 || std::isinf(start) || std::isinf(stop)) {
          throw UsageError("bad range '" + std::string(token) + "'");
        }
        for (int i = 0; i < count; ++i) {
          out.push_back(count == 1 ? start
                                   : start + (stop - start) * i / (count - 1));
        }
      } else {
        out.push_back(parse_alpha(token));
      }
    } catch (const InvalidParameter& e) {
      throw UsageError(e.what());
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw UsageError("alpha grid is empty");
  return out;
}

// --- manifest -------------------------------------------------------------

namespace {

nlohmann::json alpha_json(double a) {
  if (std::isnan(a)) return nullptr;
  if (std::isinf(a)) return "inf";
  return a;
}

double alpha_value(const nlohmann::json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) return parse_alpha(j.get<std::string>());
  return j.get<double>();
}

CriterionKind criterion_kind_from(std::string_view name) {
  for (auto k : {CriterionKind::ppt, CriterionKind::reduction,
                 CriterionKind::majorization, CriterionKind::renyi}) {
    if (criterion_kind_name(k) == name) return k;
  }
  throw InvalidParameter("unknown criterion '" + std::string(name) + "'");
}

nlohmann::json estimate_to_json(const RatioEstimate& e) {
  return {{"criterion", std::string(criterion_kind_name(e.criterion.kind))},
          {"alpha", alpha_json(e.criterion.alpha)},
          {"family", e.family},
          {"dims", e.dims},
          {"provenance", e.provenance},
          {"count", e.count_fulfilled},
          {"total", e.total},
          {"ratio", e.ratio},
          {"std_error", e.std_error},
          {"binomial_error", e.binomial_error},
          {"inconclusive", e.inconclusive},
          {"per_chain_counts", e.per_chain_counts},
          {"per_chain_totals", e.per_chain_totals}};
}

RatioEstimate estimate_from_json(const nlohmann::json& j) {
  CriterionId id{criterion_kind_from(j.at("criterion").get<std::string>()),
                 alpha_value(j.at("alpha"))};
  RatioEstimate e = make_estimate(
      id, j.at("family").get<std::string>(), j.at("dims").get<std::string>(),
      j.at("provenance").get<std::string>(),
      j.at("per_chain_counts").get<std::vector<std::uint64_t>>(),
      j.at("per_chain_totals").get<std::vector<std::uint64_t>>());
  // Stored values win over recomputation so the roundtrip is exact.
  e.ratio = j.at("ratio").get<double>();
  e.std_error = j.at("std_error").get<double>();
  e.binomial_error = j.at("binomial_error").get<double>();
  e.inconclusive = j.at("inconclusive").get<bool>();
  return e;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

nlohmann::json config_to_json(const ExperimentConfig& config) {
  nlohmann::json alphas = nlohmann::json::array();
  for (double a : config.alphas) alphas.push_back(alpha_json(a));
  return {{"family", std::string(config.family.name())},
          {"dims", config.family.dims_label()},
          {"samples", config.total_samples},
          {"chains", config.chains},
          {"seed", config.seed},
          {"alphas", alphas},
          {"burn_in", config.burn_in},
          {"thinning", config.thinning}};
}

nlohmann::json to_json(const RunManifest& m) {
  nlohmann::json estimates = nlohmann::json::array();
  for (const auto& e : m.estimates) estimates.push_back(estimate_to_json(e));
  return {{"csv_schema_version", kCsvSchemaVersion},
          {"version", m.version},
          {"timestamp", m.timestamp},
          {"duration_seconds", m.duration_seconds},
          {"config", m.config},
          {"monotonicity_violations", m.monotonicity_violations},
          {"estimates", estimates}};
}

RunManifest manifest_from_json(const nlohmann::json& j) {
  RunManifest m;
  m.version = j.at("version").get<std::string>();
  m.timestamp = j.at("timestamp").get<std::string>();
  m.duration_seconds = j.at("duration_seconds").get<double>();
  m.config = j.at("config");
  m.monotonicity_violations = j.at("monotonicity_violations").get<std::uint64_t>();
  for (const auto& e : j.at("estimates")) m.estimates.push_back(estimate_from_json(e));
  return m;
}

// --- formatting -----------------------------------------------------------

std::string format_run_csv(const std::vector<RatioEstimate>& estimates,
                           std::uint64_t seed, std::uint64_t samples) {
  std::string out(kRunCsvHeader);
  out += '\n';
  for (const auto& e : estimates) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", e.family, e.dims,
                       criterion_kind_name(e.criterion.kind),
                       format_alpha(e.criterion.alpha), e.count_fulfilled,
                       e.total, e.ratio, e.std_error,
                       e.inconclusive ? "true" : "false", seed, samples);
  }
  return out;
}

std::string format_run_table(const std::vector<RatioEstimate>& estimates) {
  std::string out = fmt::format("{:<14} {:>12} {:>12} {:>21}  {}\n", "criterion",
                                "R", "std_error", "fulfilled/total", "note");
  for (const auto& e : estimates) {
    out += fmt::format("{:<14} {:>12.6f} {:>12.6f} {:>21}  {}\n", e.criterion.label(),
                       e.ratio, e.std_error,
                       fmt::format("{}/{}", e.count_fulfilled, e.total),
                       e.inconclusive ? "inconclusive (no violations sampled)" : "");
  }
  return out;
}

// --- commands -------------------------------------------------------------

namespace {

fs::path resolve_output(const std::string& flag, const std::string& default_name) {
  if (!flag.empty()) return flag;
  const char* dir = std::getenv(kOutputDirEnv);
  return fs::path(dir && *dir ? dir : ".") / default_name;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("failed writing " + path.string());
}

/// Prints throughput to `err` every two seconds until destroyed.
class ProgressReporter {
 public:
  ProgressReporter(std::atomic<std::uint64_t>& counter, std::uint64_t total,
                   std::ostream& err)
      : thread_([&counter, total, &err, this](std::stop_token stop) {
          const auto start = std::chrono::steady_clock::now();
          std::unique_lock lock(mutex_);
          while (!cv_.wait_for(lock, stop, std::chrono::seconds(2),
                              [&stop] { return stop.stop_requested(); })) {
            const double secs = std::chrono::duration<double>(
                                    std::chrono::steady_clock::now() - start)
                                    .count();
            const auto done = counter.load(std::memory_order_relaxed);
            err << fmt::format("progress: {}/{} samples, {:.0f} samples/s\n", done,
                               total, done / std::max(secs, 1e-9));
            err.flush();
          }
        }) {}

 private:
  std::mutex mutex_;
  std::condition_variable_any cv_;
  std::jthread thread_;
};

struct CommonFlags {
  std::string family = "general";
  std::string dims;
  std::uint64_t samples = 0;
  std::size_t chains = 16;
  std::uint64_t seed = 0;
  std::size_t burn_in = 0;
  std::size_t thinning = 1;
  std::size_t threads = 0;
  std::string output;
  bool progress = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--dims", f.dims, "Subsystem dimensions NAxNB (general family)");
  cmd->add_option("--samples", f.samples, "Total number of samples");
  cmd->add_option("--chains", f.chains, "Independent chains")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Run seed")->capture_default_str();
  cmd->add_option("--burn-in", f.burn_in, "Steps discarded per chain")->capture_default_str();
  cmd->add_option("--thinning", f.thinning, "Steps per emitted sample")->capture_default_str();
  cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores)")->capture_default_str();
  cmd->add_option("--output,-o", f.output, "Output file");
  cmd->add_flag("--progress", f.progress, "Print throughput to stderr");
}

std::optional<std::string> dims_flag(const CommonFlags& f) {
  return f.dims.empty() ? std::nullopt : std::optional<std::string>(f.dims);
}

ExperimentConfig make_config(const CommonFlags& f, const StateFamily& family,
                             std::vector<double> alphas) {
  if (f.samples < 1) throw UsageError("--samples must be >= 1");
  ExperimentConfig config;
  config.family = family;
  config.total_samples = f.samples;
  config.chains = f.chains;
  config.seed = f.seed;
  config.alphas = std::move(alphas);
  config.burn_in = f.burn_in;
  config.thinning = f.thinning;
  config.threads = f.threads;
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return config;
}

void run_with_progress(Experiment& exp, bool progress, std::ostream& err,
                       std::uint64_t per_chain_budget = std::numeric_limits<std::uint64_t>::max()) {
  std::atomic<std::uint64_t> counter{exp.samples_done()};
  Experiment::RunOptions options;
  options.progress = &counter;
  options.max_samples_per_chain = per_chain_budget;
  std::optional<ProgressReporter> reporter;
  if (progress) reporter.emplace(counter, exp.config().total_samples, err);
  exp.run(options);
}

struct RunFlags : CommonFlags {
  std::vector<std::string> alphas;
  std::string format = "csv";
  std::string checkpoint;
  std::uint64_t checkpoint_every = 0;
  std::string resume;
};

int cmd_run(const RunFlags& f, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  std::optional<Experiment> exp;
  if (!f.resume.empty()) {
    exp.emplace(Experiment::load_checkpoint(f.resume));
  } else {
    std::vector<double> alphas;
    try {
      for (const auto& a : f.alphas) alphas.push_back(parse_alpha(a));
    } catch (const InvalidParameter& e) {
      throw UsageError(e.what());
    }
    if (alphas.empty()) alphas = default_alphas();
    exp.emplace(make_config(f, resolve_family(f.family, dims_flag(f)), std::move(alphas)));
  }

  if (!f.checkpoint.empty() && f.checkpoint_every > 0) {
    while (!exp->finished()) {
      run_with_progress(*exp, f.progress, err, f.checkpoint_every);
      exp->save_checkpoint(f.checkpoint);
    }
  } else {
    run_with_progress(*exp, f.progress, err);
    if (!f.checkpoint.empty()) exp->save_checkpoint(f.checkpoint);
  }

  const auto& config = exp->config();
  const auto estimates = exp->estimates();
  if (exp->monotonicity_violations() > 0) {
    err << "warning: " << exp->monotonicity_violations()
        << " sampled states violate alpha-monotonicity of the Renyi criterion\n";
  }

  const std::string ext = f.format == "json" ? "json" : "csv";
  const fs::path path = resolve_output(
      f.output, fmt::format("entvol_{}_{}_seed{}.{}", config.family.name(),
                            config.family.dims_label(), config.seed, ext));
  if (f.format == "json") {
    RunManifest manifest;
    manifest.config = config_to_json(config);
    manifest.version = version();
    manifest.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    manifest.timestamp = utc_timestamp();
    manifest.monotonicity_violations = exp->monotonicity_violations();
    manifest.estimates = estimates;
    write_file(path, to_json(manifest).dump(2) + "\n");
  } else {
    write_file(path, format_run_csv(estimates, config.seed, config.total_samples));
  }

  out << fmt::format("{} {}  samples={} chains={} seed={}\n", config.family.name(),
                     config.family.dims_label(), config.total_samples, config.chains,
                     config.seed);
  out << format_run_table(estimates);
  out << "wrote " << path.string() << "\n";
  return kExitOk;
}

struct SweepFlags : CommonFlags {
  std::vector<std::string> families;
  std::string grid;
};

int cmd_sweep_alpha(const SweepFlags& f, std::ostream& out, std::ostream& err) {
  const std::vector<double> alphas = parse_alpha_grid(f.grid);
  if (f.families.empty()) throw UsageError("at least one --family is required");

  std::vector<ExperimentConfig> configs;
  for (const auto& name : f.families) {
    configs.push_back(make_config(f, resolve_family(name, dims_flag(f)), alphas));
  }

  std::string csv(kSweepCsvHeader);
  csv += '\n';
  for (const auto& config : configs) {
    Experiment exp(config);
    run_with_progress(exp, f.progress, err);
    out << fmt::format("{} {}\n", config.family.name(), config.family.dims_label());
    for (const auto& e : exp.estimates()) {
      if (e.criterion.kind != CriterionKind::renyi) continue;
      const double a = e.criterion.alpha;
      csv += fmt::format("{},{},{},{},{},{}\n", e.family, e.dims, format_alpha(a),
                         std::isinf(a) ? 0.0 : 1.0 / a, e.ratio, e.std_error);
      out << fmt::format("  alpha={:<8} R={:.6f} +- {:.6f}\n", format_alpha(a),
                         e.ratio, e.std_error);
    }
  }
  const fs::path path = resolve_output(
      f.output, fmt::format("entvol_sweep_alpha_seed{}.csv", f.seed));
  write_file(path, csv);
  out << "wrote " << path.string() << "\n";
  return kExitOk;
}

struct SliceFlags {
  std::size_t points = 1001;
  double a_z = 1.0 / 3.0;
  std::string output;
};

int cmd_slice_bd(const SliceFlags& f, std::ostream& out) {
  if (f.points < 2) throw UsageError("--points must be >= 2");
  std::string csv(kSliceCsvHeader);
  csv += '\n';
  auto flag = [](bool b) { return b ? "1" : "0"; };
  for (std::size_t i = 0; i < f.points; ++i) {
    const double x = -0.5 + static_cast<double>(i) / (f.points - 1);
    const auto p = evaluate_bell_slice(x, f.a_z);
    if (p.valid) {
      csv += fmt::format("{},1,{},{},{},{},{}\n", x, flag(p.verdict.ppt.fulfilled),
                         flag(p.verdict.reduction.fulfilled),
                         flag(p.verdict.majorization.fulfilled),
                         flag(p.verdict.renyi_at(kInfinity).fulfilled),
                         flag(p.verdict.renyi_at(1.0).fulfilled));
    } else {
      csv += fmt::format("{},0,,,,,\n", x);
    }
  }

  // Flip points on the positive half-line; the slice is symmetric in x.
  const double x_max = bisect_flip(
      [&](double x) { return evaluate_bell_slice(x, f.a_z).valid; }, 0.0, 0.5);
  out << fmt::format("bell-diagonal slice a=(x,-x,{})\n", f.a_z);
  out << fmt::format("  valid states       |x| <= {:.10f}\n", x_max);
  auto report = [&](const char* name, auto pick) {
    auto pred = [&](double x) { return pick(evaluate_bell_slice(x, f.a_z).verdict); };
    if (pred(x_max)) {
      out << fmt::format("  {:<18} fulfilled on the whole slice\n", name);
      return;
    }
    out << fmt::format("  {:<18} |x| <= {:.10f}\n", name, bisect_flip(pred, 0.0, x_max));
  };
  report("ppt", [](const CriterionVerdict& v) { return v.ppt.fulfilled; });
  report("reduction", [](const CriterionVerdict& v) { return v.reduction.fulfilled; });
  report("majorization", [](const CriterionVerdict& v) { return v.majorization.fulfilled; });
  report("renyi(inf)", [](const CriterionVerdict& v) { return v.renyi_at(kInfinity).fulfilled; });
  report("renyi(1)", [](const CriterionVerdict& v) { return v.renyi_at(1.0).fulfilled; });

  const fs::path path = resolve_output(f.output, "entvol_slice_bd.csv");
  write_file(path, csv);
  out << "wrote " << path.string() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Volume ratios of entanglement criteria via hit-and-run sampling",
               "entvol"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "Estimate volume ratios for one family");
  run_cmd->add_option("--family", run.family,
                      "general|bell-diagonal|x-state|rebit-rebit|qbqt-i|qbqt-ii")
      ->capture_default_str();
  add_common(run_cmd, run);
  run_cmd->add_option("--alpha", run.alphas, "Renyi order (repeatable; 'inf' allowed)");
  run_cmd->add_option("--format", run.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  run_cmd->add_option("--checkpoint", run.checkpoint, "Checkpoint file to write");
  run_cmd->add_option("--checkpoint-every", run.checkpoint_every,
                      "Samples per chain between checkpoint writes");
  run_cmd->add_option("--resume", run.resume, "Resume from a checkpoint file");

  SweepFlags sweep;
  auto* sweep_cmd = app.add_subcommand("sweep-alpha", "Renyi ratios over an alpha grid");
  sweep_cmd->add_option("--family", sweep.families, "Family (repeatable)");
  add_common(sweep_cmd, sweep);
  sweep_cmd->add_option("--alpha-grid", sweep.grid, "e.g. 1:10:19,inf")->required();

  SliceFlags slice;
  auto* slice_cmd = app.add_subcommand(
      "slice-bd", "Deterministic scan of the Bell-diagonal line a=(x,-x,a_z)");
  slice_cmd->add_option("--points", slice.points, "Grid points on x in [-1/2, 1/2]")
      ->capture_default_str();
  slice_cmd->add_option("--az", slice.a_z, "a_z of the slice")->capture_default_str();
  slice_cmd->add_option("--output,-o", slice.output, "Output CSV");

  std::vector<std::string> argv_storage{"entvol"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) {
      if (run.resume.empty() && run.samples < 1) {
        throw UsageError("--samples must be >= 1");
      }
      return cmd_run(run, out, err);
    }
    if (sweep_cmd->parsed()) return cmd_sweep_alpha(sweep, out, err);
    if (slice_cmd->parsed()) return cmd_slice_bd(slice, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidDimension& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace entvol::cli
