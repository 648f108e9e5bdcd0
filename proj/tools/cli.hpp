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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "entvol/estimator.hpp"

namespace entvol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

/// Bumped whenever a CSV column is added, removed or reinterpreted.
inline constexpr int kCsvSchemaVersion = 1;
inline constexpr std::string_view kRunCsvHeader =
    "family,dims,criterion,alpha,count,total,ratio,std_error,inconclusive,seed,samples";
inline constexpr std::string_view kSweepCsvHeader =
    "family,dims,alpha,one_over_alpha,ratio,std_error";
inline constexpr std::string_view kSliceCsvHeader =
    "x,valid,ppt,reduction,majorization,renyi_inf,renyi_1";

/// Environment variable naming the directory for outputs written without an
/// explicit --output.
inline constexpr const char* kOutputDirEnv = "ENTVOL_OUTPUT_DIR";

std::string version();

/// Thrown for bad flag values; maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// "2x3" -> {2, 3}
std::pair<int, int> parse_dims(std::string_view text);

/// Family from its CLI name and an optional dims flag. Restricted families
/// reject dims that differ from their own.
StateFamily resolve_family(std::string_view name,
                           const std::optional<std::string>& dims);

/// "1:10:19,inf" -> 19 evenly spaced points on [1, 10] followed by inf.
/// Tokens are comma separated; each is a number, "inf", or start:stop:count.
std::vector<double> parse_alpha_grid(std::string_view text);

struct RunManifest {
  nlohmann::json config;
  std::string version;
  double duration_seconds = 0.0;
  std::string timestamp;
  std::uint64_t monotonicity_violations = 0;
  std::vector<RatioEstimate> estimates;
};

nlohmann::json to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const ExperimentConfig& config);

std::string format_run_csv(const std::vector<RatioEstimate>& estimates,
                           std::uint64_t seed, std::uint64_t samples);
std::string format_run_table(const std::vector<RatioEstimate>& estimates);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace entvol::cli
