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

// Acceptance suite: one PASS/FAIL line per criterion. Run with a criterion
// name to evaluate only that one; with no arguments every criterion runs.
// Exit status is non-zero if any evaluated criterion fails.
//
// Seeds and chain layouts are fixed here once and never tuned to a result.

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "oracles.hpp"
#include "entvol/bell_slice.hpp"
#include "entvol/estimator.hpp"

using namespace entvol;

namespace {

constexpr std::uint64_t kSeed = 2026;

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;

  void require(bool ok, std::string detail) {
    pass = pass && ok;
    details.push_back((ok ? "ok    " : "MISS  ") + std::move(detail));
  }
};

std::string fmt_double(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

struct SampleSpec {
  StateFamily family;
  std::uint64_t samples;
  std::size_t chains = 16;
  std::size_t burn_in = 1000;
  std::vector<double> alphas = default_alphas();
};

std::vector<RatioEstimate> sample(const SampleSpec& spec, const SampleObserver& observer = {}) {
  ExperimentConfig c;
  c.family = spec.family;
  c.total_samples = spec.samples;
  c.chains = spec.chains;
  c.seed = kSeed;
  c.burn_in = spec.burn_in;
  c.alphas = spec.alphas;
  return run_experiment(c, observer);
}

const RatioEstimate& find(const std::vector<RatioEstimate>& est, CriterionId id) {
  for (const auto& e : est) {
    if (e.criterion == id) return e;
  }
  throw std::runtime_error("missing estimate " + id.label());
}

const CriterionId kPpt{CriterionKind::ppt};
const CriterionId kReduction{CriterionKind::reduction};
const CriterionId kMajorization{CriterionKind::majorization};
CriterionId renyi(double a) { return {CriterionKind::renyi, a}; }

void require_ratio(Outcome& o, const std::vector<RatioEstimate>& est, CriterionId id,
                   double target, double tolerance) {
  const auto& e = find(est, id);
  const bool ok = std::abs(e.ratio - target) <= tolerance;
  o.require(ok, "R_" + id.label() + " = " + fmt_double("%.5f", e.ratio) + " +- " +
                    fmt_double("%.5f", e.std_error) + "  (target " +
                    fmt_double("%.4f", target) + " +- " + fmt_double("%g", tolerance) +
                    ", N=" + std::to_string(e.total) + ")");
}

bool agree4(const CriterionVerdict& v) {
  const bool p = v.ppt.fulfilled;
  return v.reduction.fulfilled == p && v.majorization.fulfilled == p &&
         v.renyi_at(kInfinity).fulfilled == p;
}

// --- criteria -------------------------------------------------------------

Outcome bell_diagonal() {
  Outcome o;
  std::atomic<std::uint64_t> disagreements{0};
  const auto est = sample({StateFamily::bell_diagonal(), 1'000'000},
                          [&](std::size_t, const RealVector&, const CriterionVerdict& v) {
                            if (!agree4(v)) disagreements.fetch_add(1);
                          });
  for (const auto& id : {kPpt, kReduction, kMajorization, renyi(kInfinity)}) {
    require_ratio(o, est, id, 0.5, 0.005);
  }
  o.require(disagreements == 0, "per-state ppt/reduction/majorization/renyi(inf) "
                                "disagreements: " + std::to_string(disagreements.load()));
  o.summary = "Bell-diagonal ratios 0.5 and per-state agreement at 1e6 samples";
  return o;
}

Outcome general_2x2() {
  Outcome o;
  const auto est = sample({StateFamily::general(2, 2), 1'000'000});
  require_ratio(o, est, kPpt, 0.2424, 0.004);
  require_ratio(o, est, kMajorization, 0.7846, 0.005);
  require_ratio(o, est, renyi(1.0), 0.9953, 0.002);
  o.summary = "general 2x2 ratios at 1e6 samples";
  return o;
}

Outcome rebit_rebit() {
  Outcome o;
  const auto est = sample({StateFamily::rebit_rebit(), 1'000'000});
  require_ratio(o, est, kPpt, 0.4531, 0.005);
  const auto& e = find(est, kPpt);
  o.details.push_back("      analytic 29/64 = 0.453125, deviation " +
                      fmt_double("%+.5f", e.ratio - 29.0 / 64.0));
  o.summary = "rebit-rebit R_ppt vs 29/64 at 1e6 samples";
  return o;
}

Outcome x_state() {
  Outcome o;
  const auto est = sample({StateFamily::x_state(), 1'000'000});
  require_ratio(o, est, kPpt, 0.3999, 0.005);
  require_ratio(o, est, kMajorization, 0.6469, 0.005);
  require_ratio(o, est, renyi(kInfinity), 0.6469, 0.005);
  o.summary = "X-state ratios at 1e6 samples";
  return o;
}

Outcome general_2x3() {
  Outcome o;
  std::atomic<std::uint64_t> disagreements{0};
  const auto est = sample({StateFamily::general(2, 3), 1'000'000},
                          [&](std::size_t, const RealVector&, const CriterionVerdict& v) {
                            if (v.ppt.fulfilled != v.reduction.fulfilled) {
                              disagreements.fetch_add(1);
                            }
                          });
  require_ratio(o, est, kPpt, 0.0267, 0.003);
  o.require(disagreements == 0, "per-state ppt <=> reduction disagreements: " +
                                    std::to_string(disagreements.load()));
  o.summary = "general 2x3 R_ppt and ppt <=> reduction at 1e6 samples";
  return o;
}

Outcome qbqt_i() {
  Outcome o;
  std::atomic<std::uint64_t> disagreements{0};
  const auto est = sample({StateFamily::qubit_qutrit_i(), 300'000},
                          [&](std::size_t, const RealVector&, const CriterionVerdict& v) {
                            if (!agree4(v)) disagreements.fetch_add(1);
                          });
  require_ratio(o, est, kPpt, 0.194, 0.006);
  o.require(disagreements == 0, "per-state ppt/reduction/majorization/renyi(inf) "
                                "disagreements: " + std::to_string(disagreements.load()));
  o.summary = "qubit-qutrit (i) R_ppt and per-state agreement at 3e5 samples";
  return o;
}

Outcome bell_slice() {
  Outcome o;
  const double x_valid = bisect_flip(
      [](double x) { return evaluate_bell_slice(x).valid; }, 0.0, 0.5);
  o.details.push_back("      slice is a state for |x| <= " + fmt_double("%.12f", x_valid));

  using Pick = std::function<bool(const CriterionVerdict&)>;
  const std::vector<std::pair<std::string, Pick>> sharp{
      {"ppt", [](const CriterionVerdict& v) { return v.ppt.fulfilled; }},
      {"reduction", [](const CriterionVerdict& v) { return v.reduction.fulfilled; }},
      {"majorization", [](const CriterionVerdict& v) { return v.majorization.fulfilled; }},
      {"renyi(inf)", [](const CriterionVerdict& v) { return v.renyi_at(kInfinity).fulfilled; }},
  };
  // The slice is symmetric under x -> -x; bisect both half-lines.
  for (const auto& [name, pick] : sharp) {
    for (double sign : {1.0, -1.0}) {
      const double flip = sign * bisect_flip(
          [&](double t) { return pick(evaluate_bell_slice(sign * t).verdict); }, 0.0,
          x_valid);
      o.require(std::abs(std::abs(flip) - 1.0 / 12.0) <= 1e-9,
                name + " flips at x = " + fmt_double("%+.12f", flip) + "  (|x| = 1/12 +- 1e-9)");
    }
  }
  const double s1 = bisect_flip(
      [](double t) { return evaluate_bell_slice(t).verdict.renyi_at(1.0).fulfilled; }, 0.0,
      x_valid);
  o.require(s1 > 0.3872 && s1 < 0.3874,
            "renyi(1) flips at x = " + fmt_double("%.12f", s1) + "  (in (0.3872, 0.3874))");
  o.summary = "Bell-diagonal slice a=(x,-x,1/3) verdict flips by bisection";
  return o;
}

Outcome implication_chain() {
  Outcome o;
  const std::vector<double> alphas{1.0, 1.5, 2.0, 5.0, 10.0, kInfinity};
  struct Layout {
    StateFamily family;
    std::size_t chains;
    std::size_t burn_in;
  };
  const std::vector<Layout> layouts{{StateFamily::general(2, 2), 16, 1000},
                                    {StateFamily::general(2, 3), 16, 1000},
                                    {StateFamily::general(3, 3), 8, 2000}};
  for (const auto& layout : layouts) {
    // Links: ppt=>reduction, reduction=>majorization, majorization=>renyi(inf),
    // renyi(inf)=>renyi(a) for each finite a, and a<b: renyi(b)=>renyi(a).
    std::atomic<std::uint64_t> ppt_red{0}, red_maj{0}, maj_inf{0}, inf_finite{0},
        monotone{0}, states_inf_finite{0}, states_monotone{0};
    const auto est = sample(
        {layout.family, 100'000, layout.chains, layout.burn_in, alphas},
        [&](std::size_t, const RealVector&, const CriterionVerdict& v) {
          if (v.ppt.fulfilled && !v.reduction.fulfilled) ppt_red.fetch_add(1);
          if (v.reduction.fulfilled && !v.majorization.fulfilled) red_maj.fetch_add(1);
          const bool inf_ok = v.renyi_at(kInfinity).fulfilled;
          if (v.majorization.fulfilled && !inf_ok) maj_inf.fetch_add(1);
          bool any_inf = false, any_mono = false;
          for (std::size_t i = 0; i < alphas.size(); ++i) {
            const bool ok_i = v.renyi[i].verdict.fulfilled;
            if (std::isfinite(alphas[i]) && inf_ok && !ok_i) {
              inf_finite.fetch_add(1);
              any_inf = true;
            }
            for (std::size_t j = i + 1; j < alphas.size(); ++j) {
              if (v.renyi[j].verdict.fulfilled && !ok_i) {
                monotone.fetch_add(1);
                any_mono = true;
              }
            }
          }
          states_inf_finite += any_inf;
          states_monotone += any_mono;
        });
    const std::string dims = layout.family.dims_label();
    const std::uint64_t n = find(est, kPpt).total;
    o.require(n >= 100'000, dims + " sampled states: " + std::to_string(n));
    o.require(ppt_red == 0, dims + " ppt => reduction violations: " +
                                std::to_string(ppt_red.load()));
    o.require(red_maj == 0, dims + " reduction => majorization violations: " +
                                std::to_string(red_maj.load()));
    o.require(maj_inf == 0, dims + " majorization => renyi(inf) violations: " +
                                std::to_string(maj_inf.load()));
    o.require(inf_finite == 0, dims + " renyi(inf) => renyi(finite) violations: " +
                                   std::to_string(inf_finite.load()) + " pairs in " +
                                   std::to_string(states_inf_finite.load()) + " states");
    o.require(monotone == 0, dims + " alpha-monotonicity violations: " +
                                 std::to_string(monotone.load()) + " pairs in " +
                                 std::to_string(states_monotone.load()) + " states");
  }
  o.summary = "implication chain and alpha-monotonicity over 1e5 states in 2x2, 2x3, 3x3";
  return o;
}

Outcome oracle_ppt() {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  int agree = 0, total = 0, ppt_count = 0;
  auto compare = [&](const Matrix& rho) {
    const auto ev = oracle::hermitian_eigenvalues(oracle::partial_transpose_a(rho, 2, 2));
    const bool oracle_ppt = ev.front() >= -kPsdTolerance;
    const bool lib_ppt = check_ppt(DensityMatrix(2, 2, rho)).fulfilled;
    agree += oracle_ppt == lib_ppt;
    ppt_count += oracle_ppt;
    ++total;
  };
  // Half Ginibre-distributed states, half points from a hit-and-run walk.
  for (int i = 0; i < 500; ++i) compare(oracle::random_density(4, rng));
  HrConfig hc{StateFamily::general(2, 2)};
  hc.seed = kSeed;
  HrChain chain(hc);
  chain.sample(500, [&](const RealVector&, const Matrix& rho) { compare(rho); });
  o.require(total == 1000 && agree == total,
            "check_ppt agrees with the index-definition oracle on " + std::to_string(agree) +
                "/" + std::to_string(total) + " states (" + std::to_string(ppt_count) +
                " PPT)");
  o.summary = "check_ppt vs brute-force partial-transpose oracle on 1e3 random 2x2 states";
  return o;
}

Outcome general_3x3() {
  Outcome o;
  const auto est = sample({StateFamily::general(3, 3), 100'000, 8, 2000});
  const auto& e = find(est, kPpt);
  o.require(e.ratio < 0.01, "R_ppt = " + fmt_double("%.5f", e.ratio) + " +- " +
                                fmt_double("%.5f", e.std_error) + " < 0.01 (N=" +
                                std::to_string(e.total) + ")");
  o.summary = "general 3x3 R_ppt < 0.01 at 1e5 samples";
  return o;
}

struct Entry {
  std::string_view name;
  Outcome (*run)();
};

constexpr std::array<Entry, 10> kCriteria{{
    {"bell_diagonal", bell_diagonal},
    {"general_2x2", general_2x2},
    {"rebit_rebit", rebit_rebit},
    {"x_state", x_state},
    {"general_2x3", general_2x3},
    {"qbqt_i", qbqt_i},
    {"bell_slice", bell_slice},
    {"implication_chain", implication_chain},
    {"oracle_ppt", oracle_ppt},
    {"general_3x3", general_3x3},
}};

}  // namespace

int main(int argc, char** argv) {
  std::vector<const Entry*> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string_view want = argv[i];
    const Entry* hit = nullptr;
    for (const auto& e : kCriteria) {
      if (e.name == want) hit = &e;
    }
    if (!hit) {
      std::fprintf(stderr, "unknown criterion '%s'; known:", argv[i]);
      for (const auto& e : kCriteria) std::fprintf(stderr, " %s", e.name.data());
      std::fprintf(stderr, "\n");
      return 2;
    }
    selected.push_back(hit);
  }
  if (selected.empty()) {
    for (const auto& e : kCriteria) selected.push_back(&e);
  }

  int failures = 0;
  for (const Entry* e : selected) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = e->run();
    } catch (const std::exception& ex) {
      out.pass = false;
      out.summary = std::string("threw: ") + ex.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %-18s %s (%.1fs)\n", out.pass ? "PASS" : "FAIL", e->name.data(),
                out.summary.c_str(), secs);
    for (const auto& d : out.details) std::printf("       %s\n", d.c_str());
    std::fflush(stdout);
    failures += !out.pass;
  }
  return failures == 0 ? 0 : 1;
}
