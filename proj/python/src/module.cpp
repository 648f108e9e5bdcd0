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

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>

#include "entvol/basis.hpp"
#include "entvol/bell_slice.hpp"
#include "entvol/estimator.hpp"

namespace py = pybind11;
using namespace entvol;

namespace {

Subsystem subsystem_of(const std::string& side) {
  if (side == "A" || side == "a") return Subsystem::A;
  if (side == "B" || side == "b") return Subsystem::B;
  throw InvalidParameter("subsystem must be 'A' or 'B', got '" + side + "'");
}

DensityMatrix density(const Matrix& m, int nA, int nB) {
  return DensityMatrix(nA, nB, m);
}

std::vector<double> alphas_or_default(const std::optional<std::vector<double>>& alphas) {
  return alphas ? *alphas : default_alphas();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hit-and-run estimation of entanglement-criterion volume ratios";
  m.attr("__version__") = "0.1.0";

  py::register_exception<Error>(m, "EntvolError", PyExc_ValueError);

  // --- basis ----------------------------------------------------------------
  m.def("generator_basis",
        [](int n) {
          const auto b = build_generator_basis(n);
          return std::vector<Matrix>(b.generators().begin(), b.generators().end());
        },
        py::arg("n"),
        "Orthonormal traceless Hermitian generators of su(n): symmetric, "
        "antisymmetric, then diagonal.");
  m.def("product_basis",
        [](int nA, int nB) {
          const auto b = build_product_basis(nA, nB);
          return std::vector<Matrix>(b.elements().begin(), b.elements().end());
        },
        py::arg("nA"), py::arg("nB"));

  // --- families and states --------------------------------------------------
  py::class_<StateFamily>(m, "Family")
      .def(py::init([](const std::string& name, int nA, int nB) {
             return StateFamily::make(parse_family_kind(name), nA, nB);
           }),
           py::arg("name"), py::arg("nA") = 2, py::arg("nB") = 2,
           "Family by command-line name: general, bell-diagonal, x-state, "
           "rebit-rebit, qbqt-i, qbqt-ii.")
      .def_property_readonly("name", [](const StateFamily& f) { return std::string(f.name()); })
      .def_property_readonly("dims", &StateFamily::dims_label)
      .def_property_readonly("nA", &StateFamily::subsystem_a)
      .def_property_readonly("nB", &StateFamily::subsystem_b)
      .def_property_readonly("dimension", &StateFamily::dimension)
      .def_property_readonly("ambient_dimension", &StateFamily::ambient_dimension)
      .def_property_readonly("directions",
                             [](const StateFamily& f) {
                               return std::vector<Matrix>(f.directions().begin(),
                                                          f.directions().end());
                             })
      .def("embed",
           [](const StateFamily& f, const RealVector& coords) {
             return f.embed(std::span<const double>(coords.data(), coords.size()));
           },
           py::arg("coords"))
      .def("__eq__", [](const StateFamily& a, const StateFamily& b) { return a == b; })
      .def("__repr__", [](const StateFamily& f) {
        return "Family('" + std::string(f.name()) + "', " + f.dims_label() + ")";
      });

  m.def("to_matrix",
        [](const StateFamily& f, const RealVector& coords) {
          return to_matrix({f, coords}).entries();
        },
        py::arg("family"), py::arg("coords"));
  m.def("to_bloch",
        [](const Matrix& rho, const StateFamily& f, double tol) {
          return to_bloch(rho, f, tol).coords;
        },
        py::arg("rho"), py::arg("family"), py::arg("tolerance") = 1e-10);
  m.def("is_state",
        [](const StateFamily& f, const RealVector& coords) { return is_state({f, coords}); },
        py::arg("family"), py::arg("coords"));
  m.def("partial_trace",
        [](const Matrix& rho, int nA, int nB, const std::string& traced_out) {
          return partial_trace(density(rho, nA, nB), subsystem_of(traced_out));
        },
        py::arg("rho"), py::arg("nA"), py::arg("nB"), py::arg("traced_out") = "B");
  m.def("partial_transpose",
        [](const Matrix& rho, int nA, int nB, const std::string& side) {
          return partial_transpose(density(rho, nA, nB), subsystem_of(side)).entries();
        },
        py::arg("rho"), py::arg("nA"), py::arg("nB"), py::arg("side") = "A");

  // --- criteria -------------------------------------------------------------
  py::class_<Verdict>(m, "Verdict")
      .def_readonly("fulfilled", &Verdict::fulfilled)
      .def_readonly("margin", &Verdict::margin)
      .def("__bool__", [](const Verdict& v) { return v.fulfilled; })
      .def("__repr__", [](const Verdict& v) {
        return std::string("Verdict(fulfilled=") + (v.fulfilled ? "True" : "False") +
               ", margin=" + std::to_string(v.margin) + ")";
      });
  py::class_<CriterionVerdict>(m, "CriterionVerdict")
      .def_readonly("ppt", &CriterionVerdict::ppt)
      .def_readonly("reduction", &CriterionVerdict::reduction)
      .def_readonly("majorization", &CriterionVerdict::majorization)
      .def_property_readonly("renyi",
                             [](const CriterionVerdict& v) {
                               std::vector<std::pair<double, Verdict>> out;
                               for (const auto& r : v.renyi) out.emplace_back(r.alpha, r.verdict);
                               return out;
                             })
      .def("renyi_at", &CriterionVerdict::renyi_at, py::arg("alpha"));

  m.def("check_ppt",
        [](const Matrix& rho, int nA, int nB) { return check_ppt(density(rho, nA, nB)); },
        py::arg("rho"), py::arg("nA"), py::arg("nB"));
  m.def("check_reduction",
        [](const Matrix& rho, int nA, int nB) { return check_reduction(density(rho, nA, nB)); },
        py::arg("rho"), py::arg("nA"), py::arg("nB"));
  m.def("check_majorization",
        [](const Matrix& rho, int nA, int nB) {
          return check_majorization(density(rho, nA, nB));
        },
        py::arg("rho"), py::arg("nA"), py::arg("nB"));
  m.def("check_renyi",
        [](const Matrix& rho, int nA, int nB, double alpha) {
          return check_renyi(density(rho, nA, nB), alpha);
        },
        py::arg("rho"), py::arg("nA"), py::arg("nB"), py::arg("alpha"));
  m.def("renyi_entropy", &renyi_entropy, py::arg("rho"), py::arg("alpha"),
        "Renyi entropy in nats; alpha=1 is von Neumann, alpha=inf is -ln(lambda_max).");
  m.def("evaluate_all",
        [](const Matrix& rho, int nA, int nB, const std::optional<std::vector<double>>& alphas) {
          const auto a = alphas_or_default(alphas);
          return evaluate_all(density(rho, nA, nB), a);
        },
        py::arg("rho"), py::arg("nA"), py::arg("nB"), py::arg("alphas") = py::none());
  m.def("bell_slice",
        [](double x, double a_z) {
          const auto p = evaluate_bell_slice(x, a_z);
          return py::make_tuple(p.valid, p.verdict);
        },
        py::arg("x"), py::arg("a_z") = 1.0 / 3.0,
        "Returns (valid, verdict) for the Bell-diagonal point a = (x, -x, a_z).");

  // --- sampling -------------------------------------------------------------
  m.def("chord_radius", &chord_radius, py::arg("ambient_dimension"));
  py::class_<HrChain>(m, "HrChain")
      .def(py::init([](const StateFamily& f, std::uint64_t seed, std::size_t burn_in,
                       std::size_t thinning) {
             return HrChain(HrConfig{f, seed, burn_in, thinning});
           }),
           py::arg("family"), py::arg("seed") = 0, py::arg("burn_in") = 0,
           py::arg("thinning") = 1)
      .def_property_readonly("current", &HrChain::current)
      .def_property_readonly("current_matrix", &HrChain::current_matrix)
      .def_property_readonly("steps_taken", &HrChain::steps_taken)
      .def_property_readonly("draws", &HrChain::draws)
      .def_property_readonly("radius", &HrChain::radius)
      .def("step", [](HrChain& c) { return RealVector(c.step()); })
      .def("sample",
           [](HrChain& c, std::size_t count) {
             Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out(
                 static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(c.family().dimension()));
             Eigen::Index row = 0;
             {
               py::gil_scoped_release release;
               c.sample(count, [&](const RealVector& x, const Matrix&) {
                 out.row(row++) = x.transpose();
               });
             }
             return out;
           },
           py::arg("count"), "Emits `count` samples as rows of a (count, dimension) array.")
      .def("save_state", &HrChain::save_state)
      .def("restore_state", &HrChain::restore_state, py::arg("state"));

  py::class_<RatioEstimate>(m, "RatioEstimate")
      .def_property_readonly("criterion",
                             [](const RatioEstimate& e) {
                               return std::string(criterion_kind_name(e.criterion.kind));
                             })
      .def_property_readonly("alpha",
                             [](const RatioEstimate& e) -> std::optional<double> {
                               if (std::isnan(e.criterion.alpha)) return std::nullopt;
                               return e.criterion.alpha;
                             })
      .def_property_readonly("label", [](const RatioEstimate& e) { return e.criterion.label(); })
      .def_readonly("family", &RatioEstimate::family)
      .def_readonly("dims", &RatioEstimate::dims)
      .def_readonly("count", &RatioEstimate::count_fulfilled)
      .def_readonly("total", &RatioEstimate::total)
      .def_readonly("ratio", &RatioEstimate::ratio)
      .def_readonly("std_error", &RatioEstimate::std_error)
      .def_readonly("binomial_error", &RatioEstimate::binomial_error)
      .def_readonly("inconclusive", &RatioEstimate::inconclusive)
      .def_readonly("per_chain_counts", &RatioEstimate::per_chain_counts)
      .def_readonly("per_chain_totals", &RatioEstimate::per_chain_totals)
      .def("__repr__", [](const RatioEstimate& e) {
        return "RatioEstimate(" + e.criterion.label() + ", " + e.family + " " + e.dims +
               ", ratio=" + std::to_string(e.ratio) + " +- " + std::to_string(e.std_error) + ")";
      });

  m.def("run_experiment",
        [](const StateFamily& f, std::uint64_t samples, std::size_t chains,
           std::uint64_t seed, const std::optional<std::vector<double>>& alphas,
           std::size_t burn_in, std::size_t thinning, std::size_t threads) {
          ExperimentConfig c;
          c.family = f;
          c.total_samples = samples;
          c.chains = chains;
          c.seed = seed;
          c.alphas = alphas_or_default(alphas);
          c.burn_in = burn_in;
          c.thinning = thinning;
          c.threads = threads;
          py::gil_scoped_release release;
          return run_experiment(c);
        },
        py::arg("family"), py::arg("samples"), py::arg("chains") = 16, py::arg("seed") = 0,
        py::arg("alphas") = py::none(), py::arg("burn_in") = 0, py::arg("thinning") = 1,
        py::arg("threads") = 0,
        "Runs independent hit-and-run chains; one RatioEstimate per criterion.");
}
