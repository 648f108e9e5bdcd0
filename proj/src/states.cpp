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

#include "entvol/states.hpp"

#include <cmath>
#include <string>

#include "entvol/basis.hpp"

namespace entvol {

namespace {

using DirectionList = std::vector<Matrix>;

std::shared_ptr<const DirectionList> half_kron_list(
    std::initializer_list<std::pair<char, char>> pairs) {
  const Matrix id = Matrix::Identity(2, 2);
  auto factor = [&](char c) { return c == 'I' ? id : pauli(c); };
  auto out = std::make_shared<DirectionList>();
  for (const auto& [a, b] : pairs) {
    out->push_back(0.5 * kron(factor(a), factor(b)));
  }
  return out;
}

std::shared_ptr<const DirectionList> qubit_qutrit_list(int gell_mann_count) {
  auto out = std::make_shared<DirectionList>();
  for (char axis : {'x', 'y', 'z'}) {
    const Matrix s = pauli(axis);
    for (int k = 1; k <= gell_mann_count; ++k) {
      out->push_back(0.5 * kron(s, gell_mann(k)));
    }
  }
  return out;
}

}  // namespace

StateFamily::StateFamily(FamilyKind kind, int nA, int nB,
                         std::shared_ptr<const std::vector<Matrix>> directions)
    : kind_(kind), nA_(nA), nB_(nB), directions_(std::move(directions)) {}

StateFamily StateFamily::general(int nA, int nB) {
  ProductBasis basis(nA, nB);
  auto list = std::make_shared<DirectionList>(basis.elements().begin(),
                                              basis.elements().end());
  return StateFamily(FamilyKind::general, nA, nB, std::move(list));
}

StateFamily StateFamily::bell_diagonal() {
  return StateFamily(FamilyKind::bell_diagonal, 2, 2,
                     half_kron_list({{'x', 'x'}, {'y', 'y'}, {'z', 'z'}}));
}

StateFamily StateFamily::x_state() {
  return StateFamily(FamilyKind::x_state, 2, 2,
                     half_kron_list({{'z', 'I'},
                                     {'I', 'z'},
                                     {'x', 'x'},
                                     {'x', 'y'},
                                     {'y', 'x'},
                                     {'y', 'y'},
                                     {'z', 'z'}}));
}

StateFamily StateFamily::rebit_rebit() {
  return StateFamily(FamilyKind::rebit_rebit, 2, 2,
                     half_kron_list({{'I', 'x'},
                                     {'I', 'z'},
                                     {'x', 'I'},
                                     {'z', 'I'},
                                     {'x', 'x'},
                                     {'x', 'z'},
                                     {'y', 'y'},
                                     {'z', 'x'},
                                     {'z', 'z'}}));
}

StateFamily StateFamily::qubit_qutrit_i() {
  return StateFamily(FamilyKind::qubit_qutrit_i, 2, 3, qubit_qutrit_list(4));
}

StateFamily StateFamily::qubit_qutrit_ii() {
  return StateFamily(FamilyKind::qubit_qutrit_ii, 2, 3, qubit_qutrit_list(8));
}

StateFamily StateFamily::make(FamilyKind kind, int nA, int nB) {
  switch (kind) {
    case FamilyKind::general:
      return general(nA, nB);
    case FamilyKind::bell_diagonal:
      return bell_diagonal();
    case FamilyKind::x_state:
      return x_state();
    case FamilyKind::rebit_rebit:
      return rebit_rebit();
    case FamilyKind::qubit_qutrit_i:
      return qubit_qutrit_i();
    case FamilyKind::qubit_qutrit_ii:
      return qubit_qutrit_ii();
  }
  throw InvalidParameter("unknown family kind");
}

std::string_view StateFamily::name() const noexcept {
  return family_kind_name(kind_);
}

std::string StateFamily::dims_label() const {
  return std::to_string(nA_) + "x" + std::to_string(nB_);
}

Matrix StateFamily::direction_matrix(std::span<const double> coeffs) const {
  if (coeffs.size() != dimension()) {
    throw DimensionMismatch("expected " + std::to_string(dimension()) +
                            " coordinates, got " +
                            std::to_string(coeffs.size()));
  }
  const int n = ambient_dimension();
  Matrix out = Matrix::Zero(n, n);
  const auto& dirs = *directions_;
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    if (coeffs[k] != 0.0) out += coeffs[k] * dirs[k];
  }
  return out;
}

Matrix StateFamily::embed(std::span<const double> coords) const {
  Matrix out = direction_matrix(coords);
  const int n = ambient_dimension();
  out.diagonal().array() += Complex(1.0 / n, 0.0);
  return out;
}

FamilyKind parse_family_kind(std::string_view name) {
  if (name == "general") return FamilyKind::general;
  if (name == "bell-diagonal") return FamilyKind::bell_diagonal;
  if (name == "x-state") return FamilyKind::x_state;
  if (name == "rebit-rebit") return FamilyKind::rebit_rebit;
  if (name == "qbqt-i") return FamilyKind::qubit_qutrit_i;
  if (name == "qbqt-ii") return FamilyKind::qubit_qutrit_ii;
  throw InvalidParameter("unknown family '" + std::string(name) + "'");
}

std::string_view family_kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::general: return "general";
    case FamilyKind::bell_diagonal: return "bell-diagonal";
    case FamilyKind::x_state: return "x-state";
    case FamilyKind::rebit_rebit: return "rebit-rebit";
    case FamilyKind::qubit_qutrit_i: return "qbqt-i";
    case FamilyKind::qubit_qutrit_ii: return "qbqt-ii";
  }
  return "unknown";
}

DensityMatrix::DensityMatrix(int nA, int nB, Matrix entries)
    : nA_(nA), nB_(nB), entries_(std::move(entries)) {
  if (nA < 1 || nB < 1 || entries_.rows() != nA * nB ||
      entries_.cols() != nA * nB) {
    throw DimensionMismatch("density matrix must be " +
                            std::to_string(nA * nB) + "x" +
                            std::to_string(nA * nB));
  }
}

double DensityMatrix::min_eigenvalue() const {
  return entvol::min_eigenvalue(entries_);
}

bool DensityMatrix::is_positive(double tolerance) const {
  return min_eigenvalue() >= -tolerance;
}

void DensityMatrix::validate(double tolerance) const {
  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tolerance) {
    throw InvalidParameter("matrix is not Hermitian (deviation " +
                           std::to_string(herm) + ")");
  }
  const double trace_err = std::abs(entries_.trace() - Complex(1.0, 0.0));
  if (trace_err > tolerance) {
    throw InvalidParameter("matrix trace differs from 1 by " +
                           std::to_string(trace_err));
  }
  const double lmin = min_eigenvalue();
  if (lmin < -tolerance) {
    throw InvalidParameter("matrix has negative eigenvalue " +
                           std::to_string(lmin));
  }
}

RealVector eigenvalues(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian,
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double min_eigenvalue(const Matrix& hermitian) {
  return eigenvalues(hermitian)(0);
}

DensityMatrix to_matrix(const BlochVector& v) {
  const auto& f = v.family;
  return DensityMatrix(
      f.subsystem_a(), f.subsystem_b(),
      f.embed(std::span<const double>(v.coords.data(), v.coords.size())));
}

BlochVector to_bloch(const Matrix& m, const StateFamily& family,
                     double tolerance) {
  const int n = family.ambient_dimension();
  if (m.rows() != n || m.cols() != n) {
    throw DimensionMismatch("matrix must be " + std::to_string(n) + "x" +
                            std::to_string(n) + " for family " +
                            std::string(family.name()));
  }
  const auto dirs = family.directions();
  RealVector coords(static_cast<Eigen::Index>(dirs.size()));
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    coords(static_cast<Eigen::Index>(k)) = hs_inner(dirs[k], m);
  }
  const Matrix rebuilt =
      family.embed(std::span<const double>(coords.data(), coords.size()));
  const double err = (rebuilt - m).cwiseAbs().maxCoeff();
  if (err > tolerance) {
    throw NotInFamily("matrix lies outside the " + std::string(family.name()) +
                      " family (residual " + std::to_string(err) + ")");
  }
  return BlochVector{family, std::move(coords)};
}

bool is_state(const BlochVector& v) {
  if (static_cast<std::size_t>(v.coords.size()) != v.family.dimension()) {
    throw DimensionMismatch("coordinate count does not match family");
  }
  // Outside the purity ball Tr rho^2 <= 1 nothing can be a state.
  const double n = v.family.ambient_dimension();
  if (v.coords.squaredNorm() > (n - 1.0) / n + kPsdTolerance) return false;
  return to_matrix(v).min_eigenvalue() >= -kPsdTolerance;
}

Matrix partial_trace(const DensityMatrix& m, Subsystem traced_out) {
  const int nA = m.subsystem_a();
  const int nB = m.subsystem_b();
  const Matrix& rho = m.entries();
  if (traced_out == Subsystem::B) {
    Matrix out = Matrix::Zero(nA, nA);
    for (int i = 0; i < nA; ++i)
      for (int k = 0; k < nA; ++k)
        for (int j = 0; j < nB; ++j) out(i, k) += rho(i * nB + j, k * nB + j);
    return out;
  }
  Matrix out = Matrix::Zero(nB, nB);
  for (int j = 0; j < nB; ++j)
    for (int l = 0; l < nB; ++l)
      for (int i = 0; i < nA; ++i) out(j, l) += rho(i * nB + j, i * nB + l);
  return out;
}

DensityMatrix partial_transpose(const DensityMatrix& m, Subsystem transposed) {
  const int nA = m.subsystem_a();
  const int nB = m.subsystem_b();
  const Matrix& rho = m.entries();
  Matrix out(nA * nB, nA * nB);
  for (int i = 0; i < nA; ++i)
    for (int j = 0; j < nB; ++j)
      for (int k = 0; k < nA; ++k)
        for (int l = 0; l < nB; ++l) {
          out(i * nB + j, k * nB + l) =
              transposed == Subsystem::A ? rho(k * nB + j, i * nB + l)
                                         : rho(i * nB + l, k * nB + j);
        }
  return DensityMatrix(nA, nB, std::move(out));
}

}  // namespace entvol
