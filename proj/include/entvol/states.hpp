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

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entvol/types.hpp"

namespace entvol {

enum class FamilyKind {
  general,
  bell_diagonal,
  x_state,
  rebit_rebit,
  qubit_qutrit_i,
  qubit_qutrit_ii,
};

/// An affine slice I/n + span{D_1..D_d} of the Hermitian unit-trace matrices
/// on C^nA (x) C^nB. The directions D_k are pairwise Hilbert-Schmidt
/// orthonormal and traceless, so family coordinates are Euclidean.
///
/// Restricted families use the generator lists of the usual two-qubit and
/// qubit-qutrit subfamilies, each scaled by 1/2:
///   bell_diagonal    sigma_i (x) sigma_i,  i = x, y, z
///   x_state          Z(x)I, I(x)Z, XX, XY, YX, YY, ZZ
///   rebit_rebit      IX, IZ, XI, ZI, XX, XZ, YY, ZX, ZZ
///   qubit_qutrit_i   sigma_{x,y,z} (x) lambda_k, k = 1..4   (axis-major)
///   qubit_qutrit_ii  sigma_{x,y,z} (x) lambda_k, k = 1..8   (axis-major)
/// where lambda_k are the standard Gell-Mann matrices.
///
/// Copies are cheap and share the immutable direction list.
class StateFamily {
 public:
  static StateFamily general(int nA, int nB);
  static StateFamily bell_diagonal();
  static StateFamily x_state();
  static StateFamily rebit_rebit();
  static StateFamily qubit_qutrit_i();
  static StateFamily qubit_qutrit_ii();
  static StateFamily make(FamilyKind kind, int nA = 2, int nB = 2);

  FamilyKind kind() const noexcept { return kind_; }
  int subsystem_a() const noexcept { return nA_; }
  int subsystem_b() const noexcept { return nB_; }
  /// Total Hilbert-space dimension nA * nB.
  int ambient_dimension() const noexcept { return nA_ * nB_; }
  /// Number of real coordinates.
  std::size_t dimension() const noexcept { return directions_->size(); }
  std::span<const Matrix> directions() const noexcept { return *directions_; }

  /// Short name used on the command line ("general", "bell-diagonal", ...).
  std::string_view name() const noexcept;
  /// "NAxNB"
  std::string dims_label() const;

  /// I/n + sum_k coords[k] D_k.
  Matrix embed(std::span<const double> coords) const;
  /// sum_k coeffs[k] D_k (no identity part).
  Matrix direction_matrix(std::span<const double> coeffs) const;

  friend bool operator==(const StateFamily& a, const StateFamily& b) noexcept {
    return a.kind_ == b.kind_ && a.nA_ == b.nA_ && a.nB_ == b.nB_;
  }

 private:
  StateFamily(FamilyKind kind, int nA, int nB,
              std::shared_ptr<const std::vector<Matrix>> directions);

  FamilyKind kind_;
  int nA_;
  int nB_;
  std::shared_ptr<const std::vector<Matrix>> directions_;
};

FamilyKind parse_family_kind(std::string_view name);
std::string_view family_kind_name(FamilyKind kind);

struct BlochVector {
  StateFamily family;
  RealVector coords;
};

/// Hermitian unit-trace operator on C^nA (x) C^nB. Positivity is not enforced
/// at construction: embeddings of arbitrary coordinates and partial
/// transposes are carried in the same type. Use is_positive() or validate().
class DensityMatrix {
 public:
  DensityMatrix(int nA, int nB, Matrix entries);

  int subsystem_a() const noexcept { return nA_; }
  int subsystem_b() const noexcept { return nB_; }
  int dimension() const noexcept { return nA_ * nB_; }
  const Matrix& entries() const noexcept { return entries_; }

  double min_eigenvalue() const;
  bool is_positive(double tolerance = kPsdTolerance) const;

  /// Throws InvalidParameter if the matrix is not Hermitian, unit trace and
  /// positive semidefinite within tolerance.
  void validate(double tolerance = kPsdTolerance) const;

 private:
  int nA_;
  int nB_;
  Matrix entries_;
};

/// Smallest eigenvalue of a Hermitian matrix (only the lower triangle is read).
double min_eigenvalue(const Matrix& hermitian);

/// Ascending eigenvalues of a Hermitian matrix.
RealVector eigenvalues(const Matrix& hermitian);

DensityMatrix to_matrix(const BlochVector& v);

/// Coordinates Tr(m D_k). Throws NotInFamily if m is not reproduced by its
/// projection within `tolerance` (max abs entry).
BlochVector to_bloch(const Matrix& m, const StateFamily& family,
                     double tolerance = 1e-10);

bool is_state(const BlochVector& v);

/// Tr_B (Subsystem::B, result nA x nA) or Tr_A (Subsystem::A, nB x nB).
Matrix partial_trace(const DensityMatrix& m, Subsystem traced_out);

/// Transpose on the given tensor factor in the computational product basis:
///   <ij| rho^{T_A} |kl> = <kj| rho |il>.
DensityMatrix partial_transpose(const DensityMatrix& m, Subsystem transposed);

}  // namespace entvol
