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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "entvol/types.hpp"

namespace entvol {

/// Orthonormal traceless Hermitian basis of su(n) (generalized Gell-Mann
/// matrices scaled to unit Hilbert-Schmidt norm).
///
/// Element order is fixed:
///   1. symmetric    (E_jk + E_kj) / sqrt(2)       for j < k, lexicographic
///   2. antisymmetric -i (E_jk - E_kj) / sqrt(2)   for j < k, lexicographic
///   3. diagonal     diag(1,...,1,-l,0,...) / sqrt(l(l+1))   for l = 1..n-1
/// For n = 2 this is (sigma_x, sigma_y, sigma_z) / sqrt(2).
class GeneratorBasis {
 public:
  explicit GeneratorBasis(int n);

  int dimension() const noexcept { return n_; }
  std::size_t size() const noexcept { return generators_.size(); }
  const Matrix& operator[](std::size_t i) const { return generators_[i]; }
  std::span<const Matrix> generators() const noexcept { return generators_; }

 private:
  int n_;
  std::vector<Matrix> generators_;
};

GeneratorBasis build_generator_basis(int n);

/// Orthonormal traceless basis of Hermitian operators on C^nA (x) C^nB,
/// split into three consecutive blocks:
///   T_i (x) I/sqrt(nB),  I/sqrt(nA) (x) T_j,  T_i (x) T_j
/// with i, j in generator-basis order and the last block ordered by (i, j).
class ProductBasis {
 public:
  ProductBasis(int nA, int nB);

  int subsystem_a() const noexcept { return nA_; }
  int subsystem_b() const noexcept { return nB_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const Matrix& operator[](std::size_t i) const { return elements_[i]; }
  std::span<const Matrix> elements() const noexcept { return elements_; }

  /// {nA^2 - 1, nB^2 - 1, (nA^2 - 1)(nB^2 - 1)}
  std::array<std::size_t, 3> block_sizes() const noexcept;

 private:
  int nA_;
  int nB_;
  std::vector<Matrix> elements_;
};

ProductBasis build_product_basis(int nA, int nB);

/// Pauli matrix, axis in {'x', 'y', 'z'}.
Matrix pauli(char axis);

/// Standard (unnormalized) Gell-Mann matrix lambda_k, k = 1..8, in the usual
/// physics numbering; Tr(lambda_k lambda_l) = 2 delta_kl.
Matrix gell_mann(int k);

Matrix kron(const Matrix& a, const Matrix& b);

/// Real part of Tr(A^dagger B). For Hermitian arguments this is the
/// Hilbert-Schmidt inner product.
double hs_inner(const Matrix& a, const Matrix& b);

/// Gram matrix of pairwise Hilbert-Schmidt inner products.
Eigen::MatrixXd gram_matrix(std::span<const Matrix> elements);

}  // namespace entvol
