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

#include "entvol/basis.hpp"

#include <cmath>
#include <string>

namespace entvol {

namespace {

void require_dimension(int n, const char* what) {
  if (n < 2) {
    throw InvalidDimension(std::string(what) + " must be >= 2, got " +
                           std::to_string(n));
  }
}

}  // namespace

GeneratorBasis::GeneratorBasis(int n) : n_(n) {
  require_dimension(n, "subsystem dimension");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  generators_.reserve(static_cast<std::size_t>(n * n - 1));

  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Matrix m = Matrix::Zero(n, n);
      m(j, k) = inv_sqrt2;
      m(k, j) = inv_sqrt2;
      generators_.push_back(std::move(m));
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Matrix m = Matrix::Zero(n, n);
      m(j, k) = Complex(0.0, -inv_sqrt2);
      m(k, j) = Complex(0.0, inv_sqrt2);
      generators_.push_back(std::move(m));
    }
  }
  for (int l = 1; l < n; ++l) {
    Matrix m = Matrix::Zero(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (int i = 0; i < l; ++i) m(i, i) = scale;
    m(l, l) = -static_cast<double>(l) * scale;
    generators_.push_back(std::move(m));
  }
}

GeneratorBasis build_generator_basis(int n) { return GeneratorBasis(n); }

ProductBasis::ProductBasis(int nA, int nB) : nA_(nA), nB_(nB) {
  require_dimension(nA, "nA");
  require_dimension(nB, "nB");
  const GeneratorBasis ga(nA);
  const GeneratorBasis gb(nB);
  const Matrix id_a = Matrix::Identity(nA, nA) / std::sqrt(double(nA));
  const Matrix id_b = Matrix::Identity(nB, nB) / std::sqrt(double(nB));

  elements_.reserve(static_cast<std::size_t>(nA * nA * nB * nB - 1));
  for (const auto& t : ga.generators()) elements_.push_back(kron(t, id_b));
  for (const auto& t : gb.generators()) elements_.push_back(kron(id_a, t));
  for (const auto& ta : ga.generators()) {
    for (const auto& tb : gb.generators()) elements_.push_back(kron(ta, tb));
  }
}

std::array<std::size_t, 3> ProductBasis::block_sizes() const noexcept {
  const auto a = static_cast<std::size_t>(nA_ * nA_ - 1);
  const auto b = static_cast<std::size_t>(nB_ * nB_ - 1);
  return {a, b, a * b};
}

ProductBasis build_product_basis(int nA, int nB) { return ProductBasis(nA, nB); }

Matrix pauli(char axis) {
  Matrix m = Matrix::Zero(2, 2);
  switch (axis) {
    case 'x':
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 'y':
      m(0, 1) = Complex(0.0, -1.0);
      m(1, 0) = Complex(0.0, 1.0);
      break;
    case 'z':
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw InvalidParameter(std::string("unknown Pauli axis '") + axis + "'");
  }
  return m;
}

Matrix gell_mann(int k) {
  Matrix m = Matrix::Zero(3, 3);
  const Complex i(0.0, 1.0);
  switch (k) {
    case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 2: m(0, 1) = -i;  m(1, 0) = i;   break;
    case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    case 4: m(0, 2) = 1.0; m(2, 0) = 1.0; break;
    case 5: m(0, 2) = -i;  m(2, 0) = i;   break;
    case 6: m(1, 2) = 1.0; m(2, 1) = 1.0; break;
    case 7: m(1, 2) = -i;  m(2, 1) = i;   break;
    case 8: {
      const double s = 1.0 / std::sqrt(3.0);
      m(0, 0) = s;
      m(1, 1) = s;
      m(2, 2) = -2.0 * s;
      break;
    }
    default:
      throw InvalidParameter("Gell-Mann index must be in 1..8, got " +
                             std::to_string(k));
  }
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double hs_inner(const Matrix& a, const Matrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

Eigen::MatrixXd gram_matrix(std::span<const Matrix> elements) {
  const auto n = static_cast<Eigen::Index>(elements.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      g(i, j) = hs_inner(elements[i], elements[j]);
      g(j, i) = g(i, j);
    }
  }
  return g;
}

}  // namespace entvol
