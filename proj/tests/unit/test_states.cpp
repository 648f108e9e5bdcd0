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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "entvol/basis.hpp"
#include "entvol/states.hpp"

using namespace entvol;

namespace {

RealVector coords_of(std::initializer_list<double> v) {
  RealVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

DensityMatrix dm(const Matrix& m, int nA, int nB) { return DensityMatrix(nA, nB, m); }

std::vector<double> sorted_eigs(const Matrix& m) {
  const RealVector ev = eigenvalues(m);
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

TEST_CASE("family dimensions") {
  CHECK(StateFamily::general(2, 2).dimension() == 15);
  CHECK(StateFamily::general(2, 3).dimension() == 35);
  CHECK(StateFamily::general(3, 3).dimension() == 80);
  CHECK(StateFamily::bell_diagonal().dimension() == 3);
  CHECK(StateFamily::x_state().dimension() == 7);
  CHECK(StateFamily::rebit_rebit().dimension() == 9);
  CHECK(StateFamily::qubit_qutrit_i().dimension() == 12);
  CHECK(StateFamily::qubit_qutrit_ii().dimension() == 24);
  CHECK(StateFamily::qubit_qutrit_i().ambient_dimension() == 6);
}

TEST_CASE("family directions are orthonormal and traceless") {
  for (auto f : {StateFamily::bell_diagonal(), StateFamily::x_state(),
                 StateFamily::rebit_rebit(), StateFamily::qubit_qutrit_i(),
                 StateFamily::qubit_qutrit_ii(), StateFamily::general(2, 3)}) {
    CAPTURE(f.name());
    const auto g = gram_matrix(f.directions());
    CHECK((g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() < 1e-12);
    for (const auto& d : f.directions()) CHECK(std::abs(d.trace()) < 1e-12);
  }
}

TEST_CASE("rebit-rebit embeddings are real") {
  const auto f = StateFamily::rebit_rebit();
  for (const auto& d : f.directions()) CHECK(d.imag().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("family names roundtrip through the parser") {
  for (auto k : {FamilyKind::general, FamilyKind::bell_diagonal, FamilyKind::x_state,
                 FamilyKind::rebit_rebit, FamilyKind::qubit_qutrit_i,
                 FamilyKind::qubit_qutrit_ii}) {
    CHECK(parse_family_kind(family_kind_name(k)) == k);
  }
  CHECK_THROWS_AS(parse_family_kind("ghz"), InvalidParameter);
}

TEST_CASE("to_matrix of the zero vector is the maximally mixed state") {
  const auto f = StateFamily::bell_diagonal();
  const auto m = to_matrix({f, RealVector::Zero(3)});
  CHECK((m.entries() - Matrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(to_matrix({f, RealVector::Zero(4)}), DimensionMismatch);
}

TEST_CASE("Bell-diagonal eigenvalues match 1/4 + f_i") {
  const auto f = StateFamily::bell_diagonal();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int trial = 0; trial < 200; ++trial) {
    const double ax = u(rng), ay = u(rng), az = u(rng);
    auto expected = oracle::bell_diagonal_eigenvalues(ax, ay, az);
    std::sort(expected.begin(), expected.end());
    const auto got = sorted_eigs(to_matrix({f, coords_of({ax, ay, az})}).entries());
    for (int i = 0; i < 4; ++i) CHECK(std::abs(got[i] - expected[i]) < 1e-12);
  }
}

TEST_CASE("Bell projector has purity-bound coordinates") {
  const auto f = StateFamily::general(2, 2);
  const Matrix phi = oracle::bell_projector();
  const auto v = to_bloch(phi, f);
  // |a|^2 = Tr rho^2 - 1/n = 1 - 1/4.
  CHECK(std::abs(v.coords.squaredNorm() - 0.75) < 1e-12);
  const auto back = to_matrix(v);
  CHECK((back.entries() - phi).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(back.min_eigenvalue()) < 1e-12);
  CHECK(is_state(v));
}

TEST_CASE("to_bloch recovers family coordinates") {
  const auto f = StateFamily::bell_diagonal();
  const Matrix m = f.embed(std::vector<double>{0.1, 0.2, 0.3});
  const auto v = to_bloch(m, f);
  CHECK(std::abs(v.coords(0) - 0.1) < 1e-14);
  CHECK(std::abs(v.coords(1) - 0.2) < 1e-14);
  CHECK(std::abs(v.coords(2) - 0.3) < 1e-14);

  const auto zero = to_bloch(Matrix::Identity(4, 4) / 4.0, StateFamily::x_state());
  CHECK(zero.coords.cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("to_bloch rejects matrices outside the family span") {
  const Matrix phi = oracle::bell_projector();
  // |Phi+><Phi+| = (I + XX - YY + ZZ)/4 is Bell-diagonal; |00><00| is not.
  CHECK_NOTHROW(to_bloch(phi, StateFamily::bell_diagonal()));
  Matrix prod = Matrix::Zero(4, 4);
  prod(0, 0) = 1.0;
  CHECK_THROWS_AS(to_bloch(prod, StateFamily::bell_diagonal()), NotInFamily);
  CHECK_THROWS_AS(to_bloch(Matrix::Identity(6, 6) / 6.0, StateFamily::bell_diagonal()),
                  DimensionMismatch);
}

TEST_CASE("roundtrip property on random general 2x3 states") {
  std::mt19937_64 rng(3);
  const auto f = StateFamily::general(2, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix rho = oracle::random_density(6, rng);
    const auto v = to_bloch(rho, f);
    CHECK((to_matrix(v).entries() - rho).cwiseAbs().maxCoeff() < 1e-10);
    const auto again = to_bloch(to_matrix(v).entries(), f);
    CHECK((again.coords - v.coords).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(is_state(v));
    CHECK_NOTHROW(to_matrix(v).validate());
  }
}

TEST_CASE("is_state") {
  const auto bd = StateFamily::bell_diagonal();
  CHECK(is_state({bd, RealVector::Zero(3)}));
  CHECK_FALSE(is_state({bd, coords_of({0.5, 0.5, 0.5})}));
  // Outside the purity ball, |a| > sqrt(3/4).
  CHECK_FALSE(is_state({bd, coords_of({0.0, 0.0, 0.8661})}));
  const auto gen = StateFamily::general(2, 3);
  RealVector far = RealVector::Zero(35);
  far(20) = std::sqrt(5.0 / 6.0) + 1e-6;
  CHECK_FALSE(is_state({gen, far}));
  CHECK(is_state({gen, RealVector::Zero(35)}));
}

TEST_CASE("partial trace of Bell-diagonal states is maximally mixed") {
  const auto f = StateFamily::bell_diagonal();
  const auto m = to_matrix({f, coords_of({0.2, -0.1, 0.3})});
  CHECK((partial_trace(m, Subsystem::B) - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((partial_trace(m, Subsystem::A) - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("partial trace of a product state returns the factors") {
  std::mt19937_64 rng(5);
  const Matrix ra = oracle::random_density(2, rng);
  const Matrix rb = oracle::random_density(3, rng);
  const auto m = dm(kron(ra, rb), 2, 3);
  CHECK((partial_trace(m, Subsystem::B) - ra).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((partial_trace(m, Subsystem::A) - rb).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("reduced Bloch coordinates equal the local block coefficients") {
  std::mt19937_64 rng(9);
  const auto f = StateFamily::general(2, 3);
  const Matrix rho = oracle::random_density(6, rng);
  const auto v = to_bloch(rho, f);
  const Matrix reduced = partial_trace(dm(rho, 2, 3), Subsystem::B);

  // Direct index contraction as the oracle.
  Matrix direct = Matrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 3; ++j) direct(i, k) += rho(i * 3 + j, k * 3 + j);
  CHECK((reduced - direct).cwiseAbs().maxCoeff() < 1e-14);

  // Tr_B(T_i (x) I/sqrt(nB)) = sqrt(nB) T_i, so the single-qubit Bloch
  // coordinate along T_i is sqrt(nB) * tau_i.
  const auto ga = build_generator_basis(2);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(hs_inner(ga[i], reduced) - std::sqrt(3.0) * v.coords(i)) < 1e-12);
  }
  CHECK(std::abs(reduced.trace() - Complex(1.0)) < 1e-14);
}

TEST_CASE("partial transpose of the Bell projector") {
  const auto pt = partial_transpose(dm(oracle::bell_projector(), 2, 2), Subsystem::A);
  const auto oracle_pt = oracle::partial_transpose_a(oracle::bell_projector(), 2, 2);
  CHECK((pt.entries() - oracle_pt).cwiseAbs().maxCoeff() == 0.0);
  // Frozen from the Jacobi oracle on the explicit matrix: {-1/2, 1/2, 1/2, 1/2}.
  const auto ev = oracle::hermitian_eigenvalues(oracle_pt);
  CHECK(std::abs(ev[0] + 0.5) < 1e-12);
  CHECK(std::abs(pt.min_eigenvalue() + 0.5) < 1e-12);
}

TEST_CASE("partial transpose keeps product states positive") {
  std::mt19937_64 rng(21);
  const Matrix prod = kron(oracle::random_density(3, rng), oracle::random_density(2, rng));
  CHECK(partial_transpose(dm(prod, 3, 2), Subsystem::A).is_positive());
  CHECK(partial_transpose(dm(prod, 3, 2), Subsystem::B).is_positive());
}

TEST_CASE("partial transpose of Bell-diagonal flips a_y") {
  const auto f = StateFamily::bell_diagonal();
  const auto m = to_matrix({f, coords_of({0.1, 0.2, -0.15})});
  const auto pt = partial_transpose(m, Subsystem::A);
  const Matrix expected = f.embed(std::vector<double>{0.1, -0.2, -0.15});
  CHECK((pt.entries() - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("partial transpose spectrum does not depend on the transposed side") {
  std::mt19937_64 rng(13);
  for (auto [nA, nB] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}, std::pair{3, 2}}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto m = dm(oracle::random_density(nA * nB, rng), nA, nB);
      const auto ta = partial_transpose(m, Subsystem::A);
      const auto tb = partial_transpose(m, Subsystem::B);
      CHECK(std::abs(ta.entries().trace() - Complex(1.0)) < 1e-12);
      CHECK((ta.entries() - ta.entries().adjoint()).cwiseAbs().maxCoeff() < 1e-15);
      const auto ea = sorted_eigs(ta.entries());
      const auto eb = sorted_eigs(tb.entries());
      for (std::size_t i = 0; i < ea.size(); ++i) CHECK(std::abs(ea[i] - eb[i]) < 1e-10);
    }
  }
}

TEST_CASE("DensityMatrix validation") {
  CHECK_THROWS_AS(DensityMatrix(2, 2, Matrix::Identity(3, 3)), DimensionMismatch);
  CHECK_THROWS_AS(DensityMatrix(2, 2, Matrix::Identity(4, 4)).validate(), InvalidParameter);
  Matrix nonherm = Matrix::Identity(4, 4) / 4.0;
  nonherm(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix(2, 2, nonherm).validate(), InvalidParameter);
  CHECK_THROWS_AS(DensityMatrix(2, 2, partial_transpose(dm(oracle::bell_projector(), 2, 2),
                                                        Subsystem::A).entries())
                      .validate(),
                  InvalidParameter);
}
