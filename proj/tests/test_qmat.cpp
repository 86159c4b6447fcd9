// Copyright 2026 The chiralkit Authors
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


#include "chiralkit/qmat.hpp"
#include "chiralkit/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

namespace chiralkit {
namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (cplx v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Vector basis(Eigen::Index d, Eigen::Index i) {
  Vector v = Vector::Zero(d);
  v(i) = 1.0;
  return v;
}

DensityMatrix bell() {
  Vector phi = Vector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure({2, 2}, phi);
}

// Dense matrix exponential of a Hermitian matrix via its eigenbasis.
Matrix exp_hermitian(const Matrix& h, cplx factor) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector e(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < e.size(); ++i) e(i) = std::exp(factor * es.eigenvalues()(i));
  return es.eigenvectors() * e.asDiagonal() * es.eigenvectors().adjoint();
}

TEST(DensityMatrix, RejectsInvalidInput) {
  EXPECT_THROW(DensityMatrix({2}, Matrix::Identity(2, 2)), InvalidState);
  EXPECT_THROW(DensityMatrix({2}, from_rows({{1.2, 0.0}, {0.0, -0.2}})), InvalidState);
  EXPECT_THROW(DensityMatrix({2}, from_rows({{0.5, 0.3}, {0.1, 0.5}})), InvalidState);
  EXPECT_THROW(DensityMatrix({2, 2}, Matrix::Identity(2, 2) / 2.0), InvalidInput);
}

TEST(Partition, ParsesAndValidates) {
  const Partition p = Partition::parse("0,2|1");
  ASSERT_EQ(p.size(), 2);
  EXPECT_EQ(p.group(0), (std::vector<int>{0, 2}));
  EXPECT_EQ(p.group(1), (std::vector<int>{1}));
  EXPECT_NO_THROW(p.validate(3));
  EXPECT_THROW(p.validate(4), InvalidInput);
  EXPECT_THROW(Partition::parse("0|0").validate(1), InvalidInput);
  EXPECT_EQ(Partition::singletons(3).to_string(), "0|1|2");
}

TEST(EigHermitian, KnownSpectra) {
  const auto id = eig_hermitian(Matrix::Identity(2, 2));
  EXPECT_NEAR(id.eigenvalues(0), 1.0, 1e-14);
  EXPECT_NEAR(id.eigenvalues(1), 1.0, 1e-14);
  EXPECT_LT((id.eigenvectors.adjoint() * id.eigenvectors - Matrix::Identity(2, 2)).norm(), 1e-12);

  const auto z = eig_hermitian(pauli_z());
  EXPECT_NEAR(z.eigenvalues(0), -1.0, 1e-14);
  EXPECT_NEAR(z.eigenvalues(1), 1.0, 1e-14);

  const auto y = eig_hermitian((pauli_i() + pauli_y()) / 2.0);
  EXPECT_NEAR(y.eigenvalues(0), 0.0, 1e-14);
  EXPECT_NEAR(y.eigenvalues(1), 1.0, 1e-14);
}

TEST(EigHermitian, ReconstructsRandomMatrices) {
  for (int i = 0; i < 20; ++i) {
    RngStream rng(11, i);
    const Matrix m = sample_hermitian(6, rng);
    const auto e = eig_hermitian(m);
    const Matrix back = e.eigenvectors * e.eigenvalues.cast<cplx>().asDiagonal() *
                        e.eigenvectors.adjoint();
    EXPECT_LT((back - m).norm(), 1e-9 * m.norm());
    EXPECT_LT((e.eigenvectors.adjoint() * e.eigenvectors - Matrix::Identity(6, 6)).norm(), 1e-10);
    for (int k = 1; k < 6; ++k) EXPECT_LE(e.eigenvalues(k - 1), e.eigenvalues(k));
    const auto again = eig_hermitian(m);
    EXPECT_EQ(again.eigenvectors, e.eigenvectors);
  }
  EXPECT_THROW(eig_hermitian(from_rows({{0.0, 1.0}, {0.0, 0.0}})), InvalidInput);
}

TEST(MatrixLog, ClosedForms) {
  const DensityMatrix mixed = DensityMatrix::maximally_mixed({3});
  EXPECT_LT((matrix_log_on_support(mixed) - std::log(1.0 / 3.0) * Matrix::Identity(3, 3)).norm(),
            1e-12);

  const DensityMatrix zero = DensityMatrix::pure({2}, basis(2, 0));
  EXPECT_LT(matrix_log_on_support(zero).norm(), 1e-12);

  const DensityMatrix diag({2}, from_rows({{0.75, 0.0}, {0.0, 0.25}}));
  const Matrix l = matrix_log_on_support(diag);
  EXPECT_NEAR(l(0, 0).real(), std::log(0.75), 1e-12);
  EXPECT_NEAR(l(1, 1).real(), std::log(0.25), 1e-12);
  EXPECT_NEAR(std::abs(l(0, 1)), 0.0, 1e-12);
}

TEST(MatrixLog, ExponentialRoundTrip) {
  RngStream rng(12, 0);
  const DensityMatrix rho = sample_mixed_state({2, 3}, rng);
  EXPECT_LT((exp_hermitian(matrix_log_on_support(rho), 1.0) - rho.matrix()).norm(), 1e-10);
}

TEST(ImaginaryPower, ClosedForms) {
  RngStream rng(13, 0);
  const DensityMatrix rho = sample_mixed_state({2, 2}, rng);
  EXPECT_LT((imaginary_power(rho, 0.0) - Matrix::Identity(4, 4)).norm(), 1e-12);

  const Matrix half = imaginary_power(DensityMatrix::maximally_mixed({2}), 1.0);
  const cplx expected = std::exp(cplx(0.0, std::log(0.5)));
  EXPECT_NEAR(std::abs(half(0, 0) - expected), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(half(1, 1) - expected), 0.0, 1e-12);

  const Matrix u = imaginary_power(rho, 0.37);
  const Matrix v = imaginary_power(rho, -0.37);
  EXPECT_LT((u * v - Matrix::Identity(4, 4)).norm(), 1e-12);
  EXPECT_LT((u.adjoint() * u - Matrix::Identity(4, 4)).norm(), 1e-12);
}

TEST(ImaginaryPower, KernelMapsToIdentity) {
  const DensityMatrix zero = DensityMatrix::pure({2}, basis(2, 0));
  const Matrix u = imaginary_power(zero, 2.0);
  EXPECT_NEAR(std::abs(u(0, 0) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(u(1, 1) - 1.0), 0.0, 1e-12);
}

TEST(TensorProduct, Examples) {
  const DensityMatrix half = DensityMatrix::maximally_mixed({2});
  EXPECT_LT((tensor_product(half, half).matrix() - Matrix::Identity(4, 4) / 4.0).norm(), 1e-14);

  const DensityMatrix zero = DensityMatrix::pure({2}, basis(2, 0));
  const DensityMatrix one = DensityMatrix::pure({2}, basis(2, 1));
  const DensityMatrix zo = tensor_product(zero, one);
  EXPECT_NEAR(zo.matrix()(1, 1).real(), 1.0, 1e-14);
  EXPECT_EQ(zo.dims(), (Dims{2, 2}));

  RngStream rng(14, 0);
  const DensityMatrix a = sample_mixed_state({2}, rng);
  const DensityMatrix b = sample_mixed_state({2}, rng);
  const RealVector ea = eig_hermitian(a.matrix()).eigenvalues;
  const RealVector eb = eig_hermitian(b.matrix()).eigenvalues;
  std::vector<double> expected;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) expected.push_back(ea(i) * eb(j));
  }
  std::sort(expected.begin(), expected.end());
  const RealVector eab = eig_hermitian(tensor_product(a, b).matrix()).eigenvalues;
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(eab(k), expected[k], 1e-12);
}

TEST(PartialTrace, Examples) {
  RngStream rng(15, 0);
  const DensityMatrix a = sample_mixed_state({3}, rng);
  const DensityMatrix b = sample_mixed_state({2}, rng);
  const std::vector<int> keep_a{0};
  const std::vector<int> keep_b{1};
  const DensityMatrix ab = tensor_product(a, b);
  EXPECT_LT((partial_trace(ab, keep_a).matrix() - a.matrix()).norm(), 1e-12);
  EXPECT_LT((partial_trace(ab, keep_b).matrix() - b.matrix()).norm(), 1e-12);
  EXPECT_LT((partial_trace(bell(), keep_a).matrix() - Matrix::Identity(2, 2) / 2.0).norm(), 1e-12);
}

TEST(PartialTrace, MatchesDirectSum) {
  RngStream rng(16, 0);
  const DensityMatrix rho = sample_mixed_state({2, 3, 2}, rng);
  const std::vector<int> keep{0, 2};
  const Matrix got = partial_trace(rho, keep).matrix();
  Matrix expected = Matrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a) {
    for (int c = 0; c < 2; ++c) {
      for (int a2 = 0; a2 < 2; ++a2) {
        for (int c2 = 0; c2 < 2; ++c2) {
          for (int b = 0; b < 3; ++b) {
            expected(a * 2 + c, a2 * 2 + c2) += rho.matrix()(a * 6 + b * 2 + c, a2 * 6 + b * 2 + c2);
          }
        }
      }
    }
  }
  EXPECT_LT((got - expected).norm(), 1e-13);
}

TEST(PartialTranspose, Examples) {
  const std::vector<int> second{1};
  const DensityMatrix zero = DensityMatrix::pure({2}, basis(2, 0));
  RngStream rng(17, 0);
  const DensityMatrix prod = tensor_product(zero, sample_mixed_state({2}, rng));
  const RealVector before = eig_hermitian(prod.matrix()).eigenvalues;
  const RealVector after = eig_hermitian(partial_transpose(prod, second)).eigenvalues;
  EXPECT_LT((before - after).norm(), 1e-12);

  EXPECT_NEAR(eig_hermitian(partial_transpose(bell(), second)).eigenvalues(0), -0.5, 1e-12);

  const DensityMatrix rho = sample_mixed_state({2, 3}, rng);
  EXPECT_LT((partial_transpose(partial_transpose(rho, second), rho.dims(), second) -
             rho.matrix())
                .norm(),
            1e-14);
}

TEST(PermuteSubsystems, EmbedAgreesWithKron) {
  RngStream rng(18, 0);
  const Matrix a = sample_hermitian(2, rng);
  const Matrix c = sample_hermitian(3, rng);
  const Dims dims{2, 4, 3};
  const std::vector<int> first{0};
  const std::vector<int> last{2};
  const Matrix expected = kron(kron(a, Matrix::Identity(4, 4)), c);
  EXPECT_LT((embed(a, dims, first) * embed(c, dims, last) - expected).norm(), 1e-12);

  const std::vector<int> both{2, 0};
  EXPECT_LT((embed(kron(c, a), dims, both) - expected).norm(), 1e-12);
}

TEST(TraceNorm, Examples) {
  EXPECT_NEAR(trace_norm(Matrix::Identity(4, 4)), 4.0, 1e-12);
  EXPECT_NEAR(trace_norm(pauli_x()), 2.0, 1e-12);
  RngStream rng(19, 0);
  Matrix g(4, 3);
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = rng.complex_normal();
  EXPECT_NEAR(trace_norm(g), Eigen::JacobiSVD<Matrix>(g).singularValues().sum(), 1e-12);
}

TEST(UhlmannFidelity, Examples) {
  RngStream rng(20, 0);
  const DensityMatrix rho = sample_mixed_state({2, 2}, rng);
  EXPECT_NEAR(uhlmann_fidelity(rho, rho), 1.0, 1e-10);
  const DensityMatrix zero = DensityMatrix::pure({2}, basis(2, 0));
  const DensityMatrix one = DensityMatrix::pure({2}, basis(2, 1));
  EXPECT_NEAR(uhlmann_fidelity(zero, one), 0.0, 1e-12);
  EXPECT_NEAR(uhlmann_fidelity(zero, DensityMatrix::maximally_mixed({2})), 0.5, 1e-12);
}

TEST(UhlmannFidelity, SymmetricAndPureOverlap) {
  for (int i = 0; i < 10; ++i) {
    RngStream rng(21, i);
    const DensityMatrix rho = sample_mixed_state({3}, rng);
    const DensityMatrix sigma = sample_mixed_state({3}, rng);
    const double f = uhlmann_fidelity(rho, sigma);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0 + 1e-12);
    EXPECT_NEAR(f, uhlmann_fidelity(sigma, rho), 1e-10);
    const Vector psi = sample_pure_state(3, rng);
    const double overlap = (psi.adjoint() * rho.matrix() * psi)(0, 0).real();
    EXPECT_NEAR(uhlmann_fidelity(DensityMatrix::pure({3}, psi), rho), overlap, 1e-10);
  }
}

TEST(Purify, Examples) {
  const Vector psi = basis(2, 1);
  const Purification pure = purify(DensityMatrix::pure({2}, psi));
  EXPECT_EQ(pure.ancilla_dim, 1);
  EXPECT_NEAR(std::abs(psi.dot(pure.state)), 1.0, 1e-12);

  const Purification mixed = purify(DensityMatrix::maximally_mixed({2}));
  ASSERT_EQ(mixed.ancilla_dim, 2);
  const Matrix reduced = partial_trace(mixed.state * mixed.state.adjoint(), mixed.dims,
                                       std::vector<int>{0});
  EXPECT_LT((reduced - Matrix::Identity(2, 2) / 2.0).norm(), 1e-12);
  const Matrix schmidt = Eigen::Map<const Matrix>(mixed.state.data(), 2, 2);
  const RealVector sv = Eigen::JacobiSVD<Matrix>(schmidt).singularValues();
  EXPECT_NEAR(sv(0), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(sv(1), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Purify, ReducesToInput) {
  RngStream rng(22, 0);
  const DensityMatrix rho = sample_mixed_state({2, 3}, rng);
  const Purification p = purify(rho);
  EXPECT_NEAR(p.state.norm(), 1.0, 1e-12);
  const Matrix reduced =
      partial_trace(p.state * p.state.adjoint(), p.dims, std::vector<int>{0, 1});
  EXPECT_LT((reduced - rho.matrix()).norm(), 1e-11);
}

TEST(Conjugate, Examples) {
  const DensityMatrix real({2}, from_rows({{0.6, 0.2}, {0.2, 0.4}}));
  EXPECT_LT((conjugate(real).matrix() - real.matrix()).norm(), 1e-15);

  const DensityMatrix plus_y({2}, (pauli_i() + pauli_y()) / 2.0);
  EXPECT_LT((conjugate(plus_y).matrix() - (pauli_i() - pauli_y()) / 2.0).norm(), 1e-15);

  RngStream rng(23, 0);
  const DensityMatrix rho = sample_mixed_state({2, 2}, rng);
  EXPECT_LT((eig_hermitian(conjugate(rho).matrix()).eigenvalues -
             eig_hermitian(rho.matrix()).eigenvalues)
                .norm(),
            1e-12);
}

TEST(Regularize, MixesTowardsIdentity) {
  const DensityMatrix zero = DensityMatrix::pure({2}, basis(2, 0));
  const DensityMatrix r = regularize(zero, 0.1);
  EXPECT_NEAR(r.matrix()(0, 0).real(), 0.95, 1e-15);
  EXPECT_NEAR(r.matrix()(1, 1).real(), 0.05, 1e-15);
}

}  // namespace
}  // namespace chiralkit
