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


#include "chiralkit/chirality.hpp"
#include "chiralkit/experiments.hpp"
#include "chiralkit/random.hpp"
#include "chiralkit/stabilizer.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace chiralkit {
namespace {

RealVector example_p() { return (RealVector(3) << 0.5, 0.3, 0.2).finished(); }

// Brute-force max over all 4^n strings built from explicit Kronecker products.
double brute_force_max_overlap(const Vector& psi, int n) {
  const Matrix letters[4] = {pauli_i(), pauli_x(), pauli_y(), pauli_z()};
  double best = 0.0;
  for (int code = 0; code < (1 << (2 * n)); ++code) {
    Matrix m = Matrix::Identity(1, 1);
    for (int q = 0; q < n; ++q) m = kron(m, letters[(code >> (2 * (n - 1 - q))) & 3]);
    best = std::max(best, std::norm((psi.transpose() * m * psi)(0, 0)));
  }
  return best;
}

Vector fixed_three_qubit_vector() {
  Vector psi(8);
  for (int k = 0; k < 8; ++k) {
    psi(k) = cplx(std::cos(1.0 + 2.0 * k + 0.3 * k * k), std::sin(0.5 + k));
  }
  return psi.normalized();
}

TEST(ChiralLogDistance, ProductBasisStateIsZero) {
  Vector psi = Vector::Zero(6);
  psi(4) = 1.0;
  const auto r = chiral_log_distance(DensityMatrix::pure({3, 2}, psi), Partition::singletons(2));
  EXPECT_NEAR(r.value, 0.0, 1e-12);
  EXPECT_TRUE(r.certified_nonchiral);
}

TEST(ChiralLogDistance, BipartitePureStatesAreNonchiral) {
  for (int i = 0; i < 5; ++i) {
    RngStream rng(61, i);
    const DensityMatrix rho = DensityMatrix::pure({2, 3}, sample_pure_state(6, rng));
    LogDistanceOptions opts;
    opts.seed = 61 + i;
    const auto r = chiral_log_distance(rho, Partition::singletons(2), opts);
    EXPECT_LT(r.value, 1e-8);
    EXPECT_TRUE(r.certified_nonchiral);
  }
}

TEST(ChiralLogDistance, ConjugateInvariantStatesAreNonchiral) {
  RngStream rng(62, 0);
  const DensityMatrix real({2, 2}, [&] {
    Matrix m = sample_mixed_state({2, 2}, rng).matrix();
    return Matrix(m.real().cast<cplx>());
  }());
  const auto r = chiral_log_distance(real, Partition::singletons(2));
  EXPECT_NEAR(r.value, 0.0, 1e-10);
}

TEST(ChiralLogDistance, ExampleOneIsChiral) {
  LogDistanceOptions opts;
  opts.restarts = 50;
  opts.seed = 63;
  const auto r = chiral_log_distance(example1_state(example_p()), Partition::singletons(2), opts);
  EXPECT_LT(r.detail.best_fidelity, 1.0 - 1e-3);
  EXPECT_GT(r.value, 1e-3);
  EXPECT_FALSE(r.certified_nonchiral);
}

TEST(ChiralLogDistance, ReportedUnitariesReproduceOverlap) {
  RngStream rng(64, 0);
  const DensityMatrix rho = sample_mixed_state({2, 2}, rng);
  const Partition split = Partition::singletons(2);
  LogDistanceOptions opts;
  opts.restarts = 4;
  opts.seed = 64;
  const auto r = chiral_log_distance(rho, split, opts);
  ASSERT_EQ(r.detail.unitaries.size(), 3U);
  for (const Matrix& u : r.detail.unitaries) {
    EXPECT_LT((u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm(), 1e-10);
  }
  EXPECT_NEAR(purified_overlap(rho, split, r.detail.unitaries), r.detail.best_fidelity, 1e-9);
  EXPECT_LE(r.detail.best_fidelity, 1.0 + 1e-12);
  EXPECT_NEAR(r.value, -std::log(r.detail.best_fidelity), 1e-12);
  EXPECT_EQ(r.detail.restarts, 4);
  EXPECT_EQ(r.detail.fidelity_per_restart.size(), 4U);
  EXPECT_DOUBLE_EQ(*std::max_element(r.detail.fidelity_per_restart.begin(),
                                     r.detail.fidelity_per_restart.end()),
                   r.detail.best_fidelity);
}

TEST(ChiralLogDistance, DeterministicForFixedSeed) {
  const DensityMatrix rho = example1_state(example_p());
  LogDistanceOptions opts;
  opts.restarts = 3;
  opts.seed = 65;
  const auto a = chiral_log_distance(rho, Partition::singletons(2), opts);
  const auto b = chiral_log_distance(rho, Partition::singletons(2), opts);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.detail.iterations_per_restart, b.detail.iterations_per_restart);
}

TEST(ChiralLogDistance, StopsEarlyOnceFidelityReached) {
  Vector psi = Vector::Zero(4);
  psi(0) = 1.0;
  LogDistanceOptions opts;
  opts.restarts = 10;
  opts.stop_at_fidelity = 1.0 - 1e-12;
  const auto r = chiral_log_distance(DensityMatrix::pure({2, 2}, psi), Partition::singletons(2),
                                     opts);
  EXPECT_EQ(r.detail.restarts, 1);
}

TEST(ChiralLogDistance, InvariantUnderLocalUnitaries) {
  RngStream rng(66, 0);
  const DensityMatrix rho = example1_state(example_p());
  const Matrix u = sample_local_unitary(rho.dims(), Partition::singletons(2), rng);
  const DensityMatrix moved(rho.dims(), u * rho.matrix() * u.adjoint());
  LogDistanceOptions opts;
  opts.restarts = 30;
  opts.seed = 66;
  const double a = chiral_log_distance(rho, Partition::singletons(2), opts).value;
  const double b = chiral_log_distance(moved, Partition::singletons(2), opts).value;
  EXPECT_NEAR(a, b, 1e-6);
}

TEST(ChiralLogDistance, RejectsInvalidOptions) {
  const DensityMatrix rho = DensityMatrix::maximally_mixed({2, 2});
  LogDistanceOptions opts;
  opts.restarts = 0;
  EXPECT_THROW(chiral_log_distance(rho, Partition::singletons(2), opts), InvalidInput);
  EXPECT_THROW(chiral_log_distance(rho, Partition::singletons(3)), InvalidInput);
}

TEST(PauliLogDistance, TStateAchievedByX) {
  const PauliLogDistance r = pauli_log_distance(t_state(), 1);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
  EXPECT_NEAR(r.max_overlap, 1.0, 1e-12);
  EXPECT_EQ(r.best.to_string(), "X");
}

TEST(PauliLogDistance, StabilizerStatesAreZero) {
  for (int i = 0; i < 20; ++i) {
    RngStream rng(67, i);
    const int n = 1 + i % 4;
    const Vector psi = stabilizer_pure_state(random_stabilizer_group(n, n, rng));
    EXPECT_NEAR(pauli_log_distance(psi, n).value, 0.0, 1e-10);
  }
}

TEST(PauliLogDistance, FixedStateMatchesFrozenEnumeration) {
  const PauliLogDistance r = pauli_log_distance(fixed_three_qubit_vector(), 3);
  EXPECT_NEAR(r.max_overlap, 0.6803008539862031, 1e-12);
  EXPECT_NEAR(r.value, 0.3852201463236589, 1e-12);
  EXPECT_EQ(r.best.to_string(), "XZZ");
}

TEST(PauliLogDistance, MatchesBruteForce) {
  for (int i = 0; i < 10; ++i) {
    RngStream rng(68, i);
    const int n = 1 + i % 3;
    const Vector psi = sample_pure_state(Eigen::Index{1} << n, rng);
    EXPECT_NEAR(pauli_log_distance(psi, n).max_overlap, brute_force_max_overlap(psi, n), 1e-12);
  }
}

TEST(PauliLogDistance, UpperBoundsOptimizedDistance) {
  for (int i = 0; i < 5; ++i) {
    RngStream rng(69, i);
    const Vector psi = sample_pure_state(4, rng);
    const double cp = pauli_log_distance(psi, 2).value;
    LogDistanceOptions opts;
    opts.seed = 69 + i;
    const double c = chiral_log_distance(DensityMatrix::pure({2, 2}, psi),
                                         Partition::singletons(2), opts)
                         .value;
    EXPECT_LE(c, cp + 1e-7);
  }
}

TEST(PauliLogDistance, RejectsBadInput) {
  EXPECT_THROW(pauli_log_distance(Vector::Ones(3) / std::sqrt(3.0), 2), InvalidInput);
  EXPECT_THROW(pauli_log_distance(Vector::Ones(256) / 16.0, 8), InvalidInput);
}

}  // namespace
}  // namespace chiralkit
