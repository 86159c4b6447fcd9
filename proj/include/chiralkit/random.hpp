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

#pragma once

#include "chiralkit/qmat.hpp"

#include <cstdint>
#include <random>

namespace chiralkit {

/// SplitMix64 finalizer; bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for stream `index` of a run keyed by `master_seed`. Depends only on
/// the pair, so work can be split across threads in any order.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Independent random stream. Each sample in a parallel loop owns one.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}
  RngStream(std::uint64_t master_seed, std::uint64_t index)
      : RngStream(derive_seed(master_seed, index)) {}

  std::uint64_t seed() const { return seed_; }
  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  double exponential() { return exponential_(engine_); }
  cplx complex_normal();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::exponential_distribution<double> exponential_{1.0};
};

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
/// diag(R) pushed into Q.
Matrix sample_haar_unitary(int d, RngStream& rng);

/// Haar-random pure state vector of dimension d.
Vector sample_pure_state(Eigen::Index d, RngStream& rng);

/// Uniform point of the probability simplex (flat Dirichlet).
RealVector sample_simplex(int d, RngStream& rng);

/// rho = U D U^dagger with U Haar on the full space and D flat-Dirichlet.
DensityMatrix sample_mixed_state(const Dims& dims, RngStream& rng);

/// Tensor product of independent Haar unitaries, one per partition group,
/// arranged in the original subsystem order.
Matrix sample_local_unitary(const Dims& dims, const Partition& partition,
                            RngStream& rng);

/// Hermitian matrix with independent Gaussian entries (GUE-like).
Matrix sample_hermitian(Eigen::Index d, RngStream& rng);

}  // namespace chiralkit
