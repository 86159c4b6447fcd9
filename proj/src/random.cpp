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

#include "chiralkit/random.hpp"

#include <cmath>

namespace chiralkit {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

cplx RngStream::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) throw InvalidInput("RngStream::below needs n > 0");
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

Matrix sample_haar_unitary(int d, RngStream& rng) {
  if (d < 1) throw InvalidInput("sample_haar_unitary: d must be >= 1");
  Matrix z(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) z(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    const cplx phase = mag > 0.0 ? r(j, j) / mag : cplx(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

Vector sample_pure_state(Eigen::Index d, RngStream& rng) {
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

RealVector sample_simplex(int d, RngStream& rng) {
  RealVector p(d);
  for (int i = 0; i < d; ++i) p(i) = rng.exponential();
  return p / p.sum();
}

DensityMatrix sample_mixed_state(const Dims& dims, RngStream& rng) {
  const int d = static_cast<int>(total_dim(dims));
  const Matrix u = sample_haar_unitary(d, rng);
  const RealVector p = sample_simplex(d, rng);
  const Matrix rho = u * p.cast<cplx>().asDiagonal() * u.adjoint();
  return DensityMatrix(dims, rho);
}

Matrix sample_local_unitary(const Dims& dims, const Partition& partition,
                            RngStream& rng) {
  partition.validate(static_cast<int>(dims.size()));
  const auto d = static_cast<Eigen::Index>(total_dim(dims));
  Matrix u = Matrix::Identity(d, d);
  for (const auto& group : partition.groups()) {
    int gd = 1;
    for (int s : group) gd *= dims[s];
    u = embed(sample_haar_unitary(gd, rng), dims, group) * u;
  }
  return u;
}

Matrix sample_hermitian(Eigen::Index d, RngStream& rng) {
  Matrix g(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) g(i, j) = rng.complex_normal();
  }
  return (g + g.adjoint()) * 0.5;
}

}  // namespace chiralkit
