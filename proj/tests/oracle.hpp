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


// Reference implementations for the unit tests. They avoid the library's own
// linear algebra helpers and work from index arithmetic and raw Eigen solvers.

#pragma once

#include "chiralkit/qmat.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace chiralkit::oracle {

inline constexpr cplx kI{0.0, 1.0};

inline std::vector<int> digits(Eigen::Index index, const Dims& dims) {
  std::vector<int> out(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    out[k] = static_cast<int>(index % dims[k]);
    index /= dims[k];
  }
  return out;
}

inline Eigen::Index flatten(const std::vector<int>& d, const Dims& dims) {
  Eigen::Index out = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) out = out * dims[k] + d[k];
  return out;
}

inline Eigen::Index dim_of(const Dims& dims) {
  Eigen::Index d = 1;
  for (int x : dims) d *= x;
  return d;
}

/// Reduced matrix on `keep` (ascending), by explicit summation.
inline Matrix ptrace(const Matrix& m, const Dims& dims, const std::vector<int>& keep) {
  Dims kept;
  for (int k : keep) kept.push_back(dims[k]);
  const Eigen::Index dk = dim_of(kept);
  Matrix out = Matrix::Zero(dk, dk);
  const Eigen::Index d = m.rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto di = digits(i, dims);
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto dj = digits(j, dims);
      bool traced_equal = true;
      for (std::size_t k = 0; k < dims.size() && traced_equal; ++k) {
        bool kept_k = false;
        for (int q : keep) kept_k = kept_k || q == static_cast<int>(k);
        if (!kept_k && di[k] != dj[k]) traced_equal = false;
      }
      if (!traced_equal) continue;
      std::vector<int> ri;
      std::vector<int> rj;
      for (int q : keep) {
        ri.push_back(di[q]);
        rj.push_back(dj[q]);
      }
      out(flatten(ri, kept), flatten(rj, kept)) += m(i, j);
    }
  }
  return out;
}

/// Operator on `sub` (ascending) lifted to the full space.
inline Matrix lift(const Matrix& op, const Dims& dims, const std::vector<int>& sub) {
  Dims subdims;
  for (int k : sub) subdims.push_back(dims[k]);
  const Eigen::Index d = dim_of(dims);
  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto di = digits(i, dims);
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto dj = digits(j, dims);
      bool rest_equal = true;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        bool in_sub = false;
        for (int q : sub) in_sub = in_sub || q == static_cast<int>(k);
        if (!in_sub && di[k] != dj[k]) rest_equal = false;
      }
      if (!rest_equal) continue;
      std::vector<int> si;
      std::vector<int> sj;
      for (int q : sub) {
        si.push_back(di[q]);
        sj.push_back(dj[q]);
      }
      out(i, j) = op(flatten(si, subdims), flatten(sj, subdims));
    }
  }
  return out;
}

template <typename F>
Matrix spectral(const Matrix& h, F f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector v(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = f(es.eigenvalues()(i));
  return es.eigenvectors() * v.asDiagonal() * es.eigenvectors().adjoint();
}

/// -log on the support; kernel eigenvalues (below 1e-12 of the max) map to 0.
inline Matrix modular(const Matrix& rho) {
  const double top = Eigen::SelfAdjointEigenSolver<Matrix>(rho).eigenvalues().maxCoeff();
  return spectral(rho, [top](double p) { return p > 1e-12 * top ? cplx(-std::log(p)) : cplx(0.0); });
}

inline Matrix comm(const Matrix& a, const Matrix& b) { return a * b - b * a; }
inline Matrix acomm(const Matrix& a, const Matrix& b) { return a * b + b * a; }

inline double itr(const Matrix& rho, const Matrix& x) { return (kI * (rho * x).trace()).real(); }

struct Ks {
  Matrix ab;
  Matrix a;
  Matrix b;
};

/// Modular Hamiltonians for a split of `dims` into groups `a` and `b`.
inline Ks modular_hamiltonians(const Matrix& rho, const Dims& dims, const std::vector<int>& a,
                               const std::vector<int>& b) {
  return {modular(rho), lift(modular(ptrace(rho, dims, a)), dims, a),
          lift(modular(ptrace(rho, dims, b)), dims, b)};
}

inline double j2(const Matrix& rho, const Ks& k) { return itr(rho, acomm(comm(k.ab, k.a), k.b)); }

inline double j3(const Matrix& rho, const Ks& k) {
  return itr(rho, comm(comm(k.ab, comm(k.ab, k.a)), k.b));
}

inline double j3_prime(const Matrix& rho, const Ks& k) {
  return itr(rho, comm(comm(comm(k.ab, k.b), k.b), k.b));
}

/// K(s) = e^{is K_AB} K e^{-is K_AB}.
inline Matrix flowed(const Ks& k, const Matrix& op, double s) {
  const Matrix u = spectral(k.ab, [s](double x) { return std::exp(kI * s * x); });
  return u * op * u.adjoint();
}

inline double gamma_s(const Matrix& rho, const Ks& k, double s) {
  const Matrix plus = 0.5 * (flowed(k, k.a, s) + flowed(k, k.a, -s));
  return itr(rho, comm(plus, k.b));
}

inline double phi_s(const Matrix& rho, const Ks& k, double s) {
  const Matrix minus = 0.5 * kI * (flowed(k, k.a, s) - flowed(k, k.a, -s));
  return itr(rho, acomm(minus, k.b));
}

/// Symmetric logarithmic derivative superoperator in the eigenbasis of rho.
inline Matrix sld(const Matrix& rho, const Matrix& o) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  const Matrix& v = es.eigenvectors();
  const auto& p = es.eigenvalues();
  Matrix t = v.adjoint() * o * v;
  for (Eigen::Index j = 0; j < t.rows(); ++j) {
    for (Eigen::Index k = 0; k < t.cols(); ++k) {
      const double s = p(j) + p(k);
      t(j, k) = s > 1e-14 ? t(j, k) * (2.0 / s) : cplx(0.0);
    }
  }
  return v * t * v.adjoint();
}

/// gamma = -i Tr(K_A rho^{1/2} R^{-1}([rho, K_B]) rho^{1/2}).
inline double gamma_sld(const Matrix& rho, const Ks& k) {
  const Matrix root = spectral(rho, [](double p) { return cplx(std::sqrt(std::max(p, 0.0))); });
  return (-kI * (k.a * root * sld(rho, comm(rho, k.b)) * root).trace()).real();
}

/// Deterministic full-rank state: A A^dagger / Tr with
/// A_jk = cos(1 + j + 2k + 0.3jk) + 0.5i sin(2 + 3j - k + 0.7jk^2).
inline Matrix fixed_state(Eigen::Index d) {
  Matrix a(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = 0; k < d; ++k) {
      const double x = static_cast<double>(j);
      const double y = static_cast<double>(k);
      a(j, k) = cplx(std::cos(1.0 + x + 2.0 * y + 0.3 * x * y),
                     0.5 * std::sin(2.0 + 3.0 * x - y + 0.7 * x * y * y));
    }
  }
  const Matrix r = a * a.adjoint();
  return r / r.trace().real();
}

}  // namespace chiralkit::oracle
