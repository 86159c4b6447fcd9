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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace chiralkit {

namespace {

void check_dims(const Dims& dims) {
  if (dims.empty()) throw InvalidInput("dims must not be empty");
  for (int d : dims) {
    if (d <= 0) throw InvalidInput("subsystem dimensions must be positive");
  }
}

void check_subsystem_list(std::span<const int> list, int num_subsystems,
                          bool allow_empty) {
  if (list.empty() && !allow_empty) {
    throw InvalidInput("subsystem list must not be empty");
  }
  std::vector<bool> seen(num_subsystems, false);
  for (int s : list) {
    if (s < 0 || s >= num_subsystems) {
      throw InvalidInput("subsystem index " + std::to_string(s) + " out of range");
    }
    if (seen[s]) {
      throw InvalidInput("subsystem index " + std::to_string(s) + " repeated");
    }
    seen[s] = true;
  }
}

// Maps every flat basis index of the original ordering to its flat index after
// the factors are reordered by perm.
std::vector<Eigen::Index> permutation_map(const Dims& dims, std::span<const int> perm) {
  const int m = static_cast<int>(dims.size());
  check_subsystem_list(perm, m, false);
  if (static_cast<int>(perm.size()) != m) {
    throw InvalidInput("permutation must list every subsystem");
  }
  // Stride of old subsystem perm[i] in the new ordering.
  std::vector<Eigen::Index> new_stride(m);
  Eigen::Index stride = 1;
  for (int i = m - 1; i >= 0; --i) {
    new_stride[perm[i]] = stride;
    stride *= dims[perm[i]];
  }
  const auto total = static_cast<Eigen::Index>(total_dim(dims));
  std::vector<Eigen::Index> map(total);
  std::vector<int> digit(m, 0);
  Eigen::Index target = 0;
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    map[idx] = target;
    for (int k = m - 1; k >= 0; --k) {
      if (++digit[k] < dims[k]) {
        target += new_stride[k];
        break;
      }
      target -= new_stride[k] * (dims[k] - 1);
      digit[k] = 0;
    }
  }
  return map;
}

std::vector<int> complement(std::span<const int> subset, int num_subsystems) {
  std::vector<bool> in(num_subsystems, false);
  for (int s : subset) in[s] = true;
  std::vector<int> rest;
  for (int s = 0; s < num_subsystems; ++s) {
    if (!in[s]) rest.push_back(s);
  }
  return rest;
}

Eigen::Index product_of(const Dims& dims, std::span<const int> subset) {
  Eigen::Index p = 1;
  for (int s : subset) p *= dims[s];
  return p;
}

}  // namespace

std::size_t total_dim(const Dims& dims) {
  std::size_t p = 1;
  for (int d : dims) p *= static_cast<std::size_t>(d);
  return p;
}

DensityMatrix::DensityMatrix(Dims dims, const Matrix& data, double tol)
    : dims_(std::move(dims)) {
  check_dims(dims_);
  const auto d = static_cast<Eigen::Index>(total_dim(dims_));
  if (data.rows() != d || data.cols() != d) {
    std::ostringstream msg;
    msg << "matrix is " << data.rows() << "x" << data.cols()
        << " but dims imply " << d << "x" << d;
    throw InvalidState(msg.str());
  }
  const double defect = hermitian_defect(data);
  if (defect > tol) {
    throw InvalidState("matrix is not Hermitian (max |M - M^dagger| = " +
                       std::to_string(defect) + ")");
  }
  const cplx tr = data.trace();
  if (std::abs(tr - cplx(1.0, 0.0)) > tol) {
    std::ostringstream msg;
    msg << "trace is " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag()
        << "i, expected 1";
    throw InvalidState(msg.str());
  }
  data_ = (data + data.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(data_, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues()(0);
  if (min_eig < -tol) {
    throw InvalidState("matrix has negative eigenvalue " + std::to_string(min_eig));
  }
}

DensityMatrix DensityMatrix::pure(Dims dims, const Vector& psi, double tol) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > tol) {
    throw InvalidState("state vector norm is " + std::to_string(norm) +
                       ", expected 1");
  }
  return DensityMatrix(std::move(dims), psi * psi.adjoint(), tol);
}

DensityMatrix DensityMatrix::maximally_mixed(Dims dims) {
  check_dims(dims);
  const auto d = static_cast<Eigen::Index>(total_dim(dims));
  return DensityMatrix(std::move(dims), Matrix::Identity(d, d) / static_cast<double>(d));
}

Partition::Partition(std::vector<std::vector<int>> groups) : groups_(std::move(groups)) {
  if (groups_.empty()) throw InvalidInput("partition needs at least one group");
  std::vector<int> all;
  for (const auto& g : groups_) {
    if (g.empty()) throw InvalidInput("partition groups must not be empty");
    all.insert(all.end(), g.begin(), g.end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw InvalidInput("partition groups overlap");
  }
  if (all.front() < 0) throw InvalidInput("negative subsystem index in partition");
}

Partition Partition::parse(const std::string& text) {
  std::vector<std::vector<int>> groups;
  std::vector<int> current;
  std::string number;
  auto flush_number = [&]() {
    if (number.empty()) throw InvalidInput("malformed partition '" + text + "'");
    current.push_back(std::stoi(number));
    number.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      number.push_back(c);
    } else if (c == ',') {
      flush_number();
    } else if (c == '|') {
      flush_number();
      groups.push_back(std::move(current));
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw InvalidInput("unexpected character '" + std::string(1, c) +
                         "' in partition '" + text + "'");
    }
  }
  flush_number();
  groups.push_back(std::move(current));
  return Partition(std::move(groups));
}

Partition Partition::singletons(int num_subsystems) {
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < num_subsystems; ++i) groups.push_back({i});
  return Partition(std::move(groups));
}

Partition Partition::bipartition(int num_subsystems, std::vector<int> first) {
  std::sort(first.begin(), first.end());
  auto rest = complement(first, num_subsystems);
  return Partition({std::move(first), std::move(rest)});
}

void Partition::validate(int num_subsystems) const {
  std::vector<int> all;
  for (const auto& g : groups_) all.insert(all.end(), g.begin(), g.end());
  std::sort(all.begin(), all.end());
  if (static_cast<int>(all.size()) != num_subsystems || all.front() != 0 ||
      all.back() != num_subsystems - 1) {
    throw InvalidInput("partition " + to_string() + " does not cover subsystems 0.." +
                       std::to_string(num_subsystems - 1));
  }
}

Partition Partition::swapped() const {
  auto g = groups_;
  std::reverse(g.begin(), g.end());
  return Partition(std::move(g));
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    if (i) out += '|';
    for (std::size_t j = 0; j < groups_[i].size(); ++j) {
      if (j) out += ',';
      out += std::to_string(groups_[i][j]);
    }
  }
  return out;
}

double hermitian_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

EigenDecomposition eig_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw InvalidInput("eig_hermitian needs a square matrix");
  const double defect = hermitian_defect(m);
  if (defect > tol) {
    throw InvalidInput("eig_hermitian: input not Hermitian, max |M - M^dagger| = " +
                       std::to_string(defect));
  }
  const Matrix h = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

double support_threshold(const RealVector& p, double cutoff) {
  const double pmax = p.size() ? std::max(p.maxCoeff(), 0.0) : 0.0;
  return cutoff * pmax;
}

template <typename F>
Matrix spectral_map(const EigenDecomposition& eig, F&& f) {
  const auto& v = eig.eigenvectors;
  Eigen::VectorXcd w(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = f(eig.eigenvalues(i));
  return v * w.asDiagonal() * v.adjoint();
}

}  // namespace

Matrix log_on_support(const Matrix& psd, double cutoff) {
  const auto eig = eig_hermitian(psd);
  const double thr = support_threshold(eig.eigenvalues, cutoff);
  return spectral_map(eig, [thr](double p) {
    return p > thr ? cplx(std::log(p), 0.0) : cplx(0.0, 0.0);
  });
}

Matrix matrix_log_on_support(const DensityMatrix& rho, double cutoff) {
  return log_on_support(rho.matrix(), cutoff);
}

Matrix imaginary_power(const EigenDecomposition& eig, double s, double cutoff) {
  const double thr = support_threshold(eig.eigenvalues, cutoff);
  return spectral_map(eig, [thr, s](double p) {
    return p > thr ? std::exp(cplx(0.0, s * std::log(p))) : cplx(1.0, 0.0);
  });
}

Matrix imaginary_power(const DensityMatrix& rho, double s, double cutoff) {
  return imaginary_power(eig_hermitian(rho.matrix()), s, cutoff);
}

Matrix psd_power(const Matrix& psd, double exponent, double cutoff) {
  const auto eig = eig_hermitian(psd);
  const double thr = support_threshold(eig.eigenvalues, cutoff);
  return spectral_map(eig, [thr, exponent](double p) {
    return p > thr ? cplx(std::pow(p, exponent), 0.0) : cplx(0.0, 0.0);
  });
}

Matrix psd_sqrt(const Matrix& psd) {
  const auto eig = eig_hermitian(psd);
  const double floor = kRoundoffFloor * std::max(eig.eigenvalues.maxCoeff(), 0.0);
  return spectral_map(eig, [floor](double p) { return cplx(p > floor ? std::sqrt(p) : 0.0, 0.0); });
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

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

DensityMatrix tensor_product(const DensityMatrix& rho, const DensityMatrix& sigma) {
  Dims dims = rho.dims();
  dims.insert(dims.end(), sigma.dims().begin(), sigma.dims().end());
  return DensityMatrix(std::move(dims), kron(rho.matrix(), sigma.matrix()));
}

Matrix permute_subsystems(const Matrix& op, const Dims& dims, std::span<const int> perm) {
  const auto map = permutation_map(dims, perm);
  const auto d = static_cast<Eigen::Index>(map.size());
  if (op.rows() != d || op.cols() != d) throw InvalidInput("operator does not match dims");
  Matrix out(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) out(map[i], map[j]) = op(i, j);
  }
  return out;
}

Vector permute_subsystems(const Vector& psi, const Dims& dims, std::span<const int> perm) {
  const auto map = permutation_map(dims, perm);
  if (psi.size() != static_cast<Eigen::Index>(map.size())) {
    throw InvalidInput("vector does not match dims");
  }
  Vector out(psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i) out(map[i]) = psi(i);
  return out;
}

Matrix embed(const Matrix& op, const Dims& dims, std::span<const int> subsystems) {
  const int m = static_cast<int>(dims.size());
  check_subsystem_list(subsystems, m, false);
  const auto inner = product_of(dims, subsystems);
  if (op.rows() != inner || op.cols() != inner) {
    throw InvalidInput("embedded operator does not match the subsystem dimensions");
  }
  auto rest = complement(subsystems, m);
  const auto outer = product_of(dims, rest);
  const Matrix lifted = kron(op, Matrix::Identity(outer, outer));
  // lifted lives on (subsystems..., rest...); move factors back in place.
  std::vector<int> order(subsystems.begin(), subsystems.end());
  order.insert(order.end(), rest.begin(), rest.end());
  Dims ordered_dims;
  for (int s : order) ordered_dims.push_back(dims[s]);
  std::vector<int> inverse(m);
  for (int i = 0; i < m; ++i) inverse[order[i]] = i;
  return permute_subsystems(lifted, ordered_dims, inverse);
}

Matrix partial_trace(const Matrix& m, const Dims& dims, std::span<const int> keep) {
  const int n = static_cast<int>(dims.size());
  if (keep.empty()) {
    throw InvalidInput("partial_trace: empty keep list would return a scalar");
  }
  check_subsystem_list(keep, n, false);
  auto rest = complement(keep, n);
  std::vector<int> order(keep.begin(), keep.end());
  order.insert(order.end(), rest.begin(), rest.end());
  const Matrix p = permute_subsystems(m, dims, order);
  const auto dk = product_of(dims, keep);
  const auto dr = product_of(dims, rest);
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      cplx acc = 0.0;
      for (Eigen::Index r = 0; r < dr; ++r) acc += p(a * dr + r, b * dr + r);
      out(a, b) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  Matrix reduced = partial_trace(rho.matrix(), rho.dims(), keep);
  Dims dims;
  for (int s : keep) dims.push_back(rho.dims()[s]);
  return DensityMatrix(std::move(dims), reduced);
}

Matrix partial_transpose(const Matrix& m, const Dims& dims, std::span<const int> part) {
  const int n = static_cast<int>(dims.size());
  check_subsystem_list(part, n, true);
  const auto d = static_cast<Eigen::Index>(total_dim(dims));
  if (m.rows() != d || m.cols() != d) throw InvalidInput("operator does not match dims");
  std::vector<Eigen::Index> stride(n);
  Eigen::Index s = 1;
  for (int k = n - 1; k >= 0; --k) {
    stride[k] = s;
    s *= dims[k];
  }
  Matrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      Eigen::Index ti = i;
      Eigen::Index tj = j;
      for (int k : part) {
        const Eigen::Index di = (i / stride[k]) % dims[k];
        const Eigen::Index dj = (j / stride[k]) % dims[k];
        ti += (dj - di) * stride[k];
        tj += (di - dj) * stride[k];
      }
      out(ti, tj) = m(i, j);
    }
  }
  return out;
}

Matrix partial_transpose(const DensityMatrix& rho, std::span<const int> part) {
  return partial_transpose(rho.matrix(), rho.dims(), part);
}

double trace_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double uhlmann_fidelity(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw InvalidInput("uhlmann_fidelity: dimension mismatch");
  }
  const Matrix root = psd_sqrt(sigma);
  const Matrix inner = root * rho * root;
  const auto eig = eig_hermitian((inner + inner.adjoint()) * 0.5);
  const double floor = kRoundoffFloor * std::max(eig.eigenvalues.maxCoeff(), 0.0);
  double tr = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues(i) > floor) tr += std::sqrt(eig.eigenvalues(i));
  }
  return std::clamp(tr * tr, 0.0, 1.0);
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw InvalidInput("uhlmann_fidelity: dimension mismatch");
  return uhlmann_fidelity(rho.matrix(), sigma.matrix());
}

Purification purify(const DensityMatrix& rho, double cutoff) {
  const auto eig = eig_hermitian(rho.matrix());
  const double thr = support_threshold(eig.eigenvalues, cutoff);
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues(i) > thr) support.push_back(i);
  }
  const auto r = static_cast<Eigen::Index>(support.size());
  Purification out;
  out.ancilla_dim = static_cast<int>(r);
  out.dims = rho.dims();
  out.dims.push_back(out.ancilla_dim);
  out.state = Vector::Zero(rho.dim() * r);
  for (Eigen::Index k = 0; k < r; ++k) {
    const double amp = std::sqrt(eig.eigenvalues(support[k]));
    for (Eigen::Index sys = 0; sys < rho.dim(); ++sys) {
      out.state(sys * r + k) = amp * eig.eigenvectors(sys, support[k]);
    }
  }
  return out;
}

DensityMatrix conjugate(const DensityMatrix& rho) {
  return DensityMatrix(rho.dims(), rho.matrix().conjugate());
}

DensityMatrix regularize(const DensityMatrix& rho, double eps) {
  if (eps < 0.0 || eps > 1.0) throw InvalidInput("regularize: eps must lie in [0, 1]");
  const auto d = rho.dim();
  return DensityMatrix(rho.dims(), (1.0 - eps) * rho.matrix() +
                                       eps * Matrix::Identity(d, d) / static_cast<double>(d));
}

Matrix pauli_i() { return Matrix::Identity(2, 2); }

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace chiralkit
