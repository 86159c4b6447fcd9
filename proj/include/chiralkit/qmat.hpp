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

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace chiralkit {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Subsystem dimensions, one entry per tensor factor.
using Dims = std::vector<int>;

inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kHermitianInputTolerance = 1e-8;
/// Relative support cutoff: eigenvalues p <= kSupportCutoff * p_max are
/// treated as zero by logs, powers and purifications.
inline constexpr double kSupportCutoff = 1e-12;

/// Relative eigenvalue level treated as roundoff by square roots.
inline constexpr double kRoundoffFloor = 1e-14;

/// Raised when an input fails a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a density matrix fails the Hermitian / PSD / trace checks.
class InvalidState : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Raised when a numerical post-condition cannot be met.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A checked inequality failed; the message carries the full diagnostic.
class BoundViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense Hermitian, PSD, unit-trace matrix tagged with subsystem dimensions.
/// Construction validates the invariants; the stored matrix is the Hermitian
/// part of the input.
class DensityMatrix {
 public:
  DensityMatrix(Dims dims, const Matrix& data, double tol = kStateTolerance);

  static DensityMatrix pure(Dims dims, const Vector& psi,
                            double tol = kStateTolerance);
  static DensityMatrix maximally_mixed(Dims dims);

  const Dims& dims() const { return dims_; }
  const Matrix& matrix() const { return data_; }
  Eigen::Index dim() const { return data_.rows(); }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }

 private:
  Dims dims_;
  Matrix data_;
};

/// Ordered list of disjoint subsystem groups covering every subsystem.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<std::vector<int>> groups);

  /// Parses "0,1|2" style specifications.
  static Partition parse(const std::string& text);
  static Partition singletons(int num_subsystems);
  static Partition bipartition(int num_subsystems, std::vector<int> first);

  /// Throws InvalidInput unless the groups cover 0..num_subsystems-1 exactly.
  void validate(int num_subsystems) const;

  const std::vector<std::vector<int>>& groups() const { return groups_; }
  const std::vector<int>& group(int i) const { return groups_.at(i); }
  int size() const { return static_cast<int>(groups_.size()); }
  Partition swapped() const;
  std::string to_string() const;

 private:
  std::vector<std::vector<int>> groups_;
};

struct EigenDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns
};

std::size_t total_dim(const Dims& dims);

EigenDecomposition eig_hermitian(const Matrix& m,
                                 double tol = kHermitianInputTolerance);

/// Largest absolute entry of m - m^dagger.
double hermitian_defect(const Matrix& m);

/// log of a PSD matrix restricted to its support (kernel maps to 0).
Matrix log_on_support(const Matrix& psd, double cutoff = kSupportCutoff);
Matrix matrix_log_on_support(const DensityMatrix& rho,
                             double cutoff = kSupportCutoff);

/// sum_{p_i > cutoff} p_i^{is} |i><i| + projector onto the kernel.
Matrix imaginary_power(const DensityMatrix& rho, double s,
                       double cutoff = kSupportCutoff);
Matrix imaginary_power(const EigenDecomposition& eig, double s,
                       double cutoff = kSupportCutoff);

/// Real power of a PSD matrix on its support.
Matrix psd_power(const Matrix& psd, double exponent,
                 double cutoff = kSupportCutoff);
Matrix psd_sqrt(const Matrix& psd);

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);
DensityMatrix tensor_product(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Reorders tensor factors: position i of the result holds subsystem perm[i].
Matrix permute_subsystems(const Matrix& op, const Dims& dims,
                          std::span<const int> perm);
Vector permute_subsystems(const Vector& psi, const Dims& dims,
                          std::span<const int> perm);

/// Lifts an operator on the listed subsystems (in listed order) to the full
/// space, acting as identity elsewhere.
Matrix embed(const Matrix& op, const Dims& dims, std::span<const int> subsystems);

Matrix partial_trace(const Matrix& m, const Dims& dims, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

Matrix partial_transpose(const Matrix& m, const Dims& dims,
                         std::span<const int> part);
Matrix partial_transpose(const DensityMatrix& rho, std::span<const int> part);

double trace_norm(const Matrix& m);
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double uhlmann_fidelity(const Matrix& rho, const Matrix& sigma);

struct Purification {
  Vector state;      // index = system_index * ancilla_dim + ancilla_index
  Dims dims;         // system dims followed by the ancilla dimension
  int ancilla_dim = 0;
};

/// |rho> = sum_i sqrt(p_i) |phi_i>|i>, ascending eigenvalue order, support only.
Purification purify(const DensityMatrix& rho, double cutoff = kSupportCutoff);

DensityMatrix conjugate(const DensityMatrix& rho);

/// Mixes towards the maximally mixed state: (1 - eps) rho + eps I / d.
DensityMatrix regularize(const DensityMatrix& rho, double eps);

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
inline Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

/// Single-qubit Pauli matrices.
Matrix pauli_i();
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

}  // namespace chiralkit
