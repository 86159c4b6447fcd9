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

#include "chiralkit/chirality.hpp"
#include "chiralkit/qmat.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace chiralkit {

/// R^{-1}(O): in the eigenbasis of rho, entry (j,k) times 2 / (p_j + p_k),
/// zeroed when p_j + p_k <= cutoff * p_max.
Matrix sld_apply(const DensityMatrix& rho, const Matrix& o, double cutoff = kSupportCutoff);
Matrix sld_apply(const EigenDecomposition& eig, const Matrix& o, double cutoff = kSupportCutoff);

inline constexpr double kSldTruncation = 8.0;
inline constexpr int kSldPanels = 256;

/// int ds rho^{-1/2+is} O rho^{-1/2-is} / cosh(pi s) on [-S, S]. Full rank only.
Matrix sld_integral_form(const DensityMatrix& rho, const Matrix& o,
                         double truncation = kSldTruncation, int panels = kSldPanels);

/// Smallest S >= kSldTruncation whose tail bound 4 |O|_F e^{-pi S} / (pi p_min)
/// is below `target`.
double sld_truncation_for(const DensityMatrix& rho, const Matrix& o, double target);

/// F_H = -Tr([H, rho] R^{-1}([H, rho])); 4 Var(H) on pure states.
double qfi(const DensityMatrix& rho, const Matrix& h);

/// QFI of rho_AB with generator K_party (embedded modular Hamiltonian).
double intrinsic_ip(const DensityMatrix& rho, const Partition& split, Party party);
double intrinsic_ip(const ModularSet& ms, Party party);

inline constexpr double kDegeneracyGap = 1e-8;
inline constexpr double kCommutatorTolerance = 1e-9;

/// rho_AB = sum_i p_i |i><i| (x) rho_i with |i> the eigenbasis of the party marginal.
struct CQDecomposition {
  Party party = Party::A;
  Dims dims;
  Partition split;
  Matrix basis;                     // columns |i> on the party space
  RealVector probabilities;         // ascending, matches basis columns
  std::vector<Matrix> conditionals;  // rho_i on the other party

  Matrix reconstruct() const;
};

struct CQCheck {
  std::optional<CQDecomposition> decomposition;
  std::string reason;
  double commutator_norm = 0.0;
  double min_gap = 0.0;
};

/// Requires ||[rho_AB, rho_party (x) I]||_F < tol and all marginal eigenvalue
/// gaps above kDegeneracyGap.
CQCheck is_classical_quantum(const DensityMatrix& rho, const Partition& split, Party party,
                             double tol = kCommutatorTolerance);

struct MakhlinInvariants {
  Eigen::Matrix3d beta;  // beta_ij = Tr(rho sigma_i (x) sigma_j) / 4
  double det_beta = 0.0;
  double trace_btb = 0.0;
  double trace_btb_sq = 0.0;
};

inline constexpr double kMaximallyMixedTolerance = 1e-8;

/// Two-qubit state with both marginals I/2.
MakhlinInvariants makhlin_invariants(const DensityMatrix& rho);

struct NoncommutativityVerdict {
  bool nonchiral_certified = false;
  int condition = 0;  // 1, 2 or 3 when certified
  std::string reason;
  double commutator_a = 0.0;
  double commutator_b = 0.0;
  std::optional<MakhlinInvariants> makhlin;
};

NoncommutativityVerdict noncommutativity_verdict(const DensityMatrix& rho, const Partition& split,
                                                 double tol = kCommutatorTolerance);

inline constexpr double kC2 = 0.563;
inline constexpr double kBoundSlack = 1e-8;

/// c(2) = 0.563, c(d) = (log d)^2 for d >= 3.
double c_of_d(int d);

struct GammaQfiReport {
  double gamma = 0.0;
  double f_a = 0.0;
  double f_b = 0.0;
  double tr_a_ka2 = 0.0;  // Tr(rho_A K_A^2)
  double tr_b_kb2 = 0.0;
  int d_a = 0;
  int d_b = 0;
  /// Right side minus |gamma|^2 for: Tr(rho_A K_A^2) F^(B), Tr(rho_B K_B^2) F^(A),
  /// c(d_A) F^(B), c(d_B) F^(A).
  double slack[4] = {0.0, 0.0, 0.0, 0.0};

  double min_slack() const;
};

/// Throws BoundViolation with a state dump when any slack is below -kBoundSlack.
GammaQfiReport check_gamma_qfi_bound(const DensityMatrix& rho, const Partition& split);

struct SimplexMax {
  double value = 0.0;
  RealVector argmax;
};

/// max of sum_i x_i (log x_i)^2 over the simplex: projected gradient ascent
/// from `starts` points (the first is uniform, the rest random).
SimplexMax simplex_entropy_max(int d, int starts = 100, std::uint64_t seed = 0);

/// Bures-type finite difference: D^2 / dx^2 with D^2 = 2 (1 - sqrt F) between
/// rho and e^{-i H dx} rho e^{i H dx}, and its ratio to qfi(rho, H).
struct BuresEstimate {
  double finite_difference = 0.0;
  double qfi = 0.0;
  double ratio = 0.0;
};

BuresEstimate bures_estimate(const DensityMatrix& rho, const Matrix& h, double dx = 1e-3);

}  // namespace chiralkit
