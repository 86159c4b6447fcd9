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

#include "chiralkit/pauli.hpp"
#include "chiralkit/qmat.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace chiralkit {

enum class Party { A, B };

Party parse_party(const std::string& text);
const char* party_name(Party p);

/// Modular Hamiltonians K = -log(rho) of a bipartite state and of its two
/// marginals, all embedded on the full space.
struct ModularSet {
  DensityMatrix rho;
  Partition split;
  EigenDecomposition rho_eig;
  Matrix k_ab;
  Matrix k_a;
  Matrix k_b;

  const Matrix& k(Party p) const { return p == Party::A ? k_a : k_b; }
};

ModularSet modular_set(const DensityMatrix& rho, const Partition& split,
                       double cutoff = kSupportCutoff);

/// i Tr(rho X) split into the real value and the discarded imaginary part.
struct TraceValue {
  double value = 0.0;
  double imaginary_residue = 0.0;
};

TraceValue i_trace(const Matrix& rho, const Matrix& x);

// Operators X whose i Tr(rho X) gives the nested-commutator measures.
Matrix j2_operator(const ModularSet& ms);        // {[K_AB, K_A], K_B}
Matrix j3_operator(const ModularSet& ms);        // [[K_AB, [K_AB, K_A]], K_B]
Matrix j3_prime_operator(const ModularSet& ms);  // [[[K_AB, K_B], K_B], K_B]

double j2(const ModularSet& ms);
double j3(const ModularSet& ms);
double j3_prime(const ModularSet& ms);
double j2(const DensityMatrix& rho, const Partition& split);
double j3(const DensityMatrix& rho, const Partition& split);
double j3_prime(const DensityMatrix& rho, const Partition& split);

/// K_P(s) = e^{is K_AB} K_P e^{-is K_AB}, i.e. conjugation by rho^{-is} on the
/// support and identity on the kernel. To first order K_P(s) = K_P + is[K_AB, K_P].
Matrix modular_flow(const ModularSet& ms, const Matrix& op, double s);

struct FlowedPair {
  Matrix plus;   // (K_P(s) + K_P(-s)) / 2
  Matrix minus;  // i (K_P(s) - K_P(-s)) / 2
};

FlowedPair modular_flowed_k(const ModularSet& ms, Party party, double s);

Matrix gamma_s_operator(const ModularSet& ms, double s);  // [K+_A(s), K_B]
Matrix phi_s_operator(const ModularSet& ms, double s);    // {K-_A(s), K_B}

double gamma_s(const ModularSet& ms, double s);
double phi_s(const ModularSet& ms, double s);
double gamma_s(const DensityMatrix& rho, const Partition& split, double s);
double phi_s(const DensityMatrix& rho, const Partition& split, double s);

inline constexpr double kGammaTruncation = 8.0;
inline constexpr int kGammaPanels = 256;

struct GammaIntegral {
  double value = 0.0;
  /// Tail estimate 4 max|gamma_s| e^{-pi S} / pi over both half-lines.
  double truncation_bound = 0.0;
  double truncation = 0.0;
  int panels = 0;
};

/// gamma = int ds gamma_s / cosh(pi s), composite Gauss-Legendre on [-S, S].
/// Requires a full-rank state.
GammaIntegral gamma_integral(const ModularSet& ms, double truncation = kGammaTruncation,
                             int panels = kGammaPanels);
double gamma_integral(const DensityMatrix& rho, const Partition& split);

/// J(A,B,C) = i Tr(rho [K_AB, K_BC]) for a three-group partition.
double modular_commutator(const DensityMatrix& rho, const Partition& split);

/// Named measure values with the tolerance each was computed to.
struct MeasureReport {
  std::map<std::string, double> entries;
  std::map<std::string, double> tolerances;
  std::vector<std::string> warnings;
};

inline constexpr double kResidueWarning = 1e-8;

/// J2, J3, J3', gamma_s and phi_s at every requested s, plus the integrated
/// gamma when rho is full rank.
MeasureReport compute_measures(const DensityMatrix& rho, const Partition& split,
                               const std::vector<double>& s_values);

// ---------------------------------------------------------------------------
// Chiral log-distance

struct LogDistanceOptions {
  int restarts = 10;
  int max_iters = 1000;
  /// Stop a restart once one sweep raises the fidelity by less than this.
  double tol = 1e-12;
  std::uint64_t seed = 0;
  /// Skip remaining restarts once this fidelity is reached (> 1 disables).
  double stop_at_fidelity = 2.0;
  /// Extra starting points, run after the identity start and before the
  /// random ones. Each lists one unitary per party in OptimizationResult order.
  std::vector<std::vector<Matrix>> warm_starts;
};

struct OptimizationResult {
  double best_fidelity = 0.0;
  /// One unitary per partition group followed by the purifying party; they act
  /// on |rho> and the overlap is taken with |rho*>.
  std::vector<Matrix> unitaries;
  int restarts = 0;
  std::vector<int> iterations_per_restart;
  std::vector<bool> converged;
  std::vector<double> fidelity_per_restart;
};

inline constexpr double kNonchiralCertificate = 1e-8;

struct LogDistanceResult {
  /// -log(best fidelity). Local optima only lower the fidelity, so this is an
  /// upper estimate of the true log-distance.
  double value = 0.0;
  OptimizationResult detail;
  /// Fidelity reached 1 within kNonchiralCertificate.
  bool certified_nonchiral = false;
  bool all_converged = false;
};

LogDistanceResult chiral_log_distance(const DensityMatrix& rho, const Partition& partition,
                                      const LogDistanceOptions& options = {});

/// |<rho*| (U_1 (x) ... (x) U_m (x) U_anc) |rho>|^2 for the purification used by
/// chiral_log_distance; `unitaries` as in OptimizationResult.
double purified_overlap(const DensityMatrix& rho, const Partition& partition,
                        const std::vector<Matrix>& unitaries);

struct PauliLogDistance {
  double value = 0.0;
  double max_overlap = 0.0;  // max_P |<psi*|P|psi>|^2
  PauliString best;
};

inline constexpr int kMaxPauliEnumerationQubits = 7;

/// C_P = -log max_P |<psi*|P|psi>|^2 over all phase-free Pauli strings.
PauliLogDistance pauli_log_distance(const Vector& psi, int num_qubits);

}  // namespace chiralkit
