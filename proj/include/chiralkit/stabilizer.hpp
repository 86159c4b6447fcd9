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
#include "chiralkit/gf2.hpp"
#include "chiralkit/pauli.hpp"
#include "chiralkit/qmat.hpp"

#include <string>
#include <vector>

namespace chiralkit {

class RngStream;

/// Independent, mutually commuting Pauli generators with signs.
class StabilizerGroup {
 public:
  /// Throws InvalidInput on dependent or non-commuting generators, or k > n.
  StabilizerGroup(int num_qubits, std::vector<PauliString> generators,
                  std::vector<bool> negative = {});

  int num_qubits() const { return n_; }
  int size() const { return static_cast<int>(generators_.size()); }
  const std::vector<PauliString>& generators() const { return generators_; }
  const std::vector<bool>& negative() const { return negative_; }

  /// Row i is [z bits | x bits] of generator i.
  std::vector<BitVector> generator_matrix() const;
  std::string to_string() const;

 private:
  int n_;
  std::vector<PauliString> generators_;
  std::vector<bool> negative_;
};

/// One generator per line: optional '+' or '-', then I/X/Y/Z letters.
/// Blank lines and lines starting with '#' are ignored.
StabilizerGroup parse_tableau(const std::string& text);

/// rho = 2^{-n} prod_i (I + s_i P_i).
DensityMatrix stabilizer_state(const StabilizerGroup& group);

/// State vector of a group with k = n (fixed global phase: first large entry real).
Vector stabilizer_pure_state(const StabilizerGroup& group);

struct ConjugationSolution {
  PauliString q;
  std::vector<PauliString> nullspace;  // 2n - k elements

  int nullspace_dim() const { return static_cast<int>(nullspace.size()); }
  /// q times every element of the nullspace span; 2^{2n-k} strings.
  std::vector<PauliString> all_solutions() const;
};

/// Solves [M_Z | M_X] [v_X; v_Z] = b with b_i the parity of Y letters in
/// generator i; Q = (z: v_Z, x: v_X) then maps the state to its conjugate.
ConjugationSolution conjugation_pauli(const StabilizerGroup& group);

inline constexpr int kMaxEnumerationQubits = 7;
inline constexpr double kNullityTolerance = 1e-8;

/// n - log2 #{P : |<psi|P|psi>| > 1 - tol}.
int stabilizer_nullity(const Vector& psi, int num_qubits, double tol = kNullityTolerance);

inline constexpr int kMaxFidelityQubits = 4;

/// All pure n-qubit stabilizer states, n <= 4 (6, 60, 1080, 36720). Cached.
const std::vector<Vector>& enumerate_stabilizer_states(int num_qubits);

/// Number of Lagrangian subspaces found during enumeration (3, 15, 135, 2295).
int count_lagrangian_subspaces(int num_qubits);

double stabilizer_fidelity(const Vector& psi, int num_qubits);

inline constexpr double kMagicBoundSlack = 1e-7;

struct MagicBoundsReport {
  double log_distance = 0.0;        // C
  double pauli_log_distance = 0.0;  // C_P
  int nullity = 0;                  // nu
  double fidelity = 0.0;            // stabilizer fidelity F
  double minus_two_log_f = 0.0;
  double epsilon = kMagicBoundSlack;
  PauliString best_pauli;
  LogDistanceResult optimizer;
};

/// Computes C, C_P, nu and -2 log F and checks C <= C_P + eps <= nu + eps and
/// C_P <= -2 log F + eps. Throws BoundViolation with the diagnostic otherwise.
MagicBoundsReport verify_magic_bounds(const Vector& psi, int num_qubits, int restarts,
                                      std::uint64_t seed = 0);

/// Random group of k independent commuting generators with random signs.
StabilizerGroup random_stabilizer_group(int num_qubits, int k, RngStream& rng);

}  // namespace chiralkit
