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
#include <string>
#include <string_view>

namespace chiralkit {

inline constexpr int kMaxPauliQubits = 64;

/// Phase-free Pauli string stored as a symplectic pair of bit masks. Bit q of
/// z_bits / x_bits describes qubit q; per qubit (z,x) = (0,0) I, (0,1) X,
/// (1,0) Z, (1,1) Y.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int num_qubits);
  PauliString(int num_qubits, std::uint64_t z_bits, std::uint64_t x_bits);

  /// Parses letters I/X/Y/Z, qubit 0 first.
  static PauliString parse(std::string_view letters);

  int num_qubits() const { return n_; }
  std::uint64_t z_bits() const { return z_; }
  std::uint64_t x_bits() const { return x_; }
  bool z(int q) const { return (z_ >> q) & 1U; }
  bool x(int q) const { return (x_ >> q) & 1U; }

  char letter(int q) const;
  void set_letter(int q, char letter);
  std::string to_string() const;

  int y_count() const;
  int weight() const;
  bool is_identity() const { return (z_ | x_) == 0; }

  /// Symplectic form: true when the strings anticommute.
  bool anticommutes_with(const PauliString& other) const;
  bool commutes_with(const PauliString& other) const { return !anticommutes_with(other); }

  /// Product up to phase.
  PauliString operator*(const PauliString& other) const;
  bool operator==(const PauliString& other) const = default;

  /// Dense 2^n x 2^n matrix, qubit 0 as the most significant tensor factor.
  Matrix matrix() const;

  /// Masks over computational-basis indices (qubit 0 = most significant bit).
  std::uint64_t x_index_mask() const;
  std::uint64_t z_index_mask() const;

 private:
  int n_ = 0;
  std::uint64_t z_ = 0;
  std::uint64_t x_ = 0;
};

/// P|psi> for a phase-free Pauli string.
Vector apply_pauli(const PauliString& p, const Vector& psi);

}  // namespace chiralkit
