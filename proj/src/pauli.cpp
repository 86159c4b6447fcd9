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

#include "chiralkit/pauli.hpp"

#include <bit>

namespace chiralkit {

namespace {

void check_qubits(int n) {
  if (n < 0 || n > kMaxPauliQubits) {
    throw InvalidInput("PauliString: qubit count must be in [0, 64], got " +
                       std::to_string(n));
  }
}

std::uint64_t low_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

std::uint64_t reverse_bits(std::uint64_t mask, int n) {
  std::uint64_t out = 0;
  for (int q = 0; q < n; ++q) {
    if ((mask >> q) & 1U) out |= std::uint64_t{1} << (n - 1 - q);
  }
  return out;
}

}  // namespace

PauliString::PauliString(int num_qubits) : n_(num_qubits) { check_qubits(num_qubits); }

PauliString::PauliString(int num_qubits, std::uint64_t z_bits, std::uint64_t x_bits)
    : n_(num_qubits), z_(z_bits), x_(x_bits) {
  check_qubits(num_qubits);
  if ((z_bits | x_bits) & ~low_mask(num_qubits)) {
    throw InvalidInput("PauliString: bits set beyond the qubit count");
  }
}

PauliString PauliString::parse(std::string_view letters) {
  PauliString p(static_cast<int>(letters.size()));
  for (int q = 0; q < p.n_; ++q) p.set_letter(q, letters[q]);
  return p;
}

char PauliString::letter(int q) const {
  static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
  return kLetters[(z(q) ? 2 : 0) | (x(q) ? 1 : 0)];
}

void PauliString::set_letter(int q, char letter) {
  if (q < 0 || q >= n_) throw InvalidInput("PauliString: qubit index out of range");
  const std::uint64_t bit = std::uint64_t{1} << q;
  z_ &= ~bit;
  x_ &= ~bit;
  switch (letter) {
    case 'I': case 'i': break;
    case 'X': case 'x': x_ |= bit; break;
    case 'Z': case 'z': z_ |= bit; break;
    case 'Y': case 'y': x_ |= bit; z_ |= bit; break;
    default:
      throw InvalidInput(std::string("PauliString: unknown letter '") + letter + "'");
  }
}

std::string PauliString::to_string() const {
  std::string out(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) out[q] = letter(q);
  return out;
}

int PauliString::y_count() const { return std::popcount(z_ & x_); }

int PauliString::weight() const { return std::popcount(z_ | x_); }

bool PauliString::anticommutes_with(const PauliString& other) const {
  if (other.n_ != n_) throw InvalidInput("PauliString: qubit counts differ");
  return (std::popcount(z_ & other.x_) + std::popcount(x_ & other.z_)) % 2 == 1;
}

PauliString PauliString::operator*(const PauliString& other) const {
  if (other.n_ != n_) throw InvalidInput("PauliString: qubit counts differ");
  return PauliString(n_, z_ ^ other.z_, x_ ^ other.x_);
}

Matrix PauliString::matrix() const {
  Matrix out = Matrix::Identity(1, 1);
  for (int q = 0; q < n_; ++q) {
    switch (letter(q)) {
      case 'X': out = kron(out, pauli_x()); break;
      case 'Y': out = kron(out, pauli_y()); break;
      case 'Z': out = kron(out, pauli_z()); break;
      default: out = kron(out, pauli_i()); break;
    }
  }
  return out;
}

std::uint64_t PauliString::x_index_mask() const { return reverse_bits(x_, n_); }

std::uint64_t PauliString::z_index_mask() const { return reverse_bits(z_, n_); }

Vector apply_pauli(const PauliString& p, const Vector& psi) {
  const int n = p.num_qubits();
  if (n > 30 || psi.size() != (Eigen::Index{1} << n)) {
    throw InvalidInput("apply_pauli: state size does not match 2^n");
  }
  static constexpr cplx kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cplx phase = kIPowers[p.y_count() % 4];
  const std::uint64_t xm = p.x_index_mask();
  const std::uint64_t zm = p.z_index_mask();
  Vector out(psi.size());
  for (std::uint64_t a = 0; a < static_cast<std::uint64_t>(psi.size()); ++a) {
    const double sign = (std::popcount(a & zm) % 2) ? -1.0 : 1.0;
    out(static_cast<Eigen::Index>(a ^ xm)) = phase * sign * psi(static_cast<Eigen::Index>(a));
  }
  return out;
}

}  // namespace chiralkit
