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

#include <cstdint>
#include <string>
#include <vector>

namespace chiralkit {

/// Bit-packed vector over GF(2).
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(int size) : size_(size), words_((size + 63) / 64, 0) {}

  int size() const { return size_; }
  bool get(int i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(int i, bool value = true);
  void flip(int i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  bool any() const;
  int count() const;
  /// Inner product mod 2.
  bool dot(const BitVector& other) const;
  BitVector& operator^=(const BitVector& other);
  bool operator==(const BitVector& other) const = default;
  std::string to_string() const;

 private:
  int size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A x = b over GF(2); every row has `cols` entries.
struct F2System {
  std::vector<BitVector> rows;
  BitVector rhs;
  int cols = 0;
};

struct F2Solution {
  bool feasible = false;
  BitVector particular;
  std::vector<BitVector> nullspace;
  int rank = 0;
};

/// Gauss-Jordan elimination; free variables of the particular solution are 0.
F2Solution f2_solve(const F2System& system);

/// Rank of a set of rows.
int f2_rank(std::vector<BitVector> rows);

}  // namespace chiralkit
