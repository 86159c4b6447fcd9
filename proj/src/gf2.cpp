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


#include "chiralkit/gf2.hpp"

#include "chiralkit/qmat.hpp"

#include <bit>

namespace chiralkit {

void BitVector::set(int i, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= bit;
  } else {
    words_[i / 64] &= ~bit;
  }
}

bool BitVector::any() const {
  for (auto w : words_) {
    if (w) return true;
  }
  return false;
}

int BitVector::count() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool BitVector::dot(const BitVector& other) const {
  if (other.size_ != size_) throw InvalidInput("BitVector::dot: size mismatch");
  int c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & other.words_[i]);
  return c % 2;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_) throw InvalidInput("BitVector::operator^=: size mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::string BitVector::to_string() const {
  std::string out(static_cast<std::size_t>(size_), '0');
  for (int i = 0; i < size_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

F2Solution f2_solve(const F2System& system) {
  const int m = static_cast<int>(system.rows.size());
  const int n = system.cols;
  if (system.rhs.size() != m) throw InvalidInput("f2_solve: rhs length differs from row count");
  std::vector<BitVector> rows = system.rows;
  std::vector<bool> rhs(m);
  for (int i = 0; i < m; ++i) {
    if (rows[i].size() != n) throw InvalidInput("f2_solve: row length differs from cols");
    rhs[i] = system.rhs.get(i);
  }
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int sel = -1;
    for (int i = r; i < m; ++i) {
      if (rows[i].get(c)) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(rows[r], rows[sel]);
    std::swap(rhs[r], rhs[sel]);
    for (int i = 0; i < m; ++i) {
      if (i != r && rows[i].get(c)) {
        rows[i] ^= rows[r];
        rhs[i] = rhs[i] != rhs[r];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  F2Solution out;
  out.rank = r;
  for (int i = r; i < m; ++i) {
    if (rhs[i]) return out;
  }
  out.feasible = true;
  out.particular = BitVector(n);
  for (int i = 0; i < r; ++i) out.particular.set(pivots[i], rhs[i]);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(n);
    v.set(f);
    for (int i = 0; i < r; ++i) {
      if (rows[i].get(f)) v.set(pivots[i]);
    }
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

int f2_rank(std::vector<BitVector> rows) {
  if (rows.empty()) return 0;
  F2System sys{std::move(rows), BitVector(0), 0};
  sys.cols = sys.rows.front().size();
  sys.rhs = BitVector(static_cast<int>(sys.rows.size()));
  return f2_solve(sys).rank;
}

}  // namespace chiralkit
