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
#include <ostream>
#include <string>
#include <vector>

namespace chiralkit {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  /// Criteria to run; empty runs all 14.
  std::vector<int> only;
  std::uint64_t seed = 20260401;
};

inline constexpr int kAcceptanceCriteria = 14;

CriterionResult run_criterion(int id, std::uint64_t seed);

/// Runs the selected criteria and prints one "[PASS]" or "[FAIL]" line each.
/// Returns the number of failures.
int run_acceptance(std::ostream& out, const AcceptanceOptions& options = {});

}  // namespace chiralkit
