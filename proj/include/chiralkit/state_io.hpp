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

#include <string>

namespace chiralkit {

enum ExitCode : int {
  kExitOk = 0,
  kExitAssertion = 1,
  kExitMalformed = 2,
  kExitShape = 3,
  kExitInvariant = 4,
  kExitUsage = 64,
};

/// Failure while reading an input file; `exit_code` is one of 2, 3, 4.
class InputFileError : public InvalidInput {
 public:
  InputFileError(int exit_code, const std::string& what)
      : InvalidInput(what), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

/// {"dims": [..], "matrix": [[re, im], ...] row-major, "label": optional}.
DensityMatrix parse_state_json(const std::string& text, double tol = kStateTolerance);
DensityMatrix parse_state_file(const std::string& path, double tol = kStateTolerance);

std::string state_json(const DensityMatrix& rho, const std::string& label = "");

/// Reads a whole text file; missing or unreadable files are malformed input.
std::string read_text_file(const std::string& path);

}  // namespace chiralkit
