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


#include "chiralkit/state_io.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace chiralkit {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputFileError(kExitMalformed, "cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DensityMatrix parse_state_json(const std::string& text, double tol) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputFileError(kExitMalformed, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("matrix") ||
      !doc["dims"].is_array() || !doc["matrix"].is_array()) {
    throw InputFileError(kExitMalformed, "state file needs array fields 'dims' and 'matrix'");
  }
  if (doc.contains("label") && !doc["label"].is_string()) {
    throw InputFileError(kExitMalformed, "state file field 'label' must be a string");
  }
  Dims dims;
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_integer()) throw InputFileError(kExitMalformed, "dims must be integers");
    const auto v = d.get<long long>();
    if (v < 1 || v > 1024) throw InputFileError(kExitShape, "dims entries must be in [1, 1024]");
    dims.push_back(static_cast<int>(v));
  }
  if (dims.empty()) throw InputFileError(kExitShape, "dims must not be empty");
  long long d = 1;
  for (int v : dims) {
    d *= v;
    if (d > 1024) throw InputFileError(kExitShape, "total dimension exceeds 1024");
  }
  const auto& entries = doc["matrix"];
  if (static_cast<long long>(entries.size()) != d * d) {
    throw InputFileError(kExitShape, "matrix has " + std::to_string(entries.size()) +
                                         " entries, expected " + std::to_string(d * d));
  }
  Matrix m(d, d);
  for (long long k = 0; k < d * d; ++k) {
    const auto& e = entries[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw InputFileError(kExitMalformed, "matrix entries must be [re, im] number pairs");
    }
    m(k / d, k % d) = cplx(e[0].get<double>(), e[1].get<double>());
  }
  try {
    return DensityMatrix(dims, m, tol);
  } catch (const InvalidInput& e) {
    throw InputFileError(kExitInvariant, e.what());
  }
}

DensityMatrix parse_state_file(const std::string& path, double tol) {
  try {
    return parse_state_json(read_text_file(path), tol);
  } catch (const InputFileError& e) {
    throw InputFileError(e.exit_code(), path + ": " + e.what());
  }
}

std::string state_json(const DensityMatrix& rho, const std::string& label) {
  nlohmann::ordered_json doc;
  doc["dims"] = rho.dims();
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    for (Eigen::Index j = 0; j < rho.dim(); ++j) {
      entries.push_back({rho.matrix()(i, j).real(), rho.matrix()(i, j).imag()});
    }
  }
  doc["matrix"] = std::move(entries);
  if (!label.empty()) doc["label"] = label;
  return doc.dump();
}

}  // namespace chiralkit
