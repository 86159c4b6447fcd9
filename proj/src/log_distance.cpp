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


#include "chiralkit/chirality.hpp"

#include "chiralkit/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace chiralkit {

namespace {

// Purification of rho with subsystems regrouped so that each party is one
// contiguous tensor factor; the purifying ancilla is the last party.
struct PartyLayout {
  std::vector<Eigen::Index> dims;
  Vector source;  // |rho>
  Vector target;  // |rho*>
};

PartyLayout party_layout(const DensityMatrix& rho, const Partition& partition) {
  partition.validate(rho.num_subsystems());
  const Purification pur = purify(rho);
  std::vector<int> order;
  PartyLayout layout;
  for (const auto& group : partition.groups()) {
    Eigen::Index d = 1;
    for (int s : group) {
      order.push_back(s);
      d *= rho.dims()[s];
    }
    layout.dims.push_back(d);
  }
  order.push_back(rho.num_subsystems());
  layout.dims.push_back(pur.ancilla_dim);
  layout.source = permute_subsystems(pur.state, pur.dims, order);
  layout.target = layout.source.conjugate();
  return layout;
}

struct Slicing {
  Eigen::Index left = 1;
  Eigen::Index mid = 1;
  Eigen::Index right = 1;
};

Slicing slicing(const std::vector<Eigen::Index>& dims, std::size_t k) {
  Slicing s;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    if (j < k) s.left *= dims[j];
    if (j == k) s.mid = dims[j];
    if (j > k) s.right *= dims[j];
  }
  return s;
}

// Mode-k unfolding: row = party-k index, column = (left, right) multi-index.
Matrix unfold(const Vector& v, const Slicing& s) {
  Matrix out(s.mid, s.left * s.right);
  for (Eigen::Index l = 0; l < s.left; ++l) {
    for (Eigen::Index a = 0; a < s.mid; ++a) {
      for (Eigen::Index r = 0; r < s.right; ++r) {
        out(a, l * s.right + r) = v((l * s.mid + a) * s.right + r);
      }
    }
  }
  return out;
}

Vector fold(const Matrix& m, const Slicing& s) {
  Vector out(s.left * s.mid * s.right);
  for (Eigen::Index l = 0; l < s.left; ++l) {
    for (Eigen::Index a = 0; a < s.mid; ++a) {
      for (Eigen::Index r = 0; r < s.right; ++r) {
        out((l * s.mid + a) * s.right + r) = m(a, l * s.right + r);
      }
    }
  }
  return out;
}

Vector apply_party(const Vector& v, const std::vector<Eigen::Index>& dims, std::size_t k,
                   const Matrix& u) {
  const Slicing s = slicing(dims, k);
  return fold(u * unfold(v, s), s);
}

struct RestartOutcome {
  double fidelity = 0.0;
  std::vector<Matrix> unitaries;
  int iterations = 0;
  bool converged = false;
};

RestartOutcome optimize_restart(const PartyLayout& layout, std::vector<Matrix> unitaries,
                                const LogDistanceOptions& options) {
  const std::size_t parties = layout.dims.size();
  Vector current = layout.source;
  for (std::size_t k = 0; k < parties; ++k) current = apply_party(current, layout.dims, k, unitaries[k]);

  RestartOutcome out;
  double fidelity = std::norm(layout.target.dot(current));
  for (int it = 1; it <= options.max_iters; ++it) {
    for (std::size_t k = 0; k < parties; ++k) {
      const Slicing s = slicing(layout.dims, k);
      const Vector others = apply_party(current, layout.dims, k, unitaries[k].adjoint());
      // f = Tr(U_k M) with M = X Y^dagger; the maximizer is V W^dagger for M = W S V^dagger.
      const Matrix m = unfold(others, s) * unfold(layout.target, s).adjoint();
      Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
      unitaries[k] = svd.matrixV() * svd.matrixU().adjoint();
      current = apply_party(others, layout.dims, k, unitaries[k]);
    }
    const double next = std::norm(layout.target.dot(current));
    out.iterations = it;
    const double gain = next - fidelity;
    fidelity = next;
    if (gain < options.tol) {
      out.converged = true;
      break;
    }
  }
  out.fidelity = std::min(fidelity, 1.0);
  out.unitaries = std::move(unitaries);
  return out;
}

}  // namespace

double purified_overlap(const DensityMatrix& rho, const Partition& partition,
                        const std::vector<Matrix>& unitaries) {
  const PartyLayout layout = party_layout(rho, partition);
  if (unitaries.size() != layout.dims.size()) {
    throw InvalidInput("purified_overlap: expected one unitary per party plus the ancilla");
  }
  Vector v = layout.source;
  for (std::size_t k = 0; k < unitaries.size(); ++k) {
    if (unitaries[k].rows() != layout.dims[k] || unitaries[k].cols() != layout.dims[k]) {
      throw InvalidInput("purified_overlap: unitary dimension mismatch for party " +
                         std::to_string(k));
    }
    v = apply_party(v, layout.dims, k, unitaries[k]);
  }
  return std::norm(layout.target.dot(v));
}

LogDistanceResult chiral_log_distance(const DensityMatrix& rho, const Partition& partition,
                                      const LogDistanceOptions& options) {
  if (options.restarts < 1) throw InvalidInput("chiral_log_distance: restarts must be >= 1");
  if (options.max_iters < 1) throw InvalidInput("chiral_log_distance: max_iters must be >= 1");
  if (!(options.tol > 0.0)) throw InvalidInput("chiral_log_distance: tol must be > 0");
  const PartyLayout layout = party_layout(rho, partition);

  LogDistanceResult result;
  OptimizationResult& detail = result.detail;
  detail.best_fidelity = -1.0;
  for (const auto& warm : options.warm_starts) {
    if (warm.size() != layout.dims.size()) {
      throw InvalidInput("chiral_log_distance: warm start needs one unitary per party");
    }
    for (std::size_t k = 0; k < warm.size(); ++k) {
      if (warm[k].rows() != layout.dims[k] || warm[k].cols() != layout.dims[k]) {
        throw InvalidInput("chiral_log_distance: warm start dimension mismatch");
      }
    }
  }
  const int warm_count = static_cast<int>(options.warm_starts.size());
  const int total = options.restarts + warm_count;
  for (int r = 0; r < total; ++r) {
    std::vector<Matrix> start;
    if (r >= 1 && r <= warm_count) {
      start = options.warm_starts[r - 1];
    } else {
      const int random_index = r == 0 ? 0 : r - warm_count;
      RngStream rng(options.seed, static_cast<std::uint64_t>(random_index));
      for (Eigen::Index d : layout.dims) {
        start.push_back(random_index == 0 ? Matrix::Identity(d, d)
                                          : sample_haar_unitary(static_cast<int>(d), rng));
      }
    }
    RestartOutcome outcome = optimize_restart(layout, std::move(start), options);
    detail.iterations_per_restart.push_back(outcome.iterations);
    detail.converged.push_back(outcome.converged);
    detail.fidelity_per_restart.push_back(outcome.fidelity);
    ++detail.restarts;
    if (outcome.fidelity > detail.best_fidelity) {
      detail.best_fidelity = outcome.fidelity;
      detail.unitaries = std::move(outcome.unitaries);
    }
    if (detail.best_fidelity >= options.stop_at_fidelity) break;
  }
  result.value = detail.best_fidelity > 0.0 ? std::max(0.0, -std::log(detail.best_fidelity))
                                            : std::numeric_limits<double>::infinity();
  result.certified_nonchiral = detail.best_fidelity >= 1.0 - kNonchiralCertificate;
  result.all_converged = std::all_of(detail.converged.begin(), detail.converged.end(),
                                     [](bool c) { return c; });
  return result;
}

PauliLogDistance pauli_log_distance(const Vector& psi, int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxPauliEnumerationQubits) {
    throw InvalidInput("pauli_log_distance: qubit count must be in [1, 7]");
  }
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  if (static_cast<std::uint64_t>(psi.size()) != dim) {
    throw InvalidInput("pauli_log_distance: expected a state of dimension 2^n (qubits only)");
  }
  PauliLogDistance out;
  out.max_overlap = -1.0;
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t z = 0; z < dim; ++z) {
      const PauliString p(num_qubits, z, x);
      const std::uint64_t xm = p.x_index_mask();
      const std::uint64_t zm = p.z_index_mask();
      cplx acc = 0.0;
      for (std::uint64_t a = 0; a < dim; ++a) {
        const cplx term = psi(static_cast<Eigen::Index>(a ^ xm)) * psi(static_cast<Eigen::Index>(a));
        acc += (std::popcount(a & zm) % 2) ? -term : term;
      }
      const double overlap = std::norm(acc);
      if (overlap > out.max_overlap) {
        out.max_overlap = overlap;
        out.best = p;
      }
    }
  }
  out.max_overlap = std::min(out.max_overlap, 1.0);
  out.value = out.max_overlap > 0.0 ? std::max(0.0, -std::log(out.max_overlap))
                                    : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace chiralkit
