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


#include "chiralkit/stabilizer.hpp"

#include "chiralkit/random.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace chiralkit {

StabilizerGroup::StabilizerGroup(int num_qubits, std::vector<PauliString> generators,
                                 std::vector<bool> negative)
    : n_(num_qubits), generators_(std::move(generators)), negative_(std::move(negative)) {
  if (n_ < 1 || n_ > kMaxPauliQubits) throw InvalidInput("StabilizerGroup: bad qubit count");
  if (negative_.empty()) negative_.assign(generators_.size(), false);
  if (negative_.size() != generators_.size()) {
    throw InvalidInput("StabilizerGroup: one sign per generator required");
  }
  if (size() > n_) throw InvalidInput("StabilizerGroup: more generators than qubits");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].num_qubits() != n_) {
      throw InvalidInput("StabilizerGroup: generator " + std::to_string(i) +
                         " has the wrong length");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (generators_[i].anticommutes_with(generators_[j])) {
        throw InvalidInput("StabilizerGroup: generators " + std::to_string(j) + " and " +
                           std::to_string(i) + " anticommute");
      }
    }
  }
  if (f2_rank(generator_matrix()) != size()) {
    throw InvalidInput("StabilizerGroup: generators are linearly dependent");
  }
}

std::vector<BitVector> StabilizerGroup::generator_matrix() const {
  std::vector<BitVector> rows;
  for (const auto& g : generators_) {
    BitVector row(2 * n_);
    for (int q = 0; q < n_; ++q) {
      row.set(q, g.z(q));
      row.set(n_ + q, g.x(q));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string StabilizerGroup::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    os << (negative_[i] ? '-' : '+') << generators_[i].to_string() << '\n';
  }
  return os.str();
}

StabilizerGroup parse_tableau(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<PauliString> gens;
  std::vector<bool> neg;
  int n = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    }
    if (t.empty() || t[0] == '#') continue;
    bool minus = false;
    if (t[0] == '+' || t[0] == '-') {
      minus = t[0] == '-';
      t.erase(0, 1);
    } else if (t.rfind("\xE2\x88\x92", 0) == 0) {
      minus = true;
      t.erase(0, 3);
    }
    try {
      gens.push_back(PauliString::parse(t));
    } catch (const InvalidInput& e) {
      throw InvalidInput("tableau line " + std::to_string(line_no) + ": " + e.what());
    }
    if (n < 0) n = gens.back().num_qubits();
    if (gens.back().num_qubits() != n || n == 0) {
      throw InvalidInput("tableau line " + std::to_string(line_no) + ": length mismatch");
    }
    neg.push_back(minus);
  }
  if (gens.empty()) throw InvalidInput("tableau: no generators");
  return StabilizerGroup(n, std::move(gens), std::move(neg));
}

DensityMatrix stabilizer_state(const StabilizerGroup& group) {
  const int n = group.num_qubits();
  if (n > 10) throw InvalidInput("stabilizer_state: dense output limited to 10 qubits");
  const Eigen::Index d = Eigen::Index{1} << n;
  Matrix rho = Matrix::Identity(d, d);
  for (int i = 0; i < group.size(); ++i) {
    const double s = group.negative()[i] ? -1.0 : 1.0;
    rho = rho * (Matrix::Identity(d, d) + s * group.generators()[i].matrix()) * 0.5;
  }
  rho *= std::pow(2.0, group.size() - n);
  return DensityMatrix(Dims(static_cast<std::size_t>(n), 2), rho);
}

namespace {

Vector column_state(const Matrix& projector) {
  Eigen::Index best = 0;
  projector.colwise().norm().maxCoeff(&best);
  Vector v = projector.col(best);
  v /= v.norm();
  Eigen::Index lead = 0;
  v.cwiseAbs().maxCoeff(&lead);
  v *= std::abs(v(lead)) / v(lead);
  return v;
}

}  // namespace

Vector stabilizer_pure_state(const StabilizerGroup& group) {
  if (group.size() != group.num_qubits()) {
    throw InvalidInput("stabilizer_pure_state: needs k = n generators");
  }
  return column_state(stabilizer_state(group).matrix());
}

std::vector<PauliString> ConjugationSolution::all_solutions() const {
  std::vector<PauliString> out;
  const int m = nullspace_dim();
  if (m > 20) throw InvalidInput("ConjugationSolution: solution set too large to list");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    PauliString p = q;
    for (int j = 0; j < m; ++j) {
      if ((mask >> j) & 1U) p = p * nullspace[j];
    }
    out.push_back(p);
  }
  return out;
}

ConjugationSolution conjugation_pauli(const StabilizerGroup& group) {
  const int n = group.num_qubits();
  F2System sys;
  sys.cols = 2 * n;
  sys.rows = group.generator_matrix();
  sys.rhs = BitVector(group.size());
  for (int i = 0; i < group.size(); ++i) sys.rhs.set(i, group.generators()[i].y_count() % 2);
  const F2Solution sol = f2_solve(sys);
  if (!sol.feasible) throw NumericalError("conjugation_pauli: system infeasible for a valid group");
  // Unknowns are ordered (v_X, v_Z) to match the [M_Z | M_X] columns.
  auto to_pauli = [n](const BitVector& v) {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    for (int qb = 0; qb < n; ++qb) {
      if (v.get(qb)) x |= std::uint64_t{1} << qb;
      if (v.get(n + qb)) z |= std::uint64_t{1} << qb;
    }
    return PauliString(n, z, x);
  };
  ConjugationSolution out;
  out.q = to_pauli(sol.particular);
  for (const auto& v : sol.nullspace) out.nullspace.push_back(to_pauli(v));
  return out;
}

namespace {

void check_qubit_state(const Vector& psi, int n, int max_n, const char* what) {
  if (n < 1 || n > max_n) {
    throw InvalidInput(std::string(what) + ": qubit count must be in [1, " +
                       std::to_string(max_n) + "]");
  }
  if (psi.size() != (Eigen::Index{1} << n)) {
    throw InvalidInput(std::string(what) + ": state dimension must be 2^n");
  }
}

}  // namespace

int stabilizer_nullity(const Vector& psi, int num_qubits, double tol) {
  check_qubit_state(psi, num_qubits, kMaxEnumerationQubits, "stabilizer_nullity");
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t z = 0; z < dim; ++z) {
      const PauliString p(num_qubits, z, x);
      const std::uint64_t xm = p.x_index_mask();
      const std::uint64_t zm = p.z_index_mask();
      cplx acc = 0.0;
      for (std::uint64_t a = 0; a < dim; ++a) {
        const cplx term = std::conj(psi(static_cast<Eigen::Index>(a ^ xm))) *
                          psi(static_cast<Eigen::Index>(a));
        acc += (std::popcount(a & zm) % 2) ? -term : term;
      }
      if (std::abs(acc) > 1.0 - tol) ++count;
    }
  }
  if (!std::has_single_bit(count)) {
    throw NumericalError("stabilizer_nullity: " + std::to_string(count) +
                         " definite Pauli strings is not a power of two; adjust tol");
  }
  return num_qubits - std::countr_zero(count);
}

namespace {

struct EnumerationCache {
  std::vector<Vector> states;
  int subspaces = 0;
};

// Lagrangian subspaces of F_2^{2n} as canonical reduced row-echelon bases.
std::vector<std::vector<PauliString>> lagrangian_subspaces(int n) {
  std::vector<std::vector<PauliString>> out;
  const int cols = 2 * n;
  auto row_to_pauli = [n](std::uint32_t row) {
    std::uint64_t z = row & ((1U << n) - 1);
    std::uint64_t x = row >> n;
    return PauliString(n, z, x);
  };
  for (std::uint32_t pivmask = 0; pivmask < (1U << cols); ++pivmask) {
    if (std::popcount(pivmask) != n) continue;
    std::vector<int> piv;
    for (int c = 0; c < cols; ++c) {
      if ((pivmask >> c) & 1U) piv.push_back(c);
    }
    // Free positions: non-pivot columns to the right of each row's pivot.
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < n; ++i) {
      for (int c = piv[i] + 1; c < cols; ++c) {
        if (!((pivmask >> c) & 1U)) free_pos.emplace_back(i, c);
      }
    }
    const auto nfree = static_cast<std::uint32_t>(free_pos.size());
    for (std::uint64_t fill = 0; fill < (std::uint64_t{1} << nfree); ++fill) {
      std::vector<std::uint32_t> rows(n);
      for (int i = 0; i < n; ++i) rows[i] = 1U << piv[i];
      for (std::uint32_t f = 0; f < nfree; ++f) {
        if ((fill >> f) & 1U) rows[free_pos[f].first] |= 1U << free_pos[f].second;
      }
      std::vector<PauliString> gens;
      bool isotropic = true;
      for (int i = 0; i < n && isotropic; ++i) {
        gens.push_back(row_to_pauli(rows[i]));
        for (int j = 0; j < i; ++j) {
          if (gens[i].anticommutes_with(gens[j])) {
            isotropic = false;
            break;
          }
        }
      }
      if (isotropic) out.push_back(std::move(gens));
    }
  }
  return out;
}

std::string fingerprint(const Vector& v) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    os << std::llround(v(i).real() * 1e8) << ',' << std::llround(v(i).imag() * 1e8) << ';';
  }
  return os.str();
}

EnumerationCache build_enumeration(int n) {
  EnumerationCache cache;
  const auto subspaces = lagrangian_subspaces(n);
  cache.subspaces = static_cast<int>(subspaces.size());
  std::set<std::string> seen;
  const Eigen::Index d = Eigen::Index{1} << n;
  for (const auto& gens : subspaces) {
    std::vector<Matrix> mats;
    for (const auto& g : gens) mats.push_back(g.matrix());
    for (std::uint32_t signs = 0; signs < (1U << n); ++signs) {
      Matrix proj = Matrix::Identity(d, d);
      for (int i = 0; i < n; ++i) {
        const double s = ((signs >> i) & 1U) ? -1.0 : 1.0;
        proj = proj * (Matrix::Identity(d, d) + s * mats[i]) * 0.5;
      }
      Vector v = column_state(proj);
      if (seen.insert(fingerprint(v)).second) cache.states.push_back(std::move(v));
    }
  }
  return cache;
}

const EnumerationCache& enumeration(int n) {
  if (n < 1 || n > kMaxFidelityQubits) {
    throw InvalidInput("stabilizer enumeration supports 1 to 4 qubits (36720 states at n = 4); "
                       "larger n needs a dedicated search");
  }
  static std::mutex mutex;
  static std::map<int, EnumerationCache> caches;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = caches.find(n);
  if (it == caches.end()) it = caches.emplace(n, build_enumeration(n)).first;
  return it->second;
}

}  // namespace

const std::vector<Vector>& enumerate_stabilizer_states(int num_qubits) {
  return enumeration(num_qubits).states;
}

int count_lagrangian_subspaces(int num_qubits) { return enumeration(num_qubits).subspaces; }

double stabilizer_fidelity(const Vector& psi, int num_qubits) {
  check_qubit_state(psi, num_qubits, kMaxFidelityQubits, "stabilizer_fidelity");
  double best = 0.0;
  for (const auto& phi : enumerate_stabilizer_states(num_qubits)) {
    best = std::max(best, std::norm(phi.dot(psi)));
  }
  return std::min(best, 1.0);
}

MagicBoundsReport verify_magic_bounds(const Vector& psi, int num_qubits, int restarts,
                                      std::uint64_t seed) {
  check_qubit_state(psi, num_qubits, kMaxFidelityQubits, "verify_magic_bounds");
  const Dims dims(static_cast<std::size_t>(num_qubits), 2);
  const DensityMatrix rho = DensityMatrix::pure(dims, psi);
  MagicBoundsReport r;
  LogDistanceOptions opts;
  opts.restarts = restarts;
  opts.seed = seed;
  opts.stop_at_fidelity = 1.0 - 1e-12;
  const PauliLogDistance cp = pauli_log_distance(psi, num_qubits);
  std::vector<Matrix> warm;
  for (int q = 0; q < num_qubits; ++q) {
    warm.push_back(PauliString::parse(std::string(1, cp.best.letter(q))).matrix());
  }
  warm.push_back(Matrix::Identity(1, 1));
  opts.warm_starts.push_back(std::move(warm));
  r.optimizer = chiral_log_distance(rho, Partition::singletons(num_qubits), opts);
  r.log_distance = r.optimizer.value;
  r.pauli_log_distance = cp.value;
  r.best_pauli = cp.best;
  r.nullity = stabilizer_nullity(psi, num_qubits);
  r.fidelity = stabilizer_fidelity(psi, num_qubits);
  r.minus_two_log_f = -2.0 * std::log(r.fidelity);

  std::vector<std::string> failures;
  const double eps = r.epsilon;
  if (r.log_distance > r.pauli_log_distance + eps) failures.push_back("C > C_P");
  if (r.pauli_log_distance > r.nullity * std::log(2.0) + eps) failures.push_back("C_P > nu ln 2");
  if (r.pauli_log_distance > r.nullity + eps) failures.push_back("C_P > nu");
  if (r.pauli_log_distance > r.minus_two_log_f + eps) failures.push_back("C_P > -2 log F");
  if (r.nullity == 0 && (r.log_distance > eps || r.pauli_log_distance > eps ||
                         r.minus_two_log_f > eps)) {
    failures.push_back("stabilizer input without saturation");
  }
  if (!failures.empty()) {
    std::ostringstream os;
    os.precision(17);
    os << "magic bound violated:";
    for (const auto& f : failures) os << ' ' << f << ';';
    os << " C=" << r.log_distance << " C_P=" << r.pauli_log_distance << " nu=" << r.nullity
       << " -2logF=" << r.minus_two_log_f << " state=[";
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      os << (i ? ", " : "") << psi(i).real() << (psi(i).imag() < 0 ? "" : "+") << psi(i).imag()
         << 'i';
    }
    os << ']';
    throw BoundViolation(os.str());
  }
  return r;
}

StabilizerGroup random_stabilizer_group(int num_qubits, int k, RngStream& rng) {
  if (num_qubits < 1 || num_qubits > 16 || k < 0 || k > num_qubits) {
    throw InvalidInput("random_stabilizer_group: need 0 <= k <= n <= 16");
  }
  const std::uint64_t range = std::uint64_t{1} << num_qubits;
  std::vector<PauliString> gens;
  std::vector<bool> neg;
  while (static_cast<int>(gens.size()) < k) {
    const PauliString cand(num_qubits, rng.below(range), rng.below(range));
    if (cand.is_identity()) continue;
    bool ok = true;
    for (const auto& g : gens) {
      if (g.anticommutes_with(cand)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    gens.push_back(cand);
    std::vector<BitVector> rows;
    for (const auto& g : gens) {
      BitVector row(2 * num_qubits);
      for (int q = 0; q < num_qubits; ++q) {
        row.set(q, g.z(q));
        row.set(num_qubits + q, g.x(q));
      }
      rows.push_back(std::move(row));
    }
    if (f2_rank(std::move(rows)) != static_cast<int>(gens.size())) {
      gens.pop_back();
      continue;
    }
    neg.push_back(rng.below(2) == 1);
  }
  return StabilizerGroup(num_qubits, std::move(gens), std::move(neg));
}

}  // namespace chiralkit
