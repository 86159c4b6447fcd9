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


#include "chiralkit/experiments.hpp"

#include "chiralkit/random.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace chiralkit {

double log_negativity(const DensityMatrix& rho, const Partition& split) {
  if (split.size() != 2) throw InvalidInput("log_negativity expects 2 groups");
  split.validate(rho.num_subsystems());
  return std::log(trace_norm(partial_transpose(rho, split.group(1))));
}

std::array<Vector, 3> example_qubit_states() {
  std::array<Vector, 3> psi;
  for (auto& v : psi) v = Vector::Zero(2);
  psi[0](0) = 1.0;
  psi[1](0) = M_SQRT1_2;
  psi[1](1) = M_SQRT1_2;
  psi[2](0) = 0.5;
  psi[2](1) = cplx(0.0, std::sqrt(3.0) / 2.0);
  return psi;
}

namespace {

void check_distribution(const RealVector& p, Eigen::Index size, const char* what) {
  if (p.size() != size) {
    throw InvalidInput(std::string(what) + ": expected " + std::to_string(size) +
                       " probabilities");
  }
  if ((p.array() <= 0.0).any() || std::abs(p.sum() - 1.0) > 1e-12) {
    throw InvalidInput(std::string(what) + ": probabilities must be positive and sum to 1");
  }
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      if (std::abs(p(i) - p(j)) <= 1e-8) {
        throw InvalidInput(std::string(what) + ": probabilities must be nondegenerate");
      }
    }
  }
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

Matrix basis_projector(Eigen::Index d, Eigen::Index i) {
  Matrix m = Matrix::Zero(d, d);
  m(i, i) = 1.0;
  return m;
}

}  // namespace

DensityMatrix example1_state(const RealVector& p) {
  check_distribution(p, 3, "example1_state");
  const auto psi = example_qubit_states();
  Matrix rho = Matrix::Zero(6, 6);
  for (int i = 0; i < 3; ++i) rho += p(i) * kron(basis_projector(3, i), projector(psi[i]));
  return DensityMatrix({3, 2}, rho);
}

Vector example1_purification(const RealVector& p) {
  check_distribution(p, 3, "example1_purification");
  const auto psi = example_qubit_states();
  Vector out = Vector::Zero(18);
  for (int i = 0; i < 3; ++i) {
    Vector a = Vector::Zero(3);
    a(i) = 1.0;
    out += std::sqrt(p(i)) * kron(kron(a, a), psi[i]);
  }
  return out;
}

DensityMatrix example2_state(const RealVector& p) {
  check_distribution(p, 4, "example2_state");
  const auto psi = example_qubit_states();
  Matrix rest = Matrix::Identity(2, 2) * 0.5;
  Matrix rho = Matrix::Zero(8, 8);
  for (int i = 0; i < 3; ++i) {
    rho += p(i) * kron(basis_projector(4, i), projector(psi[i]));
    rest -= p(i) * projector(psi[i]);
  }
  const Matrix rho4 = rest / p(3);
  if (eig_hermitian(rho4).eigenvalues(0) < -1e-12) {
    throw InvalidInput("example2_state: p_1..p_3 too large for a valid rho_4");
  }
  rho += p(3) * kron(basis_projector(4, 3), rho4);
  return DensityMatrix({4, 2}, rho);
}

Vector t_state() {
  Vector v(2);
  v(0) = M_SQRT1_2;
  v(1) = std::polar(M_SQRT1_2, M_PI / 4.0);
  return v;
}

int worker_threads() {
  if (const char* env = std::getenv("CHIRALKIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 1024L));
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

namespace {

ScanRow scan_sample(std::int64_t index, std::uint64_t master_seed) {
  static const Partition split = Partition::singletons(2);
  ScanRow row;
  row.sample_index = index;
  row.seed = derive_seed(master_seed, static_cast<std::uint64_t>(index));
  RngStream rng(row.seed);
  const DensityMatrix rho = sample_mixed_state({2, 2}, rng);
  row.e_n = log_negativity(rho, split);
  row.abs_j2 = std::abs(j2(rho, split));
  return row;
}

std::vector<double> ranks(const std::vector<double>& x) {
  std::vector<std::size_t> order(x.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidInput("pearson: need two equal-length samples of size >= 2");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(ranks(x), ranks(y));
}

ScanSummary summarize_scan(const std::vector<ScanRow>& rows) {
  ScanSummary s;
  s.n = static_cast<std::int64_t>(rows.size());
  if (rows.empty()) return s;
  std::vector<double> en;
  std::vector<double> j;
  for (const auto& r : rows) {
    en.push_back(r.e_n);
    j.push_back(r.abs_j2);
  }
  if (rows.size() >= 2) {
    s.pearson = pearson(en, j);
    s.spearman = spearman(en, j);
  }
  std::vector<double> sorted = j;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  s.median_j2 = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  std::size_t low_high = 0;
  std::size_t nonzero = 0;
  for (const auto& r : rows) {
    if (r.e_n < kLowEntanglement && r.abs_j2 > s.median_j2) ++low_high;
    if (r.abs_j2 > 1e-6) ++nonzero;
  }
  s.frac_low_en_high_j2 = static_cast<double>(low_high) / static_cast<double>(m);
  s.frac_nonzero_j2 = static_cast<double>(nonzero) / static_cast<double>(m);
  return s;
}

ScanResult run_chirality_entanglement_scan(std::int64_t n_samples, std::uint64_t master_seed,
                                           int threads) {
  if (n_samples < 1) throw InvalidInput("run_chirality_entanglement_scan: n_samples must be >= 1");
  const int workers = static_cast<int>(
      std::min<std::int64_t>(threads > 0 ? threads : worker_threads(), n_samples));
  ScanResult result;
  result.rows.resize(static_cast<std::size_t>(n_samples));
  auto work = [&](int w) {
    for (std::int64_t i = w; i < n_samples; i += workers) {
      result.rows[static_cast<std::size_t>(i)] = scan_sample(i, master_seed);
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  result.summary = summarize_scan(result.rows);
  return result;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::string out = "sample_index,E_N,abs_J2,seed\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g,%llu\n",
                  static_cast<long long>(r.sample_index), r.e_n, r.abs_j2,
                  static_cast<unsigned long long>(r.seed));
    out += buf;
  }
  return out;
}

std::string summary_json(const ScanSummary& s) {
  nlohmann::ordered_json j;
  j["n"] = s.n;
  j["pearson"] = s.pearson;
  j["spearman"] = s.spearman;
  j["frac_low_EN_high_J2"] = s.frac_low_en_high_j2;
  j["median_J2"] = s.median_j2;
  j["frac_nonzero_J2"] = s.frac_nonzero_j2;
  j["pearson_threshold"] = s.pearson_threshold;
  return j.dump(2);
}

NonmonotonicityReport nonmonotonicity_demo(const RealVector& p, int restarts,
                                           std::uint64_t seed) {
  const Vector psi = example1_purification(p);
  const DensityMatrix pure = DensityMatrix::pure({3, 3, 2}, psi);
  LogDistanceOptions opts;
  opts.restarts = restarts;
  opts.seed = seed;
  NonmonotonicityReport r;
  opts.stop_at_fidelity = 1.0 - 1e-12;
  r.purified = chiral_log_distance(pure, Partition({{0, 1}, {2}}), opts);
  const std::vector<int> keep{0, 2};
  opts.stop_at_fidelity = 2.0;
  r.traced = chiral_log_distance(partial_trace(pure, keep), Partition::singletons(2), opts);
  if (!(r.purified.value < kNonchiralThreshold && r.traced.value > kChiralThreshold)) {
    std::ostringstream os;
    os.precision(17);
    os << "non-monotonicity ordering failed: purified=" << r.purified.value
       << " traced=" << r.traced.value;
    throw BoundViolation(os.str());
  }
  return r;
}

}  // namespace chiralkit
