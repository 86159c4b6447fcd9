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


#include "chiralkit/acceptance.hpp"

#include "chiralkit/chirality.hpp"
#include "chiralkit/correlations.hpp"
#include "chiralkit/experiments.hpp"
#include "chiralkit/random.hpp"
#include "chiralkit/stabilizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

namespace chiralkit {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

struct Measure {
  const char* name;
  std::function<double(const DensityMatrix&, const Partition&)> eval;
};

std::vector<Measure> odd_measures() {
  return {
      {"J2", [](const DensityMatrix& r, const Partition& p) { return j2(r, p); }},
      {"J3", [](const DensityMatrix& r, const Partition& p) { return j3(r, p); }},
      {"J3'", [](const DensityMatrix& r, const Partition& p) { return j3_prime(r, p); }},
      {"gamma_0.7", [](const DensityMatrix& r, const Partition& p) { return gamma_s(r, p, 0.7); }},
      {"phi_0.7", [](const DensityMatrix& r, const Partition& p) { return phi_s(r, p, 0.7); }},
      {"gamma", [](const DensityMatrix& r, const Partition& p) { return gamma_integral(r, p); }},
  };
}

DensityMatrix random_two_qubit(RngStream& rng) { return sample_mixed_state({2, 2}, rng); }

DensityMatrix unitary_conjugate(const DensityMatrix& rho, const Matrix& u) {
  return DensityMatrix(rho.dims(), u * rho.matrix() * u.adjoint());
}

// Bell-diagonal state under random local unitaries: both marginals are I/2.
DensityMatrix random_maximally_mixed_marginals(RngStream& rng) {
  const RealVector w = sample_simplex(4, rng);
  const double r = M_SQRT1_2;
  Vector bell[4];
  for (auto& b : bell) b = Vector::Zero(4);
  bell[0](0) = r; bell[0](3) = r;
  bell[1](0) = r; bell[1](3) = -r;
  bell[2](1) = r; bell[2](2) = r;
  bell[3](1) = r; bell[3](2) = -r;
  Matrix rho = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) rho += w(i) * bell[i] * bell[i].adjoint();
  const Matrix u = kron(sample_haar_unitary(2, rng), sample_haar_unitary(2, rng));
  return DensityMatrix({2, 2}, u * rho * u.adjoint());
}

const RealVector& example1_p() {
  static const RealVector p = (RealVector(3) << 0.5, 0.3, 0.2).finished();
  return p;
}

// ---------------------------------------------------------------------------

CriterionResult criterion_stabilizer_nonchirality(std::uint64_t seed) {
  CriterionResult r{1, "stabilizer nonchirality", true, "", 0.0};
  double worst = 0.0;
  int pure = 0;
  for (int i = 0; i < 200; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    const int n = 1 + static_cast<int>(rng.below(4));
    const int k = i % 2 == 0 ? n : static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    if (k == n) ++pure;
    const StabilizerGroup g = random_stabilizer_group(n, k, rng);
    const DensityMatrix rho = stabilizer_state(g);
    const Matrix q = conjugation_pauli(g).q.matrix();
    worst = std::max(worst, (q * rho.matrix() * q.adjoint() - rho.matrix().conjugate()).norm());
  }
  r.pass = worst < 1e-10;
  r.detail = "200 groups (" + std::to_string(pure) + " pure), max ||Q rho Q^+ - rho*||_F = " +
             fmt(worst);
  return r;
}

CriterionResult criterion_magic_bounds(std::uint64_t seed) {
  CriterionResult r{2, "magic bounds C <= C_P <= nu, C_P <= -2 log F", true, "", 0.0};
  constexpr double eps = kMagicBoundSlack;
  int checked = 0;
  std::string failure;
  double min_gap_cp = 1e300;
  for (int n : {2, 3}) {
    for (int i = 0; i < 500 && failure.empty(); ++i) {
      RngStream rng(seed + static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i));
      const Vector psi = sample_pure_state(Eigen::Index{1} << n, rng);
      try {
        const MagicBoundsReport m = verify_magic_bounds(psi, n, 20, rng.seed());
        min_gap_cp = std::min(min_gap_cp, m.pauli_log_distance - m.log_distance);
        ++checked;
      } catch (const BoundViolation& e) {
        failure = e.what();
      }
    }
  }
  int stabilizers = 0;
  for (int i = 0; i < 50 && failure.empty(); ++i) {
    RngStream rng(seed + 100, static_cast<std::uint64_t>(i));
    const int n = 1 + i % 4;
    const Vector psi = stabilizer_pure_state(random_stabilizer_group(n, n, rng));
    try {
      const MagicBoundsReport m = verify_magic_bounds(psi, n, 20, rng.seed());
      if (m.log_distance > eps || m.pauli_log_distance > eps || m.nullity != 0 ||
          m.minus_two_log_f > eps) {
        failure = "stabilizer state " + std::to_string(i) + " not saturated";
      }
      ++stabilizers;
    } catch (const BoundViolation& e) {
      failure = e.what();
    }
  }
  r.pass = failure.empty();
  r.detail = r.pass ? std::to_string(checked) + " Haar states, " + std::to_string(stabilizers) +
                          " stabilizer states saturated, min(C_P - C) = " + fmt(min_gap_cp)
                    : failure;
  return r;
}

CriterionResult criterion_t_state(std::uint64_t) {
  CriterionResult r{3, "|T> benchmarks", true, "", 0.0};
  const Vector t = t_state();
  const int nu = stabilizer_nullity(t, 1);
  const double f = stabilizer_fidelity(t, 1);
  const double expected = std::pow(std::cos(M_PI / 8.0), 2);
  double worst_cp = 0.0;
  Vector tk = t;
  for (int k = 1; k <= 3; ++k) {
    worst_cp = std::max(worst_cp, pauli_log_distance(tk, k).value);
    tk = kron(tk, t);
  }
  r.pass = nu == 1 && std::abs(f - expected) < 1e-9 && worst_cp < 1e-12;
  std::ostringstream os;
  os << std::setprecision(10) << "nu = " << nu << ", F = " << f << ", max C_P(T^k) = "
     << worst_cp;
  r.detail = os.str();
  return r;
}

CriterionResult criterion_additivity(std::uint64_t seed) {
  CriterionResult r{4, "additivity, oddness, LU invariance", true, "", 0.0};
  const Partition split = Partition::singletons(2);
  const Partition composite({{0, 2}, {1, 3}});
  double add = 0.0;
  double odd = 0.0;
  double lu = 0.0;
  std::string worst_add;
  for (int i = 0; i < 100; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    const DensityMatrix rho = random_two_qubit(rng);
    const DensityMatrix sigma = random_two_qubit(rng);
    const DensityMatrix both = tensor_product(rho, sigma);
    const DensityMatrix moved = unitary_conjugate(rho, sample_local_unitary({2, 2}, split, rng));
    for (const auto& m : odd_measures()) {
      const double a = m.eval(rho, split);
      const double dev = std::abs(m.eval(both, composite) - a - m.eval(sigma, split));
      if (dev > add) {
        add = dev;
        worst_add = m.name;
      }
      odd = std::max(odd, std::abs(m.eval(conjugate(rho), split) + a));
      lu = std::max(lu, std::abs(m.eval(moved, split) - a));
    }
  }
  r.pass = add < 1e-8 && odd < 1e-9 && lu < 1e-9;
  r.detail = "max residuals: additivity " + fmt(add) + " (" + worst_add + "), oddness " +
             fmt(odd) + ", LU " + fmt(lu);
  return r;
}

CriterionResult criterion_derivatives(std::uint64_t seed) {
  CriterionResult r{5, "derivative relations at s = 0", true, "", 0.0};
  constexpr double h = 1e-3;
  double worst_g = 0.0;
  double worst_p = 0.0;
  for (int i = 0; i < 50; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    const ModularSet ms = modular_set(random_two_qubit(rng), Partition::singletons(2));
    // Five-point central stencils.
    const double d2g = (-gamma_s(ms, 2.0 * h) + 16.0 * gamma_s(ms, h) - 30.0 * gamma_s(ms, 0.0) +
                        16.0 * gamma_s(ms, -h) - gamma_s(ms, -2.0 * h)) /
                       (12.0 * h * h);
    const double dphi =
        (-phi_s(ms, 2.0 * h) + 8.0 * phi_s(ms, h) - 8.0 * phi_s(ms, -h) + phi_s(ms, -2.0 * h)) /
        (12.0 * h);
    const double j3v = j3(ms);
    const double j2v = j2(ms);
    worst_g = std::max(worst_g, std::abs(d2g + j3v) / std::abs(j3v));
    worst_p = std::max(worst_p, std::abs(dphi + j2v) / std::abs(j2v));
  }
  r.pass = worst_g < 1e-5 && worst_p < 1e-5;
  r.detail = "max relative error: gamma'' vs -J3 " + fmt(worst_g) + ", phi' vs -J2 " +
             fmt(worst_p);
  return r;
}

CriterionResult criterion_gamma_qfi(std::uint64_t seed) {
  CriterionResult r{6, "gamma-QFI bounds with c(d)", true, "", 0.0};
  double min_slack = 1e300;
  std::string failure;
  for (int i = 0; i < 1000 && failure.empty(); ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    try {
      min_slack = std::min(min_slack,
                           check_gamma_qfi_bound(random_two_qubit(rng), Partition::singletons(2))
                               .min_slack());
    } catch (const BoundViolation& e) {
      failure = e.what();
    }
  }
  r.pass = failure.empty() && min_slack >= -kBoundSlack;
  r.detail = failure.empty() ? "1000 states, min slack = " + fmt(min_slack) : failure;
  return r;
}

CriterionResult criterion_sld_integral(std::uint64_t seed) {
  CriterionResult r{7, "SLD integral identity", true, "", 0.0};
  double worst = 0.0;
  double max_s = 0.0;
  for (const Dims& dims : {Dims{2, 2}, Dims{2, 3}}) {
    for (int i = 0; i < 100; ++i) {
      RngStream rng(seed + total_dim(dims), static_cast<std::uint64_t>(i));
      const DensityMatrix rho = sample_mixed_state(dims, rng);
      const Matrix o = sample_hermitian(rho.dim(), rng);
      const double s = sld_truncation_for(rho, o, 1e-9);
      const int panels = 32 * static_cast<int>(std::ceil(s));
      max_s = std::max(max_s, s);
      worst = std::max(worst, (sld_integral_form(rho, o, s, panels) - sld_apply(rho, o)).norm());
    }
  }
  r.pass = worst < 1e-6;
  r.detail = "200 states, max Frobenius deviation = " + fmt(worst) + ", max S = " + fmt(max_s);
  return r;
}

CriterionResult criterion_simplex(std::uint64_t) {
  CriterionResult r{8, "c(d) simplex maximization", true, "", 0.0};
  double worst = 0.0;
  std::ostringstream os;
  os << std::setprecision(6);
  for (int d = 2; d <= 8; ++d) {
    const double v = simplex_entropy_max(d).value;
    const double expected = d == 2 ? kC2 : std::pow(std::log(static_cast<double>(d)), 2);
    worst = std::max(worst, std::abs(v - expected));
    if (d <= 3) os << "c(" << d << ") = " << v << ", ";
  }
  r.pass = worst < 1e-3;
  os << "max deviation = " << std::setprecision(3) << worst;
  r.detail = os.str();
  return r;
}

CriterionResult criterion_example1(std::uint64_t seed) {
  CriterionResult r{9, "example 1 chirality", true, "", 0.0};
  const DensityMatrix rho = example1_state(example1_p());
  const Partition split = Partition::singletons(2);
  LogDistanceOptions opts;
  opts.restarts = 50;
  opts.seed = seed;
  const LogDistanceResult c = chiral_log_distance(rho, split, opts);
  const ModularSet ms = modular_set(rho, split);
  const double j2v = std::abs(j2(ms));
  const double j3v = std::abs(j3(ms));
  const double gam = std::abs(gamma_integral(regularize(rho, 1e-6), split));
  const double fa = std::abs(intrinsic_ip(ms, Party::A));
  r.pass = c.detail.best_fidelity <= 1.0 - 1e-3 && j2v < 1e-9 && j3v < 1e-9 && gam < 1e-9 &&
           fa < 1e-9;
  std::ostringstream os;
  os << std::setprecision(8) << "best fidelity = " << c.detail.best_fidelity
     << " (C <= " << c.value << "), |J2| = " << std::setprecision(3) << j2v
     << ", |J3| = " << j3v << ", |gamma| = " << gam << ", F^(A) = " << fa;
  r.detail = os.str();
  return r;
}

CriterionResult criterion_example2(std::uint64_t seed) {
  CriterionResult r{10, "example 2 fine-tuned chirality", true, "", 0.0};
  const RealVector p = (RealVector(4) << 0.05, 0.06, 0.07, 0.82).finished();
  const DensityMatrix rho = example2_state(p);
  const Partition split = Partition::singletons(2);
  const ModularSet ms = modular_set(rho, split);
  double worst = 0.0;
  for (double v : {j2(ms), j3(ms), j3_prime(ms), gamma_s(ms, 0.7), phi_s(ms, 0.7)}) {
    worst = std::max(worst, std::abs(v));
  }
  const NoncommutativityVerdict verdict = noncommutativity_verdict(rho, split);
  LogDistanceOptions opts;
  opts.restarts = 100;
  opts.seed = seed;
  const LogDistanceResult c = chiral_log_distance(rho, split, opts);
  r.pass = worst < 1e-9 && verdict.commutator_a < 1e-9 && verdict.commutator_b < 1e-9 &&
           !verdict.nonchiral_certified && c.detail.best_fidelity <= 1.0 - 1e-4;
  std::ostringstream os;
  os << "max |measure| = " << std::setprecision(3) << worst << ", commutators "
     << verdict.commutator_a << ", " << verdict.commutator_b << ", verdict "
     << (verdict.nonchiral_certified ? "certified" : "undecided") << ", best fidelity = "
     << std::setprecision(10) << c.detail.best_fidelity;
  r.detail = os.str();
  return r;
}

CriterionResult criterion_nonmonotonicity(std::uint64_t seed) {
  CriterionResult r{11, "non-monotonicity under partial trace", true, "", 0.0};
  try {
    const NonmonotonicityReport rep = nonmonotonicity_demo(example1_p(), 20, seed);
    r.detail = "C({AA'}|{B}) = " + fmt(rep.purified.value) + ", C({A}|{B}) <= " +
               fmt(rep.traced.value);
  } catch (const BoundViolation& e) {
    r.pass = false;
    r.detail = e.what();
  }
  return r;
}

CriterionResult criterion_makhlin(std::uint64_t seed) {
  CriterionResult r{12, "two-qubit maximally mixed marginals", true, "", 0.0};
  double worst_inv = 0.0;
  double worst_fid = 1.0;
  int certified = 0;
  for (int i = 0; i < 100; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    const DensityMatrix rho = random_maximally_mixed_marginals(rng);
    const MakhlinInvariants a = makhlin_invariants(rho);
    const MakhlinInvariants b = makhlin_invariants(conjugate(rho));
    worst_inv = std::max({worst_inv, std::abs(a.det_beta - b.det_beta),
                          std::abs(a.trace_btb - b.trace_btb),
                          std::abs(a.trace_btb_sq - b.trace_btb_sq)});
    if (noncommutativity_verdict(rho, Partition::singletons(2)).nonchiral_certified) ++certified;
    LogDistanceOptions opts;
    opts.restarts = 100;
    opts.seed = rng.seed();
    opts.stop_at_fidelity = 1.0 - 1e-4;
    worst_fid = std::min(worst_fid,
                         chiral_log_distance(rho, Partition::singletons(2), opts).detail.best_fidelity);
  }
  r.pass = worst_inv < 1e-10 && worst_fid >= 1.0 - 1e-4 && certified == 100;
  std::ostringstream os;
  os << "max invariant change = " << std::setprecision(3) << worst_inv
     << ", min best fidelity = " << std::setprecision(10) << worst_fid << ", certified "
     << certified << "/100";
  r.detail = os.str();
  return r;
}

CriterionResult criterion_scan(std::uint64_t seed) {
  CriterionResult r{13, "chirality vs entanglement scan", true, "", 0.0};
  const ScanResult scan = run_chirality_entanglement_scan(5000, seed);
  const ScanSummary& s = scan.summary;
  r.pass = s.frac_nonzero_j2 > 0.99 && std::abs(s.pearson) < s.pearson_threshold &&
           s.frac_low_en_high_j2 >= 0.01;
  std::ostringstream os;
  os << std::setprecision(4) << "|J2| > 1e-6 in " << s.frac_nonzero_j2
     << " (need > 0.99), pearson " << s.pearson << " (threshold " << s.pearson_threshold
     << "), spearman " << s.spearman << ", low E_N & high |J2| " << s.frac_low_en_high_j2
     << " (need >= 0.01)";
  r.detail = os.str();
  return r;
}

CriterionResult criterion_intrinsic_ip(std::uint64_t seed) {
  CriterionResult r{14, "intrinsic interferometric power", true, "", 0.0};
  const Partition split = Partition::singletons(2);
  double lu = 0.0;
  double cq = 0.0;
  int detected = 0;
  double kappa_dev = 0.0;
  for (int i = 0; i < 100; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    const DensityMatrix rho = random_two_qubit(rng);
    const DensityMatrix moved = unitary_conjugate(rho, sample_local_unitary({2, 2}, split, rng));
    for (Party p : {Party::A, Party::B}) {
      lu = std::max(lu, std::abs(intrinsic_ip(moved, split, p) - intrinsic_ip(rho, split, p)));
    }
    // Classical-quantum state in a random basis of A.
    const RealVector w = sample_simplex(2, rng);
    const Matrix ua = sample_haar_unitary(2, rng);
    Matrix m = Matrix::Zero(4, 4);
    for (int k = 0; k < 2; ++k) {
      const Matrix proj = ua.col(k) * ua.col(k).adjoint();
      m += w(k) * kron(proj, sample_mixed_state({2}, rng).matrix());
    }
    const DensityMatrix cq_state({2, 2}, m);
    if (is_classical_quantum(cq_state, split, Party::A).decomposition) {
      ++detected;
      cq = std::max(cq, std::abs(intrinsic_ip(cq_state, split, Party::A)));
    }
    const Vector psi = sample_pure_state(4, rng);
    const DensityMatrix pure = DensityMatrix::pure({2, 2}, psi);
    const ModularSet ms = modular_set(pure, split);
    const double mean = psi.dot(ms.k_a * psi).real();
    const double second = psi.dot(ms.k_a * ms.k_a * psi).real();
    const double var = second - mean * mean;
    kappa_dev = std::max(kappa_dev, std::abs(intrinsic_ip(ms, Party::A) - 4.0 * var));
  }
  r.pass = lu < 1e-9 && detected == 100 && cq < 1e-9 && kappa_dev < 1e-8;
  r.detail = "LU residual " + fmt(lu) + ", CQ detected " + std::to_string(detected) +
             "/100 with max F^(A) " + fmt(cq) + ", max |F^(A) - 4 Var K_A| " + fmt(kappa_dev);
  return r;
}

struct RuntimeLimit {
  int id;
  double seconds;
};

constexpr RuntimeLimit kRuntimeLimits[] = {{1, 10.0}, {2, 300.0}, {6, 120.0}, {13, 60.0}};

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  using Fn = CriterionResult (*)(std::uint64_t);
  static constexpr Fn kCriteria[kAcceptanceCriteria] = {
      criterion_stabilizer_nonchirality, criterion_magic_bounds, criterion_t_state,
      criterion_additivity, criterion_derivatives, criterion_gamma_qfi,
      criterion_sld_integral, criterion_simplex, criterion_example1,
      criterion_example2, criterion_nonmonotonicity, criterion_makhlin,
      criterion_scan, criterion_intrinsic_ip};
  if (id < 1 || id > kAcceptanceCriteria) {
    throw InvalidInput("unknown acceptance criterion " + std::to_string(id));
  }
  const auto start = Clock::now();
  CriterionResult r;
  try {
    r = kCriteria[id - 1](seed + static_cast<std::uint64_t>(id) * 1000003ULL);
  } catch (const std::exception& e) {
    r.id = id;
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  for (const auto& lim : kRuntimeLimits) {
    if (lim.id == id && r.seconds > lim.seconds) {
      r.pass = false;
      r.detail += "; runtime " + fmt(r.seconds) + " s exceeds " + fmt(lim.seconds) + " s";
    }
  }
  return r;
}

int run_acceptance(std::ostream& out, const AcceptanceOptions& options) {
  std::vector<int> ids = options.only;
  if (ids.empty()) {
    for (int i = 1; i <= kAcceptanceCriteria; ++i) ids.push_back(i);
  }
  int failures = 0;
  for (int id : ids) {
    const CriterionResult r = run_criterion(id, options.seed);
    if (!r.pass) ++failures;
    out << (r.pass ? "[PASS] " : "[FAIL] ") << std::setw(2) << r.id << ' ' << r.name << ": "
        << r.detail << " (" << std::fixed << std::setprecision(2) << r.seconds << " s)"
        << std::defaultfloat << '\n';
    out.flush();
  }
  out << (failures == 0 ? "all " + std::to_string(ids.size()) + " criteria passed"
                        : std::to_string(failures) + " of " + std::to_string(ids.size()) +
                              " criteria failed")
      << '\n';
  return failures;
}

}  // namespace chiralkit
