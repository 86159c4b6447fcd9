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

#include "chiralkit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chiralkit {

Party parse_party(const std::string& text) {
  if (text == "A" || text == "a") return Party::A;
  if (text == "B" || text == "b") return Party::B;
  throw InvalidInput("party must be A or B, got '" + text + "'");
}

const char* party_name(Party p) { return p == Party::A ? "A" : "B"; }

namespace {

void require_bipartition(const DensityMatrix& rho, const Partition& split) {
  if (split.size() != 2) {
    throw InvalidInput("expected a partition with 2 groups, got " + split.to_string());
  }
  split.validate(rho.num_subsystems());
}

Matrix embedded_modular_hamiltonian(const DensityMatrix& rho, const std::vector<int>& keep,
                                    double cutoff) {
  const DensityMatrix reduced = partial_trace(rho, keep);
  return embed(-matrix_log_on_support(reduced, cutoff), rho.dims(), keep);
}

}  // namespace

ModularSet modular_set(const DensityMatrix& rho, const Partition& split, double cutoff) {
  require_bipartition(rho, split);
  ModularSet ms{rho, split, eig_hermitian(rho.matrix()), {}, {}, {}};
  ms.k_ab = -log_on_support(rho.matrix(), cutoff);
  ms.k_a = embedded_modular_hamiltonian(rho, split.group(0), cutoff);
  ms.k_b = embedded_modular_hamiltonian(rho, split.group(1), cutoff);
  return ms;
}

TraceValue i_trace(const Matrix& rho, const Matrix& x) {
  const cplx t = cplx(0.0, 1.0) * (rho.cwiseProduct(x.transpose())).sum();
  return {t.real(), std::abs(t.imag())};
}

Matrix j2_operator(const ModularSet& ms) {
  return anticommutator(commutator(ms.k_ab, ms.k_a), ms.k_b);
}

Matrix j3_operator(const ModularSet& ms) {
  return commutator(commutator(ms.k_ab, commutator(ms.k_ab, ms.k_a)), ms.k_b);
}

Matrix j3_prime_operator(const ModularSet& ms) {
  return commutator(commutator(commutator(ms.k_ab, ms.k_b), ms.k_b), ms.k_b);
}

double j2(const ModularSet& ms) { return i_trace(ms.rho.matrix(), j2_operator(ms)).value; }
double j3(const ModularSet& ms) { return i_trace(ms.rho.matrix(), j3_operator(ms)).value; }
double j3_prime(const ModularSet& ms) {
  return i_trace(ms.rho.matrix(), j3_prime_operator(ms)).value;
}

double j2(const DensityMatrix& rho, const Partition& split) { return j2(modular_set(rho, split)); }
double j3(const DensityMatrix& rho, const Partition& split) { return j3(modular_set(rho, split)); }
double j3_prime(const DensityMatrix& rho, const Partition& split) {
  return j3_prime(modular_set(rho, split));
}

Matrix modular_flow(const ModularSet& ms, const Matrix& op, double s) {
  const Matrix u = imaginary_power(ms.rho_eig, -s);
  return u * op * u.adjoint();
}

FlowedPair modular_flowed_k(const ModularSet& ms, Party party, double s) {
  const Matrix& k = ms.k(party);
  const Matrix fwd = modular_flow(ms, k, s);
  const Matrix bwd = modular_flow(ms, k, -s);
  FlowedPair out;
  out.plus = (fwd + bwd) * 0.5;
  out.minus = (fwd - bwd) * cplx(0.0, 0.5);
  return out;
}

Matrix gamma_s_operator(const ModularSet& ms, double s) {
  return commutator(modular_flowed_k(ms, Party::A, s).plus, ms.k_b);
}

Matrix phi_s_operator(const ModularSet& ms, double s) {
  return anticommutator(modular_flowed_k(ms, Party::A, s).minus, ms.k_b);
}

double gamma_s(const ModularSet& ms, double s) {
  return i_trace(ms.rho.matrix(), gamma_s_operator(ms, s)).value;
}

double phi_s(const ModularSet& ms, double s) {
  return i_trace(ms.rho.matrix(), phi_s_operator(ms, s)).value;
}

double gamma_s(const DensityMatrix& rho, const Partition& split, double s) {
  return gamma_s(modular_set(rho, split), s);
}

double phi_s(const DensityMatrix& rho, const Partition& split, double s) {
  return phi_s(modular_set(rho, split), s);
}

GammaIntegral gamma_integral(const ModularSet& ms, double truncation, int panels) {
  if (truncation < 6.0) throw InvalidInput("gamma_integral: truncation S must be >= 6");
  if (panels < 64) throw InvalidInput("gamma_integral: panels must be >= 64");
  const RealVector& p = ms.rho_eig.eigenvalues;
  if (p(0) <= kSupportCutoff * p.maxCoeff()) {
    throw InvalidInput("gamma_integral: state is rank-deficient (min eigenvalue " +
                       std::to_string(p(0)) + ")");
  }
  // In the eigenbasis of rho, K_A(s)_jk = K_A,jk e^{-is(l_j - l_k)} with l = log p.
  const Matrix& v = ms.rho_eig.eigenvectors;
  const Matrix ka = v.adjoint() * ms.k_a * v;
  const Matrix c = v.adjoint() * commutator(ms.k_b, ms.rho.matrix()) * v;
  const Eigen::Index d = p.size();
  const RealVector l = p.array().log();
  // gamma_s = Re(i sum_jk K_A,jk cos(s w_jk) c_kj) = -sum_jk cos(s w_jk) Im(K_A,jk c_kj)
  Eigen::MatrixXd weight(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = 0; k < d; ++k) weight(j, k) = -(ka(j, k) * c(k, j)).imag();
  }
  const QuadratureRule rule = composite_gauss_legendre(-truncation, truncation, panels);
  GammaIntegral out;
  out.truncation = truncation;
  out.panels = panels;
  double max_abs = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double s = rule.nodes[q];
    double gs = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index k = 0; k < d; ++k) gs += weight(j, k) * std::cos(s * (l(j) - l(k)));
    }
    max_abs = std::max(max_abs, std::abs(gs));
    out.value += rule.weights[q] * gs / std::cosh(M_PI * s);
  }
  out.truncation_bound = 4.0 * max_abs * std::exp(-M_PI * truncation) / M_PI;
  return out;
}

double gamma_integral(const DensityMatrix& rho, const Partition& split) {
  return gamma_integral(modular_set(rho, split)).value;
}

double modular_commutator(const DensityMatrix& rho, const Partition& split) {
  if (split.size() != 3) {
    throw InvalidInput("modular_commutator expects 3 groups, got " + split.to_string());
  }
  split.validate(rho.num_subsystems());
  std::vector<int> ab = split.group(0);
  ab.insert(ab.end(), split.group(1).begin(), split.group(1).end());
  std::vector<int> bc = split.group(1);
  bc.insert(bc.end(), split.group(2).begin(), split.group(2).end());
  const Matrix k_ab = embedded_modular_hamiltonian(rho, ab, kSupportCutoff);
  const Matrix k_bc = embedded_modular_hamiltonian(rho, bc, kSupportCutoff);
  return i_trace(rho.matrix(), commutator(k_ab, k_bc)).value;
}

namespace {

std::string s_label(const char* name, double s) {
  std::ostringstream os;
  os << name << "(" << s << ")";
  return os.str();
}

}  // namespace

MeasureReport compute_measures(const DensityMatrix& rho, const Partition& split,
                               const std::vector<double>& s_values) {
  const ModularSet ms = modular_set(rho, split);
  MeasureReport report;
  const double scale = std::max(1.0, ms.k_ab.norm() * ms.k_a.norm() * ms.k_b.norm());
  const double tol = 1e-12 * scale;
  auto record = [&](const std::string& name, const TraceValue& t) {
    report.entries[name] = t.value;
    report.tolerances[name] = std::max(tol, t.imaginary_residue);
    if (t.imaginary_residue > kResidueWarning) {
      report.warnings.push_back(name + ": imaginary residue " +
                                std::to_string(t.imaginary_residue));
    }
  };
  record("J2", i_trace(rho.matrix(), j2_operator(ms)));
  record("J3", i_trace(rho.matrix(), j3_operator(ms)));
  record("J3_prime", i_trace(rho.matrix(), j3_prime_operator(ms)));
  for (double s : s_values) {
    record(s_label("gamma_s", s), i_trace(rho.matrix(), gamma_s_operator(ms, s)));
    record(s_label("phi_s", s), i_trace(rho.matrix(), phi_s_operator(ms, s)));
  }
  const RealVector& p = ms.rho_eig.eigenvalues;
  if (p(0) > kSupportCutoff * p.maxCoeff()) {
    const GammaIntegral g = gamma_integral(ms);
    report.entries["gamma"] = g.value;
    report.tolerances["gamma"] = std::max(tol, g.truncation_bound + 1e-12 * scale);
  } else {
    report.warnings.push_back("gamma: skipped, state is rank-deficient");
  }
  return report;
}

}  // namespace chiralkit
