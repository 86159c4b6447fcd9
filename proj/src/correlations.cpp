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


#include "chiralkit/correlations.hpp"

#include "chiralkit/quadrature.hpp"
#include "chiralkit/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace chiralkit {

Matrix sld_apply(const EigenDecomposition& eig, const Matrix& o, double cutoff) {
  const RealVector& p = eig.eigenvalues;
  const Matrix& v = eig.eigenvectors;
  if (o.rows() != v.rows() || o.cols() != v.rows()) {
    throw InvalidInput("sld_apply: operator dimension mismatch");
  }
  const double thr = cutoff * std::max(p.maxCoeff(), 0.0);
  Matrix t = v.adjoint() * o * v;
  for (Eigen::Index j = 0; j < t.rows(); ++j) {
    for (Eigen::Index k = 0; k < t.cols(); ++k) {
      const double sum = p(j) + p(k);
      t(j, k) = sum > thr ? t(j, k) * (2.0 / sum) : cplx(0.0, 0.0);
    }
  }
  return v * t * v.adjoint();
}

Matrix sld_apply(const DensityMatrix& rho, const Matrix& o, double cutoff) {
  return sld_apply(eig_hermitian(rho.matrix()), o, cutoff);
}

Matrix sld_integral_form(const DensityMatrix& rho, const Matrix& o, double truncation,
                         int panels) {
  if (o.rows() != rho.dim() || o.cols() != rho.dim()) {
    throw InvalidInput("sld_integral_form: operator dimension mismatch");
  }
  const auto eig = eig_hermitian(rho.matrix());
  const RealVector& p = eig.eigenvalues;
  if (p(0) <= 1e-10) {
    throw InvalidInput("sld_integral_form: state is rank-deficient (min eigenvalue " +
                       std::to_string(p(0)) + ")");
  }
  const Matrix& v = eig.eigenvectors;
  const QuadratureRule rule = composite_gauss_legendre(-truncation, truncation, panels);
  Matrix acc = Matrix::Zero(rho.dim(), rho.dim());
  Vector left(p.size());
  Vector right(p.size());
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double s = rule.nodes[q];
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      left(j) = std::pow(p(j), -0.5) * std::exp(cplx(0.0, s * std::log(p(j))));
      right(j) = std::conj(left(j));
    }
    const Matrix a = v * left.asDiagonal() * v.adjoint();
    const Matrix b = v * right.asDiagonal() * v.adjoint();
    acc += (rule.weights[q] / std::cosh(M_PI * s)) * (a * o * b);
  }
  return acc;
}

double sld_truncation_for(const DensityMatrix& rho, const Matrix& o, double target) {
  if (!(target > 0.0)) throw InvalidInput("sld_truncation_for: target must be positive");
  const double p_min = eig_hermitian(rho.matrix()).eigenvalues(0);
  if (p_min <= 0.0) throw InvalidInput("sld_truncation_for: state is rank-deficient");
  const double s = std::log(4.0 * o.norm() / (M_PI * p_min * target)) / M_PI;
  return std::max(kSldTruncation, s);
}

double qfi(const DensityMatrix& rho, const Matrix& h) {
  if (h.rows() != rho.dim() || h.cols() != rho.dim()) {
    throw InvalidInput("qfi: generator dimension mismatch");
  }
  const Matrix c = commutator(h, rho.matrix());
  const Matrix r = sld_apply(rho, c);
  return -(c.cwiseProduct(r.transpose())).sum().real();
}

double intrinsic_ip(const ModularSet& ms, Party party) { return qfi(ms.rho, ms.k(party)); }

double intrinsic_ip(const DensityMatrix& rho, const Partition& split, Party party) {
  return intrinsic_ip(modular_set(rho, split), party);
}

namespace {

int group_index(Party p) { return p == Party::A ? 0 : 1; }

void require_bipartition(const DensityMatrix& rho, const Partition& split) {
  if (split.size() != 2) {
    throw InvalidInput("expected a partition with 2 groups, got " + split.to_string());
  }
  split.validate(rho.num_subsystems());
}

int group_dim(const Dims& dims, const std::vector<int>& group) {
  int d = 1;
  for (int s : group) d *= dims[s];
  return d;
}

double min_gap(const RealVector& p) {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 1; i < p.size(); ++i) gap = std::min(gap, p(i) - p(i - 1));
  return gap;
}

double marginal_commutator(const DensityMatrix& rho, const std::vector<int>& group) {
  const Matrix marginal = partial_trace(rho.matrix(), rho.dims(), group);
  return commutator(rho.matrix(), embed(marginal, rho.dims(), group)).norm();
}

}  // namespace

Matrix CQDecomposition::reconstruct() const {
  const auto& own = split.group(group_index(party));
  const auto& other = split.group(1 - group_index(party));
  const auto d = static_cast<Eigen::Index>(total_dim(dims));
  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
    const Matrix proj = basis.col(i) * basis.col(i).adjoint();
    out += probabilities(i) * embed(proj, dims, own) * embed(conditionals[i], dims, other);
  }
  return out;
}

CQCheck is_classical_quantum(const DensityMatrix& rho, const Partition& split, Party party,
                             double tol) {
  require_bipartition(rho, split);
  const auto& own = split.group(group_index(party));
  const auto& other = split.group(1 - group_index(party));
  CQCheck check;
  check.commutator_norm = marginal_commutator(rho, own);
  const auto eig = eig_hermitian(partial_trace(rho.matrix(), rho.dims(), own));
  check.min_gap = min_gap(eig.eigenvalues);
  if (check.commutator_norm >= tol) {
    check.reason = "commutator [rho, rho_" + std::string(party_name(party)) + "] is nonzero";
    return check;
  }
  if (check.min_gap <= kDegeneracyGap) {
    check.reason = "marginal of " + std::string(party_name(party)) +
                   " is degenerate; undecided";
    return check;
  }
  CQDecomposition dec;
  dec.party = party;
  dec.dims = rho.dims();
  dec.split = split;
  dec.basis = eig.eigenvectors;
  dec.probabilities = eig.eigenvalues;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const Matrix proj = eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
    const Matrix block = embed(proj, rho.dims(), own) * rho.matrix();
    Matrix cond = partial_trace(block, rho.dims(), other);
    const double p = eig.eigenvalues(i);
    if (p > 0.0) {
      cond /= p;
    } else {
      cond = Matrix::Identity(cond.rows(), cond.cols()) / static_cast<double>(cond.rows());
    }
    dec.conditionals.push_back((cond + cond.adjoint()) * 0.5);
  }
  check.decomposition = std::move(dec);
  check.reason = "classical-quantum";
  return check;
}

MakhlinInvariants makhlin_invariants(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) throw InvalidInput("makhlin_invariants: needs a two-qubit state");
  const Matrix half = Matrix::Identity(2, 2) * 0.5;
  const std::vector<int> a{0};
  const std::vector<int> b{1};
  const double da = (partial_trace(rho.matrix(), rho.dims(), a) - half).cwiseAbs().maxCoeff();
  const double db = (partial_trace(rho.matrix(), rho.dims(), b) - half).cwiseAbs().maxCoeff();
  if (std::max(da, db) > kMaximallyMixedTolerance) {
    throw InvalidInput("makhlin_invariants: marginals are not maximally mixed (deviation " +
                       std::to_string(std::max(da, db)) + ")");
  }
  const Matrix sigma[3] = {pauli_x(), pauli_y(), pauli_z()};
  MakhlinInvariants out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out.beta(i, j) = (rho.matrix() * kron(sigma[i], sigma[j])).trace().real() / 4.0;
    }
  }
  const Eigen::Matrix3d btb = out.beta.transpose() * out.beta;
  out.det_beta = out.beta.determinant();
  out.trace_btb = btb.trace();
  out.trace_btb_sq = (btb * btb).trace();
  return out;
}

NoncommutativityVerdict noncommutativity_verdict(const DensityMatrix& rho, const Partition& split,
                                                 double tol) {
  require_bipartition(rho, split);
  NoncommutativityVerdict v;
  v.commutator_a = marginal_commutator(rho, split.group(0));
  v.commutator_b = marginal_commutator(rho, split.group(1));
  if (v.commutator_a >= tol || v.commutator_b >= tol) {
    v.reason = "marginal commutators do not vanish; undecided";
    return v;
  }
  const auto gap_a = min_gap(eig_hermitian(partial_trace(rho.matrix(), rho.dims(), split.group(0))).eigenvalues);
  const auto gap_b = min_gap(eig_hermitian(partial_trace(rho.matrix(), rho.dims(), split.group(1))).eigenvalues);
  const bool nondeg_a = gap_a > kDegeneracyGap;
  const bool nondeg_b = gap_b > kDegeneracyGap;
  const int d_a = group_dim(rho.dims(), split.group(0));
  const int d_b = group_dim(rho.dims(), split.group(1));
  if (nondeg_a && nondeg_b) {
    v.nonchiral_certified = true;
    v.condition = 1;
    v.reason = "both marginals nondegenerate";
    return v;
  }
  if ((nondeg_a && d_a == 2) || (nondeg_b && d_b == 2)) {
    v.nonchiral_certified = true;
    v.condition = 2;
    v.reason = "nondegenerate qubit marginal";
    return v;
  }
  if (d_a == 2 && d_b == 2) {
    v.nonchiral_certified = true;
    v.condition = 3;
    v.reason = "two-qubit state";
    if (rho.dims() == Dims{2, 2}) {
      const Matrix swapped_order = split.group(0).front() == 0
                                       ? rho.matrix()
                                       : permute_subsystems(rho.matrix(), rho.dims(), std::vector<int>{1, 0});
      try {
        v.makhlin = makhlin_invariants(DensityMatrix(rho.dims(), swapped_order));
      } catch (const InvalidInput&) {
      }
    }
    return v;
  }
  v.reason = "degenerate marginals beyond the two-qubit case; undecided";
  return v;
}

double c_of_d(int d) {
  if (d < 2) throw InvalidInput("c_of_d: d must be >= 2");
  if (d == 2) return kC2;
  const double l = std::log(static_cast<double>(d));
  return l * l;
}

double GammaQfiReport::min_slack() const { return *std::min_element(slack, slack + 4); }

GammaQfiReport check_gamma_qfi_bound(const DensityMatrix& rho, const Partition& split) {
  const ModularSet ms = modular_set(rho, split);
  GammaQfiReport r;
  r.gamma = gamma_integral(ms).value;
  r.f_a = intrinsic_ip(ms, Party::A);
  r.f_b = intrinsic_ip(ms, Party::B);
  r.tr_a_ka2 = (rho.matrix() * ms.k_a * ms.k_a).trace().real();
  r.tr_b_kb2 = (rho.matrix() * ms.k_b * ms.k_b).trace().real();
  r.d_a = group_dim(rho.dims(), split.group(0));
  r.d_b = group_dim(rho.dims(), split.group(1));
  const double g2 = r.gamma * r.gamma;
  r.slack[0] = r.tr_a_ka2 * r.f_b - g2;
  r.slack[1] = r.tr_b_kb2 * r.f_a - g2;
  r.slack[2] = c_of_d(r.d_a) * r.f_b - g2;
  r.slack[3] = c_of_d(r.d_b) * r.f_a - g2;
  if (r.min_slack() < -kBoundSlack) {
    std::ostringstream os;
    os.precision(17);
    os << "gamma-QFI bound violated: gamma=" << r.gamma << " F_A=" << r.f_a << " F_B=" << r.f_b
       << " slacks=(" << r.slack[0] << ", " << r.slack[1] << ", " << r.slack[2] << ", "
       << r.slack[3] << ") state=\n"
       << rho.matrix();
    throw BoundViolation(os.str());
  }
  return r;
}

namespace {

// Euclidean projection onto {x >= floor, sum x = 1}.
RealVector project_simplex(const RealVector& y, double floor) {
  const Eigen::Index d = y.size();
  const double budget = 1.0 - floor * static_cast<double>(d);
  std::vector<double> u(y.data(), y.data() + d);
  for (auto& v : u) v -= floor;
  std::vector<double> sorted = u;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    cumulative += sorted[i];
    const double t = (cumulative - budget) / static_cast<double>(i + 1);
    if (sorted[i] - t > 0.0) theta = t;
  }
  RealVector x(d);
  for (Eigen::Index i = 0; i < d; ++i) x(i) = std::max(u[i] - theta, 0.0) + floor;
  return x;
}

double simplex_objective(const RealVector& x) {
  double f = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double l = std::log(x(i));
    f += x(i) * l * l;
  }
  return f;
}

}  // namespace

SimplexMax simplex_entropy_max(int d, int starts, std::uint64_t seed) {
  if (d < 2) throw InvalidInput("simplex_entropy_max: d must be >= 2");
  if (starts < 1) throw InvalidInput("simplex_entropy_max: starts must be >= 1");
  constexpr double kFloor = 1e-12;
  SimplexMax best;
  best.value = -1.0;
  for (int start = 0; start < starts; ++start) {
    RealVector x;
    if (start == 0) {
      x = RealVector::Constant(d, 1.0 / d);
    } else {
      RngStream rng(seed, static_cast<std::uint64_t>(start));
      x = project_simplex(sample_simplex(d, rng), kFloor);
    }
    double f = simplex_objective(x);
    double step = 0.1;
    for (int it = 0; it < 5000 && step > 1e-14; ++it) {
      RealVector grad(d);
      for (int i = 0; i < d; ++i) {
        const double l = std::log(x(i));
        grad(i) = l * l + 2.0 * l;
      }
      const RealVector cand = project_simplex(x + step * grad, kFloor);
      const double fc = simplex_objective(cand);
      if (fc > f) {
        const double gain = fc - f;
        x = cand;
        f = fc;
        step *= 1.5;
        if (gain < 1e-15) break;
      } else {
        step *= 0.5;
      }
    }
    if (f > best.value) {
      best.value = f;
      best.argmax = x;
    }
  }
  return best;
}

BuresEstimate bures_estimate(const DensityMatrix& rho, const Matrix& h, double dx) {
  if (!(dx > 0.0)) throw InvalidInput("bures_estimate: dx must be > 0");
  const auto eig = eig_hermitian(h);
  Vector phases(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(cplx(0.0, -dx * eig.eigenvalues(i)));
  }
  const Matrix u = eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
  const Matrix moved = u * rho.matrix() * u.adjoint();
  const double f = uhlmann_fidelity(rho.matrix(), moved);
  BuresEstimate out;
  out.finite_difference = 2.0 * (1.0 - std::sqrt(f)) / (dx * dx);
  out.qfi = qfi(rho, h);
  out.ratio = out.finite_difference > 0.0 ? out.qfi / out.finite_difference : 0.0;
  return out;
}

}  // namespace chiralkit
