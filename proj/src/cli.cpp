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


#include "chiralkit/cli.hpp"

#include "chiralkit/acceptance.hpp"
#include "chiralkit/chirality.hpp"
#include "chiralkit/correlations.hpp"
#include "chiralkit/experiments.hpp"
#include "chiralkit/random.hpp"
#include "chiralkit/stabilizer.hpp"
#include "chiralkit/state_io.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace chiralkit {

namespace {

using Json = nlohmann::ordered_json;

Json valued(double value, double tolerance) {
  return Json{{"value", value}, {"tolerance", tolerance}};
}

Partition parse_split(const std::string& text, const DensityMatrix& rho) {
  const Partition p = text.empty() ? Partition::singletons(rho.num_subsystems())
                                   : Partition::parse(text);
  p.validate(rho.num_subsystems());
  return p;
}

std::string fingerprint(const Matrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](long long v) {
    for (int i = 0; i < 8; ++i) {
      h ^= static_cast<std::uint64_t>(v >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      mix(std::llround(m(i, j).real() * 1e9));
      mix(std::llround(m(i, j).imag() * 1e9));
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct MeasureArgs {
  std::string state;
  std::string split;
  std::vector<double> s_values{0.7};
};

int cmd_measure(const MeasureArgs& a, std::ostream& out) {
  const DensityMatrix rho = parse_state_file(a.state);
  const Partition split = parse_split(a.split, rho);
  const MeasureReport rep = compute_measures(rho, split, a.s_values);
  Json j;
  j["split"] = split.to_string();
  Json entries = Json::object();
  for (const auto& [name, value] : rep.entries) entries[name] = valued(value, rep.tolerances.at(name));
  j["measures"] = entries;
  j["warnings"] = rep.warnings;
  out << j.dump(2) << '\n';
  return kExitOk;
}

struct LogdistArgs {
  std::string state;
  std::string split;
  int restarts = 10;
  std::uint64_t seed = 0;
  int max_iters = 1000;
  double tol = 1e-12;
};

int cmd_logdist(const LogdistArgs& a, std::ostream& out) {
  const DensityMatrix rho = parse_state_file(a.state);
  const Partition split = parse_split(a.split, rho);
  LogDistanceOptions opts;
  opts.restarts = a.restarts;
  opts.seed = a.seed;
  opts.max_iters = a.max_iters;
  opts.tol = a.tol;
  const LogDistanceResult r = chiral_log_distance(rho, split, opts);
  Json j;
  j["partition"] = split.to_string();
  j["log_distance"] = valued(r.value, a.tol);
  j["estimate"] = "upper";
  j["best_fidelity"] = valued(r.detail.best_fidelity, a.tol);
  j["certified_nonchiral"] = r.certified_nonchiral;
  j["certificate_tolerance"] = kNonchiralCertificate;
  j["restarts"] = r.detail.restarts;
  j["all_converged"] = r.all_converged;
  j["iterations_per_restart"] = r.detail.iterations_per_restart;
  j["converged"] = r.detail.converged;
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_stabilizer(const std::string& path, std::ostream& out) {
  const std::string text = read_text_file(path);
  StabilizerGroup group = [&] {
    try {
      return parse_tableau(text);
    } catch (const InvalidInput& e) {
      throw InputFileError(kExitInvariant, path + ": " + e.what());
    }
  }();
  const DensityMatrix rho = stabilizer_state(group);
  const ConjugationSolution sol = conjugation_pauli(group);
  const Matrix q = sol.q.matrix();
  const double residual = (q * rho.matrix() * q.adjoint() - rho.matrix().conjugate()).norm();
  Json j;
  j["n"] = group.num_qubits();
  j["k"] = group.size();
  j["fingerprint"] = fingerprint(rho.matrix());
  j["conjugation_pauli"] = sol.q.to_string();
  j["conjugation_residual"] = valued(residual, 1e-10);
  j["nullspace_dim"] = sol.nullspace_dim();
  if (group.size() == group.num_qubits()) {
    const Vector psi = stabilizer_pure_state(group);
    const int n = group.num_qubits();
    if (n <= kMaxEnumerationQubits) {
      j["nullity"] = stabilizer_nullity(psi, n);
      j["nullity_tolerance"] = kNullityTolerance;
      j["pauli_log_distance"] = valued(pauli_log_distance(psi, n).value, 1e-12);
    }
    if (n <= kMaxFidelityQubits) j["stabilizer_fidelity"] = valued(stabilizer_fidelity(psi, n), 1e-12);
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

struct QfiArgs {
  std::string state;
  std::string split;
  std::string party;
};

int cmd_qfi(const QfiArgs& a, std::ostream& out) {
  const DensityMatrix rho = parse_state_file(a.state);
  const Partition split = parse_split(a.split, rho);
  const ModularSet ms = modular_set(rho, split);
  std::vector<Party> parties{Party::A, Party::B};
  if (!a.party.empty()) parties = {parse_party(a.party)};
  Json j;
  j["split"] = split.to_string();
  for (Party p : parties) {
    const std::string name = party_name(p);
    Json entry;
    entry["intrinsic_ip"] = valued(intrinsic_ip(ms, p), 1e-10);
    const CQCheck cq = is_classical_quantum(rho, split, p);
    entry["classical_quantum"] = cq.decomposition.has_value();
    entry["cq_reason"] = cq.reason;
    entry["commutator_norm"] = valued(cq.commutator_norm, kCommutatorTolerance);
    j[name] = entry;
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

struct BoundsArgs {
  int n = 200;
  int magic = 20;
  int restarts = 20;
  std::uint64_t seed = 0;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  double min_slack = 1e300;
  for (int i = 0; i < a.n; ++i) {
    RngStream rng(a.seed, static_cast<std::uint64_t>(i));
    const GammaQfiReport r =
        check_gamma_qfi_bound(sample_mixed_state({2, 2}, rng), Partition::singletons(2));
    min_slack = std::min(min_slack, r.min_slack());
  }
  double min_gap = 1e300;
  for (int i = 0; i < a.magic; ++i) {
    RngStream rng(a.seed ^ 0x6d61676963ULL, static_cast<std::uint64_t>(i));
    const int qubits = 2 + i % 2;
    const Vector psi = sample_pure_state(Eigen::Index{1} << qubits, rng);
    const MagicBoundsReport m = verify_magic_bounds(psi, qubits, a.restarts, rng.seed());
    min_gap = std::min(min_gap, m.pauli_log_distance - m.log_distance);
  }
  Json j;
  j["gamma_qfi"] = {{"samples", a.n}, {"min_slack", a.n > 0 ? min_slack : 0.0},
                    {"tolerance", kBoundSlack}};
  j["magic"] = {{"samples", a.magic}, {"min_cp_minus_c", a.magic > 0 ? min_gap : 0.0},
                {"tolerance", kMagicBoundSlack}};
  j["status"] = "pass";
  out << j.dump(2) << '\n';
  return kExitOk;
}

struct ScanArgs {
  std::int64_t n = 5000;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string summary_path;
  int threads = 0;
};

int cmd_scan(const ScanArgs& a, std::ostream& out) {
  const ScanResult r = run_chirality_entanglement_scan(a.n, a.seed, a.threads);
  if (!a.out_path.empty()) {
    std::ofstream f(a.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + a.out_path + "'");
    f << scan_csv(r.rows);
  }
  const std::string summary = summary_json(r.summary);
  if (!a.summary_path.empty()) {
    std::ofstream f(a.summary_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + a.summary_path + "'");
    f << summary << '\n';
  }
  out << summary << '\n';
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"chiralkit: chirality, magic and correlation measures of density matrices"};
  app.name(args.empty() ? "chiralkit" : args.front());
  app.require_subcommand(1);

  MeasureArgs measure;
  auto* sc_measure = app.add_subcommand("measure", "nested-commutator and modular-flow measures");
  sc_measure->add_option("--state", measure.state, "state JSON file")->required();
  sc_measure->add_option("--split", measure.split, "bipartition, e.g. \"0|1\"")->default_val("0|1");
  sc_measure->add_option("--s", measure.s_values, "modular flow parameters")->default_val(std::vector<double>{0.7});

  LogdistArgs logdist;
  auto* sc_logdist = app.add_subcommand("logdist", "chiral log-distance (upper estimate)");
  sc_logdist->add_option("--state", logdist.state, "state JSON file")->required();
  sc_logdist->add_option("--split", logdist.split, "partition, default one group per subsystem");
  sc_logdist->add_option("--restarts", logdist.restarts)->default_val(10)->check(CLI::PositiveNumber);
  sc_logdist->add_option("--seed", logdist.seed)->default_val(0);
  sc_logdist->add_option("--max-iters", logdist.max_iters)->default_val(1000)->check(CLI::PositiveNumber);
  sc_logdist->add_option("--tol", logdist.tol)->default_val(1e-12)->check(CLI::PositiveNumber);

  std::string tableau;
  auto* sc_stab = app.add_subcommand("stabilizer", "stabilizer state, conjugation Pauli, magic");
  sc_stab->add_option("--tableau", tableau, "tableau text file")->required();

  QfiArgs qfi_args;
  auto* sc_qfi = app.add_subcommand("qfi", "intrinsic interferometric power and CQ check");
  sc_qfi->add_option("--state", qfi_args.state, "state JSON file")->required();
  sc_qfi->add_option("--split", qfi_args.split)->default_val("0|1");
  sc_qfi->add_option("--party", qfi_args.party, "A or B (default both)")->check(CLI::IsMember({"A", "B"}));

  BoundsArgs bounds;
  auto* sc_bounds = app.add_subcommand("bounds", "gamma-QFI and magic bound suites");
  sc_bounds->add_option("--n", bounds.n, "random two-qubit states for the gamma-QFI bound")->default_val(200)->check(CLI::NonNegativeNumber);
  sc_bounds->add_option("--magic", bounds.magic, "Haar states for the magic bounds")->default_val(20)->check(CLI::NonNegativeNumber);
  sc_bounds->add_option("--restarts", bounds.restarts)->default_val(20)->check(CLI::PositiveNumber);
  sc_bounds->add_option("--seed", bounds.seed)->default_val(0);

  ScanArgs scan;
  auto* sc_scan = app.add_subcommand("scan", "|J2| versus log negativity on random two-qubit states");
  sc_scan->add_option("--n", scan.n)->default_val(5000)->check(CLI::PositiveNumber);
  sc_scan->add_option("--seed", scan.seed)->default_val(0);
  sc_scan->add_option("--out", scan.out_path, "CSV output file");
  sc_scan->add_option("--summary", scan.summary_path, "JSON summary output file");
  sc_scan->add_option("--threads", scan.threads, "worker threads (default CHIRALKIT_THREADS)")->check(CLI::NonNegativeNumber);

  AcceptanceOptions accept;
  auto* sc_self = app.add_subcommand("selftest", "run the acceptance suite");
  sc_self->add_option("--only", accept.only, "criterion numbers")->check(CLI::Range(1, kAcceptanceCriteria));
  sc_self->add_option("--seed", accept.seed)->default_val(accept.seed);

  try {
    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sc_measure) return cmd_measure(measure, out);
    if (*sc_logdist) return cmd_logdist(logdist, out);
    if (*sc_stab) return cmd_stabilizer(tableau, out);
    if (*sc_qfi) return cmd_qfi(qfi_args, out);
    if (*sc_bounds) return cmd_bounds(bounds, out);
    if (*sc_scan) return cmd_scan(scan, out);
    if (*sc_self) return run_acceptance(out, accept) == 0 ? kExitOk : kExitAssertion;
  } catch (const InputFileError& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const BoundViolation& e) {
    err << "check failed: " << e.what() << '\n';
    return kExitAssertion;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitAssertion;
  }
  return kExitUsage;
}

}  // namespace chiralkit
