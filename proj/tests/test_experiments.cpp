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
#include "chiralkit/experiments.hpp"
#include "chiralkit/random.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace chiralkit {
namespace {

const Partition kSplit = Partition::singletons(2);

RealVector example1_p() { return (RealVector(3) << 0.5, 0.3, 0.2).finished(); }

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

TEST(HaarUnitary, UnitaryAndFirstMoment) {
  RngStream one(111, 0);
  const Matrix u1 = sample_haar_unitary(1, one);
  EXPECT_NEAR(std::abs(u1(0, 0)), 1.0, 1e-14);

  constexpr int kSamples = 10000;
  constexpr int d = 3;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    RngStream rng(112, i);
    const Matrix u = sample_haar_unitary(d, rng);
    if (i < 20) {
      EXPECT_LT((u.adjoint() * u - Matrix::Identity(d, d)).norm(), 1e-10);
      for (int c = 0; c < d; ++c) EXPECT_NEAR(u.col(c).norm(), 1.0, 1e-10);
    }
    const double v = std::norm(u(0, 0));
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / kSamples;
  const double sigma = std::sqrt((sum_sq / kSamples - mean * mean) / kSamples);
  EXPECT_NEAR(mean, 1.0 / d, 3.0 * sigma);
}

TEST(HaarUnitary, LeftInvariance) {
  RngStream fixed(113, 0);
  const Matrix v = sample_haar_unitary(2, fixed);
  std::vector<double> plain;
  std::vector<double> moved;
  for (int i = 0; i < 2000; ++i) {
    RngStream a(114, i);
    RngStream b(115, i);
    plain.push_back(std::norm(sample_haar_unitary(2, a)(0, 0)));
    moved.push_back(std::norm((v * sample_haar_unitary(2, b))(0, 0)));
  }
  EXPECT_LT(ks_statistic(plain, moved), 1.36 * std::sqrt(2.0 / 2000));
}

TEST(MixedState, TraceSpectrumAndPurity) {
  RngStream rng(116, 0);
  const DensityMatrix rho = sample_mixed_state({2, 2}, rng);
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);

  RngStream again(116, 0);
  const Matrix u = sample_haar_unitary(4, again);
  RealVector p = sample_simplex(4, again);
  std::sort(p.data(), p.data() + p.size());
  EXPECT_LT((eig_hermitian(rho.matrix()).eigenvalues - p).norm(), 1e-10);

  constexpr int kSamples = 10000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    RngStream r(117, i);
    const DensityMatrix s = sample_mixed_state({2, 2}, r);
    const double purity = (s.matrix() * s.matrix()).trace().real();
    sum += purity;
    sum_sq += purity * purity;
  }
  const double mean = sum / kSamples;
  const double sigma = std::sqrt((sum_sq / kSamples - mean * mean) / kSamples);
  EXPECT_NEAR(mean, 0.4, 3.0 * sigma);
}

TEST(RngStream, DerivedSeedsAreStable) {
  EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 1));
  RngStream a(5, 9);
  RngStream b(5, 9);
  EXPECT_EQ(a.normal(), b.normal());
}

TEST(LogNegativity, Examples) {
  RngStream rng(118, 0);
  const DensityMatrix prod =
      tensor_product(sample_mixed_state({2}, rng), sample_mixed_state({2}, rng));
  EXPECT_NEAR(log_negativity(prod, kSplit), 0.0, 1e-12);

  Vector phi = Vector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(log_negativity(DensityMatrix::pure({2, 2}, phi), kSplit), std::log(2.0), 1e-12);

  EXPECT_NEAR(log_negativity(example1_state(example1_p()), kSplit), 0.0, 1e-10);

  const DensityMatrix fixed({2, 2}, oracle::fixed_state(4));
  EXPECT_NEAR(log_negativity(fixed, kSplit), 0.022301770342722967, 1e-12);
  EXPECT_GE(log_negativity(fixed, kSplit), -1e-12);
}

TEST(ExampleStates, PurificationReducesToExampleOne) {
  const Vector psi = example1_purification(example1_p());
  EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
  const Matrix reduced = oracle::ptrace(psi * psi.adjoint(), {3, 3, 2}, {0, 2});
  EXPECT_LT((reduced - example1_state(example1_p()).matrix()).norm(), 1e-12);
}

TEST(ExampleStates, ExampleOneStructure) {
  const DensityMatrix rho = example1_state(example1_p());
  EXPECT_EQ(rho.dims(), (Dims{3, 2}));
  const auto psis = example_qubit_states();
  EXPECT_NEAR(std::abs(psis[2](1) - cplx(0.0, std::sqrt(3.0) / 2.0)), 0.0, 1e-15);
  const Matrix block = rho.matrix().block(4, 4, 2, 2);
  EXPECT_LT((block - 0.2 * psis[2] * psis[2].adjoint()).norm(), 1e-14);
}

TEST(ExampleStates, ExampleTwoIsValidAndFineTuned) {
  const RealVector p = (RealVector(4) << 0.05, 0.06, 0.07, 0.82).finished();
  const DensityMatrix rho = example2_state(p);
  EXPECT_EQ(rho.dims(), (Dims{4, 2}));
  const Matrix rho_b = oracle::ptrace(rho.matrix(), rho.dims(), {1});
  EXPECT_LT((rho_b - Matrix::Identity(2, 2) / 2.0).norm(), 1e-12);
  EXPECT_NEAR(j2(rho, kSplit), 0.0, 1e-9);
  EXPECT_NEAR(j3(rho, kSplit), 0.0, 1e-9);
  EXPECT_NEAR(j3_prime(rho, kSplit), 0.0, 1e-9);
  const RealVector big = (RealVector(4) << 0.4, 0.3, 0.2, 0.1).finished();
  EXPECT_THROW(example2_state(big), InvalidInput);
}

TEST(ExampleStates, InvalidProbabilities) {
  EXPECT_THROW(example1_state((RealVector(3) << 0.5, 0.5, 0.1).finished()), InvalidInput);
  EXPECT_THROW(example1_state((RealVector(2) << 0.5, 0.5).finished()), InvalidInput);
  EXPECT_THROW(example1_purification((RealVector(3) << 0.4, 0.4, 0.2).finished()), InvalidInput);
}

TEST(Statistics, PearsonAndSpearman) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> y{2, 4, 6, 8, 10};
  const std::vector<double> z{1, 4, 9, 16, 25};
  EXPECT_NEAR(pearson(x, y), 1.0, 1e-15);
  EXPECT_NEAR(spearman(x, z), 1.0, 1e-15);
  EXPECT_NEAR(pearson(x, {5, 4, 3, 2, 1}), -1.0, 1e-15);
  // Centered sums: Sxz = 60, Sxx = 10, Szz = 374.
  EXPECT_NEAR(pearson(x, z), 60.0 / std::sqrt(10.0 * 374.0), 1e-12);
  EXPECT_NEAR(spearman({1, 2, 2, 3}, {1, 3, 2, 4}), 0.9486832980505138, 1e-12);
  EXPECT_THROW(pearson({1.0}, {2.0}), InvalidInput);
}

TEST(Scan, SingleSampleIsDeterministic) {
  const ScanResult a = run_chirality_entanglement_scan(1, 7);
  const ScanResult b = run_chirality_entanglement_scan(1, 7);
  ASSERT_EQ(a.rows.size(), 1U);
  EXPECT_EQ(a.rows[0].e_n, b.rows[0].e_n);
  EXPECT_EQ(a.rows[0].abs_j2, b.rows[0].abs_j2);
  EXPECT_EQ(a.rows[0].seed, derive_seed(7, 0));
  EXPECT_THROW(run_chirality_entanglement_scan(0, 7), InvalidInput);
}

TEST(Scan, RowsMatchDirectEvaluation) {
  const ScanResult r = run_chirality_entanglement_scan(5, 9, 1);
  for (const ScanRow& row : r.rows) {
    RngStream rng(row.seed);
    const DensityMatrix rho = sample_mixed_state({2, 2}, rng);
    EXPECT_NEAR(row.abs_j2, std::abs(j2(rho, kSplit)), 1e-15);
    EXPECT_NEAR(row.e_n, log_negativity(rho, kSplit), 1e-15);
    EXPECT_GE(row.e_n, -1e-12);
  }
}

TEST(Scan, IndependentOfThreadCount) {
  const ScanResult one = run_chirality_entanglement_scan(64, 11, 1);
  const ScanResult four = run_chirality_entanglement_scan(64, 11, 4);
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    EXPECT_EQ(one.rows[i].sample_index, static_cast<std::int64_t>(i));
    EXPECT_EQ(one.rows[i].abs_j2, four.rows[i].abs_j2);
    EXPECT_EQ(one.rows[i].e_n, four.rows[i].e_n);
  }
  EXPECT_EQ(one.summary.pearson, four.summary.pearson);
}

TEST(Scan, SummaryAndSerialization) {
  const ScanResult r = run_chirality_entanglement_scan(200, 13);
  const ScanSummary& s = r.summary;
  EXPECT_EQ(s.n, 200);
  EXPECT_DOUBLE_EQ(s.pearson_threshold, kPearsonThreshold);
  std::vector<double> en;
  std::vector<double> aj;
  for (const auto& row : r.rows) {
    en.push_back(row.e_n);
    aj.push_back(row.abs_j2);
  }
  EXPECT_DOUBLE_EQ(s.pearson, pearson(en, aj));
  std::vector<double> sorted = aj;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_DOUBLE_EQ(s.median_j2, 0.5 * (sorted[99] + sorted[100]));

  const std::string csv = scan_csv(r.rows);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "sample_index,E_N,abs_J2,seed");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 201);

  const auto j = nlohmann::json::parse(summary_json(s));
  for (const char* key : {"n", "pearson", "spearman", "frac_low_EN_high_J2", "median_J2"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["n"].get<int>(), 200);
}

TEST(Scan, JTwoDistributionInvariantUnderFixedLocalUnitary) {
  RngStream fixed(119, 0);
  const Matrix v = sample_local_unitary({2, 2}, kSplit, fixed);
  std::vector<double> plain;
  std::vector<double> moved;
  for (int i = 0; i < 2000; ++i) {
    RngStream a(120, i);
    RngStream b(121, i);
    plain.push_back(std::abs(j2(sample_mixed_state({2, 2}, a), kSplit)));
    const DensityMatrix rho = sample_mixed_state({2, 2}, b);
    moved.push_back(std::abs(j2(DensityMatrix({2, 2}, v * rho.matrix() * v.adjoint()), kSplit)));
  }
  EXPECT_LT(ks_statistic(plain, moved), 1.36 * std::sqrt(2.0 / 2000));
}

TEST(WorkerThreads, ReadsEnvironment) {
  ::setenv("CHIRALKIT_THREADS", "3", 1);
  EXPECT_EQ(worker_threads(), 3);
  ::setenv("CHIRALKIT_THREADS", "zero", 1);
  EXPECT_GE(worker_threads(), 1);
  ::unsetenv("CHIRALKIT_THREADS");
}

TEST(Nonmonotonicity, ExampleProbabilities) {
  const NonmonotonicityReport r = nonmonotonicity_demo(example1_p(), 20, 122);
  EXPECT_LT(r.purified.value, kNonchiralThreshold);
  EXPECT_GT(r.traced.value, kChiralThreshold);
}

TEST(Nonmonotonicity, RejectsDegenerateProbabilities) {
  EXPECT_THROW(nonmonotonicity_demo((RealVector(3) << 0.4, 0.4, 0.2).finished(), 5),
               InvalidInput);
}

}  // namespace
}  // namespace chiralkit
