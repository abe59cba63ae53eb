// Copyright 2026 The tdsim Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "tdsim/errors.hpp"
#include "tdsim/estimators.hpp"
#include "tdsim/poly_svt.hpp"

namespace tdsim {
namespace {

constexpr double kPi = std::numbers::pi;

BlockEncoding plain(const Operator& u, const std::string& name = "B") {
  BlockEncoding b;
  b.unitary = u;
  b.system_qubits = qubit_count(u.rows());
  b.provenance = name;
  return b;
}

// Explicit phase estimation on the 2-d Grover rotation by 2 theta, with the
// register in uniform superposition and an inverse DFT.
std::vector<double> qpe_distribution(double p, int m) {
  const double theta = std::asin(std::sqrt(p));
  Eigen::Matrix2cd g;
  g << std::cos(2 * theta), -std::sin(2 * theta), std::sin(2 * theta), std::cos(2 * theta);
  Eigen::Vector2cd psi(std::cos(theta), std::sin(theta));
  std::vector<Eigen::Vector2cd> branch(static_cast<std::size_t>(m));
  Eigen::Vector2cd cur = psi;
  for (int x = 0; x < m; ++x) {
    branch[static_cast<std::size_t>(x)] = cur;
    cur = g * cur;
  }
  std::vector<double> out(static_cast<std::size_t>(m));
  for (int y = 0; y < m; ++y) {
    Eigen::Vector2cd amp = Eigen::Vector2cd::Zero();
    for (int x = 0; x < m; ++x)
      amp += std::exp(Complex(0, -2.0 * kPi * x * y / m)) * branch[static_cast<std::size_t>(x)];
    out[static_cast<std::size_t>(y)] = amp.squaredNorm() / (static_cast<double>(m) * m);
  }
  return out;
}

double qae_bound(double p, int m) { return 2 * kPi * std::sqrt(p * (1 - p)) / m + kPi * kPi / (1.0 * m * m); }

TEST(HadamardTest, TrivialCases) {
  const DensityOperator zero = DensityOperator::basis(1, 0);
  EXPECT_NEAR(hadamard_test_prob(plain(identity(2)), zero, Part::kReal), 1.0, 1e-14);
  Operator z = identity(2);
  z(1, 1) = -1.0;
  EXPECT_NEAR(hadamard_test_prob(plain(z), zero, Part::kReal), 1.0, 1e-14);
  EXPECT_NEAR(hadamard_test_prob(plain(z), DensityOperator::basis(1, 1), Part::kReal), 0.0, 1e-14);
  EXPECT_THROW(hadamard_test_prob(plain(z), DensityOperator::maximally_mixed(2), Part::kReal), ArgumentError);
}

TEST(HadamardTest, MatchesDirectTrace) {
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    // Encoding with one ancilla of a random contraction.
    const Operator u = haar_unitary(8, rng);
    BlockEncoding b = plain(u);
    b.ancillas = 1;
    b.system_qubits = 2;
    const DensityOperator rho = random_density(2, 1 + t % 4, rng);
    const Complex tr = (b.block() * rho.op()).trace();
    EXPECT_NEAR(hadamard_test_prob(b, rho, Part::kReal), 0.5 * (1 + tr.real()), 1e-12);
    EXPECT_NEAR(hadamard_test_prob(b, rho, Part::kImag), 0.5 * (1 + tr.imag()), 1e-12);
  }
}

TEST(HadamardTest, ChargesOneQueryPerInvocation) {
  QueryLedger ledger;
  BlockEncoding b = plain(identity(2), "U_x");
  b.cost = {{"O_x", 3}};
  hadamard_test_prob(b, DensityOperator::basis(1, 0), Part::kReal, &ledger);
  EXPECT_EQ(ledger.count("U_x"), 1U);
  EXPECT_EQ(ledger.count("O_x"), 3U);
}

TEST(HadamardSample, DeterministicExtremes) {
  Rng rng(42);
  QueryLedger ledger;
  EXPECT_EQ(hadamard_test_sample(plain(identity(2)), DensityOperator::basis(1, 0), Part::kReal, 100, rng, &ledger), 1.0);
  EXPECT_EQ(hadamard_test_sample(plain(-identity(2)), DensityOperator::basis(1, 0), Part::kReal, 100, rng, &ledger), 0.0);
  EXPECT_EQ(ledger.count("samples:rho"), 200U);
  EXPECT_EQ(ledger.count("B"), 200U);
  EXPECT_THROW(hadamard_test_sample(plain(identity(2)), DensityOperator::basis(1, 0), Part::kReal, 0, rng), ArgumentError);
}

TEST(HadamardSample, BinomialConcentration) {
  // <0|Ry(theta)|0> = cos(theta / 2) = 1/2 gives p0 = 0.75.
  const BlockEncoding b = plain(gates::ry(2.0 * std::acos(0.5)));
  const DensityOperator zero = DensityOperator::basis(1, 0);
  ASSERT_NEAR(hadamard_test_prob(b, zero, Part::kReal), 0.75, 1e-12);
  const std::uint64_t shots = 10000;
  const double tol = 3.0 * std::sqrt(0.75 * 0.25 / shots);
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = Rng(7).stream(seed);
    if (std::abs(hadamard_test_sample(b, zero, Part::kReal, shots, rng) - 0.75) <= tol) ++inside;
  }
  EXPECT_GE(inside, 99);
}

TEST(HadamardShots, HoeffdingFormula) {
  EXPECT_EQ(hadamard_shots(0.1, 0.25), static_cast<std::uint64_t>(std::ceil(2 * std::log(8.0) / 0.01)));
  EXPECT_THROW(hadamard_shots(0.0), ArgumentError);
}

TEST(Qae, OutcomeDistributionMatchesPhaseEstimation) {
  for (double p : {0.0, 0.03, 0.3, 0.5, 0.77, 1.0}) {
    for (int m : {4, 16, 32}) {
      const std::vector<double> oracle = qpe_distribution(p, m);
      double total = 0;
      for (int y = 0; y < m; ++y) {
        EXPECT_NEAR(qae_outcome_probability(y, m, p), oracle[static_cast<std::size_t>(y)], 1e-12) << p << " " << m << " " << y;
        total += qae_outcome_probability(y, m, p);
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(Qae, FixedPointsAndOnGrid) {
  EstimationBackend backend{BackendMode::kQae, 9, Rng(43)};
  EXPECT_EQ(amplitude_estimate_probability(0.0, 16, backend).estimate, 0.0);
  EXPECT_NEAR(amplitude_estimate_probability(1.0, 16, backend).estimate, 1.0, 1e-15);
  const double p = std::pow(std::sin(kPi * 3 / 32), 2);
  for (int r = 0; r < 10; ++r) EXPECT_NEAR(amplitude_estimate_probability(p, 32, backend).estimate, p, 1e-15);
  EXPECT_THROW(amplitude_estimate_probability(0.5, 1, backend), ArgumentError);
  backend.mode = BackendMode::kSampling;
  EXPECT_THROW(amplitude_estimate_probability(0.5, 8, backend), ArgumentError);
}

TEST(Qae, CircuitOverloadAndCharges) {
  EstimationBackend backend{BackendMode::kIdeal, 9, Rng(44)};
  QueryLedger ledger;
  const Operator a = gates::ry(1.1);
  const AmplitudeEstimate e = amplitude_estimate(a, 0, 10, backend, &ledger, {{"O_a", 1}});
  EXPECT_NEAR(e.estimate, std::pow(std::cos(0.55), 2), 1e-14);
  EXPECT_EQ(e.grid, 16);
  EXPECT_EQ(ledger.count("O_a"), 16U * 9U);
}

TEST(Qae, ErrorLawFrequency) {
  Rng rng(45);
  EstimationBackend backend{BackendMode::kQae, 1, Rng(46)};
  int ok = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const double p = rng.uniform();
    const int m = 1 << (2 + t % 6);
    const AmplitudeEstimate e = amplitude_estimate_probability(p, m, backend);
    if (std::abs(e.estimate - p) <= qae_bound(p, m)) ++ok;
  }
  EXPECT_GE(static_cast<double>(ok) / trials, 8.0 / (kPi * kPi) - 0.05);
}

TEST(Qae, MedianAmplificationReducesFailures) {
  const double p = 0.3141;
  const int m = 16;
  int fail1 = 0, fail9 = 0;
  for (std::uint64_t s = 0; s < 400; ++s) {
    EstimationBackend one{BackendMode::kQae, 1, Rng(47).stream(s)};
    EstimationBackend nine{BackendMode::kQae, 9, Rng(47).stream(s)};
    if (std::abs(amplitude_estimate_probability(p, m, one).estimate - p) > qae_bound(p, m)) ++fail1;
    if (std::abs(amplitude_estimate_probability(p, m, nine).estimate - p) > qae_bound(p, m)) ++fail9;
  }
  EXPECT_LT(fail9, fail1);
  EXPECT_LE(fail9, 4);
}

TEST(Qae, GridRule) {
  for (double eps : {0.5, 0.1, 0.01}) {
    const int m = qae_grid_for_error(eps);
    EXPECT_EQ(m & (m - 1), 0);
    EXPECT_LE(kPi / m + kPi * kPi / (1.0 * m * m), eps / 2);
    EXPECT_GT(kPi / (m / 2) + kPi * kPi / (0.25 * m * m), eps / 2);
  }
}

struct TraceCase {
  BlockEncoding u_sgn;
  PurifiedOracle o_rho;
  double exact;
};

TraceCase make_case(const DensityOperator& rho, const DensityOperator& sigma, double eps_p) {
  const PurifiedOracle o_rho = purify(rho, "O_rho"), o_sigma = purify(sigma, "O_sigma");
  const BlockEncoding nu = lcu_difference(density_to_block_encoding(o_rho), density_to_block_encoding(o_sigma));
  const BlockEncoding u = qsvt_block_encoding(sign_poly(0.05, eps_p), nu);
  return {u, o_rho, (u.block() * rho.op()).trace().real()};
}

TEST(TraceTerm, EqualStatesGiveZero) {
  Rng rng(48);
  const DensityOperator rho = random_density(1, 2, rng);
  const TraceCase c = make_case(rho, rho, 0.05);
  EstimationBackend backend{BackendMode::kQae, 9, Rng(49)};
  QueryLedger ledger;
  const double eps_h = 0.05;
  const TraceTermEstimate e = estimate_trace_term(c.u_sgn, c.o_rho, eps_h, backend, ledger);
  EXPECT_LE(std::abs(e.value), eps_h);
}

TEST(TraceTerm, OrthogonalPureStates) {
  const double eps_p = 0.02, eps_h = 0.05;
  const TraceCase c = make_case(DensityOperator::basis(1, 0), DensityOperator::basis(1, 1), eps_p);
  for (BackendMode mode : {BackendMode::kIdeal, BackendMode::kQae, BackendMode::kSampling}) {
    EstimationBackend backend{mode, 9, Rng(50)};
    QueryLedger ledger;
    const TraceTermEstimate e = estimate_trace_term(c.u_sgn, c.o_rho, eps_h, backend, ledger);
    EXPECT_LE(std::abs(e.value - 1.0), eps_h + eps_p) << to_string(mode);
    EXPECT_NEAR(e.exact, c.exact, 1e-12);
  }
}

TEST(TraceTerm, SeededRankTwoAgainstMatrixOracle) {
  Rng rng(51);
  const double eps_p = 0.05, eps_h = 0.04;
  for (int t = 0; t < 5; ++t) {
    const DensityOperator rho = random_density(1, 2, rng), sigma = random_density(1, 2, rng);
    const TraceCase c = make_case(rho, sigma, eps_p);
    const Operator nu = 0.5 * (rho.op() - sigma.op());
    const double oracle =
        (matrix_svt_exact(sign_poly(0.05, eps_p), nu) * rho.op()).trace().real();
    EstimationBackend backend{BackendMode::kQae, 9, Rng(52).stream(static_cast<std::uint64_t>(t))};
    QueryLedger ledger;
    const TraceTermEstimate e = estimate_trace_term(c.u_sgn, c.o_rho, eps_h, backend, ledger);
    EXPECT_NEAR(e.exact, oracle, 1e-9);
    EXPECT_LE(std::abs(e.value - oracle), eps_h + eps_p);
    // Per circuit call: one O_rho for the state plus the transitive U_psv cost.
    const std::uint64_t calls = static_cast<std::uint64_t>(e.grid) * 9U;
    const std::uint64_t d = static_cast<std::uint64_t>(sign_poly(0.05, eps_p).degree);
    EXPECT_EQ(ledger.count("U_psv"), calls);
    EXPECT_EQ(ledger.count("O_rho"), calls * (1 + 2 * kQsvtQueryConstant * d));
    EXPECT_EQ(ledger.count("O_sigma"), calls * 2 * kQsvtQueryConstant * d);
  }
}

TEST(Clamp, ViolationsStaySmall) {
  reset_clamp_violation();
  Rng rng(53);
  for (int t = 0; t < 20; ++t) {
    BlockEncoding b = plain(haar_unitary(4, rng));
    b.ancillas = 1;
    b.system_qubits = 1;
    hadamard_test_prob(b, random_density(1, 2, rng), Part::kReal);
  }
  EXPECT_LT(max_clamp_violation(), 1e-9);
}

TEST(Ledger, CsvAndSaturation) {
  QueryLedger l;
  l.charge("O_rho", 3);
  l.charge_samples("rho", 5);
  l.charge("U_nu", 2);
  EXPECT_EQ(l.total_queries(), 3U);
  EXPECT_EQ(l.total_samples(), 5U);
  std::ostringstream os;
  l.write_csv(os, "r1");
  EXPECT_EQ(os.str(), "run_id,oracle,count\nr1,O_rho,3\nr1,U_nu,2\nr1,samples:rho,5\n");
  l.charge("O_rho", UINT64_MAX);
  EXPECT_TRUE(l.saturated());
  EXPECT_EQ(l.count("O_rho"), UINT64_MAX);
  QueryLedger m;
  m.charge("O_rho", 1);
  m.merge(l);
  EXPECT_TRUE(m.saturated());
}

}  // namespace
}  // namespace tdsim
