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

#include "tdsim/algorithms.hpp"
#include "tdsim/fixtures.hpp"
#include "tdsim/poly_svt.hpp"

namespace tdsim {
namespace {

constexpr double kPi = std::numbers::pi;

// sgn(nu) in the eigenbasis with sgn(0) = 0.
Operator exact_sign(const Operator& nu) {
  return hermitian_function(nu, [](double x) { return x > 1e-14 ? 1.0 : (x < -1e-14 ? -1.0 : 0.0); });
}

PurifiedOracle ket(int qubits, Eigen::Index index) { return purify(DensityOperator::basis(qubits, index)); }

TEST(SignIdentity, HalfDifferenceOfSignTraces) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const int n = 1 + static_cast<int>(s % 3);
    const int cap = std::min(4, 1 << n);
    const DensityOperator rho = gen_low_rank(n, 1 + static_cast<int>(s % static_cast<std::uint64_t>(cap)), 2 * s);
    const DensityOperator sigma = gen_low_rank(n, 1 + static_cast<int>((s / 3) % static_cast<std::uint64_t>(cap)), 2 * s + 1);
    const Operator sg = exact_sign(0.5 * (rho.op() - sigma.op()));
    const double t = 0.5 * ((rho.op() * sg).trace().real() - (sigma.op() * sg).trace().real());
    EXPECT_NEAR(t, trace_distance_exact(rho, sigma), 1e-8);
  }
}

TEST(Purified, EqualStates) {
  EstimationConfig cfg;
  cfg.eps = 0.1;
  cfg.rank_bound = 2;
  for (std::uint64_t s = 0; s < 5; ++s) {
    cfg.seed = s;
    const PurifiedOracle o = purify(gen_low_rank(2, 2, s));
    const EstimateReport r = estimate_purified(o, o, cfg);
    EXPECT_LE(std::abs(r.estimate), cfg.eps);
    EXPECT_EQ(r.exact_value, 0.0);
  }
}

TEST(Purified, OrthogonalPureStates) {
  EstimationConfig cfg;
  cfg.eps = 0.1;
  cfg.rank_bound = 1;
  const EstimateReport r = estimate_purified(ket(1, 0), ket(1, 1), cfg);
  EXPECT_GE(r.estimate, 0.9);
  EXPECT_LE(r.estimate, 1.1);
  EXPECT_DOUBLE_EQ(r.exact_value, 1.0);
}

TEST(Purified, ParametersFollowTheAlgorithm) {
  EstimationConfig cfg;
  cfg.eps = 0.2;
  cfg.rank_bound = 2;
  cfg.repetitions = 3;
  const EstimateReport r = estimate_purified(purify(gen_low_rank(2, 2, 1)), purify(gen_low_rank(2, 2, 2)), cfg);
  EXPECT_DOUBLE_EQ(r.params.eps_p, 0.025);
  EXPECT_DOUBLE_EQ(r.params.eps_h, 0.05);
  EXPECT_DOUBLE_EQ(r.params.delta_p, 0.0125);
  EXPECT_EQ(r.params.delta_p_source, DeltaSource::kRank);
  EXPECT_EQ(r.params.degree, sign_poly(0.0125, 0.025).degree);
  EXPECT_EQ(r.params.grid, qae_grid_for_error(0.05));
  EXPECT_TRUE(r.precondition_ok);
  EXPECT_EQ(r.runs.size(), 3U);
  // Per trace-term call: one state preparation plus 2 gamma d uses of U_nu,
  // each querying both oracles twice.
  const std::uint64_t d = static_cast<std::uint64_t>(r.params.degree);
  const std::uint64_t calls = 3U * static_cast<std::uint64_t>(r.params.grid);
  EXPECT_EQ(r.ledger.count("O_rho"), calls * (1 + 8 * d));
  EXPECT_EQ(r.ledger.count("O_sigma"), calls * (1 + 8 * d));
  EXPECT_EQ(r.ledger.total_queries(), 2 * calls * (1 + 8 * d));
}

TEST(Purified, IdealBackendErrorIsPolynomialOnly) {
  EstimationConfig cfg;
  cfg.eps = 0.1;
  cfg.backend = BackendMode::kIdeal;
  int checked = 0;
  for (std::uint64_t s = 0; s < 40 && checked < 10; ++s) {
    const DensityOperator rho = gen_low_rank(2, 2, 10 + s), sigma = gen_low_rank(2, 2, 60 + s);
    const Operator nu = 0.5 * (rho.op() - sigma.op());
    cfg.delta_p = choose_delta_p_rank(2, cfg.eps);
    // Only pairs whose spectrum avoids the transition window qualify.
    const RealVector ev = eigh(nu).eigenvalues;
    if ((ev.cwiseAbs().array() > 1e-12 && ev.cwiseAbs().array() <= *cfg.delta_p).any()) continue;
    const EstimateReport r = estimate_purified(purify(rho), purify(sigma), cfg);
    EXPECT_LE(r.abs_error, 2.0 * r.params.eps_p) << "seed " << s;
    ++checked;
  }
  EXPECT_EQ(checked, 10);
}

TEST(Purified, SeededRankTwoPairs) {
  EstimationConfig cfg;
  cfg.eps = 0.05;
  cfg.rank_bound = 2;
  int ok = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    cfg.seed = s;
    const EstimateReport r =
        estimate_purified(purify(gen_low_rank(3, 2, 2 * s)), purify(gen_low_rank(3, 2, 2 * s + 1)), cfg);
    ok += r.abs_error <= cfg.eps;
  }
  EXPECT_GE(ok, 9);
}

TEST(Purified, OracleAssistedDeltaIsFlagged) {
  EstimationConfig cfg;
  cfg.eps = 0.2;
  const EstimateReport r = estimate_purified(purify(gen_low_rank(1, 2, 3)), purify(gen_low_rank(1, 1, 4)), cfg);
  EXPECT_EQ(r.params.delta_p_source, DeltaSource::kOracle);
  EXPECT_TRUE(r.precondition_ok);
  EXPECT_FALSE(r.warnings.empty());
  cfg.oracle_delta_p = false;
  EXPECT_THROW(estimate_purified(purify(gen_low_rank(1, 2, 3)), purify(gen_low_rank(1, 1, 4)), cfg),
               InfeasibleError);
}

TEST(Purified, ProfileDerivedDelta) {
  EstimationConfig cfg;
  cfg.eps = 0.2;
  cfg.profile_rho = ApproxLowRankProfile::exact(1);
  cfg.profile_sigma = ApproxLowRankProfile::exact(1);
  const EstimateReport r = estimate_purified(ket(1, 0), ket(1, 1), cfg);
  EXPECT_EQ(r.params.delta_p_source, DeltaSource::kProfile);
  EXPECT_DOUBLE_EQ(r.params.delta_p, 0.05);
}

TEST(Purified, InvalidConfig) {
  EstimationConfig cfg;
  cfg.eps = 1.5;
  EXPECT_THROW(estimate_purified(ket(1, 0), ket(1, 1), cfg), ArgumentError);
  cfg.eps = 0.1;
  EXPECT_THROW(estimate_purified(ket(1, 0), ket(2, 1), cfg), ArgumentError);
}

TEST(Samples, EqualStates) {
  EstimationConfig cfg;
  cfg.eps = 0.2;
  cfg.rank_bound = 2;
  const DensityOperator rho = gen_low_rank(1, 2, 5);
  const EstimateReport r = estimate_samples(rho, rho, cfg);
  EXPECT_LE(std::abs(r.estimate), cfg.eps);
}

TEST(Samples, OrthogonalPureStates) {
  EstimationConfig cfg;
  cfg.eps = 0.2;
  cfg.rank_bound = 1;
  const EstimateReport r = estimate_samples(DensityOperator::basis(1, 0), DensityOperator::basis(1, 1), cfg);
  EXPECT_NEAR(r.estimate, 1.0, 0.2);
}

TEST(Samples, ParametersFollowTheAlgorithm) {
  EstimationConfig cfg;
  cfg.eps = 0.1;
  cfg.rank_bound = 2;
  cfg.repetitions = 1;
  const EstimateReport r = estimate_samples(gen_low_rank(2, 2, 1), gen_low_rank(2, 2, 2), cfg);
  const double dp = 0.1 / 16.0, ep = 0.1 / 12.0;
  EXPECT_DOUBLE_EQ(r.params.eps_p, ep);
  EXPECT_DOUBLE_EQ(r.params.eps_h, kPi * 0.1 / 24.0);
  EXPECT_DOUBLE_EQ(r.params.delta_p, dp);
  EXPECT_NEAR(r.params.delta, kPi * 0.1 * dp / (48.0 * 2.0 * 3.3 * std::log(1.0 / ep)), 1e-18);
  const std::uint64_t q = 2U * static_cast<std::uint64_t>(r.params.degree);
  EXPECT_EQ(r.params.channel_uses, q);
  EXPECT_NEAR(r.channel_budget, 2.0 * static_cast<double>(q) * r.params.delta, 1e-12);
  EXPECT_FALSE(r.budget_overflow);
  EXPECT_EQ(r.params.shots, hadamard_shots(kPi * 0.1 / 24.0));
  const std::uint64_t k = samples_per_use(r.params.delta);
  EXPECT_EQ(r.ledger.total_samples(), 2 * r.params.shots * (1 + 2 * q * k));
  EXPECT_EQ(r.ledger.count("E_psv"), 2 * r.params.shots);
  EXPECT_EQ(r.ledger.count("E_rho"), 2 * r.params.shots * q);
}

TEST(Samples, SeededRankTwoPairs) {
  EstimationConfig cfg;
  cfg.eps = 0.1;
  cfg.rank_bound = 2;
  int ok = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    cfg.seed = s;
    ok += estimate_samples(gen_low_rank(2, 2, 2 * s), gen_low_rank(2, 2, 2 * s + 1), cfg).abs_error <= cfg.eps;
  }
  EXPECT_GE(ok, 9);
}

TEST(Samples, UnsupportedModes) {
  EstimationConfig cfg;
  cfg.rank_bound = 1;
  cfg.backend = BackendMode::kQae;
  EXPECT_THROW(estimate_samples(DensityOperator::basis(1, 0), DensityOperator::basis(1, 1), cfg),
               UnsupportedError);
  cfg.backend = BackendMode::kSampling;
  cfg.channel_mode = ChannelMode::kDme;
  EXPECT_THROW(estimate_samples(DensityOperator::basis(1, 0), DensityOperator::basis(1, 1), cfg),
               UnsupportedError);
}

TEST(SwapTest, TrivialPairs) {
  const double eps = 0.1;
  EXPECT_LE(swap_test_pure(ket(1, 0), ket(1, 0), eps).estimate, eps);
  EXPECT_NEAR(swap_test_pure(ket(1, 0), ket(1, 1), eps).estimate, 1.0, eps);
  StateVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const SwapTestReport r = swap_test_pure(ket(1, 0), purify(DensityOperator::pure(plus)), eps);
  EXPECT_NEAR(r.exact_value, 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(r.estimate, r.exact_value, eps);
  EXPECT_DOUBLE_EQ(r.delta, eps * eps / 4.0);
  EXPECT_EQ(r.grid, qae_grid_for_error(r.delta));
}

TEST(SwapTest, RejectsMixedStates) {
  EXPECT_THROW(swap_test_pure(purify(DensityOperator::maximally_mixed(1)), ket(1, 0), 0.1), ArgumentError);
}

TEST(SwapTest, OverlapErrorBound) {
  // |sqrt(1 - x) - T| <= 2 sqrt(delta) whenever |x - F^2| <= delta.
  Rng rng(77);
  int low_branch = 0, high_branch = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 2;
    const DensityOperator a = gen_low_rank(n, 1, static_cast<std::uint64_t>(2 * t));
    const DensityOperator b = t % 5 == 0 ? a : gen_low_rank(n, 1, static_cast<std::uint64_t>(2 * t + 1));
    const double f2 = std::clamp((a.op() * b.op()).trace().real(), 0.0, 1.0);
    const double truth = trace_distance_exact(a, b);
    for (double delta : {1e-4, 1e-3, 1e-2, 0.05}) {
      const double x = f2 + delta * (2.0 * rng.uniform() - 1.0);
      const double m = std::min(x, f2);
      (m <= 1.0 - delta ? low_branch : high_branch)++;
      EXPECT_LE(std::abs(distance_from_overlap(x) - truth), 2.0 * std::sqrt(delta) + 1e-12);
    }
  }
  EXPECT_GT(low_branch, 0);
  EXPECT_GT(high_branch, 0);
}

TEST(SwapTest, AgreesWithPurifiedRoute) {
  EstimationConfig cfg;
  cfg.eps = 0.1;
  cfg.rank_bound = 1;
  for (std::uint64_t s = 0; s < 5; ++s) {
    cfg.seed = s;
    const PurifiedOracle a = purify(gen_low_rank(2, 1, 3 * s)), b = purify(gen_low_rank(2, 1, 3 * s + 1));
    EXPECT_NEAR(estimate_purified(a, b, cfg).estimate, swap_test_pure(a, b, cfg.eps, BackendMode::kQae, 9, s).estimate,
                2.0 * cfg.eps);
  }
}

}  // namespace
}  // namespace tdsim
