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
#include <vector>

#include "tdsim/fixtures.hpp"
#include "tdsim/profiles.hpp"
#include "tdsim/random.hpp"

namespace tdsim {
namespace {

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> out;
  for (int i = 0; i < points; ++i) out.push_back(lo * std::pow(hi / lo, i / (points - 1.0)));
  return out;
}

TEST(ChooseDeltaPRank, Formula) {
  EXPECT_DOUBLE_EQ(choose_delta_p_rank(4, 0.1), 0.003125);
  EXPECT_DOUBLE_EQ(choose_delta_p_rank(1, 0.8), 0.1);
  EXPECT_THROW(choose_delta_p_rank(0, 0.1), ArgumentError);
  EXPECT_THROW(choose_delta_p_rank(1, 1.0), ArgumentError);
}

TEST(ChooseDeltaPRank, PreconditionOnSeededPairs) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const int n = 1 + static_cast<int>(s % 3);
    const int r = 1 + static_cast<int>(s % static_cast<std::uint64_t>(1 << n));
    const double eps = 0.05 + 0.01 * static_cast<double>(s % 10);
    const Operator nu = 0.5 * (gen_low_rank(n, r, 2 * s).op() - gen_low_rank(n, r, 2 * s + 1).op());
    EXPECT_LE(w_small_eigen(nu, choose_delta_p_rank(r, eps)), eps / 4.0 + 1e-12) << "seed " << s;
  }
}

TEST(Selector, ExactLowRankGivesEpsOverFourR) {
  for (int r : {1, 2, 3, 5}) {
    for (double eps : {0.2, 0.1, 0.05}) {
      const ApproxLowRankProfile p = ApproxLowRankProfile::exact(r);
      const DeltaSelection s = select_delta_p(p, p, eps);
      EXPECT_DOUBLE_EQ(s.delta_rho, eps / (8.0 * r));
      EXPECT_DOUBLE_EQ(s.delta_p, eps / (4.0 * r));
    }
  }
}

TEST(Selector, DepolarizedMatchesClosedForm) {
  const Eigen::Index n = 8;
  for (int r : {1, 2, 4}) {
    for (double eps : {0.2, 0.1, 0.05}) {
      const double lambda = eps / 100.0;
      const ApproxLowRankProfile p = ApproxLowRankProfile::depolarized(r, n, lambda);
      const double d1 = (eps - 8.0 * lambda) / (8.0 * r) + lambda / n;
      const double dp = choose_delta_p_profile(p, p, eps);
      EXPECT_NEAR(dp, 2.0 * std::min(d1, eps / (8.0 * r)), 1e-15);
      // Theta(eps / r): the ratio is pinned between 0.2 and 0.25.
      EXPECT_GT(dp * r / eps, 0.2);
      EXPECT_LE(dp * r / eps, 0.25);
    }
  }
}

TEST(Selector, GibbsMatchesClosedForm) {
  const Eigen::Index n = 16;
  const int k = 2;
  const double gap = 10.0, eps = 0.1;
  const ApproxLowRankProfile p = ApproxLowRankProfile::gibbs(k, n, gap);
  const double t = 1.0 / (std::exp(gap) * k + 1.0);
  const double d1 = (eps / 8.0 - (n - k) * t) / k;
  EXPECT_NEAR(p.max_delta_for_mass(eps / 8.0), d1, 1e-15);
  EXPECT_EQ(p.R(d1), k);
  EXPECT_NEAR(choose_delta_p_profile(p, p, eps), 2.0 * std::min(d1, eps / (8.0 * k)), 1e-15);
}

TEST(Selector, PowerLawIsQuadraticInEps) {
  const Eigen::Index n = 1 << 10;
  const double c = 0.7;
  std::vector<double> ratios;
  for (double eps : {0.2, 0.1, 0.05, 0.025, 0.0125}) {
    const ApproxLowRankProfile p = ApproxLowRankProfile::power_law(c, n);
    const double a = eps / 8.0 + c / (n - 1.0);
    const double d1 = c * a * a / ((a + c) * (a + c));
    EXPECT_NEAR(p.max_delta_for_mass(eps / 8.0), d1, 1e-15);
    EXPECT_NEAR(p.W(d1), eps / 8.0, 1e-12);
    const DeltaSelection s = select_delta_p(p, p, eps);
    EXPECT_DOUBLE_EQ(s.delta_p, 2.0 * std::min(d1, eps / (8.0 * p.R(d1))));
    ratios.push_back(s.delta_p / (eps * eps));
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  EXPECT_LT(*hi / *lo, 2.0);
}

TEST(Selector, InfeasibleProfile) {
  const ApproxLowRankProfile floor =
      ApproxLowRankProfile::user({{0.0, 4, 0.05}, {0.1, 2, 0.2}});
  EXPECT_THROW(choose_delta_p_profile(floor, floor, 0.1), InfeasibleError);
  EXPECT_NO_THROW(choose_delta_p_profile(floor, floor, 0.5));
}

TEST(Profiles, UserProfileBisection) {
  const ApproxLowRankProfile p = ApproxLowRankProfile::user({{0.0, 3, 0.0}, {0.1, 2, 0.1}, {0.3, 1, 0.4}});
  EXPECT_EQ(p.R(0.05), 3);
  EXPECT_EQ(p.R(0.1), 2);
  EXPECT_DOUBLE_EQ(p.W(0.35), 0.4);
  EXPECT_NEAR(p.max_delta_for_mass(0.2), 0.3, 1e-12);
  EXPECT_LT(p.max_delta_for_mass(0.2), 0.3);
  EXPECT_THROW(ApproxLowRankProfile::user({{0.1, 1, 0.0}}), ArgumentError);
}

TEST(Profiles, SpectrumProfileIsTight) {
  const DensityOperator rho = gen_low_rank(3, 5, 7);
  const ApproxLowRankProfile p = ApproxLowRankProfile::from_spectrum(rho.op());
  for (double d : log_grid(1e-4, 0.9, 40)) {
    EXPECT_EQ(p.R(d), rank_delta(rho.op(), d));
    EXPECT_NEAR(p.W(d), w_small_eigen(rho.op(), d), 1e-12);
  }
}

TEST(Profiles, DominateFixtureSpectra) {
  const std::vector<double> grid = log_grid(1e-4, 0.5, 20);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const DensityOperator base = gen_low_rank(3, 1 + static_cast<int>(s % 4), s);
    const Fixture dep = gen_depolarized(base, 0.01 * static_cast<double>(s % 5));
    EXPECT_LE(dep.profile.domination_violation(dep.state.op(), grid), 1e-12) << "depolarized " << s;
    const Fixture gib = gen_gibbs(gapped_hamiltonian(3, 2, 5.0, s), 2, 5.0);
    EXPECT_LE(gib.profile.domination_violation(gib.state.op(), grid), 1e-12) << "gibbs " << s;
    for (double c : {0.64, 0.8, 1.5}) {
      const Fixture pl = gen_power_law(4, c, s);
      EXPECT_LE(pl.profile.domination_violation(pl.state.op(), grid), 1e-12) << "power-law " << c;
    }
    EXPECT_LE(ApproxLowRankProfile::exact(numerical_rank(base.op())).domination_violation(base.op(), grid),
              1e-12);
  }
}

TEST(ApproxLowRankDifference, EqualStatesAreZero) {
  const DensityOperator rho = gen_low_rank(2, 3, 1);
  const Operator nu = 0.5 * (rho.op() - rho.op());
  for (double d : {0.0, 0.01, 0.3}) {
    EXPECT_EQ(rank_delta(nu, d), 0);
    EXPECT_EQ(w_small_eigen(nu, d), 0.0);
  }
}

TEST(ApproxLowRankDifference, ComposedBoundsOnSeededPairs) {
  Rng rng(40);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const int n = 1 + static_cast<int>(s % 3);
    const Fixture a = gen_depolarized(gen_low_rank(n, 1 + static_cast<int>(s % 2), 3 * s), 0.05 * rng.uniform());
    const Fixture b = gen_depolarized(gen_low_rank(n, 1 + static_cast<int>(s % 3 == 0), 3 * s + 1),
                                      0.05 * rng.uniform());
    const double delta = 0.002 + 0.2 * rng.uniform();
    // Measured (r, delta, eps) parameters of each state.
    const int r1 = rank_delta(a.state.op(), delta), r2 = rank_delta(b.state.op(), delta);
    const double e1 = w_small_eigen(a.state.op(), delta), e2 = w_small_eigen(b.state.op(), delta);
    const LowRankBounds bound = approx_low_rank_difference(r1, e1, r2, e2, delta);
    const Operator nu = 0.5 * (a.state.op() - b.state.op());
    EXPECT_DOUBLE_EQ(bound.delta, delta / 2.0);
    EXPECT_LE(rank_delta(nu, bound.delta), bound.rank) << "seed " << s;
    EXPECT_LE(w_small_eigen(nu, bound.delta), bound.mass + 1e-12) << "seed " << s;
    // The profile route gives looser, still valid, bounds.
    const LowRankBounds via = approx_low_rank_difference(a.profile, b.profile, delta);
    EXPECT_LE(w_small_eigen(nu, via.delta), via.mass + 1e-12);
  }
}

TEST(OracleDelta, RespectsMass) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Operator nu = 0.5 * (gen_low_rank(2, 2, s).op() - gen_low_rank(2, 3, s + 100).op());
    const double d = oracle_delta_for_mass(nu, 0.02);
    EXPECT_LE(w_small_eigen(nu, d), 0.02);
    EXPECT_GT(d, 0.0);
  }
  EXPECT_EQ(oracle_delta_for_mass(Operator::Zero(2, 2), 0.01), 1.0);
}

}  // namespace
}  // namespace tdsim
