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

#include "tdsim/channels.hpp"
#include "tdsim/errors.hpp"
#include "tdsim/random.hpp"

namespace tdsim {
namespace {

double max_abs(const Operator& a) { return a.cwiseAbs().maxCoeff(); }

// Choi matrix straight from the definition (E x I)(|Omega><Omega|).
Operator choi_oracle(const ChannelModel& e) {
  const Eigen::Index d = e.dim();
  Operator c = Operator::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      Operator eij = Operator::Zero(d, d);
      eij(i, j) = 1.0;
      Operator pij = Operator::Zero(d, d);
      pij(i, j) = 1.0;
      c += tensor(e.apply(eij), pij);
    }
  return c / static_cast<double>(d);
}

TEST(SamplingChannel, ZeroDeltaIsUnitaryConjugation) {
  Rng rng(61);
  const DensityOperator rho = random_density(1, 2, rng);
  const ChannelModel e = sampling_to_block_encoding(rho, 0.0);
  EXPECT_EQ(e.copies_per_use, 0U);
  const Operator x = random_density(4, 3, rng).op();
  EXPECT_LT(max_abs(e.apply(x) - e.target * x * e.target.adjoint()), 1e-12);
  EXPECT_LT(choi_proxy_distance(e), 1e-12);
}

TEST(SamplingChannel, TargetEncodesScaledState) {
  Rng rng(62);
  for (int t = 0; t < 10; ++t) {
    const DensityOperator rho = random_density(1 + t % 2, 1 + t % 2, rng);
    const ChannelModel e = sampling_to_block_encoding(rho, 0.1);
    const BlockEncoding b = e.target_encoding();
    EXPECT_TRUE(is_unitary(b.unitary));
    EXPECT_EQ(b.ancillas, 3);
    EXPECT_NEAR(b.alpha, 4.0 / std::numbers::pi, 1e-15);
    EXPECT_LT(verify_block_encoding(b, rho.op()), 1e-9);
  }
}

TEST(SamplingChannel, ChoiProxyAtDeltaTenth) {
  Rng rng(63);
  const DensityOperator rho = random_density(1, 2, rng);
  const double delta = 0.1;
  const ChannelModel e = sampling_to_block_encoding(rho, delta);
  const double d2 = static_cast<double>(e.dim() * e.dim());
  // Choi(E) - Choi(U) = (delta / 2)(I / d^2 - |U>><<U|), whose half trace
  // norm is (delta / 2)(1 - 1 / d^2).
  EXPECT_NEAR(choi_proxy_distance(e), 0.5 * delta * (1.0 - 1.0 / d2), 1e-10);
  EXPECT_LE(choi_proxy_distance(e), delta);
}

TEST(SamplingChannel, CalibrationAcrossDeltas) {
  Rng rng(64);
  for (int n : {1, 2}) {
    const DensityOperator rho = random_density(n, 2, rng);
    for (double delta : {0.02, 0.05, 0.1, 0.2}) {
      const ChannelModel e = sampling_to_block_encoding(rho, delta);
      EXPECT_LE(choi_proxy_distance(e), delta) << n << " " << delta;
      if (n == 1) EXPECT_LT(kraus_completeness_error(e.kraus()), 1e-9);
    }
  }
}

TEST(SamplingChannel, SuperoperatorAndChoiMatchDefinition) {
  Rng rng(65);
  const ChannelModel e = sampling_to_block_encoding(random_density(1, 2, rng), 0.2);
  EXPECT_LT(max_abs(e.choi() - choi_oracle(e)), 1e-12);
  EXPECT_LT(max_abs(superoperator_from_kraus(e.kraus()) - e.superoperator()), 1e-12);
  EXPECT_LT(max_abs(superoperator_from_kraus(kraus_from_choi(e.choi())) - e.superoperator()), 1e-10);
}

TEST(SamplingChannel, SampleAccounting) {
  for (double delta : {0.5, 0.1, 0.01}) {
    const double l = std::log(1.0 / delta);
    EXPECT_EQ(samples_per_use(delta), static_cast<std::uint64_t>(std::ceil(l * l / delta)));
  }
  EXPECT_THROW(samples_per_use(1.0), ArgumentError);
  EXPECT_THROW(sampling_to_block_encoding(DensityOperator::maximally_mixed(1), -0.1), ArgumentError);
  EXPECT_THROW(sampling_to_block_encoding(DensityOperator::maximally_mixed(1), 1.0), ArgumentError);
  const DensityOperator sub = DensityOperator::from_operator(0.25 * identity(2), false);
  EXPECT_THROW(sampling_to_block_encoding(sub, 0.1), ArgumentError);
}

TEST(DmeStep, TrivialCases) {
  Rng rng(66);
  const DensityOperator sigma = random_density(1, 2, rng);
  EXPECT_LT(max_abs(dme_step(sigma, sigma, 0.3).op() - sigma.op()), 1e-12);
  const DensityOperator rho = random_density(1, 2, rng);
  EXPECT_LT(max_abs(dme_step(rho, sigma, 0.0).op() - sigma.op()), 1e-14);
}

TEST(DmeStep, CommutatorExpansion) {
  Rng rng(67);
  for (int t = 0; t < 10; ++t) {
    const DensityOperator rho = random_density(2, 1 + t % 4, rng);
    const DensityOperator sigma = random_density(2, 2, rng);
    const double dt = 1e-3;
    const Operator first = sigma.op() - Complex(0.0, dt) * (rho.op() * sigma.op() - sigma.op() * rho.op());
    // Second-order remainder: dt^2 (rho - sigma) exactly at order two.
    const Operator second = first + dt * dt * (rho.op() - sigma.op());
    const Operator out = dme_step(rho, sigma, dt).op();
    EXPECT_LE(operator_norm(out - first), 2.0 * dt * dt);
    EXPECT_LE(operator_norm(out - second), 2.0 * dt * dt * dt);
  }
}

TEST(DmeStep, PreservesTraceAndPositivity) {
  Rng rng(68);
  for (int t = 0; t < 20; ++t) {
    const DensityOperator rho = random_density(1 + t % 2, 1 + t % 2, rng);
    const DensityOperator sigma = random_density(1 + t % 2, 2, rng);
    const DensityOperator out = dme_step(rho, sigma, rng.uniform() * 2.0);
    EXPECT_NEAR(out.trace(), 1.0, 1e-12);
    EXPECT_TRUE(is_psd(out.op()));
  }
}

TEST(DmeMode, MeetsBudgetAndIsComplete) {
  Rng rng(69);
  const DensityOperator rho = random_density(1, 2, rng);
  const ChannelModel e = sampling_to_block_encoding(rho, 0.1, ChannelMode::kDme);
  EXPECT_LE(dme_error_bound(1.0, e.steps), 0.1);
  EXPECT_EQ(e.copies_per_use, e.steps);
  EXPECT_LE(choi_proxy_distance(e), e.delta_budget);
  EXPECT_LT(kraus_completeness_error(e.kraus()), 1e-9);
  // apply() iterates the closed-form step; compare with the partial-swap primitive.
  const DensityOperator sigma = random_density(1, 1, rng);
  DensityOperator x = sigma;
  for (std::uint64_t k = 0; k < e.steps; ++k) x = dme_step(rho, x, 1.0 / static_cast<double>(e.steps));
  EXPECT_LT(max_abs(e.apply(sigma.op()) - x.op()), 1e-10);
  EXPECT_LT(max_abs(e.choi() - choi_oracle(e)), 1e-10);
}

TEST(Inverse, NoisyOracleZeroDeltaComposesToIdentity) {
  Rng rng(70);
  const ChannelModel e = sampling_to_block_encoding(random_density(1, 2, rng), 0.0);
  const ChannelModel inv = invert_channel(e);
  EXPECT_LT(max_abs(inv.target - e.target.adjoint()), 1e-15);
  const Operator composite = inv.superoperator() * e.superoperator();
  EXPECT_LT(max_abs(choi_from_superoperator(composite) - choi_from_superoperator(identity(composite.rows()))), 1e-9);
}

TEST(Inverse, NoisyOracleBudget) {
  Rng rng(71);
  const ChannelModel e = sampling_to_block_encoding(random_density(1, 2, rng), 0.1);
  const ChannelModel inv = invert_channel(e);
  EXPECT_EQ(inv.delta_budget, e.delta_budget);
  EXPECT_LE(choi_proxy_distance(inv), 0.1);
  const Operator x = random_density(4, 2, rng).op();
  const double d = static_cast<double>(e.dim());
  EXPECT_LT(max_abs(inv.apply(x) - (0.95 * e.target.adjoint() * x * e.target + 0.05 * identity(e.dim()) / d)), 1e-12);
}

TEST(Inverse, DoubleInverseKeepsMetadata) {
  Rng rng(72);
  for (ChannelMode mode : {ChannelMode::kNoisyOracle, ChannelMode::kDme}) {
    const ChannelModel e = sampling_to_block_encoding(random_density(1, 2, rng), 0.1, mode);
    const ChannelModel back = invert_channel(invert_channel(e));
    EXPECT_LT(max_abs(back.target - e.target), 1e-15);
    EXPECT_EQ(back.delta_budget, e.delta_budget);
    EXPECT_LT(max_abs(back.choi() - e.choi()), 1e-12);
  }
}

TEST(Inverse, DmeReversesEvolution) {
  Rng rng(73);
  const ChannelModel e = sampling_to_block_encoding(random_density(1, 2, rng), 0.05, ChannelMode::kDme);
  const ChannelModel inv = invert_channel(e);
  EXPECT_LE(choi_proxy_distance(inv), inv.delta_budget);
}

TEST(CircuitForm, ChannelMatchesMixture) {
  Rng rng(74);
  const Operator u = haar_unitary(2, rng);
  const double delta = 0.1;
  const ChannelModel e = noisy_unitary_circuit(u, delta);
  EXPECT_TRUE(is_unitary(*e.circuit_form));
  EXPECT_LT(kraus_completeness_error(e.kraus()), 1e-9);
  const Operator x = random_density(1, 2, rng).op();
  EXPECT_LT(max_abs(e.apply(x) - ((1 - delta / 2) * u * x * u.adjoint() + (delta / 2) * identity(2) / 2.0)), 1e-12);
  EXPECT_LE(choi_proxy_distance(e), delta);
  EXPECT_LT(max_abs(e.choi() - choi_oracle(e)), 1e-12);
}

TEST(CircuitForm, DaggerGivesInverse) {
  Rng rng(75);
  const Operator u = haar_unitary(4, rng);
  const ChannelModel exact = noisy_unitary_circuit(u, 0.0);
  const ChannelModel inv = invert_channel(exact);
  const Operator composite = inv.superoperator() * exact.superoperator();
  EXPECT_LT(max_abs(composite - identity(composite.rows())), 1e-9);

  const double delta = 0.1;
  const ChannelModel noisy_inv = invert_channel(noisy_unitary_circuit(u, delta));
  EXPECT_LT(max_abs(noisy_inv.target - u.adjoint()), 1e-15);
  EXPECT_LE(choi_proxy_distance(noisy_inv), delta);
  // W^dagger resets the target to |0> on the noise branch.
  const Operator x = random_density(2, 3, rng).op();
  Operator reset = Operator::Zero(4, 4);
  reset(0, 0) = 1.0;
  EXPECT_LT(max_abs(noisy_inv.apply(x) - ((1 - delta / 2) * u.adjoint() * x * u + (delta / 2) * reset)), 1e-12);
}

TEST(Composition, BudgetsAndChoiProxy) {
  Rng rng(76);
  const ChannelModel e = sampling_to_block_encoding(random_density(1, 1, rng), 0.05);
  QueryLedger ledger;
  const ChannelComposition one = apply_channel_as_block_encoding(e, 1, &ledger);
  EXPECT_DOUBLE_EQ(one.pipeline.budget, 0.05);
  const ChannelComposition two = apply_channel_as_block_encoding(e, 2, &ledger);
  EXPECT_DOUBLE_EQ(two.pipeline.budget, 0.1);
  EXPECT_LE(two.choi_proxy, two.pipeline.budget);
  EXPECT_EQ(ledger.count("E"), 3U);
  EXPECT_EQ(ledger.count("samples:rho"), 3U * samples_per_use(0.05));
  EXPECT_FALSE(two.pipeline.overflow);

  ChannelPipeline big;
  big.use(e, 25);
  EXPECT_TRUE(big.overflow);
}

TEST(Composition, LcuThenQsvtBookkeeping) {
  // Two channels under an LCU give 2 delta; q uses of the LCU give 2 q delta.
  Rng rng(77);
  const ChannelModel er = sampling_to_block_encoding(random_density(1, 1, rng), 0.01, ChannelMode::kNoisyOracle, "E_rho");
  const ChannelModel es = sampling_to_block_encoding(random_density(1, 1, rng), 0.01, ChannelMode::kNoisyOracle, "E_sigma");
  ChannelPipeline lcu;
  lcu.use(er);
  lcu.use(es);
  EXPECT_DOUBLE_EQ(lcu.budget, 0.02);
  ChannelPipeline svt;
  svt.repeat(lcu, 7);
  EXPECT_NEAR(svt.budget, 2 * 7 * 0.01, 1e-15);
  EXPECT_EQ(svt.uses, 14U);
  EXPECT_EQ(svt.samples, 14U * samples_per_use(0.01));
}

TEST(Pauli, BasisIsOrthogonal) {
  const std::vector<Operator> ps = pauli_basis(2);
  ASSERT_EQ(ps.size(), 16U);
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = 0; j < ps.size(); ++j)
      EXPECT_NEAR(std::abs((ps[i].adjoint() * ps[j]).trace()), i == j ? 4.0 : 0.0, 1e-14);
}

}  // namespace
}  // namespace tdsim
