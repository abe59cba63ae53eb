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

#include "tdsim/random.hpp"

namespace tdsim {
namespace {

TEST(Rng, StreamsAreReproducibleAndIndependentOfConsumption) {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) a.next_u64();
  Rng sa = a.stream("fixtures"), sb = b.stream("fixtures");
  for (int i = 0; i < 5; ++i) EXPECT_EQ(sa.next_u64(), sb.next_u64());
  EXPECT_NE(a.stream("x").next_u64(), a.stream("y").next_u64());
  EXPECT_NE(a.stream(std::uint64_t{0}).next_u64(), a.stream(std::uint64_t{1}).next_u64());
}

TEST(Rng, KnownHashValues) {
  // Reference values of the public FNV-1a and splitmix64 definitions.
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(Rng, MomentsOfSamplers) {
  Rng rng(1);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0, se = 0;
  for (int i = 0; i < n; ++i) {
    su += rng.uniform();
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
    se += rng.exponential();
  }
  EXPECT_NEAR(su / n, 0.5, 0.005);
  EXPECT_NEAR(sn / n, 0.0, 0.01);
  EXPECT_NEAR(sn2 / n, 1.0, 0.02);
  EXPECT_NEAR(se / n, 1.0, 0.01);
  EXPECT_EQ(rng.binomial(10, 0.0), 0U);
  EXPECT_EQ(rng.binomial(10, 1.0), 10U);
}

TEST(Haar, UnitaryAndUnbiasedTrace) {
  Rng rng(2);
  Complex mean = 0;
  double second = 0;
  const int trials = 2000;
  for (int t = 0; t < trials; ++t) {
    const Operator u = haar_unitary(4, rng);
    ASSERT_TRUE(is_unitary(u));
    const Complex tr = u.trace();
    mean += tr;
    second += std::norm(tr);
  }
  // E[tr U] = 0 and E|tr U|^2 = 1 for Haar measure.
  EXPECT_LT(std::abs(mean / static_cast<double>(trials)), 0.08);
  EXPECT_NEAR(second / trials, 1.0, 0.1);
}

TEST(RandomDensity, RankAndTrace) {
  Rng rng(3);
  for (int r = 1; r <= 4; ++r) {
    const DensityOperator rho = random_density(2, r, rng);
    EXPECT_EQ(numerical_rank(rho.op()), r);
    EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
  }
  EXPECT_THROW(random_density(1, 3, rng), ArgumentError);
}

}  // namespace
}  // namespace tdsim
