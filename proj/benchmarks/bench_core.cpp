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


#include <benchmark/benchmark.h>

#include "tdsim/algorithms.hpp"
#include "tdsim/block_encoding.hpp"
#include "tdsim/poly_svt.hpp"
#include "tdsim/random.hpp"

namespace {

// Degree grows like ln(1/eps) / delta; arg = 1/delta. sign_poly caches per
// (delta, eps), so each iteration nudges delta to force a fresh build.
void BM_SignPoly(benchmark::State& state) {
  const double delta = 1.0 / static_cast<double>(state.range(0));
  double nudge = 0.0;
  int degree = 0;
  for (auto _ : state) {
    nudge += 1e-9;
    degree = tdsim::sign_poly(delta * (1.0 + nudge), 0.01).degree;
    benchmark::DoNotOptimize(degree);
  }
  state.SetLabel("degree " + std::to_string(degree));
}
BENCHMARK(BM_SignPoly)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMillisecond);

void BM_ClenshawEval(benchmark::State& state) {
  const tdsim::OddPolynomial p = tdsim::sign_poly(1.0 / static_cast<double>(state.range(0)), 0.01);
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tdsim::eval_poly(p, x));
    x = -x;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ClenshawEval)->RangeMultiplier(4)->Range(16, 1024);

void BM_DensityToBlockEncoding(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  tdsim::Rng rng(1);
  const tdsim::PurifiedOracle o = tdsim::purify(tdsim::random_density(n, 2, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tdsim::density_to_block_encoding(o));
  }
}
BENCHMARK(BM_DensityToBlockEncoding)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

void BM_EstimatePurified(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  tdsim::Rng rng(2);
  const tdsim::PurifiedOracle a = tdsim::purify(tdsim::random_density(n, 2, rng), "O_rho");
  const tdsim::PurifiedOracle b = tdsim::purify(tdsim::random_density(n, 2, rng), "O_sigma");
  tdsim::EstimationConfig cfg;
  cfg.eps = 0.1;
  cfg.rank_bound = 2;
  tdsim::estimate_purified(a, b, cfg);  // warm the polynomial cache
  for (auto _ : state) {
    benchmark::DoNotOptimize(tdsim::estimate_purified(a, b, cfg));
    ++cfg.seed;
  }
}
// Four qubits would need 13 qubits in total, above the default cap.
BENCHMARK(BM_EstimatePurified)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
