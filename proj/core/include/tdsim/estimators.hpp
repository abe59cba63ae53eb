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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tdsim/block_encoding.hpp"
#include "tdsim/circuit.hpp"
#include "tdsim/ledger.hpp"
#include "tdsim/random.hpp"

namespace tdsim {

enum class BackendMode { kIdeal, kSampling, kQae };

BackendMode parse_backend(std::string_view name);
std::string to_string(BackendMode mode);

inline constexpr int kDefaultRepetitions = 9;
/// Per-run failure probability targeted by the Hoeffding shot count.
inline constexpr double kShotFailure = 0.25;

struct EstimationBackend {
  BackendMode mode = BackendMode::kQae;
  int repetitions = kDefaultRepetitions;  // odd; the median is reported
  Rng rng{0};
};

enum class Part { kReal, kImag };

/// Clamp a probability into [0, 1], remembering the largest correction.
double clamp_probability(double p);
double max_clamp_violation();
void reset_clamp_violation();

/// Outcome-0 probability (1 + Re tr(A rho)) / 2 of the Hadamard test on the
/// block-encoded A (or Im with S^dagger on the control). Simulated as a
/// circuit on each eigenvector of rho. Charges one query to b.
double hadamard_test_prob(const BlockEncoding& b, const DensityOperator& rho, Part part,
                          QueryLedger* ledger = nullptr);

/// Empirical outcome-0 frequency over `shots` runs. Charges `shots`
/// samples of `state_label` and `shots` queries to b.
double hadamard_test_sample(const BlockEncoding& b, const DensityOperator& rho, Part part,
                            std::uint64_t shots, Rng& rng, QueryLedger* ledger = nullptr,
                            const std::string& state_label = "rho");

/// Hoeffding shot count for estimating 2 p0 - 1 within eps with failure
/// probability at most beta: ceil(2 ln(2 / beta) / eps^2).
std::uint64_t hadamard_shots(double eps, double beta = kShotFailure);

/// Smallest power of two M >= 2 whose worst-case amplitude estimation error
/// pi / M + pi^2 / M^2 is at most eps / 2, i.e. error eps on 2 p - 1.
int qae_grid_for_error(double eps);

/// Probability of grid outcome y when estimating amplitude p on an M-point
/// phase estimation grid.
double qae_outcome_probability(int y, int grid, double p);

struct AmplitudeEstimate {
  double estimate = 0.0;      // median over runs
  double probability = 0.0;   // exact p of the simulated circuit
  int grid = 0;
  std::vector<double> runs;
  std::uint64_t circuit_calls = 0;
};

/// Estimate p for a known p. ideal returns p; qae samples the phase
/// estimation outcome distribution once per run and maps y -> sin^2(pi y / M).
AmplitudeEstimate amplitude_estimate_probability(double p, int grid, EstimationBackend& backend);

/// Amplitude of outcome 0 on `flag` after running `circuit` from |0...0>.
/// Charges `grid` calls of the circuit per run (per_call each).
AmplitudeEstimate amplitude_estimate(const Circuit& circuit, int flag, int grid,
                                     EstimationBackend& backend, QueryLedger* ledger = nullptr,
                                     const QueryCost& per_call = {});
AmplitudeEstimate amplitude_estimate(const Operator& unitary, int flag, int grid,
                                     EstimationBackend& backend, QueryLedger* ledger = nullptr,
                                     const QueryCost& per_call = {});

/// Hadamard test circuit on [control, ancillas of u, system, purifier]
/// preparing rho with `oracle` and applying controlled u.
Circuit hadamard_test_circuit(const BlockEncoding& u, const PurifiedOracle& oracle,
                              Part part = Part::kReal);

/// Estimate of Re tr(B rho) within eps_h, where B is the top-left block of
/// u_sgn (not rescaled by alpha) and rho is prepared by `oracle`.
struct TraceTermEstimate {
  double value = 0.0;
  double exact = 0.0;
  int grid = 0;
  std::uint64_t shots = 0;
  std::vector<double> runs;
};

TraceTermEstimate estimate_trace_term(const BlockEncoding& u_sgn, const PurifiedOracle& oracle,
                                      double eps_h, EstimationBackend& backend,
                                      QueryLedger& ledger);

double median(std::vector<double> values);

}  // namespace tdsim
