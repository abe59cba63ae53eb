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
#include <optional>
#include <string>
#include <vector>

#include "tdsim/block_encoding.hpp"
#include "tdsim/channels.hpp"
#include "tdsim/estimators.hpp"
#include "tdsim/ledger.hpp"
#include "tdsim/profiles.hpp"

namespace tdsim {

enum class AccessMode { kPurified, kSamples };

std::string to_string(AccessMode mode);
AccessMode parse_access_mode(const std::string& name);

struct EstimationConfig {
  double eps = 0.1;
  std::optional<double> delta_p;
  std::optional<int> rank_bound;
  std::optional<ApproxLowRankProfile> profile_rho;
  std::optional<ApproxLowRankProfile> profile_sigma;
  std::uint64_t seed = 0;
  /// Defaults: qae for purified access, sampling for sample access.
  std::optional<BackendMode> backend;
  int repetitions = kDefaultRepetitions;
  ChannelMode channel_mode = ChannelMode::kNoisyOracle;
  /// Allow deriving delta_p from the exact spectrum when nothing else is
  /// given. Such runs are flagged in the report.
  bool oracle_delta_p = true;
};

/// Where delta_p came from.
enum class DeltaSource { kConfig, kRank, kProfile, kOracle };
std::string to_string(DeltaSource source);

struct EstimateParameters {
  double eps = 0.0;
  double eps_p = 0.0;
  double eps_h = 0.0;
  double delta = 0.0;  // channel budget per use, sample access only
  double delta_p = 0.0;
  DeltaSource delta_p_source = DeltaSource::kConfig;
  int degree = 0;
  int grid = 0;
  std::uint64_t shots = 0;
  int repetitions = 0;
  std::uint64_t channel_uses = 0;  // q = gamma * degree
};

struct EstimateReport {
  AccessMode mode = AccessMode::kPurified;
  BackendMode backend = BackendMode::kQae;
  double estimate = 0.0;
  double exact_value = 0.0;
  double abs_error = 0.0;
  EstimateParameters params;
  QueryLedger ledger;
  /// Per-repetition estimates; `estimate` combines the per-term medians.
  std::vector<double> runs;
  /// w((rho - sigma) / 2, delta_p) from the eigenvalue oracle.
  double precondition_mass = 0.0;
  bool precondition_ok = true;
  double channel_budget = 0.0;
  bool budget_overflow = false;
  double noise_mixing = 0.0;
  std::vector<std::string> warnings;
};

/// delta_p and its provenance for a pair, following the config.
std::pair<double, DeltaSource> resolve_delta_p(const EstimationConfig& cfg, const Operator& nu,
                                               double mass_target);

/// Trace distance from purified access: encodings of rho and sigma, their
/// half difference, the sign transform at (delta_p, eps / 8) and the two
/// trace terms at eps / 4. Returns (x_rho - x_sigma) / 2.
EstimateReport estimate_purified(const PurifiedOracle& o_rho, const PurifiedOracle& o_sigma,
                                 const EstimationConfig& cfg);

/// Trace distance from sample access: channel encodings at the budget
/// pi eps delta_p / (48 gamma eta ln(1 / eps_p)), the sign transform at
/// (delta_p, eps / 12) and Hadamard-test sampling at pi eps / 24 on fresh
/// copies. Returns 2 (x_rho - x_sigma) / pi.
EstimateReport estimate_samples(const DensityOperator& rho, const DensityOperator& sigma,
                                const EstimationConfig& cfg);

struct SwapTestReport {
  double estimate = 0.0;
  double exact_value = 0.0;
  double abs_error = 0.0;
  double overlap = 0.0;        // estimate of |<psi|phi>|^2
  double overlap_exact = 0.0;
  double delta = 0.0;          // eps^2 / 4
  int grid = 0;
  std::uint64_t shots = 0;
  std::vector<double> runs;
  QueryLedger ledger;
};

/// sqrt(1 - x) with x clamped to [0, 1].
double distance_from_overlap(double x);

/// Pure-state trace distance from a SWAP test whose overlap estimate has
/// error delta = eps^2 / 4. Throws ArgumentError on mixed input.
SwapTestReport swap_test_pure(const PurifiedOracle& o_psi, const PurifiedOracle& o_phi, double eps,
                              BackendMode backend = BackendMode::kQae,
                              int repetitions = kDefaultRepetitions, std::uint64_t seed = 0);

}  // namespace tdsim
