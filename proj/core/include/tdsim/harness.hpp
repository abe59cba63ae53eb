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
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tdsim/algorithms.hpp"
#include "tdsim/fixtures.hpp"
#include "tdsim/json_io.hpp"

namespace tdsim {

enum class SweepAxis { kEps, kRank, kDelta };

std::string to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& name);

/// Scaling study: one estimate per (grid value, trial). Values not on the
/// swept axis come from the fixed fields.
struct SweepPlan {
  SweepAxis axis = SweepAxis::kEps;
  std::vector<double> grid;
  int trials = 1;
  FixtureSpec fixture;  // family, qubits, rank and family parameters
  AccessMode mode = AccessMode::kPurified;
  std::optional<BackendMode> backend;
  std::uint64_t seed_base = 0;
  double eps = 0.1;
  int repetitions = kDefaultRepetitions;
  int workers = 0;  // 0 picks the hardware concurrency

  void validate() const;
};

Json to_json(const SweepPlan& plan);
SweepPlan sweep_plan_from_json(const Json& j);

struct SweepRow {
  int point = 0;
  double value = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string mode;
  double eps = 0.0;
  double delta_p = 0.0;
  double estimate = 0.0;
  double exact = 0.0;
  double abs_error = 0.0;
  std::uint64_t queries = 0;
  std::uint64_t samples = 0;

  bool success() const { return abs_error <= eps; }
};

struct SweepPointSummary {
  double value = 0.0;
  int trials = 0;
  double mean_queries = 0.0;
  double mean_samples = 0.0;
  double success_frequency = 0.0;
};

struct SweepReport {
  SweepPlan plan;
  std::vector<SweepRow> rows;  // plan order
  std::vector<SweepPointSummary> points;
  /// Least-squares slope of ln(mean cost) against ln(x) where x is 1/eps,
  /// r or 1/delta_p for the eps, rank and delta axes.
  double query_slope = 0.0;
  double sample_slope = 0.0;
  bool partial = false;
  std::string abort_reason;
};

/// Slope of the least-squares line through (ln x, ln y).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Seed of trial `trial` at grid point `point`. The states use 2 s and
/// 2 s + 1.
std::uint64_t trial_seed(const SweepPlan& plan, int point, int trial);

/// Runs the plan. With a checkpoint directory, every finished grid point is
/// written to checkpoint_<i>.json and reloaded on the next run with the
/// same plan. A trial hitting the qubit cap aborts with partial results.
SweepReport run_sweep(const SweepPlan& plan, const std::string& checkpoint_dir = {});

/// "point,value,trial," followed by the estimate CSV columns.
void write_sweep_csv(std::ostream& os, const SweepReport& report);
Json summary_json(const SweepReport& report);

struct AcceptanceOptions {
  /// Tags or criterion numbers to run; empty runs everything.
  std::vector<std::string> only;
  /// Negative control: perturb the sign polynomial before certification.
  bool corrupt_sign_poly = false;
  int workers = 0;
};

struct CriterionResult {
  int id = 0;
  std::string tag;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Tags in criterion order: identity, polynomial, purified, purified,
/// samples, channels, dme, low-rank, swap, qae.
const std::vector<std::string>& acceptance_tags();

std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options, const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result(const CriterionResult& r);

}  // namespace tdsim
