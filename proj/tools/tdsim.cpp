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


// tdsim: fixture generation, trace-distance estimation, sweeps and the
// acceptance suite from the command line.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tdsim/algorithms.hpp"
#include "tdsim/fixtures.hpp"
#include "tdsim/harness.hpp"
#include "tdsim/json_io.hpp"

namespace {

using tdsim::Json;

// A state file holds either a fixture ({"state": ...}) or a bare operator.
tdsim::DensityOperator load_state(const std::string& path) {
  const Json j = tdsim::read_json_file(path);
  return tdsim::density_from_json(j.contains("state") ? j.at("state") : j);
}

void append_csv(const std::string& path, const std::string& row) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw tdsim::ArgumentError("cannot write '" + path + "'");
  if (fresh) out << tdsim::kCsvHeader << '\n';
  out << row << '\n';
}

void emit(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    tdsim::write_json_file(out, j);
  }
}

struct GenArgs {
  std::string family = "low-rank";
  tdsim::FixtureSpec spec;
  std::string out;
};

struct EstimateArgs {
  std::string mode = "purified";
  std::string state_a, state_b;
  double eps = 0.1;
  std::optional<int> rank_bound;
  std::optional<double> delta_p;
  std::string profile;
  std::uint64_t seed = 0;
  std::string backend;
  int repetitions = tdsim::kDefaultRepetitions;
  std::string channel = "noisy-oracle";
  std::string csv;
  std::string out;
};

int run_gen(const GenArgs& a) {
  tdsim::FixtureSpec spec = a.spec;
  spec.family = tdsim::parse_fixture_family(a.family);
  emit(tdsim::to_json(tdsim::generate_fixture(spec)), a.out);
  return 0;
}

int run_estimate(const EstimateArgs& a) {
  const tdsim::DensityOperator rho = load_state(a.state_a);
  const tdsim::DensityOperator sigma = load_state(a.state_b);
  tdsim::EstimationConfig cfg;
  cfg.eps = a.eps;
  cfg.seed = a.seed;
  cfg.rank_bound = a.rank_bound;
  cfg.delta_p = a.delta_p;
  cfg.repetitions = a.repetitions;
  cfg.channel_mode = tdsim::parse_channel_mode(a.channel);
  if (!a.backend.empty()) cfg.backend = tdsim::parse_backend(a.backend);
  if (!a.profile.empty()) {
    // Either one profile for both states or {"rho": ..., "sigma": ...}.
    const Json p = tdsim::read_json_file(a.profile);
    cfg.profile_rho = tdsim::profile_from_json(p.contains("rho") ? p.at("rho") : p);
    cfg.profile_sigma = tdsim::profile_from_json(p.contains("sigma") ? p.at("sigma") : p);
  }
  const tdsim::EstimateReport r = tdsim::parse_access_mode(a.mode) == tdsim::AccessMode::kPurified
                                      ? tdsim::estimate_purified(tdsim::purify(rho), tdsim::purify(sigma), cfg)
                                      : tdsim::estimate_samples(rho, sigma, cfg);
  emit(tdsim::to_json(r), a.out);
  if (!a.csv.empty()) append_csv(a.csv, tdsim::csv_row(a.seed, r));
  return 0;
}

int run_swap(const EstimateArgs& a) {
  const tdsim::BackendMode backend = a.backend.empty() ? tdsim::BackendMode::kQae : tdsim::parse_backend(a.backend);
  const tdsim::SwapTestReport r =
      tdsim::swap_test_pure(tdsim::purify(load_state(a.state_a)), tdsim::purify(load_state(a.state_b)), a.eps,
                            backend, a.repetitions, a.seed);
  emit(tdsim::to_json(r), a.out);
  if (!a.csv.empty()) append_csv(a.csv, tdsim::csv_row(a.seed, r, a.eps));
  return 0;
}

int run_sweep_cmd(const std::string& plan_path, const std::string& out_dir, int workers) {
  tdsim::SweepPlan plan = tdsim::sweep_plan_from_json(tdsim::read_json_file(plan_path));
  if (workers > 0) plan.workers = workers;
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  const tdsim::SweepReport report = tdsim::run_sweep(plan, (dir / "checkpoints").string());
  std::ofstream csv(dir / "rows.csv");
  tdsim::write_sweep_csv(csv, report);
  const Json summary = tdsim::summary_json(report);
  tdsim::write_json_file((dir / "summary.json").string(), summary);
  std::cout << summary.dump(2) << '\n';
  if (report.partial) {
    std::cerr << "sweep aborted: " << report.abort_reason << '\n';
    return 2;
  }
  return 0;
}

int run_accept(const std::vector<std::string>& only, bool corrupt, int workers) {
  tdsim::AcceptanceOptions options;
  options.only = only;
  options.corrupt_sign_poly = corrupt;
  options.workers = workers;
  bool all = true;
  tdsim::run_acceptance(options, [&](const tdsim::CriterionResult& r) {
    std::cout << tdsim::format_result(r) << std::endl;
    all = all && r.passed;
  });
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical simulator for quantum trace-distance estimation"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* g = app.add_subcommand("gen", "Generate a seeded state with its low-rank profile");
  g->add_option("--family", gen.family, "low-rank | depolarized | gibbs | power-law | pure")->capture_default_str();
  g->add_option("--qubits,-n", gen.spec.qubits, "Number of qubits")->capture_default_str();
  g->add_option("--rank,-r", gen.spec.rank, "Rank (low-rank and depolarized base)")->capture_default_str();
  g->add_option("--lambda", gen.spec.lambda, "Depolarizing strength")->capture_default_str();
  g->add_option("--k", gen.spec.k, "Gibbs cut")->capture_default_str();
  g->add_option("--gap", gen.spec.gap, "Gibbs spectral gap")->capture_default_str();
  g->add_option("--scale", gen.spec.scale, "Power-law scale C")->capture_default_str();
  g->add_flag("--uniform", gen.spec.uniform, "Equal eigenvalues for low-rank states");
  g->add_option("--seed", gen.spec.seed, "Seed")->capture_default_str();
  g->add_option("--out,-o", gen.out, "Output file (stdout when omitted)");

  EstimateArgs est;
  CLI::App* e = app.add_subcommand("estimate", "Estimate the trace distance of two states");
  e->add_option("--mode", est.mode, "purified | samples")->capture_default_str();
  e->add_option("--state-a", est.state_a, "First state (JSON)")->required()->check(CLI::ExistingFile);
  e->add_option("--state-b", est.state_b, "Second state (JSON)")->required()->check(CLI::ExistingFile);
  e->add_option("--eps", est.eps, "Target additive error")->capture_default_str();
  auto* rank_opt = e->add_option("--rank-bound", est.rank_bound, "Rank bound r; delta_p = eps / 8r");
  e->add_option("--profile", est.profile, "Low-rank profile JSON")->excludes(rank_opt)->check(CLI::ExistingFile);
  e->add_option("--delta-p", est.delta_p, "Explicit threshold delta_p");
  e->add_option("--seed", est.seed, "Seed")->capture_default_str();
  e->add_option("--backend", est.backend, "ideal | sampling | qae");
  e->add_option("--repetitions,-K", est.repetitions, "Median over K runs")->capture_default_str();
  e->add_option("--channel", est.channel, "noisy-oracle | dme | circuit (samples mode)")->capture_default_str();
  e->add_option("--csv", est.csv, "Append a CSV row to this file");
  e->add_option("--out,-o", est.out, "Report file (stdout when omitted)");

  EstimateArgs swp;
  CLI::App* s = app.add_subcommand("swap-pure", "Pure-state distance via the SWAP test");
  s->add_option("--state-a", swp.state_a, "First pure state (JSON)")->required()->check(CLI::ExistingFile);
  s->add_option("--state-b", swp.state_b, "Second pure state (JSON)")->required()->check(CLI::ExistingFile);
  s->add_option("--eps", swp.eps, "Target additive error")->capture_default_str();
  s->add_option("--seed", swp.seed, "Seed")->capture_default_str();
  s->add_option("--backend", swp.backend, "ideal | sampling | qae");
  s->add_option("--repetitions,-K", swp.repetitions, "Median over K runs")->capture_default_str();
  s->add_option("--csv", swp.csv, "Append a CSV row to this file");
  s->add_option("--out,-o", swp.out, "Report file (stdout when omitted)");

  std::string plan_path, out_dir = "sweep_out";
  int sweep_workers = 0;
  CLI::App* w = app.add_subcommand("sweep", "Run a scaling sweep");
  w->add_option("--plan", plan_path, "Sweep plan JSON")->required()->check(CLI::ExistingFile);
  w->add_option("--out", out_dir, "Output directory")->capture_default_str();
  w->add_option("--workers", sweep_workers, "Worker threads (0 = all cores)");

  std::vector<std::string> only;
  bool corrupt = false;
  int accept_workers = 0;
  CLI::App* a = app.add_subcommand("accept", "Run the acceptance suite");
  a->add_option("--only", only, "Restrict to tags or criterion numbers");
  a->add_flag("--corrupt-sign-poly", corrupt, "Fault injection: perturb the sign polynomial");
  a->add_option("--workers", accept_workers, "Worker threads (0 = all cores)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*g) return run_gen(gen);
    if (*e) return run_estimate(est);
    if (*s) return run_swap(swp);
    if (*w) return run_sweep_cmd(plan_path, out_dir, sweep_workers);
    if (*a) return run_accept(only, corrupt, accept_workers);
  } catch (const std::exception& ex) {
    std::cerr << "tdsim: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
