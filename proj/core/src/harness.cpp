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


#include "tdsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "tdsim/poly_svt.hpp"
#include "tdsim/random.hpp"

namespace tdsim {

namespace {

constexpr double kPi = std::numbers::pi;

int pool_size(int requested, int count) {
  const int hw = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  return std::max(1, std::min(count, requested > 0 ? requested : hw));
}

// Runs f(0..count-1) on a bounded pool. The first exception in index order
// is rethrown after all workers finish.
template <typename F>
void parallel_for(int count, int workers, F&& f) {
  const int w = pool_size(workers, count);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(std::max(count, 0)));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        f(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  if (w == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < w; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

SweepRow run_trial(const SweepPlan& plan, int point, int trial) {
  const double value = plan.grid[static_cast<std::size_t>(point)];
  FixtureSpec spec = plan.fixture;
  if (plan.axis == SweepAxis::kRank) spec.rank = static_cast<int>(std::lround(value));
  const std::uint64_t s = trial_seed(plan, point, trial);
  spec.seed = 2 * s;
  const Fixture a = generate_fixture(spec);
  spec.seed = 2 * s + 1;
  const Fixture b = generate_fixture(spec);

  EstimationConfig cfg;
  cfg.eps = plan.axis == SweepAxis::kEps ? value : plan.eps;
  cfg.seed = s;
  cfg.backend = plan.backend;
  cfg.repetitions = plan.repetitions;
  if (plan.axis == SweepAxis::kDelta) {
    cfg.delta_p = value;
  } else if (spec.family == FixtureFamily::kLowRank || spec.family == FixtureFamily::kPure) {
    cfg.rank_bound = spec.family == FixtureFamily::kPure ? 1 : spec.rank;
  } else {
    cfg.profile_rho = a.profile;
    cfg.profile_sigma = b.profile;
  }
  const EstimateReport r = plan.mode == AccessMode::kPurified
                               ? estimate_purified(purify(a.state), purify(b.state), cfg)
                               : estimate_samples(a.state, b.state, cfg);
  SweepRow row;
  row.point = point;
  row.value = value;
  row.trial = trial;
  row.seed = s;
  row.mode = to_string(r.mode);
  row.eps = cfg.eps;
  row.delta_p = r.params.delta_p;
  row.estimate = r.estimate;
  row.exact = r.exact_value;
  row.abs_error = r.abs_error;
  row.queries = r.ledger.total_queries();
  row.samples = r.ledger.total_samples();
  return row;
}

Json row_json(const SweepRow& r) {
  return {{"point", r.point}, {"value", r.value},       {"trial", r.trial},   {"seed", r.seed},
          {"mode", r.mode},   {"eps", r.eps},           {"delta_p", r.delta_p}, {"estimate", r.estimate},
          {"exact", r.exact}, {"abs_error", r.abs_error}, {"queries", r.queries}, {"samples", r.samples}};
}

SweepRow row_from_json(const Json& j) {
  SweepRow r;
  r.point = j.at("point").get<int>();
  r.value = j.at("value").get<double>();
  r.trial = j.at("trial").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.mode = j.at("mode").get<std::string>();
  r.eps = j.at("eps").get<double>();
  r.delta_p = j.at("delta_p").get<double>();
  r.estimate = j.at("estimate").get<double>();
  r.exact = j.at("exact").get<double>();
  r.abs_error = j.at("abs_error").get<double>();
  r.queries = j.at("queries").get<std::uint64_t>();
  r.samples = j.at("samples").get<std::uint64_t>();
  return r;
}

double axis_x(const SweepPlan& plan, const SweepPointSummary& p) {
  return plan.axis == SweepAxis::kRank ? p.value : 1.0 / p.value;
}

void summarise(SweepReport& report) {
  report.points.clear();
  for (std::size_t i = 0; i < report.plan.grid.size(); ++i) {
    SweepPointSummary s;
    s.value = report.plan.grid[i];
    for (const SweepRow& r : report.rows) {
      if (r.point != static_cast<int>(i)) continue;
      ++s.trials;
      s.mean_queries += static_cast<double>(r.queries);
      s.mean_samples += static_cast<double>(r.samples);
      s.success_frequency += r.success() ? 1.0 : 0.0;
    }
    if (s.trials == 0) continue;
    s.mean_queries /= s.trials;
    s.mean_samples /= s.trials;
    s.success_frequency /= s.trials;
    report.points.push_back(s);
  }
  std::vector<double> x, q, smp;
  for (const SweepPointSummary& p : report.points) {
    x.push_back(axis_x(report.plan, p));
    q.push_back(p.mean_queries);
    smp.push_back(p.mean_samples);
  }
  auto positive = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double a) { return a > 0.0; });
  };
  report.query_slope = x.size() >= 2 && positive(q) ? log_log_slope(x, q) : 0.0;
  report.sample_slope = x.size() >= 2 && positive(smp) ? log_log_slope(x, smp) : 0.0;
}

}  // namespace

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kEps: return "eps";
    case SweepAxis::kRank: return "rank";
    case SweepAxis::kDelta: return "delta";
  }
  return "eps";
}

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "eps") return SweepAxis::kEps;
  if (name == "rank") return SweepAxis::kRank;
  if (name == "delta") return SweepAxis::kDelta;
  throw ArgumentError("unknown sweep axis '" + name + "'");
}

void SweepPlan::validate() const {
  if (grid.empty()) throw ArgumentError("sweep grid is empty");
  if (trials < 1) throw ArgumentError("trials must be at least 1");
  const bool up = grid.size() < 2 || grid[1] > grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (up ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1]))
      throw ArgumentError("sweep grid must be strictly monotone");
  for (double v : grid) {
    if (!(v > 0.0)) throw ArgumentError("sweep grid values must be positive");
    if (axis == SweepAxis::kRank && std::abs(v - std::round(v)) > 0.0)
      throw ArgumentError("rank grid values must be integers");
  }
}

Json to_json(const SweepPlan& plan) {
  Json j = {{"axis", to_string(plan.axis)},   {"grid", plan.grid}, {"trials", plan.trials},
            {"fixture", to_json(plan.fixture)}, {"mode", to_string(plan.mode)}, {"seed_base", plan.seed_base},
            {"eps", plan.eps},                {"repetitions", plan.repetitions}};
  if (plan.backend) j["backend"] = to_string(*plan.backend);
  return j;
}

SweepPlan sweep_plan_from_json(const Json& j) {
  SweepPlan p;
  p.axis = parse_sweep_axis(j.at("axis").get<std::string>());
  p.grid = j.at("grid").get<std::vector<double>>();
  p.trials = j.value("trials", p.trials);
  if (j.contains("fixture")) p.fixture = fixture_spec_from_json(j.at("fixture"));
  p.mode = parse_access_mode(j.value("mode", std::string("purified")));
  if (j.contains("backend")) p.backend = parse_backend(j.at("backend").get<std::string>());
  p.seed_base = j.value("seed_base", p.seed_base);
  p.eps = j.value("eps", p.eps);
  p.repetitions = j.value("repetitions", p.repetitions);
  p.workers = j.value("workers", p.workers);
  p.validate();
  return p;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ArgumentError("slope needs at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw ArgumentError("slope needs distinct x values");
  return sxy / sxx;
}

std::uint64_t trial_seed(const SweepPlan& plan, int point, int trial) {
  return plan.seed_base + 1000U * static_cast<std::uint64_t>(point) + static_cast<std::uint64_t>(trial);
}

SweepReport run_sweep(const SweepPlan& plan, const std::string& checkpoint_dir) {
  plan.validate();
  SweepReport report;
  report.plan = plan;
  namespace fs = std::filesystem;
  const std::string hash = std::to_string(fnv1a(to_json(plan).dump()));
  if (!checkpoint_dir.empty()) fs::create_directories(checkpoint_dir);
  for (int point = 0; point < static_cast<int>(plan.grid.size()); ++point) {
    const fs::path ckpt = fs::path(checkpoint_dir) / ("checkpoint_" + std::to_string(point) + ".json");
    if (!checkpoint_dir.empty() && fs::exists(ckpt)) {
      const Json saved = read_json_file(ckpt.string());
      if (saved.value("plan_hash", std::string{}) == hash) {
        for (const Json& r : saved.at("rows")) report.rows.push_back(row_from_json(r));
        continue;
      }
    }
    std::vector<SweepRow> rows(static_cast<std::size_t>(plan.trials));
    try {
      parallel_for(plan.trials, plan.workers,
                   [&](int t) { rows[static_cast<std::size_t>(t)] = run_trial(plan, point, t); });
    } catch (const SizeError& e) {
      report.partial = true;
      report.abort_reason = e.what();
      break;
    }
    if (!checkpoint_dir.empty()) {
      Json saved = {{"plan_hash", hash}, {"point", point}, {"rows", Json::array()}};
      for (const SweepRow& r : rows) saved["rows"].push_back(row_json(r));
      write_json_file(ckpt.string(), saved);
    }
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  summarise(report);
  return report;
}

void write_sweep_csv(std::ostream& os, const SweepReport& report) {
  os << "point,value,trial," << kCsvHeader << '\n';
  for (const SweepRow& r : report.rows) {
    os << r.point << ',' << format_double(r.value) << ',' << r.trial << ',' << r.seed << ',' << r.mode << ','
       << format_double(r.eps) << ',' << format_double(r.delta_p) << ',' << format_double(r.estimate) << ','
       << format_double(r.exact) << ',' << format_double(r.abs_error) << ',' << r.queries << ',' << r.samples
       << '\n';
  }
}

Json summary_json(const SweepReport& report) {
  Json pts = Json::array();
  for (const SweepPointSummary& p : report.points)
    pts.push_back({{"value", p.value},
                   {"trials", p.trials},
                   {"mean_queries", p.mean_queries},
                   {"mean_samples", p.mean_samples},
                   {"success_frequency", p.success_frequency}});
  return {{"plan", to_json(report.plan)},   {"points", pts},
          {"query_slope", report.query_slope}, {"sample_slope", report.sample_slope},
          {"partial", report.partial},      {"abort_reason", report.abort_reason}};
}

// ---------------------------------------------------------------------------
// Acceptance suite.

namespace {

struct Criterion {
  int id;
  const char* tag;
  const char* title;
  std::function<bool(const AcceptanceOptions&, std::string&)> run;
};

std::string fmt(double x, int digits = 4) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

Operator exact_sign(const Operator& nu) {
  return hermitian_function(nu, [](double x) { return x > 1e-14 ? 1.0 : (x < -1e-14 ? -1.0 : 0.0); });
}

bool identity_suite(const AcceptanceOptions&, std::string& detail) {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const int n = 1 + static_cast<int>(s % 3);
    const auto cap = static_cast<std::uint64_t>(std::min(4, 1 << n));
    const DensityOperator rho = gen_low_rank(n, 1 + static_cast<int>(s % cap), 5000 + 2 * s);
    const DensityOperator sigma = gen_low_rank(n, 1 + static_cast<int>((s / 3) % cap), 5001 + 2 * s);
    const Operator sg = exact_sign(0.5 * (rho.op() - sigma.op()));
    const double t = 0.5 * ((rho.op() * sg).trace().real() - (sigma.op() * sg).trace().real());
    worst = std::max(worst, std::abs(t - trace_distance_exact(rho, sigma)));
  }
  detail = "100 pairs, max deviation " + fmt(worst) + " (limit 1e-8)";
  return worst <= 1e-8;
}

bool polynomial_suite(const AcceptanceOptions& opt, std::string& detail) {
  int certified = 0, cells = 0;
  double worst_ratio = 0.0;
  for (double delta : {0.2, 0.1, 0.05}) {
    for (double eps : {0.1, 0.01}) {
      ++cells;
      OddPolynomial p = sign_poly(delta, eps);
      if (opt.corrupt_sign_poly) {
        std::vector<double> c = p.coeffs;
        for (double& v : c) v *= 1.1;
        p = odd_polynomial(std::move(c));
      }
      certified += certify(p, delta, eps).passed() ? 1 : 0;
      worst_ratio = std::max(worst_ratio, p.degree * delta / std::log(1.0 / eps));
    }
  }
  detail = std::to_string(certified) + "/" + std::to_string(cells) + " cells certified, max degree*delta/ln(1/eps) " +
           fmt(worst_ratio) + " (eta " + fmt(kSignDegreeConstant) + ")";
  if (opt.corrupt_sign_poly) detail += " [fault injected]";
  return certified == cells && worst_ratio <= kSignDegreeConstant;
}

bool purified_accuracy(const AcceptanceOptions& opt, std::string& detail) {
  const int seeds = 100;
  std::vector<int> ok(seeds), control(seeds);
  parallel_for(seeds, opt.workers, [&](int i) {
    const auto s = static_cast<std::uint64_t>(i);
    EstimationConfig cfg;
    cfg.eps = 0.05;
    cfg.rank_bound = 2;
    cfg.backend = BackendMode::kQae;
    cfg.repetitions = 9;
    cfg.seed = 7000 + s;
    const PurifiedOracle a = purify(gen_low_rank(3, 2, 7000 + 2 * s));
    const PurifiedOracle b = purify(gen_low_rank(3, 2, 7001 + 2 * s));
    ok[static_cast<std::size_t>(i)] = estimate_purified(a, b, cfg).abs_error <= cfg.eps;
    control[static_cast<std::size_t>(i)] = std::abs(estimate_purified(a, a, cfg).estimate) <= cfg.eps;
  });
  const int hits = static_cast<int>(std::count(ok.begin(), ok.end(), 1));
  const int ctrl = static_cast<int>(std::count(control.begin(), control.end(), 1));
  detail = std::to_string(hits) + "/100 within eps (need 90), rho = sigma control " + std::to_string(ctrl) +
           "/100 (need 95)";
  return hits >= 90 && ctrl >= 95;
}

bool purified_scaling(const AcceptanceOptions& opt, std::string& detail) {
  SweepPlan eps_plan;
  eps_plan.axis = SweepAxis::kEps;
  eps_plan.grid = {0.2, 0.1, 0.05, 0.025};
  eps_plan.fixture.family = FixtureFamily::kLowRank;
  eps_plan.fixture.qubits = 3;
  eps_plan.fixture.rank = 2;
  eps_plan.seed_base = 9000;
  eps_plan.workers = opt.workers;
  const SweepReport er = run_sweep(eps_plan);

  SweepPlan rank_plan = eps_plan;
  rank_plan.axis = SweepAxis::kRank;
  rank_plan.grid = {1, 2, 4};
  rank_plan.eps = 0.1;
  // Rank 4 needs a two-qubit purifier; two system qubits keep the
  // Hadamard-test register within the default cap.
  rank_plan.fixture.qubits = 2;
  const SweepReport rr = run_sweep(rank_plan);
  detail = "slope vs 1/eps " + fmt(er.query_slope) + " (need 2 +- 0.2), slope vs r " + fmt(rr.query_slope) +
           " (need 1 +- 0.2)";
  return !er.partial && !rr.partial && std::abs(er.query_slope - 2.0) <= 0.2 && std::abs(rr.query_slope - 1.0) <= 0.2;
}

bool samples_accuracy(const AcceptanceOptions& opt, std::string& detail) {
  const int seeds = 100;
  std::vector<int> ok(seeds);
  std::vector<double> delta(seeds);
  parallel_for(seeds, opt.workers, [&](int i) {
    const auto s = static_cast<std::uint64_t>(i);
    EstimationConfig cfg;
    cfg.eps = 0.1;
    cfg.rank_bound = 2;
    cfg.seed = 11000 + s;
    cfg.channel_mode = ChannelMode::kNoisyOracle;
    const EstimateReport r = estimate_samples(gen_low_rank(2, 2, 11000 + 2 * s), gen_low_rank(2, 2, 11001 + 2 * s), cfg);
    ok[static_cast<std::size_t>(i)] = r.abs_error <= cfg.eps && !r.budget_overflow;
    delta[static_cast<std::size_t>(i)] = r.params.delta;
  });
  const int hits = static_cast<int>(std::count(ok.begin(), ok.end(), 1));
  // Measured Choi proxies against declared budgets, single use and a short
  // composition, on a few seeds (each proxy is a 1024-dimensional problem).
  bool budgets = true;
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 2; ++s) {
    const ChannelModel e = sampling_to_block_encoding(gen_low_rank(2, 2, 11000 + 2 * s), delta[s], ChannelMode::kNoisyOracle, "E_rho");
    const double single = choi_proxy_distance(e);
    const ChannelComposition c = apply_channel_as_block_encoding(e, 4);
    budgets = budgets && single <= e.delta_budget && c.choi_proxy <= c.pipeline.budget;
    worst = std::max({worst, single / e.delta_budget, c.choi_proxy / c.pipeline.budget});
  }
  detail = std::to_string(hits) + "/100 within eps (need 85), max Choi proxy / budget " + fmt(worst);
  return hits >= 85 && budgets;
}

bool channel_calibration(const AcceptanceOptions&, std::string& detail) {
  bool ok = true;
  double worst = 0.0;
  const DensityOperator rho = gen_low_rank(1, 2, 12000);
  for (double delta : {0.02, 0.05, 0.1, 0.2}) {
    const double d = choi_proxy_distance(sampling_to_block_encoding(rho, delta));
    ok = ok && d <= delta;
    worst = std::max(worst, d / delta);
  }
  const ChannelModel e = sampling_to_block_encoding(rho, 0.0);
  const Operator noisy = invert_channel(e).superoperator() * e.superoperator();
  Rng rng(12001);
  const ChannelModel c = noisy_unitary_circuit(haar_unitary(2, rng), 0.0);
  const Operator circuit = invert_channel(c).superoperator() * c.superoperator();
  const double inv_err = std::max((noisy - identity(noisy.rows())).cwiseAbs().maxCoeff(),
                                  (circuit - identity(circuit.rows())).cwiseAbs().maxCoeff());
  detail = "max Choi proxy / delta " + fmt(worst) + ", inverse composition error " + fmt(inv_err) + " (limit 1e-9)";
  return ok && inv_err <= 1e-9;
}

bool dme_primitive(const AcceptanceOptions&, std::string& detail) {
  bool ok = true;
  double worst_ratio = 0.0, worst_fixed = 0.0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const DensityOperator rho = gen_low_rank(2, 1 + static_cast<int>(s % 4), 13000 + 2 * s);
    const DensityOperator sigma = gen_low_rank(2, 2, 13001 + 2 * s);
    // Second-order oracle: the dt^2 coefficient of the step is rho - sigma.
    const double c2 = operator_norm(rho.op() - sigma.op());
    for (double dt : {1e-2, 1e-3}) {
      const Operator first = sigma.op() - Complex(0.0, dt) * (rho.op() * sigma.op() - sigma.op() * rho.op());
      const double residual = operator_norm(dme_step(rho, sigma, dt).op() - first);
      const double c = c2 + 2.0 * dt;
      ok = ok && residual <= c * dt * dt;
      worst_ratio = std::max(worst_ratio, residual / (c * dt * dt));
    }
    worst_fixed = std::max(worst_fixed, (dme_step(sigma, sigma, 0.01).op() - sigma.op()).cwiseAbs().maxCoeff());
  }
  detail = "max residual / (C dt^2) " + fmt(worst_ratio) + ", fixed-point error " + fmt(worst_fixed);
  return ok && worst_fixed <= 1e-12;
}

bool low_rank_suite(const AcceptanceOptions&, std::string& detail) {
  Rng rng(14000);
  int held = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const int n = 1 + static_cast<int>(s % 3);
    const Fixture a = gen_depolarized(gen_low_rank(n, 1 + static_cast<int>(s % 2), 14000 + 2 * s), 0.05 * rng.uniform());
    const Fixture b = gen_depolarized(gen_low_rank(n, 1, 14001 + 2 * s), 0.05 * rng.uniform());
    const double delta = 0.002 + 0.2 * rng.uniform();
    const LowRankBounds measured =
        approx_low_rank_difference(rank_delta(a.state.op(), delta), w_small_eigen(a.state.op(), delta),
                                   rank_delta(b.state.op(), delta), w_small_eigen(b.state.op(), delta), delta);
    const LowRankBounds profiled = approx_low_rank_difference(a.profile, b.profile, delta);
    const Operator nu = 0.5 * (a.state.op() - b.state.op());
    held += rank_delta(nu, measured.delta) <= measured.rank && w_small_eigen(nu, measured.delta) <= measured.mass + 1e-12 &&
            rank_delta(nu, profiled.delta) <= profiled.rank && w_small_eigen(nu, profiled.delta) <= profiled.mass + 1e-12;
  }
  bool exact_ok = true, dep_ok = true;
  for (int r : {1, 2, 4}) {
    for (double eps : {0.1, 0.05}) {
      const ApproxLowRankProfile ex = ApproxLowRankProfile::exact(r);
      exact_ok = exact_ok && std::abs(choose_delta_p_profile(ex, ex, eps) - eps / (4.0 * r)) <= 1e-15;
      const ApproxLowRankProfile dep = ApproxLowRankProfile::depolarized(r, 8, eps / 100.0);
      const double d1 = (eps - 8.0 * eps / 100.0) / (8.0 * r) + eps / 100.0 / 8.0;
      const double dp = choose_delta_p_profile(dep, dep, eps);
      dep_ok = dep_ok && std::abs(dp - 2.0 * std::min(d1, eps / (8.0 * r))) <= 1e-15 && dp * r / eps > 0.2 &&
               dp * r / eps <= 0.25;
    }
  }
  bool pl_ok = true;
  double lo = 1e300, hi = 0.0;
  const double c = 0.7;
  const Eigen::Index big = 1 << 10;
  for (double eps : {0.2, 0.1, 0.05, 0.025, 0.0125}) {
    const ApproxLowRankProfile pl = ApproxLowRankProfile::power_law(c, big);
    const double a = eps / 8.0 + c / (big - 1.0);
    const double d1 = c * a * a / ((a + c) * (a + c));
    const double dp = choose_delta_p_profile(pl, pl, eps);
    pl_ok = pl_ok && std::abs(dp - 2.0 * std::min(d1, eps / (8.0 * pl.R(d1)))) <= 1e-15;
    lo = std::min(lo, dp / (eps * eps));
    hi = std::max(hi, dp / (eps * eps));
  }
  pl_ok = pl_ok && hi / lo < 2.0;
  detail = "composed bounds held on " + std::to_string(held) + "/100 pairs; eps/4r " + (exact_ok ? "ok" : "FAIL") +
           ", depolarized " + (dep_ok ? "ok" : "FAIL") + ", power-law delta_p/eps^2 in [" + fmt(lo) + ", " + fmt(hi) + "]";
  return held == 100 && exact_ok && dep_ok && pl_ok;
}

bool swap_suite(const AcceptanceOptions& opt, std::string& detail) {
  Rng rng(15000);
  int bound_ok = 0, low = 0, high = 0, cases = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 2;
    const DensityOperator a = gen_low_rank(n, 1, 15000 + 2 * static_cast<std::uint64_t>(t));
    const DensityOperator b = t % 5 == 0 ? a : gen_low_rank(n, 1, 15001 + 2 * static_cast<std::uint64_t>(t));
    const double f2 = std::clamp((a.op() * b.op()).trace().real(), 0.0, 1.0);
    const double truth = trace_distance_exact(a, b);
    for (double delta : {1e-4, 1e-3, 1e-2, 0.05}) {
      const double x = f2 + delta * (2.0 * rng.uniform() - 1.0);
      (std::min(x, f2) <= 1.0 - delta ? low : high)++;
      ++cases;
      bound_ok += std::abs(distance_from_overlap(x) - truth) <= 2.0 * std::sqrt(delta) + 1e-12;
    }
  }
  const int seeds = 100;
  std::vector<int> hit(seeds);
  parallel_for(seeds, opt.workers, [&](int i) {
    const auto s = static_cast<std::uint64_t>(i);
    const SwapTestReport r = swap_test_pure(purify(gen_low_rank(2, 1, 16000 + 2 * s)),
                                            purify(gen_low_rank(2, 1, 16001 + 2 * s)), 0.1, BackendMode::kQae, 9, s);
    hit[static_cast<std::size_t>(i)] = r.abs_error <= 0.1;
  });
  const int hits = static_cast<int>(std::count(hit.begin(), hit.end(), 1));
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    EstimationConfig cfg;
    cfg.eps = 0.1;
    cfg.rank_bound = 1;
    cfg.seed = 17000 + s;
    const PurifiedOracle a = purify(gen_low_rank(2, 1, 17000 + 2 * s)), b = purify(gen_low_rank(2, 1, 17001 + 2 * s));
    worst = std::max(worst, std::abs(estimate_purified(a, b, cfg).estimate -
                                     swap_test_pure(a, b, cfg.eps, BackendMode::kQae, 9, cfg.seed).estimate));
  }
  detail = "2 sqrt(delta) bound " + std::to_string(bound_ok) + "/" + std::to_string(cases) + " (branches " +
           std::to_string(low) + "/" + std::to_string(high) + "), SWAP estimates " + std::to_string(hits) +
           "/100 within eps, max route disagreement " + fmt(worst) + " (limit 0.2)";
  return bound_ok == cases && low > 0 && high > 0 && hits >= 90 && worst <= 0.2;
}

bool qae_contract(const AcceptanceOptions&, std::string& detail) {
  Rng rng(18000);
  EstimationBackend single{BackendMode::kQae, 1, Rng(18001)};
  int ok = 0;
  const int cases = 200;
  for (int t = 0; t < cases; ++t) {
    const double p = rng.uniform();
    const int m = 1 << (2 + t % 6);
    const double bound = 2.0 * kPi * std::sqrt(p * (1.0 - p)) / m + kPi * kPi / (static_cast<double>(m) * m);
    ok += std::abs(amplitude_estimate_probability(p, m, single).estimate - p) <= bound;
  }
  EstimationBackend nine{BackendMode::kQae, 9, Rng(18002)};
  double grid_err = 0.0;
  for (int m : {8, 16, 32, 64}) {
    for (int y = 0; y <= m / 2; ++y) {
      const double p = std::pow(std::sin(kPi * y / m), 2);
      for (double run : amplitude_estimate_probability(p, m, nine).runs) grid_err = std::max(grid_err, std::abs(run - p));
    }
  }
  const double freq = static_cast<double>(ok) / cases;
  const double need = 8.0 / (kPi * kPi) - 0.05;
  detail = "error-bound frequency " + fmt(freq) + " (need " + fmt(need) + "), on-grid max error " + fmt(grid_err);
  return freq >= need && grid_err <= 1e-12;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "identity", "sign-trace identity", identity_suite},
      {2, "polynomial", "sign-polynomial certificates", polynomial_suite},
      {3, "purified", "purified-path accuracy", purified_accuracy},
      {4, "purified", "purified-path scaling", purified_scaling},
      {5, "samples", "sample-path accuracy", samples_accuracy},
      {6, "channels", "channel calibration", channel_calibration},
      {7, "dme", "DME primitive", dme_primitive},
      {8, "low-rank", "approximately-low-rank suite", low_rank_suite},
      {9, "swap", "pure-state SWAP suite", swap_suite},
      {10, "qae", "amplitude estimation contract", qae_contract},
  };
  return list;
}

bool selected(const AcceptanceOptions& opt, const Criterion& c) {
  if (opt.only.empty()) return true;
  return std::any_of(opt.only.begin(), opt.only.end(),
                     [&](const std::string& s) { return s == c.tag || s == std::to_string(c.id); });
}

}  // namespace

const std::vector<std::string>& acceptance_tags() {
  static const std::vector<std::string> tags = [] {
    std::vector<std::string> t;
    for (const Criterion& c : criteria()) t.emplace_back(c.tag);
    return t;
  }();
  return tags;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  for (const std::string& s : options.only) {
    const bool known = std::any_of(criteria().begin(), criteria().end(),
                                   [&](const Criterion& c) { return s == c.tag || s == std::to_string(c.id); });
    if (!known) throw ArgumentError("unknown acceptance tag '" + s + "'");
  }
  std::vector<CriterionResult> out;
  for (const Criterion& c : criteria()) {
    if (!selected(options, c)) continue;
    CriterionResult r{c.id, c.tag, c.title, false, {}, 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
      r.passed = c.run(options, r.detail);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << " [" << r.tag << "] " << r.title << ": "
     << r.detail << " (" << fmt(r.seconds, 3) << " s)";
  return os.str();
}

}  // namespace tdsim
