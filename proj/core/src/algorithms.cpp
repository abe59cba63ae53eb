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


#include "tdsim/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tdsim/circuit.hpp"
#include "tdsim/poly_svt.hpp"

namespace tdsim {

namespace {

constexpr double kPi = std::numbers::pi;

void validate(const EstimationConfig& cfg) {
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw ArgumentError("eps must lie in (0, 1)");
  if (cfg.delta_p && !(*cfg.delta_p > 0.0)) throw ArgumentError("delta_p must be positive");
  if (cfg.rank_bound && *cfg.rank_bound < 1) throw ArgumentError("rank bound must be at least 1");
  if (cfg.profile_rho.has_value() != cfg.profile_sigma.has_value())
    throw ArgumentError("profiles must be given for both states");
}

PurifiedOracle renamed(PurifiedOracle o, const std::string& name) {
  o.name = name;
  return o;
}

Operator swap_gate() {
  Operator s = Operator::Zero(4, 4);
  s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
  return s;
}

void record_precondition(EstimateReport& r, const Operator& nu) {
  r.precondition_mass = w_small_eigen(nu, r.params.delta_p);
  r.precondition_ok = r.precondition_mass <= r.params.eps / 4.0 + kPredicateTol;
  if (!r.precondition_ok)
    r.warnings.push_back("w(nu, delta_p) = " + std::to_string(r.precondition_mass) + " exceeds eps/4");
  if (r.params.delta_p_source == DeltaSource::kOracle)
    r.warnings.push_back("delta_p derived from the exact spectrum (oracle-assisted)");
}

}  // namespace

std::string to_string(AccessMode mode) { return mode == AccessMode::kPurified ? "purified" : "samples"; }

AccessMode parse_access_mode(const std::string& name) {
  if (name == "purified") return AccessMode::kPurified;
  if (name == "samples") return AccessMode::kSamples;
  throw ArgumentError("unknown access mode '" + name + "'");
}

std::string to_string(DeltaSource source) {
  switch (source) {
    case DeltaSource::kConfig: return "config";
    case DeltaSource::kRank: return "rank";
    case DeltaSource::kProfile: return "profile";
    case DeltaSource::kOracle: return "oracle";
  }
  return "config";
}

std::pair<double, DeltaSource> resolve_delta_p(const EstimationConfig& cfg, const Operator& nu,
                                               double mass_target) {
  if (cfg.delta_p) return {*cfg.delta_p, DeltaSource::kConfig};
  if (cfg.rank_bound) return {choose_delta_p_rank(*cfg.rank_bound, cfg.eps), DeltaSource::kRank};
  if (cfg.profile_rho)
    return {choose_delta_p_profile(*cfg.profile_rho, *cfg.profile_sigma, cfg.eps), DeltaSource::kProfile};
  if (!cfg.oracle_delta_p)
    throw InfeasibleError("no delta_p, rank bound or profile given and oracle derivation is disabled");
  return {oracle_delta_for_mass(nu, mass_target), DeltaSource::kOracle};
}

EstimateReport estimate_purified(const PurifiedOracle& o_rho, const PurifiedOracle& o_sigma,
                                 const EstimationConfig& cfg) {
  validate(cfg);
  if (o_rho.system_qubits != o_sigma.system_qubits) throw ArgumentError("states act on different systems");
  const PurifiedOracle a = renamed(o_rho, "O_rho");
  const PurifiedOracle b = renamed(o_sigma, "O_sigma");
  const DensityOperator rho = a.reduced_state();
  const DensityOperator sigma = b.reduced_state();
  const Operator nu = 0.5 * (rho.op() - sigma.op());

  EstimateReport r;
  r.mode = AccessMode::kPurified;
  r.backend = cfg.backend.value_or(BackendMode::kQae);
  r.params.eps = cfg.eps;
  r.params.eps_p = cfg.eps / 8.0;
  r.params.eps_h = cfg.eps / 4.0;
  r.params.repetitions = cfg.repetitions;
  std::tie(r.params.delta_p, r.params.delta_p_source) = resolve_delta_p(cfg, nu, cfg.eps / 4.0);
  record_precondition(r, nu);

  const BlockEncoding u_nu = lcu_difference(density_to_block_encoding(a), density_to_block_encoding(b));
  const OddPolynomial p = sign_poly(r.params.delta_p, r.params.eps_p);
  const BlockEncoding u_sgn = qsvt_block_encoding(p, u_nu);
  r.params.degree = p.degree;

  const Rng root(cfg.seed);
  EstimationBackend be_rho{r.backend, cfg.repetitions, root.stream("rho")};
  EstimationBackend be_sigma{r.backend, cfg.repetitions, root.stream("sigma")};
  const TraceTermEstimate x_rho = estimate_trace_term(u_sgn, a, r.params.eps_h, be_rho, r.ledger);
  const TraceTermEstimate x_sigma = estimate_trace_term(u_sgn, b, r.params.eps_h, be_sigma, r.ledger);
  r.params.grid = x_rho.grid;
  r.params.shots = x_rho.shots;
  for (std::size_t i = 0; i < x_rho.runs.size(); ++i) r.runs.push_back(0.5 * (x_rho.runs[i] - x_sigma.runs[i]));

  r.estimate = 0.5 * (x_rho.value - x_sigma.value);
  r.exact_value = trace_distance_exact(rho, sigma);
  r.abs_error = std::abs(r.estimate - r.exact_value);
  return r;
}

EstimateReport estimate_samples(const DensityOperator& rho, const DensityOperator& sigma,
                                const EstimationConfig& cfg) {
  validate(cfg);
  if (rho.dim() != sigma.dim()) throw ArgumentError("states act on different systems");
  const BackendMode mode = cfg.backend.value_or(BackendMode::kSampling);
  if (mode == BackendMode::kQae)
    throw UnsupportedError("sample access estimates trace terms by Hadamard-test sampling; use sampling or ideal");
  if (cfg.channel_mode == ChannelMode::kDme)
    throw UnsupportedError("dme channels target exp(-i rho), not the block-encoding of rho");
  const Operator nu = 0.5 * (rho.op() - sigma.op());

  EstimateReport r;
  r.mode = AccessMode::kSamples;
  r.backend = mode;
  EstimateParameters& par = r.params;
  par.eps = cfg.eps;
  par.eps_p = cfg.eps / 12.0;
  par.eps_h = kPi * cfg.eps / 24.0;
  par.repetitions = cfg.repetitions;
  std::tie(par.delta_p, par.delta_p_source) = resolve_delta_p(cfg, nu, cfg.eps / 4.0);
  record_precondition(r, nu);
  par.delta = kPi * cfg.eps * par.delta_p /
              (48.0 * kQsvtQueryConstant * kSignDegreeConstant * std::log(1.0 / par.eps_p));

  const OddPolynomial p = sign_poly(par.delta_p, par.eps_p);
  par.degree = p.degree;
  par.channel_uses = static_cast<std::uint64_t>(kQsvtQueryConstant) * static_cast<std::uint64_t>(p.degree);
  const std::uint64_t q = par.channel_uses;

  const ChannelModel e_rho = sampling_to_block_encoding(rho, par.delta, cfg.channel_mode, "E_rho");
  const ChannelModel e_sigma = sampling_to_block_encoding(sigma, par.delta, cfg.channel_mode, "E_sigma");
  auto encoding = [](const ChannelModel& e, int qubits) {
    BlockEncoding b;
    b.unitary = e.target;
    b.alpha = kSampleEncodingAlpha;
    b.ancillas = kSampleEncodingAncillas;
    b.system_qubits = qubits;
    b.provenance = e.label;
    return b;
  };
  const BlockEncoding u_nu =
      lcu_difference(encoding(e_rho, rho.qubits()), encoding(e_sigma, sigma.qubits()), "E_nu");
  const BlockEncoding u_psv = qsvt_block_encoding(p, u_nu, "E_psv");

  ChannelPipeline per_nu;
  per_nu.use(e_rho);
  per_nu.use(e_sigma);
  ChannelPipeline pipeline;
  pipeline.repeat(per_nu, q);
  r.channel_budget = pipeline.budget;
  r.budget_overflow = pipeline.overflow;
  if (pipeline.overflow) r.warnings.push_back("channel budget 2 q delta reached 1; the error bound is vacuous");

  // Each noisy-oracle use replaces the state by the depolarized one with
  // probability delta / 2; any such event erases the control coherence.
  r.noise_mixing = 1.0 - std::pow(1.0 - par.delta / 2.0, 2.0 * static_cast<double>(q));
  par.shots = hadamard_shots(par.eps_h);
  const std::uint64_t k = e_rho.copies_per_use;
  const Rng root(cfg.seed);

  auto term = [&](const DensityOperator& state, const std::string& own, const std::string& other,
                  const char* stream) {
    const double ideal = hadamard_test_prob(u_psv, state, Part::kReal);
    const double p0 = clamp_probability((1.0 - r.noise_mixing) * ideal + 0.5 * r.noise_mixing);
    Rng rng = root.stream(stream);
    std::vector<double> runs;
    for (int i = 0; i < cfg.repetitions; ++i) {
      const double f = mode == BackendMode::kIdeal
                           ? p0
                           : static_cast<double>(rng.binomial(par.shots, p0)) / static_cast<double>(par.shots);
      runs.push_back(2.0 * f - 1.0);
    }
    const std::uint64_t shots = par.shots * static_cast<std::uint64_t>(cfg.repetitions);
    r.ledger.charge(invocation_cost(u_psv.provenance, u_psv.cost), shots);
    r.ledger.charge_samples(own, shots);
    r.ledger.charge_samples(own, shots * q * k);
    r.ledger.charge_samples(other, shots * q * k);
    return runs;
  };
  const std::vector<double> x_rho = term(rho, "rho", "sigma", "rho");
  const std::vector<double> x_sigma = term(sigma, "sigma", "rho", "sigma");
  for (std::size_t i = 0; i < x_rho.size(); ++i) r.runs.push_back(2.0 * (x_rho[i] - x_sigma[i]) / kPi);

  r.estimate = 2.0 * (median(x_rho) - median(x_sigma)) / kPi;
  r.exact_value = trace_distance_exact(rho, sigma);
  r.abs_error = std::abs(r.estimate - r.exact_value);
  return r;
}

double distance_from_overlap(double x) { return std::sqrt(1.0 - std::clamp(x, 0.0, 1.0)); }

SwapTestReport swap_test_pure(const PurifiedOracle& o_psi, const PurifiedOracle& o_phi, double eps,
                              BackendMode backend, int repetitions, std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("eps must lie in (0, 1)");
  if (!o_psi.is_pure() || !o_phi.is_pure()) throw ArgumentError("SWAP-test distance needs pure states");
  if (o_psi.system_qubits != o_phi.system_qubits) throw ArgumentError("states act on different systems");
  const int n = o_psi.system_qubits;
  const int a0 = 1, b0 = 1 + o_psi.total_qubits();
  Circuit c(1 + o_psi.total_qubits() + o_phi.total_qubits());
  std::vector<int> reg_a(static_cast<std::size_t>(o_psi.total_qubits()));
  std::vector<int> reg_b(static_cast<std::size_t>(o_phi.total_qubits()));
  for (std::size_t i = 0; i < reg_a.size(); ++i) reg_a[i] = a0 + static_cast<int>(i);
  for (std::size_t i = 0; i < reg_b.size(); ++i) reg_b[i] = b0 + static_cast<int>(i);
  c.apply(o_psi.unitary, reg_a, "O_psi").apply(o_phi.unitary, reg_b, "O_phi");
  c.apply(gates::hadamard(), {0});
  for (int i = 0; i < n; ++i) c.controlled(0, swap_gate(), {a0 + i, b0 + i}, "cswap");
  c.apply(gates::hadamard(), {0});

  SwapTestReport r;
  r.delta = eps * eps / 4.0;
  const DensityOperator rp = o_psi.reduced_state(), rf = o_phi.reduced_state();
  r.overlap_exact = std::clamp((rp.op() * rf.op()).trace().real(), 0.0, 1.0);
  r.exact_value = trace_distance_exact(rp, rf);

  EstimationBackend be{backend, repetitions, Rng(seed).stream("swap")};
  const QueryCost per_call{{"O_psi", 1}, {"O_phi", 1}};
  if (backend == BackendMode::kSampling) {
    const double p0 = clamp_probability(Circuit::probability_zero(c.run_from_zero(), 0, c.qubits()));
    r.shots = hadamard_shots(r.delta);
    for (int i = 0; i < repetitions; ++i) {
      const double f = static_cast<double>(be.rng.binomial(r.shots, p0)) / static_cast<double>(r.shots);
      r.runs.push_back(2.0 * f - 1.0);
    }
    r.ledger.charge(per_call, r.shots * static_cast<std::uint64_t>(repetitions));
  } else {
    r.grid = qae_grid_for_error(r.delta);
    const AmplitudeEstimate est = amplitude_estimate(c, 0, r.grid, be, &r.ledger, per_call);
    for (double x : est.runs) r.runs.push_back(2.0 * x - 1.0);
  }
  r.overlap = std::clamp(median(r.runs), 0.0, 1.0);
  r.estimate = distance_from_overlap(r.overlap);
  r.abs_error = std::abs(r.estimate - r.exact_value);
  return r;
}

}  // namespace tdsim
