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

#include "tdsim/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>

namespace tdsim {

namespace {

std::atomic<double>& clamp_record() {
  static std::atomic<double> worst{0.0};
  return worst;
}

int round_up_pow2(int m) {
  int g = 2;
  while (g < m) g *= 2;
  return g;
}

double fejer(double delta, int grid) {
  const double s = std::sin(std::numbers::pi * delta);
  if (std::abs(s) < 1e-12) return 1.0;
  const double num = std::sin(grid * std::numbers::pi * delta);
  return (num * num) / (static_cast<double>(grid) * grid * s * s);
}

std::vector<int> range(int begin, int count) {
  std::vector<int> out(static_cast<std::size_t>(count));
  std::iota(out.begin(), out.end(), begin);
  return out;
}

void validate_repetitions(int k) {
  if (k < 1 || k % 2 == 0) throw ArgumentError("repetition count must be odd and positive");
}

}  // namespace

BackendMode parse_backend(std::string_view name) {
  if (name == "ideal") return BackendMode::kIdeal;
  if (name == "sampling") return BackendMode::kSampling;
  if (name == "qae") return BackendMode::kQae;
  throw ArgumentError("unknown backend '" + std::string(name) + "'");
}

std::string to_string(BackendMode mode) {
  switch (mode) {
    case BackendMode::kIdeal: return "ideal";
    case BackendMode::kSampling: return "sampling";
    case BackendMode::kQae: return "qae";
  }
  return "unknown";
}

double clamp_probability(double p) {
  const double c = std::clamp(p, 0.0, 1.0);
  const double v = std::abs(c - p);
  double prev = clamp_record().load();
  while (v > prev && !clamp_record().compare_exchange_weak(prev, v)) {
  }
  return c;
}

double max_clamp_violation() { return clamp_record().load(); }
void reset_clamp_violation() { clamp_record().store(0.0); }

double median(std::vector<double> values) {
  if (values.empty()) throw ArgumentError("median of an empty list");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  if (values.size() % 2 == 1) return values[mid];
  const double hi = values[mid];
  const double lo = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

double hadamard_test_prob(const BlockEncoding& b, const DensityOperator& rho, Part part,
                          QueryLedger* ledger) {
  if (rho.qubits() != b.system_qubits) throw ArgumentError("state does not match the encoded system");
  const int total = 1 + b.total_qubits();
  check_dimension(Eigen::Index{1} << total);
  const SpectralDecomposition s = eigh(rho.op());
  const Eigen::Index da = Eigen::Index{1} << b.ancillas;
  const Eigen::Index dn = b.system_dim();
  double p0 = 0.0;
  for (Eigen::Index j = 0; j < s.eigenvalues.size(); ++j) {
    const double w = s.eigenvalues(j);
    if (w <= 1e-15) continue;
    StateVector psi = StateVector::Zero(2 * da * dn);
    psi.head(dn) = s.eigenvectors.col(j);
    apply_gate(psi, total, gates::hadamard(), {0});
    if (part == Part::kImag) apply_gate(psi, total, gates::s_dagger(), {0});
    apply_gate(psi, total, b.unitary, range(1, b.total_qubits()), 0);
    apply_gate(psi, total, gates::hadamard(), {0});
    p0 += w * Circuit::probability_zero(psi, 0, total);
  }
  if (ledger) ledger->charge(invocation_cost(b.provenance, b.cost));
  return clamp_probability(p0 + 0.5 * (1.0 - rho.trace()));
}

double hadamard_test_sample(const BlockEncoding& b, const DensityOperator& rho, Part part,
                            std::uint64_t shots, Rng& rng, QueryLedger* ledger,
                            const std::string& state_label) {
  if (shots < 1) throw ArgumentError("at least one shot is required");
  const double p0 = hadamard_test_prob(b, rho, part, nullptr);
  if (ledger) {
    ledger->charge(invocation_cost(b.provenance, b.cost), shots);
    ledger->charge_samples(state_label, shots);
  }
  return static_cast<double>(rng.binomial(shots, p0)) / static_cast<double>(shots);
}

std::uint64_t hadamard_shots(double eps, double beta) {
  if (!(eps > 0.0)) throw ArgumentError("shot target error must be positive");
  if (!(beta > 0.0) || beta >= 1.0) throw ArgumentError("failure probability must lie in (0, 1)");
  return static_cast<std::uint64_t>(std::ceil(2.0 * std::log(2.0 / beta) / (eps * eps)));
}

int qae_grid_for_error(double eps) {
  if (!(eps > 0.0)) throw ArgumentError("amplitude estimation error must be positive");
  const double pi = std::numbers::pi;
  int m = 2;
  while (pi / m + pi * pi / (static_cast<double>(m) * m) > 0.5 * eps) {
    if (m >= (1 << 30)) throw ArgumentError("amplitude estimation grid too large");
    m *= 2;
  }
  return m;
}

double qae_outcome_probability(int y, int grid, double p) {
  if (grid < 2) throw ArgumentError("amplitude estimation needs M >= 2");
  const double theta = std::asin(std::sqrt(std::clamp(p, 0.0, 1.0))) / std::numbers::pi;
  const double ym = static_cast<double>(y) / grid;
  return 0.5 * fejer(ym - theta, grid) + 0.5 * fejer(ym + theta, grid);
}

AmplitudeEstimate amplitude_estimate_probability(double p, int grid, EstimationBackend& backend) {
  if (grid < 2) throw ArgumentError("amplitude estimation needs M >= 2");
  validate_repetitions(backend.repetitions);
  AmplitudeEstimate out;
  out.probability = p;
  out.grid = round_up_pow2(grid);
  const int m = out.grid;
  if (backend.mode == BackendMode::kIdeal) {
    out.runs.assign(static_cast<std::size_t>(backend.repetitions), p);
  } else if (backend.mode == BackendMode::kQae) {
    std::vector<double> cdf(static_cast<std::size_t>(m));
    double acc = 0.0;
    for (int y = 0; y < m; ++y) {
      acc += qae_outcome_probability(y, m, p);
      cdf[static_cast<std::size_t>(y)] = acc;
    }
    for (int r = 0; r < backend.repetitions; ++r) {
      const double u = backend.rng.uniform() * acc;
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const int y = std::min<int>(static_cast<int>(it - cdf.begin()), m - 1);
      const double s = std::sin(std::numbers::pi * y / m);
      out.runs.push_back(s * s);
    }
  } else {
    throw ArgumentError("amplitude estimation supports the ideal and qae backends");
  }
  out.estimate = median(out.runs);
  out.circuit_calls = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(backend.repetitions);
  return out;
}

AmplitudeEstimate amplitude_estimate(const Circuit& circuit, int flag, int grid,
                                     EstimationBackend& backend, QueryLedger* ledger,
                                     const QueryCost& per_call) {
  if (flag < 0 || flag >= circuit.qubits()) throw ArgumentError("flag qubit out of range");
  const StateVector psi = circuit.run_from_zero();
  const double p = clamp_probability(Circuit::probability_zero(psi, flag, circuit.qubits()));
  AmplitudeEstimate out = amplitude_estimate_probability(p, grid, backend);
  if (ledger) ledger->charge(per_call, out.circuit_calls);
  return out;
}

AmplitudeEstimate amplitude_estimate(const Operator& unitary, int flag, int grid,
                                     EstimationBackend& backend, QueryLedger* ledger,
                                     const QueryCost& per_call) {
  if (!is_unitary(unitary)) throw ArgumentError("amplitude estimation needs a unitary circuit");
  const int n = qubit_count(unitary.rows());
  Circuit c(n);
  c.apply(unitary, range(0, n), "A");
  return amplitude_estimate(c, flag, grid, backend, ledger, per_call);
}

Circuit hadamard_test_circuit(const BlockEncoding& u, const PurifiedOracle& oracle, Part part) {
  if (oracle.system_qubits != u.system_qubits)
    throw ArgumentError("oracle and encoding act on different systems");
  const int total = 1 + u.total_qubits() + oracle.ancilla_qubits;
  Circuit c(total);
  std::vector<int> prep = range(1 + u.ancillas, u.system_qubits);
  const std::vector<int> purifier = range(1 + u.total_qubits(), oracle.ancilla_qubits);
  prep.insert(prep.end(), purifier.begin(), purifier.end());
  c.apply(gates::hadamard(), {0}, "H");
  if (part == Part::kImag) c.apply(gates::s_dagger(), {0}, "Sdg");
  c.apply(oracle.unitary, prep, oracle.name);
  c.controlled(0, u.unitary, range(1, u.total_qubits()), u.provenance);
  c.apply(gates::hadamard(), {0}, "H");
  return c;
}

TraceTermEstimate estimate_trace_term(const BlockEncoding& u_sgn, const PurifiedOracle& oracle,
                                      double eps_h, EstimationBackend& backend,
                                      QueryLedger& ledger) {
  if (!(eps_h > 0.0)) throw ArgumentError("eps_H must be positive");
  validate_repetitions(backend.repetitions);
  const Circuit circuit = hadamard_test_circuit(u_sgn, oracle);
  const QueryCost per_call =
      QueryCost{{oracle.name, 1}} + invocation_cost(u_sgn.provenance, u_sgn.cost);
  TraceTermEstimate out;
  if (backend.mode == BackendMode::kSampling) {
    const StateVector psi = circuit.run_from_zero();
    const double p0 = clamp_probability(Circuit::probability_zero(psi, 0, circuit.qubits()));
    out.exact = 2.0 * p0 - 1.0;
    out.shots = hadamard_shots(eps_h);
    for (int r = 0; r < backend.repetitions; ++r) {
      const double f = static_cast<double>(backend.rng.binomial(out.shots, p0)) / static_cast<double>(out.shots);
      out.runs.push_back(2.0 * f - 1.0);
    }
    ledger.charge(per_call, out.shots * static_cast<std::uint64_t>(backend.repetitions));
  } else {
    out.grid = qae_grid_for_error(eps_h);
    const AmplitudeEstimate a = amplitude_estimate(circuit, 0, out.grid, backend, &ledger, per_call);
    out.exact = 2.0 * a.probability - 1.0;
    for (double r : a.runs) out.runs.push_back(2.0 * r - 1.0);
  }
  out.value = median(out.runs);
  return out;
}

}  // namespace tdsim
