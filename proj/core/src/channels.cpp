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

#include "tdsim/channels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "tdsim/circuit.hpp"
#include "tdsim/errors.hpp"

namespace tdsim {

namespace {

std::vector<int> range(int begin, int count) {
  std::vector<int> out(static_cast<std::size_t>(count));
  std::iota(out.begin(), out.end(), begin);
  return out;
}

Operator vec_identity(Eigen::Index d) {
  Operator v = Operator::Zero(d * d, 1);
  for (Eigen::Index i = 0; i < d; ++i) v(i * d + i, 0) = 1.0;
  return v;
}

Operator dme_step_superoperator(const Operator& rho, double dt) {
  const Eigen::Index d = rho.rows();
  const double c = std::cos(dt), s = std::sin(dt);
  const Operator id = identity(d);
  const Operator vrho = Eigen::Map<const Operator>(rho.data(), d * d, 1);
  return c * c * identity(d * d) + s * s * vrho * vec_identity(d).transpose() -
         Complex(0.0, s * c) * (tensor(id, rho) - tensor(rho.transpose(), id));
}

Operator matrix_power(Operator base, std::uint64_t exponent) {
  Operator out = identity(base.rows());
  while (exponent > 0) {
    if (exponent & 1U) out = out * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return out;
}

std::vector<Operator> environment_kraus(const Operator& w, const Operator& env, Eigen::Index d) {
  const Eigen::Index de = env.rows();
  const SpectralDecomposition s = eigh(env);
  std::vector<Operator> out;
  for (Eigen::Index m = 0; m < de; ++m) {
    const double lam = s.eigenvalues(m);
    if (lam <= 1e-14) continue;
    // W (|v_m> x I) has shape (de d) x d; row block a is <a|_env W (|v_m> x I).
    Operator wv = Operator::Zero(de * d, d);
    for (Eigen::Index e = 0; e < de; ++e)
      if (std::abs(s.eigenvectors(e, m)) > 0.0)
        wv += s.eigenvectors(e, m) * w.middleCols(e * d, d);
    for (Eigen::Index a = 0; a < de; ++a) {
      Operator k = std::sqrt(lam) * wv.middleRows(a * d, d);
      if (k.cwiseAbs().maxCoeff() > 1e-15) out.push_back(std::move(k));
    }
  }
  return out;
}

}  // namespace

std::string to_string(ChannelMode mode) {
  switch (mode) {
    case ChannelMode::kNoisyOracle: return "noisy-oracle";
    case ChannelMode::kDme: return "dme";
    case ChannelMode::kCircuit: return "circuit";
  }
  return "unknown";
}

ChannelMode parse_channel_mode(const std::string& name) {
  if (name == "noisy-oracle") return ChannelMode::kNoisyOracle;
  if (name == "dme") return ChannelMode::kDme;
  if (name == "circuit") return ChannelMode::kCircuit;
  throw ArgumentError("unknown channel mode '" + name + "'");
}

Operator unitary_superoperator(const Operator& u) { return tensor(u.conjugate(), u); }

Operator superoperator_from_kraus(const std::vector<Operator>& kraus) {
  if (kraus.empty()) throw ArgumentError("empty Kraus list");
  const Eigen::Index d = kraus.front().rows();
  Operator s = Operator::Zero(d * d, d * d);
  for (const Operator& k : kraus) s += tensor(k.conjugate(), k);
  return s;
}

Operator choi_from_superoperator(const Operator& s) {
  const Eigen::Index d2 = s.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(d2))));
  if (d * d != d2 || s.cols() != d2) throw SizeError("superoperator is not d^2 x d^2");
  Operator c(d2, d2);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index b = 0; b < d; ++b)
        for (Eigen::Index j = 0; j < d; ++j) c(a * d + i, b * d + j) = s(b * d + a, j * d + i);
  return c / static_cast<double>(d);
}

std::vector<Operator> kraus_from_choi(const Operator& choi, double tol) {
  const Eigen::Index d2 = choi.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(d2))));
  const SpectralDecomposition s = eigh(0.5 * (choi + choi.adjoint()) * static_cast<double>(d));
  std::vector<Operator> out;
  for (Eigen::Index m = 0; m < d2; ++m) {
    const double lam = s.eigenvalues(m);
    if (lam < -1e-9) throw ValidationError("Choi matrix is not positive semidefinite");
    if (lam <= tol) continue;
    Operator k(d, d);
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index i = 0; i < d; ++i) k(a, i) = std::sqrt(lam) * s.eigenvectors(a * d + i, m);
    out.push_back(std::move(k));
  }
  return out;
}

std::vector<Operator> pauli_basis(int qubits) {
  if (qubits < 0) throw ArgumentError("negative qubit count");
  check_dimension(Eigen::Index{1} << qubits);
  const Operator i2 = identity(2);
  const Operator x = gates::pauli_x();
  const Operator y = (Operator(2, 2) << 0.0, Complex(0, -1), Complex(0, 1), 0.0).finished();
  const Operator z = gates::pauli_z();
  std::vector<Operator> out{identity(1)};
  for (int q = 0; q < qubits; ++q) {
    std::vector<Operator> next;
    next.reserve(out.size() * 4);
    for (const Operator& p : out)
      for (const Operator* f : {&i2, &x, &y, &z}) next.push_back(tensor(p, *f));
    out = std::move(next);
  }
  return out;
}

double kraus_completeness_error(const std::vector<Operator>& kraus) {
  if (kraus.empty()) throw ArgumentError("empty Kraus list");
  Operator acc = Operator::Zero(kraus.front().cols(), kraus.front().cols());
  for (const Operator& k : kraus) acc += k.adjoint() * k;
  return (acc - identity(acc.rows())).cwiseAbs().maxCoeff();
}

double choi_proxy_distance(const Operator& superop_a, const Operator& superop_b) {
  const Operator diff = choi_from_superoperator(superop_a - superop_b);
  return 0.5 * trace_norm(0.5 * (diff + diff.adjoint()));
}

double choi_proxy_distance(const ChannelModel& e) {
  return choi_proxy_distance(e.superoperator(), unitary_superoperator(e.target));
}

Operator ChannelModel::apply(const Operator& x) const {
  const Eigen::Index d = dim();
  if (x.rows() != d || x.cols() != d) throw SizeError("channel input has the wrong dimension");
  switch (mode) {
    case ChannelMode::kNoisyOracle:
      return (1.0 - mixing) * target * x * target.adjoint() +
             mixing * x.trace() * identity(d) / static_cast<double>(d);
    case ChannelMode::kDme: {
      const Operator& rho = source.op();
      const double dt = evolution_time / static_cast<double>(steps);
      const double c = std::cos(dt), s = std::sin(dt);
      Operator out = x;
      for (std::uint64_t k = 0; k < steps; ++k)
        out = c * c * out + s * s * out.trace() * rho - Complex(0.0, s * c) * (rho * out - out * rho);
      return out;
    }
    case ChannelMode::kCircuit: {
      const Operator& w = *circuit_form;
      const Operator& env = *environment;
      const int env_qubits = qubit_count(env.rows());
      const int n = qubit_count(d);
      const Operator full = w * tensor(env, x) * w.adjoint();
      return partial_trace(full, range(env_qubits, n));
    }
  }
  throw ArgumentError("unknown channel mode");
}

Operator ChannelModel::superoperator() const {
  const Eigen::Index d = dim();
  switch (mode) {
    case ChannelMode::kNoisyOracle: {
      const Operator vi = vec_identity(d);
      return (1.0 - mixing) * unitary_superoperator(target) +
             (mixing / static_cast<double>(d)) * vi * vi.transpose();
    }
    case ChannelMode::kDme:
      return matrix_power(
          dme_step_superoperator(source.op(), evolution_time / static_cast<double>(steps)), steps);
    case ChannelMode::kCircuit:
      return superoperator_from_kraus(kraus());
  }
  throw ArgumentError("unknown channel mode");
}

std::vector<Operator> ChannelModel::kraus() const {
  switch (mode) {
    case ChannelMode::kNoisyOracle: {
      std::vector<Operator> out{std::sqrt(1.0 - mixing) * target};
      if (mixing > 0.0) {
        const double w = std::sqrt(mixing) / static_cast<double>(dim());
        for (Operator& p : pauli_basis(qubit_count(dim()))) out.push_back(w * p);
      }
      return out;
    }
    case ChannelMode::kDme:
      return kraus_from_choi(choi());
    case ChannelMode::kCircuit:
      return environment_kraus(*circuit_form, *environment, dim());
  }
  throw ArgumentError("unknown channel mode");
}

Operator ChannelModel::choi() const { return choi_from_superoperator(superoperator()); }

BlockEncoding ChannelModel::target_encoding() const {
  if (mode != ChannelMode::kNoisyOracle)
    throw UnsupportedError("only noisy-oracle channels approximate a block-encoding");
  BlockEncoding b;
  b.unitary = target;
  b.alpha = kSampleEncodingAlpha;
  b.ancillas = kSampleEncodingAncillas;
  b.system_qubits = source.qubits();
  b.provenance = label;
  return b;
}

std::uint64_t samples_per_use(double delta) {
  if (delta < 0.0 || delta >= 1.0) throw ArgumentError("delta must lie in [0, 1)");
  if (delta == 0.0) return 0;
  const double l = std::log(1.0 / delta);
  const double k = std::ceil(l * l / delta);
  if (k >= static_cast<double>(std::numeric_limits<std::uint64_t>::max()))
    return std::numeric_limits<std::uint64_t>::max();
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(k));
}

double dme_error_bound(double t, std::uint64_t steps) {
  if (steps == 0) throw ArgumentError("at least one step is required");
  const double dt = std::abs(t) / static_cast<double>(steps);
  return static_cast<double>(steps) * (4.0 * dt * dt + 4.0 * dt * dt * dt / 3.0);
}

ChannelModel sampling_to_block_encoding(const DensityOperator& rho, double delta, ChannelMode mode,
                                        const std::string& label) {
  if (!std::isfinite(delta) || delta < 0.0 || delta >= 1.0)
    throw ArgumentError("delta must lie in [0, 1)");
  if (!rho.normalized()) throw ArgumentError("sample access needs a normalized state");
  ChannelModel e;
  e.mode = mode;
  e.label = label;
  e.source = rho;
  e.delta_budget = delta;
  switch (mode) {
    case ChannelMode::kNoisyOracle:
      e.target = dilate_contraction((std::numbers::pi / 4.0) * rho.op(), kSampleEncodingAncillas);
      e.mixing = delta / 2.0;
      e.copies_per_use = samples_per_use(delta);
      return e;
    case ChannelMode::kDme: {
      if (delta == 0.0) throw ArgumentError("dme mode needs delta > 0");
      e.evolution_time = 1.0;
      std::uint64_t n = static_cast<std::uint64_t>(std::ceil(4.0 / delta));
      while (dme_error_bound(1.0, n) > delta) ++n;
      e.steps = n;
      e.copies_per_use = n;
      const SpectralDecomposition s = eigh(rho.op());
      Eigen::VectorXcd phases(s.eigenvalues.size());
      for (Eigen::Index i = 0; i < phases.size(); ++i)
        phases(i) = std::exp(Complex(0.0, -s.eigenvalues(i)));
      e.target = s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
      return e;
    }
    case ChannelMode::kCircuit: {
      const Operator u = dilate_contraction((std::numbers::pi / 4.0) * rho.op(), kSampleEncodingAncillas);
      ChannelModel c = noisy_unitary_circuit(u, delta);
      c.label = label;
      c.source = rho;
      c.copies_per_use = samples_per_use(delta);
      return c;
    }
  }
  throw ArgumentError("unknown channel mode");
}

DensityOperator dme_step(const DensityOperator& copy, const DensityOperator& working, double dt) {
  if (copy.qubits() != working.qubits()) throw ArgumentError("copy and working register differ in size");
  const int n = working.qubits();
  check_dimension(Eigen::Index{1} << (2 * n));
  const Operator swap = swap_registers(range(0, n), range(n, n), 2 * n);
  const Operator u = std::cos(dt) * identity(swap.rows()) - Complex(0.0, std::sin(dt)) * swap;
  const Operator out = partial_trace(u * tensor(copy.op(), working.op()) * u.adjoint(), range(n, n));
  return DensityOperator::from_operator(out, working.normalized());
}

ChannelModel invert_channel(const ChannelModel& e) {
  ChannelModel inv = e;
  inv.target = e.target.adjoint();
  inv.label = e.label + "_inv";
  switch (e.mode) {
    case ChannelMode::kNoisyOracle:
      break;
    case ChannelMode::kDme:
      inv.evolution_time = -e.evolution_time;
      break;
    case ChannelMode::kCircuit:
      inv.circuit_form = e.circuit_form->adjoint();
      break;
  }
  return inv;
}

ChannelModel noisy_unitary_circuit(const Operator& u, double delta) {
  if (!is_unitary(u)) throw ArgumentError("target must be unitary");
  if (!std::isfinite(delta) || delta < 0.0 || delta > 1.0) throw ArgumentError("delta must lie in [0, 1]");
  const int m = qubit_count(u.rows());
  const int total = 1 + 3 * m;
  check_dimension(Eigen::Index{1} << total);

  // Branch 1 on registers (A, B, T): Bell pairs on (A, B), then swap A <-> T.
  Circuit bell(3 * m);
  for (int q = 0; q < m; ++q) {
    bell.apply(gates::hadamard(), {q}, "H");
    bell.controlled(q, gates::pauli_x(), {m + q}, "CX");
  }
  const Operator branch1 = swap_registers(range(0, m), range(2 * m, m), 3 * m) * bell.to_operator();
  const Operator branch0 = tensor(identity(Eigen::Index{1} << (2 * m)), u);

  Operator p0 = Operator::Zero(2, 2), p1 = Operator::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const Operator select = tensor(p0, branch0) + tensor(p1, branch1);
  const Operator r = tensor(gates::ry(2.0 * std::asin(std::sqrt(delta / 2.0))),
                            identity(Eigen::Index{1} << (3 * m)));

  ChannelModel e;
  e.mode = ChannelMode::kCircuit;
  e.target = u;
  e.delta_budget = delta;
  e.workspace_qubits = 1 + 2 * m;
  e.label = "E_circuit";
  e.circuit_form = r.adjoint() * select * r;
  Operator env = Operator::Zero(Eigen::Index{1} << (1 + 2 * m), Eigen::Index{1} << (1 + 2 * m));
  env(0, 0) = 1.0;
  e.environment = env;
  return e;
}

void ChannelPipeline::use(const ChannelModel& e, std::uint64_t times) {
  ChannelPipeline one;
  one.budget = e.delta_budget;
  one.uses = 1;
  one.samples = e.copies_per_use;
  repeat(one, times);
}

void ChannelPipeline::repeat(const ChannelPipeline& inner, std::uint64_t times) {
  ChannelPipeline scaled;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  scaled.budget = inner.budget * static_cast<double>(times);
  scaled.uses = (inner.uses != 0 && times > kMax / inner.uses) ? kMax : inner.uses * times;
  scaled.samples = (inner.samples != 0 && times > kMax / inner.samples) ? kMax : inner.samples * times;
  scaled.overflow = inner.overflow;
  combine(scaled);
}

void ChannelPipeline::combine(const ChannelPipeline& other) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  budget += other.budget;
  uses = uses > kMax - other.uses ? kMax : uses + other.uses;
  samples = samples > kMax - other.samples ? kMax : samples + other.samples;
  overflow = overflow || other.overflow || budget >= 1.0;
}

ChannelComposition apply_channel_as_block_encoding(const ChannelModel& e, std::uint64_t uses,
                                                   QueryLedger* ledger, const std::string& state_label) {
  if (uses == 0) throw ArgumentError("at least one use is required");
  ChannelComposition out;
  out.pipeline.use(e, uses);
  const Operator s = e.superoperator();
  out.superoperator = matrix_power(s, uses);
  out.target = matrix_power(e.target, uses);
  out.choi_proxy = choi_proxy_distance(out.superoperator, unitary_superoperator(out.target));
  if (ledger) {
    ledger->charge(e.label, out.pipeline.uses);
    ledger->charge_samples(state_label, out.pipeline.samples);
  }
  return out;
}

}  // namespace tdsim
