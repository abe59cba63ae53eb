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

#include "tdsim/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "tdsim/bits.hpp"

namespace tdsim {

namespace {

void validate(int total, const Operator& op, const std::vector<int>& targets,
              std::optional<int> control) {
  if (targets.empty()) throw ArgumentError("gate without targets");
  const Eigen::Index local = Eigen::Index{1} << targets.size();
  if (op.rows() != local || op.cols() != local)
    throw ArgumentError("gate size does not match its targets");
  std::vector<int> all = targets;
  if (control) all.push_back(*control);
  std::vector<int> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ArgumentError("gate qubits overlap");
  if (sorted.front() < 0 || sorted.back() >= total) throw ArgumentError("gate qubit out of range");
}

}  // namespace

void apply_gate(StateVector& psi, int total_qubits, const Operator& op,
                const std::vector<int>& targets, std::optional<int> control) {
  const std::vector<Eigen::Index> off = bits::offsets(targets, total_qubits);
  const Eigen::Index tmask = bits::mask(targets, total_qubits);
  const Eigen::Index cbit =
      control ? (Eigen::Index{1} << bits::position(*control, total_qubits)) : 0;
  const Eigen::Index local = static_cast<Eigen::Index>(off.size());
  StateVector in(local);
  StateVector out(local);
  for (Eigen::Index base = 0; base < psi.size(); ++base) {
    if (base & tmask) continue;
    if (control && !(base & cbit)) continue;
    for (Eigen::Index l = 0; l < local; ++l) in(l) = psi(base + off[static_cast<std::size_t>(l)]);
    out.noalias() = op * in;
    for (Eigen::Index l = 0; l < local; ++l) psi(base + off[static_cast<std::size_t>(l)]) = out(l);
  }
}

Circuit::Circuit(int qubits) : qubits_(qubits) {
  if (qubits < 1) throw ArgumentError("circuit needs at least one qubit");
  check_dimension(Eigen::Index{1} << qubits);
}

Circuit& Circuit::apply(const Operator& op, std::vector<int> targets, std::string label) {
  validate(qubits_, op, targets, std::nullopt);
  gates_.push_back({op, std::move(targets), std::nullopt, std::move(label)});
  return *this;
}

Circuit& Circuit::controlled(int control, const Operator& op, std::vector<int> targets,
                             std::string label) {
  validate(qubits_, op, targets, control);
  gates_.push_back({op, std::move(targets), control, std::move(label)});
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.qubits_ != qubits_) throw ArgumentError("appending a circuit of different width");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

Circuit Circuit::adjoint() const {
  Circuit out(qubits_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it)
    out.gates_.push_back({it->op.adjoint(), it->targets, it->control, it->label});
  return out;
}

void Circuit::run_in_place(StateVector& psi) const {
  if (psi.size() != dim()) throw ArgumentError("state does not match the circuit width");
  for (const Gate& g : gates_) apply_gate(psi, qubits_, g.op, g.targets, g.control);
}

StateVector Circuit::run(const StateVector& psi) const {
  StateVector out = psi;
  run_in_place(out);
  return out;
}

StateVector Circuit::run_from_zero() const { return run(StateVector::Unit(dim(), 0)); }

Operator Circuit::to_operator() const {
  Operator out = identity(dim());
  for (Eigen::Index c = 0; c < dim(); ++c) {
    StateVector col = out.col(c);
    run_in_place(col);
    out.col(c) = col;
  }
  return out;
}

double Circuit::probability_zero(const StateVector& psi, int qubit, int total_qubits) {
  const Eigen::Index bit = Eigen::Index{1} << bits::position(qubit, total_qubits);
  double p = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    if (!(i & bit)) p += std::norm(psi(i));
  return p;
}

namespace gates {

Operator hadamard() { return (Operator(2, 2) << 1, 1, 1, -1).finished() / std::sqrt(2.0); }
Operator pauli_x() { return (Operator(2, 2) << 0, 1, 1, 0).finished(); }
Operator pauli_z() { return (Operator(2, 2) << 1, 0, 0, -1).finished(); }
Operator s_dagger() { return (Operator(2, 2) << 1, 0, 0, Complex(0, -1)).finished(); }
Operator ry(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return (Operator(2, 2) << c, -s, s, c).finished();
}

}  // namespace gates

}  // namespace tdsim
