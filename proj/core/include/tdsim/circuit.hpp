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

#include <optional>
#include <string>
#include <vector>

#include "tdsim/linalg.hpp"

namespace tdsim {

/// Gate list on a fixed register, simulated on state vectors so that the
/// composite operator never has to be formed.
class Circuit {
 public:
  struct Gate {
    Operator op;
    std::vector<int> targets;  // most significant first
    std::optional<int> control;  // fires on |1>
    std::string label;
  };

  explicit Circuit(int qubits);

  int qubits() const { return qubits_; }
  Eigen::Index dim() const { return Eigen::Index{1} << qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }

  Circuit& apply(const Operator& op, std::vector<int> targets, std::string label = {});
  Circuit& controlled(int control, const Operator& op, std::vector<int> targets,
                      std::string label = {});
  Circuit& append(const Circuit& other);

  Circuit adjoint() const;

  void run_in_place(StateVector& psi) const;
  StateVector run(const StateVector& psi) const;
  StateVector run_from_zero() const;

  /// Dense unitary; only for small registers.
  Operator to_operator() const;

  /// Probability that measuring `qubit` of psi yields 0.
  static double probability_zero(const StateVector& psi, int qubit, int total_qubits);

 private:
  int qubits_;
  std::vector<Gate> gates_;
};

/// Apply `op` on `targets` (optionally controlled) to a state vector.
void apply_gate(StateVector& psi, int total_qubits, const Operator& op,
                const std::vector<int>& targets, std::optional<int> control = std::nullopt);

namespace gates {
Operator hadamard();
Operator pauli_x();
Operator pauli_z();
Operator s_dagger();
Operator ry(double theta);
}  // namespace gates

}  // namespace tdsim
