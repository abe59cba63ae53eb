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
#include "tdsim/ledger.hpp"
#include "tdsim/linalg.hpp"

namespace tdsim {

enum class ChannelMode { kNoisyOracle, kDme, kCircuit };

std::string to_string(ChannelMode mode);
ChannelMode parse_channel_mode(const std::string& name);

/// Normalisation of the encoding a sample-access channel approximates.
inline constexpr double kSampleEncodingAlpha = 4.0 / 3.14159265358979323846;
inline constexpr int kSampleEncodingAncillas = 3;

/// CPTP map with a declared unitary target and diamond-distance budget.
///
/// noisy-oracle: (1 - m) U . U^dagger + m D with D completely depolarizing.
/// dme:          `steps` partial-swap steps with copies of `source`,
///               approximating exp(-i source t).
/// circuit:      tr_env(W (env x .) W^dagger) with env on the top qubits.
class ChannelModel {
 public:
  ChannelMode mode = ChannelMode::kNoisyOracle;
  Operator target;
  double delta_budget = 0.0;
  std::uint64_t copies_per_use = 0;
  int workspace_qubits = 0;
  std::string label = "E";

  double mixing = 0.0;  // noisy-oracle weight of D

  DensityOperator source = DensityOperator::maximally_mixed(1);  // dme copies
  double evolution_time = 0.0;
  std::uint64_t steps = 0;

  std::optional<Operator> circuit_form;  // W
  std::optional<Operator> environment;   // initial env state

  Eigen::Index dim() const { return target.rows(); }

  Operator apply(const Operator& x) const;
  /// Column-stacking superoperator S with vec(E(X)) = S vec(X).
  Operator superoperator() const;
  std::vector<Operator> kraus() const;
  /// (E x I)(|Omega><Omega|) with |Omega> = sum_i |ii> / sqrt(d).
  Operator choi() const;

  /// The (4/pi, 3, 0) encoding a noisy-oracle channel approximates.
  BlockEncoding target_encoding() const;
};

/// Superoperator of X -> U X U^dagger.
Operator unitary_superoperator(const Operator& u);
Operator choi_from_superoperator(const Operator& s);
Operator superoperator_from_kraus(const std::vector<Operator>& kraus);
std::vector<Operator> kraus_from_choi(const Operator& choi, double tol = 1e-12);
/// Pauli strings on `qubits` qubits, in lexicographic I, X, Y, Z order.
std::vector<Operator> pauli_basis(int qubits);

/// Half the trace norm of the difference of normalized Choi matrices.
double choi_proxy_distance(const Operator& superop_a, const Operator& superop_b);
double choi_proxy_distance(const ChannelModel& e);
/// Sum of K^dagger K minus the identity, in max-abs entry.
double kraus_completeness_error(const std::vector<Operator>& kraus);

/// ceil(ln(1/delta)^2 / delta) samples per channel use; 0 when delta = 0.
std::uint64_t samples_per_use(double delta);

/// Noisy-oracle channel approximating a unitary with top-left block
/// (pi/4) rho on three ancillas. delta = 0 is allowed for tests. In dme mode
/// the target is exp(-i rho) with enough steps to meet delta.
ChannelModel sampling_to_block_encoding(const DensityOperator& rho, double delta,
                                        ChannelMode mode = ChannelMode::kNoisyOracle,
                                        const std::string& label = "E");

/// tr_copy(exp(-i S dt)(copy x working)exp(i S dt)).
DensityOperator dme_step(const DensityOperator& copy, const DensityOperator& working, double dt);

/// Diamond-norm bound N (4 dt^2 + 4 dt^3 / 3) for N steps of size t / N.
double dme_error_bound(double t, std::uint64_t steps);

/// E_inv with target U^dagger: the mirrored mixture, reversed partial-swap
/// evolution, or W^dagger with the same environment.
ChannelModel invert_channel(const ChannelModel& e);

/// Circuit-form channel for an arbitrary unitary: a coin rotated by
/// Ry(theta) with sin^2(theta/2) = delta/2 selects U or a swap with half of
/// a Bell pair, and is rotated back. Environment: coin plus two workspace
/// registers, all |0>.
ChannelModel noisy_unitary_circuit(const Operator& u, double delta);

/// Declared-budget bookkeeping for channels used as if they were unitaries.
struct ChannelPipeline {
  double budget = 0.0;
  std::uint64_t uses = 0;
  std::uint64_t samples = 0;
  bool overflow = false;  // budget reached 1; the bound is vacuous

  void use(const ChannelModel& e, std::uint64_t times = 1);
  void repeat(const ChannelPipeline& inner, std::uint64_t times);
  void combine(const ChannelPipeline& other);
};

/// q sequential uses of e: budget q * delta, with the numerical composite and
/// its Choi proxy against U^q. Charges the ledger when given.
struct ChannelComposition {
  ChannelPipeline pipeline;
  Operator superoperator;
  Operator target;
  double choi_proxy = 0.0;
};

ChannelComposition apply_channel_as_block_encoding(const ChannelModel& e, std::uint64_t uses,
                                                   QueryLedger* ledger = nullptr,
                                                   const std::string& state_label = "rho");

}  // namespace tdsim
