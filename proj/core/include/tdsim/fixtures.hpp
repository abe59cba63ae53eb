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
#include <string>
#include <string_view>

#include "tdsim/linalg.hpp"
#include "tdsim/profiles.hpp"

namespace tdsim {

enum class FixtureFamily { kLowRank, kDepolarized, kGibbs, kPowerLaw, kPure };

std::string to_string(FixtureFamily family);
FixtureFamily parse_fixture_family(std::string_view name);

/// Parameters of one generated state. Unused fields are ignored by the
/// family in question.
struct FixtureSpec {
  FixtureFamily family = FixtureFamily::kLowRank;
  int qubits = 1;
  int rank = 1;           // low-rank, depolarized base
  double lambda = 0.0;    // depolarized
  int k = 1;              // gibbs cut
  double gap = 0.0;       // gibbs
  double scale = 1.0;     // power-law C
  bool uniform = false;   // low-rank with equal weights
  std::uint64_t seed = 0;
};

struct Fixture {
  FixtureSpec spec;
  DensityOperator state = DensityOperator::maximally_mixed(1);
  ApproxLowRankProfile profile;
};

/// Rank-r state with a Haar eigenbasis and Dirichlet(1) weights, or equal
/// weights when `uniform` is set.
DensityOperator gen_low_rank(int qubits, int rank, std::uint64_t seed, bool uniform = false);

/// (1 - lambda) rho + lambda I / N with the matching profile.
Fixture gen_depolarized(const DensityOperator& rho, double lambda);

/// exp(-H) / tr exp(-H). Throws ValidationError unless the k-th and (k+1)-th
/// smallest eigenvalues of H are at least `gap` apart.
Fixture gen_gibbs(const Operator& h, int k, double gap);

/// Hamiltonian with k levels in [0, 1), the rest starting `gap` above them,
/// in a Haar basis.
Operator gapped_hamiltonian(int qubits, int k, double gap, std::uint64_t seed);

/// Eigenvalues filled greedily at the cap C / i^2 until the trace reaches 1.
/// Throws ValidationError when the cap cannot reach trace 1.
Fixture gen_power_law(int qubits, double c, std::uint64_t seed);

Fixture generate_fixture(const FixtureSpec& spec);

}  // namespace tdsim
