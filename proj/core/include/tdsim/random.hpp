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
#include <random>
#include <string_view>

#include "tdsim/linalg.hpp"

namespace tdsim {

/// Seeded generator with deterministic named sub-streams. A child stream
/// depends only on the parent seed and the name, never on how much of the
/// parent has been consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  Rng stream(std::string_view name) const;
  Rng stream(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }
  std::mt19937_64& engine() { return engine_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller, independent of the standard library's
  /// distribution implementation.
  double normal();
  /// Unit-rate exponential.
  double exponential();
  std::uint64_t binomial(std::uint64_t trials, double p);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view s);

/// Haar-distributed unitary from the QR decomposition of a complex Ginibre
/// matrix with the phase correction applied to R's diagonal.
Operator haar_unitary(Eigen::Index dim, Rng& rng);
StateVector random_state(Eigen::Index dim, Rng& rng);
/// Hermitian matrix with i.i.d. Gaussian entries (GUE up to scale).
Operator random_hermitian(Eigen::Index dim, Rng& rng);
/// Dirichlet(1, ..., 1) weights of length r.
RealVector dirichlet_weights(int r, Rng& rng);
/// Rank-r density operator U diag(w) U^dagger with Haar U and Dirichlet w.
DensityOperator random_density(int qubits, int rank, Rng& rng);

}  // namespace tdsim
