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


#include "tdsim/fixtures.hpp"

#include <algorithm>
#include <cmath>

#include "tdsim/random.hpp"

namespace tdsim {

namespace {

DensityOperator in_basis(const Operator& u, const RealVector& weights) {
  Operator op = u.leftCols(weights.size()) * weights.cast<Complex>().asDiagonal() *
                u.leftCols(weights.size()).adjoint();
  return DensityOperator::from_operator(0.5 * (op + op.adjoint()));
}

Eigen::Index checked_dim(int qubits) {
  if (qubits < 1) throw ArgumentError("fixtures need at least one qubit");
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  check_dimension(dim);
  return dim;
}

}  // namespace

std::string to_string(FixtureFamily family) {
  switch (family) {
    case FixtureFamily::kLowRank: return "low-rank";
    case FixtureFamily::kDepolarized: return "depolarized";
    case FixtureFamily::kGibbs: return "gibbs";
    case FixtureFamily::kPowerLaw: return "power-law";
    case FixtureFamily::kPure: return "pure";
  }
  return "low-rank";
}

FixtureFamily parse_fixture_family(std::string_view name) {
  for (FixtureFamily f : {FixtureFamily::kLowRank, FixtureFamily::kDepolarized, FixtureFamily::kGibbs,
                          FixtureFamily::kPowerLaw, FixtureFamily::kPure}) {
    if (name == to_string(f)) return f;
  }
  throw ArgumentError("unknown fixture family '" + std::string(name) + "'");
}

DensityOperator gen_low_rank(int qubits, int rank, std::uint64_t seed, bool uniform) {
  const Eigen::Index dim = checked_dim(qubits);
  if (rank < 1 || rank > dim) throw ArgumentError("rank must lie in [1, 2^n]");
  Rng rng = Rng(seed).stream("low-rank");
  const Operator u = haar_unitary(dim, rng);
  const RealVector w = uniform ? RealVector::Constant(rank, 1.0 / rank) : dirichlet_weights(rank, rng);
  return in_basis(u, w);
}

Fixture gen_depolarized(const DensityOperator& rho, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ArgumentError("lambda must lie in [0, 1]");
  const Eigen::Index n = rho.dim();
  Fixture f;
  f.spec.family = FixtureFamily::kDepolarized;
  f.spec.qubits = rho.qubits();
  f.spec.lambda = lambda;
  f.spec.rank = numerical_rank(rho.op());
  f.state = DensityOperator::from_operator((1.0 - lambda) * rho.op() +
                                           lambda * identity(n) / static_cast<double>(n));
  f.profile = ApproxLowRankProfile::depolarized(f.spec.rank, n, lambda);
  return f;
}

Fixture gen_gibbs(const Operator& h, int k, double gap) {
  if (!is_hermitian(h)) throw ArgumentError("Hamiltonian must be Hermitian");
  const SpectralDecomposition s = eigh(h);
  const Eigen::Index n = h.rows();
  if (k < 1 || k > n) throw ArgumentError("cut k must lie in [1, N]");
  // eigh sorts descending, so the i-th smallest level sits at n - i.
  const RealVector& e = s.eigenvalues;
  if (k < n && e(n - k - 1) - e(n - k) < gap - kPredicateTol)
    throw ValidationError("declared gap " + std::to_string(gap) + " exceeds the spectral gap " +
                          std::to_string(e(n - k - 1) - e(n - k)));
  RealVector boltz(n);
  const double ground = e(n - 1);
  for (Eigen::Index i = 0; i < n; ++i) boltz(i) = std::exp(-(e(i) - ground));
  boltz /= boltz.sum();
  Fixture f;
  f.spec.family = FixtureFamily::kGibbs;
  f.spec.qubits = qubit_count(n);
  f.spec.k = k;
  f.spec.gap = gap;
  f.state = in_basis(s.eigenvectors, boltz);
  f.profile = ApproxLowRankProfile::gibbs(k, n, gap);
  return f;
}

Operator gapped_hamiltonian(int qubits, int k, double gap, std::uint64_t seed) {
  const Eigen::Index dim = checked_dim(qubits);
  if (k < 1 || k > dim) throw ArgumentError("cut k must lie in [1, N]");
  if (!(gap >= 0.0)) throw ArgumentError("gap must be non-negative");
  Rng rng = Rng(seed).stream("gibbs");
  RealVector levels(dim);
  double top = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) top = std::max(top, levels(i) = rng.uniform());
  for (Eigen::Index i = k; i < dim; ++i) levels(i) = top + gap + rng.uniform();
  const Operator u = haar_unitary(dim, rng);
  const Operator h = u * levels.cast<Complex>().asDiagonal() * u.adjoint();
  return 0.5 * (h + h.adjoint());
}

Fixture gen_power_law(int qubits, double c, std::uint64_t seed) {
  const Eigen::Index dim = checked_dim(qubits);
  if (!(c > 0.0)) throw ArgumentError("power-law scale must be positive");
  RealVector w = RealVector::Zero(dim);
  double remaining = 1.0;
  for (Eigen::Index i = 0; i < dim && remaining > 0.0; ++i) {
    const double cap = c / static_cast<double>((i + 1) * (i + 1));
    w(i) = std::min(cap, remaining);
    remaining -= w(i);
  }
  if (remaining > 1e-12)
    throw ValidationError("scale C = " + std::to_string(c) + " cannot reach trace 1 under the C/i^2 cap");
  Rng rng = Rng(seed).stream("power-law");
  Fixture f;
  f.spec.family = FixtureFamily::kPowerLaw;
  f.spec.qubits = qubits;
  f.spec.scale = c;
  f.spec.seed = seed;
  f.state = in_basis(haar_unitary(dim, rng), w);
  f.profile = ApproxLowRankProfile::power_law(c, dim);
  return f;
}

Fixture generate_fixture(const FixtureSpec& spec) {
  Fixture f;
  switch (spec.family) {
    case FixtureFamily::kLowRank:
      f.state = gen_low_rank(spec.qubits, spec.rank, spec.seed, spec.uniform);
      f.profile = ApproxLowRankProfile::exact(spec.rank);
      break;
    case FixtureFamily::kPure:
      f.state = gen_low_rank(spec.qubits, 1, spec.seed);
      f.profile = ApproxLowRankProfile::exact(1);
      break;
    case FixtureFamily::kDepolarized:
      f = gen_depolarized(gen_low_rank(spec.qubits, spec.rank, spec.seed), spec.lambda);
      break;
    case FixtureFamily::kGibbs:
      f = gen_gibbs(gapped_hamiltonian(spec.qubits, spec.k, spec.gap, spec.seed), spec.k, spec.gap);
      break;
    case FixtureFamily::kPowerLaw:
      f = gen_power_law(spec.qubits, spec.scale, spec.seed);
      break;
  }
  f.spec = spec;
  return f;
}

}  // namespace tdsim
