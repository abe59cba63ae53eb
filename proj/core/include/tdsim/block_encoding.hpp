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
#include <map>
#include <string>
#include <vector>

#include "tdsim/linalg.hpp"

namespace tdsim {

/// Queries made to each named component per single application of an
/// object. Counts are transitive: a block-encoding built from U_nu lists
/// both U_nu and everything U_nu itself queries.
using QueryCost = std::map<std::string, std::uint64_t>;

QueryCost operator+(const QueryCost& a, const QueryCost& b);
QueryCost operator*(std::uint64_t k, const QueryCost& c);

/// Cost of invoking `label` once, including its own entry.
QueryCost invocation_cost(const std::string& label, const QueryCost& inner);

/// Unitary U on n + a qubits. Ancillas are the a most significant qubits,
/// so alpha * <0|_a U |0>_a is the top-left 2^n x 2^n block times alpha.
struct BlockEncoding {
  Operator unitary;
  double alpha = 1.0;
  int ancillas = 0;
  double eps = 0.0;
  int system_qubits = 0;
  std::string provenance;
  QueryCost cost;

  int total_qubits() const { return ancillas + system_qubits; }
  Eigen::Index system_dim() const { return Eigen::Index{1} << system_qubits; }
  /// <0|_a U |0>_a
  Operator block() const;
  /// alpha * block()
  Operator encoded() const;
};

/// Operator-norm residual of alpha * block against `target`.
double verify_block_encoding(const BlockEncoding& b, const Operator& target);

/// Unitary preparing |0> -> sum_j sqrt(lambda_j)|psi_j>|j> on the system
/// (most significant) and purifying register.
struct PurifiedOracle {
  Operator unitary;
  int system_qubits = 0;
  int ancilla_qubits = 0;
  std::string name = "O";

  int total_qubits() const { return system_qubits + ancilla_qubits; }
  StateVector prepared_state() const { return unitary.col(0); }
  DensityOperator reduced_state() const;
  bool is_pure(double tol = kPredicateTol) const;
};

PurifiedOracle purify(const DensityOperator& rho, const std::string& name = "O");

/// Completes the orthonormal columns of `columns` to a unitary. Extra
/// columns come from Gram-Schmidt over the standard basis in index order.
Operator complete_to_unitary(const Operator& columns);

/// Unitary whose top-left block is the contraction P. The dilation
/// [[P, sqrt(I - P P^dagger)], [sqrt(I - P^dagger P), -P^dagger]] lives on one
/// extra qubit and is padded by identity so the result has `ancillas`
/// ancilla qubits (ancillas >= 1).
Operator dilate_contraction(const Operator& p, int ancillas);

/// Exact block-encoding of rho from its purification: U = (O^dagger x I)
/// (SWAP_{S,E} x I_A)(O x I) on registers (S, A, E), ancillas (A, E).
BlockEncoding density_to_block_encoding(const PurifiedOracle& oracle);

struct StatePrepPair {
  Operator left;   // P_L
  Operator right;  // P_R
  double beta = 1.0;
  int qubits = 0;  // b
  double eps = 0.0;

  /// sum_j |beta conj(c_j) d_j - y_j| with c, d the first columns.
  double residual(const std::vector<Complex>& y) const;
};

/// (HX, H): a (2, 1, 0) pair for y = (1, -1).
StatePrepPair difference_prep_pair();

/// Linear combination sum_j y_j A_j with y realised by `pair`. All inputs
/// share system size and alpha; ancilla registers are padded to the widest.
/// The result is an (alpha beta, a + b, alpha eps_pair + alpha beta eps_max)
/// encoding of sum_j y_j A_j.
BlockEncoding lcu(const StatePrepPair& pair, const std::vector<BlockEncoding>& terms,
                  const std::vector<Complex>& y, const std::string& provenance = "U_lcu");

/// Encoding of nu = (rho - sigma) / 2 with the input alpha. From the LCU
/// metadata for rho - sigma, alpha and eps both halve.
BlockEncoding lcu_difference(const BlockEncoding& u_rho, const BlockEncoding& u_sigma,
                             const std::string& provenance = "U_nu");

/// (I_b x U)(V x I_a): an (alpha beta, a + b, alpha eps_v + beta eps_u)
/// encoding of A B where U encodes A and V encodes B.
BlockEncoding product_block_encodings(const BlockEncoding& u, const BlockEncoding& v,
                                      const std::string& provenance = "U_prod");

/// Add zero-initialised ancillas at the top without changing the block.
BlockEncoding pad_ancillas(const BlockEncoding& b, int extra);

}  // namespace tdsim
